"""The polygon space P(kappa) and plane realizations of its elements.

An element is a 2n-tuple (z_1, ..., z_2n) with z_1 = 0 and

    e^{i k_j} (z_{2j-1} - z_{2j}) = z_{2j+1} - z_{2j},   j = 1..n,

reading z_{2n+1} as z_1.  The odd coordinates z_3, ..., z_{2n-1} are free and
each even coordinate is solved from its own constraint.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .curvature import GeneralizedCurvatureData

MEMBER_TOL = 1e-10
COLLINEAR_TOL = 1e-12
_PIVOT_TOL = 1e-14


class MembershipError(ValueError):
    """A vector does not satisfy the defining constraints of P(kappa)."""


@dataclass(frozen=True, eq=False)
class PolygonVector:
    coords: np.ndarray
    kappa: GeneralizedCurvatureData

    def __post_init__(self):
        object.__setattr__(self, "coords", np.asarray(self.coords, dtype=complex))

    def __len__(self) -> int:
        return len(self.coords)


@dataclass(frozen=True, eq=False)
class Basis:
    vectors: list[PolygonVector]
    kappa: GeneralizedCurvatureData

    @property
    def matrix(self) -> np.ndarray:
        """2n x (n-1) matrix whose columns are the basis vectors."""
        if not self.vectors:
            return np.zeros((2 * self.kappa.n, 0), dtype=complex)
        return np.column_stack([v.coords for v in self.vectors])

    def condition(self) -> float:
        if not self.vectors:
            return 1.0
        return float(np.linalg.cond(self.matrix))

    def combine(self, coeffs) -> PolygonVector:
        coeffs = np.asarray(coeffs, dtype=complex)
        if coeffs.shape != (len(self.vectors),):
            raise ValueError(f"expected {len(self.vectors)} coefficients, got {coeffs.shape}")
        return PolygonVector(self.matrix @ coeffs, self.kappa)


@dataclass(frozen=True, eq=False)
class PolygonRealization:
    vertices: np.ndarray
    orientation_area: float
    simple: bool = field(default=False)


def solve_even_coords(kappa: GeneralizedCurvatureData, odd_coords) -> PolygonVector:
    """The unique member of P(kappa) with odd coordinates (z_1, z_3, ..., z_{2n-1})."""
    odd = np.asarray(odd_coords, dtype=complex)
    n = kappa.n
    if odd.shape != (n,):
        raise ValueError(f"expected {n} odd coordinates, got {odd.shape}")
    if odd[0] != 0:
        raise ValueError("first odd coordinate z_1 must be 0")
    z = np.zeros(2 * n, dtype=complex)
    z[0::2] = odd
    for j, e in enumerate(kappa.phases()):
        pivot = 1 - e
        if abs(pivot) <= _PIVOT_TOL:
            raise ValueError(f"degenerate angle {kappa[j].token}: e^(ik) = 1")
        # 0-based: z[2j+1] sits between z[2j] and z[2j+2] (wrapping to z[0])
        z[2 * j + 1] = (z[(2 * j + 2) % (2 * n)] - e * z[2 * j]) / pivot
    return PolygonVector(z, kappa)


def standard_basis(kappa: GeneralizedCurvatureData) -> Basis:
    n = kappa.n
    vectors = []
    for j in range(1, n):
        odd = np.zeros(n, dtype=complex)
        odd[j] = 1
        vectors.append(solve_even_coords(kappa, odd))
    return Basis(vectors, kappa)


def residuals(kappa: GeneralizedCurvatureData, z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    n = kappa.n
    if z.shape != (2 * n,):
        raise ValueError(f"expected {2 * n} coordinates for n={n}, got {z.shape}")
    prev = z[0::2]
    mid = z[1::2]
    nxt = np.roll(z[0::2], -1)
    return np.asarray(kappa.phases()) * (prev - mid) - (nxt - mid)


def is_member(kappa: GeneralizedCurvatureData, z, tol: float = MEMBER_TOL) -> bool:
    z = np.asarray(z, dtype=complex)
    r = residuals(kappa, z)
    scale = tol * (1 + (np.max(np.abs(z)) if z.size else 0.0))
    return bool(abs(z[0]) <= scale and np.all(np.abs(r) <= scale))


def check_member(kappa: GeneralizedCurvatureData, z, tol: float = MEMBER_TOL) -> np.ndarray:
    z = np.asarray(z.coords if isinstance(z, PolygonVector) else z, dtype=complex)
    if not is_member(kappa, z, tol):
        raise MembershipError(f"vector is not a member of P{kappa}")
    return z


def random_element(kappa: GeneralizedCurvatureData, seed: int) -> PolygonVector:
    """Random combination of the standard basis with complex normal coefficients."""
    rng = np.random.default_rng(seed)
    m = kappa.n - 1
    c = (rng.standard_normal(m) + 1j * rng.standard_normal(m)) / np.sqrt(2)
    return standard_basis(kappa).combine(c)


def shoelace(vertices) -> float:
    """Signed area of the closed chain through ``vertices`` (counter-clockwise > 0)."""
    v = np.asarray(vertices, dtype=float)
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _orient(a, b, c) -> int:
    """Sign of the turn a -> b -> c, zero within the collinearity tolerance."""
    ux, uy = b[0] - a[0], b[1] - a[1]
    vx, vy = c[0] - a[0], c[1] - a[1]
    cross = ux * vy - uy * vx
    scale = np.hypot(ux, uy) * np.hypot(vx, vy)
    if scale == 0 or abs(cross) <= COLLINEAR_TOL * scale:
        return 0
    return 1 if cross > 0 else -1


def _on_segment(p, a, b) -> bool:
    """p collinear with a-b is assumed; test the bounding box."""
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segments_intersect(a, b, c, d) -> bool:
    """Closed segments [a, b] and [c, d] share a point (touching counts)."""
    o1, o2 = _orient(a, b, c), _orient(a, b, d)
    o3, o4 = _orient(c, d, a), _orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return ((o1 == 0 and _on_segment(c, a, b))
            or (o2 == 0 and _on_segment(d, a, b))
            or (o3 == 0 and _on_segment(a, c, d))
            or (o4 == 0 and _on_segment(b, c, d)))


def is_simple(vertices) -> bool:
    """Pairwise O(m^2) test of a closed polygon for self-contact."""
    v = [tuple(p) for p in np.asarray(vertices, dtype=float)]
    m = len(v)
    if m < 3:
        raise ValueError("a polygon needs at least 3 vertices")
    edges = [(v[k], v[(k + 1) % m]) for k in range(m)]
    if any(a == b for a, b in edges):
        return False
    for k in range(m):
        a, b = edges[k]
        c = edges[(k + 1) % m][1]
        # adjacent edges a->b, b->c fold back onto each other
        if _orient(a, b, c) == 0 and np.dot(np.subtract(a, b), np.subtract(c, b)) > 0:
            return False
        for j in range(k + 2, m):
            if k == 0 and j == m - 1:
                continue
            if segments_intersect(a, b, *edges[j]):
                return False
    return True


def realize(z: PolygonVector | np.ndarray) -> PolygonRealization:
    coords = np.asarray(z.coords if isinstance(z, PolygonVector) else z, dtype=complex)
    vertices = np.column_stack([coords.real, coords.imag])
    area = shoelace(vertices)
    try:
        simple = is_simple(vertices)
    except ValueError:
        simple = False
    return PolygonRealization(vertices, area, simple)
