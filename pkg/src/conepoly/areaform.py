"""The area Hermitian form, its Gram matrix on a basis, and matrix inertia."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curvature import GeneralizedCurvatureData
from .polyspace import Basis, PolygonVector, standard_basis

HERMITIAN_TOL = 1e-8


class InertiaError(ArithmeticError):
    """Inertia could not be determined reliably."""


@dataclass(frozen=True, eq=False)
class GramMatrix:
    entries: np.ndarray
    kappa: GeneralizedCurvatureData
    basis_id: str = "standard"


@dataclass(frozen=True)
class Inertia:
    positive: int
    negative: int
    zero: int
    tolerance_used: float

    @property
    def signature(self) -> tuple[int, int]:
        return self.positive, self.negative

    def __iter__(self):
        return iter((self.positive, self.negative, self.zero))


def _coords(z) -> np.ndarray:
    return np.asarray(z.coords if isinstance(z, PolygonVector) else z, dtype=complex)


def area_pairing(z, w) -> complex:
    """<z, w> = (i/4) sum_{k=1}^{2n-1} (z_k conj(w_{k+1}) - z_{k+1} conj(w_k)).

    The sum is not cyclic; for members z_1 = 0 so it agrees with the closed
    shoelace sum.
    """
    z, w = _coords(z), _coords(w)
    if z.shape != w.shape:
        raise ValueError(f"length mismatch: {z.shape} vs {w.shape}")
    s = np.sum(z[:-1] * np.conj(w[1:]) - z[1:] * np.conj(w[:-1]))
    return complex(0.25j * s)


def square_norm(z) -> float:
    return area_pairing(z, z).real


def gram_of_columns(cols: np.ndarray) -> np.ndarray:
    """Gram matrix of the pairing for the columns of a 2n x m matrix."""
    a, b = cols[:-1], cols[1:]
    return 0.25j * (a.T @ np.conj(b) - b.T @ np.conj(a))


def gram(kappa: GeneralizedCurvatureData, basis: Basis | None = None) -> GramMatrix:
    if basis is None:
        basis = standard_basis(kappa)
    if basis.kappa != kappa:
        raise ValueError(f"basis belongs to P{basis.kappa}, not P{kappa}")
    return GramMatrix(gram_of_columns(basis.matrix), kappa)


def default_tol(g: np.ndarray) -> float:
    largest = float(np.max(np.abs(g))) if g.size else 0.0
    return 1e-9 * max(1.0, largest)


def inertia(g: GramMatrix | np.ndarray, tol: float | None = None) -> Inertia:
    """Count positive, negative and null eigenvalues of a Hermitian matrix.

    G = A + iB is embedded as the real symmetric [[A, -B], [B, A]], whose
    spectrum is that of G with every multiplicity doubled.
    """
    g = np.asarray(g.entries if isinstance(g, GramMatrix) else g, dtype=complex)
    m = g.shape[0]
    if g.shape != (m, m):
        raise ValueError(f"Gram matrix must be square, got {g.shape}")
    if tol is None:
        tol = default_tol(g)
    if m == 0:
        return Inertia(0, 0, 0, tol)
    scale = max(1.0, float(np.max(np.abs(g))))
    if np.max(np.abs(g - g.conj().T)) > HERMITIAN_TOL * scale:
        raise InertiaError("matrix is not Hermitian")

    a, b = g.real, g.imag
    emb = np.block([[a, -b], [b, a]])
    eig = np.linalg.eigvalsh(emb)
    counts = [int(np.sum(eig > tol)), int(np.sum(eig < -tol))]
    counts.append(2 * m - sum(counts))
    if any(c % 2 for c in counts):
        raise InertiaError(f"odd eigenvalue count {counts} near tolerance {tol:g}")
    p, n, z = (c // 2 for c in counts)
    return Inertia(p, n, z, tol)


def numeric_signature(kappa: GeneralizedCurvatureData, tol: float | None = None) -> Inertia:
    return inertia(gram(kappa), tol)
