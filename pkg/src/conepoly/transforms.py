"""Structural maps between polygon spaces and the recursive signature.

* cut-and-glue realizes P(kappa) ~ P(kappa(sigma)) for an adjacent
  transposition sigma = (i, i+1), preserving the area form;
* reversal maps P(k_1..k_n) onto P(2pi - k_n, ..., 2pi - k_1) and negates it;
* the special vector X spans an orthogonal complement of {z : z_2 = z_4},
  which itself is a copy of P(k_1 + k_2, k_3, ..., k_n).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .curvature import (
    CurvatureData,
    GeneralizedCurvatureData,
    closed_form_signature,
    is_integer_turns,
    permute,
    transposition,
)
from .polyspace import MEMBER_TOL, PolygonVector, check_member, is_member


class HypothesisError(ValueError):
    """Inputs violate the hypothesis under which a construction exists."""


@dataclass(frozen=True, eq=False)
class LinearMapMatrix:
    matrix: np.ndarray
    source_kappa: GeneralizedCurvatureData
    target_kappa: GeneralizedCurvatureData

    def __call__(self, z) -> PolygonVector:
        z = np.asarray(z.coords if isinstance(z, PolygonVector) else z, dtype=complex)
        return PolygonVector(self.matrix @ z, self.target_kappa)


def swapped(kappa: GeneralizedCurvatureData, i: int) -> GeneralizedCurvatureData:
    """kappa with entries i and i+1 exchanged (1-based)."""
    return permute(kappa, transposition(kappa.n, i, i + 1))


def _check_index(kappa: GeneralizedCurvatureData, i: int) -> None:
    if not 1 <= i <= kappa.n - 1:
        raise IndexError(f"cut-glue index {i} out of range 1..{kappa.n - 1}")


def _cut_glue_coords(z: np.ndarray, phase: complex, i: int) -> np.ndarray:
    # rotate the piece z_{2i} .. z_{2i+3} about z_{2i} by -k_i (1-based indices)
    m = len(z)
    out = z.copy()
    rot = np.conj(phase)
    c = z[2 * i - 1]
    out[2 * i - 1] = c + rot * (z[2 * i + 1] - c)
    out[2 * i] = c + rot * (z[(2 * i + 2) % m] - c)
    out[2 * i + 1] = c
    return out


def cut_glue(kappa: GeneralizedCurvatureData, i: int, z) -> PolygonVector:
    """Image of z in P(kappa(sigma)), sigma = (i, i+1)."""
    _check_index(kappa, i)
    zc = check_member(kappa, z)
    return PolygonVector(_cut_glue_coords(zc, kappa[i - 1].phase(), i), swapped(kappa, i))


def cut_glue_inverse(kappa: GeneralizedCurvatureData, i: int, zp) -> PolygonVector:
    """Undo :func:`cut_glue`: map P(kappa(sigma)) back to P(kappa)."""
    _check_index(kappa, i)
    target = swapped(kappa, i)
    w = check_member(target, zp)
    e = kappa[i - 1].phase()
    out = w.copy()
    c = w[2 * i + 1]
    out[2 * i - 1] = c
    out[2 * i] = c + e * (w[2 * i - 2] - c)
    out[2 * i + 1] = c + e * (w[2 * i - 1] - c)
    return PolygonVector(out, kappa)


def cut_glue_matrix(kappa: GeneralizedCurvatureData, i: int) -> LinearMapMatrix:
    """The 2n x 2n matrix of the cut-glue formula, applied column by column."""
    _check_index(kappa, i)
    eye = np.eye(2 * kappa.n, dtype=complex)
    phase = kappa[i - 1].phase()
    mat = np.column_stack([_cut_glue_coords(col, phase, i) for col in eye.T])
    return LinearMapMatrix(mat, kappa, swapped(kappa, i))


def reversed_kappa(kappa: GeneralizedCurvatureData) -> CurvatureData:
    return type(kappa)(tuple(a.complement() for a in reversed(kappa.angles)))


def reverse(kappa: GeneralizedCurvatureData, z) -> PolygonVector:
    """(0, z_2, ..., z_2n) -> (0, z_2n, z_{2n-1}, ..., z_2)."""
    zc = check_member(kappa, z)
    out = np.concatenate([zc[:1], zc[:0:-1]])
    return PolygonVector(out, reversed_kappa(kappa))


def merged(kappa: GeneralizedCurvatureData) -> GeneralizedCurvatureData:
    """(k_1 + k_2, k_3, ..., k_n)."""
    return GeneralizedCurvatureData((kappa[0] + kappa[1],) + kappa.angles[2:])


def special_X(kappa: GeneralizedCurvatureData) -> PolygonVector:
    """X = (0, -1, -1 + e^{ik_1}, x, 0, ..., 0) in P(kappa), orthogonal to z_2 = z_4."""
    if kappa.n < 2:
        raise HypothesisError("special vector needs n >= 2")
    if is_integer_turns(kappa[0].turns + kappa[1].turns):
        raise HypothesisError(f"k_1 + k_2 = {(kappa[0] + kappa[1]).token} is a multiple of 2*pi")
    e1, e2 = kappa[0].phase(), kappa[1].phase()
    if abs(e2 - 1) <= 1e-14:
        raise HypothesisError("k_2 is a multiple of 2*pi")
    x = (e1 * e2 - e2) / (e2 - 1)
    z = np.zeros(2 * kappa.n, dtype=complex)
    z[1:4] = (-1, -1 + e1, x)
    return PolygonVector(z, kappa)


def embed_merged(kappa: GeneralizedCurvatureData, w) -> PolygonVector:
    """Send w in P(k_1 + k_2, k_3, ...) to the element of P(kappa) with z_2 = z_4."""
    wc = check_member(merged(kappa), w)
    e1 = kappa[0].phase()
    z = np.concatenate([[0, wc[1], wc[1] * (1 - e1)], wc[1:]])
    return PolygonVector(z, kappa)


def allpi_signature(n: int) -> tuple[int, int]:
    if n < 2:
        raise ValueError("n must be at least 2")
    k, odd = divmod(n, 2)
    return (k, k) if odd else (k - 1, k - 1)


def _pair_signature(a, b) -> tuple[int, int]:
    # P(k_1, k_2) only depends on the angles modulo 2*pi
    s = a.reduced().turns + b.reduced().turns
    if is_integer_turns(s):
        return 0, 0
    return (1, 0) if s > 1 else (0, 1)


def _admissible_pair(kappa: GeneralizedCurvatureData) -> tuple[int, int] | None:
    for i, j in combinations(range(kappa.n), 2):
        if not is_integer_turns(kappa[i].turns + kappa[j].turns):
            return i, j
    return None


def recursive_signature(kappa: GeneralizedCurvatureData) -> tuple[int, int]:
    """Signature by splitting off a two-angle summand at each step.

    P(kappa) = CX + P(k_i + k_j, rest) after moving an admissible pair (i, j)
    to the front, so the signature is the sum of the pair's n = 2 signature
    and that of the merged tuple.
    """
    if kappa.n == 1:
        return 0, 0
    if kappa.n == 2:
        return _pair_signature(kappa[0], kappa[1])
    pair = _admissible_pair(kappa)
    if pair is None:
        # every entry is congruent to pi
        return closed_form_signature(kappa.reduced())
    i, j = pair
    rest = tuple(a for k, a in enumerate(kappa.angles) if k not in pair)
    head = _pair_signature(kappa[i], kappa[j])
    tail = recursive_signature(GeneralizedCurvatureData((kappa[i] + kappa[j],) + rest))
    return head[0] + tail[0], head[1] + tail[1]


def decomposition_columns(kappa: GeneralizedCurvatureData) -> np.ndarray:
    """Columns X, then the embedded standard basis of the merged space."""
    from .polyspace import standard_basis

    cols = [special_X(kappa).coords]
    cols += [embed_merged(kappa, b).coords for b in standard_basis(merged(kappa)).vectors]
    return np.column_stack(cols)


def is_isomorphism_onto(lin: LinearMapMatrix, basis_vectors, tol: float = MEMBER_TOL) -> bool:
    """Images of the given vectors are members of the target space and stay independent."""
    images = [lin(v).coords for v in basis_vectors]
    if not all(is_member(lin.target_kappa, z, tol) for z in images):
        return False
    if not images:
        return True
    s = np.linalg.svd(np.column_stack(images), compute_uv=False)
    return bool(s[-1] > 1e-8 * s[0])
