"""Randomized cross-checks of the signature formula and the structural maps.

Used by ``conepoly verify``; every check returns a :class:`CheckResult`
listing the curvature tuples it failed on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .areaform import area_pairing, gram_of_columns, numeric_signature, square_norm
from .curvature import Angle, CurvatureData, closed_form_signature, epsilon, is_integer_turns
from .polyspace import is_member, random_element
from .transforms import (
    allpi_signature,
    cut_glue,
    cut_glue_inverse,
    decomposition_columns,
    recursive_signature,
    reverse,
    reversed_kappa,
    special_X,
)

ISOMETRY_TOL = 1e-10


@dataclass
class CheckResult:
    name: str
    trials: int = 0
    failures: list[CurvatureData] = field(default_factory=list)
    detail: str = ""

    @property
    def passed(self) -> bool:
        return not self.failures


# -- generators ---------------------------------------------------------------

def random_rational_kappa(rng: np.random.Generator, n: int, max_den: int = 24) -> CurvatureData:
    """Angles a/b * pi with 1 <= a < 2b <= 2 * max_den."""
    angles = []
    for _ in range(n):
        b = int(rng.integers(1, max_den + 1))
        a = int(rng.integers(1, 2 * b))
        angles.append(Angle.pi(a, b))
    return CurvatureData(angles)


def random_real_kappa(rng: np.random.Generator, n: int) -> CurvatureData:
    x = rng.uniform(0.0, 2 * math.pi, size=n)
    x[x == 0.0] = math.pi
    return CurvatureData([Angle.rad(float(v)) for v in x])


def _compose(rng, n: int, lo: list[int], hi: list[int], den: int) -> CurvatureData:
    """Random units u_i in [1, 2*den - 1] whose prefix sums lie in [lo_i, hi_i]."""
    # backward pass: reachable prefix-sum window at each step
    full = 2 * den - 1
    lo, hi = list(lo), list(hi)
    for i in range(n - 2, -1, -1):
        lo[i] = max(lo[i], lo[i + 1] - full)
        hi[i] = min(hi[i], hi[i + 1] - 1)
    s, units = 0, []
    for i in range(n):
        a, b = max(lo[i], s + 1), min(hi[i], s + full)
        if a > b:
            raise ValueError("infeasible prefix constraints")
        t = int(rng.integers(a, b + 1))
        units.append(t - s)
        s = t
    return CurvatureData([Angle.pi(u, den) for u in units])


def corollary_kappa(part: int, rng: np.random.Generator, n: int) -> CurvatureData:
    """A rational tuple satisfying the hypothesis of the given corollary part.

    Angles are integer multiples of pi/den, so 2*pi is ``2 * den`` units.
    """
    # den >= n keeps every part feasible (e.g. n units below one turn)
    den = int(rng.integers(max(2, n), max(2, n) + 12))
    turn = 2 * den
    inf = 10 ** 9
    free_lo, free_hi = [0] * n, [inf] * n

    def total(lo_t: int, hi_t: int) -> CurvatureData:
        return _compose(rng, n, free_lo[:-1] + [lo_t], free_hi[:-1] + [hi_t], den)

    if part == 1:
        return total(turn + 1, 2 * turn - 1)
    if part == 2:
        return total(turn, turn)
    if part == 3:
        return total(turn * (n - 1), turn * (n - 1))
    if part == 4:
        return total(1, turn - 1)
    if part == 5:
        return total(turn * (n - 1) + 1, turn * n - 1)
    if part == 6:
        return total(turn * (n - 2) + 1, turn * (n - 1) - 1)
    if part in (7, 8):
        lo = [turn * i + 1 for i in range(n)]
        hi = [turn * (i + 1) - 1 for i in range(n)]
        if part == 8:
            # total 2*pi*(n-1); a total of 2*pi*n would force k_n > 2*pi
            lo[-1] = hi[-1] = turn * (n - 1)
        return _compose(rng, n, lo, hi, den)
    raise ValueError(f"no corollary part {part}")


def _prefix_turns(kappa: CurvatureData) -> list[Fraction]:
    out, s = [], Fraction(0)
    for a in kappa:
        s += a.turns
        out.append(s)
    return out


def corollary_hypothesis(part: int, kappa: CurvatureData) -> bool:
    """Whether kappa satisfies the stated hypothesis (total measured in turns)."""
    n = kappa.n
    pre = _prefix_turns(kappa)
    t = pre[-1]
    strict_prefix = all(i < pre[i] < i + 1 for i in range(n - 1))
    return {
        1: 1 < t < 2,
        2: t == 1,
        3: t == n - 1,
        4: t < 1,
        5: n - 1 < t < n,
        6: n - 2 < t < n - 1,
        7: strict_prefix and n - 1 < t < n,
        8: strict_prefix and t == n - 1,
    }[part]


def corollary_expected(part: int, n: int) -> tuple[int, int]:
    return {
        1: (1, n - 2),
        2: (0, n - 2),
        3: (n - 2, 0),
        4: (0, n - 1),
        5: (n - 1, 0),
        6: (n - 2, 1),
        7: (n - 1, 0),
        8: (n - 2, 0),
    }[part]


COROLLARY_PARTS = tuple(range(1, 9))


# -- checks -------------------------------------------------------------------

ClosedForm = Callable[[CurvatureData], tuple[int, int]]


def _faulty_closed_form(kappa: CurvatureData) -> tuple[int, int]:
    p, q = closed_form_signature(kappa)
    return p, -q


def signature_agrees(kappa: CurvatureData, closed: ClosedForm = closed_form_signature) -> bool:
    num = numeric_signature(kappa)
    return (num.signature == closed(kappa) == recursive_signature(kappa)
            and num.zero == epsilon(kappa))


def shrink(kappa: CurvatureData, fails: Callable[[CurvatureData], bool]) -> CurvatureData:
    """Halve a failing tuple while some half still fails."""
    while kappa.n >= 4:
        h = kappa.n // 2
        for part in (kappa.angles[:h], kappa.angles[h:]):
            half = CurvatureData(part)
            if fails(half):
                kappa = half
                break
        else:
            break
    return kappa


def check_signatures(rng, trials: int, n_max: int, closed: ClosedForm = closed_form_signature) -> CheckResult:
    res = CheckResult("signature: numeric = closed = recursive")
    fails = lambda k: not signature_agrees(k, closed)  # noqa: E731
    for t in range(trials):
        n = int(rng.integers(2, n_max + 1))
        kappa = random_rational_kappa(rng, n) if t % 2 == 0 else random_real_kappa(rng, n)
        res.trials += 1
        if fails(kappa):
            res.failures.append(shrink(kappa, fails))
    return res


def cut_glue_ok(kappa: CurvatureData, i: int, seed: int) -> bool:
    z = random_element(kappa, seed)
    w = random_element(kappa, seed + 1)
    zp, wp = cut_glue(kappa, i, z), cut_glue(kappa, i, w)
    before = area_pairing(z, z).real
    after = area_pairing(zp, zp).real
    back = cut_glue_inverse(kappa, i, zp).coords
    scale = 1 + np.max(np.abs(z.coords))
    return (is_member(zp.kappa, zp.coords)
            and abs(after - before) <= ISOMETRY_TOL * (1 + abs(before))
            and abs(area_pairing(zp, wp) - area_pairing(z, w)) <= ISOMETRY_TOL * scale ** 2
            and np.max(np.abs(back - z.coords)) <= ISOMETRY_TOL * scale)


def check_cut_glue(rng, trials: int, n_max: int) -> CheckResult:
    res = CheckResult("cut-glue: membership, isometry, inverse")
    for _ in range(trials):
        n = int(rng.integers(2, n_max + 1))
        kappa = random_rational_kappa(rng, n)
        i = int(rng.integers(1, n))
        res.trials += 1
        if not cut_glue_ok(kappa, i, int(rng.integers(2 ** 31))):
            res.failures.append(kappa)
    return res


def reverse_ok(kappa: CurvatureData, seed: int) -> bool:
    z = random_element(kappa, seed)
    r = reverse(kappa, z)
    before = square_norm(z)
    return (is_member(reversed_kappa(kappa), r.coords)
            and abs(square_norm(r) + before) <= ISOMETRY_TOL * (1 + abs(before)))


def check_reverse(rng, trials: int, n_max: int) -> CheckResult:
    res = CheckResult("reversal: anti-isometry onto P(2pi - k)")
    for _ in range(trials):
        kappa = random_rational_kappa(rng, int(rng.integers(2, n_max + 1)))
        res.trials += 1
        if not reverse_ok(kappa, int(rng.integers(2 ** 31))):
            res.failures.append(kappa)
    return res


def decomposition_ok(kappa: CurvatureData) -> bool:
    cols = decomposition_columns(kappa)
    x = special_X(kappa)
    scale = np.max(np.abs(cols))
    g = gram_of_columns(cols)
    ortho = np.max(np.abs(g[0, 1:])) <= ISOMETRY_TOL * max(1.0, scale ** 2) if cols.shape[1] > 1 else True
    s = np.linalg.svd(cols, compute_uv=False)
    rank = int(np.sum(s > 1e-8 * s[0]))
    return bool(ortho and rank == kappa.n - 1 and is_member(kappa, x.coords))


def check_decomposition(rng, trials: int, n_max: int) -> CheckResult:
    res = CheckResult("decomposition: CX + {z2 = z4} = P(k)")
    while res.trials < trials:
        kappa = random_rational_kappa(rng, int(rng.integers(3, max(3, n_max) + 1)))
        if is_integer_turns(kappa[0].turns + kappa[1].turns):
            continue
        res.trials += 1
        if not decomposition_ok(kappa):
            res.failures.append(kappa)
    return res


def check_corollary(rng, part: int, trials: int, n_max: int, closed: ClosedForm = closed_form_signature) -> CheckResult:
    res = CheckResult(f"corollary part {part}")
    for _ in range(trials):
        n = int(rng.integers(2, n_max + 1))
        kappa = corollary_kappa(part, rng, n)
        res.trials += 1
        want = corollary_expected(part, n)
        num = numeric_signature(kappa)
        if not (corollary_hypothesis(part, kappa) and num.signature == want == closed(kappa)):
            res.failures.append(kappa)
    return res


def check_allpi(n_max: int, closed: ClosedForm = closed_form_signature) -> CheckResult:
    res = CheckResult("all-pi lemma")
    for n in range(2, n_max + 1):
        kappa = CurvatureData([Angle.pi(1)] * n)
        res.trials += 1
        num = numeric_signature(kappa)
        if not (num.signature == allpi_signature(n) == closed(kappa) and num.zero == epsilon(kappa)):
            res.failures.append(kappa)
    return res


def run_suite(n_max: int = 8, trials: int = 200, seed: int = 0, fault: bool = False) -> list[CheckResult]:
    """Run every check; ``fault`` negates q in the closed form (harness sanity)."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    rng = np.random.default_rng(seed)
    closed = _faulty_closed_form if fault else closed_form_signature
    results = [
        check_signatures(rng, trials, n_max, closed),
        check_cut_glue(rng, trials, n_max),
        check_reverse(rng, trials, n_max),
        check_decomposition(rng, trials, max(n_max, 3)),
    ]
    per_part = max(1, trials // len(COROLLARY_PARTS))
    results += [check_corollary(rng, part, per_part, n_max, closed) for part in COROLLARY_PARTS]
    results.append(check_allpi(n_max, closed))
    return results

