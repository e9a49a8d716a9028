"""Acceptance gate: one test per criterion, each recording a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``; the summary section
at the end lists every criterion.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from conepoly.areaform import area_pairing, gram, numeric_signature, square_norm
from conepoly.curvature import (
    closed_form_signature,
    curvature,
    epsilon,
    is_integer_turns,
    p_of,
    q_of,
)
from conepoly.polyspace import is_member, random_element, realize, solve_even_coords
from conepoly.transforms import (
    allpi_signature,
    cut_glue,
    cut_glue_inverse,
    cut_glue_matrix,
    decomposition_columns,
    embed_merged,
    merged,
    recursive_signature,
    reverse,
    reversed_kappa,
    special_X,
    swapped,
)
from conepoly.verify import (
    COROLLARY_PARTS,
    corollary_expected,
    corollary_hypothesis,
    corollary_kappa,
    random_rational_kappa,
    random_real_kappa,
)

TOL = 1e-10


def pis(*xs):
    return curvature([Fraction(x) for x in xs])


@pytest.fixture(scope="module")
def sweep_tuples():
    rng = np.random.default_rng(20261019)
    rational = [random_rational_kappa(rng, int(rng.integers(2, 11))) for _ in range(500)]
    real = [random_real_kappa(rng, int(rng.integers(2, 11))) for _ in range(500)]
    return rational + real


def _triples(count, seed):
    rng = np.random.default_rng(seed)
    for t in range(count):
        n = int(rng.integers(2, 11))
        k = random_rational_kappa(rng, n) if t % 2 else random_real_kappa(rng, n)
        yield k, int(rng.integers(1, n)), int(rng.integers(2 ** 31))


def test_c1_main_theorem_sweep(sweep_tuples, criterion):
    start = time.perf_counter()
    bad = []
    for k in sweep_tuples:
        inert = numeric_signature(k)
        if inert.signature != (p_of(k), q_of(k)) or inert.zero != epsilon(k):
            bad.append(k)
    elapsed = time.perf_counter() - start
    ok = criterion("C1 main theorem sweep (500 rational + 500 real)", not bad and elapsed < 60,
                   f"{len(bad)} failures, {elapsed:.2f}s")
    assert ok, [str(k) for k in bad[:5]]


def test_c2_corollary_cases(criterion):
    rng = np.random.default_rng(8)
    per_part = {}
    bad = []
    for part in COROLLARY_PARTS:
        per_part[part] = 0
        for t in range(25):
            n = 2 + t % 9
            k = corollary_kappa(part, rng, n)
            assert corollary_hypothesis(part, k)
            want = corollary_expected(part, n)
            per_part[part] += 1
            if not (numeric_signature(k).signature == closed_form_signature(k) == want):
                bad.append((part, k))
    ok = criterion("C2 corollary parts 1-8, >= 20 tuples each",
                   not bad and min(per_part.values()) >= 20,
                   f"min per part {min(per_part.values())}, {len(bad)} failures")
    assert ok, [(p, str(k)) for p, k in bad[:5]]


def test_c3_n2_lemma(criterion):
    cases = {("3/2", "3/2"): (1, 0, 0), ("1", "1"): (0, 0, 1), ("1/2", "1/2"): (0, 1, 0)}
    got = {k: tuple(numeric_signature(pis(*k))) for k in cases}
    entry = gram(pis("1/2", "1/2")).entries[0, 0]
    ok = got == cases and abs(entry - (-0.5)) <= 1e-12
    ok = criterion("C3 n=2 lemma", ok, f"gram entry {entry.real:.17g}")
    assert ok, got


def test_c4_all_pi(criterion):
    bad = []
    for n in range(2, 13):
        k = pis(*[1] * n)
        P, N = allpi_signature(n)
        want = (P, N, epsilon(k))
        kk, odd = divmod(n, 2)
        assert want == ((kk, kk, 0) if odd else (kk - 1, kk - 1, 1))
        if tuple(numeric_signature(k)) != want:
            bad.append(n)
    ok = criterion("C4 all-pi lemma, n = 2..12", not bad, f"failing n: {bad}" if bad else "")
    assert ok


def test_c5a_cut_glue_isometry(criterion):
    bad = 0
    for k, i, seed in _triples(1000, 55):
        z = random_element(k, seed)
        out = cut_glue(k, i, z)
        before = square_norm(z)
        if not (is_member(swapped(k, i), out.coords, TOL)
                and abs(square_norm(out) - before) <= TOL * (1 + abs(before))):
            bad += 1
    ok = criterion("C5a cut-glue membership + isometry (1000 triples)", bad == 0, f"{bad} failures")
    assert ok


def test_c5b_cut_glue_double_application(criterion):
    """Literal check: the cut-glue map applied twice (at i on kappa, then at i
    on kappa(sigma)) returns the input.

    Expected to fail: two successive swaps of the same pair of cone points
    form a full twist, which acts non-trivially on the polygon space.  The
    inverse of the operation is :func:`cut_glue_inverse` (criterion C5c).
    """
    bad, worst = 0, 0.0
    for k, i, seed in _triples(1000, 55):
        z = random_element(k, seed)
        once = cut_glue(k, i, z)
        twice = cut_glue(once.kappa, i, once)
        via_matrix = cut_glue_matrix(once.kappa, i).matrix @ cut_glue_matrix(k, i).matrix @ z.coords
        scale = 1 + np.max(np.abs(z.coords))
        err = max(np.max(np.abs(twice.coords - z.coords)), np.max(np.abs(via_matrix - z.coords))) / scale
        worst = max(worst, err)
        if err > TOL:
            bad += 1
    ok = criterion("C5b cut-glue applied twice returns the input", bad == 0,
                   f"{bad}/1000 triples fail, worst relative error {worst:.3g}")
    assert ok


def test_c5c_cut_glue_inverse(criterion):
    bad = 0
    for k, i, seed in _triples(1000, 55):
        z = random_element(k, seed)
        back = cut_glue_inverse(k, i, cut_glue(k, i, z))
        if np.max(np.abs(back.coords - z.coords)) > TOL * (1 + np.max(np.abs(z.coords))):
            bad += 1
    ok = criterion("C5c cut-glue followed by its reverse operation returns the input", bad == 0,
                   f"{bad} failures")
    assert ok


def test_c6_reversal(criterion):
    bad = 0
    for k, _, seed in _triples(1000, 66):
        z = random_element(k, seed)
        r = reverse(k, z)
        before = square_norm(z)
        if not (is_member(reversed_kappa(k), r.coords, TOL)
                and abs(square_norm(r) + before) <= TOL * (1 + abs(before))):
            bad += 1
    ok = criterion("C6 reversal anti-isometry (1000 samples)", bad == 0, f"{bad} failures")
    assert ok


def test_c7_decomposition(sweep_tuples, criterion):
    rng = np.random.default_rng(77)
    tried, bad = 0, []
    while tried < 200:
        k = random_rational_kappa(rng, int(rng.integers(3, 11))) if tried % 2 else \
            random_real_kappa(rng, int(rng.integers(3, 11)))
        if is_integer_turns(k[0].turns + k[1].turns):
            continue
        tried += 1
        x = special_X(k)
        ys = [embed_merged(k, b) for b in _merged_basis(k)]
        ortho = all(abs(area_pairing(x, y)) <= TOL * (1 + np.max(np.abs(y.coords))) * (1 + np.max(np.abs(x.coords)))
                    for y in ys)
        s = np.linalg.svd(decomposition_columns(k), compute_uv=False)
        if not (ortho and int(np.sum(s > 1e-8 * s[0])) == k.n - 1):
            bad.append(k)
    rec_bad = [k for k in sweep_tuples if recursive_signature(k) != closed_form_signature(k)]
    ok = criterion("C7 decomposition (200 tuples) + recursive = closed (1000 tuples)",
                   not bad and not rec_bad, f"{len(bad)} decomposition, {len(rec_bad)} recursion failures")
    assert ok


def _merged_basis(k):
    from conepoly.polyspace import standard_basis

    return standard_basis(merged(k)).vectors


def _regular_member(n, ccw):
    """Regular 2n-gon with vertex z_1 = 0 built from its odd vertices."""
    sign = 1 if ccw else -1
    v = np.exp(sign * 1j * np.pi * np.arange(2 * n) / n) - 1
    k = curvature([Fraction(n + sign, n)] * n)
    z = solve_even_coords(k, v[0::2]).coords
    assert np.allclose(z, v, atol=1e-12), "member is not the regular polygon"
    return k, z


def test_c8_geometric_area_literal(criterion):
    """Literal family k_i = pi - pi/n.

    Expected to fail on orientation: with the turning convention of the
    constraint, the regular 2n-gon in P(pi - pi/n, ...) is traversed
    clockwise, so its square-norm is minus its area.  C8b checks the
    counter-clockwise family.
    """
    simple, positive, identity, anchor = [], [], [], None
    for n in range(3, 9):
        k, z = _regular_member(n, ccw=False)
        assert k == curvature([Fraction(n - 1, n)] * n)
        real = realize(z)
        norm = square_norm(z)
        simple.append(real.simple)
        positive.append(real.orientation_area > 0)
        identity.append(abs(norm - real.orientation_area) <= TOL * abs(real.orientation_area))
        if n == 4:
            anchor = norm
    anchor_ok = abs(anchor - 2 * math.sqrt(2)) <= TOL * 2 * math.sqrt(2)
    ok = all(simple) and all(positive) and all(identity) and anchor_ok
    detail = (f"simple {sum(simple)}/6, positively oriented {sum(positive)}/6, "
              f"norm = shoelace {sum(identity)}/6, n=4 square-norm {anchor:.6f}")
    ok = criterion("C8 regular 2n-gon for k = pi - pi/n: simple, positive, norm = area", ok, detail)
    assert ok


def test_c8b_geometric_area_ccw(criterion):
    ok = True
    for n in range(3, 9):
        k, z = _regular_member(n, ccw=True)
        real = realize(z)
        norm = square_norm(z)
        ok = ok and real.simple and real.orientation_area > 0
        ok = ok and abs(norm - real.orientation_area) <= TOL * real.orientation_area
        ok = ok and abs(norm - n * math.sin(math.pi / n)) <= TOL * norm
        if n == 4:
            ok = ok and abs(norm - 2 * math.sqrt(2)) <= TOL * 2 * math.sqrt(2)
    ok = criterion("C8b regular 2n-gon for k = pi + pi/n: simple, positive, norm = area", ok)
    assert ok


def test_c9_golden_vectors(criterion):
    g = 1e-12
    checks = []
    k = pis("1/2", "1/2")
    z = solve_even_coords(k, [0, 1]).coords
    checks.append(np.max(np.abs(z - [0, (1 + 1j) / 2, 1, (1 - 1j) / 2])) <= g
                  and abs(area_pairing(z, z) + 0.5) <= g)
    k = pis(1, 1)
    z = solve_even_coords(k, [0, 1]).coords
    checks.append(np.max(np.abs(z - [0, 0.5, 1, 0.5])) <= g and abs(area_pairing(z, z)) <= g)
    k = pis("1/2", "1")
    z = np.array([0, (1 + 1j) / 2, 1, 0.5])
    out = cut_glue(k, 1, z).coords
    checks.append(np.max(np.abs(out - [0, 0.5j, 1j, (1 + 1j) / 2])) <= g
                  and abs(area_pairing(out, out) + 0.25) <= g
                  and abs(area_pairing(z, z) + 0.25) <= g)
    k = pis("1/2", "1/2", "1")
    x = special_X(k).coords
    ys = [embed_merged(k, b).coords for b in _merged_basis(k)]
    checks.append(np.max(np.abs(x - [0, -1, -1 + 1j, 1j, 0, 0])) <= g
                  and is_member(k, x, g)
                  and all(abs(area_pairing(x, y)) <= g for y in ys))
    ok = criterion("C9 hand-derived golden vectors", all(checks), f"{sum(checks)}/4")
    assert ok


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-v"]))
