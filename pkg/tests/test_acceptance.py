"""Acceptance criteria 1-11, exact arithmetic, zero tolerance.

Each test records one PASS/FAIL line; the lines are echoed in the terminal
summary (see conftest) and printed directly under ``pytest -s``.
"""

import random
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
from matchless.circle import (
    check_averaged_window_bound, check_window_bound, claim_suite, identity_sigma, incidence_check,
    window_bound_sweep,
)
from matchless.family import SetFamily, all_upsets
from matchless.formulas import emc_value, f_value, kleitman_e, min_missing, p_size, quinn_e
from matchless.gallery import (
    ConstructionSpec, b_recursion_check, build, construction_grid, size_of, verify_construction,
)
from matchless.invariants import matching_number, random_monotone_family
from matchless.partition import (
    random_sweep, shadow_sweep, sweep_points, three_level_sides, upset_sweep,
)
from matchless.solver import Problem, SearchSpace, brute_force_oracle, solve_exact


def record(n, ok, text):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {text}"
    ACCEPTANCE_LINES.append((n, line))
    print(line)
    return ok


def timed(problem, **kw):
    t0 = time.monotonic()
    res = solve_exact(problem, **kw)
    return res, time.monotonic() - t0


def P(s, m, l):
    return build(ConstructionSpec.P(s, m, l))


def test_criterion_01_kleitman_values():
    a, ta = timed(Problem.E(5, 3), budget_seconds=300)
    b, tb = timed(Problem.E(6, 3), budget_seconds=300)
    ok = (a.proved and b.proved and a.optimum == 26 == kleitman_e(3, 2)
          and b.optimum == 52 == kleitman_e(3, 2, "sm") and ta < 300 and tb < 300)
    assert record(1, ok, f"E(5,3) = {a.optimum}, E(6,3) = {b.optimum} "
                         f"({ta:.2f}s, {tb:.2f}s, both proved optimal)")


def test_criterion_02_quinn_value():
    res, t = timed(Problem.E(7, 3), budget_seconds=900)
    ok = res.proved and res.optimum == 105 == quinn_e(2) and t < 900
    assert record(2, ok, f"E(7,3) = {res.optimum} = quinn_e(2), {res.certificate}, "
                         f"{res.nodes} nodes, {t:.1f}s")


def test_criterion_03_smallest_p_case():
    res = solve_exact(Problem.E(4, 3))
    s, l = 3, 2
    ok = (res.optimum == 12 == p_size(3, 1, 2) == len(P(3, 1, 2))
          and 2 ** 4 - res.optimum == 4 == min_missing(s, l) == 2 * (s - l) + 2)
    assert record(3, ok, f"E(4,3) = {res.optimum} = |P(3,1,2)|; 16 - 12 = 4 = 2(s-l)+2")


def test_criterion_04_reduction_against_all_families():
    rows = []
    for n in range(0, 5):
        for s in (2, 3, 4):
            p = Problem.E(n, s)
            rows.append((n, s, solve_exact(p, SearchSpace.MONOTONE_SHIFTED).optimum,
                         brute_force_oracle(p, "ALL")))
    bad = [r for r in rows if r[2] != r[3]]
    assert record(4, not bad, f"monotone-shifted search = all-families oracle on {len(rows)} "
                              f"instances (n <= 4, s in 2..4); mismatches: {bad}")


def test_criterion_05_uniform_values():
    out = []
    for n, k, s, want in [(5, 2, 2, 4), (8, 2, 3, 13), (9, 3, 2, 28)]:
        res, t = timed(Problem.EK(n, k, s), budget_seconds=60)
        out.append((n, k, s, res.optimum, emc_value(n, k, s), want, res.proved and t < 60))
    ok = all(opt == ev == want and fine for *_, opt, ev, want, fine in out)
    assert record(5, ok, "EK " + ", ".join(f"({n},{k},{s}) = {o}" for n, k, s, o, *_ in out)
                  + " matching the closed forms, each under a minute")


def test_criterion_06_f_values_and_b_recursion():
    a = solve_exact(Problem.F(5, 3, 2))
    b = solve_exact(Problem.F(5, 4, 3))
    rec = b_recursion_check(30, 6)
    ok = (a.optimum == 26 == f_value(5, 3, 2) and b.optimum == 27 == f_value(5, 4, 3) and rec.ok)
    assert record(6, ok, f"F(5,3,2) = {a.optimum}, F(5,4,3) = {b.optimum}; {rec[0].name}: "
                         f"{'exact' if rec.ok else 'MISMATCH'}")


def test_criterion_07_equality_fixtures():
    avg = check_averaged_window_bound(P(5, 1, 2), 5, 1)[0]
    general = three_level_sides(P(3, 1, 2), 3, 2, "general")
    l2 = three_level_sides(P(4, 1, 2), 4, 2, "l2")
    win = check_window_bound(P(5, 1, 2), identity_sigma(8), 5, 1)[0]
    ok = (avg.lhs == Fraction(3, 8) == avg.rhs and general == (3, 3) and l2 == (5, 5)
          and win.lhs == 3 == win.rhs)
    assert record(7, ok, f"averaged {avg.lhs} = 3/8; three-level general {general[0]} = {general[1]}; "
                         f"l = 2 variant {l2[0]} = {l2[1]}; window sum {win.lhs} = 3")


def _literal_three_level_violations():
    """Evaluate the general three-level bound with no range restriction."""
    bad, runs = [], 0

    def test(F, s, l, where):
        nonlocal runs
        if s < 3:
            return
        runs += 1
        lhs, rhs = three_level_sides(F, s, l, "general")
        if lhs < rhs:
            bad.append((where, s, l, F.n, lhs, rhs))

    rng = random.Random(0)
    points = sweep_points(2, 10)
    for _ in range(1000):
        s, m, l, n = rng.choice(points)
        F = random_monotone_family(n, s, rng)
        test(F, s, l, "random")
    for s, m, l, n in sweep_points(2, 5):
        for bits in all_upsets(n):
            F = SetFamily.from_bits(n, bits)
            if matching_number(F)[0] < s:
                test(F, s, l, "exhaustive")
    return bad, runs


@pytest.mark.xfail(strict=True, reason=(
    "the general three-level bound fails when s - l = 1: the up-set of all sets meeting {1,2} "
    "on n = 4 has nu = 2 < 3 and gives 5/2 < 8/3 at s = 3, l = 2"))
def test_criterion_08_general_three_level_bound_everywhere():
    bad, runs = _literal_three_level_violations()
    first = bad[0] if bad else None
    record(8, not bad, f"general three-level bound over the full sweep domain: {len(bad)} of "
                       f"{runs} evaluations violate it" + (
                           f"; first: {first[0]} s={first[1]} l={first[2]} n={first[3]}, "
                           f"{first[4]} < {first[5]}" if first else ""))
    assert not bad


def test_criterion_08_property_sweeps():
    rnd = random_sweep(samples=1000, seed=0, n_max=10)
    exh = upset_sweep(n_max=5)
    sh = shadow_sweep()
    checks = {c.name.split(" [")[0] for c in list(rnd) + list(exh)}
    ok = rnd.ok and exh.ok and sh.ok
    fails = [c.name for c in rnd.failures() + exh.failures() + sh.failures()]
    ACCEPTANCE_LINES.append((8.5, f"{'PASS' if ok else 'FAIL'} criterion 8 (every check outside "
                                  f"the s - l = 1 gap): {len(checks)} checks over 1000 random and "
                                  f"{exh.stats['families']} exhaustive families, "
                                  f"{sh.stats['families']} shadow families; failures: {fails}"))
    print(ACCEPTANCE_LINES[-1][1])
    assert ok


def test_criterion_09_circle_suite():
    cases = claim_suite(14, 6)
    applicable = sum(c.applicable for c in cases)
    sweeps = []
    rng = random.Random(0)
    for s, m in [(5, 1), (4, 2)]:
        n = s * m + s - 2
        fams = [P(s, m, 2)] + [random_monotone_family(n, s, rng) for _ in range(3)]
        sweeps += [window_bound_sweep(F, s, m, trials=1000, seed=i) for i, F in enumerate(fams)]
    inc4 = incidence_check(4, 1)
    inc5 = incidence_check(5, 1)
    ok = (cases.ok and all(r.ok for r in sweeps) and inc4.ok and inc5.ok
          and inc4["min incidence"].lhs == 12 and inc5["min incidence"].lhs == 48)
    assert record(9, ok, f"three cases exhaustive on {applicable} (nbar, s) pairs; window bound over "
                         f"1000 permutations on {len(sweeps)} families at (5,1) and (4,2); "
                         f"incidence 12 and 48")


def test_criterion_10_big_integer_comparison():
    t0 = time.monotonic()
    w = size_of(ConstructionSpec.W(20, 20, 401))
    p = size_of(ConstructionSpec.P(20, 20, 19), 401)
    t = time.monotonic() - t0
    ok = isinstance(w, int) and isinstance(p, int) and w > p and t < 10
    assert record(10, ok, f"|W(20,20)| on 401 points exceeds |P(20,20,19)| "
                          f"({len(str(w))}-digit integers, {t:.3f}s)")


def test_criterion_11_construction_grid():
    grid = construction_grid(8, 3, 4, 20)
    bad, kinds = [], {}
    for spec, n in grid:
        rep = verify_construction(spec, n)
        kinds[spec.kind] = kinds.get(spec.kind, 0) + 1
        if not rep.ok:
            bad.append((str(spec), n, [c.name for c in rep.failures()]))
    assert record(11, not bad, f"{len(grid)} constructions "
                               f"({', '.join(f'{k}: {v}' for k, v in sorted(kinds.items()))}); "
                               f"mismatches: {bad[:3]}")
