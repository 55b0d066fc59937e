from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from matchless.family import SetFamily
from matchless.gallery import ConstructionSpec, build
from matchless.partition import (
    Partition, all_checks, check_binomial_inequalities, check_mixed_partition_bound,
    check_partition_identities, check_shadow_inequality, check_three_level_bound,
    check_upper_level_deficit, random_sweep, sweep_points, three_level_sides, tuple_stats,
)
from strategies import bounded_upsets, families


def P(s, m, l):
    return build(ConstructionSpec.P(s, m, l))


def F_(*xs):
    return tuple(Fraction(x) for x in xs)


def test_partition_validation():
    assert Partition((2, 1), 5).tuple_count() == 5 * 4 * 3 // 2
    for parts, n in [((3,), 5), ((1, 0), 3), ((3, 3), 5)]:
        with pytest.raises(ValueError):
            Partition(parts, n)


@given(families(n_min=2, n_max=6), st.data())
def test_tuple_stats_match_brute_force(F, data):
    s = data.draw(st.integers(2, min(F.n, 4)))
    parts = []
    left = F.n
    for r in range(s):
        p = data.draw(st.integers(1, max(1, left - (s - r - 1))))
        parts.append(p)
        left -= p
    st_ = tuple_stats(F, parts)
    assert st_.X == oracles.class_densities(oracles.as_sets(F), F.n, parts)
    assert st_.n_pi == Partition(tuple(parts), F.n).tuple_count()


def test_class_densities_of_p_families():
    assert tuple_stats(P(3, 1, 2), (1, 1, 1)).X == F_(0, 0, Fraction(3, 4), Fraction(1, 4))
    X = tuple_stats(P(5, 1, 2), Partition.equal(5, 1, 8)).X
    assert X[4] == Fraction(5, 8) and X[5] == Fraction(3, 8) and sum(X[:4]) == 0
    assert tuple_stats(P(4, 2, 2), (2, 2, 2, 2)).X == F_(0, 0, 0, Fraction(4, 5), Fraction(1, 5))


def test_sampling_is_seeded_and_flagged():
    F = P(4, 2, 2)
    a = tuple_stats(F, (2, 2, 2, 2), mode="sample", trials=500, seed=3)
    b = tuple_stats(F, (2, 2, 2, 2), mode="sample", trials=500, seed=3)
    assert a == b and a.sampled and a.n_pi == 500
    assert a.counts[:3] == (0, 0, 0)
    with pytest.raises(ValueError):
        tuple_stats(F, (2, 2), mode="guess")


def test_exact_mode_refuses_huge_work(monkeypatch):
    import matchless.partition as part
    monkeypatch.setattr(part, "WORK_LIMIT", 10)
    with pytest.raises(ValueError):
        tuple_stats(P(3, 1, 2), (1, 1, 1))


@given(bounded_upsets(n_max=7, s_max=4), st.data())
def test_identities_on_random_upsets(Fs, data):
    F, s = Fs
    m = data.draw(st.integers(1, max(1, F.n // s)))
    if s * m > F.n:
        return
    rep = check_partition_identities(F, Partition.equal(s, m, F.n))
    assert rep.ok, rep
    assert rep["X_0 = 0"].applicable


def test_identities_flag_large_matchings():
    rep = check_partition_identities(SetFamily.full(4), (1, 1))
    assert rep.ok and rep["X_0 = 0"].status == "skipped"


def test_mixed_bound_is_tight_at_p():
    F = P(4, 2, 2)
    assert F.n == 10
    c = check_mixed_partition_bound(F, 4, 1)[0]
    assert c.data == {"y(m-j)": 10, "y(m+1)": 0}
    assert c.lhs == c.rhs == 10
    c = check_mixed_partition_bound(F, 4, 2)[0]
    assert c.lhs == c.rhs == 1
    with pytest.raises(ValueError):
        check_mixed_partition_bound(F, 4, 3)


def test_three_level_sides_fixtures():
    assert three_level_sides(P(3, 1, 2), 3, 2) == (3, 3)
    assert three_level_sides(P(4, 1, 2), 4, 2, "l2") == (5, 5)
    with pytest.raises(ValueError):
        three_level_sides(P(3, 1, 2), 3, 2, "l2")


def test_general_three_level_bound_gap_at_s_minus_l_one():
    # sets meeting {1, 2} on four points: nu = 2 < 3, yet lhs < rhs
    G = SetFamily.from_masks(4, [a for a in range(16) if a & 3])
    assert three_level_sides(G, 3, 2) == (Fraction(5, 2), Fraction(8, 3))
    c = check_three_level_bound(G, 3, 2)[0]
    assert c.status == "skipped" and not c.holds


@pytest.mark.parametrize("s,m,l", [(4, 1, 2), (5, 1, 3), (4, 1, 1), (3, 2, 1), (5, 1, 2)])
def test_checks_hold_on_p(s, m, l):
    rep = all_checks(P(s, m, l), s, l)
    assert rep.ok, rep


def test_upper_level_deficit_argument_errors():
    with pytest.raises(ValueError):
        check_upper_level_deficit(P(4, 1, 2), 4, 2, 3)
    with pytest.raises(ValueError):
        check_upper_level_deficit(SetFamily.full(5), 4, 2, 1)


@pytest.mark.parametrize("s,m,l", [(s, m, l) for s in range(2, 9) for m in range(1, 5)
                                   for l in range(1, s + 1)])
def test_binomial_inequalities(s, m, l):
    assert check_binomial_inequalities(s, m, l).ok


def test_shadow_inequality_gates():
    assert check_shadow_inequality(SetFamily.from_masks(3, [0]), 1)[0].status == "skipped"
    assert check_shadow_inequality(SetFamily.uniform(4, 1), 2)[0].status == "skipped"
    c = check_shadow_inequality(SetFamily.uniform(4, 2), 2)[0]
    assert c.holds and (c.lhs, c.rhs) == (8, 6)


@given(families(n_min=1, n_max=5, empty_set=False))
def test_shadow_inequality_on_random_families(H):
    from matchless.invariants import matching_number
    nu = matching_number(H)[0]
    assert check_shadow_inequality(H, max(nu, 1)).ok


def test_sweep_points_shape():
    pts = sweep_points(2, 6)
    assert all(n == s * m + s - l and 2 <= n <= 6 for s, m, l, n in pts)
    assert (3, 1, 2, 4) in pts and (7, 1, 7, 7) not in pts


def test_random_sweep_is_clean_and_reproducible():
    a = random_sweep(samples=40, seed=5, n_max=7)
    b = random_sweep(samples=40, seed=5, n_max=7)
    assert a.ok, a
    assert [c.name for c in a] == [c.name for c in b]
