import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from matchless.family import (
    SetFamily, all_upsets, complement_family, dumps_family, elements_of, full_shift, interval,
    is_shifted, is_upward_closed, join_on_element, level_profile, link, loads_family, mask_of,
    minimal_members, permute, shadow, shift, shift_potential, split_on_element, transposition_fixes,
    twin_classes, upward_closure,
)
from matchless.invariants import matching_number
from strategies import families


def test_masks_are_one_based():
    assert mask_of([1, 3]) == 0b101
    assert elements_of(0b101) == (1, 3)
    assert interval(2, 4) == 0b1110
    assert interval(3, 2) == 0
    with pytest.raises(ValueError):
        mask_of([0])


def test_constructors_and_operators():
    F = SetFamily.from_sets(3, [(1,), (1, 2), ()])
    G = SetFamily.from_sets(3, [(1,), (3,)])
    assert len(F) == 3 and (1, 2) in F and () in F and (3,) not in F
    assert len(F | G) == 4 and len(F & G) == 1 and len(F - G) == 2
    assert (F & G) <= F
    assert F.level_counts == (1, 1, 1, 0)
    assert SetFamily.uniform(4, 2).is_uniform(2) and len(SetFamily.uniform(4, 2)) == 6
    assert SetFamily.from_bits(3, F.to_bits()) == F
    assert len(SetFamily.full(3)) == 8 and len(SetFamily.empty(3)) == 0
    with pytest.raises(ValueError):
        SetFamily.from_masks(2, [4])


def test_level_profile_counts_missing_sets():
    F = SetFamily.from_sets(3, [(1,), (1, 2), (1, 3), (2, 3), (1, 2, 3)])
    assert level_profile(F) == (1, 2, 0, 0)


@given(families(n_max=5))
def test_text_round_trip(F):
    for fmt in ("sets", "hex"):
        assert loads_family(dumps_family(F, fmt)) == F


def test_text_format_details():
    F = SetFamily.from_sets(2, [(), (1, 2)])
    assert dumps_family(F) == "n=2\n{}\n1,2\n"
    assert dumps_family(F, "hex") == "n=2\n0x0\n0x3\n"
    assert loads_family("# comment\nn=2\n{1,2}\n0x0\n") == F
    with pytest.raises(ValueError):
        loads_family("1,2\n")
    with pytest.raises(ValueError):
        loads_family("n=2\n3\n")


@given(families(n_min=2, n_max=5), st.data())
def test_shift_matches_reference(F, data):
    i = data.draw(st.integers(1, F.n - 1))
    j = data.draw(st.integers(i + 1, F.n))
    S = shift(F, i, j)
    assert oracles.as_sets(S) == oracles.shift(oracles.as_sets(F), i, j)
    assert len(S) == len(F)


@given(families(n_min=2, n_max=5))
def test_shift_never_raises_matching_number(F):
    nu = matching_number(F)[0]
    for i in range(1, F.n):
        for j in range(i + 1, F.n + 1):
            assert matching_number(shift(F, i, j))[0] <= nu


@given(families(n_max=5))
def test_full_shift_is_shifted_and_keeps_size(F):
    S = full_shift(F)
    assert is_shifted(S) and len(S) == len(F)
    assert shift_potential(S) <= shift_potential(F)


@given(families(n_max=4))
def test_is_shifted_matches_all_pairs_reference(F):
    assert is_shifted(F) == oracles.is_shifted(oracles.as_sets(F), F.n)


@given(families(n_max=5))
def test_upward_closure(F):
    U = upward_closure(F)
    assert is_upward_closed(U) and F <= U
    assert oracles.is_up(oracles.as_sets(U), U.n)
    assert upward_closure(minimal_members(U)) == U


@given(families(n_max=5))
def test_shadow_matches_reference(F):
    assert oracles.as_sets(shadow(F)) == oracles.shadow(oracles.as_sets(F))


@given(families(n_max=5))
def test_complement_is_an_involution(F):
    assert complement_family(complement_family(F)) == F
    assert len(complement_family(F)) == 2 ** F.n - len(F)


@given(families(n_min=1, n_max=5))
def test_split_and_join(F):
    with_n, without_n = split_on_element(F)
    assert join_on_element(with_n, without_n) == F
    assert len(with_n) + len(without_n) == len(F)


def test_link():
    G = SetFamily.from_sets(4, [(1, 3), (1, 4), (2, 3), (1, 2, 4)])
    L = link(G, (1,), 2)
    assert oracles.as_sets(L) == {frozenset({3}), frozenset({4})}


@given(families(n_min=1, n_max=5), st.randoms(use_true_random=False))
def test_permute_keeps_size_and_matching_number(F, rnd):
    sigma = list(range(1, F.n + 1))
    rnd.shuffle(sigma)
    P = permute(F, sigma)
    assert len(P) == len(F)
    assert matching_number(P)[0] == matching_number(F)[0]


@given(families(n_min=1, n_max=5))
def test_twin_classes_are_swap_invariant(F):
    classes = twin_classes(F)
    assert sorted(e for c in classes for e in c) == list(range(1, F.n + 1))
    for c in classes:
        for e in c[1:]:
            assert transposition_fixes(F, c[0], e)
    reps = [c[0] for c in classes]
    for a in range(len(reps)):
        for b in range(a + 1, len(reps)):
            assert not transposition_fixes(F, reps[a], reps[b])


def test_upset_counts_are_dedekind_numbers():
    assert [len(all_upsets(n)) for n in range(6)] == [2, 3, 6, 20, 168, 7581]
    for n in range(4):
        for bits in all_upsets(n):
            assert is_upward_closed(SetFamily.from_bits(n, bits))
