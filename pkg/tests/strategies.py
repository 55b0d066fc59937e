"""Hypothesis strategies for set families."""

import random

from hypothesis import strategies as st

from matchless.family import SetFamily, upward_closure
from matchless.invariants import random_monotone_family


@st.composite
def families(draw, n_min=0, n_max=5, empty_set=True):
    n = draw(st.integers(n_min, n_max))
    lo = 0 if empty_set else 1
    if lo > (1 << n) - 1:
        return SetFamily.empty(n)
    masks = draw(st.sets(st.integers(lo, (1 << n) - 1), max_size=1 << n))
    return SetFamily.from_masks(n, sorted(masks))


@st.composite
def upsets(draw, n_min=1, n_max=6):
    F = draw(families(n_min, n_max, empty_set=False))
    return upward_closure(F)


@st.composite
def bounded_upsets(draw, n_min=2, n_max=7, s_max=5):
    """An up-closed family with nu < s, together with s."""
    n = draw(st.integers(n_min, n_max))
    s = draw(st.integers(2, s_max))
    seed = draw(st.integers(0, 2 ** 32))
    return random_monotone_family(n, s, random.Random(seed)), s
