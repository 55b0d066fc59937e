"""Matching number, covering number and the D(s, q) property, with witnesses.

Convention for the empty set: it is disjoint from everything, including
itself, but a family holds it once, so ``emptyset in F`` adds exactly one
to nu(F).

When a family is invariant under permuting the elements inside each of a
few large classes (as every named construction is), the searches run on
class-count vectors instead of masks; both routes are exact.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import prod

import numpy as np

from ._kernels import boolean_upsets, can_partition
from .family import SetFamily, minimal_members, popcounts, twin_classes
from .report import Check, Report, compare

_QUOTIENT_STATES = 250_000


class UncoverableError(ValueError):
    """Raised when a family containing the empty set is asked for a cover."""


@dataclass(frozen=True)
class MatchingWitness:
    sets: tuple

    @property
    def size(self):
        return len(self.sets)


@dataclass(frozen=True)
class CoverWitness:
    cover: int

    @property
    def size(self):
        return self.cover.bit_count()


# -- class-count quotient ---------------------------------------------------

class _Quotient:
    """Members of F described by how many elements they take from each twin class."""

    def __init__(self, F, classes):
        self.n = F.n
        self.classes = classes
        self.caps = tuple(len(c) for c in classes)
        self.class_masks = [sum(1 << (e - 1) for e in c) for c in classes]
        mins = minimal_members(F).members()
        pc = popcounts(F.n)
        rows = np.stack([pc[mins & cm] for cm in self.class_masks], axis=1) if len(mins) else np.zeros((0, len(classes)), int)
        types = {tuple(int(v) for v in r) for r in rows}
        self.has_empty = (0,) * len(classes) in types
        types.discard((0,) * len(classes))
        self.types = sorted(types, key=lambda v: (sum(v), v))

    @staticmethod
    def build(F):
        classes = twin_classes(F)
        if len(classes) == F.n:
            return None
        if prod(len(c) + 1 for c in classes) > _QUOTIENT_STATES:
            return None
        return _Quotient(F, classes)

    def realize(self, vectors):
        """Concrete disjoint masks for a list of type vectors."""
        pos = [0] * len(self.classes)
        out = []
        for v in vectors:
            m = 0
            for j, cnt in enumerate(v):
                for e in self.classes[j][pos[j]:pos[j] + cnt]:
                    m |= 1 << (e - 1)
                pos[j] += cnt
            out.append(m)
        return out

    def packing(self):
        types = self.types

        @lru_cache(maxsize=None)
        def g(cap):
            best, arg = 0, None
            for v in types:
                if all(a <= c for a, c in zip(v, cap)):
                    val = 1 + g(tuple(c - a for a, c in zip(v, cap)))[0]
                    if val > best:
                        best, arg = val, v
            return best, arg

        cap, picked = self.caps, []
        while True:
            _, v = g(cap)
            if v is None:
                break
            picked.append(v)
            cap = tuple(c - a for a, c in zip(v, cap))
        return self.realize(picked)

    def min_cover(self):
        types = self.types
        best = None
        for t in sorted(itertools.product(*(range(c + 1) for c in self.caps)), key=sum):
            left = tuple(c - x for c, x in zip(self.caps, t))
            if not any(all(a <= c for a, c in zip(v, left)) for v in types):
                best = t
                break
        m = 0
        for j, cnt in enumerate(best):
            for e in self.classes[j][:cnt]:
                m |= 1 << (e - 1)
        return m

    def min_union_packing(self, k, q):
        types = self.types

        @lru_cache(maxsize=None)
        def h(cap, k):
            if k == 0:
                return 0, None
            best, arg = None, None
            for v in types:
                if all(a <= c for a, c in zip(v, cap)):
                    sub = h(tuple(c - a for a, c in zip(v, cap)), k - 1)[0]
                    if sub is not None and (best is None or sum(v) + sub < best):
                        best, arg = sum(v) + sub, v
            return best, arg

        total, _ = h(self.caps, k)
        if total is None or total > q:
            return None
        cap, picked = self.caps, []
        for kk in range(k, 0, -1):
            v = h(cap, kk)[1]
            picked.append(v)
            cap = tuple(c - a for a, c in zip(v, cap))
        return self.realize(picked)


def _by_low(mins, n):
    groups = [[] for _ in range(n)]
    for m in sorted(mins, key=lambda b: (b.bit_count(), b)):
        groups[(m & -m).bit_length() - 1].append(m)
    return groups


# -- matching number --------------------------------------------------------

def _packing_masks(mins, n):
    groups = _by_low(mins, n)

    @lru_cache(maxsize=None)
    def g(free):
        if free == 0:
            return 0
        low = free & -free
        best = g(free ^ low)
        for B in groups[low.bit_length() - 1]:
            if B & ~free == 0:
                val = 1 + g(free ^ B)
                if val > best:
                    best = val
        return best

    full = (1 << n) - 1
    out, free = [], full
    while free and g(free):
        low = free & -free
        target = g(free)
        if g(free ^ low) == target:
            free ^= low
            continue
        for B in groups[low.bit_length() - 1]:
            if B & ~free == 0 and 1 + g(free ^ B) == target:
                out.append(B)
                free ^= B
                break
    return out


def matching_number(F):
    """nu(F) and a maximum family of pairwise disjoint members."""
    if len(F) == 0:
        return 0, MatchingWitness(())
    has_empty = bool(F.table[0])
    if has_empty:
        # the empty set is minimal and would hide every other member
        F = F - SetFamily.from_masks(F.n, [0])
    q = _Quotient.build(F)
    if q is not None:
        sets = q.packing()
    else:
        mins = [int(m) for m in minimal_members(F).members() if m]
        sets = _packing_masks(mins, F.n)
    if has_empty:
        sets = [0] + sets
    return len(sets), MatchingWitness(tuple(sets))


# -- covering number --------------------------------------------------------

def _cover_masks(mins, n):
    degree = [sum(1 for m in mins if m >> i & 1) for i in range(n)]
    orders = {m: sorted((i for i in range(n) if m >> i & 1), key=lambda i: -degree[i]) for m in mins}
    by_size = sorted(mins, key=int.bit_count)

    def dfs(cover, budget, dead):
        for m in by_size:
            if not m & cover:
                break
        else:
            return cover
        if budget == 0 or cover in dead:
            return None
        for i in orders[m]:
            got = dfs(cover | (1 << i), budget - 1, dead)
            if got is not None:
                return got
        dead.add(cover)
        return None

    for budget in range(n + 1):
        got = dfs(0, budget, set())
        if got is not None:
            return got
    raise AssertionError("unreachable: [n] covers every nonempty set")


def covering_number(F):
    """tau(F) and a minimum set meeting every member."""
    if F.table[0]:
        raise UncoverableError("uncoverable: the empty set is a member")
    if len(F) == 0:
        return 0, CoverWitness(0)
    q = _Quotient.build(F)
    if q is not None:
        cover = q.min_cover()
    else:
        mins = [int(m) for m in minimal_members(F).members()]
        cover = _cover_masks(mins, F.n)
    return cover.bit_count(), CoverWitness(cover)


# -- D(s, q) ----------------------------------------------------------------

def _min_union_masks(mins, n, k, q):
    groups = _by_low(mins, n)
    smallest = min((m.bit_count() for m in mins), default=n + 1)
    fails = set()

    def rec(used, k, budget, start):
        if k == 0:
            return []
        if k * smallest > budget or (used, k, budget, start) in fails:
            return None
        for e in range(start, n):
            if used >> e & 1:
                continue
            for B in groups[e]:
                size = B.bit_count()
                if size + (k - 1) * smallest > budget:
                    break
                if B & used:
                    continue
                got = rec(used | B, k - 1, budget - size, e + 1)
                if got is not None:
                    return [B] + got
        fails.add((used, k, budget, start))
        return None

    return rec(0, k, q, 0)


def has_D_property(F, s, q):
    """Is every union of s pairwise disjoint members larger than q?

    Returns ``(True, None)`` or ``(False, violating_tuple)``.
    """
    if s < 2 or q < 0:
        raise ValueError("D(s, q) needs s >= 2 and q >= 0")
    has_empty = bool(F.table[0])
    need = s - 1 if has_empty else s
    if has_empty:
        F = F - SetFamily.from_masks(F.n, [0])
    quot = _Quotient.build(F)
    if quot is not None:
        found = quot.min_union_packing(need, q)
    else:
        mins = [int(m) for m in minimal_members(F).members() if m]
        found = _min_union_masks(mins, F.n, need, q)
    if found is None:
        return True, None
    return False, tuple(([0] if has_empty else []) + found)


# -- cross-dependent nested families ----------------------------------------

def _rainbow_matching(families):
    lists = [[int(m) for m in fam] for fam in families]

    def rec(i, used):
        if i == len(lists):
            return []
        for m in lists[i]:
            if m & used == 0:
                got = rec(i + 1, used | m)
                if got is not None:
                    return [m] + got
        return None

    return rec(0, 0)


def check_cross_dependent_nested(families, N, k, u):
    """Weighted-sum bound for nested, cross-dependent (k-1)-uniform families on [N].

    Checks nestedness F_1 > F_2 > ... > F_s, cross-dependence (no choice of
    one member from each family is pairwise disjoint), and
    |F_1| + ... + |F_{s-1}| + u |F_s| <= (s-1) C(N, k-1).
    """
    from math import comb

    families = list(families)
    s = len(families)
    for fam in families:
        if fam.n != N:
            raise ValueError("all families must live on [N]")
        if not fam.is_uniform(k - 1):
            raise ValueError(f"families must be ({k - 1})-uniform")
    nested = all(families[i + 1] <= families[i] for i in range(s - 1))
    witness = _rainbow_matching(families)
    cross = witness is None
    hyp = N >= (u + s - 1) * (k - 1)
    lhs = sum(len(f) for f in families[:-1]) + u * len(families[-1])
    rhs = (s - 1) * comb(N, k - 1)
    report = Report("cross-dependent nested bound", [
        Check("nested", nested),
        Check("cross-dependent", cross, data={"disjoint_choice": witness} if witness else {}),
        Check("size hypothesis N >= (u+s-1)(k-1)", hyp),
    ])
    bound = compare("weighted sum bound", lhs, rhs, "<=")
    if not (nested and cross and hyp):
        bound.applicable = False
        bound.note = "hypotheses not met; inequality reported only"
    report.append(bound)
    return report


# -- random up-closed families ----------------------------------------------

def random_monotone_family(n, s, rng, density=None):
    """A random upward-closed family on [n] with nu < s.

    Random subsets are offered in random order; each is accepted together
    with its supersets when that keeps the matching number below s.
    ``density`` is the chance of offering each subset (random if omitted).
    """
    up = boolean_upsets(n)
    full = (1 << n) - 1
    p = rng.random() if density is None else density
    bits = 0
    order = list(range(1, 1 << n))
    rng.shuffle(order)
    for A in order:
        if bits >> A & 1 or rng.random() > p:
            continue
        cand = bits | up[A]
        if n >= s and can_partition(cand, full, s):
            continue
        bits = cand
    return SetFamily.from_bits(n, bits)


def upclosed_nu_below(F, s):
    """nu(F) < s for an upward-closed F, via partitions of [n]."""
    if F.table[0]:
        return F.n + 1 < s
    return F.n < s or not can_partition(F.to_bits(), (1 << F.n) - 1, s)
