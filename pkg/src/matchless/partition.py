"""Statistics of ordered s-tuples of disjoint sets, and the inequalities built on them.

For a partition type pi = (p_1, ..., p_s), an s-tuple (A_1, ..., A_s) of
pairwise disjoint subsets with |A_r| = p_r falls into class C_i when exactly
i of its components are missing from F.  X_i is the fraction of tuples in
C_i; every density here is an exact Fraction.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, prod

import numpy as np

from .family import _indices, level_profile, popcounts, shadow
from .formulas import level_sum_inequality, one_up_inequality, two_up_inequality
from .invariants import matching_number
from .report import Check, Report, compare, skipped

WORK_LIMIT = 10 ** 8


@dataclass(frozen=True)
class Partition:
    parts: tuple
    n: int

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if len(parts) < 2:
            raise ValueError("a partition needs s >= 2 parts")
        if min(parts) < 1:
            raise ValueError("parts must be positive")
        if sum(parts) > self.n:
            raise ValueError(f"parts sum to {sum(parts)} > n = {self.n}")

    @classmethod
    def equal(cls, s, m, n):
        return cls((m,) * s, n)

    @property
    def s(self):
        return len(self.parts)

    @property
    def size(self):
        return sum(self.parts)

    @property
    def is_equal(self):
        return len(set(self.parts)) == 1

    def tuple_count(self):
        """n(pi) = n! / ((n - sum p)! prod p_r!)."""
        return factorial(self.n) // (factorial(self.n - self.size) * prod(factorial(p) for p in self.parts))


@dataclass(frozen=True)
class TupleClassStats:
    partition: Partition
    n_pi: int
    counts: tuple
    sampled: bool = False

    @property
    def X(self):
        return tuple(Fraction(c, self.n_pi) for c in self.counts)

    def to_dict(self):
        from .report import jsonable
        return {"parts": list(self.partition.parts), "n": self.partition.n,
                "n_pi": jsonable(self.n_pi), "counts": jsonable(self.counts),
                "X": jsonable(self.X), "sampled": self.sampled}


def _as_partition(pi, n):
    return pi if isinstance(pi, Partition) else Partition(tuple(pi), n)


def exact_work(pi):
    """Rough count of the (state, extension) pairs the exact enumeration visits."""
    used, work = 0, 0
    for p in pi.parts:
        work += comb(pi.n, used) * comb(pi.n - used, p)
        used += p
    return work


def tuple_stats(F, pi, mode="exact", trials=10000, seed=0):
    """Class counts of the s-tuples of type pi.

    ``mode="exact"`` enumerates every ordered tuple through a dynamic
    program over the set of used elements; ``mode="sample"`` draws
    ``trials`` uniform tuples and is flagged as sampled.
    """
    pi = _as_partition(pi, F.n)
    if pi.n != F.n:
        raise ValueError("partition and family live on different ground sets")
    if mode == "sample":
        return _sampled_stats(F, pi, trials, seed)
    if mode != "exact":
        raise ValueError("mode must be 'exact' or 'sample'")
    if exact_work(pi) > WORK_LIMIT:
        raise ValueError(f"exact enumeration needs ~{exact_work(pi)} steps (> {WORK_LIMIT}); use mode='sample'")
    n, s = F.n, pi.s
    idx = _indices(n)
    pc = popcounts(n)
    missing = ~F.table
    wide = pi.tuple_count() >= 2 ** 62
    dtype = object if wide else np.int64
    # state: used-element mask -> counts by number of missing components
    cur = np.zeros((1 << n, s + 1), dtype=dtype)
    cur[0, 0] = 1
    for p in pi.parts:
        nxt = np.zeros_like(cur)
        pieces = idx[pc == p]
        for U in np.flatnonzero(cur.any(axis=1)):
            ok = pieces[(pieces & U) == 0]
            row = cur[U]
            targets = ok | U
            miss = missing[ok]
            nxt[targets[~miss]] += row
            shifted = np.concatenate([[0], row[:-1]]).astype(dtype)
            nxt[targets[miss]] += shifted
        cur = nxt
    counts = tuple(int(c) for c in cur.sum(axis=0))
    n_pi = sum(counts)
    if n_pi != pi.tuple_count():
        raise AssertionError(f"enumerated {n_pi} tuples, expected n(pi) = {pi.tuple_count()}")
    return TupleClassStats(pi, n_pi, counts)


def _sampled_stats(F, pi, trials, seed):
    rng = random.Random(seed)
    counts = [0] * (pi.s + 1)
    elems = list(range(F.n))
    table = F.table
    for _ in range(trials):
        order = rng.sample(elems, pi.size)
        pos, miss = 0, 0
        for p in pi.parts:
            mask = 0
            for e in order[pos:pos + p]:
                mask |= 1 << e
            pos += p
            miss += not table[mask]
        counts[miss] += 1
    return TupleClassStats(pi, trials, tuple(counts), sampled=True)


# -- helpers ----------------------------------------------------------------

def _nu_below(F, s, nu=None):
    if nu is None:
        nu = matching_number(F)[0]
    return nu < s


def _m_from(n, s, l):
    m, r = divmod(n - s + l, s)
    if r or m < 0:
        raise ValueError(f"n={n} is not of the form s*m + s - l with s={s}, l={l}")
    return m


def _y(F):
    return level_profile(F)


def _binom(n, k):
    return comb(n, k) if 0 <= k <= n else 0


# -- identities -------------------------------------------------------------

def check_partition_identities(F, pi, nu=None):
    """Sum of densities, the X_0 = 0 clause, the weighted-sum identity, and (for equal parts) the level identity."""
    pi = _as_partition(pi, F.n)
    st = tuple_stats(F, pi)
    X, s, n = st.X, pi.s, F.n
    y = _y(F)
    rep = Report(f"partition identities {pi.parts}")
    rep.append(compare("sum of X_i = 1", sum(X, Fraction(0)), Fraction(1), "=="))
    below = _nu_below(F, s, nu)
    x0 = compare("X_0 = 0", X[0], Fraction(0), "==")
    if not below:
        x0.applicable = False
        x0.note = "nu(F) >= s"
    rep.append(x0)
    weighted = sum((i * X[i] for i in range(s + 1)), Fraction(0))
    per_part = sum((Fraction(y[p], comb(n, p)) for p in pi.parts), Fraction(0))
    rep.append(compare("sum i X_i = sum y(p_r)/C(n,p_r)", weighted, per_part, "=="))
    if pi.is_equal:
        m = pi.parts[0]
        rep.append(compare("y(m) = C(n,m)/s * sum i X_i", Fraction(y[m]),
                           Fraction(comb(n, m), s) * weighted, "=="))
    rep.stats = st
    return rep


# -- inequalities over the equal partition ----------------------------------

def check_upper_level_deficit(F, s, l, u, nu=None):
    """y(m+u) >= C(n,m+u)/s * sum_{i=1}^{floor((s-l)/u)} X_i(pi_e), n = sm+s-l, 1 <= u <= s-l."""
    n = F.n
    m = _m_from(n, s, l)
    if not 1 <= u <= s - l:
        raise ValueError("need 1 <= u <= s - l")
    if m < 1:
        raise ValueError("need m >= 1")
    X = tuple_stats(F, Partition.equal(s, m, n)).X
    top = (s - l) // u
    rhs = Fraction(_binom(n, m + u), s) * sum(X[1:top + 1], Fraction(0))
    c = compare(f"upper level deficit u={u}", Fraction(_y(F)[m + u]), rhs, ">=")
    if not _nu_below(F, s, nu):
        c.applicable, c.note = False, "nu(F) >= s"
    return Report("upper level deficit", [c])


def three_level_sides(F, s, l, variant="general"):
    """(lhs, rhs) of the three-level bound on y(m), y(m+1), y(m+2)."""
    n = F.n
    if variant == "general":
        m = _m_from(n, s, l)
        if s < 3 or m < 1:
            raise ValueError("the general variant needs s >= 3 and m >= 1")
        y = _y(F)
        X = tuple_stats(F, Partition.equal(s, m, n)).X
        lhs = y[m] + Fraction(y[m + 1], 2) + y[m + 2]
        rhs = Fraction(comb(n, m), s) * (s - l + 1 + sum(X[s - l + 2:s + 1], Fraction(0)))
        return lhs, rhs
    if variant == "l2":
        if l != 2:
            raise ValueError("the l2 variant needs l = 2")
        m = _m_from(n, s, 2)
        if s < 4 or m < 1:
            raise ValueError("the l2 variant needs s >= 4 and m >= 1")
        y = _y(F)
        X = tuple_stats(F, Partition.equal(s, m, n)).X
        coef = (s - Fraction(5, 2)) * Fraction(comb(n, m), comb(n, m + 1))
        lhs = y[m] + coef * y[m + 1] + y[m + 2]
        inner = s - 1 + sum(((i - Fraction(3, 2)) * X[i] for i in range(1, s - 1)), Fraction(0)) + X[1] + X[s]
        return lhs, Fraction(comb(n, m), s) * inner
    raise ValueError("variant must be 'general' or 'l2'")


def check_three_level_bound(F, s, l, variant="general", nu=None):
    """Three-level bound; the general variant is asserted only for s - l != 1.

    With s - l = 1 the coefficient of X_1 collected from the level
    deficits is 3/2, short of the s - l + 1 = 2 the bound needs, and the
    sets meeting {1, 2} on n = 4 (s = 3, l = 2) violate it: 5/2 < 8/3.
    """
    lhs, rhs = three_level_sides(F, s, l, variant)
    c = compare(f"three-level bound ({variant})", lhs, rhs, ">=")
    if not _nu_below(F, s, nu):
        c.applicable, c.note = False, "nu(F) >= s"
    elif variant == "general" and s - l == 1:
        c.applicable, c.note = False, "s - l = 1: outside the range the bound holds in general"
    return Report("three-level bound", [c])


def check_mixed_partition_bound(F, s, j, nu=None):
    """y(m-j) + (s-1) C(n,m-j)/C(n,m+1) y(m+1) >= C(n,m-j), n = sm+s-2, 1 <= j <= m."""
    n = F.n
    m = _m_from(n, s, 2)
    if not 1 <= j <= m:
        raise ValueError("need 1 <= j <= m")
    y = _y(F)
    lhs = y[m - j] + (s - 1) * Fraction(comb(n, m - j), comb(n, m + 1)) * y[m + 1]
    c = compare(f"mixed partition bound j={j}", lhs, Fraction(comb(n, m - j)), ">=",
                data={"y(m-j)": y[m - j], "y(m+1)": y[m + 1]})
    if not _nu_below(F, s, nu):
        c.applicable, c.note = False, "nu(F) >= s"
    return Report("mixed partition bound", [c])


def check_binomial_inequalities(s, m, l):
    """The three binomial comparisons used when summing the level deficits."""
    rep = Report(f"binomial inequalities s={s} m={m} l={l}")
    if s >= 3:
        lhs, rhs = level_sum_inequality(s, m)
        rep.append(compare("level sum (n = sm+s-2)", lhs, rhs, "<="))
    else:
        rep.append(skipped("level sum (n = sm+s-2)", "needs s >= 3"))
    if s >= 3 and 2 <= l <= s:
        lhs, rhs = two_up_inequality(s, m, l)
        rep.append(compare("two levels up", lhs, rhs, "<="))
    else:
        rep.append(skipped("two levels up", "needs s >= 3 and 2 <= l <= s"))
    if 1 <= l <= s:
        lhs, rhs = one_up_inequality(s, m, l)
        rep.append(compare("one level up", lhs, rhs, "<="))
    else:
        rep.append(skipped("one level up", "needs 1 <= l <= s"))
    return rep


def check_shadow_inequality(H, s, nu=None):
    """s |shadow(H)| >= |H| for nu(H) <= s and the empty set not in H."""
    if nu is None:
        nu = matching_number(H)[0]
    sh = shadow(H)
    c = compare("s |shadow| >= |H|", s * len(sh), len(H), ">=")
    if nu > s:
        c.applicable, c.note = False, "nu(H) > s"
    elif H.table[0]:
        c.applicable, c.note = False, "the empty set is a member"
    return Report("shadow inequality", [c])


def all_checks(F, s, l, nu=None):
    """Every applicable check for F on n = sm+s-l; used by the sweeps."""
    n = F.n
    m = _m_from(n, s, l)
    if nu is None:
        nu = matching_number(F)[0]
    out = Report(f"partition suite s={s} m={m} l={l}")
    if m >= 1:
        out.extend(check_partition_identities(F, Partition.equal(s, m, n), nu))
        for u in range(1, s - l + 1):
            out.extend(check_upper_level_deficit(F, s, l, u, nu))
        if s >= 3:
            out.extend(check_three_level_bound(F, s, l, "general", nu))
        if l == 2 and s >= 4:
            out.extend(check_three_level_bound(F, s, l, "l2", nu))
        if l == 2:
            for j in range(1, m + 1):
                out.extend(check_mixed_partition_bound(F, s, j, nu))
    out.extend(check_shadow_inequality(F, s, nu))
    return out


# -- sweeps -----------------------------------------------------------------

def sweep_points(n_min=2, n_max=10):
    """(s, m, l, n) with n = sm+s-l in range, s >= 2, m >= 1 and 1 <= l <= s."""
    pts = []
    for s in range(2, n_max + 2):
        for m in range(1, n_max + 1):
            for l in range(1, s + 1):
                n = s * m + s - l
                if n_min <= n <= n_max:
                    pts.append((s, m, l, n))
    return pts


class _Tally:
    """Per-check pass counts plus the first failure of each, with a reproducer."""

    def __init__(self, name):
        self.name = name
        self.runs = {}
        self.bad = {}

    def add(self, rep, reproducer):
        for c in rep:
            if not c.applicable:
                continue
            self.runs[c.name] = self.runs.get(c.name, 0) + 1
            if not c.holds and c.name not in self.bad:
                self.bad[c.name] = dict(reproducer, lhs=c.lhs, rhs=c.rhs)

    def report(self, **stats):
        rep = Report(self.name)
        for name in sorted(self.runs):
            fail = self.bad.get(name)
            rep.append(Check(f"{name} [{self.runs[name]} runs]", fail is None,
                             data={"first_failure": fail} if fail else {}))
        rep.stats = stats
        return rep


def random_sweep(samples=1000, seed=0, n_max=10):
    """Every check in :func:`all_checks` on seeded random up-closed families with nu < s."""
    from .family import dumps_family
    from .invariants import random_monotone_family

    rng = random.Random(seed)
    points = sweep_points(2, n_max)
    tally = _Tally(f"random sweep ({samples} families, seed {seed})")
    for i in range(samples):
        s, m, l, n = rng.choice(points)
        F = random_monotone_family(n, s, rng)
        nu = matching_number(F)[0]
        tally.add(all_checks(F, s, l, nu), {"sample": i, "s": s, "m": m, "l": l,
                                            "family": dumps_family(F, "hex")})
    return tally.report(samples=samples, seed=seed)


def upset_sweep(n_max=5):
    """Every check in :func:`all_checks` on every up-closed family with nu < s, n <= n_max."""
    from .family import SetFamily, all_upsets, dumps_family

    tally = _Tally(f"exhaustive up-set sweep (n <= {n_max})")
    families = 0
    for s, m, l, n in sweep_points(2, n_max):
        for bits in all_upsets(n):
            F = SetFamily.from_bits(n, bits)
            nu = matching_number(F)[0]
            if nu >= s:
                continue
            families += 1
            tally.add(all_checks(F, s, l, nu), {"s": s, "m": m, "l": l,
                                                "family": dumps_family(F, "hex")})
    return tally.report(families=families)


def shadow_sweep(n_max=4, uniform_n=5):
    """s |shadow(H)| >= |H| with s = max(nu(H), 1) over every family without the empty set
    on n <= n_max, and every uniform family on ``uniform_n``."""
    from itertools import combinations

    from .family import SetFamily, dumps_family

    tally = _Tally("shadow sweep")
    count = 0

    def run(H):
        nonlocal count
        count += 1
        nu = matching_number(H)[0]
        tally.add(check_shadow_inequality(H, max(nu, 1), nu), {"family": dumps_family(H, "hex")})

    for n in range(1, n_max + 1):
        for bits in range(0, 1 << (1 << n), 2):
            run(SetFamily.from_bits(n, bits))
    if uniform_n:
        n = uniform_n
        for k in range(1, n + 1):
            level = [sum(1 << e for e in c) for c in combinations(range(n), k)]
            for pick in range(1 << len(level)):
                run(SetFamily.from_masks(n, [a for j, a in enumerate(level) if pick >> j & 1]))
    return tally.report(families=count)


__all__ = [
    "sweep_points", "random_sweep", "upset_sweep", "shadow_sweep",
    "Partition", "TupleClassStats", "tuple_stats", "check_partition_identities",
    "check_upper_level_deficit", "check_three_level_bound", "three_level_sides",
    "check_mixed_partition_bound", "check_binomial_inequalities", "check_shadow_inequality",
    "all_checks",
]
