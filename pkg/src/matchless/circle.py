"""Cyclic arrangements of [n]: arc chains, window profiles, and the circle averaging checks.

Positions on the circle and on each chain are 0-based internally; a
permutation ``sigma`` is given as the 1-based sequence sigma(1), ..., sigma(n).
Arc D_i (0-based i) holds the m elements at positions i, ..., i+m-1 mod n.
"""

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd

import numpy as np

from .invariants import matching_number
from .partition import Partition, tuple_stats
from .report import Check, Report, compare


@dataclass(frozen=True)
class ArcChainDecomposition:
    n: int
    s: int
    m: int
    d: int
    nbar: int
    arcs: tuple      # arc masks, indexed by start position
    chains: tuple    # d tuples of arc indices, each of length nbar


@dataclass(frozen=True)
class WindowProfile:
    f: tuple
    t: int
    applicable: bool
    cases: tuple
    note: str = ""

    @property
    def holds(self):
        return (not self.applicable) or bool(self.cases)


@dataclass(frozen=True)
class CircleTrace:
    decomposition: ArcChainDecomposition
    R: tuple          # per chain, positions r with D_{j+rm} in F
    x_chain: tuple    # per chain, x^j_0..x^j_s
    x: tuple          # totals x_0..x_s


def check_length(n, s, m):
    if n != s * m + s - 2:
        raise ValueError(f"need n = sm+s-2 = {s * m + s - 2}, got {n}")


def _check_sigma(sigma):
    sigma = tuple(int(v) for v in sigma)
    if sorted(sigma) != list(range(1, len(sigma) + 1)):
        raise ValueError("sigma must be a permutation of [n]")
    return sigma


def chain_decompose(sigma, s, m):
    sigma = _check_sigma(sigma)
    n = len(sigma)
    check_length(n, s, m)
    d = gcd(m, s - 2)
    nbar = n // d
    arcs = []
    for i in range(n):
        mask = 0
        for t in range(m):
            mask |= 1 << (sigma[(i + t) % n] - 1)
        arcs.append(mask)
    chains = tuple(tuple((j + r * m) % n for r in range(nbar)) for j in range(d))
    return ArcChainDecomposition(n, s, m, d, nbar, tuple(arcs), chains)


def window_counts(R, nbar, s):
    """f_b(R) for b = 0..s over the windows C_r = {r, ..., r+s-1} mod nbar."""
    Rset = set(R)
    f = [0] * (s + 1)
    for r in range(nbar):
        window = {(r + c) % nbar for c in range(s)}
        f[len(window & Rset)] += 1
    return tuple(f)


def claim_gate(nbar, s):
    """(t, applicable, note) for the three-case statement on a circle of length nbar."""
    t = nbar % s
    if not 1 <= t < s - 1:
        return t, False, f"t = nbar mod s = {t} is outside [1, s-2]"
    if nbar <= s:
        return t, False, f"nbar = {nbar} <= s: windows wrap onto themselves"
    return t, True, ""


def f_profile(R, nbar, s):
    """Window profile of R plus which of the three cases hold.

    The cases are (i) f_0 >= t, (ii) f_1 = 0, (iii) f_2 >= 2, where
    t = nbar mod s must lie in [1, s-2]; otherwise the case check is skipped.
    """
    R = tuple(sorted(set(int(r) % nbar for r in R)))
    f = window_counts(R, nbar, s)
    t, ok, note = claim_gate(nbar, s)
    cases = ()
    if ok:
        cases = tuple(name for name, hit in
                      (("i", f[0] >= t), ("ii", f[1] == 0), ("iii", s >= 2 and f[2] >= 2)) if hit)
    return WindowProfile(f, t, ok, cases, note)


def x_profile(F, sigma, s, m):
    dec = chain_decompose(sigma, s, m)
    if F.n != dec.n:
        raise ValueError("family and permutation live on different ground sets")
    table = F.table
    Rs, xs = [], []
    for chain in dec.chains:
        R = tuple(r for r, a in enumerate(chain) if table[dec.arcs[a]])
        f = window_counts(R, dec.nbar, s)
        Rs.append(R)
        xs.append(tuple(f[s - i] for i in range(s + 1)))
    total = tuple(sum(x[i] for x in xs) for i in range(s + 1))
    return CircleTrace(dec, tuple(Rs), tuple(xs), total)


def window_bound_coefficients(s):
    """Coefficients c_0..c_s of x_1 + sum_{i=1}^{s-2} (i - 3/2) x_i + x_s."""
    c = [Fraction(0)] * (s + 1)
    c[1] += 1
    for i in range(1, s - 1):
        c[i] += i - Fraction(3, 2)
    c[s] += 1
    return tuple(c)


def window_bound_lhs(x, s):
    return sum((c * v for c, v in zip(window_bound_coefficients(s), x)), Fraction(0))


def _gate(s, m):
    if s >= 5 or (s == 4 and m % 2 == 0):
        return
    raise ValueError("the window bound needs s >= 5, or s = 4 with m even")


def check_window_bound(F, sigma, s, m, nu=None):
    """Window bound for one arrangement, overall and per chain."""
    _gate(s, m)
    tr = x_profile(F, sigma, s, m)
    d = tr.decomposition.d
    if nu is None:
        nu = matching_number(F)[0]
    rep = Report(f"window bound s={s} m={m}")
    rep.append(compare("x-sum >= s-2", window_bound_lhs(tr.x, s), Fraction(s - 2), ">=",
                       data={"x": tr.x}))
    for j, xj in enumerate(tr.x_chain):
        rep.append(compare(f"chain {j}: x-sum >= (s-2)/d", window_bound_lhs(xj, s),
                           Fraction(s - 2, d), ">="))
    if nu >= s:
        for c in rep:
            c.applicable, c.note = False, "nu(F) >= s"
    rep.trace = tr
    return rep


def averaged_window_lhs(F, s, m):
    n = s * m + s - 2
    X = tuple_stats(F, Partition.equal(s, m, n)).X
    return window_bound_lhs(X, s)


def check_averaged_window_bound(F, s, m, mode="exact", trials=10000, seed=0, nu=None):
    """X_1 + sum_{i=1}^{s-2} (i - 3/2) X_i + X_s >= (s-2)/n over the equal partition."""
    _gate(s, m)
    n = F.n
    check_length(n, s, m)
    st = tuple_stats(F, Partition.equal(s, m, n), mode=mode, trials=trials, seed=seed)
    lhs = window_bound_lhs(st.X, s)
    c = compare("averaged x-sum >= (s-2)/n", lhs, Fraction(s - 2, n), ">=", data={"X": st.X})
    if st.sampled:
        c.applicable, c.note = False, f"sampled estimate over {trials} tuples; not asserted"
    else:
        if nu is None:
            nu = matching_number(F)[0]
        if nu >= s:
            c.applicable, c.note = False, "nu(F) >= s"
    return Report("averaged window bound", [c])


# -- vectorized sweeps over many permutations -------------------------------

def _windows(n, s, m):
    d = gcd(m, s - 2)
    nbar = n // d
    rows = []
    for j in range(d):
        chain = [(j + r * m) % n for r in range(nbar)]
        for r in range(nbar):
            rows.append([chain[(r + c) % nbar] for c in range(s)])
    return np.array(rows, dtype=np.int64)


def _x_counts(F, perms, s, m, per_chain=False):
    """x_0..x_s for each row of ``perms`` (0-based element indices).

    With ``per_chain`` the result has shape (rows, d, s+1).
    """
    n = F.n
    arcs = np.zeros(perms.shape, dtype=np.int64)
    for t in range(m):
        arcs |= np.int64(1) << np.roll(perms, -t, axis=1)
    missing = ~F.table[arcs]
    miss_per_window = missing[:, _windows(n, s, m)].sum(axis=2)
    if per_chain:
        d = gcd(m, s - 2)
        miss_per_window = miss_per_window.reshape(len(perms), d, -1)
    return np.stack([(miss_per_window == i).sum(axis=-1) for i in range(s + 1)], axis=-1)


def _doubled_lhs(x, s):
    # 2 * window-bound sum, as exact integers
    coef = np.array([int(2 * c) for c in window_bound_coefficients(s)], dtype=np.int64)
    return x @ coef


def window_bound_sweep(F, s, m, trials=1000, seed=0, nu=None):
    """The window bound over ``trials`` seeded random permutations."""
    _gate(s, m)
    n = F.n
    check_length(n, s, m)
    rng = random.Random(seed)
    perms = np.array([rng.sample(range(n), n) for _ in range(trials)], dtype=np.int64)
    xc = _x_counts(F, perms, s, m, per_chain=True)
    d = xc.shape[1]
    twice = _doubled_lhs(xc.sum(axis=1), s)
    worst = int(twice.argmin())
    chain_twice = _doubled_lhs(xc, s)
    cw = np.unravel_index(int(chain_twice.argmin()), chain_twice.shape)
    if nu is None:
        nu = matching_number(F)[0]
    rep = Report("window bound sweep", [
        compare(f"min over {trials} permutations of x-sum >= s-2", Fraction(int(twice[worst]), 2),
                Fraction(s - 2), ">=", data={"seed": seed, "worst_sigma": [int(v) + 1 for v in perms[worst]]}),
        compare(f"min over {trials} permutations and {d} chains of chain x-sum >= (s-2)/d",
                Fraction(int(chain_twice[cw]), 2), Fraction(s - 2, d), ">=",
                data={"worst_sigma": [int(v) + 1 for v in perms[cw[0]]], "chain": int(cw[1])}),
    ])
    if nu >= s:
        for c in rep:
            c.applicable, c.note = False, "nu(F) >= s"
    return rep


def averaging_consistency(F, s, m):
    """Mean of the window sum over all n! arrangements equals n times the averaged sum."""
    n = F.n
    check_length(n, s, m)
    if n > 8:
        raise ValueError("full permutation enumeration is limited to n <= 8")
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    total = int(_doubled_lhs(_x_counts(F, perms, s, m), s).sum())
    mean = Fraction(total, 2 * len(perms))
    return Report("averaging consistency", [
        compare("mean window sum = n * averaged sum", mean, n * averaged_window_lhs(F, s, m), "==")])


def incidence_check(s, m):
    """Every ordered s-tuple of disjoint m-sets is a window tuple for exactly n (m!)^s (s-2)! arrangements."""
    n = s * m + s - 2
    if n > 8:
        raise ValueError("full permutation enumeration is limited to n <= 8")
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    arcs = np.zeros(perms.shape, dtype=np.int64)
    for t in range(m):
        arcs |= np.int64(1) << np.roll(perms, -t, axis=1)
    tuples = arcs[:, _windows(n, s, m)].reshape(-1, s)
    keys = np.zeros(len(tuples), dtype=np.int64)
    for c in range(s):
        keys = keys * (1 << n) + tuples[:, c]
    _, counts = np.unique(keys, return_counts=True)
    expected = n * factorial(m) ** s * factorial(s - 2)
    distinct = Partition.equal(s, m, n).tuple_count()
    return Report(f"incidence s={s} m={m}", [
        compare("distinct window tuples = n(pi_e)", len(counts), distinct, "=="),
        compare("min incidence", int(counts.min()), expected, "=="),
        compare("max incidence", int(counts.max()), expected, "=="),
    ])


def claim_exhaustive(nbar, s):
    """The three-case statement for every R in Z_nbar (vectorized over all 2^nbar subsets)."""
    t, ok, note = claim_gate(nbar, s)
    name = f"three cases nbar={nbar} s={s}"
    if not ok:
        return Check(name, True, applicable=False, note=note)
    R = np.arange(1 << nbar, dtype=np.int64)
    wins = [sum(1 << ((r + c) % nbar) for c in range(s)) for r in range(nbar)]
    hits = np.stack([_popcount(R & w) for w in wins], axis=1)
    f0 = (hits == 0).sum(axis=1)
    f1 = (hits == 1).sum(axis=1)
    f2 = (hits == 2).sum(axis=1)
    good = (f0 >= t) | (f1 == 0) | (f2 >= 2)
    bad = np.flatnonzero(~good)
    data = {"counterexample": [int(b) for b in range(nbar) if bad[0] >> b & 1]} if len(bad) else {}
    return Check(name, not len(bad), int(good.sum()), 1 << nbar, "==", data=data)


def _popcount(a):
    c = np.zeros_like(a)
    x = a.copy()
    while x.any():
        c += x & 1
        x >>= 1
    return c


def claim_suite(nbar_max=14, s_max=6):
    return Report("three-case statement", [
        claim_exhaustive(nbar, s) for s in range(2, s_max + 1) for nbar in range(1, nbar_max + 1)])


def identity_sigma(n):
    return tuple(range(1, n + 1))


__all__ = [
    "ArcChainDecomposition", "WindowProfile", "CircleTrace", "chain_decompose", "f_profile",
    "x_profile", "window_counts", "check_window_bound", "check_averaged_window_bound",
    "window_bound_sweep", "averaging_consistency", "incidence_check", "claim_exhaustive",
    "claim_suite", "identity_sigma", "window_bound_lhs",
]
