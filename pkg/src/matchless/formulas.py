"""Closed-form values and bounds, evaluated exactly.

Integers come back as Python ints, bounds with fractional coefficients as
``Fraction``.  Evaluating outside a formula's proven range still returns
the value but emits a :class:`FormulaWarning`, so sweeps can keep going
while flagging the result as unguaranteed.
"""

import warnings
from fractions import Fraction
from math import comb


class FormulaWarning(UserWarning):
    """The parameters are outside the range where the formula is proven."""


def _unguaranteed(what):
    warnings.warn(f"formula not guaranteed: {what}", FormulaWarning, stacklevel=3)


def _binom(n, k):
    # comb() rejects negative n; out-of-range binomials are zero here
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def upper_tail(n, m):
    """Number of subsets of [n] with at least m elements."""
    return sum(_binom(n, t) for t in range(max(m, 0), n + 1))


# -- e(n, s) ----------------------------------------------------------------

def kleitman_e(s, m, at="sm-1"):
    """e(sm-1, s) or e(sm, s); ``at`` is ``"sm-1"``, ``"sm"`` or the integer n."""
    if s < 2 or m < 1:
        raise ValueError("need s >= 2 and m >= 1")
    if at in ("sm-1", s * m - 1):
        n = s * m - 1
        return upper_tail(n, m)
    if at in ("sm", s * m):
        n = s * m
        return _binom(n - 1, m) + upper_tail(n, m + 1)
    raise ValueError("at must be 'sm-1' or 'sm' (or the matching n)")


def quinn_e(m):
    """e(3m+1, 3)."""
    if m < 1:
        raise ValueError("need m >= 1")
    n = 3 * m + 1
    return _binom(3 * m, m - 1) + upper_tail(n, m + 1)


def p_size(s, m, l):
    """|P(s, m, l)| on n = sm + s - l, counted by the size of P within [l-1]."""
    if not 0 < l <= s:
        raise ValueError("need 0 < l <= s")
    n = s * m + s - l
    head, tail = l - 1, n - l + 1
    return sum(
        _binom(head, a) * upper_tail(tail, m + 1 - 2 * a)
        for a in range(head + 1)
    )


def conjectured_e(s, m, l):
    """The conjectured e(sm+s-l, s), namely |P(s, m, l)|."""
    if s < 2 or m < 1:
        raise ValueError("need s >= 2 and m >= 1")
    if not 0 < l <= s:
        raise ValueError("need 0 < l <= s")
    if l > -(-s // 2):
        _unguaranteed(f"l={l} exceeds ceil(s/2)={-(-s // 2)}; the conjecture may fail here")
    return p_size(s, m, l)


def min_missing(s, l):
    """Lower bound 2(s-l)+2 on the number of sets missing from F on n = 2s-l."""
    if not 1 <= l < s:
        raise ValueError("need 1 <= l < s")
    return 2 * (s - l) + 2


# -- uniform families -------------------------------------------------------

def hm_size(k, n, s):
    """|H^(k)(n, s)| = C(n,k) - C(n-s,k) + 1 - C(n-s-k, k-1)."""
    if n < s * k:
        _unguaranteed(f"n={n} < sk={s * k}")
    return _binom(n, k) - _binom(n - s, k) + 1 - _binom(n - s - k, k - 1)


def stability_bound(n, k, s, u):
    """Upper bound on |G| for k-uniform G with nu(G) = s and tau(G) > s."""
    if u < s + 1:
        raise ValueError("need u >= s + 1")
    if n != (u + s - 1) * (k - 1) + s + k:
        raise ValueError(f"need n = (u+s-1)(k-1)+s+k = {(u + s - 1) * (k - 1) + s + k}")
    return (Fraction(_binom(n, k) - _binom(n - s, k))
            - Fraction(u - s - 1, u) * _binom(n - s - k, k - 1))


def emc_value(n, k, s):
    """e_k(n, s): the largest k-uniform family on [n] with no s pairwise disjoint members.

    Uses C(n-1, k-1) for s = 2 (n >= 2k) and C(n,k) - C(n-s+1,k) for s >= 3
    (n >= (2s-1)k - s + 1); both agree at s = 2.
    """
    if s < 2 or k < 1:
        raise ValueError("need s >= 2 and k >= 1")
    if s == 2:
        if n < 2 * k:
            _unguaranteed(f"n={n} < 2k={2 * k}")
        return _binom(n - 1, k - 1)
    if n < (2 * s - 1) * k - s + 1:
        _unguaranteed(f"n={n} < (2s-1)k-s+1={(2 * s - 1) * k - s + 1}")
    return _binom(n, k) - _binom(n - s + 1, k)


# -- f(n, q, s) -------------------------------------------------------------

def f_value(n, q, s):
    """Closed form of f(n, q, s) when q = sm-1 or q = sm+s-2, else None."""
    if q % s == s - 1:
        return upper_tail(n, (q + 1) // s)
    if q % s == s - 2:
        m = (q + 2) // s - 1
        return _binom(n - 1, m - 1) + upper_tail(n, m + 1)
    return None


def large_n_threshold(s, m, l):
    """max{l(m^2+m+2), s(m+1)+l+m+3}: from here on f(n, s(m+1)-l, s) = |B|."""
    return max(l * (m * m + m + 2), s * (m + 1) + l + m + 3)


def deficiency_target(s, m):
    """C(n-1, m) + sum_{r<m} C(n, r) on n = sm+s-2: the fewest sets a family with nu < s can miss."""
    n = s * m + s - 2
    return _binom(n - 1, m) + sum(_binom(n, r) for r in range(m))


def level_bound(n, i, l):
    """(l-1) C(n-1, i-1): an i-uniform family with no l disjoint members is at most this."""
    return (l - 1) * _binom(n - 1, i - 1)


def level_sum_bound(n, k, l):
    return (l - 1) * sum(_binom(n - 1, i - 1) for i in range(1, k + 1))


def aux_values(kind, **p):
    """Dispatch for the auxiliary evaluators by name."""
    table = {
        "level_bound": lambda: level_bound(p["n"], p["i"], p["l"]),
        "level_sum_bound": lambda: level_sum_bound(p["n"], p["k"], p["l"]),
        "min_missing": lambda: min_missing(p["s"], p["l"]),
        "corollary_i": lambda: _corollary(p["n"], p["s"], p["m"], 1),
        "corollary_ii": lambda: _corollary(p["n"], p["s"], p["m"], 2),
        "large_n_threshold": lambda: large_n_threshold(p["s"], p["m"], p["l"]),
        "deficiency_target": lambda: deficiency_target(p["s"], p["m"]),
    }
    if kind not in table:
        raise ValueError(f"unknown kind {kind!r}; choose from {sorted(table)}")
    return table[kind]()


def _corollary(n, s, m, which):
    q = s * m - 1 if which == 1 else s * m + s - 2
    if n < q:
        _unguaranteed(f"n={n} < q={q}")
    return f_value(n, q, s)


# -- binomial inequalities used in the averaging argument -------------------

def level_sum_inequality(s, m):
    """(lhs, rhs) for (s-2-1/(s-2)) C(n,m) + (s-1) sum_{j=1..m} C(n,m-j) <= C(n,m+1), n = sm+s-2."""
    if s < 3:
        raise ValueError("need s >= 3")
    n = s * m + s - 2
    lhs = (s - 2 - Fraction(1, s - 2)) * _binom(n, m) + (s - 1) * sum(
        _binom(n, m - j) for j in range(1, m + 1))
    return lhs, Fraction(_binom(n, m + 1))


def two_up_inequality(s, m, l):
    """(lhs, rhs) for (s-l)/2 C(n,m) <= C(n,m+2), n = sm+s-l."""
    if s < 3 or not 2 <= l <= s:
        raise ValueError("need s >= 3 and 2 <= l <= s")
    n = s * m + s - l
    return Fraction(s - l, 2) * _binom(n, m), Fraction(_binom(n, m + 2))


def one_up_inequality(s, m, l):
    """(lhs, rhs) for (s-l) C(n,m) <= C(n,m+1), n = sm+s-l."""
    n = s * m + s - l
    return Fraction((s - l) * _binom(n, m)), Fraction(_binom(n, m + 1))
