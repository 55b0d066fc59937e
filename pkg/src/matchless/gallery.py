"""Named extremal constructions: materialize them, count them, and check them.

Kinds and parameters (elements 1-based):

* ``P``  (s, m, l) on n = sm+s-l: ``|P| + |P & [l-1]| >= m+1``
* ``B``  (n, q, s) with q = s(m+1)-l, 0 < l <= s: same rule on any n
* ``A``  (i, k, n, s): k-sets with ``|A & [(s+1)i-1]| >= i``
* ``H``  (k, n, s): k-sets meeting [s], plus [s+1, s+k], minus the k-sets
  meeting [s] only in s and missing [s+1, s+k]
* ``W``  (m, s, n): ``|W & [sm-1]| >= m``
* ``thresh`` (alpha): sets whose alpha-weight is at least 1
* ``star`` (center, k): sets meeting ``center``; k-uniform unless k is None
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, lcm

import numpy as np

from .family import MAX_N, SetFamily, _indices, elements_of, interval, is_shifted, mask_of, popcounts
from .formulas import hm_size, p_size, upper_tail
from .invariants import covering_number, has_D_property, matching_number
from .report import Check, Report, compare

KINDS = ("P", "B", "A", "H", "W", "thresh", "star")


@dataclass(frozen=True)
class ConstructionSpec:
    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown construction {self.kind!r}; expected one of {KINDS}")

    def __getitem__(self, key):
        return self.params[key]

    def __str__(self):
        if self.kind == "thresh":
            return "thresh:" + ",".join(str(a) for a in self.params["alpha"])
        if self.kind == "star":
            k = self.params.get("k")
            c = "+".join(map(str, self.params["center"]))
            return f"star:center={c}" + (f",k={k}" if k is not None else "")
        return self.kind + ":" + ",".join(f"{k}={v}" for k, v in self.params.items())

    def __hash__(self):
        return hash(str(self))

    # convenience constructors
    @classmethod
    def P(cls, s, m, l):
        return cls("P", {"s": s, "m": m, "l": l})

    @classmethod
    def B(cls, n, q, s):
        return cls("B", {"n": n, "q": q, "s": s})

    @classmethod
    def A(cls, i, k, n, s):
        return cls("A", {"i": i, "k": k, "n": n, "s": s})

    @classmethod
    def H(cls, k, n, s):
        return cls("H", {"k": k, "n": n, "s": s})

    @classmethod
    def W(cls, m, s, n):
        return cls("W", {"m": m, "s": s, "n": n})

    @classmethod
    def threshold(cls, alpha):
        return cls("thresh", {"alpha": tuple(Fraction(a) for a in alpha)})

    @classmethod
    def star(cls, center, k=None):
        return cls("star", {"center": tuple(sorted(center)), "k": k})


_INT_KEYS = {"P": ("s", "m", "l"), "B": ("n", "q", "s"), "A": ("i", "k", "n", "s"),
             "H": ("k", "n", "s"), "W": ("m", "s", "n")}


def parse_spec(text):
    """Parse ``P:s=3,m=1,l=2``, ``thresh:1,1/2,1/2``, ``star:center=1+2,k=2`` and friends."""
    head, _, body = text.strip().partition(":")
    kind = {"p": "P", "b": "B", "a": "A", "h": "H", "w": "W", "thresh": "thresh",
            "threshold": "thresh", "star": "star"}.get(head.lower())
    if kind is None:
        raise ValueError(f"unknown construction {head!r}")
    if kind == "thresh":
        try:
            alpha = [Fraction(tok) for tok in body.split(",") if tok.strip()]
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad weight vector {body!r}") from exc
        return ConstructionSpec.threshold(alpha)
    pairs = dict(re.findall(r"(\w+)=([^,]+)", body))
    if kind == "star":
        center = [int(x) for x in pairs["center"].split("+")]
        k = pairs.get("k")
        return ConstructionSpec.star(center, None if k in (None, "all") else int(k))
    missing = [k for k in _INT_KEYS[kind] if k not in pairs]
    extra = [k for k in pairs if k not in _INT_KEYS[kind]]
    if missing or extra:
        raise ValueError(f"{kind} takes parameters {_INT_KEYS[kind]}")
    return ConstructionSpec(kind, {k: int(pairs[k]) for k in _INT_KEYS[kind]})


def b_parameters(q, s):
    """(m, l) with q = s(m+1) - l and 0 < l <= s."""
    m = q // s
    return m, s * (m + 1) - q


def ground_size(spec, n=None):
    """The n a spec lives on; P fixes it, the others carry it or need it."""
    k = spec.kind
    if k == "P":
        own = spec["s"] * spec["m"] + spec["s"] - spec["l"]
        if n is not None and n != own:
            raise ValueError(f"P(s,m,l) lives on n = sm+s-l = {own}, got n={n}")
        return own
    if k in ("B", "A", "H", "W"):
        own = spec["n"]
        if n is not None and n != own:
            raise ValueError(f"{k} spec carries n={own}, got n={n}")
        return own
    if k == "thresh":
        own = len(spec["alpha"])
        if n is not None and n != own:
            raise ValueError(f"weight vector has length {own}, got n={n}")
        return own
    if n is None:
        raise ValueError("star needs an explicit n")
    return n


def validate(spec, n=None):
    """Raise ValueError naming the violated constraint; return the ground size."""
    n = ground_size(spec, n)
    p = spec.params
    if spec.kind == "P":
        if not (p["s"] >= 2 and p["m"] >= 0 and 0 < p["l"] <= p["s"]):
            raise ValueError("P needs s >= 2, m >= 0 and 0 < l <= s")
    elif spec.kind == "B":
        if p["s"] < 1 or n < 0:
            raise ValueError("B needs s >= 1 and n >= 0")
    elif spec.kind == "A":
        i, k, s = p["i"], p["k"], p["s"]
        if not 1 <= i <= k:
            raise ValueError("A needs 1 <= i <= k")
        if s < 1 or n < (s + 1) * k:
            raise ValueError(f"A needs n >= (s+1)k = {(s + 1) * k}")
    elif spec.kind == "H":
        k, s = p["k"], p["s"]
        if k < 1 or s < 1:
            raise ValueError("H needs k >= 1 and s >= 1")
        if n < s * k:
            raise ValueError(f"H needs n >= sk = {s * k}")
        if n < s + k:
            raise ValueError(f"H needs n >= s+k = {s + k}")
    elif spec.kind == "W":
        m, s = p["m"], p["s"]
        if m < 1 or s < 1:
            raise ValueError("W needs m >= 1 and s >= 1")
        if n < s * m - 1:
            raise ValueError(f"W needs n >= sm-1 = {s * m - 1}")
    elif spec.kind == "thresh":
        a = p["alpha"]
        if any(x < 0 for x in a):
            raise ValueError("weights must be nonnegative")
        if any(a[i] < a[i + 1] for i in range(len(a) - 1)):
            raise ValueError("weights must be nonincreasing")
    elif spec.kind == "star":
        c = p["center"]
        if not c or min(c) < 1 or max(c) > n:
            raise ValueError(f"star center must be a nonempty subset of [{n}]")
        if p["k"] is not None and not 0 <= p["k"] <= n:
            raise ValueError("star needs 0 <= k <= n")
    return n


# -- materialization --------------------------------------------------------

def _weighted(n, weights):
    """Weight of every mask in 2^[n] under integer element weights."""
    idx = _indices(n)
    big = max(weights, default=0) * max(n, 1) >= 2 ** 62
    total = np.zeros(1 << n, dtype=object if big else np.int64)
    for i, w in enumerate(weights):
        if w:
            total += ((idx >> i) & 1).astype(total.dtype) * w
    return total


def build(spec, n=None):
    """Membership table of the construction as a SetFamily."""
    n = validate(spec, n)
    if n > MAX_N:
        raise ValueError(f"cannot materialize n={n} > {MAX_N}; use size_of")
    idx = _indices(n)
    pc = popcounts(n).astype(np.int64)
    p = spec.params
    if spec.kind in ("P", "B"):
        if spec.kind == "P":
            m, l = p["m"], p["l"]
        else:
            m, l = b_parameters(p["q"], p["s"])
        head = interval(1, min(l - 1, n))
        table = pc + pc[idx & head] >= m + 1
    elif spec.kind == "A":
        i, k, s = p["i"], p["k"], p["s"]
        table = (pc == k) & (pc[idx & interval(1, (s + 1) * i - 1)] >= i)
    elif spec.kind == "H":
        k, s = p["k"], p["s"]
        S, T = interval(1, s), interval(s + 1, s + k)
        base = (pc == k) & ((idx & S) != 0)
        carve = (pc == k) & ((idx & S) == 1 << (s - 1)) & ((idx & T) == 0)
        table = (base & ~carve) | (idx == T)
    elif spec.kind == "W":
        m, s = p["m"], p["s"]
        table = pc[idx & interval(1, s * m - 1)] >= m
    elif spec.kind == "thresh":
        weights, scale = _scaled(p["alpha"])
        table = _weighted(n, weights) >= scale
        table = np.asarray(table, dtype=bool)
    else:
        c = mask_of(p["center"])
        table = (idx & c) != 0
        if p["k"] is not None:
            table &= pc == p["k"]
    return SetFamily(n, table)


def _scaled(alpha):
    scale = lcm(*(Fraction(a).denominator for a in alpha)) if alpha else 1
    return [int(Fraction(a) * scale) for a in alpha], scale


# -- counting without materializing -----------------------------------------

def _b_count(n, m, l):
    head = max(0, min(l - 1, n))
    return sum(comb(head, a) * upper_tail(n - head, m + 1 - 2 * a) for a in range(head + 1))


def threshold_count(alpha):
    """|F(alpha)| by a dynamic program over the distinct weights."""
    weights, scale = _scaled(alpha)
    groups = {}
    for w in weights:
        groups[w] = groups.get(w, 0) + 1
    sums = {0: 1}
    for w, c in groups.items():
        nxt = {}
        for tot, ways in sums.items():
            for j in range(c + 1):
                key = min(tot + j * w, scale)
                nxt[key] = nxt.get(key, 0) + ways * comb(c, j)
        sums = nxt
    return sums.get(scale, 0)


def size_of(spec, n=None):
    """Exact cardinality of the construction, with no cap on n."""
    n = validate(spec, n)
    p = spec.params
    if spec.kind == "P":
        return p_size(p["s"], p["m"], p["l"])
    if spec.kind == "B":
        m, l = b_parameters(p["q"], p["s"])
        return _b_count(n, m, l)
    if spec.kind == "A":
        i, k, s = p["i"], p["k"], p["s"]
        t = (s + 1) * i - 1
        return sum(comb(t, a) * comb(n - t, k - a) for a in range(i, k + 1))
    if spec.kind == "H":
        return hm_size(p["k"], n, p["s"])
    if spec.kind == "W":
        m, s = p["m"], p["s"]
        t = s * m - 1
        return upper_tail(t, m) << (n - t)
    if spec.kind == "thresh":
        return threshold_count(p["alpha"])
    c = len(p["center"])
    if p["k"] is None:
        return (1 << n) - (1 << (n - c))
    return comb(n, p["k"]) - comb(n - c, p["k"])


# -- threshold representations ----------------------------------------------

def preset_alpha(kind, **p):
    """Weight vectors realizing the constructions as threshold families.

    ``p``: (s, m, l) gives P(s, m, l); ``w``: (m, s, n) gives W(m, s) on n;
    ``h``: (k, n, s) gives a vector whose k-uniform slice is H^(k)(n, s-1).
    """
    if kind == "p":
        s, m, l = p["s"], p["m"], p["l"]
        n = s * m + s - l
        return tuple([Fraction(2, m + 1)] * (l - 1) + [Fraction(1, m + 1)] * (n - l + 1))
    if kind == "w":
        m, s, n = p["m"], p["s"], p["n"]
        ones = s * m - 1
        if n < ones:
            raise ValueError("need n >= sm-1")
        return tuple([Fraction(1, m)] * ones + [Fraction(0)] * (n - ones))
    if kind == "h":
        k, n, s = p["k"], p["n"], p["s"]
        if s < 2 or n < s - 1 + k:
            raise ValueError("need s >= 2 and n >= s-1+k")
        head = [Fraction(1)] * (s - 2) + [1 - Fraction(1, k)] + [Fraction(1, k)] * k
        return tuple(head + [Fraction(0)] * (n - len(head)))
    raise ValueError(f"unknown preset {kind!r}; choose p, w or h")


def threshold_family(alpha):
    return build(ConstructionSpec.threshold(alpha))


# -- verification -----------------------------------------------------------

def _advertised(spec, n, F, report):
    p = spec.params
    kind = spec.kind
    if kind == "P":
        s = p["s"]
        nu, wit = matching_number(F)
        report.append(compare("nu(P) < s", nu, s, "<", data={"matching": wit.sets}))
        alpha = preset_alpha("p", s=s, m=p["m"], l=p["l"])
        report.append(Check("P = F(alpha_p)", threshold_family(alpha) == F))
    elif kind == "B":
        ok, bad = has_D_property(F, p["s"], p["q"])
        report.append(Check("B is D(s,q)", ok, data={"violation": bad} if bad else {}))
    elif kind == "A":
        s, i = p["s"], p["i"]
        nu, _ = matching_number(F)
        tau, cov = covering_number(F)
        report.append(compare("nu(A) = s", nu, s, "=="))
        if i == 1:
            report.append(compare("tau(A_1) = s", tau, s, "==", data={"cover": cov.cover}))
        else:
            report.append(compare("tau(A_i) > s for i >= 2", tau, s, ">", data={"cover": cov.cover}))
    elif kind == "H":
        s, k = p["s"], p["k"]
        nu, _ = matching_number(F)
        tau, cov = covering_number(F)
        report.append(compare("nu(H) = s", nu, s, "=="))
        report.append(compare("tau(H) = s+1", tau, s + 1, "==", data={"cover": cov.cover}))
        alpha = preset_alpha("h", k=k, n=n, s=s + 1)
        sliced = threshold_family(alpha) & SetFamily.uniform(n, k)
        report.append(Check("H = F(alpha_h) on k-sets", sliced == F))
    elif kind == "W":
        m, s = p["m"], p["s"]
        nu, _ = matching_number(F)
        report.append(compare("nu(W) = s-1", nu, s - 1, "=="))
        alpha = preset_alpha("w", m=m, s=s, n=n)
        report.append(Check("W = F(alpha_w)", threshold_family(alpha) == F))
    elif kind == "thresh":
        total = sum(p["alpha"], Fraction(0))
        nu, _ = matching_number(F)
        s = total.__floor__() + 1
        report.append(compare("nu(F(alpha)) < s for any s > sum(alpha)", nu, s, "<",
                              note=f"sum(alpha) = {total}"))


def verify_construction(spec, n=None):
    """Re-derive the advertised size, shiftedness, nu and tau of a construction."""
    n = validate(spec, n)
    report = Report(f"construction {spec}")
    expected = size_of(spec, n)
    if n > MAX_N:
        report.append(Check("materialized checks", True, applicable=False,
                            note=f"n={n} beyond {MAX_N}; size only", data={"size": expected}))
        return report
    F = build(spec, n)
    report.append(compare("build/size agreement", len(F), expected, "=="))
    report.append(Check("shifted", is_shifted(F)))
    _advertised(spec, n, F, report)
    return report


def construction_grid(s_max=8, m_max=3, k_max=4, n_max=20):
    """(spec, n) pairs covering every kind within the given bounds.

    P takes every (s, m, l) that fits; H every admissible n; W, B and A
    a few ground sizes past their minimum, since their checks grow with n.
    """
    out = []
    for s in range(2, s_max + 1):
        for m in range(1, m_max + 1):
            for l in range(1, s + 1):
                if s * m + s - l <= n_max:
                    out.append((ConstructionSpec.P(s, m, l), None))
            lo = max(s * m - 1, 1)
            for n in sorted({*range(lo, lo + 3), n_max}):
                if lo <= n <= n_max:
                    out.append((ConstructionSpec.W(m, s, n), None))
    for k in range(2, k_max + 1):
        for s in range(1, s_max + 1):
            for n in range(max(s * k, s + k), n_max + 1):
                out.append((ConstructionSpec.H(k, n, s), None))
    for k in range(2, min(k_max, 3) + 1):
        for s in range(1, 3):
            for i in range(1, k + 1):
                n = (s + 1) * k
                if n <= n_max:
                    out.append((ConstructionSpec.A(i, k, n, s), None))
    for s in range(2, s_max + 1):
        for n in range(1, min(n_max, 9) + 1):
            for q in range(0, n + 1):
                out.append((ConstructionSpec.B(n, q, s), None))
    for n in range(1, min(n_max, 8) + 1):
        out.append((ConstructionSpec.star((1,), None), n))
        if n >= 2:
            out.append((ConstructionSpec.star((1,), 2), n))
    return out


def b_recursion_check(n_max=30, s_max=6):
    """|B(n,q,s)| = |B(n-1,q,s)| + |B(n-1,q-s,s)| for 1 <= n <= n_max, 0 <= q <= n, s <= s_max."""
    bad, count = [], 0
    for s in range(1, s_max + 1):
        for n in range(1, n_max + 1):
            for q in range(0, n + 1):
                count += 1
                lhs = size_of(ConstructionSpec.B(n, q, s))
                rhs = size_of(ConstructionSpec.B(n - 1, q, s)) + size_of(ConstructionSpec.B(n - 1, q - s, s))
                if lhs != rhs:
                    bad.append((n, q, s, lhs, rhs))
    return Report("B recursion", [Check(f"B-size recursion on {count} triples", not bad,
                                        data={"mismatches": bad[:10]} if bad else {})])


def describe(F):
    """Human-readable member list, mostly for demos."""
    return ["{" + ",".join(map(str, elements_of(m))) + "}" for m in F]


__all__ = [
    "ConstructionSpec", "parse_spec", "build", "size_of", "preset_alpha", "verify_construction",
    "threshold_count", "threshold_family", "b_parameters", "validate", "describe",
    "construction_grid", "b_recursion_check",
]
