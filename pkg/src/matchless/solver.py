"""Exact maxima of e(n,s), f(n,q,s), e_k(n,s) and relatives by branch and bound.

A family is a Python int whose bit A is set when subset mask A is a member.
The search walks the candidate sets of a search space in a fixed linear
extension of its order (smaller sets first) and decides each one in or out.
Taking a set in also takes everything above it in the order, so every
node is an up-set of the space and the constraint check can use the
structure of up-sets:

* an up-closed family has s disjoint members iff [n] splits into s members;
* if it is also shifted, s disjoint members with a union of size u can be
  moved onto [u], so D(s, q) fails iff [min(q, n)] splits into s members.

Branches are cut only when even taking every undecided set cannot beat
the incumbent, so ties are explored and the lexicographically least
optimal membership table wins.
"""

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ._kernels import can_partition
from .family import MAX_N, SetFamily, _indices, elements_of, popcounts
from .formulas import deficiency_target
from .gallery import preset_alpha, threshold_count
from .invariants import covering_number, has_D_property, matching_number
from .report import Check, Report, compare

KINDS = ("E", "F", "EK", "EK_TAU", "CAPPED")


@dataclass(frozen=True)
class Problem:
    kind: str
    n: int
    s: int
    q: int = None
    k: int = None
    r: int = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown problem kind {self.kind!r}; expected one of {KINDS}")
        if not 0 <= self.n <= MAX_N:
            raise ValueError(f"need 0 <= n <= {MAX_N}")
        if self.s < 1:
            raise ValueError("need s >= 1")
        need = {"F": "q", "EK": "k", "EK_TAU": "k", "CAPPED": "r"}.get(self.kind)
        if need and getattr(self, need) is None:
            raise ValueError(f"{self.kind} needs parameter {need}")
        if self.kind in ("EK", "EK_TAU") and not 1 <= self.k <= self.n:
            raise ValueError("need 1 <= k <= n")
        if self.kind == "F" and self.q < 0:
            raise ValueError("need q >= 0")
        if self.kind == "CAPPED" and self.r < 0:
            raise ValueError("need r >= 0")

    @classmethod
    def E(cls, n, s):
        return cls("E", n, s)

    @classmethod
    def F(cls, n, q, s):
        return cls("F", n, s, q=q)

    @classmethod
    def EK(cls, n, k, s):
        return cls("EK", n, s, k=k)

    @classmethod
    def EK_TAU(cls, n, k, s):
        return cls("EK_TAU", n, s, k=k)

    @classmethod
    def CAPPED(cls, n, s, r):
        return cls("CAPPED", n, s, r=r)

    def params(self):
        out = {"n": self.n}
        for key in ("q", "k", "r"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        out["s"] = self.s
        return out

    def __str__(self):
        return f"{self.kind}(" + ",".join(f"{k}={v}" for k, v in self.params().items()) + ")"


def parse_problem(words):
    """``["E", "n=7", "s=3"]`` or ``"F n=5 q=3 s=2"`` to a Problem."""
    if isinstance(words, str):
        words = words.split()
    if not words:
        raise ValueError("empty problem")
    kind = words[0].upper()
    kw = {}
    for w in words[1:]:
        key, sep, val = w.partition("=")
        if not sep or key not in ("n", "s", "q", "k", "r"):
            raise ValueError(f"bad problem parameter {w!r}")
        kw[key] = int(val)
    if "n" not in kw or "s" not in kw:
        raise ValueError("problems need n=<int> and s=<int>")
    return Problem(kind, **kw)


class SearchSpace(Enum):
    ALL = "all"
    MONOTONE = "monotone"
    MONOTONE_SHIFTED = "monotone-shifted"
    UNIFORM_SHIFTED = "uniform-shifted"

    @property
    def justification(self):
        return {
            "all": "no restriction",
            "monotone": "adding supersets never creates new disjoint tuples with small union",
            "monotone-shifted": "shifting keeps the size and never increases nu or breaks D(s,q)",
            "uniform-shifted": "shifting keeps the level and never increases nu",
        }[self.value]

    @classmethod
    def parse(cls, text):
        text = text.lower().replace("_", "-")
        for member in cls:
            if member.value == text:
                return member
        raise ValueError(f"unknown search space {text!r}")


VALID_SPACES = {
    "E": {SearchSpace.ALL, SearchSpace.MONOTONE, SearchSpace.MONOTONE_SHIFTED},
    "F": {SearchSpace.ALL, SearchSpace.MONOTONE, SearchSpace.MONOTONE_SHIFTED},
    "CAPPED": {SearchSpace.ALL, SearchSpace.MONOTONE, SearchSpace.MONOTONE_SHIFTED},
    "EK": {SearchSpace.ALL, SearchSpace.UNIFORM_SHIFTED},
    "EK_TAU": {SearchSpace.ALL},
}
DEFAULT_SPACE = {
    "E": SearchSpace.MONOTONE_SHIFTED, "F": SearchSpace.MONOTONE_SHIFTED,
    "CAPPED": SearchSpace.MONOTONE_SHIFTED, "EK": SearchSpace.UNIFORM_SHIFTED,
    "EK_TAU": SearchSpace.ALL,
}
ALL_ITEMS_CAP = 64
ORDERED_ITEMS_CAP = 1 << 14


@dataclass
class SolveResult:
    problem: Problem
    optimum: int
    witness: SetFamily
    nodes: int
    mode: SearchSpace
    certificate: str
    upper_bound: int
    seconds: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def proved(self):
        return self.certificate == "proved-optimal"

    def to_dict(self):
        from .report import jsonable
        return {
            "problem": str(self.problem), "optimum": jsonable(self.optimum),
            "witness": jsonable(self.witness), "nodes": jsonable(self.nodes),
            "mode": self.mode.value, "certificate": self.certificate,
            "upper_bound": jsonable(self.upper_bound), "wall_seconds": f"{self.seconds:.3f}",
        }


# -- search context ---------------------------------------------------------

def _space_masks(p):
    pc = popcounts(p.n)
    idx = _indices(p.n)
    if p.kind in ("EK", "EK_TAU"):
        return idx[pc == p.k]
    if p.kind == "CAPPED":
        return idx[pc <= p.r]
    return idx


def _order(masks, n):
    """Linear extension of inclusion and left-shifting: by size, then larger element sum."""
    idx = np.asarray(masks, dtype=np.int64)
    wsum = np.zeros(len(idx), dtype=np.int64)
    size = np.zeros(len(idx), dtype=np.int64)
    for i in range(n):
        bit = (idx >> i) & 1
        wsum += bit * (i + 1)
        size += bit
    return idx[np.lexsort((idx, -wsum, size))]


def _bits_of(bool_table):
    return int.from_bytes(np.packbits(bool_table, bitorder="little").tobytes(), "little")


def _up_sets(items, n, space):
    N = 1 << n
    out = []
    if space == SearchSpace.ALL:
        return [1 << int(a) for a in items]
    if space == SearchSpace.MONOTONE:
        for a in items:
            row = np.zeros(N, dtype=bool)
            row[items[(items & a) == a]] = True
            out.append(_bits_of(row))
        return out
    pref = np.zeros((len(items), n), dtype=np.int16)
    run = np.zeros(len(items), dtype=np.int16)
    for i in range(n):
        run = run + ((items >> i) & 1)
        pref[:, i] = run
    for j in range(len(items)):
        row = np.zeros(N, dtype=bool)
        row[items[(pref >= pref[j]).all(axis=1)]] = True
        out.append(_bits_of(row))
    return out


def _members(fam):
    out = []
    while fam:
        low = fam & -fam
        out.append(low.bit_length() - 1)
        fam ^= low
    return out


def _pack(ms, k, used, budget, start=0):
    """k distinct members from ms, pairwise disjoint, avoiding ``used``, union size <= budget."""
    if k == 0:
        return True
    for i in range(start, len(ms)):
        B = ms[i]
        if B & used:
            continue
        size = B.bit_count()
        if size > budget:
            continue
        if _pack(ms, k - 1, used | B, budget - size, i + 1):
            return True
    return False


class _Context:
    """Items, closures and constraint tests for one (problem, space) pair."""

    def __init__(self, problem, space):
        self.p = p = problem
        self.space = space
        n = p.n
        masks = _space_masks(p)
        if space == SearchSpace.ALL and len(masks) > ALL_ITEMS_CAP:
            raise ValueError(f"ALL space has {len(masks)} candidate sets (cap {ALL_ITEMS_CAP})")
        if len(masks) > ORDERED_ITEMS_CAP:
            raise ValueError(f"search space has {len(masks)} candidate sets (cap {ORDERED_ITEMS_CAP})")
        self.items = [int(a) for a in _order(masks, n)]
        self.up = _up_sets(np.array(self.items, dtype=np.int64), n, space)
        N = len(self.items)
        rem = [0] * (N + 1)
        for pos in range(N - 1, -1, -1):
            rem[pos] = rem[pos + 1] | (1 << self.items[pos])
        self.rem = rem
        self.full = (1 << n) - 1
        self.leaf_ok = None
        self.viable = None
        self.feasible = self._pick_feasible()

    # constraint tests: fam is the family after taking item e (and its closure)

    def _pick_feasible(self):
        p, sp = self.p, self.space
        n, s = p.n, p.s
        if sp == SearchSpace.ALL or (p.kind == "CAPPED" and sp == SearchSpace.MONOTONE):
            return self._generic()
        if p.kind == "E":
            def ok(fam, e):
                if fam & 1:
                    return n + 1 < s
                return n < s or not can_partition(fam, self.full, s)
            return ok
        if p.kind == "F":
            t = min(p.q, n)
            if sp == SearchSpace.MONOTONE_SHIFTED:
                target = (1 << t) - 1

                def ok(fam, e):
                    if fam & 1:
                        return s - 1 > t
                    return t < s or not can_partition(fam, target, s)
                return ok
            tops = [int(a) for a in _indices(n)[popcounts(n) == t]]

            def ok(fam, e):
                if fam & 1:
                    return s - 1 > t
                if t < s:
                    return True
                memo = {}
                return not any(can_partition(fam, M, s, memo) for M in tops)
            return ok
        if p.kind == "CAPPED":
            r = p.r
            hi = min(n, s * r)

            def ok(fam, e):
                if fam & 1:
                    return (n + 1 if r >= 1 else 1) < s
                memo = {}
                return not any(can_partition(fam, (1 << u) - 1, s, memo) for u in range(s, hi + 1))
            return ok
        if p.kind == "EK":
            span = s * p.k
            target = (1 << span) - 1

            def ok(fam, e):
                return span > n or not can_partition(fam, target, s)
            return ok
        raise ValueError(f"space {sp.value} does not support {p.kind}")

    def _generic(self):
        p = self.p
        n, s = p.n, p.s
        if p.kind == "EK_TAU":
            self._setup_tau()
            k_bad = s + 1
        else:
            k_bad = s
        budget = p.q if p.kind == "F" else n

        def ok(fam, e):
            rest = _members(fam & ~(1 << e))
            size = e.bit_count()
            if size > budget:
                return True
            return not _pack(rest, k_bad - 1, e, budget - size)
        return ok

    def _setup_tau(self):
        p = self.p
        n, s = p.n, p.s
        idx = _indices(n)
        avoid = []
        for T in itertools.combinations(range(n), min(s, n)):
            t = sum(1 << i for i in T)
            row = np.zeros(1 << n, dtype=bool)
            row[[a for a in self.items if a & t == 0]] = True
            avoid.append(_bits_of(row))
        del idx

        def upward(fam):
            if s >= n:
                return False
            if not all(fam & a for a in avoid):
                return False
            return _pack(_members(fam), s, 0, n)
        self.leaf_ok = upward
        self.viable = upward

    # -- the search itself --------------------------------------------------

    def search(self, stack, max_nodes, deadline, best=(-1, None)):
        items, up, rem = self.items, self.up, self.rem
        N = len(items)
        feasible, leaf_ok, viable = self.feasible, self.leaf_ok, self.viable
        best_val, best_fam = best
        nodes = 0
        aborted = False
        while stack:
            if nodes >= max_nodes or (nodes & 255 == 0 and time.monotonic() > deadline):
                aborted = True
                break
            pos, fam = stack.pop()
            nodes += 1
            while pos < N and (fam >> items[pos]) & 1:
                pos += 1
            top = fam | rem[pos]
            ub = top.bit_count()
            if ub < best_val:
                continue
            if viable is not None and not viable(top):
                continue
            if pos == N:
                if leaf_ok is not None and not leaf_ok(fam):
                    continue
                val = fam.bit_count()
                if val > best_val or _lex_less(fam, best_fam):
                    best_val, best_fam = val, fam
                continue
            stack.append((pos + 1, fam))
            new = fam | up[pos]
            if feasible(new, items[pos]):
                stack.append((pos + 1, new))
        pending = max(((f | rem[q]).bit_count() for q, f in stack), default=-1)
        return best_val, best_fam, nodes, aborted, pending

    def frontier(self, want):
        """Split the root into at least ``want`` open subproblems (breadth first)."""
        items, up = self.items, self.up
        N = len(items)
        level = [(0, 0)]
        while len(level) < want:
            nxt, grew = [], False
            for pos, fam in level:
                while pos < N and (fam >> items[pos]) & 1:
                    pos += 1
                if pos == N:
                    nxt.append((pos, fam))
                    continue
                grew = True
                nxt.append((pos + 1, fam))
                new = fam | up[pos]
                if self.feasible(new, items[pos]):
                    nxt.append((pos + 1, new))
            level = nxt
            if not grew:
                break
        return level


def _lex_less(a, b):
    """a precedes b when the membership tables are compared entry by entry from the empty set up."""
    if b is None:
        return True
    d = a ^ b
    if not d:
        return False
    return not (a & (d & -d))


@lru_cache(maxsize=8)
def _context(problem, space):
    return _Context(problem, space)


def _worker(problem, space, chunk, max_nodes, deadline_in):
    ctx = _context(problem, space)
    deadline = time.monotonic() + deadline_in
    return ctx.search(list(reversed(chunk)), max_nodes, deadline)


def _threads(threads):
    if threads is None:
        threads = int(os.environ.get("MATCHLESS_THREADS", "1") or 1)
    return max(1, threads)


def solve_exact(problem, space=None, budget_nodes=10 ** 8, budget_seconds=900.0, threads=None):
    """Maximum family for ``problem`` inside ``space``.

    The certificate is ``"proved-optimal"`` when the search finished and
    ``"best-found"`` when a budget ran out; then ``upper_bound`` is the
    largest value any unexplored branch could still reach.
    """
    space = DEFAULT_SPACE[problem.kind] if space is None else space
    if isinstance(space, str):
        space = SearchSpace.parse(space)
    if space not in VALID_SPACES[problem.kind]:
        raise ValueError(f"space {space.value} is not a valid reduction for {problem.kind}")
    t0 = time.monotonic()
    ctx = _context(problem, space)
    threads = _threads(threads)
    budget_nodes = int(budget_nodes)
    if threads > 1:
        best_val, best_fam, nodes, aborted, pending = _parallel(ctx, problem, space, threads,
                                                                budget_nodes, budget_seconds)
    else:
        best_val, best_fam, nodes, aborted, pending = ctx.search(
            [(0, 0)], budget_nodes, t0 + budget_seconds)
    seconds = time.monotonic() - t0
    cert = "best-found" if aborted else "proved-optimal"
    upper = max(best_val, pending) if aborted else best_val
    if best_fam is None:
        return SolveResult(problem, None, None, nodes, space, cert,
                           None if not aborted else pending, seconds)
    return SolveResult(problem, best_val, SetFamily.from_bits(problem.n, best_fam), nodes,
                       space, cert, upper, seconds)


def _parallel(ctx, problem, space, threads, budget_nodes, budget_seconds):
    frontier = ctx.frontier(4 * threads)
    chunks = [frontier[i::threads] for i in range(threads)]
    chunks = [c for c in chunks if c]
    per = max(1, budget_nodes // len(chunks))
    with ProcessPoolExecutor(max_workers=threads) as pool:
        outs = list(pool.map(_worker, [problem] * len(chunks), [space] * len(chunks), chunks,
                             [per] * len(chunks), [budget_seconds] * len(chunks)))
    best_val, best_fam, nodes, aborted, pending = -1, None, 0, False, -1
    for val, fam, nd, ab, pend in outs:
        nodes += nd
        aborted |= ab
        pending = max(pending, pend)
        if fam is not None and (val > best_val or (val == best_val and _lex_less(fam, best_fam))):
            best_val, best_fam = val, fam
    return best_val, best_fam, nodes, aborted, pending


# -- independent oracles ----------------------------------------------------

def _disjoint_tuples(items, k, budget):
    """Index tuples of k distinct pairwise disjoint items with union size <= budget."""
    out = []

    def rec(start, used, left, chosen):
        if len(chosen) == k:
            out.append(tuple(chosen))
            return
        for i in range(start, len(items)):
            B = items[i]
            if B & used or B.bit_count() > left:
                continue
            chosen.append(i)
            rec(i + 1, used | B, left - B.bit_count(), chosen)
            chosen.pop()

    rec(0, 0, budget, [])
    return out


_BYTE_POP = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)


def _popcount64(a):
    total = np.zeros(a.shape, dtype=np.int64)
    for shift in range(0, 64, 8):
        total += _BYTE_POP[(a >> shift) & 255]
    return total


def brute_force_oracle(problem, mode="ALL"):
    """Optimum by exhaustive enumeration, sharing no search code with :func:`solve_exact`.

    ``mode="ALL"`` scores every family of candidate sets (at most 22 of them,
    e.g. all of 2^[4]); ``mode="MONOTONE"`` walks every up-closed family
    (n <= 6) with constraint checks only.  Returns None if nothing qualifies.
    """
    if mode == "ALL":
        return _oracle_all(problem)
    if mode == "MONOTONE":
        return _oracle_monotone(problem)
    raise ValueError("mode must be 'ALL' or 'MONOTONE'")


def _oracle_all(p):
    n, s = p.n, p.s
    items = [int(a) for a in _space_masks(p)]
    G = len(items)
    if G > 22:
        raise ValueError(f"{G} candidate sets: too many for exhaustive enumeration (cap 22)")
    budget = p.q if p.kind == "F" else n
    if p.kind == "EK_TAU":
        bad = _disjoint_tuples(items, s + 1, n)
        need = _disjoint_tuples(items, s, n)
        avoid = []
        for T in itertools.combinations(range(n), min(s, n)):
            t = sum(1 << i for i in T)
            avoid.append(sum(1 << j for j, a in enumerate(items) if a & t == 0))
    else:
        bad = _disjoint_tuples(items, s, budget)
        need, avoid = None, None
    bad_masks = [sum(1 << i for i in t) for t in bad]
    best = None
    chunk = 1 << 20
    for start in range(0, 1 << G, chunk):
        f = np.arange(start, min(start + chunk, 1 << G), dtype=np.int64)
        ok = np.ones(len(f), dtype=bool)
        for b in bad_masks:
            ok &= (f & b) != b
        if need is not None:
            has = np.zeros(len(f), dtype=bool)
            for t in need:
                b = sum(1 << i for i in t)
                has |= (f & b) == b
            ok &= has
            if s >= n:
                ok[:] = False
            for a in avoid:
                ok &= (f & a) != 0
        if ok.any():
            val = int(_popcount64(f[ok]).max())
            best = val if best is None else max(best, val)
    return best


def _oracle_monotone(p):
    n, s = p.n, p.s
    if p.kind not in ("E", "F", "CAPPED"):
        raise ValueError("monotone enumeration applies to E, F and CAPPED")
    if n > 6:
        raise ValueError("monotone enumeration is limited to n <= 6")
    items = sorted((int(a) for a in _space_masks(p)), key=lambda a: (a.bit_count(), a))
    ups = [[b for b in items if b & a == a] for a in items]
    budget = p.q if p.kind == "F" else n
    best = [None]

    def violates(members):
        return _pack(sorted(members), s, 0, budget)

    def rec(i, members):
        while i < len(items) and items[i] in members:
            i += 1
        if i == len(items):
            if best[0] is None or len(members) > best[0]:
                best[0] = len(members)
            return
        grown = members | set(ups[i])
        if not violates(grown):
            rec(i + 1, grown)
        rec(i + 1, members)

    rec(0, frozenset())
    return best[0]


# -- witness and structure checks -------------------------------------------

def verify_witness(F, problem, value=None):
    """Re-check a claimed optimal family with the invariants module."""
    p = problem
    rep = Report(f"witness for {p}")
    if F.n != p.n:
        rep.append(Check("ground set", False, F.n, p.n, "=="))
        return rep
    sizes = popcounts(F.n)[F.members()]
    if p.kind in ("EK", "EK_TAU"):
        rep.append(Check(f"members are {p.k}-sets", bool((sizes == p.k).all())))
    if p.kind == "CAPPED":
        rep.append(Check(f"members have at most {p.r} elements", bool((sizes <= p.r).all())))
    if p.kind == "F":
        ok, bad = has_D_property(F, p.s, p.q)
        rep.append(Check(f"D({p.s},{p.q})", ok, data={"violation": bad} if bad else {}))
    elif p.kind == "EK_TAU":
        nu, _ = matching_number(F)
        rep.append(compare("nu = s", nu, p.s, "=="))
        if F.table[0]:
            rep.append(Check("tau > s", False, note="the empty set is a member"))
        else:
            tau, cov = covering_number(F)
            rep.append(compare("tau > s", tau, p.s, ">", data={"cover": cov.cover}))
    else:
        nu, wit = matching_number(F)
        rep.append(compare("nu < s", nu, p.s, "<", data={"matching": wit.sets}))
    if value is not None:
        rep.append(compare("size", len(F), value, "=="))
    else:
        rep.append(Check("size", True, note="no reference value", data={"size": len(F)}))
    return rep


def check_structure(F, s, m, l):
    """Level structure of a (near-)optimal family on n = sm+s-l.

    1. the members of size at most m contain no l pairwise disjoint sets;
    2. every m-element member meets [l-1];
    3. every (m-i)-element member, i <= m-1, has at least i+1 elements in [l-1].
    Violations are reported, never raised.
    """
    n = F.n
    if n != s * m + s - l:
        raise ValueError(f"need n = sm+s-l = {s * m + s - l}")
    head = (1 << (l - 1)) - 1
    members = F.members()
    sizes = popcounts(n)[members]
    low = SetFamily.from_masks(n, members[sizes <= m])
    nu, wit = matching_number(low)
    rep = Report(f"structure s={s} m={m} l={l}")
    rep.append(compare("nu(levels 0..m) <= l-1", nu, l - 1, "<=", data={"matching": wit.sets}))
    top = [int(a) for a in members[sizes == m]]
    stray = [a for a in top if not a & head]
    rep.append(Check("level m meets [l-1]", not stray,
                     data={"outside": [list(elements_of(a)) for a in stray[:5]]} if stray else {}))
    weak = []
    for i in range(1, m):
        for a in members[sizes == m - i]:
            if (int(a) & head).bit_count() < i + 1:
                weak.append((i, int(a)))
    rep.append(Check("level m-i has >= i+1 elements in [l-1]", not weak,
                     data={"weak": [[i, list(elements_of(a))] for i, a in weak[:5]]} if weak else {}))
    return rep


def deficiency_check(F, s, m, nu=None):
    """Number of missing sets >= C(n-1, m) + sum_{r<m} C(n, r) on n = sm+s-2."""
    n = s * m + s - 2
    if F.n != n:
        raise ValueError(f"need n = sm+s-2 = {n}")
    if nu is None:
        nu = matching_number(F)[0]
    c = compare("missing sets >= target", (1 << n) - len(F), deficiency_target(s, m), ">=")
    if nu >= s:
        c.applicable, c.note = False, "nu(F) >= s"
    return Report("deficiency", [c])


# -- threshold families -----------------------------------------------------

@dataclass
class ThresholdResult:
    n: int
    s: int
    alpha: tuple
    size: int
    start: str
    evaluations: int

    def to_dict(self):
        from .report import jsonable
        return {"n": self.n, "s": self.s, "alpha": jsonable(self.alpha),
                "size": jsonable(self.size), "start": self.start,
                "evaluations": self.evaluations}


def threshold_starts(n, s):
    """Named starting vectors whose threshold families have nu < s."""
    starts = []
    for m in range(1, n + 1):
        l = s * m + s - n
        if 0 < l <= s:
            starts.append((f"alpha_p(s={s},m={m},l={l})", preset_alpha("p", s=s, m=m, l=l)))
        if s * m - 1 <= n and s * m - 1 >= 1:
            starts.append((f"alpha_w(m={m},s={s})", preset_alpha("w", m=m, s=s, n=n)))
    starts.append(("unit", (Fraction(1),) + (Fraction(0),) * (n - 1)))
    return starts


def threshold_search(n, s, iterations=1000, seed=0):
    """Seeded local search over rational weight vectors with sum < s.

    Every visited vector is nonincreasing with sum below s, so each family
    F(alpha) it scores has nu < s.  Sizes are exact counts.
    """
    import random

    rng = random.Random(seed)
    cache = {}

    def score(a):
        if a not in cache:
            cache[a] = threshold_count(a)
        return cache[a]

    starts = threshold_starts(n, s)
    label, best = max(starts, key=lambda st: score(st[1]))
    best_val = score(best)
    cur, cur_val = best, best_val
    for _ in range(iterations):
        a = list(cur)
        i = rng.randrange(n)
        step = Fraction(rng.choice((1, -1)), rng.randint(2, 12))
        a[i] = max(Fraction(0), a[i] + step)
        if rng.random() < 0.3:
            j = rng.randrange(n)
            a[j] = max(Fraction(0), a[j] - step)
        a = tuple(sorted(a, reverse=True))
        if sum(a) >= s:
            continue
        val = score(a)
        if val >= cur_val:
            cur, cur_val = a, val
            if val > best_val:
                best, best_val, label = a, val, "search"
        elif rng.random() < 0.05:
            cur, cur_val = best, best_val
    return ThresholdResult(n, s, best, best_val, label, len(cache))


__all__ = [
    "Problem", "parse_problem", "SearchSpace", "SolveResult", "solve_exact", "brute_force_oracle",
    "verify_witness", "check_structure", "deficiency_check", "threshold_search", "ThresholdResult",
    "threshold_starts",
]
