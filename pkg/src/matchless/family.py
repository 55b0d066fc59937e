"""Subsets of [n] as bitmasks and dense set families over 2^[n].

Elements are 1-based at every public boundary: element ``i`` lives in bit
``i - 1`` of a mask.  A :class:`SetFamily` stores one boolean per subset of
``[n]`` so membership is a single array lookup.
"""

from functools import lru_cache
from math import comb

import numpy as np

MAX_N = 24


def mask_of(elements):
    """Bitmask of an iterable of 1-based elements."""
    m = 0
    for e in elements:
        if e < 1:
            raise ValueError(f"elements are 1-based, got {e}")
        m |= 1 << (e - 1)
    return m


def elements_of(mask):
    """Sorted tuple of the 1-based elements of ``mask``."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def interval(a, b):
    """Mask of the integer interval [a, b] (empty when b < a)."""
    if b < a:
        return 0
    return ((1 << (b - a + 1)) - 1) << (a - 1)


def check_mask(mask, n):
    if mask < 0 or mask >> n:
        raise ValueError(f"mask {mask:#x} has bits outside [{n}]")
    return mask


@lru_cache(maxsize=None)
def _indices(n):
    idx = np.arange(1 << n, dtype=np.int64)
    idx.flags.writeable = False
    return idx


@lru_cache(maxsize=None)
def popcounts(n):
    """Read-only array of popcounts for every mask in 2^[n]."""
    idx = _indices(n)
    pc = np.zeros(1 << n, dtype=np.int8)
    for i in range(n):
        pc += ((idx >> i) & 1).astype(np.int8)
    pc.flags.writeable = False
    return pc


def _split(table, i):
    # views (bit i clear, bit i set), paired entrywise
    v = table.reshape(-1, 2, 1 << i)
    return v[:, 0, :], v[:, 1, :]


def _as_mask(subset, n):
    if isinstance(subset, (int, np.integer)):
        return check_mask(int(subset), n)
    return check_mask(mask_of(subset), n)


class SetFamily:
    """An immutable family of subsets of ``[n]``.

    ``SetFamily.from_sets(3, [{1}, {1, 2}])`` builds a family from 1-based
    sets; ``from_masks`` takes bitmasks.  ``len(F)`` is the number of
    members and iteration yields member masks in increasing order.
    """

    __slots__ = ("n", "_table", "_levels", "_hash")

    def __init__(self, n, table):
        if not 0 <= n <= MAX_N:
            raise ValueError(f"ground set size must be in [0, {MAX_N}], got {n}")
        table = np.array(table, dtype=bool, copy=True)
        if table.shape != (1 << n,):
            raise ValueError(f"membership table must have length 2^{n}")
        table.flags.writeable = False
        self.n = n
        self._table = table
        self._levels = None
        self._hash = None

    @classmethod
    def empty(cls, n):
        return cls(n, np.zeros(1 << n, dtype=bool))

    @classmethod
    def full(cls, n):
        return cls(n, np.ones(1 << n, dtype=bool))

    @classmethod
    def from_masks(cls, n, masks):
        table = np.zeros(1 << n, dtype=bool)
        for m in masks:
            table[check_mask(int(m), n)] = True
        return cls(n, table)

    @classmethod
    def from_sets(cls, n, sets):
        return cls.from_masks(n, (mask_of(s) for s in sets))

    @classmethod
    def from_bits(cls, n, bits):
        """Family whose membership table is the binary expansion of ``bits``."""
        N = 1 << n
        if bits >> N:
            raise ValueError("bits beyond 2^n")
        raw = np.frombuffer(bits.to_bytes((N + 7) // 8, "little"), dtype=np.uint8)
        table = np.unpackbits(raw, bitorder="little")[:N].astype(bool)
        return cls(n, table)

    @classmethod
    def uniform(cls, n, k):
        """The complete k-uniform family ([n] choose k)."""
        return cls(n, popcounts(n) == k)

    @property
    def table(self):
        return self._table

    def to_bits(self):
        packed = np.packbits(self._table, bitorder="little")
        return int.from_bytes(packed.tobytes(), "little")

    def members(self):
        return np.flatnonzero(self._table)

    def sets(self):
        return [elements_of(int(m)) for m in self.members()]

    def __len__(self):
        return int(self._table.sum())

    def __iter__(self):
        return (int(m) for m in self.members())

    def __contains__(self, subset):
        return bool(self._table[_as_mask(subset, self.n)])

    def __eq__(self, other):
        if not isinstance(other, SetFamily):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._table, other._table)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self._table.tobytes()))
        return self._hash

    def _same_ground(self, other):
        if other.n != self.n:
            raise ValueError("families live on different ground sets")

    def __or__(self, other):
        self._same_ground(other)
        return SetFamily(self.n, self._table | other._table)

    def __and__(self, other):
        self._same_ground(other)
        return SetFamily(self.n, self._table & other._table)

    def __sub__(self, other):
        self._same_ground(other)
        return SetFamily(self.n, self._table & ~other._table)

    def __le__(self, other):
        self._same_ground(other)
        return not np.any(self._table & ~other._table)

    @property
    def level_counts(self):
        """Number of members of each size 0..n."""
        if self._levels is None:
            pc = popcounts(self.n)[self._table]
            self._levels = tuple(int(c) for c in np.bincount(pc, minlength=self.n + 1))
        return self._levels

    def level(self, k):
        """Members of size exactly ``k`` as a new family."""
        return SetFamily(self.n, self._table & (popcounts(self.n) == k))

    def is_uniform(self, k=None):
        sizes = [q for q, c in enumerate(self.level_counts) if c]
        if k is None:
            return len(sizes) <= 1
        return not sizes or sizes == [k]

    def __repr__(self):
        if len(self) <= 8:
            body = ", ".join("{" + ",".join(map(str, s)) + "}" for s in self.sets())
            return f"SetFamily(n={self.n}, [{body}])"
        return f"SetFamily(n={self.n}, |F|={len(self)})"


def complement_family(F):
    """The family 2^[n] - F."""
    return SetFamily(F.n, ~F.table)


def level_profile(F):
    """y[q] = number of q-subsets of [n] missing from F, for q = 0..n."""
    return tuple(comb(F.n, q) - c for q, c in enumerate(F.level_counts))


def _upward(table, n):
    t = np.array(table, copy=True)
    for i in range(n):
        lo, hi = _split(t, i)
        hi |= lo
    return t


def upward_closure(F):
    """Smallest upward-closed family containing F."""
    return SetFamily(F.n, _upward(F.table, F.n))


def is_upward_closed(F):
    return np.array_equal(_upward(F.table, F.n), F.table)


def minimal_members(F):
    """Inclusion-minimal members of F, as a family."""
    up = _upward(F.table, F.n)
    strict = np.zeros_like(up)
    for i in range(F.n):
        s_lo, s_hi = _split(strict, i)
        u_lo, _ = _split(up, i)
        s_hi |= u_lo
    return SetFamily(F.n, F.table & ~strict)


def _check_pair(i, j, n):
    if not (1 <= i < j <= n):
        raise ValueError(f"shift needs 1 <= i < j <= n, got i={i}, j={j}, n={n}")


def _shift_table(table, n, i, j):
    bi, bj = 1 << (i - 1), 1 << (j - 1)
    idx = _indices(n)
    src = idx[((idx & bj) != 0) & ((idx & bi) == 0) & table]
    if src.size == 0:
        return table, False
    tgt = src ^ (bi | bj)
    move = ~table[tgt]
    if not move.any():
        return table, False
    out = table.copy()
    out[src[move]] = False
    out[tgt[move]] = True
    return out, True


def shift(F, i, j):
    """The (i, j)-shift S_ij(F): replace j by i in members where that is new."""
    _check_pair(i, j, F.n)
    table, _ = _shift_table(F.table, F.n, i, j)
    return SetFamily(F.n, table)


def is_shifted(F):
    # every left shift factors into adjacent moves x -> x-1, so S_{i,i+1} suffice
    n = F.n
    return not any(_shift_table(F.table, n, i, i + 1)[1] for i in range(1, n))


def full_shift(F):
    """Apply (i, j)-shifts in lexicographic order of (i, j) until nothing moves.

    The fixpoint depends on the sweep order; only shiftedness and the
    cardinality of the result are guaranteed.
    """
    n = F.n
    table = F.table
    changed = True
    while changed:
        changed = False
        for i in range(1, n):
            for j in range(i + 1, n + 1):
                table, moved = _shift_table(table, n, i, j)
                changed |= moved
    return SetFamily(n, table)


def shift_potential(F):
    """Sum over members of the sum of their elements; strictly drops under a moving shift."""
    idx = _indices(F.n)
    weights = np.zeros(1 << F.n, dtype=np.int64)
    for i in range(F.n):
        weights += ((idx >> i) & 1) * (i + 1)
    return int(weights[F.table].sum())


def shadow(H):
    """Immediate shadow: all sets obtained by deleting one element of a member."""
    out = np.zeros(1 << H.n, dtype=bool)
    for i in range(H.n):
        o_lo, _ = _split(out, i)
        _, h_hi = _split(H.table, i)
        o_lo |= h_hi
    return SetFamily(H.n, out)


def link(G, Q, p):
    """G(Q, p) = {G - Q : G in G, G meets [1, p] exactly in Q}.

    The result keeps the original labels, so its members lie in [p+1, n].
    """
    Qm = _as_mask(Q, G.n)
    head = interval(1, p)
    if not 0 <= p <= G.n:
        raise ValueError(f"p must lie in [0, {G.n}]")
    if Qm & ~head:
        raise ValueError("Q must be a subset of [1, p]")
    idx = _indices(G.n)
    sel = idx[G.table & ((idx & head) == Qm)]
    out = np.zeros(1 << G.n, dtype=bool)
    out[sel ^ Qm] = True
    return SetFamily(G.n, out)


def split_on_element(F, x=None):
    """Split F on its last element: (F(n), F(n-bar)) as families on [n-1].

    F(n) = {A - {n} : n in A in F}, F(n-bar) = {A in F : n not in A}.
    Relabel first to split on another element.
    """
    n = F.n
    if x is None:
        x = n
    if x != n:
        raise ValueError("split_on_element only splits on the last element")
    if n == 0:
        raise ValueError("cannot split the empty ground set")
    half = 1 << (n - 1)
    return SetFamily(n - 1, F.table[half:]), SetFamily(n - 1, F.table[:half])


def join_on_element(with_n, without_n):
    """Inverse of :func:`split_on_element`."""
    if with_n.n != without_n.n:
        raise ValueError("halves must share a ground set")
    return SetFamily(with_n.n + 1, np.concatenate([without_n.table, with_n.table]))


def permute(F, sigma):
    """Image of F under the element map i -> sigma[i-1] (1-based)."""
    n = F.n
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError("sigma must be a permutation of [n]")
    idx = _indices(n)
    image = np.zeros(1 << n, dtype=np.int64)
    for i, t in enumerate(sigma):
        image |= ((idx >> i) & 1) << (t - 1)
    out = np.zeros(1 << n, dtype=bool)
    out[image[F.table]] = True
    return SetFamily(n, out)


def transposition_fixes(F, i, j):
    """True when swapping elements i and j maps F onto itself."""
    if i == j:
        return True
    members = F.members()
    a, b = i - 1, j - 1
    x = ((members >> a) ^ (members >> b)) & 1
    # the swap is a bijection, so mapping members into F is enough
    return bool(F.table[members ^ ((x << a) | (x << b))].all())


def twin_classes(F):
    """Partition [n] into classes of elements interchangeable in F.

    Swapping two elements of one class leaves F unchanged, so membership of
    a set depends only on how many elements it takes from each class.
    """
    n = F.n
    idx = _indices(n)
    members = idx[F.table]
    degree = [int(((members >> i) & 1).sum()) for i in range(n)]
    classes = []
    for e in range(1, n + 1):
        for cls in classes:
            rep = cls[0]
            if degree[rep - 1] == degree[e - 1] and transposition_fixes(F, rep, e):
                cls.append(e)
                break
        else:
            classes.append([e])
    return [tuple(c) for c in classes]


def all_upsets(n):
    """Every upward-closed family on [n] as a membership bitset (n <= 5).

    An up-set splits into the members without n and the members with n
    removed; both are up-sets of 2^[n-1] and the first lies inside the second.
    """
    if n > 5:
        raise ValueError("up-set enumeration is limited to n <= 5")
    return _upsets(n)


@lru_cache(maxsize=None)
def _upsets(n):
    if n == 0:
        return (0, 1)
    lower = _upsets(n - 1)
    half = 1 << (n - 1)
    return tuple(f0 | (f1 << half) for f1 in lower for f0 in lower if not f0 & ~f1)


# -- text formats -----------------------------------------------------------

def dumps_family(F, fmt="sets"):
    """Serialize F: header ``n=<int>`` then one member per line.

    ``fmt="sets"`` writes comma-separated 1-based elements (``{}`` for the
    empty set); ``fmt="hex"`` writes ``0x``-prefixed lowercase masks.
    """
    lines = [f"n={F.n}"]
    for m in F:
        if fmt == "hex":
            lines.append(f"{m:#x}")
        elif fmt == "sets":
            lines.append(",".join(map(str, elements_of(m))) if m else "{}")
        else:
            raise ValueError(f"unknown family format {fmt!r}")
    return "\n".join(lines) + "\n"


def loads_family(text):
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("n="):
        raise ValueError("family text must start with a line 'n=<int>'")
    n = int(lines[0][2:])
    masks = []
    for ln in lines[1:]:
        if ln.startswith("0x"):
            masks.append(int(ln, 16))
        elif ln == "{}":
            masks.append(0)
        else:
            masks.append(mask_of(int(tok) for tok in ln.strip("{}").split(",")))
    for m in masks:
        if m >> n:
            raise ValueError(f"member {elements_of(m)} not inside [{n}]")
    return SetFamily.from_masks(n, masks)


def read_family(path):
    with open(path) as fh:
        return loads_family(fh.read())


def write_family(F, path, fmt="sets"):
    with open(path, "w") as fh:
        fh.write(dumps_family(F, fmt))
