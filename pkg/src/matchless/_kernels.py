# Integer-bitset kernels shared by the invariants and the solver.
#
# A family is a Python int whose bit A is set iff subset mask A is a member.

from functools import lru_cache


@lru_cache(maxsize=1 << 16)
def low_subsets(M):
    """Subsets of M that contain the lowest element of M, smallest first."""
    low = M & -M
    rest = M ^ low
    out = []
    x = rest
    while True:
        out.append(x | low)
        if x == 0:
            break
        x = (x - 1) & rest
    out.sort(key=int.bit_count)
    return tuple(out)


def can_partition(bits, M, k, memo=None):
    """Can the mask M be split into k nonempty blocks that are all members?"""
    if memo is None:
        memo = {}
    return _can(bits, M, k, memo)


def _can(bits, M, k, memo):
    if k == 1:
        return bool((bits >> M) & 1) and M != 0
    if M.bit_count() < k:
        return False
    key = (M, k)
    hit = memo.get(key)
    if hit is not None:
        return hit
    res = False
    for B in low_subsets(M):
        if B != M and (bits >> B) & 1 and _can(bits, M ^ B, k - 1, memo):
            res = True
            break
    memo[key] = res
    return res


def find_partition(bits, M, k):
    """Blocks of a partition of M into k members, or None."""
    memo = {}
    if not _can(bits, M, k, memo):
        return None
    blocks = []
    while k > 1:
        for B in low_subsets(M):
            if B != M and (bits >> B) & 1 and _can(bits, M ^ B, k - 1, memo):
                blocks.append(B)
                M ^= B
                k -= 1
                break
    blocks.append(M)
    return blocks


@lru_cache(maxsize=None)
def boolean_upsets(n):
    """up[A] = int table of all supersets of A in 2^[n]."""
    full = (1 << n) - 1
    up = []
    for A in range(1 << n):
        rest = full & ~A
        t = 0
        x = rest
        while True:
            t |= 1 << (A | x)
            if x == 0:
                break
            x = (x - 1) & rest
        up.append(t)
    return tuple(up)


def dominates(b, a, n):
    """b >= a in the shift order: |b & [i]| >= |a & [i]| for every prefix [i]."""
    ca = cb = 0
    for i in range(n):
        ca += (a >> i) & 1
        cb += (b >> i) & 1
        if cb < ca:
            return False
    return True
