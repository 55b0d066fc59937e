"""Slow reference computations on plain frozensets, sharing no code with the package."""

from fractions import Fraction
from itertools import combinations, permutations


def subsets(n):
    ground = range(1, n + 1)
    return [frozenset(c) for k in range(n + 1) for c in combinations(ground, k)]


def as_sets(F):
    return {frozenset(i + 1 for i in range(F.n) if a >> i & 1) for a in F.members()}


def nu(sets):
    sets = sorted(sets, key=len)
    best = 0

    def grow(i, used, count):
        nonlocal best
        best = max(best, count)
        for j in range(i, len(sets)):
            if not sets[j] & used:
                grow(j + 1, used | sets[j], count + 1)

    grow(0, frozenset(), 0)
    return best


def tau(sets, n):
    for k in range(n + 1):
        for T in combinations(range(1, n + 1), k):
            T = set(T)
            if all(S & T for S in sets):
                return k
    return None


def has_disjoint_small(sets, s, q):
    """s distinct pairwise disjoint members whose union has at most q elements."""
    sets = list(sets)

    def grow(i, used, left):
        if left == 0:
            return len(used) <= q
        for j in range(i, len(sets)):
            if not sets[j] & used and grow(j + 1, used | sets[j], left - 1):
                return True
        return False

    return grow(0, frozenset(), s)


def shift(sets, i, j):
    out = set()
    for S in sets:
        if j in S and i not in S and (S - {j}) | {i} not in sets:
            out.add((S - {j}) | {i})
        else:
            out.add(S)
    return out


def is_shifted(sets, n):
    return all(shift(sets, i, j) == set(sets) for i in range(1, n + 1) for j in range(i + 1, n + 1))


def shadow(sets):
    return {S - {x} for S in sets for x in S}


def is_up(sets, n):
    return all(S | {x} in sets for S in sets for x in range(1, n + 1))


def disjoint_tuples(n, parts):
    """Every ordered tuple of pairwise disjoint sets with the given sizes."""
    out = []

    def grow(free, k, acc):
        if k == len(parts):
            out.append(tuple(acc))
            return
        for c in combinations(sorted(free), parts[k]):
            grow(free - set(c), k + 1, acc + [frozenset(c)])

    grow(set(range(1, n + 1)), 0, [])
    return out


def class_densities(sets, n, parts):
    tuples = disjoint_tuples(n, parts)
    counts = [0] * (len(parts) + 1)
    for T in tuples:
        counts[sum(1 for A in T if A not in sets)] += 1
    return tuple(Fraction(c, len(tuples)) for c in counts)


def window_x(sets, sigma, s, m):
    """x_0..x_s by walking the circle: arc D_i = sigma(i..i+m-1), windows D_j, D_{j+m}, ..."""
    n = len(sigma)
    arcs = [frozenset(sigma[(i + t) % n] for t in range(m)) for i in range(n)]
    x = [0] * (s + 1)
    for j in range(n):
        outside = sum(1 for c in range(s) if arcs[(j + c * m) % n] not in sets)
        x[outside] += 1
    return tuple(x)


def threshold(alpha):
    n = len(alpha)
    return {S for S in subsets(n) if sum((Fraction(alpha[i - 1]) for i in S), Fraction(0)) >= 1}


def incidence(s, m):
    """Number of arrangements in which each ordered window tuple occurs, by brute force."""
    n = s * m + s - 2
    seen = {}
    for sigma in permutations(range(1, n + 1)):
        x = window_tuples(sigma, s, m)
        for T in x:
            seen[T] = seen.get(T, 0) + 1
    return seen


def window_tuples(sigma, s, m):
    n = len(sigma)
    arcs = [frozenset(sigma[(i + t) % n] for t in range(m)) for i in range(n)]
    return [tuple(arcs[(j + c * m) % n] for c in range(s)) for j in range(n)]
