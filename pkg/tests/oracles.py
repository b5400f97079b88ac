"""Slow, independent reference implementations used only by the tests.

Nothing here touches the kernels or the cached tables: every answer comes
from plain loops over elements, subsets or closed sets.
"""

import itertools


def subsets(items):
    items = list(items)
    for r in range(len(items) + 1):
        yield from itertools.combinations(items, r)


def lub(L, S):
    """Least upper bound by scanning every element."""
    ups = [u for u in range(L.n) if all(L.leq[s, u] for s in S)]
    least = [u for u in ups if all(L.leq[u, v] for v in ups)]
    assert len(least) == 1
    return least[0]


def is_quantale(L, table):
    n = L.n
    m = [[int(v) for v in row] for row in table]
    for x in range(n):
        if m[x][L.top] != x:
            return False
        for y in range(n):
            if m[x][y] != m[y][x]:
                return False
            for z in range(n):
                if m[m[x][y]][z] != m[x][m[y][z]]:
                    return False
    for x in range(n):
        for S in subsets(range(n)):
            if m[x][lub(L, S)] != lub(L, [m[x][s] for s in S]):
                return False
    return True


def ideals_by_definition(Q):
    """Nonempty, downward closed, binary-join closed subsets, as frozensets."""
    L = Q.lattice
    out = []
    for S in subsets(range(Q.n)):
        S = set(S)
        if not S:
            continue
        if any(L.leq[y, x] and y not in S for x in S for y in range(Q.n)):
            continue
        if any(int(L.join_table[x, y]) not in S for x in S for y in S):
            continue
        out.append(frozenset(S))
    return out


def closed_sets_from_subbasis(size, subbasis):
    """Intersections of finite unions of subbasic sets, as frozensets."""
    sets = [frozenset(s) for s in subbasis]
    unions = {frozenset()}
    for s in sets:
        unions |= {u | s for u in unions}
    closed = {frozenset(range(size))}
    changed = True
    while changed:
        changed = False
        for a in list(closed):
            for u in unions:
                c = a & u
                if c not in closed:
                    closed.add(c)
                    changed = True
    return closed


def closure_of(closed, A):
    best = None
    for C in closed:
        if set(A) <= C and (best is None or len(C) < len(best)):
            best = C
    return best


def is_irreducible(closed, C):
    if not C:
        return False
    parts = [D for D in closed if D < C]
    return not any(D | E == C for D in parts for E in parts)


def is_sober(size, closed):
    cl = [closure_of(closed, [q]) for q in range(size)]
    for C in closed:
        if is_irreducible(closed, C) and cl.count(C) != 1:
            return False
    return True


def is_connected(size, closed):
    full = frozenset(range(size))
    return not any(C and C != full and (full - C) in closed for C in closed)


def mask_to_set(mask):
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)
