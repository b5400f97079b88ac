"""Pure-numpy kernels; reference path and fallback when numba is off.

Every function here has a twin in ``_kernels_numba`` with the same
signature and the same witness order (lexicographic over index tuples).
"""

import numpy as np

OK, TOP_IDENTITY, COMMUTATIVITY, ASSOCIATIVITY, DISTRIBUTIVITY = range(5)


def _first(mask):
    hits = np.argwhere(mask)
    return None if len(hits) == 0 else tuple(int(v) for v in hits[0])


def _subset_joins(join, values, bottom):
    # values: (r, n) -> (r, 2**n) joins of values[:, S] for every mask S
    r, n = values.shape
    acc = np.full((r, 1), bottom, dtype=np.int64)
    for i in range(n):
        acc = np.concatenate([acc, join[acc, values[:, i:i + 1]]], axis=1)
    return acc


def axiom_check(mul, join, top, bottom, exhaustive):
    n = mul.shape[0]
    idx = np.arange(n)
    w = _first(mul[:, top] != idx)
    if w is not None:
        return TOP_IDENTITY, w[0], -1, -1
    w = _first(mul != mul.T)
    if w is not None:
        return COMMUTATIVITY, w[0], w[1], -1
    left = mul[mul, :]                       # (x&y)&z
    right = mul[idx[:, None, None], mul[None, :, :]]  # x&(y&z)
    w = _first(left != right)
    if w is not None:
        return ASSOCIATIVITY, w[0], w[1], w[2]
    if exhaustive:
        lhs = mul[:, _subset_joins(join, idx[None, :], bottom)[0]]
        rhs = _subset_joins(join, mul, bottom)
        w = _first(lhs != rhs)
        if w is not None:
            x, mask = w
            bits = [i for i in range(n) if mask >> i & 1]
            if len(bits) == 0:
                return DISTRIBUTIVITY, x, -1, -1
            if len(bits) == 2:
                return DISTRIBUTIVITY, x, bits[0], bits[1]
            return DISTRIBUTIVITY, x, -2, mask
        return OK, -1, -1, -1
    w = _first(mul[:, bottom] != bottom)
    if w is not None:
        return DISTRIBUTIVITY, w[0], -1, -1
    lhs = mul[:, join]                               # x & (y v z)
    rhs = join[mul[:, :, None], mul[:, None, :]]     # (x&y) v (x&z)
    w = _first(lhs != rhs)
    if w is not None:
        return DISTRIBUTIVITY, w[0], w[1], w[2]
    return OK, -1, -1, -1


def batch_axioms(tables, join, top, bottom):
    """Vectorised axiom check over a stack of tables, shape (k, n, n)."""
    k, n, _ = tables.shape
    idx = np.arange(n)
    ok = np.all(tables[:, :, top] == idx, axis=1)
    ok &= np.all(tables == tables.transpose(0, 2, 1), axis=(1, 2))
    ok &= np.all(tables[:, :, bottom] == bottom, axis=1)
    b = np.arange(k)[:, None, None, None]
    # (x&y)&z versus x&(y&z)
    left = tables[b, tables[:, :, :, None], idx[None, None, None, :]]
    right = tables[b, idx[None, :, None, None], tables[:, None, :, :]]
    ok &= np.all(left == right, axis=(1, 2, 3))
    lhs = tables[:, :, join]
    rhs = join[tables[:, :, :, None], tables[:, :, None, :]]
    ok &= np.all(lhs == rhs, axis=(1, 2, 3))
    return ok


def hkp_failure(meet, leq, point_gens):
    """First (a, b, s) with a^b <= s, a </= s, b </= s, s ranging over points."""
    if len(point_gens) == 0:
        return -1, -1, -1
    below = leq[:, point_gens]              # below[x, j]: x <= point j
    m = meet
    bad = below[m] & ~below[:, None, :] & ~below[None, :, :]
    w = _first(bad)
    if w is None:
        return -1, -1, -1
    return w
