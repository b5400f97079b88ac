"""numba twins of ``_kernels_numpy``; identical signatures and witnesses."""

import numpy as np
from numba import njit

OK, TOP_IDENTITY, COMMUTATIVITY, ASSOCIATIVITY, DISTRIBUTIVITY = range(5)


@njit(cache=True)
def _axioms(mul, join, top, bottom, exhaustive):
    n = mul.shape[0]
    for x in range(n):
        if mul[x, top] != x:
            return TOP_IDENTITY, x, -1, -1
    for x in range(n):
        for y in range(n):
            if mul[x, y] != mul[y, x]:
                return COMMUTATIVITY, x, y, -1
    for x in range(n):
        for y in range(n):
            xy = mul[x, y]
            for z in range(n):
                if mul[xy, z] != mul[x, mul[y, z]]:
                    return ASSOCIATIVITY, x, y, z
    if exhaustive:
        size = 1 << n
        joins = np.empty(size, dtype=np.int64)
        acc = np.empty(size, dtype=np.int64)
        joins[0] = bottom
        for mask in range(1, size):
            low = mask & -mask
            i = 0
            while (1 << i) != low:
                i += 1
            joins[mask] = join[joins[mask ^ low], i]
        for x in range(n):
            acc[0] = bottom
            if mul[x, bottom] != bottom:
                return DISTRIBUTIVITY, x, -1, -1
            for mask in range(1, size):
                low = mask & -mask
                i = 0
                while (1 << i) != low:
                    i += 1
                acc[mask] = join[acc[mask ^ low], mul[x, i]]
                if mul[x, joins[mask]] != acc[mask]:
                    rest = mask ^ low
                    if rest & (rest - 1) == 0:
                        j = 0
                        while (1 << j) != rest:
                            j += 1
                        return DISTRIBUTIVITY, x, i, j
                    return DISTRIBUTIVITY, x, -2, mask
        return OK, -1, -1, -1
    for x in range(n):
        if mul[x, bottom] != bottom:
            return DISTRIBUTIVITY, x, -1, -1
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if mul[x, join[y, z]] != join[mul[x, y], mul[x, z]]:
                    return DISTRIBUTIVITY, x, y, z
    return OK, -1, -1, -1


def axiom_check(mul, join, top, bottom, exhaustive):
    code, a, b, c = _axioms(mul, join, top, bottom, exhaustive)
    return int(code), int(a), int(b), int(c)


@njit(cache=True)
def _batch(tables, join, top, bottom, out):
    k, n, _ = tables.shape
    for t in range(k):
        mul = tables[t]
        good = True
        for x in range(n):
            if mul[x, top] != x or mul[x, bottom] != bottom:
                good = False
                break
        if good:
            for x in range(n):
                for y in range(x + 1, n):
                    if mul[x, y] != mul[y, x]:
                        good = False
                        break
                if not good:
                    break
        if good:
            for x in range(n):
                for y in range(n):
                    xy = mul[x, y]
                    for z in range(n):
                        if mul[xy, z] != mul[x, mul[y, z]]:
                            good = False
                            break
                        if mul[x, join[y, z]] != join[xy, mul[x, z]]:
                            good = False
                            break
                    if not good:
                        break
                if not good:
                    break
        out[t] = good


def batch_axioms(tables, join, top, bottom):
    out = np.zeros(tables.shape[0], dtype=np.bool_)
    _batch(tables, join, top, bottom, out)
    return out


@njit(cache=True)
def _hkp(meet, leq, point_gens):
    n = meet.shape[0]
    for a in range(n):
        for b in range(n):
            ab = meet[a, b]
            for j in range(point_gens.shape[0]):
                s = point_gens[j]
                if leq[ab, s] and not leq[a, s] and not leq[b, s]:
                    return a, b, j
    return -1, -1, -1


def hkp_failure(meet, leq, point_gens):
    a, b, j = _hkp(meet, leq, point_gens)
    return int(a), int(b), int(j)
