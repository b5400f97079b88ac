"""Finite bounded lattices with precomputed order, join and meet tables."""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import bitset
from ._config import carrier_cap
from .errors import (EmptyCarrier, ForeignElement, NotALattice,
                     NotAPartialOrder, SizeCapExceeded)


@dataclass(frozen=True, eq=False)
class Lattice:
    """Immutable finite lattice on element indices ``0..n-1``.

    Indices follow a fixed topological sort of the order, bottom first, so
    ``leq[x, y]`` implies ``x <= y`` numerically.
    """

    labels: tuple
    leq: np.ndarray
    join_table: np.ndarray
    meet_table: np.ndarray
    bottom: int
    top: int

    @property
    def n(self):
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"Lattice({list(self.labels)})"

    def index(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise ForeignElement(f"unknown element label {label!r}") from None

    def check(self, x):
        if not 0 <= x < self.n:
            raise ForeignElement(f"element index {x} out of range 0..{self.n - 1}")
        return int(x)

    def join(self, x, y):
        return int(self.join_table[x, y])

    def meet(self, x, y):
        return int(self.meet_table[x, y])

    @cached_property
    def down_masks(self):
        return tuple(bitset.from_indices(np.flatnonzero(self.leq[:, x])) for x in range(self.n))

    @cached_property
    def up_masks(self):
        return tuple(bitset.from_indices(np.flatnonzero(self.leq[x, :])) for x in range(self.n))

    @cached_property
    def covers(self):
        """Covering pairs ``(x, y)``: x < y with nothing strictly between."""
        lt = self.leq & ~np.eye(self.n, dtype=bool)
        # x < z < y for some z
        between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
        pairs = np.argwhere(lt & ~between)
        return tuple((int(a), int(b)) for a, b in pairs)

    @property
    def full_mask(self):
        return bitset.full(self.n)


def _as_elements(L, S):
    if isinstance(S, int):
        items = list(bitset.members(S))
    else:
        items = [int(x) for x in S]
    for x in items:
        L.check(x)
    return items


def join_set(L, S):
    """Least upper bound of ``S`` (an iterable of indices or a mask); empty gives bottom."""
    acc = L.bottom
    for x in _as_elements(L, S):
        acc = int(L.join_table[acc, x])
    return acc


def meet_set(L, S):
    acc = L.top
    for x in _as_elements(L, S):
        acc = int(L.meet_table[acc, x])
    return acc


def downset(L, x):
    return L.down_masks[L.check(x)]


def upset(L, x):
    return L.up_masks[L.check(x)]


def coatoms(L):
    """Maximal elements of ``L`` minus top, as a mask."""
    if L.n == 1:
        return 0
    return bitset.from_indices(x for x, y in L.covers if y == L.top)


def _closure(rel):
    rel = rel | np.eye(rel.shape[0], dtype=bool)
    while True:
        step = rel | ((rel.astype(np.int64) @ rel.astype(np.int64)) > 0)
        if np.array_equal(step, rel):
            return rel
        rel = step


def _topological_order(leq):
    n = leq.shape[0]
    strict = leq & ~np.eye(n, dtype=bool)
    indeg = strict.sum(axis=0)
    placed = np.zeros(n, dtype=bool)
    order = []
    for _ in range(n):
        # smallest input index among the currently minimal elements
        ready = np.flatnonzero((indeg == 0) & ~placed)
        x = int(ready[0])
        order.append(x)
        placed[x] = True
        indeg = indeg - strict[x]
    return order


def _bound_table(leq, above):
    # above[x, y, u]: u is an upper bound of x, y (or lower bound, dually)
    n = leq.shape[0]
    order = leq if above else leq.T
    bounds = order[:, None, :] & order[None, :, :]
    # u is least among bounds iff every bound v satisfies u <= v
    not_below = ~order
    least = bounds & ~np.any(bounds[:, :, None, :] & not_below[None, None, :, :], axis=3)
    count = least.sum(axis=2)
    bad = np.argwhere(count != 1)
    if len(bad):
        return None, tuple(int(v) for v in bad[0])
    return least.argmax(axis=2).astype(np.int64), None


def lattice_from_matrix(labels, leq):
    """Validate an order matrix already closed and topologically indexed."""
    n = len(labels)
    join, bad = _bound_table(leq, above=True)
    if join is None:
        raise NotALattice("join", labels[bad[0]], labels[bad[1]])
    meet, bad = _bound_table(leq, above=False)
    if meet is None:
        raise NotALattice("meet", labels[bad[0]], labels[bad[1]])
    bottom = int(meet_all(meet, range(n), n - 1))
    top = int(join_all(join, range(n), 0))
    leq = leq.copy()
    for arr in (leq, join, meet):
        arr.setflags(write=False)
    L = Lattice(tuple(labels), leq, join, meet, bottom, top)
    _check_laws(L)
    return L


def join_all(join, items, start):
    acc = start
    for x in items:
        acc = join[acc, x]
    return acc


def meet_all(meet, items, start):
    acc = start
    for x in items:
        acc = meet[acc, x]
    return acc


def _check_laws(L):
    j, m = L.join_table, L.meet_table
    idx = np.arange(L.n)
    assert np.array_equal(j, j.T) and np.array_equal(m, m.T)
    assert np.array_equal(j[j, :], j[idx[:, None, None], j[None, :, :]])
    assert np.array_equal(m[m, :], m[idx[:, None, None], m[None, :, :]])
    assert np.all(j[idx[:, None], m] == idx[:, None])
    assert np.all(m[idx[:, None], j] == idx[:, None])
    assert L.leq[L.bottom].all() and L.leq[:, L.top].all()


def build_lattice(labels, leq_pairs, cap=None):
    """Build a lattice from labels and an order relation given as label pairs.

    The relation may be covering pairs or the full order; its
    reflexive-transitive closure is taken.  Elements are re-indexed along a
    stable topological sort (ties broken by input position).
    """
    labels = [str(x) for x in labels]
    if not labels:
        raise EmptyCarrier("a lattice needs at least one element")
    if len(set(labels)) != len(labels):
        raise ValueError("element labels must be distinct")
    cap = carrier_cap() if cap is None else cap
    if len(labels) > cap:
        raise SizeCapExceeded(f"{len(labels)} elements exceed the carrier cap {cap}")
    pos = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    rel = np.zeros((n, n), dtype=bool)
    for a, b in leq_pairs:
        a, b = str(a), str(b)
        if a not in pos or b not in pos:
            raise ForeignElement(f"relation mentions unknown element ({a!r}, {b!r})")
        rel[pos[a], pos[b]] = True
    rel = _closure(rel)
    sym = np.argwhere(rel & rel.T & ~np.eye(n, dtype=bool))
    if len(sym):
        a, b = sym[0]
        raise NotAPartialOrder(labels[a], labels[b])
    order = _topological_order(rel)
    leq = rel[np.ix_(order, order)]
    return lattice_from_matrix([labels[i] for i in order], leq)
