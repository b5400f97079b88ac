import itertools

import numpy as np
import pytest

from oracles import lub, subsets
from qtl import bitset
from qtl.errors import EmptyCarrier, ForeignElement, NotALattice, NotAPartialOrder, SizeCapExceeded
from qtl.lattice import build_lattice, coatoms, downset, join_set, meet_set, upset
from qtl.quantale import enumerate_lattices


def diamond():
    return build_lattice(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


def test_chain_from_covers():
    L = build_lattice(["0", "1", "2"], [("0", "1"), ("1", "2")])
    assert L.labels == ("0", "1", "2")
    assert L.bottom == 0 and L.top == 2
    assert L.join(0, 2) == 2 and L.meet(1, 2) == 1


def test_input_order_is_canonicalised():
    L = build_lattice(["1", "b", "0", "a"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
    assert L.labels == ("0", "b", "a", "1")
    assert L.join(1, 2) == 3 and L.meet(1, 2) == 0


def test_full_relation_equals_covers():
    pairs = [(a, b) for a in "0ab1" for b in "0ab1"
             if a == "0" or b == "1" or a == b]
    assert diamond().leq.tolist() == build_lattice(["0", "a", "b", "1"], pairs).leq.tolist()


def test_two_atoms_without_top_rejected():
    with pytest.raises(NotALattice) as err:
        build_lattice(["0", "a", "b"], [("0", "a"), ("0", "b")])
    assert err.value.kind == "join"


def test_bowtie_rejected():
    labels = ["0", "a", "b", "c", "d", "1"]
    pairs = [("0", "a"), ("0", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"),
             ("c", "1"), ("d", "1")]
    with pytest.raises(NotALattice):
        build_lattice(labels, pairs)


def test_cycle_rejected():
    with pytest.raises(NotAPartialOrder):
        build_lattice(["x", "y"], [("x", "y"), ("y", "x")])


def test_empty_and_unknown():
    with pytest.raises(EmptyCarrier):
        build_lattice([], [])
    with pytest.raises(ForeignElement):
        build_lattice(["0"], [("0", "z")])
    with pytest.raises(ForeignElement):
        diamond().check(7)


def test_size_cap(monkeypatch):
    monkeypatch.setenv("QTL_SIZE_CAP", "3")
    chain = [("0", "1"), ("1", "2"), ("2", "3")]
    with pytest.raises(SizeCapExceeded):
        build_lattice(list("0123"), chain)
    assert build_lattice(list("0123"), chain, cap=8).n == 4


def test_singleton():
    L = build_lattice(["*"], [])
    assert L.bottom == L.top == 0 and coatoms(L) == 0


def test_join_set_and_meet_set():
    L = diamond()
    assert join_set(L, []) == L.bottom and meet_set(L, []) == L.top
    assert join_set(L, [1, 2]) == 3 and join_set(L, 0b0110) == 3
    assert meet_set(L, [1, 2]) == 0


def test_covers_and_coatoms():
    L = diamond()
    assert sorted(L.covers) == [(0, 1), (0, 2), (1, 3), (2, 3)]
    assert bitset.to_list(coatoms(L)) == [1, 2]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_lattice_laws_and_lub_oracle(n):
    for L in enumerate_lattices(n):
        idx = range(L.n)
        for x, y in itertools.product(idx, repeat=2):
            assert L.join(x, y) == L.join(y, x)
            assert L.join(x, L.meet(x, y)) == x and L.meet(x, L.join(x, y)) == x
        for S in subsets(idx):
            assert join_set(L, S) == lub(L, S)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_down_and_up_sets(n):
    for L in enumerate_lattices(n):
        for x in range(L.n):
            D, U = downset(L, x), upset(L, x)
            for a, b in itertools.product(bitset.members(D), repeat=2):
                assert D >> L.meet(a, b) & 1
            for a in bitset.members(D):
                assert bitset.is_subset(downset(L, a), D)
            for a in bitset.members(U):
                assert bitset.is_subset(upset(L, a), U)


def test_indices_follow_order():
    for L in enumerate_lattices(5):
        lo, hi = np.nonzero(L.leq)
        assert (lo <= hi).all()


def test_lattice_counts():
    assert [len(list(enumerate_lattices(n))) for n in range(1, 6)] == [1, 1, 1, 2, 5]


def test_bitset_helpers():
    m = bitset.from_indices([0, 3, 5])
    assert bitset.to_list(m) == [0, 3, 5] and bitset.size(m) == 3
    assert bitset.is_subset(0b1001, m) and not bitset.is_subset(0b10, m)
    assert sorted(bitset.submasks(0b101)) == [0, 1, 4, 5]
    assert bitset.full(3) == 7
