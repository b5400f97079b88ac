"""Commutative unital quantales on finite lattices.

A quantale here is a lattice plus an ``n x n`` multiplication table that is
associative, commutative, has top as identity and distributes over every
join (including the empty one).  Built-in generator families and an
exhaustive small-quantale enumerator live here too.
"""

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import accel, bitset
from ._config import SUBSET_DISTRIBUTIVITY_MAX, carrier_cap, enum_cap
from .errors import AxiomViolation, ForeignElement, InputError, SizeCapExceeded
from .lattice import Lattice, _bound_table, build_lattice, lattice_from_matrix


@dataclass(frozen=True, eq=False)
class Quantale:
    lattice: Lattice
    mul_table: np.ndarray
    name: str = ""
    # per-element metadata (e.g. the divisor behind a Z_n element)
    values: tuple = field(default=None)

    @property
    def n(self):
        return self.lattice.n

    def __len__(self):
        return self.lattice.n

    @property
    def labels(self):
        return self.lattice.labels

    @property
    def bottom(self):
        return self.lattice.bottom

    @property
    def top(self):
        return self.lattice.top

    @property
    def leq(self):
        return self.lattice.leq

    def __repr__(self):
        return f"Quantale({self.name or '?'}, n={self.n})"

    def mul(self, x, y):
        return int(self.mul_table[self.lattice.check(x), self.lattice.check(y)])

    @cached_property
    def power_orbits(self):
        """For each y, the mask of all values y^k, k >= 1 (powers eventually cycle)."""
        out = []
        for y in range(self.n):
            seen, cur = 0, y
            while not seen >> cur & 1:
                seen |= 1 << cur
                cur = int(self.mul_table[cur, y])
            out.append(seen)
        return tuple(out)

    @cached_property
    def _ideal_cache(self):
        return {}


def mul(Q, x, y):
    return Q.mul(x, y)


def power(Q, x, n):
    """``x & x & ... & x`` with ``n`` factors.  ``n = 0`` is rejected."""
    if n < 1:
        raise ValueError("power is defined for n >= 1 only")
    Q.lattice.check(x)
    acc = x
    for _ in range(n - 1):
        acc = int(Q.mul_table[acc, x])
    return acc


def idempotents(Q):
    return bitset.from_indices(e for e in range(Q.n) if Q.mul_table[e, e] == e)


def nontrivial_idempotents(Q):
    return idempotents(Q) & ~(1 << Q.bottom) & ~(1 << Q.top)


def check_axioms(L, table):
    """Return ``None`` or the first ``AxiomViolation`` for ``table`` on ``L``."""
    exhaustive = L.n <= SUBSET_DISTRIBUTIVITY_MAX
    code, a, b, c = accel.axiom_check(table, L.join_table, L.top, L.bottom, exhaustive)
    if code == accel.OK:
        return None
    name = accel.AXIOM_NAMES[code]
    if code == accel.TOP_IDENTITY:
        witness = (a, L.top)
    elif code == accel.COMMUTATIVITY:
        witness = (a, b)
    elif code == accel.DISTRIBUTIVITY and b == -1:
        # x & (empty join) must be bottom
        witness = (a, L.bottom)
    elif code == accel.DISTRIBUTIVITY and b == -2:
        witness = (a, *bitset.members(c))
    else:
        witness = (a, b, c)
    return AxiomViolation(name, witness, L.labels)


def build_quantale(L, table, name="", values=None):
    """Validate ``table`` against the four quantale axioms and wrap it.

    Distributivity is checked over every subset of the carrier for carriers
    up to 16 elements, over pairs plus the empty join beyond that.
    """
    table = np.array(table, dtype=np.int64)
    if table.shape != (L.n, L.n):
        raise InputError(f"multiplication table must be {L.n}x{L.n}, got {table.shape}")
    if table.size and (table.min() < 0 or table.max() >= L.n):
        raise ForeignElement("multiplication table entry out of range")
    err = check_axioms(L, table)
    if err is not None:
        raise err
    table.setflags(write=False)
    return Quantale(L, table, name, values)


# ---------------------------------------------------------------- generators

def _cap_check(n):
    cap = carrier_cap()
    if n > cap:
        raise SizeCapExceeded(f"{n} elements exceed the carrier cap {cap}")


def gen_chain(n):
    """Chain ``0 < 1 < ... < n-1`` with multiplication = min."""
    if n < 1:
        raise ValueError("chain needs n >= 1")
    _cap_check(n)
    labels = [str(i) for i in range(n)]
    L = build_lattice(labels, [(labels[i], labels[i + 1]) for i in range(n - 1)])
    return build_quantale(L, L.meet_table, name=f"chain{n}")


def _subset_label(mask):
    return "0" if mask == 0 else "".join(chr(ord("a") + i) for i in bitset.members(mask))


def gen_powerset(k):
    """Subsets of a k-set under inclusion, multiplication = intersection."""
    if k < 0:
        raise ValueError("powerset needs k >= 0")
    _cap_check(1 << k)
    masks = range(1 << k)
    labels = [_subset_label(m) for m in masks]
    pairs = [(labels[m], labels[m | (1 << i)]) for m in masks for i in range(k) if not m >> i & 1]
    L = build_lattice(labels, pairs)
    return build_quantale(L, L.meet_table, name=f"powerset{k}")


def gen_zn(n):
    """Ideals of the ring Z_n: element ``d`` is the ideal dZ_n for d | n.

    ``d <= e`` iff ``e | d``; join is gcd, meet is lcm, ``d & e = gcd(de, n)``.
    """
    if n < 2:
        raise ValueError("Z_n needs n >= 2")
    divisors = sorted((d for d in range(1, n + 1) if n % d == 0), reverse=True)
    _cap_check(len(divisors))
    pairs = [(str(d), str(e)) for d in divisors for e in divisors if d % e == 0]
    L = build_lattice([str(d) for d in divisors], pairs)
    values = tuple(int(lab) for lab in L.labels)
    pos = {d: i for i, d in enumerate(values)}
    table = [[pos[math.gcd(d * e, n)] for e in values] for d in values]
    return build_quantale(L, table, name=f"z{n}", values=values)


GENERATORS = {"chain": gen_chain, "powerset": gen_powerset, "zn": gen_zn}


def from_generator_spec(spec):
    """Parse ``gen:<family>:<int>`` (e.g. ``gen:zn:12``)."""
    parts = spec.split(":")
    if len(parts) != 3 or parts[0] != "gen" or parts[1] not in GENERATORS:
        raise InputError(f"bad generator spec {spec!r}; expected gen:chain|powerset|zn:<int>")
    try:
        arg = int(parts[2])
    except ValueError:
        raise InputError(f"bad generator argument in {spec!r}") from None
    try:
        return GENERATORS[parts[1]](arg)
    except ValueError as exc:
        raise InputError(str(exc)) from None


# ---------------------------------------------------------------- JSON

def to_dict(Q):
    return {
        "name": Q.name,
        "elements": list(Q.labels),
        "leq": [list(p) for p in Q.lattice.covers],
        "mul": Q.mul_table.tolist(),
    }


def to_json(Q):
    return json.dumps(to_dict(Q))


def from_dict(data):
    """Parse the quantale JSON object; indices refer to the ``elements`` order."""
    try:
        labels = [str(x) for x in data["elements"]]
        pairs = [(int(a), int(b)) for a, b in data["leq"]]
        table = [[int(v) for v in row] for row in data["mul"]]
        name = str(data.get("name", ""))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed quantale object: {exc}") from None
    n = len(labels)
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise ForeignElement(f"leq pair ({a}, {b}) out of range")
    if len(table) != n or any(len(row) != n for row in table):
        raise InputError(f"mul must be a {n}x{n} table")
    L = build_lattice(labels, [(labels[a], labels[b]) for a, b in pairs])
    # re-index from input order to the lattice's canonical order
    perm = [labels.index(lab) for lab in L.labels]
    inv = {old: new for new, old in enumerate(perm)}
    canon = np.empty((n, n), dtype=np.int64)
    for i, old_i in enumerate(perm):
        for j, old_j in enumerate(perm):
            v = table[old_i][old_j]
            if not 0 <= v < n:
                raise ForeignElement(f"mul entry {v} out of range")
            canon[i, j] = inv[v]
    return build_quantale(L, canon, name=name)


def from_json(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InputError("quantale JSON must be an object")
    return from_dict(data)


def load(path_or_spec):
    """Load a quantale from a JSON file or a ``gen:...`` spec."""
    if str(path_or_spec).startswith("gen:"):
        return from_generator_spec(str(path_or_spec))
    try:
        with open(path_or_spec, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path_or_spec}: {exc}") from None
    return from_json(text)


# ---------------------------------------------------------------- enumeration

def _middle_labels(n):
    if n == 1:
        return ["0"]
    return ["0"] + [chr(ord("a") + i) for i in range(n - 2)] + ["1"]


def enumerate_lattices(n):
    """One representative per isomorphism class of ``n``-element lattices."""
    if n < 1:
        return
    labels = _middle_labels(n)
    if n == 1:
        yield lattice_from_matrix(labels, np.ones((1, 1), dtype=bool))
        return
    mid = list(range(1, n - 1))
    slots = [(i, j) for i in mid for j in mid if i < j]
    perms = [(0, *p, n - 1) for p in itertools.permutations(mid)]
    seen = set()
    for bits in range(1 << len(slots)):
        rel = np.eye(n, dtype=bool)
        rel[0, :] = True
        rel[:, n - 1] = True
        for s, (i, j) in enumerate(slots):
            if bits >> s & 1:
                rel[i, j] = True
        closed = rel.copy()
        for k in range(n):
            closed |= closed[:, k:k + 1] & closed[k:k + 1, :]
        if not np.array_equal(closed, rel):
            continue  # enumerate each closed order exactly once
        if _bound_table(rel, True)[0] is None or _bound_table(rel, False)[0] is None:
            continue
        key = min(rel[np.ix_(p, p)].tobytes() for p in perms)
        if key in seen:
            continue
        seen.add(key)
        yield lattice_from_matrix(labels, rel)


def automorphisms(L):
    """All order automorphisms of ``L`` as index tuples."""
    n = L.n
    out = []
    for p in itertools.permutations(range(n)):
        p = np.array(p)
        if np.array_equal(L.leq[np.ix_(p, p)], L.leq):
            out.append(tuple(int(v) for v in p))
    return out


def canonical_table(table, auts):
    """Lexicographically least relabelling of ``table`` under ``auts``."""
    best = None
    for p in auts:
        p = np.asarray(p)
        relabeled = np.empty_like(table)
        # p maps old index -> new index
        relabeled[np.ix_(p, p)] = p[table]
        key = relabeled.tobytes()
        if best is None or key < best[0]:
            best = (key, relabeled)
    return best[1]


def _free_slots(L, mode):
    n = L.n
    if mode == "all":
        return [(i, j) for i in range(n) for j in range(n)], None
    if mode == "commutative":
        return [(i, j) for i in range(n) for j in range(i, n)], None
    if mode != "pruned":
        raise ValueError(f"unknown table mode {mode!r}")
    # forced: x & top = x, x & bottom = bottom, and x & y <= x ^ y
    mid = [x for x in range(n) if x not in (L.bottom, L.top)]
    slots = [(i, j) for i in mid for j in mid if i <= j]
    choices = [np.flatnonzero(L.leq[:, L.meet_table[i, j]]) for i, j in slots]
    return slots, choices


def candidate_tables(L, mode="pruned", chunk=1 << 16):
    """Yield stacks of candidate tables, shape (k, n, n).

    ``pruned`` fixes the entries forced by the axioms and bounds the rest by
    the meet; ``commutative`` only imposes symmetry; ``all`` is every table.
    """
    n = L.n
    slots, choices = _free_slots(L, mode)
    if choices is None:
        choices = [np.arange(n)] * len(slots)
    base = np.zeros((n, n), dtype=np.int64)
    if mode == "pruned":
        for x in range(n):
            base[x, L.top] = base[L.top, x] = x
            base[x, L.bottom] = base[L.bottom, x] = L.bottom
    radices = [len(c) for c in choices]
    total = int(np.prod(radices, dtype=object)) if radices else 1
    for start in range(0, total, chunk):
        codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
        tables = np.broadcast_to(base, (len(codes), n, n)).copy()
        rest = codes.copy()
        for (i, j), ch, r in zip(slots, choices, radices):
            vals = ch[rest % r]
            rest //= r
            tables[:, i, j] = vals
            if mode != "all":
                tables[:, j, i] = vals
        yield tables


def quantales_on(L, mode="pruned", canonical=True):
    """All quantale structures on ``L`` (deduplicated up to automorphism)."""
    auts = automorphisms(L) if canonical else None
    seen = set()
    for tables in candidate_tables(L, mode):
        ok = accel.batch_axioms(tables, L.join_table, L.top, L.bottom)
        for table in tables[ok]:
            if canonical:
                table = canonical_table(table, auts)
                key = table.tobytes()
                if key in seen:
                    continue
                seen.add(key)
            yield table


def enumerate_all_quantales(max_lattice_size, canonical=True, cap=None):
    """Every quantale whose lattice has at most ``max_lattice_size`` elements."""
    cap = enum_cap() if cap is None else cap
    if max_lattice_size > cap:
        raise SizeCapExceeded(f"exhaustive enumeration capped at {cap} elements")
    for n in range(1, max_lattice_size + 1):
        for li, L in enumerate(enumerate_lattices(n)):
            for k, table in enumerate(quantales_on(L, canonical=canonical)):
                yield build_quantale(L, table, name=f"q{n}.{li}.{k}")
