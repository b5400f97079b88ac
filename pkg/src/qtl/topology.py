"""Quantale topology on a spectrum and decision procedures for its properties.

Closed subbasis: for every ideal ``I`` the point set ``I^ = {J in S : I <= J}``
plus the empty set.  Everything here works on point-set bit masks over the
spectrum's points ``0..m-1``.
"""

from dataclasses import dataclass

import numpy as np

from . import accel, bitset
from ._config import (CLOSED_SET_POINT_CAP, KURATOWSKI_EXHAUSTIVE_PAIRS,
                      KURATOWSKI_SAMPLES)
from .errors import (MixedQuantales, NoUnitPair, NotClosed, NotEvaluated,
                     PreconditionViolated)
from .ideals import (all_ideals, ideal_join, ideal_meet,
                     ideal_product, jacobson_radical, maximal_ideals, whole,
                     zero_ideal)


@dataclass(frozen=True)
class SubbasicSet:
    points: int
    witness: object  # the first ideal (element order) whose up-set this is; None for bare empty set


@dataclass(frozen=True, eq=False)
class SubbasisTopology:
    spectrum: object
    size: int
    subbasis: tuple
    point_closure: tuple  # point_closure[q] = mask of cl{q}

    @classmethod
    def from_sets(cls, size, sets, spectrum=None, witnesses=None):
        """Finite space generated by ``sets`` as a closed subbasis."""
        full = bitset.full(size)
        seen = {}
        for i, s in enumerate(sets):
            if s & ~full:
                raise ValueError("subbasic set mentions a point outside the space")
            if s not in seen:
                seen[s] = None if witnesses is None else witnesses[i]
        seen.setdefault(0, None)
        subbasis = tuple(SubbasicSet(s, w) for s, w in seen.items())
        closure = []
        for q in range(size):
            cl = full
            for S in subbasis:
                if S.points >> q & 1:
                    cl &= S.points
            closure.append(cl)
        return cls(spectrum, size, subbasis, tuple(closure))

    @property
    def full_mask(self):
        return bitset.full(self.size)

    def subspace(self, mask):
        """Subspace topology on the points of ``mask`` (re-indexed in order)."""
        pts = bitset.to_list(mask)
        def restrict(s):
            return bitset.from_indices(i for i, p in enumerate(pts) if s >> p & 1)
        return SubbasisTopology.from_sets(len(pts), [restrict(S.points) for S in self.subbasis])


def _up_mask(spec, carrier):
    return bitset.from_indices(i for i, P in enumerate(spec.points)
                               if bitset.is_subset(carrier, P.carrier))


def build_topology(spec):
    Q = spec.quantale
    ideals = all_ideals(Q)
    sets = [_up_mask(spec, I.carrier) for I in ideals]
    return SubbasisTopology.from_sets(len(spec), sets, spectrum=spec, witnesses=list(ideals))


def up_set(spec, X):
    """``X^``: empty for empty ``X``, else the points above the meet of ``X``."""
    X = list(X)
    if not X:
        return 0
    for I in X:
        if I.quantale is not spec.quantale:
            raise MixedQuantales("ideal from a different quantale")
    return _up_mask(spec, ideal_meet(spec.quantale, X).carrier)


def closure(T, A):
    out = 0
    for q in bitset.members(A):
        out |= T.point_closure[q]
    return out


def is_closed(T, C):
    return closure(T, C) == C


# ---------------------------------------------------------------- hull-kernel criteria

def hkp_witness(Q, spec):
    """First ``(I, J, S)`` with ``I ^ J <= S`` but neither ``I <= S`` nor ``J <= S``."""
    if spec.quantale is not Q:
        raise MixedQuantales("spectrum belongs to another quantale")
    gens = np.array([P.generator for P in spec.points], dtype=np.int64)
    L = Q.lattice
    a, b, j = accel.hkp_failure(L.meet_table, L.leq, gens)
    if a < 0:
        return None
    ideals = all_ideals(Q)
    return ideals[a], ideals[b], spec.points[j]


def satisfies_hkp(Q, spec):
    return hkp_witness(Q, spec) is None


@dataclass(frozen=True)
class KuratowskiResult:
    holds: bool
    sampled: bool
    failure: str = ""


def _hull_for(spec, ideals, xmask):
    if xmask == 0:
        return 0
    carrier = bitset.full(spec.quantale.n)
    for i in bitset.members(xmask):
        carrier &= ideals[i].carrier
    return _up_mask(spec, carrier)


def kuratowski_check(spec, seed=0, sampled=False):
    """Test the four closure-operator laws for ``X -> X^`` directly.

    ``X`` and ``Y`` range over subsets of the ideal set.  Exhaustive up to
    4096 pairs, otherwise (or when ``sampled`` is set) a seeded random
    sample, reported as ``sampled``.
    """
    ideals = all_ideals(spec.quantale)
    k = len(ideals)
    point_ideal = {P.generator: i for i, P in enumerate(spec.points)}
    on_points = bitset.from_indices(point_ideal)

    def as_points(xmask):
        return bitset.from_indices(point_ideal[i] for i in bitset.members(xmask))

    def as_ideals(pmask):
        return bitset.from_indices(spec.points[p].generator for p in bitset.members(pmask))

    def hull(xmask):
        return _hull_for(spec, ideals, xmask)

    if _hull_for(spec, ideals, 0) != 0:
        return KuratowskiResult(False, False, "empty set not sent to empty set")
    exhaustive = not sampled and (1 << k) ** 2 <= KURATOWSKI_EXHAUSTIVE_PAIRS
    if exhaustive:
        xs = np.arange(1 << k, dtype=np.int64)
        hulls = [hull(int(x)) for x in xs]
        hull = hulls.__getitem__
        pairs = ((int(x), int(y)) for x in xs for y in xs)
    else:
        rng = np.random.default_rng(seed)
        words = rng.integers(0, 1 << 62, size=(KURATOWSKI_SAMPLES, 2), dtype=np.int64)
        fullk = bitset.full(k)
        xs = [int(w) & fullk for w in words[:, 0]]
        pairs = ((int(a) & fullk, int(b) & fullk) for a, b in words)
    for x in xs:
        x = int(x)
        hx = hull(x)
        if bitset.is_subset(x, on_points) and not bitset.is_subset(as_points(x), hx):
            return KuratowskiResult(False, not exhaustive, f"not extensive at {x:#x}")
        if hull(as_ideals(hx)) != hx:
            return KuratowskiResult(False, not exhaustive, f"not idempotent at {x:#x}")
    for x, y in pairs:
        if hull(x | y) != hull(x) | hull(y):
            return KuratowskiResult(False, not exhaustive, f"not additive at {x:#x}, {y:#x}")
    return KuratowskiResult(True, not exhaustive)


def is_kuratowski_upset(spec, seed=0):
    return kuratowski_check(spec, seed).holds


def is_closed_basis(spec):
    """Is the up-set family a closed basis, containment judged on whole-space hulls?

    The family lives on the space of all ideals and is restricted to the
    spectrum.  Basis condition: for ideals ``I``, ``J`` and every point
    ``p`` outside ``I^ u J^``, some member ``K^`` whose hull in the ideal space
    contains the hulls of ``I`` and ``J`` must omit ``p``.  Subsets ``X``
    collapse to their meet, so single ideals index the family.
    """
    Q = spec.quantale
    ideals = all_ideals(Q)
    # hull of each ideal inside the space of all ideals, as a mask of ideal indices
    space_hull = [bitset.from_indices(j for j, J in enumerate(ideals)
                                      if bitset.is_subset(I.carrier, J.carrier))
                  for I in ideals]
    on_spec = [_up_mask(spec, I.carrier) for I in ideals]
    for a in range(len(ideals)):
        for b in range(a, len(ideals)):
            union = space_hull[a] | space_hull[b]
            outside = spec.full_mask & ~(on_spec[a] | on_spec[b])
            covers = [c for c in range(len(ideals)) if bitset.is_subset(union, space_hull[c])]
            for p in bitset.members(outside):
                if not any(not on_spec[c] >> p & 1 for c in covers):
                    return False
    return True


def is_point_closed_basis(T):
    """Point-set reading: every union of two subbasic sets is an intersection of members."""
    sets = [S.points for S in T.subbasis]
    for i, A in enumerate(sets):
        for B in sets[i:]:
            u = A | B
            meet = T.full_mask
            for S in sets:
                if bitset.is_subset(u, S):
                    meet &= S
            if meet != u:
                return False
    return True


# ---------------------------------------------------------------- separation, sobriety

def is_T0(T):
    return len(set(T.point_closure)) == T.size


def is_T1(T):
    return all(cl == 1 << q for q, cl in enumerate(T.point_closure))


def closed_sets(T):
    """All closed sets: unions of point closures (point count capped at 20)."""
    if T.size > CLOSED_SET_POINT_CAP:
        raise NotEvaluated(f"closed-set enumeration capped at {CLOSED_SET_POINT_CAP} points")
    found = {0}
    for cl in set(T.point_closure):
        found |= {s | cl for s in found}
    return sorted(found, key=lambda s: (s.bit_count(), s))


def is_irreducible(T, C, _closed=None):
    if not is_closed(T, C):
        raise NotClosed(f"{bitset.to_list(C)} is not closed")
    if C == 0:
        return False
    closed = closed_sets(T) if _closed is None else _closed
    proper = [D for D in closed if D != C and bitset.is_subset(D, C)]
    for i, D in enumerate(proper):
        for E in proper[i:]:
            if D | E == C:
                return False
    return True


def irreducible_closed_sets(T):
    closed = closed_sets(T)
    return [C for C in closed if C and is_irreducible(T, C, closed)]


def is_sober(T):
    """Every irreducible closed set is the closure of exactly one point."""
    for C in irreducible_closed_sets(T):
        if sum(1 for cl in T.point_closure if cl == C) != 1:
            return False
    return True


def sobriety_condition(T):
    """Generic-point test on subbasic sets.

    For every ideal ``I`` whose up-set is nonempty and irreducible, the meet
    of the points above ``I`` must itself be a point.
    """
    spec = T.spectrum
    Q = spec.quantale
    closed = closed_sets(T)
    for I in all_ideals(Q):
        S = _up_mask(spec, I.carrier)
        if not S or not is_irreducible(T, S, closed):
            continue
        K = ideal_meet(Q, spec.ideals_of(S))
        if K not in spec.points:
            return False
    return True


# ---------------------------------------------------------------- quasi-compactness

SUBBASIS_SEARCH_CAP = 16


def subbasis_fip_witness(T):
    """A subbasic family with the finite intersection property but empty intersection.

    Searched over all subfamilies of the subbasis (up to 16 members).  A
    finite family is one of its own finite subfamilies, so on a finite
    space the search comes back empty.
    """
    sets = [S.points for S in T.subbasis]
    k = len(sets)
    if k > SUBBASIS_SEARCH_CAP:
        # every family is finite here; its total intersection is a finite one
        return None
    inter = [T.full_mask] * (1 << k)
    fip = [True] * (1 << k)
    for mask in range(1, 1 << k):
        low = mask & -mask
        inter[mask] = inter[mask ^ low] & sets[low.bit_length() - 1]
        fip[mask] = inter[mask] != 0 and all(fip[mask ^ (1 << i)] for i in bitset.members(mask))
    for mask in range(1, 1 << k):
        if fip[mask] and inter[mask] == 0:
            return [T.subbasis[i] for i in bitset.members(mask)]
    return None


def _finite_subcover(T):
    """Greedy finite subcover of the cover by subbasic open sets.

    Alexander's theorem lets subbasic covers stand in for all open covers.
    Returns ``None`` when the subbasic opens do not cover the space.
    """
    opens = [T.full_mask & ~S.points for S in T.subbasis]
    chosen, covered = [], 0
    while covered != T.full_mask:
        best = max(opens, key=lambda U: (U & ~covered).bit_count())
        if not best & ~covered:
            return None
        chosen.append(best)
        covered |= best
    return chosen


def is_quasi_compact(T):
    """Alexander's criterion on the subbasis plus a direct finite-subcover search."""
    if T.size == 0:
        return True
    return subbasis_fip_witness(T) is None and _finite_subcover(T) is not None


def maximal_points(spec):
    """Mask of points maximal under ideal containment."""
    pts = spec.points
    return bitset.from_indices(i for i, P in enumerate(pts)
                               if not any(P < R for R in pts))


def qc_characterization(T):
    """Both sides of: quasi-compact iff (every point lies under a maximal
    point and the maximal points form a quasi-compact subspace)."""
    spec = T.spectrum
    top = maximal_points(spec)
    dominated = all(any(P <= spec.points[j] for j in bitset.members(top)) for P in spec.points)
    return is_quasi_compact(T), dominated and is_quasi_compact(T.subspace(top))


def qc_characterization_holds(T):
    lhs, rhs = qc_characterization(T)
    return lhs == rhs


def is_spectral(T):
    """Quasi-compact, T0, sober, and the quasi-compact opens form a basis
    closed under finite intersections."""
    if not (is_quasi_compact(T) and is_T0(T) and is_sober(T)):
        return False
    full = T.full_mask
    opens = [full & ~C for C in closed_sets(T)]
    qc_opens = [U for U in opens if is_quasi_compact(T.subspace(U))]
    qc_set = set(qc_opens)
    if full not in qc_set:
        return False
    for i, U in enumerate(qc_opens):
        for V in qc_opens[i:]:
            if U & V not in qc_set:
                return False
    for U in opens:
        union = 0
        for V in qc_opens:
            if bitset.is_subset(V, U):
                union |= V
        if union != U:
            return False
    return True


# ---------------------------------------------------------------- connectedness

def is_connected(T):
    """No partition into two nonempty clopen sets; empty space counts as connected.

    Uses the specialization graph: in a finite space the connected
    components are the components of ``q -- p`` whenever ``p in cl{q}``.
    """
    if T.size == 0:
        return True
    reached = 1
    frontier = 1
    while frontier:
        new = 0
        for q in bitset.members(frontier):
            new |= T.point_closure[q]
        for p in range(T.size):
            if T.point_closure[p] & frontier:
                new |= 1 << p
        frontier = new & ~reached
        reached |= new
    return reached == T.full_mask


def is_connected_by_clopens(T):
    """Oracle for ``is_connected``: search all closed sets for a clopen one."""
    full = T.full_mask
    closed = set(closed_sets(T))
    return not any(C and C != full and (full & ~C) in closed for C in closed)


@dataclass(frozen=True)
class Disconnection:
    first: tuple       # witness ideals (pair mode: exactly one each)
    second: tuple
    first_points: int
    second_points: int


def _unions_of_subbasis(T):
    found = {0: ()}
    for S in T.subbasis:
        if not S.points:
            continue
        for u, parts in list(found.items()):
            v = u | S.points
            if v not in found:
                found[v] = parts + (S,)
    return found


def strong_disconnection(T, mode="pair"):
    """Two nonempty, disjoint members (pair) or unions of members (family)
    of the subbasis covering the space; ``None`` if there are none."""
    full = T.full_mask
    if T.size == 0:
        return None
    if mode == "pair":
        sets = [S for S in T.subbasis if S.points]
        for i, A in enumerate(sets):
            for B in sets[i + 1:]:
                if A.points | B.points == full and A.points & B.points == 0:
                    return Disconnection((A.witness,), (B.witness,), A.points, B.points)
        return None
    if mode != "family":
        raise ValueError(f"unknown disconnection mode {mode!r}")
    if T.size > CLOSED_SET_POINT_CAP:
        raise NotEvaluated("family disconnection search capped at 20 points")
    unions = _unions_of_subbasis(T)
    for u in sorted(unions, key=lambda s: (s.bit_count(), s)):
        rest = full & ~u
        if u and rest and rest in unions:
            return Disconnection(tuple(S.witness for S in unions[u]),
                                 tuple(S.witness for S in unions[rest]), u, rest)
    return None


def extract_idempotent(Q, T, witness):
    """Replay the disconnection-to-idempotent argument on a pair witness.

    With zero Jacobson radical and every maximal ideal a point, a pair
    ``I^``, ``J^`` splitting the space forces ``I v J = Q`` and
    ``I & J = 0``; then ``x v y = top`` with ``x in I``, ``y in J`` gives
    ``x = x & (x v y) = x^2``.
    """
    spec = T.spectrum
    if spec is None or spec.quantale is not Q:
        raise MixedQuantales("topology is not over this quantale")
    maxes = maximal_ideals(Q)
    if not maxes:
        raise PreconditionViolated("quantale has no maximal ideals")
    if jacobson_radical(Q) != zero_ideal(Q):
        raise PreconditionViolated(f"Jacobson radical is {jacobson_radical(Q)!r}, not zero")
    if any(M not in spec.points for M in maxes):
        raise PreconditionViolated("spectrum does not contain every maximal ideal")
    if len(witness.first) != 1 or len(witness.second) != 1:
        raise PreconditionViolated("idempotent extraction needs a pair-mode witness")
    I, J = witness.first[0], witness.second[0]
    if ideal_join(Q, [I, J]) != whole(Q):
        raise PreconditionViolated("witness ideals do not join to the whole quantale")
    if ideal_product(Q, I, J) != zero_ideal(Q):
        raise PreconditionViolated("witness ideals have a nonzero product")
    L = Q.lattice
    for x in I.elements:
        for y in J.elements:
            if L.join(x, y) == Q.top:
                if Q.mul(x, x) != x or x in (Q.bottom, Q.top):
                    raise AssertionError(f"extracted {Q.labels[x]} is not a nontrivial idempotent")
                return x
    raise NoUnitPair("no x in I, y in J with x v y = top")


# ---------------------------------------------------------------- report record

def ideal_ref(I):
    return None if I is None else f"down({I.label})"


EMPTY_CONVENTION = ("empty spectrum: connected, quasi-compact, sober, T0 and T1 by convention")


def report_record(Q, selector, disconnect="pair", seed=0, custom=None, sampled=False):
    """The JSON-ready topology report for one spectrum."""
    from .ideals import spectrum as make_spectrum
    spec = make_spectrum(Q, selector, custom)
    T = build_topology(spec)
    notes = []
    if len(spec) == 0:
        notes.append(EMPTY_CONVENTION)
    kur = kuratowski_check(spec, seed, sampled)
    if kur.sampled:
        notes.append("kuratowski: sampled")

    def guarded(fn):
        try:
            return fn(T)
        except NotEvaluated:
            notes.append(f"{fn.__name__}: not evaluated")
            return None

    dis = strong_disconnection(T, disconnect)
    sd = None
    if dis is not None:
        idem = None
        if disconnect == "pair":
            try:
                idem = Q.labels[extract_idempotent(Q, T, dis)]
            except PreconditionViolated as exc:
                notes.append(f"idempotent: {exc}")
        sd = {"I": ",".join(ideal_ref(I) for I in dis.first),
              "J": ",".join(ideal_ref(I) for I in dis.second),
              "idempotent": idem}
    return {
        "selector": spec.selector,
        "points": len(spec),
        "T0": is_T0(T),
        "T1": is_T1(T),
        "sober": guarded(is_sober),
        "quasi_compact": is_quasi_compact(T),
        "connected": is_connected(T),
        "spectral": guarded(is_spectral),
        "hkp": satisfies_hkp(Q, spec),
        "kuratowski": kur.holds,
        "strong_disconnection": sd,
        "seed": seed,
        "notes": notes,
    }
