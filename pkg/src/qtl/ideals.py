"""Ideals of a finite quantale: generation, arithmetic, classification, spectra.

The arithmetic follows the set-level closure formulas (close under finite
joins, then take everything below).  On finite quantales each result is
also the principal downset of a single generator; that agreement is
checked, not assumed.
"""

from dataclasses import dataclass, fields

from . import bitset
from .errors import (EmptyGeneratorSet, ImproperPoint, InputError,
                     MixedQuantales, NoProperIdeals)
from .lattice import join_set


class Ideal:
    """A nonempty, downward closed, join-closed set of elements of ``quantale``."""

    __slots__ = ("quantale", "carrier", "generator")

    def __init__(self, quantale, carrier):
        if not is_ideal(quantale, carrier):
            raise ValueError(f"{bitset.to_list(carrier)} is not an ideal of {quantale!r}")
        gen = join_set(quantale.lattice, carrier)
        # finite principality: a join-closed downset contains its own top
        if quantale.lattice.down_masks[gen] != carrier:
            raise AssertionError("ideal is not the downset of its join")
        self.quantale = quantale
        self.carrier = carrier
        self.generator = gen

    def __eq__(self, other):
        return (isinstance(other, Ideal) and self.quantale is other.quantale
                and self.carrier == other.carrier)

    def __hash__(self):
        return hash((id(self.quantale), self.carrier))

    def __le__(self, other):
        _same(self, other)
        return bitset.is_subset(self.carrier, other.carrier)

    def __lt__(self, other):
        return self <= other and self.carrier != other.carrier

    def __contains__(self, x):
        return bool(self.carrier >> x & 1)

    def __repr__(self):
        return f"down({self.label})"

    @property
    def label(self):
        return self.quantale.labels[self.generator]

    @property
    def elements(self):
        return bitset.to_list(self.carrier)

    @property
    def is_proper(self):
        return self.carrier != self.quantale.lattice.full_mask


def _same(*ideals):
    q = ideals[0].quantale
    for I in ideals[1:]:
        if I.quantale is not q:
            raise MixedQuantales("ideals belong to different quantales")
    return q


def principal(Q, x):
    """The downset of ``x`` as an Ideal."""
    cache = Q._ideal_cache
    key = ("principal", x)
    if key not in cache:
        cache[key] = Ideal(Q, Q.lattice.down_masks[Q.lattice.check(x)])
    return cache[key]


def zero_ideal(Q):
    return principal(Q, Q.bottom)


def whole(Q):
    return principal(Q, Q.top)


def is_ideal(Q, S):
    """Nonempty, closed under binary joins, closed downward."""
    if S == 0:
        return False
    L = Q.lattice
    items = bitset.to_list(S)
    for x in items:
        if not bitset.is_subset(L.down_masks[x], S):
            return False
    for i, x in enumerate(items):
        for y in items[i:]:
            if not S >> int(L.join_table[x, y]) & 1:
                return False
    return True


def _join_closure(L, S):
    closed = S
    frontier = S
    while frontier:
        new = 0
        for x in bitset.members(frontier):
            for y in bitset.members(closed):
                new |= 1 << int(L.join_table[x, y])
        frontier = new & ~closed
        closed |= new
    return closed


def _down_closure(L, S):
    out = 0
    for x in bitset.members(S):
        out |= L.down_masks[x]
    return out


def _from_formula(Q, S, expected):
    carrier = _down_closure(Q.lattice, _join_closure(Q.lattice, S))
    I = Ideal(Q, carrier)
    if I.generator != expected:
        raise AssertionError("closure formula disagrees with the principal shortcut")
    return I


def generated_ideal(Q, S):
    """Everything below a finite join of products ``q & s`` with ``s`` in ``S``."""
    S = S if isinstance(S, int) else bitset.from_indices(S)
    if S == 0:
        raise EmptyGeneratorSet("the generated ideal needs a nonempty set")
    products = 0
    for s in bitset.members(S):
        for q in range(Q.n):
            products |= 1 << int(Q.mul_table[q, s])
    return _from_formula(Q, products, join_set(Q.lattice, S))


def ideal_join(Q, family):
    family = list(family)
    if not family:
        raise ValueError("ideal_join needs a nonempty family")
    _check_family(Q, family)
    union = 0
    for I in family:
        union |= I.carrier
    return _from_formula(Q, union, join_set(Q.lattice, [I.generator for I in family]))


def ideal_meet(Q, family):
    family = list(family)
    if not family:
        raise ValueError("ideal_meet needs a nonempty family")
    _check_family(Q, family)
    carrier = Q.lattice.full_mask
    for I in family:
        carrier &= I.carrier
    return Ideal(Q, carrier)


def ideal_product(Q, I, J):
    _check_family(Q, [I, J])
    products = 0
    for x in bitset.members(I.carrier):
        for y in bitset.members(J.carrier):
            products |= 1 << int(Q.mul_table[x, y])
    return _from_formula(Q, products, int(Q.mul_table[I.generator, J.generator]))


def _check_family(Q, family):
    for I in family:
        if I.quantale is not Q:
            raise MixedQuantales("ideal from a different quantale")


def all_ideals(Q):
    """Every ideal, as principal downsets in element order."""
    cache = Q._ideal_cache
    if "all" not in cache:
        cache["all"] = tuple(principal(Q, x) for x in range(Q.n))
    return cache["all"]


def brute_force_ideals(Q):
    """Oracle: filter all 2^n subsets through ``is_ideal``."""
    return [S for S in range(1, 1 << Q.n) if is_ideal(Q, S)]


# ---------------------------------------------------------------- classification

@dataclass(frozen=True)
class IdealClassification:
    proper: bool = False
    maximal: bool = False
    minimal: bool = False
    prime: bool = False
    minimal_prime: bool = False
    primary: bool = False
    irreducible: bool = False
    strongly_irreducible: bool = False

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _is_prime(Q, P):
    c = P.carrier
    for x in range(Q.n):
        for y in range(x, Q.n):
            if c >> int(Q.mul_table[x, y]) & 1 and not (c >> x & 1 or c >> y & 1):
                return False
    return True


def _is_primary(Q, I):
    c = I.carrier
    for x in range(Q.n):
        if c >> x & 1:
            continue
        for y in range(Q.n):
            # some power y^k lands in I
            if c >> int(Q.mul_table[x, y]) & 1 and not Q.power_orbits[y] & c:
                return False
    return True


def classify(Q, I):
    """Decide every distinguished class for ``I`` by direct quantification.

    The whole quantale is not proper and gets all flags false.
    """
    _check_family(Q, [I])
    if not I.is_proper:
        return IdealClassification()
    ideals = all_ideals(Q)
    theta = zero_ideal(Q)
    c = I.carrier
    maximal = not any(J.is_proper and J.carrier != c and bitset.is_subset(c, J.carrier)
                      for J in ideals)
    minimal = I != theta and not any(
        J != theta and J.carrier != c and bitset.is_subset(J.carrier, c) for J in ideals)
    irreducible = True
    strongly = True
    for a, J in enumerate(ideals):
        for K in ideals[a:]:
            m = J.carrier & K.carrier
            if m == c and J.carrier != c and K.carrier != c:
                irreducible = False
            if bitset.is_subset(m, c) and not (bitset.is_subset(J.carrier, c)
                                               or bitset.is_subset(K.carrier, c)):
                strongly = False
    prime = _is_prime(Q, I)
    return IdealClassification(
        proper=True,
        maximal=maximal,
        minimal=minimal,
        prime=prime,
        minimal_prime=minimal and prime,
        primary=_is_primary(Q, I),
        irreducible=irreducible,
        strongly_irreducible=strongly,
    )


def classifications(Q):
    cache = Q._ideal_cache
    if "classes" not in cache:
        cache["classes"] = tuple(classify(Q, I) for I in all_ideals(Q))
    return cache["classes"]


def maximal_ideals(Q):
    return [I for I, c in zip(all_ideals(Q), classifications(Q)) if c.maximal]


def jacobson_radical(Q):
    """Intersection of all maximal ideals."""
    maxes = maximal_ideals(Q)
    if not maxes:
        raise NoProperIdeals("a singleton quantale has no maximal ideals")
    return ideal_meet(Q, maxes)


def is_local(Q):
    return len(maximal_ideals(Q)) == 1


def longest_ideal_chain(Q):
    """Number of ideals in the longest strictly ascending chain."""
    depth = {}
    for I in sorted(all_ideals(Q), key=lambda I: I.carrier.bit_count()):
        depth[I] = 1 + max((depth[J] for J in depth if J < I), default=0)
    return max(depth.values())


def is_noetherian(Q):
    """Every ascending chain of ideals is eventually stationary.

    A strictly ascending chain can have at most ``longest_ideal_chain``
    members, so any ascending chain stops growing after that many steps.
    """
    bound = longest_ideal_chain(Q)
    return 1 <= bound <= len(all_ideals(Q))


# ---------------------------------------------------------------- spectra

SELECTORS = ("proper", "maximal", "prime", "minimal_prime", "primary",
             "irreducible", "strongly_irreducible")
CUSTOM_SELECTORS = ("custom", "zero_plus_custom")


@dataclass(frozen=True, eq=False)
class Spectrum:
    quantale: object
    points: tuple
    selector: str

    def __len__(self):
        return len(self.points)

    def index(self, ideal):
        return self.points.index(ideal)

    @property
    def full_mask(self):
        return bitset.full(len(self.points))

    def mask_of(self, ideals):
        return bitset.from_indices(self.points.index(I) for I in ideals)

    def ideals_of(self, mask):
        return [self.points[i] for i in bitset.members(mask)]

    def __repr__(self):
        return f"Spectrum({self.selector}, {list(self.points)})"


def normalize_selector(name):
    sel = str(name).strip().lower().replace("-", "_")
    if sel not in SELECTORS + CUSTOM_SELECTORS:
        raise InputError(f"unknown selector {name!r}")
    return sel


def spectrum(Q, selector, custom=None):
    """Proper ideals of the selected class, ordered by generator index.

    ``selector`` is a class name, ``"custom"`` with an explicit list of
    proper ideals, or ``"zero_plus_custom"`` (the zero ideal plus the list).
    A list passed directly as ``selector`` means ``custom``.
    """
    if not isinstance(selector, str):
        selector, custom = "custom", selector
    sel = normalize_selector(selector)
    if sel in CUSTOM_SELECTORS:
        chosen = list(custom or [])
        _check_family(Q, chosen)
        if sel == "zero_plus_custom":
            chosen.append(zero_ideal(Q))
        for I in chosen:
            if not I.is_proper:
                raise ImproperPoint("a spectrum point must be a proper ideal")
    else:
        chosen = [I for I, c in zip(all_ideals(Q), classifications(Q))
                  if c.proper and getattr(c, sel)]
    points = sorted(set(chosen), key=lambda I: I.generator)
    return Spectrum(Q, tuple(points), sel)
