"""Quantale homomorphisms, contraction of ideals and induced maps on spectra."""

import itertools
import json
from dataclasses import dataclass

from . import bitset
from .errors import (BottomNotPreserved, ContractionEscapes, EmptySpectrum,
                     HomAxiomViolation, InputError, MixedQuantales,
                     NotSurjective)
from .ideals import (Ideal, all_ideals, classifications, generated_ideal,
                     ideal_meet, zero_ideal)
from .topology import build_topology, closed_sets, closure, is_closed, up_set


@dataclass(frozen=True, eq=False)
class QuantaleHom:
    source: object
    target: object
    map: tuple

    def __call__(self, x):
        return self.map[x]

    def image(self, mask):
        return bitset.from_indices(self.map[x] for x in bitset.members(mask))

    def preimage(self, mask):
        return bitset.from_indices(x for x, y in enumerate(self.map) if mask >> y & 1)

    @property
    def is_surjective(self):
        return set(self.map) == set(range(self.target.n))

    def __repr__(self):
        return f"QuantaleHom({self.source.name} -> {self.target.name}, {list(self.map)})"


def hom_violation(Q, R, phi):
    """First failing homomorphism condition, or ``None``."""
    A, B = Q.lattice, R.lattice
    n = Q.n
    for x in range(n):
        for y in range(n):
            if A.leq[x, y] and not B.leq[phi[x], phi[y]]:
                return HomAxiomViolation("monotone", (x, y))
    for name, src, dst in (("join", A.join_table, B.join_table),
                           ("meet", A.meet_table, B.meet_table),
                           ("mul", Q.mul_table, R.mul_table)):
        for x in range(n):
            for y in range(x, n):
                if phi[src[x, y]] != dst[phi[x], phi[y]]:
                    return HomAxiomViolation(name, (x, y))
    if phi[Q.bottom] != R.bottom:
        return BottomNotPreserved(f"bottom goes to {R.labels[phi[Q.bottom]]}, not bottom")
    return None


def build_hom(Q, R, mapping):
    """Validate an element map against the homomorphism axioms.

    Monotone, preserves binary joins, meets and products, and sends bottom
    to bottom.
    """
    phi = tuple(int(v) for v in mapping)
    if len(phi) != Q.n:
        raise InputError(f"map must have {Q.n} entries, got {len(phi)}")
    if any(not 0 <= v < R.n for v in phi):
        raise InputError("map value outside the target")
    err = hom_violation(Q, R, phi)
    if err is not None:
        raise err
    return QuantaleHom(Q, R, phi)


def identity_hom(Q):
    return QuantaleHom(Q, Q, tuple(range(Q.n)))


def compose(psi, phi):
    """``psi after phi``."""
    if phi.target is not psi.source:
        raise MixedQuantales("homomorphisms do not compose")
    return QuantaleHom(phi.source, psi.target, tuple(psi.map[v] for v in phi.map))


def enumerate_homs(Q, R, limit=1 << 20):
    """Every homomorphism ``Q -> R`` by brute force over all element maps."""
    if R.n ** Q.n > limit:
        raise ValueError(f"{R.n}^{Q.n} maps exceed the enumeration limit")
    for phi in itertools.product(range(R.n), repeat=Q.n):
        if hom_violation(Q, R, phi) is None:
            yield QuantaleHom(Q, R, phi)


def to_dict(phi):
    return {"source": phi.source.name, "target": phi.target.name, "map": list(phi.map)}


def from_dict(data, quantales):
    """Parse the hom JSON object; ``quantales`` maps names to quantales."""
    try:
        Q = quantales[data["source"]]
        R = quantales[data["target"]]
        mapping = [int(v) for v in data["map"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed hom object: {exc}") from None
    return build_hom(Q, R, mapping)


def to_json(phi):
    return json.dumps(to_dict(phi))


def from_json(text, quantales):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    return from_dict(data, quantales)


# ---------------------------------------------------------------- contraction

def kernel(phi):
    """Everything sent to the target's bottom."""
    return Ideal(phi.source, phi.preimage(1 << phi.target.bottom))


def contract(phi, J):
    if J.quantale is not phi.target:
        raise MixedQuantales("ideal is not over the target quantale")
    return Ideal(phi.source, phi.preimage(J.carrier))


def has_contraction_property(selector, phi):
    """Contractions of target ideals in the class stay in the class."""
    src = dict(zip(all_ideals(phi.source), classifications(phi.source)))
    for J, c in zip(all_ideals(phi.target), classifications(phi.target)):
        if getattr(c, selector):
            if not getattr(src[contract(phi, J)], selector):
                return False
    return True


# ---------------------------------------------------------------- induced maps

def _check_spectra(phi, spec_target, spec_source, allow_mixed):
    if spec_target.quantale is not phi.target or spec_source.quantale is not phi.source:
        raise MixedQuantales("spectra do not match the homomorphism")
    if spec_target.selector != spec_source.selector and not allow_mixed:
        raise ValueError("spectra use different selectors; pass allow_mixed=True")


def induced_map(phi, spec_target, spec_source, allow_mixed=False):
    """Point map ``I' -> phi^-1(I')`` as indices into ``spec_source``."""
    _check_spectra(phi, spec_target, spec_source, allow_mixed)
    out = []
    for P in spec_target.points:
        C = contract(phi, P)
        if C not in spec_source.points:
            raise ContractionEscapes(P)
        out.append(spec_source.index(C))
    return tuple(out)


def _pull(point_map, mask):
    return bitset.from_indices(i for i, p in enumerate(point_map) if mask >> p & 1)


def _push(point_map, mask):
    return bitset.from_indices(point_map[i] for i in bitset.members(mask))


def is_continuous(phi, spec_target, spec_source, allow_mixed=False):
    """Preimages of subbasic closed sets are closed (checked directly)."""
    f = induced_map(phi, spec_target, spec_source, allow_mixed)
    T_target = build_topology(spec_target)
    T_source = build_topology(spec_source)
    return all(is_closed(T_target, _pull(f, S.points)) for S in T_source.subbasis)


def preimage_identity_holds(phi, spec_target, spec_source, allow_mixed=False):
    """``f^-1(I^) = <phi(I)>^`` for every ideal ``I`` of the source."""
    f = induced_map(phi, spec_target, spec_source, allow_mixed)
    for I in all_ideals(phi.source):
        generated = generated_ideal(phi.target, phi.image(I.carrier))
        if _pull(f, up_set(spec_source, [I])) != up_set(spec_target, [generated]):
            return False
    return True


def closure_identity_holds(phi, spec_target, spec_source, allow_mixed=False):
    """``cl(f(I'^)) = (phi^-1 I')^`` for every ideal ``I'`` of the target."""
    f = induced_map(phi, spec_target, spec_source, allow_mixed)
    T_source = build_topology(spec_source)
    for J in all_ideals(phi.target):
        image = _push(f, up_set(spec_target, [J]))
        if closure(T_source, image) != up_set(spec_source, [contract(phi, J)]):
            return False
    return True


def homeo_parts(phi, spec_target, spec_source, allow_mixed=False):
    """Components of the homeomorphism-onto-kernel-up-set claim."""
    if not phi.is_surjective:
        raise NotSurjective("homomorphism is not surjective on elements")
    f = induced_map(phi, spec_target, spec_source, allow_mixed)
    T_target = build_topology(spec_target)
    T_source = build_topology(spec_source)
    image = _push(f, spec_target.full_mask)
    target_closed = closed_sets(T_target)
    return {
        "injective": len(set(f)) == len(f),
        "image_is_kernel_upset": image == up_set(spec_source, [kernel(phi)]),
        "continuous": all(is_closed(T_target, _pull(f, S.points)) for S in T_source.subbasis),
        "closed_map": all(is_closed(T_source, _push(f, C)) for C in target_closed),
    }


def homeo_onto_kernel_upset(phi, spec_target, spec_source, allow_mixed=False):
    return all(homeo_parts(phi, spec_target, spec_source, allow_mixed).values())


def image_dense(phi, spec_target, spec_source, allow_mixed=False):
    f = induced_map(phi, spec_target, spec_source, allow_mixed)
    T_source = build_topology(spec_source)
    return closure(T_source, _push(f, spec_target.full_mask)) == spec_source.full_mask


def density_criterion(phi, spec_source):
    """Kernel below the meet of all points of the source spectrum."""
    if len(spec_source) == 0:
        raise EmptySpectrum("meet over an empty spectrum is undefined")
    return kernel(phi) <= ideal_meet(phi.source, spec_source.points)


def kernel_is_zero(phi):
    return kernel(phi) == zero_ideal(phi.source)
