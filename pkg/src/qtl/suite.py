"""Exhaustive theorem sweep over the small-quantale corpus.

Every check is a named predicate evaluated on one instance: a quantale,
a (quantale, selector) spectrum, or a homomorphism between corpus
quantales.  Records are sorted by instance key before they are emitted,
so the report is identical whether the sweep runs serially or in a pool.
"""

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from . import bitset, hom, ideals, quantale, topology
from .errors import (ContractionEscapes, EmptySpectrum, NoUnitPair,
                     PreconditionViolated)
from .lattice import coatoms, join_set

UPSET_COLLAPSE_MAX_IDEALS = 12


@dataclass(frozen=True)
class Record:
    theorem: str
    instance: str
    selector: str
    passed: bool
    informational: bool = False
    detail: str = ""

    def as_dict(self):
        return asdict(self)


_mutation_hooks = []


def register_mutation_hook(fn):
    """Test hook: ``fn(Q)`` returns a replacement mul table (or ``None``).

    The ``axioms`` check re-validates the replacement, so a corrupted table
    injected after construction must surface as a violation.
    """
    _mutation_hooks.append(fn)


def clear_mutation_hooks():
    _mutation_hooks.clear()


# ---------------------------------------------------------------- per quantale

def _axioms(Q):
    table = Q.mul_table
    for fn in _mutation_hooks:
        out = fn(Q)
        if out is not None:
            table = out
    err = quantale.check_axioms(Q.lattice, table)
    return err is None, "" if err is None else str(err)


def _monotone(Q):
    L, m = Q.lattice, Q.mul_table
    for x, x2 in zip(*L.leq.nonzero()):
        if not L.leq[m[x], m[x2]].all():
            return False
    return True


def _bottom_absorbs(Q):
    return bool((Q.mul_table[Q.bottom] == Q.bottom).all())


def _ideals_oracle(Q):
    return [I.carrier for I in ideals.all_ideals(Q)] == sorted(
        ideals.brute_force_ideals(Q), key=lambda S: join_set(Q.lattice, S))


def _formula_agreement(Q):
    L = Q.lattice
    for S in range(1, 1 << Q.n):
        if ideals.generated_ideal(Q, S).generator != join_set(L, S):
            return False
    alls = ideals.all_ideals(Q)
    for I, J in itertools.product(alls, repeat=2):
        if ideals.ideal_join(Q, [I, J]).generator != L.join(I.generator, J.generator):
            return False
        if ideals.ideal_product(Q, I, J).generator != Q.mul(I.generator, J.generator):
            return False
    return True


def _class_inclusions(Q):
    for c in ideals.classifications(Q):
        if (c.maximal or c.prime or c.primary or c.minimal) and not c.proper:
            return False
        if c.minimal_prime and not (c.prime and c.minimal):
            return False
        if c.strongly_irreducible and not c.irreducible:
            return False
    return True


def _maximal_are_coatoms(Q):
    got = bitset.from_indices(I.generator for I in ideals.maximal_ideals(Q))
    return got == coatoms(Q.lattice)


def _remark_classes(Q):
    for c in ideals.classifications(Q):
        if (c.maximal or c.prime or c.minimal_prime) and not c.strongly_irreducible:
            return False
    return True


def _noetherian(Q):
    return ideals.is_noetherian(Q)


def _finitely_generated_shadow(Q):
    # every ideal is principal, so the finitely generated proper ideals are
    # all proper ideals; that spectrum must be quasi-compact and hold Max
    spec = ideals.spectrum(Q, "proper")
    T = topology.build_topology(spec)
    return (topology.is_quasi_compact(T)
            and all(M in spec.points for M in ideals.maximal_ideals(Q)))


QUANTALE_CHECKS = (
    ("axioms", _axioms),
    ("mul_monotone", _monotone),
    ("bottom_absorbs", _bottom_absorbs),
    ("ideals_oracle", _ideals_oracle),
    ("formula_agreement", _formula_agreement),
    ("class_inclusions", _class_inclusions),
    ("maximal_are_coatoms", _maximal_are_coatoms),
    ("remark_strongly_irreducible_classes", _remark_classes),
    ("noetherian_chain", _noetherian),
    ("finitely_generated_shadow", _finitely_generated_shadow),
)


# ---------------------------------------------------------------- per spectrum

@dataclass
class Ctx:
    Q: object
    spec: object
    T: object
    seed: int


def _hkp_iff_kuratowski(c):
    return topology.satisfies_hkp(c.Q, c.spec) == topology.is_kuratowski_upset(c.spec, c.seed)


def _kuratowski_iff_basis(c):
    return topology.is_kuratowski_upset(c.spec, c.seed) == topology.is_closed_basis(c.spec)


def _strongly_irreducible_hkp(c):
    return c.spec.selector != "strongly_irreducible" or topology.satisfies_hkp(c.Q, c.spec)


def _upset_collapse(c):
    """``X^`` read literally through ``D_X`` matches the single-ideal subbasis."""
    alls = ideals.all_ideals(c.Q)
    if len(alls) > UPSET_COLLAPSE_MAX_IDEALS:
        return None
    subbasic = {S.points for S in c.T.subbasis}
    for X in range(1, 1 << len(alls)):
        D = c.Q.lattice.full_mask
        for i in bitset.members(X):
            D &= alls[i].carrier
        if not ideals.is_ideal(c.Q, D):
            return False
        literal = bitset.from_indices(j for j, P in enumerate(c.spec.points)
                                      if bitset.is_subset(D, P.carrier))
        chosen = [alls[i] for i in bitset.members(X)]
        if literal != topology.up_set(c.spec, chosen) or literal not in subbasic:
            return False
    return True


def _point_closures(c):
    closed = topology.closed_sets(c.T)
    for i, P in enumerate(c.spec.points):
        cl = topology.closure(c.T, 1 << i)
        if cl != topology.up_set(c.spec, [P]) or not topology.is_irreducible(c.T, cl, closed):
            return False
    return True


def _subbasic_irreducible(c):
    if c.spec.selector != "proper":
        return None
    closed = topology.closed_sets(c.T)
    return all(topology.is_irreducible(c.T, S.points, closed)
               for S in c.T.subbasis if S.points)


def _specialization(c):
    hkp = topology.satisfies_hkp(c.Q, c.spec)
    for q, Pq in enumerate(c.spec.points):
        for p, Pp in enumerate(c.spec.points):
            special = bool(c.T.point_closure[q] >> p & 1)
            contained = Pq <= Pp
            if contained and not special:
                return False
            if hkp and special != contained:
                return False
    return True


def _t0(c):
    return topology.is_T0(c.T)


def _t1_iff_within_max(c):
    inside = all(M in ideals.maximal_ideals(c.Q) for M in c.spec.points)
    return topology.is_T1(c.T) == inside


def _t1_iff_contains_max(c):
    holds = all(M in c.spec.points for M in ideals.maximal_ideals(c.Q))
    return topology.is_T1(c.T) == holds


def _t1_iff_antichain(c):
    pts = c.spec.points
    antichain = not any(P < R for P in pts for R in pts)
    return topology.is_T1(c.T) == antichain


def _sober_iff_condition(c):
    return topology.is_sober(c.T) == topology.sobriety_condition(c.T)


def _sober_classes(c):
    if c.spec.selector not in ("proper", "prime", "strongly_irreducible"):
        return None
    return topology.is_sober(c.T)


def _proper_spectral(c):
    if c.spec.selector != "proper":
        return None
    return topology.is_spectral(c.T)


def _quasi_compact(c):
    return topology.is_quasi_compact(c.T) and topology.subbasis_fip_witness(c.T) is None


def _qc_characterization(c):
    return topology.qc_characterization_holds(c.T)


def _zero_connected(c):
    if ideals.zero_ideal(c.Q) not in c.spec.points:
        return None
    return topology.is_connected(c.T)


def _connected_oracle(c):
    return topology.is_connected(c.T) == topology.is_connected_by_clopens(c.T)


def _disconnection_modes(c):
    pair = topology.strong_disconnection(c.T, "pair")
    family = topology.strong_disconnection(c.T, "family")
    if pair is not None and family is None:
        return False
    return family is None or not topology.is_connected(c.T)


def _idempotent_extraction(c):
    w = topology.strong_disconnection(c.T, "pair")
    if w is None:
        return None
    try:
        e = topology.extract_idempotent(c.Q, c.T, w)
    except PreconditionViolated:
        return None
    except (NoUnitPair, AssertionError):
        return False
    return c.Q.mul(e, e) == e and e not in (c.Q.bottom, c.Q.top)


SPECTRUM_CHECKS = (
    ("hkp_iff_kuratowski", _hkp_iff_kuratowski),
    ("kuratowski_iff_closed_basis", _kuratowski_iff_basis),
    ("strongly_irreducible_spectrum_hkp", _strongly_irreducible_hkp),
    ("upset_meet_collapse", _upset_collapse),
    ("point_closure_is_upset", _point_closures),
    ("subbasic_sets_irreducible", _subbasic_irreducible),
    ("specialization_order", _specialization),
    ("T0", _t0),
    ("T1_iff_points_maximal", _t1_iff_within_max),
    ("sober_iff_generic_points", _sober_iff_condition),
    ("sober_named_classes", _sober_classes),
    ("proper_spectral", _proper_spectral),
    ("quasi_compact", _quasi_compact),
    ("qc_maximal_characterization", _qc_characterization),
    ("zero_point_connected", _zero_connected),
    ("connected_oracle", _connected_oracle),
    ("disconnection_modes", _disconnection_modes),
    ("idempotent_extraction", _idempotent_extraction),
)

# reported but never counted as a failure
INFORMATIONAL_CHECKS = (
    ("T1_iff_contains_max", _t1_iff_contains_max),
    ("T1_iff_points_antichain", _t1_iff_antichain),
)


def _run(theorem, instance, selector, fn, *args, informational=False):
    try:
        out = fn(*args)
    except Exception as exc:  # a crash inside a check is a failure of that check
        return Record(theorem, instance, selector, False, informational,
                      f"{type(exc).__name__}: {exc}")
    detail = ""
    if isinstance(out, tuple):
        out, detail = out
    if out is None:
        return None
    return Record(theorem, instance, selector, bool(out), informational, detail)


def quantale_records(Q, seed=0, selectors=ideals.SELECTORS):
    out = [_run(name, Q.name, "-", fn, Q) for name, fn in QUANTALE_CHECKS]
    for sel in selectors:
        spec = ideals.spectrum(Q, sel)
        c = Ctx(Q, spec, topology.build_topology(spec), seed)
        out += [_run(name, Q.name, sel, fn, c) for name, fn in SPECTRUM_CHECKS]
        out += [_run(name, Q.name, sel, fn, c, informational=True)
                for name, fn in INFORMATIONAL_CHECKS]
    return [r for r in out if r is not None]


# ---------------------------------------------------------------- homomorphisms

def _hom_key(phi):
    return f"{phi.source.name}->{phi.target.name}:{''.join(map(str, phi.map))}"


def _contractions_are_ideals(phi):
    for J in ideals.all_ideals(phi.target):
        S = phi.preimage(J.carrier)
        if not ideals.is_ideal(phi.source, S):
            return False
    return True


def hom_records(phi, selectors=ideals.SELECTORS):
    """Induced-map invariants and the supporting identities for one homomorphism.

    Spectrum checks run only where the contraction property holds for this
    homomorphism and selector (the induced map is otherwise undefined).
    """
    key = _hom_key(phi)
    out = [_run("hom_contraction_is_ideal", key, "-", _contractions_are_ideals, phi)]
    for sel in selectors:
        if not hom.has_contraction_property(sel, phi):
            continue
        target = ideals.spectrum(phi.target, sel)
        source = ideals.spectrum(phi.source, sel)
        try:
            hom.induced_map(phi, target, source)
        except ContractionEscapes:
            continue
        args = (phi, target, source)
        out.append(_run("hom_preimage_identity", key, sel, hom.preimage_identity_holds, *args))
        out.append(_run("hom_closure_identity", key, sel, hom.closure_identity_holds, *args))
        out.append(_run("induced_map_continuous", key, sel, hom.is_continuous, *args))
        if phi.is_surjective:
            out.append(_run("homeo_onto_kernel_upset", key, sel, hom.homeo_onto_kernel_upset, *args))
        out.append(_run("density_iff_kernel_criterion", key, sel, _density, *args))
    return [r for r in out if r is not None]


def _density(phi, target, source):
    try:
        crit = hom.density_criterion(phi, source)
    except EmptySpectrum:
        return None
    return hom.image_dense(phi, target, source) == crit


def composition_records(homs, selectors=ideals.SELECTORS):
    """``(psi o phi)_* = phi_* o psi_*`` wherever all three maps are defined."""
    out = []
    for phi, psi in itertools.product(homs, repeat=2):
        if phi.target is not psi.source:
            continue
        both = hom.compose(psi, phi)
        for sel in selectors:
            specs = [ideals.spectrum(Q, sel) for Q in (phi.source, phi.target, psi.target)]
            try:
                f_phi = hom.induced_map(phi, specs[1], specs[0])
                f_psi = hom.induced_map(psi, specs[2], specs[1])
                f_both = hom.induced_map(both, specs[2], specs[0])
            except ContractionEscapes:
                continue
            ok = f_both == tuple(f_phi[i] for i in f_psi)
            out.append(Record("induced_map_composition",
                              f"{_hom_key(psi)}o{_hom_key(phi)}", sel, ok))
    return out


# ---------------------------------------------------------------- driver

def _instance_key(name):
    head, _, tail = name.partition("->")
    parts = head.lstrip("q").split(".")
    try:
        nums = tuple(int(p) for p in parts)
    except ValueError:
        nums = ()
    return nums, name


def _sort(records):
    sel_order = {s: i for i, s in enumerate(("-",) + ideals.SELECTORS)}
    return sorted(records, key=lambda r: (_instance_key(r.instance), r.instance,
                                          sel_order.get(r.selector, 99), r.theorem))


def _worker(args):
    data, seed = args
    Q = quantale.from_dict(data)
    return quantale_records(Q, seed)


def run_suite(max_size, seed=0, jobs=1, homs=False, hom_max_size=3):
    """Sweep the corpus; returns ``(records, corpus)`` with records sorted."""
    corpus = list(quantale.enumerate_all_quantales(max_size))
    records = []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for chunk in pool.map(_worker, [(quantale.to_dict(Q), seed) for Q in corpus]):
                records += chunk
    else:
        for Q in corpus:
            records += quantale_records(Q, seed)
    if homs:
        small = [Q for Q in corpus if Q.n <= hom_max_size]
        found = [phi for Q in small for R in small for phi in hom.enumerate_homs(Q, R)]
        for phi in found:
            records += hom_records(phi)
        records += composition_records(found)
    return _sort(records), corpus


def counterexample(records, corpus):
    """The first counted failure, with the offending quantale serialized."""
    by_name = {Q.name: Q for Q in corpus}
    for r in records:
        if r.passed or r.informational:
            continue
        src = r.instance.partition("->")[0]
        out = {"theorem": r.theorem, "instance": r.instance, "selector": r.selector,
               "detail": r.detail}
        if src in by_name:
            out["quantale"] = quantale.to_dict(by_name[src])
        target = r.instance.partition("->")[2].split(":")[0]
        if target in by_name:
            out["target"] = quantale.to_dict(by_name[target])
        return out
    return None


def summary(records):
    """Per-theorem totals: ``{theorem: [checked, failed]}``."""
    out = {}
    for r in records:
        row = out.setdefault(r.theorem, [0, 0])
        row[0] += 1
        row[1] += not r.passed
    return dict(sorted(out.items()))
