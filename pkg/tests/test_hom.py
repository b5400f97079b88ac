import math

import pytest

from qtl import hom, ideals
from qtl.errors import (BottomNotPreserved, ContractionEscapes, EmptySpectrum, HomAxiomViolation,
                        InputError, MixedQuantales, NotSurjective)
from qtl.hom import (build_hom, compose, contract, density_criterion, enumerate_homs,
                     homeo_onto_kernel_upset, identity_hom, image_dense, induced_map, is_continuous,
                     kernel)
from qtl.ideals import principal, spectrum, zero_ideal
from qtl.quantale import enumerate_all_quantales, gen_chain, gen_powerset, gen_zn


def gcd_hom():
    Q, R = gen_zn(12), gen_zn(4)
    pos = {d: i for i, d in enumerate(R.values)}
    return build_hom(Q, R, [pos[math.gcd(d, 4)] for d in Q.values])


def test_gcd_hom_validates_and_kernel():
    phi = gcd_hom()
    assert repr(kernel(phi)) == "down(4)"
    assert phi.is_surjective
    assert not hom.kernel_is_zero(phi)


def test_gcd_hom_induced_map():
    phi = gcd_hom()
    Sp, S = spectrum(phi.target, "proper"), spectrum(phi.source, "proper")
    f = induced_map(phi, Sp, S)
    got = {repr(Sp.points[i]): repr(S.points[j]) for i, j in enumerate(f)}
    assert got == {"down(4)": "down(4)", "down(2)": "down(2)"}
    assert is_continuous(phi, Sp, S)
    assert homeo_onto_kernel_upset(phi, Sp, S)
    assert not image_dense(phi, Sp, S)
    assert not density_criterion(phi, S)
    assert hom.preimage_identity_holds(phi, Sp, S)
    assert hom.closure_identity_holds(phi, Sp, S)


def test_gcd_hom_prime_contraction():
    phi = gcd_hom()
    J = principal(phi.target, phi.target.lattice.index("2"))
    C = contract(phi, J)
    assert sorted(phi.source.labels[x] for x in C.elements) == ["12", "2", "4", "6"]
    assert ideals.classify(phi.source, C).prime
    assert hom.has_contraction_property("prime", phi)


def test_identity_hom():
    for Q in (gen_powerset(2), gen_zn(12)):
        phi = identity_hom(Q)
        for sel in ideals.SELECTORS:
            S = spectrum(Q, sel)
            assert induced_map(phi, S, S) == tuple(range(len(S)))
            assert is_continuous(phi, S, S)
            assert homeo_onto_kernel_upset(phi, S, S)
            if len(S):
                assert image_dense(phi, S, S) and density_criterion(phi, S)
        assert hom.has_contraction_property("maximal", phi)


def test_hom_axiom_failures():
    Q, R = gen_chain(3), gen_chain(2)
    with pytest.raises(HomAxiomViolation) as err:
        build_hom(Q, R, [1, 0, 1])
    assert err.value.axiom == "monotone"
    with pytest.raises(BottomNotPreserved):
        build_hom(Q, R, [1, 1, 1])
    with pytest.raises(InputError):
        build_hom(Q, R, [0, 1])
    with pytest.raises(InputError):
        build_hom(Q, R, [0, 1, 5])
    P = gen_powerset(2)
    with pytest.raises(HomAxiomViolation) as err:
        build_hom(P, gen_chain(3), [0, 1, 1, 2])
    assert err.value.axiom in ("join", "meet", "mul")


def test_hom_json_round_trip():
    phi = gcd_hom()
    quantales = {phi.source.name: phi.source, phi.target.name: phi.target}
    psi = hom.from_json(hom.to_json(phi), quantales)
    assert psi.map == phi.map
    with pytest.raises(InputError):
        hom.from_json("{", quantales)
    with pytest.raises(InputError):
        hom.from_dict({"source": "nope", "target": "z4", "map": []}, quantales)


def test_contract_mixed():
    phi = gcd_hom()
    with pytest.raises(MixedQuantales):
        contract(phi, zero_ideal(phi.source))


def test_escape_and_mixed_selectors():
    Q, R = gen_chain(3), gen_chain(2)
    phi = build_hom(Q, R, [0, 1, 1])
    Sp = spectrum(R, "proper")
    with pytest.raises(ContractionEscapes):
        induced_map(phi, Sp, spectrum(Q, "maximal"), allow_mixed=True)
    with pytest.raises(ValueError):
        induced_map(phi, Sp, spectrum(Q, "maximal"))


def test_not_surjective_and_empty_spectrum():
    Q, R = gen_chain(2), gen_chain(3)
    phi = build_hom(Q, R, [0, 2])
    with pytest.raises(NotSurjective):
        hom.homeo_parts(phi, spectrum(R, "proper"), spectrum(Q, "proper"))
    with pytest.raises(EmptySpectrum):
        density_criterion(identity_hom(gen_chain(1)), spectrum(gen_chain(1), "proper"))


def test_contractions_are_ideals_and_compose():
    corpus = list(enumerate_all_quantales(3))
    homs = [phi for Q in corpus for R in corpus for phi in enumerate_homs(Q, R)]
    assert len(homs) == 34
    for phi in homs:
        for J in ideals.all_ideals(phi.target):
            assert ideals.is_ideal(phi.source, phi.preimage(J.carrier))
    for phi in homs:
        for psi in homs:
            if phi.target is not psi.source:
                continue
            both = compose(psi, phi)
            for sel in ideals.SELECTORS:
                A, B, C = (spectrum(X, sel) for X in (phi.source, phi.target, psi.target))
                try:
                    f, g, h = induced_map(phi, B, A), induced_map(psi, C, B), induced_map(both, C, A)
                except ContractionEscapes:
                    continue
                assert h == tuple(f[i] for i in g)


def test_continuity_and_preimage_identity_sweep():
    corpus = list(enumerate_all_quantales(3))
    for Q in corpus:
        for R in corpus:
            for phi in enumerate_homs(Q, R):
                for sel in ideals.SELECTORS:
                    if not hom.has_contraction_property(sel, phi):
                        continue
                    A, B = spectrum(Q, sel), spectrum(R, sel)
                    assert is_continuous(phi, B, A)
                    assert hom.preimage_identity_holds(phi, B, A)


def test_known_counterexample_to_kernel_homeomorphism():
    # chain 0<1<2 (min) onto chain 0<1: kernel is zero, yet down(1) contracts from nothing
    Q = next(q for q in enumerate_all_quantales(3) if q.name == "q3.0.1")
    R = gen_chain(2)
    phi = build_hom(Q, R, [0, 1, 1])
    A, B = spectrum(Q, "proper"), spectrum(R, "proper")
    assert hom.has_contraction_property("proper", phi)
    parts = hom.homeo_parts(phi, B, A)
    assert parts["injective"] and parts["continuous"]
    assert not parts["image_is_kernel_upset"]


def test_enumerate_homs_limit():
    with pytest.raises(ValueError):
        list(enumerate_homs(gen_zn(64), gen_zn(64), limit=10))
