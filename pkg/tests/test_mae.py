"""Determinant equations, normal forms, classification, and reconstruction."""

from fractions import Fraction

import pytest

from mae3.algebra import determinant, parse_expr
from mae3.jet import (D1, D2, DP11, DP12, DP22, XI1, XI2, Distribution,
                      JetPoint, derived_flag)
from mae3.mae import (FULLY_NONLINEAR_GOURSAT, MAE_NOT_GOURSAT, NOT_MAE,
                      QUASI_LINEAR, BoillatForm, DiscriminantVanishes,
                      GoursatForm, NotGoursat, NotMAE, ThirdOrderPDE,
                      TrivialEquation, TwoForm, boillat_decompose, build_ED,
                      build_E_omega, check_recoverable,
                      decompose_orthogonal_triple, detect_goursat,
                      fully_parabolic_distribution, fully_parabolic_pde,
                      kernel_in_c1, probe_schedule, proportional_over_base,
                      quasilinear_coefficients, recover_distribution)
from mae3.samplers import random_covector_pair, random_distribution, rng_for


def P(text):
    return parse_expr(text)


SP1 = Distribution.make(D1, (0, 0, 1, 1, 0), (0, 0, 2, 0, 1))
SP2 = Distribution.make((1, 1, 0, 0, 0), (0, 0, 2, 1, 0), DP22)
SP3 = Distribution.make((1, -2, 0, 0, 0), (0, 0, 1, -1, 0), DP22)
PIANO = "p111 - p112 - 2*p122"


# -- determinant of a span --------------------------------------------------------


def test_build_ed_oracles():
    assert str(build_ED(SP1).poly) == PIANO
    assert str(build_ED(Distribution.make(D1, DP12, DP22)).poly) == "p111"
    hankel = build_ED(Distribution.make((1, 0, 0, 0, 0), (0, 1, 0, 0, 0),
                                        (0, 0, 1, 0, 0)))
    assert str(hankel.poly) == "p222*p112 - p122^2"


def test_build_ed_rejects_degenerate_spans():
    with pytest.raises(ValueError):
        build_ED(Distribution.make(D1, D2, (1, 1, 0, 0, 0)))
    with pytest.raises(TrivialEquation):
        build_ED(Distribution.make(XI1, XI2, DP11))


def test_proportionality_is_exact():
    assert proportional_over_base(P("2*p111 - 2*p122"), P("p111 - p122"))
    # any lower-jet factor counts, fiber factors do not
    assert proportional_over_base(P("x1*p111"), P("p111"))
    assert proportional_over_base(P("p11*p111"), P("p111"))
    assert not proportional_over_base(P("p111"), P("p112"))
    assert not proportional_over_base(P("p111^2"), P("p111"))


# -- minor-basis decomposition ----------------------------------------------------


def test_boillat_shape():
    bf = boillat_decompose(P("p122*p111 - p112^2"))
    assert tuple(str(a) for a in bf.A) == ("0", "0", "1")
    assert bf.is_quasilinear() is False
    lin = boillat_decompose(P(PIANO))
    assert lin.is_quasilinear()
    assert proportional_over_base(lin.reconstruct(), P(PIANO))


def test_boillat_rejects_foreign_monomials():
    with pytest.raises(NotMAE) as err:
        boillat_decompose(P("p111^2"))
    assert "monomial outside the Monge-Ampere span: p111^2" in str(err.value)
    with pytest.raises(NotMAE):
        boillat_decompose(P("p111*p112"))


def test_boillat_roundtrip_random():
    rng = rng_for("test-boillat", 7)
    from mae3.samplers import random_boillat
    for _ in range(20):
        bf = random_boillat(rng)
        back = boillat_decompose(bf.reconstruct())
        assert back.reconstruct() == bf.reconstruct()


# -- restriction of a 2-form ------------------------------------------------------


def test_omega_restriction_oracle():
    w = TwoForm.from_wedge((0, 0, 0, 0, 0, 1, 0, 0),
                           (0, 1, 0, 0, 0, 0, 0, 0))
    assert str(build_E_omega(w).poly) == "p111"


def test_contact_wedge_restricts_to_zero():
    w = TwoForm.from_pairs({(0, 2): -1, (0, 1): P("p2")})
    with pytest.raises(TrivialEquation):
        build_E_omega(w)


def test_two_form_validates_shape():
    with pytest.raises(ValueError):
        TwoForm.from_wedge((1, 0, 0), (0, 1, 0))
    with pytest.raises(ValueError):
        TwoForm.from_pairs({(3, 1): 1})


def test_omega_route_agrees_with_span_route():
    rng = rng_for("test-omega", 11)
    for _ in range(10):
        rho1, rho2 = random_covector_pair(rng)
        via_form = build_E_omega(TwoForm.from_wedge(rho1, rho2))
        via_span = build_ED(kernel_in_c1(rho1, rho2))
        assert proportional_over_base(via_form.poly, via_span.poly)


# -- quasi-linear coefficients ----------------------------------------------------


def test_quasilinear_coefficients_oracle():
    qc = quasilinear_coefficients(SP1)
    assert tuple(str(b) for b in qc.B) == ("-1", "1", "2", "0")
    assert str(qc.C) == "0"
    assert all(a.is_zero() for a in qc.A)


def test_quasilinear_matches_raw_determinant():
    rng = rng_for("test-ql", 3)
    for _ in range(15):
        D = random_distribution(rng, vertical_rank=2)
        try:
            rec = quasilinear_coefficients(D).reconstruct()
        except (NotMAE, TrivialEquation):
            continue
        raw = determinant([list(g.frame()) for g in D.generators]
                          + [list(XI1.frame()), list(XI2.frame())])
        assert rec == raw or rec == -raw


# -- determinant normal form ------------------------------------------------------


def test_goursat_form_roundtrip():
    D = Distribution.make((1, 0, 2, 0, 0), (0, 1, 0, 1, 0), (0, 0, 1, 0, 3))
    gf = GoursatForm.from_distribution(D)
    assert gf.reduced
    assert proportional_over_base(gf.to_pde().poly, build_ED(D).poly)


def test_fully_parabolic_family():
    for k in ("u", "p1", "p11"):
        D = fully_parabolic_distribution(P(k))
        F = fully_parabolic_pde(P(k))
        assert proportional_over_base(build_ED(D).poly, F.poly)
    assert derived_flag(fully_parabolic_distribution(P("p11"))) == [3, 6, 8]


# -- classification ---------------------------------------------------------------


def test_detect_piano_is_quasilinear():
    det = detect_goursat(P(PIANO))
    assert det.kind == QUASI_LINEAR
    assert det.distribution.frame_rref() == SP1.frame_rref()
    assert det.complements is not None
    assert {d.frame_rref() for d in det.complements} \
        == {SP2.frame_rref(), SP3.frame_rref()}
    assert not det.pointwise


def test_detect_hankel_is_fully_nonlinear():
    det = detect_goursat(P("p222*p112 - p122^2"))
    assert det.kind == FULLY_NONLINEAR_GOURSAT
    assert det.matches == (det.distribution,)


def test_detect_not_mae():
    assert detect_goursat(P("p111^2")).kind == NOT_MAE


def test_detect_collects_every_matching_span():
    # byte-identical determinants from two distinct spans: the detection
    # reports both, winner first
    A = Distribution.make((1, 0, 0, -4, -1), (0, 1, 0, 2, 0), (0, 0, 1, 1, 1))
    B = Distribution.make((1, 0, 0, -4, -2), (0, 1, 0, 3, 1), (0, 0, 1, 1, 1))
    EA, EB = build_ED(A), build_ED(B)
    assert str(EA.poly) == str(EB.poly)
    det = detect_goursat(EA)
    assert det.kind == FULLY_NONLINEAR_GOURSAT
    got = {d.frame_rref() for d in det.matches}
    assert got == {A.frame_rref(), B.frame_rref()}
    assert det.matches[0].frame_rref() == det.distribution.frame_rref()


# -- orthogonal triples -----------------------------------------------------------


def test_decompose_piano():
    trip = decompose_orthogonal_triple(P(PIANO))
    assert {d.frame_rref() for d in trip.distributions} \
        == {SP1.frame_rref(), SP2.frame_rref(), SP3.frame_rref()}
    assert not trip.inexact
    for d in trip.distributions:
        assert proportional_over_base(build_ED(d).poly, P(PIANO))


def test_decompose_repeated_root_repeats_the_span():
    trip = decompose_orthogonal_triple(P("p122"))
    rrefs = [d.frame_rref() for d in trip.distributions]
    assert len(rrefs) == 3
    assert len(set(rrefs)) == 2


def test_decompose_inexact_roots_are_flagged():
    trip = decompose_orthogonal_triple(P("6*p111 - 8*p112 + p122 + p222 + 4"))
    assert trip.inexact
    assert len(trip.distributions) == 3


# -- reconstruction ---------------------------------------------------------------


def test_recover_oracles():
    r = recover_distribution(P(PIANO))
    assert r.distribution.frame_rref() == SP1.frame_rref()
    assert str(r.delta) == "1"
    r2 = recover_distribution(P("p222*p112 - p122^2"))
    assert str(r2.delta) == "-p112"
    r3 = recover_distribution(P("p111"))
    assert str(r3.delta) == "-1"
    assert r3.distribution.frame_rref() \
        == Distribution.make(D1, DP12, DP22).frame_rref()
    r4 = recover_distribution(P("p222"))
    assert r4.distribution.frame_rref() \
        == Distribution.make(D2, DP11, DP12).frame_rref()


def test_recover_requires_affine_coordinate():
    with pytest.raises(NotGoursat):
        recover_distribution(P("p111^2"))


def test_recover_roundtrip_sample():
    rng = rng_for("test-roundtrip", 5)
    for _ in range(10):
        D = random_distribution(rng, vertical_rank=1)
        rec = recover_distribution(build_ED(D))
        got = rec.distribution
        if got.frame_rref() == D.frame_rref():
            continue
        # a partner span sharing the determinant is the only legal miss
        from mae3.metasympl import is_orthogonal_pair
        assert proportional_over_base(build_ED(got).poly, build_ED(D).poly)
        assert is_orthogonal_pair(D, got)


def test_recoverability_report():
    rep = check_recoverable(P(PIANO), max_points=4)
    assert rep.ok
    assert rep.checked > 0
    with pytest.raises(NotMAE):
        check_recoverable(P("p111 + p112^2"))


# -- probe schedule ---------------------------------------------------------------


def test_probe_schedule_prefers_caller_point():
    pt = JetPoint.make(2, x1=Fraction(7))
    first = next(iter(probe_schedule(1729, first=pt)))
    assert first.values["x1"] == 7
    assert first.level == 1
