"""Binary cubic symbols, root splitting, characteristic lines, cone sampling."""

from fractions import Fraction

import pytest

from mae3.algebra import parse_expr
from mae3.jet import Distribution, JetPoint
from mae3.symbol_cone import (REPEATED_LINEAR, THREE_DISTINCT,
                              ONE_REAL_IRREDUCIBLE_QUADRATIC, BinaryCubic,
                              InsufficientSamples, LineNotInPlane,
                              NotOnEquation, ZeroSymbol, all_roots,
                              characteristic_lines, cone_sample,
                              discriminant, discriminant_classify,
                              distinguished_coordinate, factor_cubic,
                              is_strong_characteristic, symbol)


def P(text):
    return parse_expr(text)


def cubic(a, b, c, d):
    return BinaryCubic(Fraction(a), Fraction(b), Fraction(c), Fraction(d))


PIANO = P("p111 - p112 - 2*p122")


# -- symbols ----------------------------------------------------------------------


def test_symbol_reads_third_order_part():
    pt = JetPoint.origin(2)
    assert symbol(P("p111"), pt).coeffs() == (1, 0, 0, 0)
    assert symbol(P("p222"), pt).coeffs() == (0, 0, 0, 1)
    assert symbol(PIANO, pt).coeffs() == (1, -1, -2, 0)


def test_symbol_of_nonlinear_equation_uses_the_point():
    F = P("p222*p112 - p122^2")
    pt = JetPoint.make(2, p112=Fraction(1), p222=Fraction(2))
    s = symbol(F, pt)
    assert not s.is_zero()
    with pytest.raises(ZeroSymbol):
        symbol(F, JetPoint.origin(2))


# -- discriminant classes ---------------------------------------------------------


def test_discriminant_classes():
    assert discriminant_classify(cubic(1, -1, -2, 0)) == THREE_DISTINCT
    assert discriminant_classify(cubic(1, 0, 0, 0)) == REPEATED_LINEAR
    assert discriminant_classify(cubic(1, 0, 1, 0)) \
        == ONE_REAL_IRREDUCIBLE_QUADRATIC
    assert discriminant(cubic(1, 0, 0, 0)) == 0
    with pytest.raises(ValueError):
        discriminant_classify(cubic(0, 0, 0, 0))


# -- roots ------------------------------------------------------------------------


def test_piano_roots():
    roots = all_roots(cubic(1, -1, -2, 0))
    got = {(lam, mu, mult) for lam, mu, mult, exact in roots}
    assert got == {(1, 0, 1), (1, 1, 1), (1, -2, 1)}
    assert all(exact for *_, exact in roots)


def test_root_at_infinity():
    # xi1^2*xi2: factor xi2 appears once as (0, 1)
    roots = all_roots(cubic(0, 1, 0, 0))
    got = {(lam, mu, mult) for lam, mu, mult, exact in roots}
    assert got == {(0, 1, 1), (1, 0, 2)}


def test_triple_root():
    roots = all_roots(cubic(0, 0, 0, 1))
    assert len(roots) == 1
    lam, mu, mult, exact = roots[0]
    assert (lam, mu, mult, exact) == (0, 1, 3, True)


def test_inexact_roots_are_floats():
    # xi1^2 - 2 xi2^2 times xi1: irrational pair flagged inexact
    roots = all_roots(cubic(1, 0, -2, 0))
    inexact = [r for r in roots if not r[3]]
    assert len(inexact) == 2


def test_factor_cubic_division():
    split = factor_cubic(cubic(1, -1, -2, 0))
    lam, mu = split.linear
    q0, q1, q2 = split.quadratic
    # (lam xi1 + mu xi2)(q0 xi1^2 + q1 xi1 xi2 + q2 xi2^2) rebuilds the cubic
    assert (lam * q0, lam * q1 + mu * q0,
            lam * q2 + mu * q1, mu * q2) == (1, -1, -2, 0)
    assert not split.inexact


# -- characteristic lines ---------------------------------------------------------


def test_lines_at_a_point_of_the_witness():
    F = P("p111 + p112^2")
    pt = JetPoint.make(2, p111=Fraction(-1), p112=Fraction(1))
    lines = characteristic_lines(F, pt)
    rep = [(line.coords, line.mult, line.inexact) for line in lines]
    assert rep == [((1, 0, -1, 1, 0), 2, False),
                   ((1, 2, 1, 1, 0), 1, False)]


def test_strong_characteristic_flags():
    F = P("p111 + p112^2")
    pt = JetPoint.make(2, p111=Fraction(-1), p112=Fraction(1))
    lines = characteristic_lines(F, pt)
    flags = [is_strong_characteristic(F, line, pt) for line in lines]
    # the double line is strong, the simple one is not: not a Monge-Ampere
    # shape, so at least one line had to fail
    assert flags == [True, False]


def test_strong_characteristic_guards():
    F = P("p111")
    on = JetPoint.origin(2)
    off = JetPoint.make(2, p111=Fraction(1))
    lines = characteristic_lines(F, on)
    with pytest.raises(NotOnEquation):
        is_strong_characteristic(F, lines[0], off)
    bogus = lines[0].__class__(coords=(0, 0, 1, 0, 0), nu=(1, 0))
    with pytest.raises(LineNotInPlane):
        is_strong_characteristic(F, bogus, on)


# -- cone sampling ----------------------------------------------------------------


def test_cone_of_the_piano_equation():
    cs = cone_sample(PIANO, JetPoint.origin(1))
    sp1 = Distribution.make((1, 0, 0, 0, 0), (0, 0, 1, 1, 0), (0, 0, 2, 0, 1))
    sp2 = Distribution.make((1, 1, 0, 0, 0), (0, 0, 2, 1, 0), (0, 0, 0, 0, 1))
    sp3 = Distribution.make((1, -2, 0, 0, 0), (0, 0, 1, -1, 0),
                            (0, 0, 0, 0, 1))
    got = {d.frame_rref() for d, mult in cs.components}
    assert got == {sp1.frame_rref(), sp2.frame_rref(), sp3.frame_rref()}
    assert all(mult == 1 for _, mult in cs.components)
    assert cs.linear_component.frame_rref() == sp1.frame_rref()
    assert len(cs.lines) == 3


def test_cone_of_p122():
    cs = cone_sample(P("p122"), JetPoint.origin(1))
    double = Distribution.make((0, 1, 0, 0, 0), (0, 0, 1, 0, 0),
                               (0, 0, 0, 0, 1))
    single = Distribution.make((1, 0, 0, 0, 0), (0, 0, 1, 0, 0),
                               (0, 0, 0, 1, 0))
    got = {(d.frame_rref(), m) for d, m in cs.components}
    assert got == {(double.frame_rref(), 2), (single.frame_rref(), 1)}


def test_cone_of_p111_is_triple():
    cs = cone_sample(P("p111"), JetPoint.origin(1))
    triple = Distribution.make((1, 0, 0, 0, 0), (0, 0, 0, 1, 0),
                               (0, 0, 0, 0, 1))
    assert [(d.frame_rref(), m) for d, m in cs.components] \
        == [(triple.frame_rref(), 3)]


def test_cone_needs_enough_usable_probes():
    F = P("p111 + p112^2")
    with pytest.raises(InsufficientSamples):
        cone_sample(F, JetPoint.origin(1), samples=[(0, 0, 0, 0)])


def test_cone_accepts_explicit_probes():
    F = P("p111 + p112^2")
    pt = JetPoint.make(2, p111=Fraction(-1), p112=Fraction(1))
    cs = cone_sample(F, pt.project(1),
                     samples=[pt.fiber(), (0, 0, 0, 0), (0, 2, 1, 0),
                              (0, -1, 0, 3)])
    assert cs.point.fiber() == pt.fiber()
    assert len(cs.lines) == 2


# -- distinguished coordinate -----------------------------------------------------


def test_distinguished_coordinate_priority():
    assert distinguished_coordinate(PIANO) == "p111"
    assert distinguished_coordinate(P("p122")) == "p122"
    assert distinguished_coordinate(P("p222*p112 - p122^2")) == "p222"
    assert distinguished_coordinate(P("p111^2")) is None
