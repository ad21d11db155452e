"""Jet points, adapted frame fields, brackets, and constant-rank spans."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mae3.algebra import parse_expr
from mae3.jet import (D1, D2, DP11, DP12, DP22, XI1, XI2, DEFAULT_SEED,
                      Distribution, JetPoint, NonConstantRank, VectorField,
                      derived_flag, lagrangian_plane, lie_bracket,
                      sample_points, spans_equal_at_samples, total_derivative,
                      vertical_part)


def P(text):
    return parse_expr(text)


# -- points -----------------------------------------------------------------------


def test_jet_point_make_and_project():
    pt = JetPoint.make(2, x1=Fraction(1), p111=Fraction(3))
    assert pt.values["x1"] == 1
    assert pt.values["p222"] == 0
    assert pt.fiber() == (3, 0, 0, 0)
    down = pt.project(1)
    assert down.level == 1
    assert "p111" not in down.values


def test_origin_is_zero_everywhere():
    pt = JetPoint.origin(1)
    assert all(v == 0 for v in pt.values.values())
    assert len(JetPoint.origin(2).values) == 12


# -- frame fields -----------------------------------------------------------------


def test_truncated_total_derivatives():
    assert D1.apply_to(P("u")) == P("p1")
    assert D1.apply_to(P("p1")) == P("p11")
    assert D1.apply_to(P("p2")) == P("p12")
    assert D2.apply_to(P("u")) == P("p2")
    assert D2.apply_to(P("p1")) == P("p12")
    # truncated at level 1: no second-derivative slots
    assert D1.apply_to(P("p11")).is_zero()
    assert D1.apply_to(P("x2")).is_zero()
    assert total_derivative(1).frame() == D1.frame()


def test_vertical_frame_fields():
    assert DP11.apply_to(P("p11")) == P("1")
    assert DP11.apply_to(P("p12")).is_zero()
    assert DP12.apply_to(P("p12^2")) == P("2*p12")
    assert DP22.is_vertical()
    assert not D1.is_vertical()


def test_plane_generators_carry_fiber_coordinates():
    # the tautological plane generators read the third-order fiber
    assert XI1.apply_to(P("p11")) == P("p111")
    assert XI1.apply_to(P("p22")) == P("p122")
    assert XI2.apply_to(P("p11")) == P("p112")
    assert XI2.apply_to(P("p22")) == P("p222")


def test_field_make_accepts_strings():
    X = VectorField.make(h1=1, v11="p111")
    assert X.apply_to(P("p11")) == P("p111")


# -- brackets ---------------------------------------------------------------------


def test_bracket_oracles():
    # D1 carries p11 d/dp1, so [D1, d/dp11] eats that slot
    b = lie_bracket(D1, DP11)
    assert b.full8()[3] == P("-1")
    assert all(c.is_zero() for i, c in enumerate(b.full8()) if i != 3)
    assert lie_bracket(DP11, DP22).is_zero()


def test_bracket_antisymmetry():
    a = lie_bracket(D1, DP12)
    b = lie_bracket(DP12, D1)
    assert [str(x) for x in a.full8()] == [str(-y) for y in b.full8()]


small = st.integers(-2, 2)


coeffs = st.sampled_from(["0", "1", "-1", "p11", "x1", "p12"])


@given(st.lists(coeffs, min_size=5, max_size=5),
       st.lists(coeffs, min_size=5, max_size=5),
       st.lists(coeffs, min_size=5, max_size=5))
@settings(max_examples=25, deadline=None)
def test_jacobi_identity(xs, ys, zs):
    X = VectorField.make(*xs)
    Y = VectorField.make(*ys)
    Z = VectorField.make(*zs)
    total = [P("0") for _ in range(8)]
    for A, B, C in ((X, Y, Z), (Y, Z, X), (Z, X, Y)):
        t = lie_bracket(lie_bracket(A, B), C)
        total = [u + v for u, v in zip(total, t.full8())]
    assert all(c.is_zero() for c in total)


# -- distributions ----------------------------------------------------------------


def test_generic_rank():
    D = Distribution.make((1, 0, 0, 0, 0), (0, 1, 0, 0, 0))
    assert D.generic_rank == 2
    # a dependent generator does not raise, it just drops the rank
    E = Distribution.make((1, 0, 0, 0, 0), (2, 0, 0, 0, 0))
    assert E.generic_rank == 1


def test_frame_rref_is_presentation_invariant():
    A = Distribution.make((1, 0, 0, -4, -1), (0, 1, 0, 2, 0), (0, 0, 1, 1, 1))
    B = Distribution.make((1, 1, 1, -1, 0), (0, 1, 0, 2, 0), (0, 0, 2, 2, 2))
    assert A.frame_rref() == B.frame_rref()
    assert spans_equal_at_samples(A, B)
    C = Distribution.make((1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0))
    assert A.frame_rref() != C.frame_rref()


def test_contains_at():
    D = Distribution.make((1, 0, "p11", 0, 0), (0, 1, 0, 0, 0))
    pt = dict(JetPoint.make(1, p11=Fraction(5)).values)
    assert D.contains_at((1, 2, 5, 0, 0), pt)
    assert not D.contains_at((0, 0, 1, 0, 0), pt)


def test_distribution_json_roundtrip():
    D = Distribution.make((1, 0, "p11", 0, 0), (0, 1, 0, 0, 0))
    back = Distribution.from_json(D.to_json())
    assert spans_equal_at_samples(D, back)


# -- derived flags ----------------------------------------------------------------


def test_flag_of_integrable_vertical_span():
    V = Distribution.make(DP11, DP12, DP22)
    assert derived_flag(V) == [3, 3]


def test_flag_oracles_for_search_span():
    D = Distribution.make(D2, DP11, DP22)
    flag = derived_flag(D)
    assert flag[:2] == [3, 4]
    assert flag[-1] < 8


def test_flag_growth_stops_below_tangent():
    # the truncated total derivatives commute, so only the bracket with
    # d/dp11 feeds the flag: 3 -> 4 (d/dp1) -> 5 (d/du), then stable
    D = Distribution.make(D1, D2, DP11)
    assert derived_flag(D) == [3, 4, 5, 5]


def test_flag_reaches_full_tangent():
    D = Distribution.make((1, "p11", 0, 0, 0),
                          (0, 0, "-2*p11", 1, 0),
                          (0, 0, "-3*p11^2", "p11", 1))
    flag = derived_flag(D)
    assert flag == [3, 6, 8]


def test_vertical_part():
    D = Distribution.make((1, 0, 0, -4, -1), (0, 1, 0, 2, 0), (0, 0, 1, 1, 1))
    V = vertical_part(D)
    assert V.frame_rref() == Distribution.make((0, 0, 1, 1, 1)).frame_rref()
    W = vertical_part(Distribution.make(D1, D2))
    assert W.generators == ()


# -- tautological planes ----------------------------------------------------------


def test_lagrangian_plane_direction():
    pt = JetPoint.make(2, p111=Fraction(2), p112=Fraction(1))
    L = lagrangian_plane(pt)
    g1, g2 = L.generators()
    assert g1.apply_to(P("p11")) == P("2")   # p111 value
    assert g2.apply_to(P("p11")) == P("1")   # p112 value
    v = L.direction(1, 1)
    assert L.contains(v)
    assert not L.contains(DP11)


def test_sample_points_are_deterministic():
    a = sample_points(DEFAULT_SEED, 3)
    b = sample_points(DEFAULT_SEED, 3)
    assert [p.values for p in a] == [p.values for p in b]
    assert all(p.level == 2 for p in a)
