"""The fiber pairing, orthogonality predicates, and complement pairs."""

import pytest
from hypothesis import given, settings, strategies as st

from mae3.algebra import parse_expr
from mae3.jet import D1, D2, DP11, DP12, DP22, Distribution, VectorField
from mae3.metasympl import (DegenerateHorizontal, NotDecomposable,
                            VerticalCovector, covector_roots,
                            is_orthogonal_pair, is_threefold_orthogonal,
                            omega_bilinear, omega_trilinear,
                            orthogonal_complement_pair)


def P(text):
    return parse_expr(text)


SP1 = Distribution.make(D1, (0, 0, 1, 1, 0), (0, 0, 2, 0, 1))
SP2 = Distribution.make((1, 1, 0, 0, 0), (0, 0, 2, 1, 0), DP22)
SP3 = Distribution.make((1, -2, 0, 0, 0), (0, 0, 1, -1, 0), DP22)


# -- the pairing ------------------------------------------------------------------


def test_bilinear_convention():
    X = VectorField.make(h1=1)
    Y = VectorField.make(v11=3, v12=5, v22=7)
    w = omega_bilinear(X, Y)
    assert (str(w.c1), str(w.c2)) == ("3", "5")
    w2 = omega_bilinear(VectorField.make(h2=1), Y)
    assert (str(w2.c1), str(w2.c2)) == ("5", "7")


def test_bilinear_antisymmetry():
    X = VectorField.make(1, 2, 3, 4, 5)
    Y = VectorField.make(0, 1, "p11", 0, 2)
    a, b = omega_bilinear(X, Y), omega_bilinear(Y, X)
    assert a.c1 == -b.c1 and a.c2 == -b.c2
    self_pair = omega_bilinear(X, X)
    assert self_pair.c1.is_zero() and self_pair.c2.is_zero()


def test_trilinear_vanishes_on_vertical_third_slot():
    X = VectorField.make(1, 0, 1, 0, 0)
    Y = VectorField.make(0, 1, 0, 1, 0)
    assert omega_trilinear(X, Y, DP11).is_zero()


# -- threefold orthogonality ------------------------------------------------------


def test_piano_triple_is_orthogonal():
    assert is_threefold_orthogonal(SP1, SP2, SP3)


def test_orthogonality_fails_for_shuffled_spans():
    bad = Distribution.make(D1, DP11, DP12)
    assert not is_threefold_orthogonal(SP1, SP2, bad)


# -- canonical pairing lines ------------------------------------------------------


def test_canonical_lines_of_the_piano_triple():
    # pairing a horizontal generator against the partner's vertical part
    # sweeps a single fiber direction per pair
    from mae3.jet import vertical_part

    def line(Da, Db):
        dirs = []
        for v in vertical_part(Db).generators:
            w = omega_bilinear(Da.generators[0], v)
            if not (w.c1.is_zero() and w.c2.is_zero()):
                dirs.append((w.c1, w.c2))
        first = dirs[0]
        assert all(first[0] * d[1] == first[1] * d[0] for d in dirs)
        return first

    c1, c2 = line(SP1, SP2)
    assert c1 * P("1") == c2 * P("2")     # direction (2, 1)
    c1, c2 = line(SP1, SP3)
    assert (c1 + c2).is_zero()            # direction (1, -1)
    c1, c2 = line(SP2, SP3)
    assert c1.is_zero() and not c2.is_zero()   # direction (0, 1)


# -- covector roots ---------------------------------------------------------------


def test_covector_roots_split():
    w = VerticalCovector(P("1"), P("0"), P("-1"))  # k^2 - 1
    roots = covector_roots(w)
    assert len(roots) == 2


def test_covector_roots_reject_irrational():
    with pytest.raises(NotDecomposable):
        covector_roots(VerticalCovector(P("1"), P("0"), P("-2")))


# -- complement pairs -------------------------------------------------------------


def test_complement_pair_of_piano_linear_component():
    got = orthogonal_complement_pair(SP1)
    assert {d.frame_rref() for d in got} == {SP2.frame_rref(),
                                             SP3.frame_rref()}


def test_complement_pair_needs_vertical_plane():
    with pytest.raises(DegenerateHorizontal):
        orthogonal_complement_pair(Distribution.make(D1, D2, DP11))


# -- partner predicate ------------------------------------------------------------


def test_partner_pair_positive():
    # two distinct spans with byte-identical determinants
    A = Distribution.make((1, 0, 0, -4, -1), (0, 1, 0, 2, 0), (0, 0, 1, 1, 1))
    B = Distribution.make((1, 0, 0, -4, -2), (0, 1, 0, 3, 1), (0, 0, 1, 1, 1))
    assert is_orthogonal_pair(A, B)
    assert is_orthogonal_pair(B, A)


def test_partner_pair_tolerates_vanishing_single_pairings():
    # some individual pairings are zero; the image span is still one line
    A = Distribution.make((1, 0, 0, 0, 0), (0, 1, 0, 2, -2), (0, 0, 1, 0, 0))
    B = Distribution.make((1, 0, 0, 0, 2), (0, 1, 0, 0, -2), (0, 0, 1, 0, 0))
    assert is_orthogonal_pair(A, B)


def test_partner_pair_negative():
    A = Distribution.make((1, 0, 0, -4, -1), (0, 1, 0, 2, 0), (0, 0, 1, 1, 1))
    C = Distribution.make((1, 0, 1, 0, 0), (0, 1, 0, 0, 1), (0, 0, 0, 1, 0))
    assert not is_orthogonal_pair(A, C)
    assert not is_orthogonal_pair(A, Distribution.make(D1, D2))
