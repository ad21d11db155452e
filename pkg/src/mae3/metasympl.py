"""The meta-symplectic pairing on the adapted subbundle.

The pairing takes two adapted-frame fields to a vector in span(d/dp1, d/dp2);
composing with the horizontal projection of a third field gives a trilinear
form whose vanishing defines three-fold orthogonality.  A vertical covector
A dp11 + B dp12 + C dp22 cuts the vertical plane in two characteristic
directions obtained from the roots of A k^2 + B k + C; these feed the
construction of the orthogonal complement pair of a rank-3 distribution with
2D vertical part.

Roots are kept exact: a covector whose quadratic has no rational
factorization is rejected (NotDecomposable) rather than approximated.  The
single symbolic case supported is a squared factor with constant leading
coefficient, where the repeated root is itself a polynomial.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .algebra import MultiPoly, poly_echelon, poly_kernel
from .jet import Distribution, VectorField, vertical_part


class NotDecomposable(ValueError):
    """No rational factorization of the vertical covector's quadratic."""


class DegenerateHorizontal(ValueError):
    """The distribution has no single horizontal direction (vertical rank != 2)."""


def _p(x) -> MultiPoly:
    if isinstance(x, MultiPoly):
        return x
    return MultiPoly.const(x)


@dataclass(frozen=True)
class LDualElement:
    """Element c1*d/dp1 + c2*d/dp2 of the fiber pairing target."""

    c1: MultiPoly
    c2: MultiPoly

    @staticmethod
    def make(c1, c2) -> "LDualElement":
        return LDualElement(_p(c1), _p(c2))

    def is_zero(self) -> bool:
        return self.c1.is_zero() and self.c2.is_zero()

    def proportional_to(self, other: "LDualElement") -> bool:
        return (self.c1 * other.c2 - self.c2 * other.c1).is_zero() \
            and not (self.is_zero() or other.is_zero())

    def __str__(self):
        return f"({self.c1}, {self.c2})"


@dataclass(frozen=True)
class VerticalCovector:
    """A dp11 + B dp12 + C dp22 on the vertical plane."""

    A: MultiPoly
    B: MultiPoly
    C: MultiPoly

    @staticmethod
    def make(A, B, C) -> "VerticalCovector":
        w = VerticalCovector(_p(A), _p(B), _p(C))
        if w.A.is_zero() and w.B.is_zero() and w.C.is_zero():
            raise ValueError("zero vertical covector")
        return w

    def __str__(self):
        return f"({self.A})*dp11 + ({self.B})*dp12 + ({self.C})*dp22"


def omega_bilinear(X: VectorField, Y: VectorField) -> LDualElement:
    """Pairing of two adapted-frame fields.

    Convention fixed so that contracting a horizontal field in the first slot
    gives (a*dp11 + b*dp12) x d/dp1 + (a*dp12 + b*dp22) x d/dp2."""
    a1, a2, A11, A12, A22 = X.frame()
    b1, b2, B11, B12, B22 = Y.frame()
    c1 = (a1 * B11 - b1 * A11) + (a2 * B12 - b2 * A12)
    c2 = (a1 * B12 - b1 * A12) + (a2 * B22 - b2 * A22)
    return LDualElement(c1, c2)


def omega_trilinear(X1: VectorField, X2: VectorField, X3: VectorField) -> MultiPoly:
    """omega_bilinear(X1, X2) read as c1*dx1 + c2*dx2, paired with the
    horizontal projection of X3."""
    val = omega_bilinear(X1, X2)
    return val.c1 * X3.h1 + val.c2 * X3.h2


def is_threefold_orthogonal(D1: Distribution, D2: Distribution,
                            D3: Distribution) -> bool:
    """True iff the trilinear form vanishes identically on every generator
    triple, one factor per distribution, under all six slot assignments."""
    triples = (D1, D2, D3)
    for perm in itertools.permutations(range(3)):
        for g1 in triples[perm[0]].generators:
            for g2 in triples[perm[1]].generators:
                for g3 in triples[perm[2]].generators:
                    if not omega_trilinear(g1, g2, g3).is_zero():
                        return False
    return True


def is_orthogonal_pair(D1: Distribution, D2: Distribution) -> bool:
    """True iff pairing either span's horizontal part against the other's
    vertical part sweeps out one and the same 1D fiber direction.

    Two distinct rank-3 spans rebuilding the same determinant stand in
    exactly this relation, so the predicate certifies that a recovery
    landing on a different span hit the legitimate partner.  Individual
    pairings may vanish; what matters is the span of the image."""
    lines = []
    for Da, Db in ((D1, D2), (D2, D1)):
        verts = vertical_part(Db).generators
        if not verts:
            return False
        image = []
        for g in Da.generators:
            if g.h1.is_zero() and g.h2.is_zero():
                continue
            for v in verts:
                w = omega_bilinear(g, v)
                if not (w.c1.is_zero() and w.c2.is_zero()):
                    image.append(w)
        if not image:
            return False
        lines.extend(image)
    first = lines[0]
    return all((first.c1 * w.c2 - first.c2 * w.c1).is_zero() for w in lines)


def _sqrt_fraction(x: Fraction):
    """Exact square root of a nonnegative rational, or None."""
    if x < 0:
        return None
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def covector_roots(w: VerticalCovector) -> list:
    """Projective roots (u_i, v_i) of A u^2 + B u v + C v^2, each a pair of
    MultiPoly, repeated per multiplicity; the root at infinity is (1, 0) and
    sorts last.  Raises NotDecomposable when no rational factorization exists."""
    A, B, C = w.A, w.B, w.C
    one, zero = MultiPoly.const(1), MultiPoly()

    if A.is_zero():
        if B.is_zero():
            # C v^2: double root at infinity
            return [(one, zero), (one, zero)]
        if B.is_constant():
            k = C * Fraction(-1, 1) * (1 / B.constant_value())
            return [(k, one), (one, zero)]
        k = C.try_divide(B)
        if k is None:
            raise NotDecomposable("finite root is not polynomial")
        return [(-k, one), (one, zero)]

    disc = B * B - 4 * A * C
    if disc.is_zero():
        # squared factor; the repeated root -B/(2A) must stay polynomial
        if A.is_constant():
            k = B * Fraction(-1, 2) * (1 / A.constant_value())
            return [(k, one), (k, one)]
        k2 = B.try_divide(A)
        if k2 is None:
            raise NotDecomposable("repeated root is not polynomial")
        k = k2 * Fraction(-1, 2)
        return [(k, one), (k, one)]

    if not (A.is_constant() and B.is_constant() and C.is_constant()):
        raise NotDecomposable("symbolic covector with nonzero discriminant")
    a, b = A.constant_value(), B.constant_value()
    d = disc.constant_value()
    if d < 0:
        raise NotDecomposable("negative discriminant: no real factorization")
    r = _sqrt_fraction(d)
    if r is None:
        raise NotDecomposable("irrational roots: no rational factorization")
    k1 = (-b - r) / (2 * a)
    k2 = (-b + r) / (2 * a)
    roots = sorted((k1, k2), key=lambda k: (abs(k), k))
    return [(MultiPoly.const(k), one) for k in roots]


def characteristic_lines_of_covector(w: VerticalCovector) -> tuple:
    """The two vertical-plane lines cut out by the covector, as elements
    k*d/dp1 + d/dp2 (finite root k) or d/dp1 (root at infinity)."""
    roots = covector_roots(w)
    return tuple(LDualElement(u, v) for u, v in roots)


def orthogonal_complement_pair(D1: Distribution) -> tuple:
    """The two distributions orthogonal to D1 under the trilinear form.

    D1 must have vertical rank exactly 2; its vertical part determines a
    covector whose two roots (u_i : v_i), combined with the horizontal
    direction a*D1 + b*D2 of D1, give the annihilator pairs

        u_j dx1 + v_j dx2,   a v_i dp11 + (b v_i - a u_i) dp12 - b u_i dp22

    (j the other root index); each distribution is the joint kernel in the
    adapted subbundle."""
    vert = vertical_part(D1)
    if len(vert.generators) != 2:
        raise DegenerateHorizontal(
            f"vertical rank is {len(vert.generators)}, need 2")
    (r1, s1, t1) = vert.generators[0].frame()[2:]
    (r2, s2, t2) = vert.generators[1].frame()[2:]
    w = VerticalCovector.make(s1 * t2 - t1 * s2, t1 * r2 - r1 * t2,
                              r1 * s2 - s1 * r2)

    # the one echelon row with nonzero horizontal part carries (a, b)
    work, _ = poly_echelon(D1.frame_rows())
    horiz = [row for row in work if not (row[0].is_zero() and row[1].is_zero())]
    if len(horiz) != 1:
        raise DegenerateHorizontal(
            f"horizontal rank is {len(horiz)}, need 1")
    a, b = horiz[0][0], horiz[0][1]

    roots = covector_roots(w)
    out = []
    for i in (0, 1):
        ui, vi = roots[i]
        uj, vj = roots[1 - i]
        row_x = [uj, vj, MultiPoly(), MultiPoly(), MultiPoly()]
        row_p = [MultiPoly(), MultiPoly(),
                 a * vi, b * vi - a * ui, MultiPoly() - b * ui]
        basis = poly_kernel([row_x, row_p], 5)
        gens = tuple(VectorField(*vec) for vec in basis)
        out.append(Distribution(gens, seed=D1.seed))
    return tuple(out)
