"""Jet-space model: points, vector fields, distributions, derived flags.

The base chart has coordinates (x1, x2, u, p1, p2); first prolongation adds
(p11, p12, p22) and the second adds (p111, p112, p122, p222).  Vector fields
tangent to the first prolongation are written in the adapted frame

    D1, D2, d/dp11, d/dp12, d/dp22

where D_i = d/dx_i + p_i d/du + p_i1 d/dp1 + p_i2 d/dp2 is the truncated
total derivative.  Fields in this frame span the contact-adapted subbundle;
Lie brackets can leave it, so bracket results that escape are kept in the
full 8-coordinate frame and flagged.

Generic ranks are computed by evaluating component matrices at a few seeded
pseudo-random rational points and taking the maximum: rank can only drop on
a proper subvariety, so the max over samples is the generic value.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import (COORDS, LEVEL_SIZE, MultiPoly, Scalar, mat_rank,
                      parse_expr, poly_echelon, rank_kernel, rref)

DEFAULT_SEED = 1729
NSAMPLES = 5

FRAME_NAMES = ("h1", "h2", "v11", "v12", "v22")
BASE8 = COORDS[:8]


class NonConstantRank(ValueError):
    """Vertical intersection rank differs across sample points."""


def _p(x) -> MultiPoly:
    if isinstance(x, MultiPoly):
        return x
    if isinstance(x, str):
        return parse_expr(x)
    return MultiPoly.const(x)


# -- points ------------------------------------------------------------------


@dataclass(frozen=True)
class JetPoint:
    """A point of the base chart (level 0) or a prolongation (level 1 or 2).

    `values` must assign exactly the coordinates of the level."""

    level: int
    values: dict

    def __post_init__(self):
        expected = set(COORDS[:LEVEL_SIZE[self.level]])
        got = set(self.values)
        if got != expected:
            missing = sorted(expected - got)
            extra = sorted(got - expected)
            raise ValueError(f"level {self.level} point: missing {missing}, extra {extra}")
        object.__setattr__(self, "values",
                           {k: Fraction(v) for k, v in self.values.items()})

    @staticmethod
    def origin(level: int) -> "JetPoint":
        return JetPoint(level, {c: Fraction(0) for c in COORDS[:LEVEL_SIZE[level]]})

    @staticmethod
    def make(level: int, **vals) -> "JetPoint":
        """Origin with the named coordinates overridden."""
        values = {c: Fraction(0) for c in COORDS[:LEVEL_SIZE[level]]}
        for k, v in vals.items():
            if k not in values:
                raise KeyError(f"coordinate {k} not present at level {level}")
            values[k] = Fraction(v)
        return JetPoint(level, values)

    def project(self, level: int) -> "JetPoint":
        if level > self.level:
            raise ValueError("cannot project to a higher level")
        return JetPoint(level, {c: self.values[c] for c in COORDS[:LEVEL_SIZE[level]]})

    def fiber(self) -> tuple:
        """Third-derivative coordinates of a level-2 point."""
        if self.level != 2:
            raise ValueError("fiber values require a level-2 point")
        return tuple(self.values[c] for c in COORDS[8:])


# -- vector fields -----------------------------------------------------------


@dataclass(frozen=True)
class VectorField:
    """Field in the adapted frame (D1, D2, d/dp11, d/dp12, d/dp22).

    Always lies in the adapted subbundle by construction."""

    h1: MultiPoly
    h2: MultiPoly
    v11: MultiPoly
    v12: MultiPoly
    v22: MultiPoly

    in_adapted = True

    @staticmethod
    def make(h1=0, h2=0, v11=0, v12=0, v22=0) -> "VectorField":
        return VectorField(_p(h1), _p(h2), _p(v11), _p(v12), _p(v22))

    def frame(self) -> tuple:
        return (self.h1, self.h2, self.v11, self.v12, self.v22)

    def full8(self) -> tuple:
        """Components over (dx1, dx2, du, dp1, dp2, dp11, dp12, dp22)."""
        p1, p2 = MultiPoly.coord("p1"), MultiPoly.coord("p2")
        p11, p12, p22 = (MultiPoly.coord(c) for c in ("p11", "p12", "p22"))
        return (self.h1, self.h2,
                self.h1 * p1 + self.h2 * p2,
                self.h1 * p11 + self.h2 * p12,
                self.h1 * p12 + self.h2 * p22,
                self.v11, self.v12, self.v22)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.frame())

    def is_vertical(self) -> bool:
        return self.h1.is_zero() and self.h2.is_zero()

    def apply_to(self, f: MultiPoly) -> MultiPoly:
        """Directional derivative X(f) for f on the first prolongation."""
        total = MultiPoly()
        for comp, name in zip(self.full8(), BASE8):
            if not comp.is_zero():
                total = total + comp * f.derivative(name)
        return total

    def __add__(self, other: "VectorField") -> "VectorField":
        return VectorField(*(a + b for a, b in zip(self.frame(), other.frame())))

    def __sub__(self, other: "VectorField") -> "VectorField":
        return VectorField(*(a - b for a, b in zip(self.frame(), other.frame())))

    def __rmul__(self, c) -> "VectorField":
        return VectorField(*(comp * c for comp in self.frame()))

    def to_json(self) -> dict:
        return {name: str(comp) for name, comp in zip(FRAME_NAMES, self.frame())}

    @staticmethod
    def from_json(d: dict) -> "VectorField":
        return VectorField(*(parse_expr(d.get(name, "0")) for name in FRAME_NAMES))

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.frame()) + ")"


@dataclass(frozen=True)
class FullField:
    """Field in the 8-coordinate frame; `in_adapted` False marks an escape
    from the adapted subbundle (possible for Lie brackets)."""

    comps: tuple
    in_adapted: bool = False

    def full8(self) -> tuple:
        return self.comps

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def apply_to(self, f: MultiPoly) -> MultiPoly:
        total = MultiPoly()
        for comp, name in zip(self.comps, BASE8):
            if not comp.is_zero():
                total = total + comp * f.derivative(name)
        return total

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.comps) + ")"


def field_from_full8(comps: Sequence[MultiPoly]):
    """Re-express an 8-component field in the adapted frame when possible.

    Membership conditions: the du component equals p1*c_x1 + p2*c_x2 and the
    dp_i components equal p_i1*c_x1 + p_i2*c_x2."""
    comps = tuple(_p(c) for c in comps)
    cx1, cx2, cu, cp1, cp2, c11, c12, c22 = comps
    p1, p2 = MultiPoly.coord("p1"), MultiPoly.coord("p2")
    p11, p12, p22 = (MultiPoly.coord(c) for c in ("p11", "p12", "p22"))
    if (cu == cx1 * p1 + cx2 * p2
            and cp1 == cx1 * p11 + cx2 * p12
            and cp2 == cx1 * p12 + cx2 * p22):
        return VectorField(cx1, cx2, c11, c12, c22)
    return FullField(comps, in_adapted=False)


def total_derivative(i: int) -> VectorField:
    """Truncated total derivative D_i as an adapted-frame field."""
    if i not in (1, 2):
        raise ValueError("index must be 1 or 2")
    return VectorField.make(h1=1) if i == 1 else VectorField.make(h2=1)


D1 = total_derivative(1)
D2 = total_derivative(2)
DP11 = VectorField.make(v11=1)
DP12 = VectorField.make(v12=1)
DP22 = VectorField.make(v22=1)

# symbolic plane generators xi_i = D_i + p_ijk d/dp_jk, with the third
# derivatives as coordinate polynomials
XI1 = VectorField.make(h1=1, v11="p111", v12="p112", v22="p122")
XI2 = VectorField.make(h2=1, v11="p112", v12="p122", v22="p222")


def lie_bracket(X, Y):
    """[X, Y] componentwise over the 8 coordinates; adapted-frame result when
    the bracket stays in the adapted subbundle, else a flagged FullField.
    Components are differentiated in the 8 base coordinates only; any
    third-order coordinates they mention are treated as parameters."""
    xc, yc = X.full8(), Y.full8()
    out = []
    for k in range(8):
        s = MultiPoly()
        for j, name in enumerate(BASE8):
            if not xc[j].is_zero():
                d = yc[k].derivative(name)
                if not d.is_zero():
                    s = s + xc[j] * d
            if not yc[j].is_zero():
                d = xc[k].derivative(name)
                if not d.is_zero():
                    s = s - yc[j] * d
        out.append(s)
    return field_from_full8(out)


# -- sampling and generic rank ------------------------------------------------


def sample_points(seed: int = DEFAULT_SEED, n: int = NSAMPLES) -> list:
    """Deterministic rational level-2 sample points covering all 12 coordinates."""
    rng = random.Random(seed)
    pts = []
    for _ in range(n):
        pts.append(JetPoint(2, {c: Fraction(rng.randint(-9, 9), rng.randint(1, 3))
                                for c in COORDS}))
    return pts


def eval_matrix(rows: Sequence[Sequence[MultiPoly]], point: dict) -> list:
    return [[entry.eval_at(point) for entry in row] for row in rows]


def generic_rank(fields: Sequence, seed: int = DEFAULT_SEED) -> int:
    """Max rank of the 8-component matrix over the seeded sample points."""
    rows = [f.full8() for f in fields]
    if not rows:
        return 0
    return max(mat_rank(eval_matrix(rows, pt)) for pt in sample_points(seed))


# -- distributions -------------------------------------------------------------


@dataclass(frozen=True)
class Distribution:
    """Span of adapted-frame generator fields with a cached generic rank."""

    generators: tuple
    seed: int = DEFAULT_SEED
    _rank: list = field(default_factory=list, compare=False, repr=False)

    @staticmethod
    def make(*gens, seed: int = DEFAULT_SEED) -> "Distribution":
        fields = []
        for g in gens:
            if isinstance(g, VectorField):
                fields.append(g)
            else:
                fields.append(VectorField.make(*g))
        return Distribution(tuple(fields), seed=seed)

    @property
    def generic_rank(self) -> int:
        if not self._rank:
            self._rank.append(generic_rank(self.generators, self.seed))
        return self._rank[0]

    def frame_rows(self) -> list:
        return [list(g.frame()) for g in self.generators]

    def frame_rref(self) -> tuple:
        """Canonical reduced row-echelon form over the adapted frame.

        Requires constant components; the canonical form makes exact span
        comparison a tuple equality."""
        rows = []
        for g in self.generators:
            row = []
            for comp in g.frame():
                if not comp.is_constant():
                    raise ValueError("frame_rref needs constant components")
                row.append(comp.constant_value())
            rows.append(row)
        return tuple(rref(rows))

    def contains_at(self, vec: Sequence[Fraction], point: dict) -> bool:
        """Pointwise membership of a constant frame 5-vector."""
        rows = eval_matrix(self.frame_rows(), point)
        base = mat_rank(rows)
        return mat_rank(rows + [list(vec)]) == base

    def to_json(self) -> dict:
        return {"generators": [g.to_json() for g in self.generators]}

    @staticmethod
    def from_json(d: dict, seed: int = DEFAULT_SEED) -> "Distribution":
        gens = tuple(VectorField.from_json(g) for g in d["generators"])
        if not gens:
            raise ValueError("a distribution needs at least one generator")
        return Distribution(gens, seed=seed)

    def __str__(self):
        return "span{" + ", ".join(str(g) for g in self.generators) + "}"


def spans_equal_at_samples(A: Distribution, B: Distribution,
                           seed: int = DEFAULT_SEED) -> bool:
    """Exact pointwise span equality at the seeded sample points."""
    ra = [g.full8() for g in A.generators]
    rb = [g.full8() for g in B.generators]
    for pt in sample_points(seed):
        ma, mb = eval_matrix(ra, pt), eval_matrix(rb, pt)
        na, nb = mat_rank(ma), mat_rank(mb)
        if na != nb or mat_rank(ma + mb) != na:
            return False
    return True


def derived_flag(D: Distribution, max_steps: int = 8) -> list:
    """Generic ranks (dim D, dim D', dim D'', ...) until two consecutive
    ranks agree or max_steps is hit.  Rank 8 is the whole tangent space and
    terminates immediately."""
    gens = list(D.generators)
    ranks = [generic_rank(gens, D.seed)]
    seen = {tuple(f.full8()) for f in gens}
    for _ in range(max_steps):
        if ranks[-1] == 8:
            break
        new = list(gens)
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                br = lie_bracket(gens[i], gens[j])
                key = tuple(br.full8())
                if not br.is_zero() and key not in seen:
                    seen.add(key)
                    new.append(br)
        gens = new
        ranks.append(generic_rank(gens, D.seed))
        if ranks[-1] == ranks[-2]:
            break
    return ranks


def vertical_part(D: Distribution) -> Distribution:
    """Intersection with span(d/dp11, d/dp12, d/dp22) at generic points.

    The horizontal frame components are eliminated exactly; rows left with
    zero horizontal part generate the intersection.  The pointwise vertical
    dimension is checked at the sample points and must be constant."""
    rows = D.frame_rows()
    work, _ = poly_echelon([list(r) for r in rows])
    vert = []
    for row in work:
        if row[0].is_zero() and row[1].is_zero():
            if not all(c.is_zero() for c in row[2:]):
                vert.append(VectorField(*row))
    symbolic_dim = len(vert)

    full = [g.full8() for g in D.generators]
    hblock = [[g.frame()[0], g.frame()[1]] for g in D.generators]
    dims = set()
    for pt in sample_points(D.seed):
        dims.add(mat_rank(eval_matrix(full, pt)) - mat_rank(eval_matrix(hblock, pt)))
    if len(dims) != 1 or dims != {symbolic_dim}:
        raise NonConstantRank(
            f"vertical rank is not constant: symbolic {symbolic_dim}, sampled {sorted(dims)}")
    return Distribution(tuple(vert), seed=D.seed)


# -- Lagrangian planes ---------------------------------------------------------


@dataclass(frozen=True)
class LagrangianPlane:
    """The horizontal isotropic plane encoded by a level-2 point."""

    base: JetPoint
    third: tuple  # (p111, p112, p122, p222) values

    def generators(self) -> tuple:
        t111, t112, t122, t222 = self.third
        return (VectorField.make(h1=1, v11=t111, v12=t112, v22=t122),
                VectorField.make(h2=1, v11=t112, v12=t122, v22=t222))

    def direction(self, nu1: Scalar, nu2: Scalar) -> VectorField:
        g1, g2 = self.generators()
        return nu1 * g1 + nu2 * g2

    def contains(self, X: VectorField) -> bool:
        rows = [list(g.frame()) for g in self.generators()]
        for row in rows:
            for c in row:
                assert c.is_constant()
        mat = [[c.constant_value() for c in row] for row in rows]
        vec = X.frame()
        if not all(c.is_constant() for c in vec):
            return False
        mat2 = mat + [[c.constant_value() for c in vec]]
        return mat_rank(mat2) == mat_rank(mat)


def lagrangian_plane(m2: JetPoint) -> LagrangianPlane:
    if m2.level != 2:
        raise ValueError("a level-2 point is required")
    return LagrangianPlane(m2.project(1), m2.fiber())
