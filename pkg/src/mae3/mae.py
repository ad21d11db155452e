"""Third-order Monge-Ampere equations and their linked distributions.

The central construction pairs a rank-3 distribution D inside the first
prolongation's contact structure with the scalar equation E_D cut out by a
5x5 determinant: the rows are three generators of D plus the two symbolic
generators of the Lagrangian plane.  Conversely, an equation of this shape
is recognized through its characteristic cone, whose lines over sampled
fiber points collapse into a 3D linear span that recovers D.

Decomposition of the general third-order Monge-Ampere polynomial uses the
frozen minor basis

    M1 = p111*p122 - p112^2
    M2 = p111*p222 - p112*p122
    M3 = p112*p222 - p122^2

with the contraction A . (M3, -M2, M1), so the A-vector coincides with the
third row (R, S, T) of the 3x3 determinant normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (FIBER_COORDS, LEVEL1_COORDS, MultiPoly, determinant,
                      mat_rank, parse_expr, poly_echelon, poly_kernel,
                      rank_kernel, rref)
from .jet import (DEFAULT_SEED, XI1, XI2, Distribution, JetPoint,
                  sample_points, vertical_part)
from .metasympl import DegenerateHorizontal, NotDecomposable, \
    orthogonal_complement_pair
from .symbol_cone import (BinaryCubic, InsufficientSamples, ZeroSymbol,
                          all_roots, characteristic_lines, cone_sample,
                          discriminant, distinguished_coordinate,
                          is_strong_characteristic, symbol)


class RankError(ValueError):
    """The distribution does not have generic rank 3."""


class TrivialEquation(ValueError):
    """The construction produced the zero polynomial."""


class NormalFormError(ValueError):
    """The distribution cannot be put in the required normal form."""


class NotMAE(ValueError):
    """The polynomial is not of Monge-Ampere shape."""


class NotFullyDecomposable(ValueError):
    """The symbol does not factor into three real linear factors."""


class NotGoursat(ValueError):
    """No 3D linear span of characteristic lines matches the equation."""


class DiscriminantVanishes(ValueError):
    """The reconstruction certificate degenerates at every probe."""


def _as_mp(v) -> MultiPoly:
    if isinstance(v, MultiPoly):
        return v
    if isinstance(v, str):
        return parse_expr(v)
    return MultiPoly.const(v)


@dataclass(frozen=True)
class ThirdOrderPDE:
    """A scalar equation F = 0 with F polynomial in the 12 jet coordinates."""

    poly: MultiPoly

    def __post_init__(self):
        if self.poly.is_zero():
            raise TrivialEquation("zero polynomial")

    @classmethod
    def from_string(cls, text: str) -> "ThirdOrderPDE":
        return cls(parse_expr(text))

    def __str__(self):
        return str(self.poly)


def _pde_poly(F) -> MultiPoly:
    if isinstance(F, ThirdOrderPDE):
        return F.poly
    return _as_mp(F)


# frozen minor basis of the 2x3 matrix of third derivatives
M1 = parse_expr("p111*p122 - p112^2")
M2 = parse_expr("p111*p222 - p112*p122")
M3 = parse_expr("p112*p222 - p122^2")
_FIBER_MONOS = tuple(MultiPoly.coord(c) for c in FIBER_COORDS)


def _normalize_pde(det: MultiPoly) -> MultiPoly:
    """Divide out the rational content; make the graded-lex leading
    coefficient positive."""
    if det.is_zero():
        return det
    det = det.primitive_part()
    if det.leading()[1] < 0:
        det = -det
    return det


def _three_generator_rows(D: Distribution):
    rows, _ = poly_echelon([list(g.frame()) for g in D.generators])
    return [r for r in rows if any(not c.is_zero() for c in r)]


def build_ED(D: Distribution) -> ThirdOrderPDE:
    """The equation of planes meeting D, as a 5x5 determinant.

    Rows: three generators of D, then the two symbolic plane generators.
    The result is content-normalized with positive leading coefficient."""
    if D.generic_rank != 3:
        raise RankError(f"generic rank is {D.generic_rank}, need 3")
    rows = _three_generator_rows(D)
    mat = rows + [list(XI1.frame()), list(XI2.frame())]
    det = determinant(mat)
    if det.is_zero():
        raise TrivialEquation(
            "the distribution meets every plane: zero determinant")
    return ThirdOrderPDE(_normalize_pde(det))


@dataclass(frozen=True)
class BoillatForm:
    """F = A.(M3,-M2,M1) + B.(p111,p112,p122,p222) + C."""

    A: tuple
    B: tuple
    C: MultiPoly

    def reconstruct(self) -> MultiPoly:
        F = self.A[0] * M3 - self.A[1] * M2 + self.A[2] * M1
        for b, mono in zip(self.B, _FIBER_MONOS):
            F = F + b * mono
        return F + self.C

    def is_quasilinear(self) -> bool:
        return all(a.is_zero() for a in self.A)

    def to_json(self):
        return {"A": [str(a) for a in self.A],
                "B": [str(b) for b in self.B],
                "C": str(self.C)}


def boillat_decompose(F) -> BoillatForm:
    """Split F into minor, affine and constant parts; the split is unique.

    Raises NotMAE, naming an offending monomial, when F has any fiber
    monomial outside the span of {1, the four coordinates, the minors}."""
    poly = _pde_poly(F)
    parts = poly.split_by_fiber()
    zero = MultiPoly.zero()
    A = (parts.get((0, 1, 0, 1), zero),       # p112*p222 coefficient
         -parts.get((1, 0, 0, 1), zero),      # p111*p222 carries -A2
         parts.get((1, 0, 1, 0), zero))       # p111*p122 coefficient
    residual = poly - (A[0] * M3 - A[1] * M2 + A[2] * M1)
    rparts = residual.split_by_fiber()
    B = []
    C = rparts.get((0, 0, 0, 0), zero)
    unit = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    for e in unit:
        B.append(rparts.get(e, zero))
    for e in sorted(rparts, reverse=True):
        if e not in unit and e != (0, 0, 0, 0):
            mono = MultiPoly({(0,) * 8 + e: Fraction(1)})
            raise NotMAE(f"monomial outside the Monge-Ampere span: {mono}")
    return BoillatForm(A=A, B=tuple(B), C=C)


def proportional_over_base(F: MultiPoly, G: MultiPoly) -> bool:
    """True iff F and G agree up to a factor depending only on the
    level-<=1 coordinates, by cross-multiplying fiber coefficient vectors."""
    fs, gs = F.split_by_fiber(), G.split_by_fiber()
    if not fs or not gs:
        return not fs and not gs
    keys = sorted(set(fs) | set(gs))
    zero = MultiPoly.zero()
    ref = next((k for k in keys
                if not fs.get(k, zero).is_zero()
                and not gs.get(k, zero).is_zero()), None)
    if ref is None:
        return False
    fr, gr = fs[ref], gs[ref]
    return all(fs.get(k, zero) * gr == fr * gs.get(k, zero) for k in keys)


# -- 2-forms on the first prolongation ------------------------------------------

COFRAME = ("dx1", "dx2", "du", "dp1", "dp2", "dp11", "dp12", "dp22")

# pullback of each coframe element to a plane with third-order coordinates
_PLANE_PULLBACK = tuple(
    (parse_expr(a), parse_expr(b)) for a, b in (
        ("1", "0"), ("0", "1"), ("p1", "p2"), ("p11", "p12"), ("p12", "p22"),
        ("p111", "p112"), ("p112", "p122"), ("p122", "p222")))


@dataclass(frozen=True)
class TwoForm:
    """Antisymmetric 8x8 coefficient table over the coframe
    (dx1, dx2, du, dp1, dp2, dp11, dp12, dp22)."""

    entries: tuple

    def __post_init__(self):
        if len(self.entries) != 8 or any(len(r) != 8 for r in self.entries):
            raise ValueError("need an 8x8 table")
        for i in range(8):
            for j in range(8):
                if self.entries[i][j] != -self.entries[j][i]:
                    raise ValueError(f"not antisymmetric at ({i},{j})")

    @classmethod
    def from_wedge(cls, alpha, beta) -> "TwoForm":
        a = [_as_mp(v) for v in alpha]
        b = [_as_mp(v) for v in beta]
        if len(a) != 8 or len(b) != 8:
            raise ValueError("covectors have 8 coframe components")
        rows = tuple(tuple(a[i] * b[j] - a[j] * b[i] for j in range(8))
                     for i in range(8))
        return cls(rows)

    @classmethod
    def from_pairs(cls, pairs) -> "TwoForm":
        """Build from {(i, j): coefficient} with i < j indexing COFRAME."""
        zero = MultiPoly.zero()
        table = [[zero] * 8 for _ in range(8)]
        for (i, j), v in pairs.items():
            if not 0 <= i < j < 8:
                raise ValueError("pairs need 0 <= i < j < 8")
            v = _as_mp(v)
            table[i][j] = table[i][j] + v
            table[j][i] = table[j][i] - v
        return cls(tuple(tuple(r) for r in table))


def build_E_omega(w: TwoForm) -> ThirdOrderPDE:
    """Restrict the 2-form to the plane of a variable third-order point;
    the coefficient of dx1^dx2 is the equation."""
    F = MultiPoly.zero()
    for i in range(8):
        si = _PLANE_PULLBACK[i]
        for j in range(i + 1, 8):
            wij = w.entries[i][j]
            if wij.is_zero():
                continue
            sj = _PLANE_PULLBACK[j]
            F = F + wij * (si[0] * sj[1] - si[1] * sj[0])
    if F.is_zero():
        raise TrivialEquation("the form restricts to zero on every plane")
    return ThirdOrderPDE(F)


def annihilator_covectors(D: Distribution):
    """Two covectors over (dx1, dx2, dp11, dp12, dp22) vanishing on D."""
    rows = _three_generator_rows(D)
    kern = poly_kernel(rows, 5)
    if len(kern) != 2:
        raise RankError(f"annihilator has rank {len(kern)}, need 2")
    return tuple(tuple(v) for v in kern)


def lift_covector(rho) -> tuple:
    """Extend a 5-component covector by zero du, dp1, dp2 slots."""
    z = MultiPoly.zero()
    r = [_as_mp(v) for v in rho]
    return (r[0], r[1], z, z, z, r[2], r[3], r[4])


def kernel_in_c1(rho1, rho2) -> Distribution:
    """Common kernel of two 8-component covectors inside the prolonged
    contact distribution, in adapted-frame components."""
    rows = []
    for rho in (rho1, rho2):
        r = [_as_mp(v) for v in rho]
        on_d1 = r[0] + parse_expr("p1") * r[2] + parse_expr("p11") * r[3] \
            + parse_expr("p12") * r[4]
        on_d2 = r[1] + parse_expr("p2") * r[2] + parse_expr("p12") * r[3] \
            + parse_expr("p22") * r[4]
        rows.append([on_d1, on_d2, r[5], r[6], r[7]])
    kern = poly_kernel(rows, 5)
    if len(kern) != 3:
        raise RankError(f"kernel rank {len(kern)} in the contact frame, need 3")
    return Distribution.make(*[tuple(v) for v in kern])


# -- quasi-linear normal form ----------------------------------------------------


def quasilinear_coefficients(D: Distribution) -> BoillatForm:
    """Affine coefficients (A=0, B, C) of the equation of a distribution
    with vertical rank 2, from the 2x2 minors of its vertical block.

    Generators already split as one horizontal plus two verticals are used
    as given, so B carries their scale; mixed bases go through the echelon
    first."""
    if D.generic_rank != 3:
        raise RankError(f"generic rank is {D.generic_rank}, need 3")
    if len(vertical_part(D).generators) != 2:
        raise NormalFormError("vertical rank is not 2")
    given_h = [g for g in D.generators
               if not (g.h1.is_zero() and g.h2.is_zero())]
    given_v = [g for g in D.generators if g.h1.is_zero() and g.h2.is_zero()]
    if len(given_h) == 1 and len(given_v) == 2:
        horiz = [list(given_h[0].frame())]
        verts = [list(g.frame()) for g in given_v]
    else:
        rows = _three_generator_rows(D)
        horiz = [r for r in rows if not (r[0].is_zero() and r[1].is_zero())]
        verts = [r for r in rows if r[0].is_zero() and r[1].is_zero()]
    if len(horiz) != 1 or len(verts) != 2:
        raise NormalFormError(f"horizontal rank is {len(horiz)}, need 1")
    a, b, f11, f12, f22 = horiz[0]
    (r1, s1, t1) = verts[0][2:]
    (r2, s2, t2) = verts[1][2:]
    m_rs = r1 * s2 - r2 * s1
    m_rt = r1 * t2 - r2 * t1
    m_st = s1 * t2 - s2 * t1
    B = (-(a * m_st), -(b * m_st) + a * m_rt, b * m_rt - a * m_rs,
         -(b * m_rs))
    C = determinant([[f11, f12, f22], [r1, s1, t1], [r2, s2, t2]])
    zero = MultiPoly.zero()
    return BoillatForm(A=(zero, zero, zero), B=B, C=C)


# -- Goursat normal form ---------------------------------------------------------


@dataclass(frozen=True)
class GoursatForm:
    """3x3 determinant normal form: rows (p111-f111, p112-f112, p122-f122),
    (p112-f211, p122-f212, p222-f222), (R, S, T)."""

    f: tuple  # (f111, f112, f122, f211, f212, f222)
    A: tuple  # (R, S, T)
    reduced: bool = False

    def to_pde(self) -> ThirdOrderPDE:
        f111, f112, f122, f211, f212, f222 = self.f
        row1 = [parse_expr("p111") - f111, parse_expr("p112") - f112,
                parse_expr("p122") - f122]
        row2 = [parse_expr("p112") - f211, parse_expr("p122") - f212,
                parse_expr("p222") - f222]
        det = determinant([row1, row2, list(self.A)])
        if det.is_zero():
            raise TrivialEquation("zero determinant form")
        return ThirdOrderPDE(_normalize_pde(det))

    @classmethod
    def from_distribution(cls, D: Distribution) -> "GoursatForm":
        """Normal form of a rank-3 distribution with vertical rank 1."""
        if D.generic_rank != 3:
            raise RankError(f"generic rank is {D.generic_rank}, need 3")
        vert = vertical_part(D)
        if len(vert.generators) != 1:
            raise NormalFormError(
                f"vertical rank is {len(vert.generators)}, need 1")
        R, S, T = vert.generators[0].frame()[2:]
        rows = _three_generator_rows(D)
        horiz = [r for r in rows if not (r[0].is_zero() and r[1].is_zero())]
        if len(horiz) != 2:
            raise NormalFormError(f"horizontal rank is {len(horiz)}, need 2")
        x1 = _solve_identity_row(horiz, 0)
        x2 = _solve_identity_row(horiz, 1)
        f = [x1[2], x1[3], x1[4], x2[2], x2[3], x2[4]]
        reduced = False
        det = R * T - S * S
        if not det.is_zero():
            rhs1 = f[3] - f[1]
            rhs2 = f[4] - f[2]
            alpha = _exact_divide(-(S * rhs1) + R * rhs2, det)
            beta = _exact_divide(S * rhs2 - T * rhs1, det)
            if alpha is not None and beta is not None:
                f = [f[0] + alpha * R, f[1] + alpha * S, f[2] + alpha * T,
                     f[3] + beta * R, f[4] + beta * S, f[5] + beta * T]
                assert f[1] == f[3] and f[2] == f[4]
                reduced = True
        return cls(f=tuple(f), A=(R, S, T), reduced=reduced)


def _exact_divide(num: MultiPoly, den: MultiPoly):
    if den.is_constant():
        return num * (Fraction(1) / den.constant_value())
    return num.try_divide(den)


def _solve_identity_row(horiz, col):
    """Combination of the two horizontal rows with h-part the unit vector
    `col`, entries divided exactly."""
    (a1, b1), (a2, b2) = (horiz[0][:2], horiz[1][:2])
    det = a1 * b2 - a2 * b1
    if det.is_zero():
        raise NormalFormError("degenerate horizontal block")
    if col == 0:
        coeffs = (b2, -b1)
    else:
        coeffs = (-a2, a1)
    row = [coeffs[0] * x + coeffs[1] * y
           for x, y in zip(horiz[0], horiz[1])]
    out = []
    for entry in row:
        q = _exact_divide(entry, det)
        if q is None:
            raise NormalFormError(
                "horizontal block is not invertible over polynomials")
        out.append(q)
    return out


# -- fully parabolic family ------------------------------------------------------


def fully_parabolic_pde(k) -> ThirdOrderPDE:
    """Equation whose symbol is the cube of a single linear factor."""
    k = _as_mp(k)
    F = parse_expr("p111") + 3 * k * parse_expr("p112") \
        + 3 * k * k * parse_expr("p122") + k * k * k * parse_expr("p222")
    return ThirdOrderPDE(F)


def fully_parabolic_distribution(k) -> Distribution:
    """The unique rank-3 span attached to the cube-symbol equation."""
    k = _as_mp(k)
    one = MultiPoly.const(1)
    zero = MultiPoly.zero()
    return Distribution.make(
        (one, k, zero, zero, zero),
        (zero, zero, -2 * k, one, zero),
        (zero, zero, -3 * k * k, k, one))


# -- probe schedule --------------------------------------------------------------


def probe_schedule(seed: int = DEFAULT_SEED, extra: int = 3, first=None):
    """Deterministic base points: the origin, small constant levels,
    then seeded random points.  A caller-supplied point goes first."""
    if first is not None:
        yield first.project(1)
    yield JetPoint.origin(1)
    for v in (1, -1, 2, Fraction(1, 2)):
        yield JetPoint(1, {c: Fraction(v) for c in LEVEL1_COORDS})
    for pt in sample_points(seed, extra):
        yield pt.project(1)


# -- classification --------------------------------------------------------------

QUASI_LINEAR = "quasi-linear"
FULLY_NONLINEAR_GOURSAT = "fully-nonlinear-goursat"
MAE_NOT_GOURSAT = "mae-not-goursat"
NOT_MAE = "not-mae"


@dataclass(frozen=True)
class GoursatDetection:
    """Outcome of the linear-component classification."""

    kind: str
    boillat: object = None          # BoillatForm or None
    distribution: object = None     # matched span or None
    complements: object = None      # (D2, D3) for quasi-linear, when real
    matches: tuple = ()             # every span rebuilding the equation
    pointwise: bool = False
    base: object = None             # probe point used
    notes: tuple = ()


def detect_goursat(F, seed: int = DEFAULT_SEED, base=None) -> GoursatDetection:
    """Classify an equation by the linear component of its cone.

    First the polynomial must decompose in the minor basis; then the cone is
    sampled over a workable base point and every covering 3D span is tested
    against the equation by exact proportionality of the rebuilt
    determinant.  Vertical rank of the matched span separates quasi-linear
    (rank 2) from the determinant normal form (rank 1)."""
    poly = _pde_poly(F)
    notes = []
    try:
        bf = boillat_decompose(poly)
    except NotMAE as err:
        return GoursatDetection(kind=NOT_MAE, notes=(str(err),))
    cs = None
    hint, base = base, None
    for cand in probe_schedule(seed, first=hint):
        try:
            cs = cone_sample(poly, cand, seed=seed)
            base = cand
            break
        except (InsufficientSamples, ZeroSymbol) as err:
            notes.append(f"probe {sorted(cand.values.items())}: {err}")
    if cs is None:
        notes.append("no workable probe point")
        return GoursatDetection(kind=MAE_NOT_GOURSAT, boillat=bf,
                                notes=tuple(notes))
    poly_at_base = poly.subs(
        {c: MultiPoly.const(v) for c, v in base.values.items()})
    seen = set()
    candidates = []
    if cs.linear_component is not None:
        candidates.append(cs.linear_component)
    candidates.extend(d for d, _ in cs.components)
    winner = None
    exact_matches = []
    for D in candidates:
        key = D.frame_rref()
        if key in seen:
            continue
        seen.add(key)
        try:
            E = build_ED(D)
        except (RankError, TrivialEquation) as err:
            notes.append(f"span rejected: {err}")
            continue
        pointwise = False
        if not proportional_over_base(E.poly, poly):
            if proportional_over_base(E.poly, poly_at_base):
                pointwise = True
            else:
                continue
        vrank = len(vertical_part(D).generators)
        if vrank not in (1, 2):
            notes.append(f"span with vertical rank {vrank} skipped")
            continue
        # distinct spans can rebuild the same determinant, so the scan runs
        # to the end and keeps every exact match, not just the first
        if not pointwise:
            exact_matches.append((D, vrank))
        if winner is None:
            winner = (D, vrank, pointwise)
            if pointwise:
                notes.append("match is pointwise at the probe")
    if winner is None:
        return GoursatDetection(kind=MAE_NOT_GOURSAT, boillat=bf, base=base,
                                notes=tuple(notes))
    D, vrank, pointwise = winner
    matches = tuple(g for g, r in exact_matches if r == vrank)
    if D.frame_rref() not in {g.frame_rref() for g in matches}:
        matches = (D,) + matches
    if vrank == 2:
        comp = None
        try:
            comp = orthogonal_complement_pair(D)
        except (NotDecomposable, DegenerateHorizontal) as err:
            notes.append(f"no real complement pair: {err}")
        return GoursatDetection(kind=QUASI_LINEAR, boillat=bf,
                                distribution=D, complements=comp,
                                matches=matches, pointwise=pointwise,
                                base=base, notes=tuple(notes))
    return GoursatDetection(kind=FULLY_NONLINEAR_GOURSAT, boillat=bf,
                            distribution=D, matches=matches,
                            pointwise=pointwise, base=base,
                            notes=tuple(notes))


# -- orthogonal triples ----------------------------------------------------------


@dataclass(frozen=True)
class OrthogonalTriple:
    """Three pairwise orthogonal rank-3 spans rebuilding the equation."""

    distributions: tuple
    roots: tuple       # (lam, mu) per slot, repeated with multiplicity
    inexact: bool = False
    pointwise: bool = False
    base: object = None


def _on_equation_fiber(poly: MultiPoly, base: JetPoint):
    """A rational fiber point over `base` on the zero set, or None."""
    dist = distinguished_coordinate(poly)
    if dist is None:
        # try the canonical fiber points directly
        for fib in ((0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0),
                    (0, 0, 1, 0), (0, 0, 0, 1)):
            vals = dict(base.values)
            vals.update({c: Fraction(v) for c, v in zip(FIBER_COORDS, fib)})
            if poly.eval_at(vals) == 0:
                return tuple(vals[c] for c in FIBER_COORDS)
        return None
    others = [c for c in FIBER_COORDS if c != dist]
    for fib in ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)):
        vals = dict(base.values)
        vals.update({c: Fraction(v) for c, v in zip(others, fib)})
        vals[dist] = Fraction(0)
        coeff = poly.derivative(dist).eval_at(vals)
        rest = poly.eval_at(vals)
        if coeff == 0:
            if rest == 0:
                return tuple(vals[c] for c in FIBER_COORDS)
            continue
        vals[dist] = -rest / coeff
        return tuple(vals[c] for c in FIBER_COORDS)
    return None


def decompose_orthogonal_triple(F, seed: int = DEFAULT_SEED,
                                base=None) -> OrthogonalTriple:
    """Split a decomposable symbol into its three characteristic spans.

    Each root (lam, mu) of the symbol cubic yields the span of the matching
    plane line at a rational point of the zero set plus the orthogonal
    complement of the root's quadratic cofactor in the vertical plane.
    Repeated roots repeat their span; a negative discriminant has no real
    triple."""
    poly = _pde_poly(F)
    bf = boillat_decompose(poly)
    grad = tuple(poly.derivative(c) for c in FIBER_COORDS)
    pointwise = not all(g.is_constant() for g in grad)
    hint, base = base, None
    fiber = None
    if not pointwise:
        abcd = tuple(g.constant_value() for g in grad)
        for cand in probe_schedule(seed, first=hint):
            fiber = _on_equation_fiber(poly, cand)
            if fiber is not None:
                base = cand
                break
        if fiber is None:
            raise NotFullyDecomposable("no rational point on the equation")
    else:
        for cand in probe_schedule(seed, first=hint):
            fib = _on_equation_fiber(poly, cand)
            if fib is None:
                continue
            pt = JetPoint(2, {**cand.values,
                              **dict(zip(FIBER_COORDS, fib))})
            try:
                cub = symbol(poly, pt)
            except ZeroSymbol:
                continue
            abcd = cub.coeffs()
            base, fiber = cand, fib
            break
        else:
            raise NotFullyDecomposable("no workable probe point")
    cubic = BinaryCubic(*abcd)
    if discriminant(cubic) < 0:
        raise NotFullyDecomposable(
            f"negative discriminant {discriminant(cubic)}")
    roots = all_roots(cubic)
    inexact = any(not r[3] for r in roots)
    expanded = []
    for lam, mu, mult, exact in roots:
        if not exact:
            lam, mu = Fraction(lam).limit_denominator(10 ** 12), \
                Fraction(mu).limit_denominator(10 ** 12)
        expanded.extend([(lam, mu)] * mult)
    t111, t112, t122, t222 = fiber
    a, b, c, d = abcd
    dists = []
    for lam, mu in expanded:
        v = (lam, mu, lam * t111 + mu * t112, lam * t112 + mu * t122,
             lam * t122 + mu * t222)
        # the vertical plane of a factor is the complement of its quadratic
        # cofactor (q0, q1, q2); synthetic division keeps approximate roots
        # workable where an exactness assertion would not be
        if lam != 0:
            q0 = a / lam
            q1 = (b - mu * q0) / lam
            q2 = (c - mu * q1) / lam
        else:
            q0, q1, q2 = b / mu, c / mu, d / mu
        _, vert = rank_kernel([[q0, q1, q2]])
        gens = [v] + [(Fraction(0), Fraction(0)) + tuple(r) for r in vert]
        dists.append(Distribution.make(*gens, seed=seed))
    return OrthogonalTriple(distributions=tuple(dists),
                            roots=tuple(expanded), inexact=inexact,
                            pointwise=pointwise, base=base)


# -- reconstruction --------------------------------------------------------------


@dataclass(frozen=True)
class RecoveredDistribution:
    """A recovered span with its annihilator pair and certificates."""

    distribution: Distribution
    annihilators: tuple   # two covectors over (dx1, dx2, dp11, dp12, dp22)
    certificate: tuple    # the same pair as a rank-2 matrix
    delta: MultiPoly      # degeneracy certificate; must not vanish identically
    pointwise: bool = False
    base: object = None
    notes: tuple = ()


def recover_distribution(F, seed: int = DEFAULT_SEED,
                         base=None) -> RecoveredDistribution:
    """Rebuild the rank-3 span from the characteristic lines of F.

    The equation must be affine in some third-order coordinate with a
    coefficient that is nonzero at the probe; the span of the pooled lines
    must be exactly 3D and rebuild an equation proportional to F."""
    poly = _pde_poly(F)
    if distinguished_coordinate(poly) is None:
        raise NotGoursat(
            "the equation is affine in no third-order coordinate")
    notes = []
    cs = None
    hint, base = base, None
    for cand in probe_schedule(seed, first=hint):
        try:
            cs = cone_sample(poly, cand, seed=seed)
            base = cand
            break
        except (InsufficientSamples, ZeroSymbol) as err:
            notes.append(f"probe {sorted(cand.values.items())}: {err}")
    if cs is None:
        raise NotGoursat("no workable probe point")
    poly_at_base = poly.subs(
        {c: MultiPoly.const(v) for c, v in base.values.items()})
    seen = set()
    match = None
    pointwise = False
    candidates = ([cs.linear_component] if cs.linear_component else []) \
        + [d for d, _ in cs.components]
    for D in candidates:
        key = D.frame_rref()
        if key in seen:
            continue
        seen.add(key)
        try:
            E = build_ED(D)
        except (RankError, TrivialEquation):
            continue
        if proportional_over_base(E.poly, poly):
            match = D
            break
        if proportional_over_base(E.poly, poly_at_base):
            match, pointwise = D, True
            notes.append("match is pointwise at the probe")
            break
    if match is None:
        raise NotGoursat(
            "the characteristic lines span no matching 3D component")
    rho1, rho2 = annihilator_covectors(match)
    cert = (rho1, rho2)
    if mat_rank([[_c(v) for v in rho1], [_c(v) for v in rho2]]) != 2:
        raise NotGoursat("annihilator pair is degenerate")

    def _pair(rho, gen):
        total = MultiPoly.zero()
        for c, comp in zip(rho, gen.frame()):
            total = total + _as_mp(c) * comp
        return total

    # discriminant of the linear system in (root, solved coordinate), for
    # the two presentations where the third-order coordinate sits in a
    # single plane-generator slot; either may degenerate, not both
    k, h = rho1, rho2
    deltas = (_as_mp(k[2]) * _pair(h, XI2) - _as_mp(h[2]) * _pair(k, XI2),
              _as_mp(k[4]) * _pair(h, XI1) - _as_mp(h[4]) * _pair(k, XI1))
    delta = None
    for cand_delta in deltas:
        if any(cand_delta.eval_at(pt) != 0 for pt in cs.used_points):
            delta = cand_delta
            break
    if delta is None:
        raise DiscriminantVanishes(
            "the reconstruction certificate vanishes at every probe")
    return RecoveredDistribution(distribution=match, annihilators=(rho1, rho2),
                                 certificate=cert, delta=delta,
                                 pointwise=pointwise, base=base,
                                 notes=tuple(notes))


def _c(v):
    v = _as_mp(v)
    if v.is_constant():
        return v.constant_value()
    raise NotGoursat("polynomial annihilator entries at the certificate step")


# -- recoverability --------------------------------------------------------------


@dataclass(frozen=True)
class RecoverabilityReport:
    ok: bool
    witness: object = None   # (point, line) on failure
    checked: int = 0
    notes: tuple = ()


def check_recoverable(F, seed: int = DEFAULT_SEED,
                      max_points: int = 6, base=None) -> RecoverabilityReport:
    """Verify that every plane through a characteristic line stays on the
    equation, at sampled points; the converse inclusion is by construction."""
    poly = _pde_poly(F)
    boillat_decompose(poly)  # precondition: Monge-Ampere shape
    notes = []
    checked = 0
    for cand in probe_schedule(seed, first=base):
        if checked >= max_points:
            break
        fiber = _on_equation_fiber(poly, cand)
        if fiber is None:
            continue
        pt = JetPoint(2, {**cand.values, **dict(zip(FIBER_COORDS, fiber))})
        try:
            lines = characteristic_lines(poly, pt)
        except ZeroSymbol:
            notes.append(f"singular point skipped over "
                         f"{sorted(cand.values.items())}")
            continue
        checked += 1
        for ln in lines:
            if ln.inexact:
                notes.append("inexact line skipped")
                continue
            if not is_strong_characteristic(poly, ln, pt):
                return RecoverabilityReport(ok=False, witness=(pt, ln),
                                            checked=checked,
                                            notes=tuple(notes))
    return RecoverabilityReport(ok=True, checked=checked, notes=tuple(notes))
