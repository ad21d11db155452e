"""Symbols of third-order scalar PDEs and the sampled characteristic cone.

The symbol at a second-prolongation point is the binary cubic with
coefficients (dF/dp111, dF/dp112, dF/dp122, dF/dp222).  Its linear factors
xi1 + k*xi2 correspond to the characteristic directions: the factor with
coefficients (lam, mu) spans the line lam*xi1 + mu*xi2 inside the plane of
the point, where xi_i are the plane generators.  A cubic with leading
coefficient zero carries the factor xi2, treated as the root at infinity.

Root bookkeeping is exact over the rationals wherever possible: repeated
roots are extracted through a gcd square-free step, simple rational roots by
the rational root theorem, and only genuinely irrational roots fall back to
floating point, flagged `inexact` so exactness-sensitive callers can reject
them.

The cone sampler probes the fiber over a first-prolongation point with the
canonical assignments (0,0,0), (1,0,0), (0,1,0), (0,0,1) to the free fiber
coordinates plus seeded random rationals, collects the characteristic lines,
and searches for 3D spans that contain at least one line over every probe;
such spans are the candidate linear components of the cone.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .algebra import FIBER_COORDS, MultiPoly, mat_rank, rref
from .jet import DEFAULT_SEED, Distribution, JetPoint

RESIDUAL_TOL = 1e-12
RECONSTRUCT_TOL = 1e-9


class ZeroSymbol(ValueError):
    """All four symbol coefficients vanish (singular point)."""


class NotOnEquation(ValueError):
    """The point does not satisfy F = 0."""


class LineNotInPlane(ValueError):
    """The line does not lie in the plane of the given point."""


class InsufficientSamples(ValueError):
    """Fewer than four usable fiber points."""


@dataclass(frozen=True)
class BinaryCubic:
    """a*xi1^3 + b*xi1^2*xi2 + c*xi1*xi2^2 + d*xi2^3."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def coeffs(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def is_zero(self) -> bool:
        return not any(self.coeffs())


@dataclass(frozen=True)
class FactorSplit:
    """linear (lam, mu) and quadratic (q0, q1, q2) with
    cubic = (lam*xi1 + mu*xi2) * (q0*xi1^2 + q1*xi1*xi2 + q2*xi2^2)."""

    linear: tuple
    quadratic: tuple
    inexact: bool = False


@dataclass(frozen=True)
class CharLine:
    """A characteristic line: projective 5-vector in the adapted frame,
    normalized so its first nonzero coordinate is 1."""

    coords: tuple
    nu: tuple  # the direction (nu1, nu2) in the plane basis
    mult: int = 1
    factor: str = "linear"  # which symbol factor produced it
    inexact: bool = False

    def __str__(self):
        return "[" + ", ".join(str(c) for c in self.coords) + "]"


def symbol(F: MultiPoly, m2: JetPoint) -> BinaryCubic:
    """Fiber gradient of F at a level-2 point."""
    if m2.level != 2:
        raise ValueError("the symbol is taken at a level-2 point")
    vals = tuple(F.derivative(c).eval_at(m2) for c in FIBER_COORDS)
    cub = BinaryCubic(*vals)
    if cub.is_zero():
        raise ZeroSymbol(f"symbol vanishes at {m2.values}")
    return cub


def char_poly(F: MultiPoly, m2: JetPoint) -> tuple:
    """Coefficients of the direction cubic in the basis
    (nu1^3, nu1^2*nu2, nu1*nu2^2, nu2^3): the alternating sum gives
    (d, -c, b, -a) for symbol (a, b, c, d)."""
    s = symbol(F, m2)
    return (s.d, -s.c, s.b, -s.a)


def discriminant(c: BinaryCubic) -> Fraction:
    a, b, cc, d = c.coeffs()
    return (18 * a * b * cc * d - 4 * b ** 3 * d + b ** 2 * cc ** 2
            - 4 * a * cc ** 3 - 27 * a ** 2 * d ** 2)


THREE_DISTINCT = "ThreeDistinct"
REPEATED_LINEAR = "RepeatedLinear"
ONE_REAL_IRREDUCIBLE_QUADRATIC = "OneRealIrreducibleQuadratic"


def discriminant_classify(c: BinaryCubic) -> str:
    if c.is_zero():
        raise ValueError("zero cubic has no class")
    disc = discriminant(c)
    if disc > 0:
        return THREE_DISTINCT
    if disc == 0:
        return REPEATED_LINEAR
    return ONE_REAL_IRREDUCIBLE_QUADRATIC


# -- exact root machinery ------------------------------------------------------


def _sqrt_fraction(x: Fraction):
    if x < 0:
        return None
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def _rational_root(coeffs: list):
    """One rational root of a polynomial with Fraction coefficients
    (constant term first), or None.  Candidates per the rational root theorem."""
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    ic = [int(c * lcm) for c in coeffs]
    if ic[0] == 0:
        return Fraction(0)
    def divisors(n):
        n = abs(n)
        out = []
        i = 1
        while i * i <= n:
            if n % i == 0:
                out.append(i)
                out.append(n // i)
            i += 1
        return sorted(set(out))
    lead = ic[-1]
    cands = []
    for p in divisors(ic[0]):
        for q in divisors(lead):
            cands.append(Fraction(p, q))
            cands.append(Fraction(-p, q))
    cands = sorted(set(cands), key=lambda r: (abs(r), r))
    for r in cands:
        val = Fraction(0)
        for c in reversed(coeffs):
            val = val * r + c
        if val == 0:
            return r
    return None


def _cubic_real_roots_numeric(q3, q2, q1, q0):
    """Real roots of q3 k^3 + q2 k^2 + q1 k + q0 (q3 != 0) as floats,
    ascending.  Monotone-interval bisection plus Newton polish."""
    a, b, c, d = (float(q3), float(q2), float(q1), float(q0))

    def f(x):
        return ((a * x + b) * x + c) * x + d

    def fp(x):
        return (3 * a * x + 2 * b) * x + c

    bound = 1.0 + max(abs(b), abs(c), abs(d)) / abs(a)
    # critical points split the line into monotone intervals
    crit = []
    disc = 4 * b * b - 12 * a * c
    if disc > 0:
        r = disc ** 0.5
        crit = sorted(((-2 * b - r) / (6 * a), (-2 * b + r) / (6 * a)))
    xs = [-bound] + crit + [bound]
    roots = []
    for lo, hi in zip(xs, xs[1:]):
        flo, fhi = f(lo), f(hi)
        if flo == 0.0:
            roots.append(lo)
            continue
        if flo * fhi > 0:
            continue
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            fm = f(mid)
            if fm == 0.0:
                break
            if flo * fm < 0:
                hi = mid
            else:
                lo, flo = mid, fm
        x = 0.5 * (lo + hi)
        for _ in range(8):  # Newton polish
            d1 = fp(x)
            if d1 == 0:
                break
            x -= f(x) / d1
        if abs(f(x)) < RESIDUAL_TOL * max(1.0, abs(a), abs(b), abs(c), abs(d)):
            roots.append(x)
    out = []
    for r in sorted(roots):
        if not out or abs(r - out[-1]) > 1e-9:
            out.append(r)
    return out


def all_roots(c: BinaryCubic) -> list:
    """Projective roots of the cubic as tuples (lam, mu, mult, exact).

    (lam, mu) are the coefficients of the factor lam*xi1 + mu*xi2; finite
    roots are (1, k), the root at infinity is (0, 1).  Exact roots are
    Fractions, inexact ones floats.  Sorted finite-first by (|k|, k)."""
    a, b, cc, d = c.coeffs()
    if c.is_zero():
        raise ZeroSymbol("zero cubic")
    roots = []
    if a == 0:
        if b == 0:
            if cc == 0:
                return [(Fraction(0), Fraction(1), 3, True)]
            roots.append((Fraction(0), Fraction(1), 2, True))
            roots.append((Fraction(1), d / cc, 1, True))
        else:
            roots.append((Fraction(0), Fraction(1), 1, True))
            # quadratic b*xi1^2 + cc*xi1*xi2 + d*xi2^2: k from b k^2 - cc k + d
            disc = cc * cc - 4 * b * d
            if disc == 0:
                roots.append((Fraction(1), cc / (2 * b), 2, True))
            elif disc > 0:
                r = _sqrt_fraction(disc)
                if r is not None:
                    roots.append((Fraction(1), (cc - r) / (2 * b), 1, True))
                    roots.append((Fraction(1), (cc + r) / (2 * b), 1, True))
                else:
                    fr = disc ** 0.5 if isinstance(disc, float) else float(disc) ** 0.5
                    roots.append((1.0, (float(cc) - fr) / (2 * float(b)), 1, False))
                    roots.append((1.0, (float(cc) + fr) / (2 * float(b)), 1, False))
            # disc < 0: the quadratic factor has no real lines
    else:
        # monic k-polynomial with roots the k of the factors xi1 + k*xi2
        q = [-d / a, cc / a, -b / a, Fraction(1)]  # constant term first
        # square-free split via gcd(q, q')
        dq = [q[1], 2 * q[2], 3 * q[3]]
        g = _poly_gcd(q, dq)
        if len(g) == 3:  # degree 2: triple root
            k = q[2] / -3  # -(sum of roots)/3 with sum = -q2
            roots.append((Fraction(1), k, 3, True))
        elif len(g) == 2:  # degree 1: one double root
            k2 = -g[0] / g[1]
            k1 = -q[2] - 2 * k2  # roots sum to -q2
            roots.append((Fraction(1), k2, 2, True))
            roots.append((Fraction(1), k1, 1, True))
        else:
            r0 = _rational_root(q)
            if r0 is not None:
                # deflate to a quadratic k^2 + e1 k + e0
                e1 = q[2] + r0
                e0 = q[1] + r0 * e1
                roots.append((Fraction(1), r0, 1, True))
                disc = e1 * e1 - 4 * e0
                if disc > 0:
                    r = _sqrt_fraction(disc)
                    if r is not None:
                        roots.append((Fraction(1), (-e1 - r) / 2, 1, True))
                        roots.append((Fraction(1), (-e1 + r) / 2, 1, True))
                    else:
                        fr = float(disc) ** 0.5
                        roots.append((1.0, (-float(e1) - fr) / 2, 1, False))
                        roots.append((1.0, (-float(e1) + fr) / 2, 1, False))
                # disc < 0: complex pair, no real lines
            else:
                for x in _cubic_real_roots_numeric(Fraction(1), q[2], q[1], q[0]):
                    roots.append((1.0, x, 1, False))
    return sorted(roots, key=_root_sort_key)


def _root_sort_key(root):
    lam, mu, mult, exact = root
    if lam == 0:
        return (1, 0, 0)
    return (0, abs(mu), mu)


def _poly_gcd(p: list, q: list) -> list:
    """Monic gcd of univariate polynomials (Fraction coefficients,
    constant term first)."""

    def trim(v):
        while v and v[-1] == 0:
            v = v[:-1]
        return v

    p, q = trim(list(p)), trim(list(q))
    while q:
        # remainder of p mod q
        r = list(p)
        while len(r) >= len(q) and trim(r):
            r = trim(r)
            if len(r) < len(q):
                break
            f = r[-1] / q[-1]
            shift = len(r) - len(q)
            for i, qc in enumerate(q):
                r[shift + i] -= f * qc
            r = trim(r)
        p, q = q, trim(r)
    if not p:
        return []
    lead = p[-1]
    return [c / lead for c in p]


def factor_cubic(c: BinaryCubic) -> FactorSplit:
    """A linear factor and its quadratic cofactor.

    The linear factor is xi2 when the leading coefficient vanishes; otherwise
    the rational root minimizing (|k|, k), or, when no rational root exists,
    a numeric real root (the largest when all three are real), flagged."""
    a, b, cc, d = c.coeffs()
    if c.is_zero():
        raise ZeroSymbol("zero cubic")
    if a == 0:
        return FactorSplit(linear=(Fraction(0), Fraction(1)),
                           quadratic=(b, cc, d))
    exact = [r for r in all_roots(c) if r[3] and r[0] != 0]
    if exact:
        k = min((r[1] for r in exact), key=lambda t: (abs(t), t))
        q1 = b - a * k
        q2 = cc - q1 * k
        return FactorSplit(linear=(Fraction(1), k), quadratic=(a, q1, q2))
    roots = _cubic_real_roots_numeric(a, -b, cc, -d)
    k = roots[-1]  # deterministic pick: rightmost real root
    fa, fb, fc2, fd = (float(a), float(b), float(cc), float(d))
    q1 = fb - fa * k
    q2 = fc2 - q1 * k
    # reconstruction check of the inexact split
    rec = (fa, q1 + fa * k, q2 + q1 * k, q2 * k)
    scale = max(1.0, abs(fa), abs(fb), abs(fc2), abs(fd))
    assert all(abs(x - y) < RECONSTRUCT_TOL * scale
               for x, y in zip(rec, (fa, fb, fc2, fd)))
    return FactorSplit(linear=(1.0, k), quadratic=(fa, q1, q2), inexact=True)


# -- characteristic lines -------------------------------------------------------


def _line_coords(lam, mu, fiber):
    t111, t112, t122, t222 = fiber
    vec = [lam, mu,
           lam * t111 + mu * t112,
           lam * t112 + mu * t122,
           lam * t122 + mu * t222]
    lead = next(v for v in vec if v != 0)
    return tuple(v / lead for v in vec)


def characteristic_lines(F: MultiPoly, m2: JetPoint) -> list:
    """The real characteristic lines at a level-2 point on {F = 0},
    one CharLine per distinct root with its multiplicity."""
    if F.eval_at(m2) != 0:
        raise NotOnEquation(f"F = {F.eval_at(m2)} != 0 at the point")
    cub = symbol(F, m2)
    split = factor_cubic(cub)
    fiber = m2.fiber()
    lines = []
    for lam, mu, mult, exact in all_roots(cub):
        if exact:
            is_linear = (split.inexact is False and _same_projective(
                (lam, mu), split.linear))
            coords = _line_coords(lam, mu, fiber)
        else:
            is_linear = split.inexact and abs(mu - split.linear[1]) < 1e-9
            coords = _line_coords(lam, mu, tuple(float(t) for t in fiber))
        lines.append(CharLine(coords=coords, nu=(lam, mu), mult=mult,
                              factor="linear" if is_linear else "quadratic",
                              inexact=not exact))
    return lines


def _same_projective(p, q) -> bool:
    return p[0] * q[1] - p[1] * q[0] == 0


def is_strong_characteristic(F: MultiPoly, H: CharLine, m2: JetPoint) -> bool:
    """True iff the whole affine line of planes through H stays on {F = 0}.

    The line of planes is m2 + t * alpha^3 in fiber coordinates, with alpha
    the annihilator (nu2, -nu1) of H's direction."""
    if F.eval_at(m2) != 0:
        raise NotOnEquation("the base point must satisfy F = 0")
    nu1, nu2 = H.coords[0], H.coords[1]
    expected = _line_coords(nu1, nu2, m2.fiber()) if (nu1 or nu2) else None
    if expected is None or tuple(H.coords) != expected:
        raise LineNotInPlane(f"line {H} is not in the plane at the point")
    a1, a2 = nu2, -nu1
    incr = (a1 ** 3, a1 ** 2 * a2, a1 * a2 ** 2, a2 ** 3)
    t = MultiPoly.coord("x1")  # parameter slot; every coordinate is substituted
    sub = {name: MultiPoly.const(v) for name, v in m2.values.items()}
    for name, base, step in zip(FIBER_COORDS, m2.fiber(), incr):
        sub[name] = MultiPoly.const(base) + t * step
    return F.subs(sub).is_zero()


# -- cone sampling --------------------------------------------------------------


@dataclass(frozen=True)
class ConeSample:
    """Characteristic lines over a base point plus the linear-span analysis."""

    base: JetPoint
    point: JetPoint  # first usable level-2 probe
    lines: tuple  # CharLines at `point`
    linear_component: object  # Distribution or None
    components: tuple  # (Distribution, mult) for every valid 3D span
    notes: tuple
    used_points: tuple


def _fiber_point(m1: JetPoint, fiber) -> JetPoint:
    vals = dict(m1.values)
    for name, v in zip(FIBER_COORDS, fiber):
        vals[name] = v
    return JetPoint(2, vals)


def distinguished_coordinate(F: MultiPoly):
    """First fiber coordinate, in the order p111, p222, p112, p122, in which
    F has exact degree one."""
    for name in ("p111", "p222", "p112", "p122"):
        if F.degree_in(name) == 1:
            return name
    return None


def default_fiber_probes(dist: str, seed: int) -> list:
    """Canonical assignments to the non-distinguished fiber coordinates plus
    four seeded random rational probes, as maps coordinate -> value."""
    others = [c for c in FIBER_COORDS if c != dist]
    probes = [dict(zip(others, vals))
              for vals in ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1))]
    rng = random.Random(f"cone-{seed}")
    for _ in range(4):
        probes.append({c: Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                       for c in others})
    return [{k: Fraction(v) for k, v in p.items()} for p in probes]


def _solve_on_equation(F: MultiPoly, m1: JetPoint, dist: str, probe: dict):
    """Fiber point on {F = 0} completing the probe, or None."""
    assign = dict(m1.values)
    assign.update(probe)
    assign[dist] = Fraction(0)
    coeff = F.derivative(dist).eval_at(assign)
    rest = F.eval_at(assign)
    if coeff == 0:
        if rest == 0:
            return tuple(assign[c] for c in FIBER_COORDS)  # dist stays 0
        return None
    assign[dist] = -rest / coeff
    return tuple(assign[c] for c in FIBER_COORDS)


def _span_contains(span_rows, coords) -> bool:
    return mat_rank(list(span_rows) + [list(coords)]) == len(span_rows)


def cone_sample(F: MultiPoly, m1: JetPoint, samples=None,
                seed: int = DEFAULT_SEED) -> ConeSample:
    """Characteristic lines over m1 and the 3D spans covering all probes.

    `samples`, when given, is a list of fiber 4-tuples; otherwise the
    canonical probe set is used.  Fiber points are completed onto {F = 0}
    through the distinguished coordinate when F is affine in one; otherwise
    the given samples are filtered by F = 0."""
    if m1.level != 1:
        raise ValueError("cone sampling happens over a level-1 point")
    dist = distinguished_coordinate(F)
    notes = []
    fibers = []
    if samples is not None:
        for fib in samples:
            fib = tuple(Fraction(v) for v in fib)
            if dist is not None:
                probe = {c: v for c, v in zip(FIBER_COORDS, fib) if c != dist}
                solved = _solve_on_equation(F, m1, dist, probe)
                if solved is None:
                    notes.append(f"probe {fib}: no solution in {dist}")
                    continue
                fibers.append(solved)
            else:
                point = _fiber_point(m1, fib)
                if F.eval_at(point) == 0:
                    fibers.append(fib)
                else:
                    notes.append(f"probe {fib}: not on the equation")
    else:
        if dist is None:
            raise InsufficientSamples(
                "F is affine in no fiber coordinate; pass explicit samples")
        for probe in default_fiber_probes(dist, seed):
            solved = _solve_on_equation(F, m1, dist, probe)
            if solved is None:
                notes.append(f"probe {sorted(probe.items())}: no solution in {dist}")
                continue
            fibers.append(solved)

    # deduplicate fiber points, keep order
    seen = set()
    fibers = [f for f in fibers if not (f in seen or seen.add(f))]

    per_point = []  # (JetPoint, exact lines, tracked linear line coords)
    for fib in fibers:
        m2 = _fiber_point(m1, fib)
        try:
            lines = characteristic_lines(F, m2)
        except ZeroSymbol:
            notes.append(f"probe {fib}: singular point (zero symbol), skipped")
            continue
        exact = [ln for ln in lines if not ln.inexact]
        tracked = next((ln.coords for ln in exact if ln.factor == "linear"), None)
        per_point.append((m2, lines, exact, tracked))

    if len(per_point) < 4:
        raise InsufficientSamples(
            f"only {len(per_point)} usable fiber points, need 4")

    # pool the distinct exact lines and enumerate candidate 3D spans
    pool = []
    pool_seen = set()
    for _, _, exact, _ in per_point:
        for ln in exact:
            if ln.coords not in pool_seen:
                pool_seen.add(ln.coords)
                pool.append(ln.coords)
    covered = [pp for pp in per_point if pp[2]]
    for pp in per_point:
        if not pp[2]:
            notes.append(f"point {pp[0].fiber()}: no exact lines, "
                         "excluded from span coverage")
    spans = {}
    for trio in itertools.combinations(pool, 3):
        rows = [list(v) for v in trio]
        if mat_rank(rows) == 3:
            spans[tuple(rref(rows))] = None
    valid = []
    for span in spans:
        rows = [list(r) for r in span]
        if covered and all(any(_span_contains(rows, ln.coords) for ln in exact)
                           for _, _, exact, _ in covered):
            first_exact = covered[0][2]
            mult = sum(ln.mult for ln in first_exact
                       if _span_contains(rows, ln.coords))
            coverage = sum(1 for _, _, _, tracked in covered
                           if tracked is not None and _span_contains(rows, tracked))
            valid.append((span, coverage, mult))
    valid.sort(key=lambda t: (-t[1], t[0]))

    def to_dist(span):
        return Distribution.make(*[tuple(r) for r in span], seed=seed)

    components = tuple((to_dist(span), mult) for span, _, mult in
                       sorted(valid, key=lambda t: t[0]))
    linear_component = to_dist(valid[0][0]) if valid else None

    first_m2, first_lines = per_point[0][0], per_point[0][1]
    return ConeSample(base=m1, point=first_m2, lines=tuple(first_lines),
                      linear_component=linear_component,
                      components=components, notes=tuple(notes),
                      used_points=tuple(pp[0] for pp in per_point))
