"""Exact arithmetic layer: multivariate polynomials over Q and exact linear algebra.

Everything downstream works in a fixed 12-coordinate jet chart

    x1, x2, u, p1, p2, p11, p12, p22, p111, p112, p122, p222

where p12 stores the symmetric second derivative (p12 = p21) and p112, p122
store all index permutations of (1,1,2) and (1,2,2).  Polynomials are sparse
maps from 12-exponent monomials to `fractions.Fraction` coefficients; no zero
coefficient is ever stored, so structural equality is semantic equality.

Monomial order is graded lexicographic over the coordinate enumeration above
(total degree first, then lex with x1 most significant), fixed globally so
printed output is deterministic and usable in golden files.

Rank and kernel of rational matrices are computed by fraction-free Gaussian
elimination (cross-multiplication updates, no divisions during the forward
pass).  The same elimination runs verbatim over polynomial entries, which is
how vertical parts and annihilators of polynomial distributions stay exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence, Union

COORDS = ("x1", "x2", "u", "p1", "p2", "p11", "p12", "p22",
          "p111", "p112", "p122", "p222")
COORD_INDEX = {name: i for i, name in enumerate(COORDS)}
NVARS = len(COORDS)

# Chart levels: 0 = base contact chart, 1 = adds second derivatives,
# 2 = adds third derivatives.
LEVEL_SIZE = {0: 5, 1: 8, 2: 12}
LEVEL0_COORDS = COORDS[:5]
LEVEL1_COORDS = COORDS[:8]
LEVEL2_COORDS = COORDS
FIBER_COORDS = COORDS[8:]  # third-derivative fiber over a level-1 point

Scalar = Union[int, Fraction]

_ZERO_EXP = (0,) * NVARS


class ParseError(ValueError):
    """Syntax error in an expression string; `offset` is the byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnknownVariable(ParseError):
    """Identifier outside the 12 chart coordinates."""


def _as_fraction(c: Scalar) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


def _monomial_sort_key(exp: tuple) -> tuple:
    # graded lex, used descending for printing
    return (sum(exp), exp)


class MultiPoly:
    """Sparse polynomial in the 12 chart coordinates with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, Scalar] | None = None):
        clean = {}
        if terms:
            for exp, c in terms.items():
                c = _as_fraction(c)
                if c != 0:
                    clean[tuple(exp)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "MultiPoly":
        return MultiPoly()

    @staticmethod
    def const(c: Scalar) -> "MultiPoly":
        c = _as_fraction(c)
        return MultiPoly({_ZERO_EXP: c}) if c != 0 else MultiPoly()

    @staticmethod
    def coord(name: str) -> "MultiPoly":
        exp = [0] * NVARS
        exp[COORD_INDEX[name]] = 1
        return MultiPoly({tuple(exp): Fraction(1)})

    # -- ring structure ----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ZERO_EXP in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(_ZERO_EXP, Fraction(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, Fraction(0)) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        res = MultiPoly.__new__(MultiPoly)
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        res = MultiPoly.__new__(MultiPoly)
        res.terms = {exp: -c for exp, c in self.terms.items()}
        return res

    def __sub__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return MultiPoly.const(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if c == 0:
                return MultiPoly()
            res = MultiPoly.__new__(MultiPoly)
            res.terms = {exp: k * c for exp, k in self.terms.items()}
            return res
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(exp, Fraction(0)) + c1 * c2
                if s:
                    out[exp] = s
                else:
                    out.pop(exp, None)
        res = MultiPoly.__new__(MultiPoly)
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- calculus and evaluation -------------------------------------------

    def derivative(self, name: str) -> "MultiPoly":
        i = COORD_INDEX[name]
        out = {}
        for exp, c in self.terms.items():
            k = exp[i]
            if k:
                nexp = exp[:i] + (k - 1,) + exp[i + 1:]
                out[nexp] = out.get(nexp, Fraction(0)) + c * k
        return MultiPoly(out)

    def total_degree(self) -> int:
        return max((sum(exp) for exp in self.terms), default=0)

    def degree_in(self, name: str) -> int:
        i = COORD_INDEX[name]
        return max((exp[i] for exp in self.terms), default=0)

    def uses(self) -> set:
        used = set()
        for exp in self.terms:
            for i, k in enumerate(exp):
                if k:
                    used.add(COORDS[i])
        return used

    def max_level(self) -> int:
        lvl = 0
        for exp in self.terms:
            for i, k in enumerate(exp):
                if k:
                    if i >= 8:
                        return 2
                    if i >= 5:
                        lvl = max(lvl, 1)
        return lvl

    def eval_at(self, point) -> Fraction:
        """Exact evaluation.  `point` is a JetPoint or a name -> Fraction mapping;
        coordinates the polynomial does not use may be absent."""
        values = point if isinstance(point, dict) else point.values
        total = Fraction(0)
        for exp, c in self.terms.items():
            term = c
            for i, k in enumerate(exp):
                if k:
                    v = values.get(COORDS[i])
                    if v is None:
                        raise KeyError(f"point does not assign coordinate {COORDS[i]}")
                    term *= _as_fraction(v) ** k
            total += term
        return total

    def subs(self, mapping: Mapping[str, "MultiPoly"]) -> "MultiPoly":
        """Substitute polynomials for coordinates (unmentioned coordinates stay)."""
        images = {}
        for name, img in mapping.items():
            if isinstance(img, (int, Fraction)):
                img = MultiPoly.const(img)
            images[COORD_INDEX[name]] = img
        result = MultiPoly()
        for exp, c in self.terms.items():
            term = MultiPoly.const(c)
            for i, k in enumerate(exp):
                if not k:
                    continue
                if i in images:
                    term = term * (images[i] ** k)
                else:
                    nexp = [0] * NVARS
                    nexp[i] = k
                    term = term * MultiPoly({tuple(nexp): Fraction(1)})
            result = result + term
        return result

    def coefficient_of(self, name: str, power: int) -> "MultiPoly":
        """Coefficient of name**power, a polynomial in the other coordinates."""
        i = COORD_INDEX[name]
        out = {}
        for exp, c in self.terms.items():
            if exp[i] == power:
                out[exp[:i] + (0,) + exp[i + 1:]] = c
        return MultiPoly(out)

    def split_by_fiber(self) -> dict:
        """Group terms by the third-derivative part of the monomial.

        Returns {fiber exponent 4-tuple: coefficient MultiPoly in the 8 base
        coordinates}."""
        groups: dict = {}
        for exp, c in self.terms.items():
            fib = exp[8:]
            base = exp[:8] + (0, 0, 0, 0)
            groups.setdefault(fib, {})[base] = c
        return {fib: MultiPoly(t) for fib, t in groups.items()}

    # -- normalization -----------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational content (gcd of numerators over lcm of denominators)."""
        if not self.terms:
            return Fraction(1)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, abs(c.numerator))
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive_part(self) -> "MultiPoly":
        c = self.content()
        return self * (1 / c) if c != 1 else self

    def leading(self) -> tuple:
        """(monomial, coefficient) maximal in graded lex order."""
        exp = max(self.terms, key=_monomial_sort_key)
        return exp, self.terms[exp]

    def try_divide(self, divisor: "MultiPoly"):
        """Exact polynomial quotient self/divisor, or None when not divisible."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if divisor.is_constant():
            return self * (1 / divisor.constant_value())
        rem = self
        quot = MultiPoly()
        dexp, dc = divisor.leading()
        while rem.terms:
            rexp, rc = rem.leading()
            qexp = tuple(a - b for a, b in zip(rexp, dexp))
            if any(k < 0 for k in qexp):
                return None
            qterm = MultiPoly({qexp: rc / dc})
            quot = quot + qterm
            rem = rem - qterm * divisor
        return quot

    # -- printing ----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: _monomial_sort_key(kv[0]),
                       reverse=True)
        pieces = []
        for n, (exp, c) in enumerate(items):
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            factors = []
            # highest jet order printed first inside a monomial
            for i in range(NVARS - 1, -1, -1):
                k = exp[i]
                if k == 1:
                    factors.append(COORDS[i])
                elif k > 1:
                    factors.append(f"{COORDS[i]}^{k}")
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            if n == 0:
                pieces.append(body if sign == "+" else "-" + body)
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


# -- parsing ---------------------------------------------------------------

class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip_ws()
        if self.pos >= len(self.text):
            return None, self.pos
        ch = self.text[self.pos]
        if ch.isdigit():
            end = self.pos
            while end < len(self.text) and self.text[end].isdigit():
                end += 1
            return self.text[self.pos:end], self.pos
        if ch.isalpha() or ch == "_":
            end = self.pos
            while end < len(self.text) and (self.text[end].isalnum() or self.text[end] == "_"):
                end += 1
            return self.text[self.pos:end], self.pos
        return ch, self.pos

    def next(self):
        tok, pos = self.peek()
        if tok is not None:
            self.pos = pos + len(tok)
        return tok, pos


def parse_expr(text: str) -> MultiPoly:
    """Parse the expression grammar

        expr   := ['-'] term (('+'|'-') term)*
        term   := factor ('*' factor)*
        factor := base ('^' nonneg-int)?
        base   := rational | coordinate | '(' expr ')'

    where rational := int ('/' posint)?.  Whitespace is insignificant.
    Raises ParseError with a byte offset; UnknownVariable for identifiers
    outside the 12 chart coordinates."""
    tz = _Tokenizer(text)
    result = _parse_sum(tz)
    tok, pos = tz.peek()
    if tok is not None:
        raise ParseError(f"unexpected token {tok!r}", pos)
    return result


def _parse_sum(tz: _Tokenizer) -> MultiPoly:
    tok, _ = tz.peek()
    negate = False
    if tok in ("+", "-"):
        tz.next()
        negate = tok == "-"
    result = _parse_term(tz)
    if negate:
        result = -result
    while True:
        tok, _ = tz.peek()
        if tok == "+":
            tz.next()
            result = result + _parse_term(tz)
        elif tok == "-":
            tz.next()
            result = result - _parse_term(tz)
        else:
            return result


def _parse_term(tz: _Tokenizer) -> MultiPoly:
    result = _parse_factor(tz)
    while True:
        tok, _ = tz.peek()
        if tok == "*":
            tz.next()
            result = result * _parse_factor(tz)
        else:
            return result


def _parse_factor(tz: _Tokenizer) -> MultiPoly:
    base = _parse_base(tz)
    tok, _ = tz.peek()
    if tok == "^":
        tz.next()
        tok, pos = tz.next()
        if tok is None or not tok.isdigit():
            raise ParseError("expected a nonnegative integer exponent", pos)
        return base ** int(tok)
    return base


def _parse_base(tz: _Tokenizer) -> MultiPoly:
    tok, pos = tz.next()
    if tok is None:
        raise ParseError("unexpected end of input", pos)
    if tok == "(":
        inner = _parse_sum(tz)
        tok2, pos2 = tz.next()
        if tok2 != ")":
            raise ParseError("expected ')'", pos2)
        return inner
    if tok.isdigit():
        num = int(tok)
        tok2, _ = tz.peek()
        if tok2 == "/":
            tz.next()
            tok3, pos3 = tz.next()
            if tok3 is None or not tok3.isdigit():
                raise ParseError("expected a positive integer denominator", pos3)
            den = int(tok3)
            if den == 0:
                raise ParseError("zero denominator", pos3)
            return MultiPoly.const(Fraction(num, den))
        return MultiPoly.const(num)
    if tok[0].isalpha() or tok[0] == "_":
        if tok not in COORD_INDEX:
            raise UnknownVariable(f"unknown coordinate {tok!r}", pos)
        return MultiPoly.coord(tok)
    raise ParseError(f"unexpected token {tok!r}", pos)


def poly_derivative(p: MultiPoly, name: str) -> MultiPoly:
    return p.derivative(name)


def eval_at(p: MultiPoly, point) -> Fraction:
    return p.eval_at(point)


# -- exact linear algebra over Q ---------------------------------------------

Matrix = Sequence[Sequence[Scalar]]


def _echelon_fraction_free(rows: list) -> tuple:
    """Forward elimination with cross-multiplication updates (no division).

    Works over Fraction entries; mutates and returns (rows, pivot_cols).
    Rows are rescaled to integer, coprime entries after every update to keep
    coefficient growth in check."""

    def reduce_row(row):
        num = 0
        den = 1
        for c in row:
            if c:
                num = gcd(num, abs(c.numerator))
                den = den * c.denominator // gcd(den, c.denominator)
        if num:
            scale = Fraction(den, num)
            return [c * scale for c in row]
        return row

    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    rows = [reduce_row([_as_fraction(c) for c in r]) for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][col] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][col]
        for i in range(nrows):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = reduce_row([piv * a - f * b for a, b in zip(rows[i], rows[r])])
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank_kernel(matrix: Matrix) -> tuple:
    """Exact (rank, kernel basis) of a rational matrix.

    Kernel vectors are normalized with first nonzero entry 1; an empty list
    means trivial kernel."""
    rows = [list(r) for r in matrix]
    if not rows:
        return 0, []
    ncols = len(rows[0])
    rows, pivots = _echelon_fraction_free(rows)
    rank = len(pivots)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free_cols:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        # rows are fully reduced (entries above pivots cleared), so each pivot
        # coordinate reads off directly
        for i, col in enumerate(pivots):
            v[col] = -rows[i][f] / rows[i][col]
        lead = next(c for c in v if c != 0)
        basis.append([c / lead for c in v])
    return rank, basis


def mat_rank(matrix: Matrix) -> int:
    # rank only: clear denominators and eliminate over the integers,
    # which avoids per-operation gcd reduction in Fraction arithmetic
    rows = []
    for r in matrix:
        fr = [_as_fraction(c) for c in r]
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        row = [c.numerator * (den // c.denominator) for c in fr]
        g = 0
        for c in row:
            g = gcd(g, c)
        rows.append([c // g for c in row] if g else row)
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    rank = 0
    for col in range(ncols):
        pr = next((i for i in range(rank, nrows) if rows[i][col]), None)
        if pr is None:
            continue
        rows[rank], rows[pr] = rows[pr], rows[rank]
        piv = rows[rank][col]
        for i in range(rank + 1, nrows):
            f = rows[i][col]
            if f:
                new = [piv * a - f * b for a, b in zip(rows[i], rows[rank])]
                g = 0
                for c in new:
                    g = gcd(g, c)
                rows[i] = [c // g for c in new] if g else new
        rank += 1
        if rank == nrows:
            break
    return rank


def rref(matrix: Matrix) -> list:
    """Reduced row echelon form with leading entries 1 (zero rows dropped)."""
    rows = [list(r) for r in matrix]
    if not rows:
        return []
    rows, pivots = _echelon_fraction_free(rows)
    out = []
    for i, col in enumerate(pivots):
        piv = rows[i][col]
        out.append(tuple(c / piv for c in rows[i]))
    return out


def solve_affine(matrix: Matrix, rhs: Sequence[Scalar]):
    """All solutions of M x = rhs: (particular, kernel_basis), or None if none."""
    rows = [list(r) + [_as_fraction(b)] for r, b in zip(matrix, rhs)]
    if not rows:
        return [], []
    ncols = len(rows[0]) - 1
    rows, pivots = _echelon_fraction_free(rows)
    if ncols in pivots:
        return None  # pivot in the constant column: inconsistent
    particular = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        particular[col] = rows[i][ncols] / rows[i][col]
    _, basis = rank_kernel([r[:ncols] for r in rows[:len(pivots)]] or [[Fraction(0)] * ncols])
    return particular, basis


# -- the same elimination over polynomial entries ----------------------------

def poly_echelon(rows: list) -> tuple:
    """Cross-multiplication echelon over MultiPoly entries.

    Returns (rows, pivot_cols); rows are content-normalized.  Valid wherever
    the pivots do not vanish, i.e. at generic points."""
    work = [list(r) for r in rows]
    nrows = len(work)
    ncols = len(work[0]) if nrows else 0

    def norm(row):
        # divide out the common rational content of all coefficients in the row
        cont = None
        for c in row:
            for coeff in c.terms.values():
                a = abs(coeff)
                cont = a if cont is None else Fraction(
                    gcd(cont.numerator * a.denominator, a.numerator * cont.denominator),
                    cont.denominator * a.denominator)
        if cont and cont != 1:
            row = [c * (1 / cont) for c in row]
        return row

    pivots = []
    r = 0
    for col in range(ncols):
        pr = None
        best = None
        for i in range(r, nrows):
            e = work[i][col]
            if not e.is_zero():
                size = (e.total_degree(), len(e.terms))
                if best is None or size < best:
                    best = size
                    pr = i
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        piv = work[r][col]
        for i in range(nrows):
            if i != r and not work[i][col].is_zero():
                f = work[i][col]
                work[i] = norm([piv * a - f * b for a, b in zip(work[i], work[r])])
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return work, pivots


def _rational_content(entries) -> Fraction:
    cont = None
    for entry in entries:
        for coeff in entry.terms.values():
            a = abs(coeff)
            if cont is None:
                cont = a
            else:
                cont = Fraction(gcd(cont.numerator * a.denominator,
                                    a.numerator * cont.denominator),
                                cont.denominator * a.denominator)
    return cont


def _two_row_kernel(rows: list, ncols: int) -> list:
    # Plucker construction for a rank-2 matrix of two rows: each kernel
    # vector is supported on the pivot pair plus one free column, with 2x2
    # minors as entries.  Back substitution would multiply the pivots
    # through instead and inflate the degree.
    a, b = rows
    minors = {}
    best = None
    for i in range(ncols):
        for j in range(i + 1, ncols):
            m = a[i] * b[j] - a[j] * b[i]
            minors[(i, j)] = m
            if not m.is_zero():
                size = (m.total_degree(), len(m.terms), (i, j))
                if best is None or size < best:
                    best = size
    pi, pj = best[2]

    def signed(x, y):
        return minors[(x, y)] if x < y else -minors[(y, x)]

    basis = []
    for k in range(ncols):
        if k == pi or k == pj:
            continue
        v = [MultiPoly() for _ in range(ncols)]
        v[pi] = signed(pj, k)
        v[pj] = signed(k, pi)
        v[k] = minors[(pi, pj)]
        cont = _rational_content(v)
        if cont and cont != 1:
            v = [entry * (1 / cont) for entry in v]
        basis.append(v)
    return basis


def poly_kernel(rows: list, ncols: int) -> list:
    """Kernel basis of a matrix with MultiPoly entries (generic-point kernel).

    Returned vectors have polynomial entries with rational content divided out."""
    if not rows:
        return [[MultiPoly.const(1) if i == j else MultiPoly() for i in range(ncols)]
                for j in range(ncols)]
    work, pivots = poly_echelon(rows)
    if len(rows) == 2 and len(pivots) == 2:
        return _two_row_kernel(rows, ncols)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free_cols:
        v = [MultiPoly() for _ in range(ncols)]
        v[f] = MultiPoly.const(1)
        # entries above pivots were cleared, so back substitution is one
        # cross-multiplied step per pivot row
        for i in range(len(pivots) - 1, -1, -1):
            col = pivots[i]
            s = MultiPoly()
            for c in range(col + 1, ncols):
                if not work[i][c].is_zero() and not v[c].is_zero():
                    s = s + work[i][c] * v[c]
            if s.is_zero():
                continue
            piv = work[i][col]
            v = [piv * entry for entry in v]
            v[col] = -s
        cont = _rational_content(v)
        if cont and cont != 1:
            v = [entry * (1 / cont) for entry in v]
        basis.append(v)
    return basis


def determinant(matrix: list) -> MultiPoly:
    """Determinant of a square MultiPoly matrix by cofactor expansion.

    Sizes here are at most 5x5; expansion picks the sparsest column first."""
    n = len(matrix)
    if n == 1:
        entry = matrix[0][0]
        return entry if isinstance(entry, MultiPoly) else MultiPoly.const(entry)

    def det(rows, cols):
        if len(cols) == 1:
            return _as_poly(matrix[rows[0]][cols[0]])
        # expand along the column with the most zeros
        best_c = min(cols, key=lambda c: sum(0 if _as_poly(matrix[r][c]).is_zero() else 1
                                             for r in rows))
        cpos = cols.index(best_c)
        rest = [c for c in cols if c != best_c]
        total = MultiPoly()
        for pos, r in enumerate(rows):
            entry = _as_poly(matrix[r][best_c])
            if entry.is_zero():
                continue
            sub = det([x for x in rows if x != r], rest)
            term = entry * sub
            total = total + (term if (pos + cpos) % 2 == 0 else -term)
        return total

    return det(list(range(n)), list(range(n)))


def _as_poly(x) -> MultiPoly:
    if isinstance(x, MultiPoly):
        return x
    return MultiPoly.const(x)
