"""Exact arithmetic kernel.

Scalars are ``flint.fmpq`` rationals.  On top of them this module provides

* ``Poly``    -- multivariate polynomials over Q in the simple-root coordinates
                 (the symmetric algebra S(V)),
* ``RatFunT`` -- univariate rational functions in the deformation parameter t,
                 kept in a canonical reduced form,
* ``Mat``     -- dense matrices over Q (backed by ``fmpq_mat``) or over Q(t)
                 (a list of rows of ``RatFunT``),
* kernel / image / solve with deterministic reduced-echelon bases, and
* ``t_adic_snf`` -- Smith normal form over the local ring Q[t]_(t).

Nothing in here uses floating point.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from flint import fmpq, fmpq_mat, fmpq_poly, fmpz

Rat = fmpq
INF = math.inf

QQ = "Q"
QT = "Qt"


class NonHolomorphicInput(ValueError):
    """A matrix handed to ``t_adic_snf`` has an entry with a pole at t = 0."""


# ---------------------------------------------------------------------------
# rationals
# ---------------------------------------------------------------------------

def Q(x) -> fmpq:
    """Coerce ints, Fractions, fmpq and strings like ``"-3/4"`` to fmpq."""
    if isinstance(x, fmpq):
        return x
    if isinstance(x, (int, fmpz)):
        return fmpq(x)
    if isinstance(x, Fraction):
        return fmpq(x.numerator, x.denominator)
    if isinstance(x, str):
        f = Fraction(x.strip())
        return fmpq(f.numerator, f.denominator)
    if isinstance(x, bool):
        return fmpq(int(x))
    raise TypeError(f"cannot interpret {x!r} as a rational")


def rat_str(x: fmpq) -> str:
    """Canonical text form ``p`` or ``p/q``."""
    return str(Q(x))


def is_scalar(x) -> bool:
    return isinstance(x, (int, fmpq, fmpz))


# ---------------------------------------------------------------------------
# multivariate polynomials (S(V))
# ---------------------------------------------------------------------------

def _grlex_key(e):
    return (sum(e), e)


class Poly:
    """Polynomial in ``n`` commuting variables x_1..x_n (the simple roots).

    ``terms`` maps exponent tuples to nonzero rationals.  Instances are
    treated as immutable.
    """

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms=None):
        self.n = n
        clean = {}
        if terms:
            for e, c in terms.items():
                c = Q(c)
                if c != 0:
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    # constructors
    @classmethod
    def const(cls, n, c):
        return cls(n, {(0,) * n: c})

    @classmethod
    def var(cls, n, i):
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def linear(cls, coeffs: Sequence):
        """The linear form sum_i c_i x_i."""
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(n, terms)

    # basic protocol
    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def coeff(self, e):
        return self.terms.get(tuple(e), fmpq(0))

    def constant_term(self):
        return self.coeff((0,) * self.n)

    def linear_part(self):
        """Coefficient vector of the degree-one part."""
        out = [fmpq(0)] * self.n
        for e, c in self.terms.items():
            if sum(e) == 1:
                out[e.index(1)] = c
        return out

    def __eq__(self, other):
        if is_scalar(other):
            other = Poly.const(self.n, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if is_scalar(other):
            return Poly.const(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Poly(self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_scalar(other):
            c = Q(other)
            return Poly(self.n, {e: c * v for e, v in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Poly(self.n, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def substitute(self, images: Sequence["Poly"]):
        """Replace variable x_i by the polynomial ``images[i]``."""
        out = Poly(self.n)
        powers = [[Poly.const(self.n, 1)] for _ in range(self.n)]
        for e, c in self.terms.items():
            term = Poly.const(self.n, c)
            for i, k in enumerate(e):
                while len(powers[i]) <= k:
                    powers[i].append(powers[i][-1] * images[i])
                if k:
                    term = term * powers[i][k]
            out = out + term
        return out

    def evaluate(self, point: Sequence):
        """Evaluate at a point (values of x_1..x_n in any commutative ring)."""
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(point, e):
                if k:
                    term = term * v ** k
            total = total + term
        return total

    def sorted_terms(self):
        """Terms in decreasing graded-lexicographic order."""
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.n)]
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                (nm if k == 1 else f"{nm}^{k}") for nm, k in zip(names, e) if k
            )
            pieces.append((c, mono))
        return _join_terms(pieces)

    def __repr__(self):
        return f"Poly({self.to_str()})"


def _join_terms(pieces) -> str:
    """Join (coefficient, monomial-string) pairs as ``a*m - b*m2 + c``."""
    out = ""
    for idx, (c, mono) in enumerate(pieces):
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        if idx == 0:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out


# ---------------------------------------------------------------------------
# univariate polynomials and rational functions in t
# ---------------------------------------------------------------------------

_T = fmpq_poly([0, 1])
_ONE = fmpq_poly([1])
_ZERO = fmpq_poly([])


def _poly_val(p: fmpq_poly) -> float | int:
    if p == 0:
        return INF
    coeffs = p.coeffs()
    v = 0
    while coeffs[v] == 0:
        v += 1
    return v


def tpoly_str(p: fmpq_poly) -> str:
    """Decreasing-degree expanded text form, e.g. ``t^2 + 2*t``."""
    if p == 0:
        return "0"
    coeffs = p.coeffs()
    pieces = []
    for d in range(len(coeffs) - 1, -1, -1):
        c = coeffs[d]
        if c == 0:
            continue
        mono = "" if d == 0 else ("t" if d == 1 else f"t^{d}")
        pieces.append((c, mono))
    return _join_terms(pieces)


class RatFunT:
    """Element num/den of Q(t) in canonical form.

    gcd(num, den) = 1 and den is monic, so equal values have identical
    representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _canonical=False):
        if not isinstance(num, fmpq_poly):
            num = fmpq_poly([Q(num)])
        if den is None:
            den = _ONE
        elif not isinstance(den, fmpq_poly):
            den = fmpq_poly([Q(den)])
        if not _canonical:
            if den == 0:
                raise ZeroDivisionError("zero denominator in RatFunT")
            if num == 0:
                den = _ONE
            elif den.degree() > 0:
                g = num.gcd(den)
                if g.degree() > 0:
                    num = num // g
                    den = den // g
            lc = den.coeffs()[-1]
            if lc != 1:
                num = num / lc
                den = den / lc
        self.num = num
        self.den = den

    # constructors
    @classmethod
    def t(cls):
        return cls(_T, _ONE, _canonical=True)

    @classmethod
    def from_coeffs(cls, num: Iterable, den: Iterable = (1,)):
        return cls(fmpq_poly([Q(c) for c in num]), fmpq_poly([Q(c) for c in den]))

    @classmethod
    def parse(cls, text: str) -> "RatFunT":
        """Parse the canonical text form (or any simple expression in t)."""
        return parse_ratfun(text)

    # predicates
    def is_zero(self):
        return self.num == 0

    def is_constant(self):
        return self.num.degree() <= 0 and self.den.degree() <= 0

    def is_polynomial(self):
        return self.den.degree() == 0

    def valuation(self):
        return t_valuation(self)

    def at_zero(self) -> fmpq:
        """Value at t = 0 (requires valuation >= 0)."""
        d0 = self.den(0)
        if d0 == 0:
            raise NonHolomorphicInput(f"{self} has a pole at t=0")
        return self.num(0) / d0

    def __call__(self, x):
        return self.num(x) / self.den(x)

    # arithmetic
    @staticmethod
    def _lift(x):
        if isinstance(x, RatFunT):
            return x
        if is_scalar(x):
            return RatFunT(fmpq_poly([Q(x)]), _ONE, _canonical=True)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            if self.den.degree() == 0:
                return RatFunT(self.num + o.num, self.den, _canonical=True)
            return RatFunT(self.num + o.num, self.den)
        return RatFunT(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunT(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_scalar(other):
            c = Q(other)
            if c == 0:
                return RatFunT(_ZERO, _ONE, _canonical=True)
            return RatFunT(self.num * c, self.den, _canonical=True)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den.degree() == 0 and o.den.degree() == 0:
            return RatFunT(self.num * o.num, _ONE, _canonical=True)
        return RatFunT(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num == 0:
            raise ZeroDivisionError("inverse of zero in Q(t)")
        return RatFunT(self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunT(self.num ** k, self.den ** k, _canonical=True)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((tuple(self.num.coeffs()), tuple(self.den.coeffs())))

    def __bool__(self):
        return self.num != 0

    def canonical(self) -> str:
        """Report form ``num/den``; denominators equal to 1 are omitted."""
        if self.den == 1:
            return tpoly_str(self.num)
        return f"({tpoly_str(self.num)})/({tpoly_str(self.den)})"

    __str__ = canonical

    def __repr__(self):
        return f"RatFunT({self.canonical()})"


def parse_ratfun(text: str) -> RatFunT:
    """Parse expressions like ``(t^2 + 2*t)/(t^2 + 2*t + 1)`` or ``64*t^3``.

    Only +, -, *, /, ^, parentheses, rationals and ``t`` are accepted.
    """
    import re

    tokens = re.findall(r"\d+|[t()+\-*/^]|\S", text.replace(" ", ""))
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def expr():
        val = term()
        while peek() in ("+", "-"):
            op = take()
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = factor()
        while peek() in ("*", "/"):
            op = take()
            rhs = factor()
            val = val * rhs if op == "*" else val / rhs
        return val

    def factor():
        if peek() == "-":
            take()
            return -factor()
        base = atom()
        if peek() == "^":
            take()
            exp = int(take())
            base = base ** exp
        return base

    def atom():
        tok = take()
        if tok == "(":
            v = expr()
            if take() != ")":
                raise ValueError(f"unbalanced parentheses in {text!r}")
            return v
        if tok == "t":
            return RatFunT.t()
        if tok.isdigit():
            return RatFunT(fmpq_poly([int(tok)]), _ONE, _canonical=True)
        raise ValueError(f"unexpected token {tok!r} in {text!r}")

    out = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return out


def t_valuation(f) -> float | int:
    """Order of vanishing at t = 0; ``math.inf`` for zero."""
    if is_scalar(f):
        return INF if f == 0 else 0
    if f.num == 0:
        return INF
    return _poly_val(f.num) - _poly_val(f.den)


def tpow(e: int) -> RatFunT:
    return RatFunT(_T ** e, _ONE, _canonical=True) if e >= 0 else RatFunT(_ONE, _T ** (-e))


def as_ratfun(x) -> RatFunT:
    if isinstance(x, RatFunT):
        return x
    return RatFunT(fmpq_poly([Q(x)]), _ONE, _canonical=True)


def field_of(x) -> str:
    return QT if isinstance(x, RatFunT) else QQ


# ---------------------------------------------------------------------------
# dense matrices
# ---------------------------------------------------------------------------

class Mat:
    """Dense matrix over Q (fmpq_mat storage) or Q(t) (rows of RatFunT)."""

    __slots__ = ("nrows", "ncols", "field", "_q", "_rows")

    def __init__(self, rows, field: str | None = None, ncols: int | None = None):
        if isinstance(rows, fmpq_mat):
            self.nrows, self.ncols = rows.nrows(), rows.ncols()
            self.field = QQ
            self._q = rows
            self._rows = None
            return
        rows = [list(r) for r in rows]
        nr = len(rows)
        nc = len(rows[0]) if nr else (ncols or 0)
        if any(len(r) != nc for r in rows):
            raise ValueError("ragged matrix")
        if field is None:
            field = QT if any(isinstance(x, RatFunT) for r in rows for x in r) else QQ
        self.nrows, self.ncols, self.field = nr, nc, field
        if field == QQ:
            self._q = fmpq_mat(nr, nc, [Q(x) for r in rows for x in r]) if nr and nc else fmpq_mat(nr, nc)
            self._rows = None
        else:
            self._q = None
            self._rows = [[as_ratfun(x) for x in r] for r in rows]

    # -- construction helpers
    @classmethod
    def zeros(cls, nr, nc, field=QQ):
        if field == QQ:
            return cls(fmpq_mat(nr, nc))
        z = RatFunT(_ZERO, _ONE, _canonical=True)
        return cls([[z] * nc for _ in range(nr)], QT, ncols=nc)

    @classmethod
    def identity(cls, n, field=QQ):
        if field == QQ:
            m = fmpq_mat(n, n)
            for i in range(n):
                m[i, i] = 1
            return cls(m)
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], QT, ncols=n)

    @classmethod
    def scalar(cls, n, c, field=QQ):
        return cls.identity(n, field) * c

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int, field=QQ):
        cols = list(cols)
        rows = [[cols[j][i] for j in range(len(cols))] for i in range(nrows)]
        return cls(rows, field, ncols=len(cols))

    @classmethod
    def block_diag(cls, blocks: Sequence["Mat"]):
        field = QT if any(b.field == QT for b in blocks) else QQ
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        out = cls.zeros(n, m, field)
        r = c = 0
        for b in blocks:
            out = out.with_block(r, c, b)
            r += b.nrows
            c += b.ncols
        return out

    # -- access
    def __getitem__(self, ij):
        i, j = ij
        if self.field == QQ:
            return self._q[i, j]
        return self._rows[i][j]

    def tolist(self):
        if self.field == QQ:
            return [[self._q[i, j] for j in range(self.ncols)] for i in range(self.nrows)]
        return [list(r) for r in self._rows]

    def column(self, j):
        return [self[i, j] for i in range(self.nrows)]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def row(self, i):
        return [self[i, j] for j in range(self.ncols)]

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def to_field(self, field):
        if field == self.field:
            return self
        if field == QT:
            return Mat(self.tolist(), QT, ncols=self.ncols)
        if not all(x.is_constant() for r in self._rows for x in r):
            raise TypeError("matrix has non-constant entries; use at_zero() to specialise")
        return Mat([[x.at_zero() for x in r] for r in self._rows], QQ, ncols=self.ncols)

    def qmat(self) -> fmpq_mat:
        if self.field != QQ:
            raise TypeError("expected a rational matrix")
        return self._q

    # -- arithmetic
    def _pair(self, other):
        if self.field == other.field:
            return self, other
        return self.to_field(QT), other.to_field(QT)

    def __add__(self, other):
        a, b = self._pair(other)
        if a.field == QQ:
            return Mat(a._q + b._q)
        return Mat([[x + y for x, y in zip(r, s)] for r, s in zip(a._rows, b._rows)], QT, ncols=a.ncols)

    def __neg__(self):
        if self.field == QQ:
            return Mat(-self._q)
        return Mat([[-x for x in r] for r in self._rows], QT, ncols=self.ncols)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, Mat):
            return self @ c
        if isinstance(c, RatFunT):
            m = self.to_field(QT)
            return Mat([[x * c for x in r] for r in m._rows], QT, ncols=self.ncols)
        if self.field == QQ:
            return Mat(self._q * Q(c))
        return Mat([[x * c for x in r] for r in self._rows], QT, ncols=self.ncols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, (list, tuple)):
            return self.apply(other)
        a, b = self._pair(other)
        if a.ncols != b.nrows:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        if a.field == QQ:
            return Mat(a._q * b._q)
        zero = RatFunT(_ZERO, _ONE, _canonical=True)
        bcols = list(zip(*b._rows)) if b.nrows else [()] * b.ncols
        out = []
        for r in a._rows:
            nz = [(k, x) for k, x in enumerate(r) if x.num != 0]
            row = []
            for col in bcols:
                s = zero
                for k, x in nz:
                    y = col[k]
                    if y.num != 0:
                        s = s + x * y
                row.append(s)
            out.append(row)
        return Mat(out, QT, ncols=b.ncols)

    def apply(self, vec: Sequence):
        """Matrix-vector product with a plain list."""
        if self.field == QQ and all(not isinstance(x, RatFunT) for x in vec):
            v = fmpq_mat(len(vec), 1, [Q(x) for x in vec])
            w = self._q * v
            return [w[i, 0] for i in range(self.nrows)]
        out = []
        for i in range(self.nrows):
            s = as_ratfun(0) if self.field == QT else fmpq(0)
            for j in range(self.ncols):
                x = self[i, j]
                if x != 0 and vec[j] != 0:
                    s = s + x * vec[j]
            out.append(s)
        return out

    def transpose(self):
        if self.field == QQ:
            return Mat(self._q.transpose())
        return Mat([list(c) for c in zip(*self._rows)] if self.nrows else [], QT, ncols=self.nrows)

    T = property(transpose)

    def __eq__(self, other):
        if not isinstance(other, Mat) or self.shape != other.shape:
            return False
        if self.field == QQ and other.field == QQ:
            return self._q == other._q
        return self.tolist() == other.tolist() or all(
            as_ratfun(x) == as_ratfun(y) for r, s in zip(self.tolist(), other.tolist()) for x, y in zip(r, s)
        )

    def __hash__(self):
        return hash((self.shape, tuple(tuple(str(x) for x in r) for r in self.tolist())))

    def is_zero(self):
        if self.field == QQ:
            return self._q == fmpq_mat(self.nrows, self.ncols)
        return all(x.num == 0 for r in self._rows for x in r)

    def is_identity(self):
        return self.nrows == self.ncols and self == Mat.identity(self.nrows, self.field)

    def with_block(self, r0, c0, block: "Mat"):
        rows = self.tolist()
        for i in range(block.nrows):
            for j in range(block.ncols):
                rows[r0 + i][c0 + j] = block[i, j]
        field = QT if QT in (self.field, block.field) else QQ
        return Mat(rows, field, ncols=self.ncols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]):
        return Mat([[self[i, j] for j in cols] for i in rows], self.field, ncols=len(cols))

    def hstack(self, other):
        a, b = self._pair(other)
        rows = [ra + rb for ra, rb in zip(a.tolist(), b.tolist())]
        return Mat(rows, a.field, ncols=a.ncols + b.ncols)

    def vstack(self, other):
        a, b = self._pair(other)
        return Mat(a.tolist() + b.tolist(), a.field, ncols=a.ncols)

    # -- t-adic helpers
    def min_valuation(self):
        if self.field == QQ:
            return 0 if not self.is_zero() else INF
        return min((t_valuation(x) for r in self._rows for x in r), default=INF)

    def at_zero(self) -> "Mat":
        """Specialise t = 0 (every entry must be holomorphic)."""
        if self.field == QQ:
            return self
        return Mat([[x.at_zero() for x in r] for r in self._rows], QQ, ncols=self.ncols)

    def canonical_rows(self):
        return [[(x.canonical() if isinstance(x, RatFunT) else rat_str(x)) for x in r] for r in self.tolist()]

    # -- linear algebra (delegates)
    def rank(self):
        if self.field == QQ:
            return self._q.rank()
        return len(_rref(self.tolist(), self.ncols)[1])

    def det(self):
        if self.field == QQ:
            return self._q.det()
        return _det_generic(self.tolist())

    def inverse(self):
        if self.nrows != self.ncols:
            raise ValueError("inverse of non-square matrix")
        if self.field == QQ:
            return Mat(self._q.inv())
        n = self.nrows
        aug = [r + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.tolist())]
        red, piv = _rref(aug, 2 * n)
        if piv[:n] != list(range(n)) or len([p for p in piv if p < n]) != n:
            raise ZeroDivisionError("singular matrix")
        return Mat([r[n:] for r in red[:n]], QT, ncols=n)

    def __repr__(self):
        return f"Mat<{self.field}>{self.canonical_rows()}"


# ---------------------------------------------------------------------------
# generic row reduction
# ---------------------------------------------------------------------------

def _rref(rows, ncols):
    """Reduced row echelon form over any exact field.

    Returns (rows, pivot_columns).  Works on RatFunT and fmpq entries.
    """
    rows = [[x if isinstance(x, RatFunT) else Q(x) for x in r] for r in rows]
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        p = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                p = i
                break
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c] if not isinstance(rows[r][c], RatFunT) else rows[r][c].inverse()
        rows[r] = [x * inv if x != 0 else x for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y if y != 0 else x for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def _det_generic(rows):
    rows = [[as_ratfun(x) for x in r] for r in rows]
    n = len(rows)
    det = as_ratfun(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return as_ratfun(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        piv = as_ratfun(rows[c][c])
        det = det * piv
        inv = piv.inverse()
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return det


def rref(M: Mat):
    """(reduced row echelon Mat, pivot columns)."""
    if M.field == QQ:
        if M.nrows == 0 or M.ncols == 0:
            return M, []
        R, rank = M.qmat().rref()
        pivots = []
        for i in range(rank):
            for j in range(M.ncols):
                if R[i, j] != 0:
                    pivots.append(j)
                    break
        return Mat(R), pivots
    rows, piv = _rref(M.tolist(), M.ncols)
    return Mat(rows, QT, ncols=M.ncols), piv


def kernel(M: Mat) -> Mat:
    """Basis of the right kernel as columns, in reduced column-echelon form.

    Column j has a 1 in the j-th free coordinate and zeros in the other free
    coordinates.
    """
    R, piv = rref(M)
    n = M.ncols
    free = [j for j in range(n) if j not in set(piv)]
    cols = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, p in enumerate(piv):
            v[p] = -R[i, f]
        cols.append(v)
    if not cols:
        return Mat.zeros(n, 0, M.field)
    return Mat.from_columns(cols, n, M.field)


def image(M: Mat) -> Mat:
    """Basis of the column space, in reduced column-echelon form."""
    if M.ncols == 0 or M.nrows == 0:
        return Mat.zeros(M.nrows, 0, M.field)
    R, piv = rref(M.transpose())
    rows = [R.row(i) for i in range(len(piv))]
    if not rows:
        return Mat.zeros(M.nrows, 0, M.field)
    return Mat(rows, M.field, ncols=M.nrows).transpose()


def solve(M: Mat, b) -> list | None:
    """Some solution x of M x = b, or None when the system is inconsistent."""
    if isinstance(b, Mat):
        b = b.column(0)
    aug = M.hstack(Mat.from_columns([b], M.nrows, M.field))
    R, piv = rref(aug)
    if M.ncols in piv:
        return None
    x = [0] * M.ncols
    for i, p in enumerate(piv):
        x[p] = R[i, M.ncols]
    return [Q(v) if M.field == QQ else as_ratfun(v) for v in x]


def solve_matrix(M: Mat, B: Mat) -> Mat | None:
    """X with M X = B (all columns at once), or None."""
    aug = M.hstack(B)
    R, piv = rref(aug)
    if any(p >= M.ncols for p in piv):
        return None
    X = [[0] * B.ncols for _ in range(M.ncols)]
    for i, p in enumerate(piv):
        for j in range(B.ncols):
            X[p][j] = R[i, M.ncols + j]
    return Mat(X, M.field if M.field == B.field else QT, ncols=B.ncols)


def span_basis(vectors: Sequence[Sequence], dim: int, field=QQ) -> Mat:
    """Reduced column-echelon basis of the span of the given vectors."""
    if not vectors:
        return Mat.zeros(dim, 0, field)
    return image(Mat.from_columns(vectors, dim, field))


def _rank0(A: Mat) -> int:
    return A.rank() if A.ncols and A.nrows else 0


def same_span(A: Mat, B: Mat) -> bool:
    """True iff the column spans of A and B coincide."""
    ra, rb = _rank0(A), _rank0(B)
    if ra != rb:
        return False
    if ra == 0:
        return True
    return A.hstack(B).rank() == ra


def contains_span(A: Mat, B: Mat) -> bool:
    """True iff span(B) is contained in span(A)."""
    if _rank0(B) == 0:
        return True
    if A.ncols == 0:
        return False
    return A.hstack(B).rank() == A.rank()


# ---------------------------------------------------------------------------
# Smith normal form over the local ring Q[t]_(t)
# ---------------------------------------------------------------------------

def t_adic_snf(M: Mat):
    """Smith form of a holomorphic matrix over Q[t] localised at t = 0.

    Returns ``(exponents, L, R)`` with ``L * M * R`` diagonal, diagonal entries
    ``t^e`` (e finite) and zero beyond the rank.  ``exponents`` has one entry
    per column of ``M``; columns that end up in the kernel get ``math.inf``.
    Both transforms are units of the local ring: all entries holomorphic at 0
    and invertible after setting t = 0.

    Pivot rule: an entry of minimal valuation in the remaining block, ties
    broken by row-major position.  Elimination multipliers then have
    valuation >= 0, so no poles at 0 are ever introduced.
    """
    m, n = M.nrows, M.ncols
    A = M.to_field(QT).tolist()
    for row in A:
        for x in row:
            if t_valuation(x) < 0:
                raise NonHolomorphicInput("t_adic_snf needs entries holomorphic at t=0")
    L = Mat.identity(m, QT).tolist()
    R = Mat.identity(n, QT).tolist()
    exps = []
    zero = as_ratfun(0)

    for k in range(min(m, n)):
        best = None
        for i in range(k, m):
            for j in range(k, n):
                x = A[i][j]
                if x.num != 0:
                    v = t_valuation(x)
                    if best is None or v < best[0]:
                        best = (v, i, j)
                        if v == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        e, pi, pj = best
        # move pivot to (k, k)
        A[k], A[pi] = A[pi], A[k]
        L[k], L[pi] = L[pi], L[k]
        if pj != k:
            for row in A:
                row[k], row[pj] = row[pj], row[k]
            for row in R:
                row[k], row[pj] = row[pj], row[k]
        # normalise the pivot to t^e by a unit row scaling
        unit = A[k][k] / tpow(e)
        uinv = unit.inverse()
        A[k] = [x * uinv for x in A[k]]
        L[k] = [x * uinv for x in L[k]]
        piv = A[k][k]
        # clear column k below
        for i in range(k + 1, m):
            if A[i][k].num != 0:
                f = A[i][k] / piv
                A[i] = [x - f * y if y.num != 0 else x for x, y in zip(A[i], A[k])]
                L[i] = [x - f * y if y.num != 0 else x for x, y in zip(L[i], L[k])]
        # clear row k to the right
        for j in range(k + 1, n):
            if A[k][j].num != 0:
                f = A[k][j] / piv
                for row in A:
                    if row[k].num != 0:
                        row[j] = row[j] - f * row[k]
                for row in R:
                    if row[k].num != 0:
                        row[j] = row[j] - f * row[k]
        exps.append(e)
    exps += [INF] * (n - len(exps))
    return exps, Mat(L, QT, ncols=m), Mat(R, QT, ncols=n)


def format_exponent(e) -> str | int:
    return "inf" if e == INF else int(e)
