"""Graded Hecke algebra elements in PBW normal form.

An element is stored as ``{w: p_w}`` meaning  sum_w t_w * p_w  with the
polynomial p_w in S(V) on the *right*.  The only rewriting rule needed is

    p * t_s  =  t_s * s(p)  +  k_s * D_s(p),

which follows from  t_s v - s(v) t_s = k_s <v, alpha^vee>.  The twisted
derivation D_s is computed on monomials by  D(1) = 0,
D(v q) = <v, alpha^vee> s(q) + v D(q).
"""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, Sequence

from flint import fmpq

from .exact import Poly, Q
from .rootsys import RootDatum, WeylElt


class _Rewriter:
    """Per-datum caches for the reflection action and D_s on monomials."""

    def __init__(self, datum: RootDatum):
        self.d = datum
        n = datum.n
        self.n = n
        # s_i(x_j) = x_j - P[i][j] x_i
        self.refl_images = []
        for i in range(n):
            imgs = []
            for j in range(n):
                coeffs = [fmpq(0)] * n
                coeffs[j] += 1
                coeffs[i] -= datum.P[i][j]
                imgs.append(Poly.linear(coeffs))
            self.refl_images.append(imgs)
        self._refl_mono = {}
        self._D_mono = {}

    def reflect_mono(self, i, e) -> Poly:
        key = (i, e)
        r = self._refl_mono.get(key)
        if r is None:
            r = Poly(self.n, {e: 1}).substitute(self.refl_images[i])
            self._refl_mono[key] = r
        return r

    def reflect(self, i, p: Poly) -> Poly:
        out = Poly(self.n)
        for e, c in p.terms.items():
            out = out + self.reflect_mono(i, e) * c
        return out

    def D_mono(self, i, e) -> Poly:
        key = (i, e)
        r = self._D_mono.get(key)
        if r is not None:
            return r
        if sum(e) == 0:
            r = Poly(self.n)
        else:
            j = next(idx for idx, k in enumerate(e) if k)
            rest = list(e)
            rest[j] -= 1
            rest = tuple(rest)
            xj = Poly.var(self.n, j)
            # D(x_j q) = <alpha_j, alpha_i^vee> s_i(q) + x_j D(q)
            r = self.reflect_mono(i, rest) * self.d.P[i][j] + xj * self.D_mono(i, rest)
        self._D_mono[key] = r
        return r

    def D(self, i, p: Poly) -> Poly:
        out = Poly(self.n)
        for e, c in p.terms.items():
            out = out + self.D_mono(i, e) * c
        return out


@lru_cache(maxsize=None)
def _rewriter(datum: RootDatum) -> _Rewriter:
    return _Rewriter(datum)


class AlgebraElement:
    """sum_w t_w * p_w over a fixed root datum."""

    __slots__ = ("datum", "terms")

    def __init__(self, datum: RootDatum, terms: Dict[WeylElt, Poly] | None = None):
        self.datum = datum
        clean = {}
        for w, p in (terms or {}).items():
            if not isinstance(p, Poly):
                p = Poly.const(datum.n, p)
            if not p.is_zero():
                clean[w] = p
        self.terms = clean

    # constructors
    @classmethod
    def one(cls, datum):
        return cls(datum, {datum.e: Poly.const(datum.n, 1)})

    @classmethod
    def t(cls, datum, w: WeylElt):
        return cls(datum, {w: Poly.const(datum.n, 1)})

    @classmethod
    def poly(cls, datum, p: Poly):
        return cls(datum, {datum.e: p})

    @classmethod
    def vec(cls, datum, coeffs: Sequence):
        """The element v of V (simple-root coordinates) as t_e * v."""
        return cls.poly(datum, Poly.linear([Q(c) for c in coeffs]))

    @classmethod
    def root(cls, datum, i):
        return cls.poly(datum, Poly.var(datum.n, i))

    # arithmetic
    def __add__(self, other):
        other = _coerce(self.datum, other)
        terms = dict(self.terms)
        for w, p in other.terms.items():
            terms[w] = terms[w] + p if w in terms else p
        return AlgebraElement(self.datum, terms)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.datum, {w: -p for w, p in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(self.datum, other))

    def __rsub__(self, other):
        return _coerce(self.datum, other) - self

    def scale(self, c):
        return AlgebraElement(self.datum, {w: p * Q(c) for w, p in self.terms.items()})

    def times_t_simple(self, i) -> "AlgebraElement":
        """self * t_{s_i} in normal form."""
        rw = _rewriter(self.datum)
        si = self.datum.s(i)
        k = self.datum.k[i]
        terms: Dict[WeylElt, Poly] = {}

        def add(w, p):
            if p.is_zero():
                return
            terms[w] = terms[w] + p if w in terms else p

        for w, p in self.terms.items():
            add(self.datum.mul(w, si), rw.reflect(i, p))
            add(w, rw.D(i, p) * k)
        return AlgebraElement(self.datum, terms)

    def times_poly(self, q: Poly) -> "AlgebraElement":
        return AlgebraElement(self.datum, {w: p * q for w, p in self.terms.items()})

    def times_t(self, w: WeylElt) -> "AlgebraElement":
        out = self
        for i in w.word:
            out = out.times_t_simple(i)
        return out

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            if isinstance(other, Poly):
                return self.times_poly(other)
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, c):
        if isinstance(c, Poly):
            return multiply(AlgebraElement.poly(self.datum, c), self)
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            other = _coerce(self.datum, other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def support(self):
        return sorted(self.terms, key=lambda w: (w.length, w.word))

    def degree(self):
        return max((p.degree() for p in self.terms.values()), default=-1)

    def to_str(self) -> str:
        """Deterministic debug form like ``t[s_beta.s_alpha] * (alpha^2 - 2)``."""
        if not self.terms:
            return "0"
        parts = []
        for w in self.support():
            p = self.terms[w]
            lbl = "e" if not w.word else ".".join("s_" + self.datum.names[i] for i in w.word)
            parts.append(f"t[{lbl}] * ({p.to_str(self.datum.names)})")
        return " + ".join(parts)

    __str__ = to_str

    def __repr__(self):
        return f"AlgebraElement({self.to_str()})"


def _coerce(datum, x) -> AlgebraElement:
    if isinstance(x, AlgebraElement):
        return x
    if isinstance(x, Poly):
        return AlgebraElement.poly(datum, x)
    return AlgebraElement.poly(datum, Poly.const(datum.n, Q(x)))


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Normal form of x*y: push polynomials rightwards through t_w letter by letter."""
    if x.datum is not y.datum:
        raise ValueError("elements live over different root data")
    out = AlgebraElement(x.datum)
    for w, q in y.terms.items():
        out = out + x.times_t(w).times_poly(q)
    return out


def push_variable(datum: RootDatum, v, w: WeylElt) -> AlgebraElement:
    """Normal form of v * t_w for a linear v (coordinates or a linear Poly)."""
    if not isinstance(v, Poly):
        v = Poly.linear([Q(c) for c in v])
    return AlgebraElement.poly(datum, v).times_t(w)


def tau_factor(datum: RootDatum, i) -> AlgebraElement:
    """t_{s_i} alpha_i - k_i."""
    return AlgebraElement(datum, {datum.s(i): Poly.var(datum.n, i),
                                  datum.e: Poly.const(datum.n, -datum.k[i])})


def tau_tilde(datum: RootDatum, w: WeylElt, word: Sequence[int] | None = None) -> AlgebraElement:
    """(t_{s_r} a_r - k_r) ... (t_{s_1} a_1 - k_1) along a reduced word of w.

    ``word`` is read left to right (w = s_{word[0]} s_{word[1]} ...), so the
    factors appear in the same order.
    """
    word = w.word if word is None else tuple(word)
    out = AlgebraElement.one(datum)
    for i in word:
        out = multiply(out, tau_factor(datum, i))
    return out


def act_coordinates(datum: RootDatum, w: WeylElt, v) -> Poly:
    """w(v) as a linear polynomial."""
    return Poly.linear(list(w.act([Q(c) for c in v])))
