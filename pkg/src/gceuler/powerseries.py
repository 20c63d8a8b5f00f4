"""Exact truncated Laurent series in u = 1/z over Fraction.

A series carries its own reliability window [min_exp, trunc_order]: reading a
coefficient above trunc_order raises TruncationError (truncation loss is
always explicit), reading below min_exp returns exact zero.  Negative
exponents represent positive powers of z.

Arithmetic never extends a truncation order.  For multiplication the reliable
order of f*g is min(N_f + min_g, N_g + min_f): for ordinary power series
(min exponents >= 0) this is the usual min(N_f, N_g); multiplying by a
z-polynomial (negative min exponent) genuinely loses order and the rule
accounts for it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Scalar = Union[Fraction, int]


class TruncationError(Exception):
    """A coefficient beyond the reliable window was requested."""


class TruncatedLaurentSeries:
    __slots__ = ("min_exp", "trunc_order", "coeffs")

    def __init__(self, coeffs: Iterable[Scalar], min_exp: int, trunc_order: int):
        cs = [Fraction(c) for c in coeffs]
        if min_exp + len(cs) - 1 > trunc_order:
            raise TruncationError(
                f"coefficients reach exponent {min_exp + len(cs) - 1} "
                f"beyond trunc_order {trunc_order}"
            )
        # strip zero margins so min_exp always points at a nonzero coefficient
        lo = 0
        while lo < len(cs) and cs[lo] == 0:
            lo += 1
        hi = len(cs)
        while hi > lo and cs[hi - 1] == 0:
            hi -= 1
        if hi == lo:
            object.__setattr__(self, "min_exp", trunc_order + 1)
            object.__setattr__(self, "coeffs", ())
        else:
            object.__setattr__(self, "min_exp", min_exp + lo)
            object.__setattr__(self, "coeffs", tuple(cs[lo:hi]))
        object.__setattr__(self, "trunc_order", trunc_order)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedLaurentSeries is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, trunc_order: int) -> "TruncatedLaurentSeries":
        return cls((), 0, trunc_order)

    @classmethod
    def one(cls, trunc_order: int) -> "TruncatedLaurentSeries":
        return cls((Fraction(1),), 0, trunc_order)

    @classmethod
    def monomial(cls, exp: int, coeff: Scalar, trunc_order: int) -> "TruncatedLaurentSeries":
        return cls((Fraction(coeff),), exp, trunc_order)

    @classmethod
    def from_terms(cls, terms: Mapping[int, Scalar], trunc_order: int) -> "TruncatedLaurentSeries":
        if not terms:
            return cls.zero(trunc_order)
        lo = min(terms)
        hi = max(terms)
        cs = [Fraction(0)] * (hi - lo + 1)
        for e, c in terms.items():
            cs[e - lo] = Fraction(c)
        return cls(cs, lo, trunc_order)

    # -- inspection ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, e: int) -> Fraction:
        if e > self.trunc_order:
            raise TruncationError(
                f"exponent {e} beyond reliable order {self.trunc_order}"
            )
        if e < self.min_exp or e > self.min_exp + len(self.coeffs) - 1:
            return Fraction(0)
        return self.coeffs[e - self.min_exp]

    def terms(self) -> list[tuple[int, Fraction]]:
        """Nonzero (exponent, coefficient) pairs, ascending."""
        return [
            (self.min_exp + i, c) for i, c in enumerate(self.coeffs) if c != 0
        ]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedLaurentSeries):
            return NotImplemented
        return (
            self.trunc_order == other.trunc_order
            and self.min_exp == other.min_exp
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.min_exp, self.trunc_order, self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return f"TLS(0; N={self.trunc_order})"
        ts = " + ".join(f"({c})*u^{e}" for e, c in self.terms()[:6])
        more = " + ..." if len(self.terms()) > 6 else ""
        return f"TLS({ts}{more}; N={self.trunc_order})"

    # -- arithmetic ---------------------------------------------------

    def __neg__(self):
        return TruncatedLaurentSeries(
            tuple(-c for c in self.coeffs), self.min_exp, self.trunc_order
        )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedLaurentSeries.monomial(0, other, self.trunc_order)
        if not isinstance(other, TruncatedLaurentSeries):
            return NotImplemented
        order = min(self.trunc_order, other.trunc_order)
        terms: dict[int, Fraction] = {}
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                e = s.min_exp + i
                if e <= order and c != 0:
                    terms[e] = terms.get(e, Fraction(0)) + c
        return TruncatedLaurentSeries.from_terms(terms, order)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedLaurentSeries.monomial(0, other, self.trunc_order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedLaurentSeries(
                tuple(c * other for c in self.coeffs), self.min_exp, self.trunc_order
            )
        if not isinstance(other, TruncatedLaurentSeries):
            return NotImplemented
        order = min(
            self.trunc_order + other.min_exp, other.trunc_order + self.min_exp
        )
        if self.is_zero() or other.is_zero():
            return TruncatedLaurentSeries.zero(order)
        lo = self.min_exp + other.min_exp
        out = [Fraction(0)] * (order - lo + 1)
        for i, cf in enumerate(self.coeffs):
            if not cf:
                continue
            ef = self.min_exp + i
            cap = order - ef
            for j, cg in enumerate(other.coeffs):
                eg = other.min_exp + j
                if eg > cap:
                    break
                if cg:
                    out[ef + eg - lo] += cf * cg
        return TruncatedLaurentSeries(out, lo, order)

    __rmul__ = __mul__

    def truncate(self, order: int) -> "TruncatedLaurentSeries":
        """Restrict the reliable window; order may not exceed the current one."""
        if order > self.trunc_order:
            raise TruncationError(
                f"cannot extend order {self.trunc_order} to {order}"
            )
        kept = [c for i, c in enumerate(self.coeffs) if self.min_exp + i <= order]
        return TruncatedLaurentSeries(kept, self.min_exp, order)


# -- module-level operation names ---------------------------------------

def series_add(f: TruncatedLaurentSeries, g: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    return f + g


def series_mul(f: TruncatedLaurentSeries, g: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    return f * g


def series_pow(f: TruncatedLaurentSeries, n: int) -> TruncatedLaurentSeries:
    """f**n for n >= 0 by binary exponentiation (n = 0 gives 1 at f's order)."""
    if n < 0:
        raise ValueError("series_pow needs n >= 0; use series_inv_pow for negative powers")
    result = TruncatedLaurentSeries.one(f.trunc_order)
    base = f
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def coefficient(f: TruncatedLaurentSeries, e: int) -> Fraction:
    return f.coefficient(e)


def series_log1p(f: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    """log(f) for f = 1 + w with w supported on positive exponents.

    log(1+w) = sum_{m>=1} (-1)^{m+1} w^m / m; the sum is finite because each
    power of w gains at least min_exp(w) in valuation.
    """
    if f.min_exp < 0:
        raise ValueError("series_log1p requires no negative exponents")
    if f.coefficient(0) != 1:
        raise ValueError("series_log1p requires constant term exactly 1")
    order = f.trunc_order
    w = f - TruncatedLaurentSeries.one(order)
    if w.is_zero():
        return TruncatedLaurentSeries.zero(order)
    acc: dict[int, Fraction] = {}
    wp = w
    m = 1
    while not wp.is_zero():
        sign = 1 if m % 2 == 1 else -1
        for e, c in wp.terms():
            if e <= order:
                acc[e] = acc.get(e, Fraction(0)) + Fraction(sign, m) * c
        if wp.min_exp + w.min_exp > order:
            break
        wp = wp * w
        m += 1
    return TruncatedLaurentSeries.from_terms(acc, order)


def series_exp(f: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    """exp(f) for f with zero constant term and no negative exponents.

    Uses the derivative recurrence g_n = (1/n) sum_j j f_j g_{n-j}.
    """
    if f.min_exp < 0:
        raise ValueError("series_exp requires no negative exponents")
    if not f.is_zero() and f.coefficient(0) != 0:
        raise ValueError("series_exp requires zero constant term")
    order = f.trunc_order
    fterms = f.terms()
    g = [Fraction(0)] * (order + 1)
    g[0] = Fraction(1)
    for n in range(1, order + 1):
        s = Fraction(0)
        for j, fj in fterms:
            if j > n:
                break
            s += j * fj * g[n - j]
        if s:
            g[n] = s / n
    return TruncatedLaurentSeries(g, 0, order)


def series_inv_pow(f: TruncatedLaurentSeries, m: int) -> TruncatedLaurentSeries:
    """Exact f**(-m) for m >= 1.

    With a = min_exp(f) and leading coefficient c, write f = c u^a (1 + h);
    then f^(-m) = c^(-m) u^(-am) sum_j C(m+j-1, j) (-h)^j.  The result's
    reliable order is N_f - a(m+1) (the relative precision of 1 + h shifted
    to the new leading exponent).
    """
    if m < 1:
        raise ValueError(f"series_inv_pow requires m >= 1, got {m}")
    if f.is_zero():
        raise ValueError("cannot invert the zero series")
    a = f.min_exp
    c = f.coeffs[0]
    rel_order = f.trunc_order - a  # reliable relative order of 1 + h
    order = f.trunc_order - a * (m + 1)
    # h as a plain power series (exponents >= 1) at relative order
    h = TruncatedLaurentSeries(
        tuple(ci / c for ci in f.coeffs[1:]), 1, rel_order
    )
    acc: dict[int, Fraction] = {0: Fraction(1)}
    hp = TruncatedLaurentSeries.one(rel_order)
    j = 1
    binom = Fraction(1)
    while True:
        hp = hp * h
        if hp.is_zero():
            break
        binom = binom * (m + j - 1) / j  # C(m+j-1, j)
        sign = 1 if j % 2 == 0 else -1
        for e, ce in hp.terms():
            if e <= rel_order:
                acc[e] = acc.get(e, Fraction(0)) + sign * binom * ce
        if hp.min_exp + h.min_exp > rel_order:
            break
        j += 1
    shifted = {e - a * m: ce / c**m for e, ce in acc.items() if e - a * m <= order}
    return TruncatedLaurentSeries.from_terms(shifted, order)


def series_substitute_power(f: TruncatedLaurentSeries, ell: int) -> TruncatedLaurentSeries:
    """Substitute u -> u^ell, i.e. z -> z^ell; exponents scale by ell."""
    if ell < 1:
        raise ValueError(f"series_substitute_power requires ell >= 1, got {ell}")
    if ell == 1:
        return f
    order = ell * f.trunc_order
    return TruncatedLaurentSeries.from_terms(
        {ell * e: c for e, c in f.terms()}, order
    )
