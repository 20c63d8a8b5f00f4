"""Closed-form asymptotics in sign + log-magnitude arithmetic.

The exact chi values grow like g^g, far past any fixed-width float, so all
magnitude work happens in natural-log space with the sign carried
separately.  mpmath supplies the high-precision arithmetic; the default
working precision is 192 bits, comfortably above the 128-bit floor needed
so that argument reduction of cos(sqrt(pi g / 4) - pi g / 4 - pi / 8) at
g up to 1e6 leaves the value accurate to far below the g^(1/2 - mu*) bound
(argument magnitude < 1e6, so >= 170 significant bits survive reduction,
versus bound magnitudes of order 1e-42 at mu* = 7.5: error budget met with
~125 bits to spare).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .euler_series import ComplexKind, EulerTable, xi_table

DEFAULT_PREC_BITS = 192


def _mpf_of_exact(x) -> mp.mpf:
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / mp.mpf(x.denominator)
    return mp.mpf(x)


@dataclass(frozen=True)
class SignedLogValue:
    """A real number as (sign, log|value|); multiplication adds logs."""

    sign: int  # -1, 0, +1
    log_mag: mp.mpf  # natural log of |value|; ignored when sign == 0

    @classmethod
    def from_exact(cls, x) -> "SignedLogValue":
        if x == 0:
            return cls(0, mp.mpf("-inf"))
        m = _mpf_of_exact(x)
        return cls(1 if m > 0 else -1, mp.log(abs(m)))

    @classmethod
    def from_mpf(cls, m: mp.mpf) -> "SignedLogValue":
        if m == 0:
            return cls(0, mp.mpf("-inf"))
        return cls(1 if m > 0 else -1, mp.log(abs(m)))

    def __mul__(self, other: "SignedLogValue") -> "SignedLogValue":
        if self.sign == 0 or other.sign == 0:
            return SignedLogValue(0, mp.mpf("-inf"))
        return SignedLogValue(self.sign * other.sign, self.log_mag + other.log_mag)

    def __truediv__(self, other: "SignedLogValue") -> "SignedLogValue":
        if other.sign == 0:
            raise ZeroDivisionError("SignedLogValue division by zero")
        if self.sign == 0:
            return SignedLogValue(0, mp.mpf("-inf"))
        return SignedLogValue(self.sign * other.sign, self.log_mag - other.log_mag)

    def __neg__(self) -> "SignedLogValue":
        return SignedLogValue(-self.sign, self.log_mag)

    def to_mpf(self) -> mp.mpf:
        if self.sign == 0:
            return mp.mpf(0)
        return self.sign * mp.exp(self.log_mag)

    @property
    def log10_mag(self) -> mp.mpf:
        return self.log_mag / mp.log(10)


def cos_argument(g: int) -> mp.mpf:
    """sqrt(pi g / 4) - pi g / 4 - pi / 8."""
    gm = mp.mpf(g)
    return mp.sqrt(mp.pi * gm / 4) - mp.pi * gm / 4 - mp.pi / 8


def asym_value(g: int, kind: ComplexKind) -> SignedLogValue:
    """The closed-form large-g value for chi of the given complex.

    Even g: (-1)^(g/2) sqrt(8 pi / g^3) (g / 2 pi e)^g.
    Odd g:  (sqrt(2)/g) cos(sqrt(pi g/4) - pi g/4 - pi/8)
            * exp(sqrt(pi g/4)) (g / 2 pi e)^(g/2).
    The odd commutative and associative complexes get the negated value.
    """
    if g < 2:
        raise ValueError(f"g must be >= 2, got {g}")
    with mp.workprec(DEFAULT_PREC_BITS):
        gm = mp.mpf(g)
        base = mp.log(gm / (2 * mp.pi * mp.e))
        if g % 2 == 0:
            sign = 1 if (g // 2) % 2 == 0 else -1
            log_mag = mp.log(mp.sqrt(8 * mp.pi / gm**3)) + gm * base
        else:
            c = mp.cos(cos_argument(g))
            if c == 0:
                return SignedLogValue(0, mp.mpf("-inf"))
            sign = 1 if c > 0 else -1
            log_mag = (
                mp.log(mp.sqrt(2) / gm)
                + mp.log(abs(c))
                + mp.sqrt(mp.pi * gm / 4)
                + (gm / 2) * base
            )
        value = SignedLogValue(sign, log_mag)
        if kind is ComplexKind.GC_EVEN:
            return value
        return -value  # GC_odd and AGC: chi ~ -chi(GC_even)


@dataclass
class RatioRow:
    g: int
    chi: int
    asym: SignedLogValue
    ratio: mp.mpf | None  # None when the asymptotic value is exactly zero

    @property
    def ratio_minus_one(self) -> mp.mpf | None:
        return None if self.ratio is None else self.ratio - 1


def ratio_table(kind: ComplexKind, table: EulerTable, g_range=None) -> list[RatioRow]:
    """chi_exact(g) / asym(g) computed in log space, with |ratio - 1| reported."""
    if g_range is None:
        g_range = sorted(table.values)
    rows = []
    with mp.workprec(DEFAULT_PREC_BITS):
        for g in g_range:
            chi = table.values[g]
            a = asym_value(g, kind)
            if a.sign == 0 or chi == 0:
                rows.append(RatioRow(g, chi, a, None))
                continue
            ratio = (SignedLogValue.from_exact(chi) / a).to_mpf()
            rows.append(RatioRow(g, chi, a, ratio))
    return rows


@dataclass
class CosScanReport:
    mu_star: float
    gmax: int
    violations: list[tuple[int, mp.mpf, mp.mpf]]  # (g, |cos|, bound)

    @property
    def clean_from(self) -> int:
        """Smallest odd g1 such that no violation occurs at or beyond g1."""
        if not self.violations:
            return 3
        return self.violations[-1][0] + 2


def cos_lower_bound_scan(gmax: int, mu_star: float) -> CosScanReport:
    """Scan odd g <= gmax for |cos(...)| < g^(1/2 - mu*).

    Only finitely many violations can occur for mu* above the irrationality
    measure of pi (known <= 7.103...); the report lists each one.
    """
    if mu_star <= 7.103:
        raise ValueError("mu_star must exceed the known irrationality bound 7.103")
    violations = []
    with mp.workprec(DEFAULT_PREC_BITS):
        mu = mp.mpf(mu_star)
        for g in range(3, gmax + 1, 2):
            c = abs(mp.cos(cos_argument(g)))
            bound = mp.mpf(g) ** (mp.mpf("0.5") - mu)
            if c < bound:
                violations.append((g, c, bound))
    return CosScanReport(mu_star, gmax, violations)


def xi22_asym_check(n_range, parity: str = "even") -> dict[int, mp.mpf]:
    """ratio of exact xi_{2n,2} to its oscillatory closed form, per n.

    Closed form: +-(1/sqrt(2 n pi)) (n / e pi)^n e^(sqrt(pi n / 2))
    cos(sqrt(pi n / 2) - pi (n + 3/4) / 2); cosine-zero entries map to None.
    """
    n_range = list(n_range)
    table = xi_table(2, parity, 2 * max(n_range))
    out: dict[int, mp.mpf] = {}
    with mp.workprec(DEFAULT_PREC_BITS):
        sgn = 1 if parity == "even" else -1
        for n in n_range:
            nm = mp.mpf(n)
            c = mp.cos(mp.sqrt(mp.pi * nm / 2) - mp.pi * (nm + mp.mpf(3) / 4) / 2)
            if c == 0:
                out[n] = None
                continue
            formula = SignedLogValue(
                sgn * (1 if c > 0 else -1),
                -mp.log(mp.sqrt(2 * nm * mp.pi))
                + nm * mp.log(nm / (mp.e * mp.pi))
                + mp.sqrt(mp.pi * nm / 2)
                + mp.log(abs(c)),
            )
            exact = SignedLogValue.from_exact(table[2 * n])
            out[n] = (exact / formula).to_mpf() if exact.sign else None
    return out


def hgc_lower_bound(g: int, c_const: float) -> SignedLogValue:
    """(C g)^g for even g, (C g)^(g/2) for odd g; requires 0 < C < 1/(2 pi e)."""
    with mp.workprec(DEFAULT_PREC_BITS):
        limit = 1 / (2 * mp.pi * mp.e)
        c = mp.mpf(c_const)
        if not 0 < c < limit:
            raise ValueError(
                f"C must lie in (0, {mp.nstr(limit, 8)}), got {c_const}"
            )
        gm = mp.mpf(g)
        exponent = gm if g % 2 == 0 else gm / 2
        return SignedLogValue(1, exponent * mp.log(c * gm))


def hgc_bound_report(table: EulerTable, c_const: float) -> list[tuple[int, bool]]:
    """Per-g check |chi_exact(g)| >= (C g)^(g or g/2); |chi| lower-bounds dim H."""
    out = []
    with mp.workprec(DEFAULT_PREC_BITS):
        for g, chi in sorted(table.values.items()):
            bound = hgc_lower_bound(g, c_const)
            if chi == 0:
                out.append((g, False))
                continue
            out.append((g, SignedLogValue.from_exact(chi).log_mag >= bound.log_mag))
    return out
