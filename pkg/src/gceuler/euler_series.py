"""Generating functions for graph-complex Euler characteristics.

The pipeline: for each index k build the divisor polynomial M_k and the log
series L_k, combine them into the Bernoulli-free part G_k, add the Bernoulli
tail to obtain the series Psi_k, then resum over (k, l) with Moebius weights
to extract the per-rank connected values chi(g), or exponentiate the plain
k-sum to obtain the disconnected-by-Euler-degree values chi_n.

Two configurations share the code path: the commutative complexes use the
Moebius-based M_k with a free global sign, and the associative
(Getzler-Kapranov) variant uses the totient-based M_k with the sign fixed
to the odd structure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exactnum import bernoulli, divisors, moebius, totient
from .powerseries import (
    TruncatedLaurentSeries,
    series_exp,
    series_inv_pow,
    series_log1p,
    series_substitute_power,
)


class ConsistencyError(Exception):
    """An exact identity the pipeline relies on failed (arithmetic bug)."""


class ComplexKind(Enum):
    GC_EVEN = "gc-even"
    GC_ODD = "gc-odd"
    AGC = "agc"

    @property
    def sign(self) -> int:
        """Global sign of the Bernoulli-free bracket; the AGC series is fixed odd-like."""
        return 1 if self is ComplexKind.GC_EVEN else -1

    @property
    def variant(self) -> str:
        return "totient" if self is ComplexKind.AGC else "moebius"


PARITY_SIGNS = {"even": 1, "odd": -1}


def parity_sign(parity: str) -> int:
    try:
        return PARITY_SIGNS[parity]
    except KeyError:
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}") from None


@dataclass
class EulerTable:
    """Exact integer chi values indexed by rank g or Euler degree n."""

    kind: str
    index_meaning: str  # "rank" or "euler-degree"
    values: dict[int, int]
    method: str
    limit: int

    def __post_init__(self):
        if self.values:
            start = 2 if self.index_meaning == "rank" else 0
            idx = sorted(self.values)
            if idx != list(range(start, start + len(idx))):
                raise ValueError(f"index range not contiguous from {start}: {idx!r}")


def _arith(variant: str, d: int) -> int:
    if variant == "moebius":
        return moebius(d)
    if variant == "totient":
        return totient(d)
    raise ValueError(f"unknown variant {variant!r}")


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def m_polynomial(k: int, variant: str = "moebius", order: int = 0) -> TruncatedLaurentSeries:
    """M_k(z) = (1/k) sum_{d|k} mu(d) z^{k/d} as a Laurent polynomial in u = 1/z.

    The totient variant replaces mu by phi.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    terms = {-(k // d): Fraction(_arith(variant, d), k) for d in divisors(k)}
    return TruncatedLaurentSeries.from_terms(terms, order)


def _k_mk_over_zk(k: int, variant: str, order: int) -> TruncatedLaurentSeries:
    """k M_k(z) / z^k = 1 + O(u); exponents k - k/d for d | k."""
    terms = {k - k // d: Fraction(_arith(variant, d)) for d in divisors(k)}
    return TruncatedLaurentSeries.from_terms(terms, order)


def l_series(k: int, order: int, variant: str = "moebius") -> TruncatedLaurentSeries:
    """L_k = log(k M_k(z) / z^k), a series with zero constant term."""
    return series_log1p(_k_mk_over_zk(k, variant, order))


def g_series(k: int, sign: int, order: int, variant: str = "moebius") -> TruncatedLaurentSeries:
    """Bernoulli-free part of Psi_k.

    G_k = sign * ((1 - L_k) M_k - z^k/k + [2|k]/(2k)) - L_k/2.  All positive
    powers of z cancel exactly and the result starts at u^ceil(k/6); both
    facts are asserted.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    work = order + k  # multiplying by M_k costs k orders of reliability
    m_poly = m_polynomial(k, variant, work)
    l_ser = l_series(k, work, variant)
    delta = Fraction(1 + (-1) ** k, 2)
    bracket = (
        (TruncatedLaurentSeries.one(work) - l_ser) * m_poly
        - TruncatedLaurentSeries.monomial(-k, Fraction(1, k), work)
        + TruncatedLaurentSeries.monomial(0, delta / (2 * k), work)
    )
    g = (bracket * sign - l_ser * Fraction(1, 2)).truncate(order)
    if not g.is_zero() and g.min_exp < _ceil_div(k, 6):
        raise ConsistencyError(
            f"G_{k} has exponent {g.min_exp} below ceil(k/6) = {_ceil_div(k, 6)}"
        )
    return g


def _bernoulli_tail(k: int, sign: int, order: int, variant: str) -> TruncatedLaurentSeries:
    """-sign * sum_{m>=1} B_{m+1}/(m(m+1)) M_k^{-m}, truncated at `order`."""
    acc = TruncatedLaurentSeries.zero(order)
    if order < k:
        return acc
    m_poly = m_polynomial(k, variant, order)
    m_inv = series_inv_pow(m_poly, 1)
    power = m_inv
    for m in range(1, order // k + 1):
        b = bernoulli(m + 1)
        if b:
            acc = acc + power.truncate(order) * (-sign * b / (m * (m + 1)))
        if (m + 1) * k <= order:
            power = (power * m_inv).truncate(min(power.trunc_order, order + k))
    return acc


@lru_cache(maxsize=None)
def psi_series(k: int, sign: int, order: int, variant: str = "moebius") -> TruncatedLaurentSeries:
    """Psi_k = G_k + Bernoulli tail; lies in u^ceil(k/6) * Q[[u]] (asserted)."""
    psi = g_series(k, sign, order, variant) + _bernoulli_tail(k, sign, order, variant)
    if not psi.is_zero() and psi.min_exp < _ceil_div(k, 6):
        raise ConsistencyError(
            f"Psi_{k} has exponent {psi.min_exp} below ceil(k/6) = {_ceil_div(k, 6)}"
        )
    return psi


def _psi_sum(sign: int, order: int, variant: str) -> TruncatedLaurentSeries:
    """sum_{k >= 1} Psi_k truncated at `order` (only k <= 6*order contribute)."""
    acc: dict[int, Fraction] = {}
    for k in range(1, 6 * order + 1):
        for e, c in psi_series(k, sign, order, variant).terms():
            acc[e] = acc.get(e, Fraction(0)) + c
    return TruncatedLaurentSeries.from_terms(acc, order)


def _as_int(c: Fraction, what: str) -> int:
    if c.denominator != 1:
        raise ConsistencyError(f"{what} is not an integer: {c}")
    return int(c)


def chi_table(kind: ComplexKind, gmax: int) -> EulerTable:
    """Connected chi(g) for 2 <= g <= gmax via the Moebius-weighted Psi resummation.

    sum_{g>=2} chi(g) z^{1-g} = sum_{k,l>=1} (mu(l)/l) Psi_k(z^l); the
    coefficient of u^{g-1} is extracted and asserted to be an integer.
    """
    if gmax < 2:
        raise ValueError(f"gmax must be >= 2, got {gmax}")
    order = gmax - 1
    acc: dict[int, Fraction] = {}
    for k in range(1, 6 * order + 1):
        psi = psi_series(k, kind.sign, order, kind.variant)
        if psi.is_zero():
            continue
        for ell in range(1, order // psi.min_exp + 1):
            weight = Fraction(moebius(ell), ell)
            if weight == 0:
                continue
            for e, c in series_substitute_power(psi, ell).terms():
                if e <= order:
                    acc[e] = acc.get(e, Fraction(0)) + weight * c
    values = {
        g: _as_int(acc.get(g - 1, Fraction(0)), f"chi({kind.value}, g={g})")
        for g in range(2, gmax + 1)
    }
    return EulerTable(kind.value, "rank", values, "generating-function", gmax)


def chi_disconnected(parity: str, nmax: int) -> EulerTable:
    """Disconnected-by-Euler-degree chi_n for 0 <= n <= nmax via exp(sum_k Psi_k)."""
    if nmax < 0:
        raise ValueError(f"nmax must be >= 0, got {nmax}")
    sign = parity_sign(parity)
    total = series_exp(_psi_sum(sign, nmax, "moebius"))
    if total.coefficient(0) != 1:
        raise ConsistencyError("constant term of exp(sum Psi) is not 1")
    values = {
        n: _as_int(total.coefficient(n), f"chi_{n}^{parity}") for n in range(nmax + 1)
    }
    return EulerTable(f"disconnected-{parity}", "euler-degree", values, "exp-psi-sum", nmax)


@dataclass
class ProductRoundtrip:
    """Per-coefficient comparison of exp(sum Psi) against the Euler product."""

    parity: str
    nmax: int
    rows: list[tuple[int, int, int]] = field(default_factory=list)  # (n, lhs, rhs)

    @property
    def all_equal(self) -> bool:
        return all(lhs == rhs for _, lhs, rhs in self.rows)


def _one_minus_power(m: int, c: int, order: int) -> TruncatedLaurentSeries:
    """(1 - u^m)^c for any integer c, by binomial expansion.

    c >= 0: sum_j (-1)^j C(c, j) u^{mj}; c < 0: sum_j C(-c-1+j, j) u^{mj}.
    chi exponents reach ~10^30, so the closed form is the only viable route.
    """
    terms: dict[int, Fraction] = {}
    j = 0
    coeff = 1
    while m * j <= order:
        terms[m * j] = Fraction(coeff)
        j += 1
        if c >= 0:
            if j > c:
                break
            coeff = -coeff * (c - j + 1) // j
        else:
            coeff = coeff * (-c - 1 + j) // j
    return TruncatedLaurentSeries.from_terms(terms, order)


def euler_product_roundtrip(parity: str, nmax: int) -> ProductRoundtrip:
    """Check sum_n chi_n z^-n = prod_{g>=2} (1 - z^{1-g})^{-chi(g)} coefficientwise.

    The left side comes from chi_disconnected, the right side from expanding
    the finite product over 2 <= g <= nmax + 1 built on the chi_table values.
    """
    lhs = chi_disconnected(parity, nmax).values
    kind = ComplexKind.GC_EVEN if parity == "even" else ComplexKind.GC_ODD
    product = TruncatedLaurentSeries.one(nmax)
    if nmax >= 1:
        connected = chi_table(kind, nmax + 1).values
        for g in range(2, nmax + 2):
            chi_g = connected[g]
            if chi_g == 0:
                continue
            product = product * _one_minus_power(g - 1, -chi_g, nmax)
    report = ProductRoundtrip(parity, nmax)
    for n in range(nmax + 1):
        rhs = _as_int(product.coefficient(n), f"product coefficient u^{n}")
        report.rows.append((n, lhs[n], rhs))
    return report


def xi_table(k: int, parity: str, nmax: int) -> dict[int, Fraction]:
    """Coefficients xi_{n,k} of the Bernoulli tail of Psi_k, for n <= nmax.

    sum_n xi_{n,k} z^-n = -(+/-) sum_m B_{m+1}/(m(m+1)) M_k(z)^-m; zero for
    n < k (asserted).
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    tail = _bernoulli_tail(k, parity_sign(parity), nmax, "moebius")
    if not tail.is_zero() and tail.min_exp < k:
        raise ConsistencyError(f"xi_{{n,{k}}} nonzero below n = k")
    return {n: tail.coefficient(n) for n in range(1, nmax + 1)}


@dataclass
class DecompositionRow:
    residual: Fraction
    scale: int  # 5^n * (floor(n/3) - 1)!
    normalized: float  # |residual| / scale


def decomposition_residual(parity: str, nmax: int) -> dict[int, DecompositionRow]:
    """Residual of chi(g = n+1) against xi_{n,1} + xi_{n,2} - (1/2)[2|n] xi_{n/2,1}.

    The remainder is expected to stay within O(5^n (floor(n/3) - 1)!); the
    normalized column reports |r_n| / scale for trend inspection.
    """
    if nmax < 3:
        raise ValueError(f"nmax must be >= 3, got {nmax}")
    kind = ComplexKind.GC_EVEN if parity == "even" else ComplexKind.GC_ODD
    chi = chi_table(kind, nmax + 1).values
    xi1 = xi_table(1, parity, nmax)
    xi2 = xi_table(2, parity, nmax)
    out: dict[int, DecompositionRow] = {}
    for n in range(3, nmax + 1):
        main = xi1[n] + xi2[n]
        if n % 2 == 0:
            main -= Fraction(1, 2) * xi1[n // 2]
        residual = chi[n + 1] - main
        scale = 5**n * factorial(n // 3 - 1)
        normalized = abs(residual) / scale
        out[n] = DecompositionRow(residual, scale, float(normalized))
    return out
