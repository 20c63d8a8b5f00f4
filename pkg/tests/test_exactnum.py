"""Number-theoretic scalars: examples, invariants, and the zeta cross-check."""

import math
from fractions import Fraction

import pytest

from gceuler.exactnum import (
    bernoulli,
    divisors,
    format_rational,
    moebius,
    parse_rational,
    totient,
)
from gceuler.powerseries import TruncatedLaurentSeries, series_inv_pow


def brute_moebius(n):
    # literal recurrence, kept independent of the library's memoized version
    if n == 1:
        return 1
    return -sum(brute_moebius(d) for d in divisors(n) if d != n)


def test_moebius_examples():
    assert moebius(1) == 1
    assert moebius(2) == -1
    assert moebius(12) == brute_moebius(12) == 0
    assert moebius(6) == 1
    assert moebius(30) == -1


def test_moebius_domain_error():
    with pytest.raises(ValueError):
        moebius(0)
    with pytest.raises(ValueError):
        totient(0)


def test_moebius_divisor_sum_vanishes():
    for n in range(2, 501):
        assert sum(moebius(d) for d in divisors(n)) == 0


def test_totient_examples_and_brute_force():
    assert totient(1) == 1
    assert totient(2) == 1
    assert totient(12) == 4
    for n in range(1, 501):
        assert totient(n) == sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def test_bernoulli_examples():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(3) == 0


def test_bernoulli_via_series_inversion():
    # independent oracle: B_m = m! * [x^m] of 1 / ((e^x - 1) / x)
    order = 12
    f = TruncatedLaurentSeries.from_terms(
        {m: Fraction(1, math.factorial(m + 1)) for m in range(order + 1)}, order
    )
    inv = series_inv_pow(f, 1)
    for m in range(order + 1):
        assert bernoulli(m) == math.factorial(m) * inv.coefficient(m)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(4) == Fraction(-1, 30)


def test_odd_bernoulli_vanish():
    for m in range(3, 100, 2):
        assert bernoulli(m) == 0


def test_bernoulli_euler_zeta_formula():
    # |B_n - (-1)^(n/2+1) 2 n! zeta(n) / (2 pi)^n| / |B_n| < 1e-12 for even n,
    # with zeta summed to 1e6 terms plus the integral tail bound.
    terms = 10**6
    for n in range(2, 21, 2):
        zeta = math.fsum(k ** (-n) for k in range(1, terms + 1))
        zeta += terms ** (1 - n) / (n - 1) + 0.5 * terms ** (-n)  # Euler-Maclaurin tail
        predicted = (-1) ** (n // 2 + 1) * 2 * math.factorial(n) * zeta / (2 * math.pi) ** n
        b = float(bernoulli(n))
        assert abs(b - predicted) / abs(b) < 1e-12


def test_rational_serialization():
    assert format_rational(Fraction(-3, 7)) == "-3/7"
    assert format_rational(Fraction(5)) == "5"
    assert parse_rational("-3/7") == Fraction(-3, 7)
    assert parse_rational("5") == Fraction(5)
