"""Exact integer/rational arithmetic and number-theoretic scalars.

Everything here is exact: the scalar type is `fractions.Fraction` (arbitrary
precision, always in lowest terms with positive denominator), and the three
arithmetic functions are computed by integer recurrences with memoization.
No floating point enters this module.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import comb

Rational = Fraction

_bernoulli_cache: list[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    """All positive divisors of n, ascending."""
    if n < 1:
        raise ValueError(f"divisors requires n >= 1, got {n}")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])


@lru_cache(maxsize=None)
def moebius(n: int) -> int:
    """Moebius function via the recurrence mu(1) = 1, mu(n) = -sum_{d|n, d<n} mu(d)."""
    if n < 1:
        raise ValueError(f"moebius requires n >= 1, got {n}")
    if n == 1:
        return 1
    return -sum(moebius(d) for d in divisors(n)[:-1])


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    """Euler totient, phi(n) = n * sum_{d|n} mu(d)/d."""
    if n < 1:
        raise ValueError(f"totient requires n >= 1, got {n}")
    acc = Fraction(0)
    for d in divisors(n):
        acc += Fraction(moebius(d), d)
    phi = n * acc
    assert phi.denominator == 1 and phi > 0
    return int(phi)


def bernoulli(m: int) -> Fraction:
    """Bernoulli number B_m, defined by x/(e^x - 1) = sum B_m x^m / m!.

    Computed by the integer recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0,
    so B_1 = -1/2.  Memoized; callers may hold the GIL from any thread.
    """
    if m < 0:
        raise ValueError(f"bernoulli requires m >= 0, got {m}")
    with _bernoulli_lock:
        while len(_bernoulli_cache) <= m:
            k = len(_bernoulli_cache)
            acc = Fraction(0)
            for j in range(k):
                acc += comb(k + 1, j) * _bernoulli_cache[j]
            _bernoulli_cache.append(-acc / (k + 1))
        return _bernoulli_cache[m]


def format_rational(q: Fraction) -> str:
    """Serialize as "p/q" (or plain "p" when the denominator is 1)."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    """Inverse of :func:`format_rational`."""
    return Fraction(s)
