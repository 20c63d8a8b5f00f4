"""Generating-function pipeline: M_k, L_k, G_k, Psi_k, chi tables, xi tables."""

from fractions import Fraction

import pytest

from gceuler.euler_series import (
    ComplexKind,
    chi_disconnected,
    chi_table,
    decomposition_residual,
    euler_product_roundtrip,
    g_series,
    l_series,
    m_polynomial,
    psi_series,
    xi_table,
)
from gceuler.exactnum import bernoulli, divisors, moebius
from gceuler.powerseries import (
    TruncatedLaurentSeries as TLS,
    series_log1p,
    series_substitute_power,
)


def ceil_div(a, b):
    return -(-a // b)


def test_m_polynomial_examples():
    assert m_polynomial(1) == TLS.monomial(-1, 1, 0)  # M_1 = z
    assert m_polynomial(2) == TLS.from_terms(
        {-2: Fraction(1, 2), -1: Fraction(-1, 2)}, 0
    )  # (z^2 - z)/2
    # divisor-sum oracle for k = 6
    expect = TLS.from_terms(
        {-(6 // d): Fraction(moebius(d), 6) for d in divisors(6)}, 0
    )
    assert m_polynomial(6) == expect
    assert expect == TLS.from_terms(
        {-6: Fraction(1, 6), -3: Fraction(-1, 6), -2: Fraction(-1, 6), -1: Fraction(1, 6)}, 0
    )


def test_l_series_examples():
    assert l_series(1, 8).is_zero()
    # k = 2: log(1 - u), the Mercator series
    expect = TLS.from_terms({k: Fraction(-1, k) for k in range(1, 9)}, 8)
    assert l_series(2, 8) == expect
    # k = 4: log(1 - u^2) oracle; its u^2 coefficient is -1
    oracle = series_log1p(TLS.from_terms({0: 1, 2: -1}, 8))
    assert l_series(4, 8) == oracle
    assert l_series(4, 8).coefficient(2) == -1


def test_g_series_examples():
    assert g_series(1, 1, 10).is_zero()
    assert g_series(1, -1, 10).is_zero()
    # ceil(7/6) = 2: the u^1 coefficient vanishes
    assert g_series(7, 1, 10).coefficient(1) == 0
    # hand expansion of the k = 2 even series: 5/12 u + 5/24 u^2 + ...
    g2 = g_series(2, 1, 10)
    assert g2.min_exp == 1
    assert g2.coefficient(1) == Fraction(5, 12)
    assert g2.coefficient(2) == Fraction(5, 24)


def test_psi_k1_examples():
    # M_1 = z, L_1 = 0: Psi_1^+- = -+ sum B_{m+1}/(m(m+1)) u^m
    psi_plus = psi_series(1, 1, 9)
    psi_minus = psi_series(1, -1, 9)
    for m in range(1, 10):
        expect = -bernoulli(m + 1) / (m * (m + 1))
        assert psi_plus.coefficient(m) == expect
        assert psi_minus.coefficient(m) == -expect
    assert psi_plus.coefficient(1) == Fraction(-1, 12)
    assert psi_plus.coefficient(3) == Fraction(1, 360)
    assert psi_plus.coefficient(5) == Fraction(-1, 1260)


def test_psi_vanishing_order_small_k():
    for k in range(1, 21):
        for sign in (1, -1):
            psi = psi_series(k, sign, 12)
            if not psi.is_zero():
                assert psi.min_exp >= ceil_div(k, 6)
        gk = psi_series(k, -1, 12, "totient")
        if not gk.is_zero():
            assert gk.min_exp >= ceil_div(k, 6)


def test_chi_table_anchors():
    even = chi_table(ComplexKind.GC_EVEN, 8).values
    odd = chi_table(ComplexKind.GC_ODD, 8).values
    # anchors confirmed by the enumeration oracle (test_graph_enum / acceptance)
    assert even[2] == 0 and even[3] == 1
    assert odd[2] == 1 and odd[3] == 1
    assert even == {2: 0, 3: 1, 4: 0, 5: 1, 6: -1, 7: 1, 8: 0}
    assert odd == {2: 1, 3: 1, 4: 1, 5: 2, 6: 1, 7: 2, 8: 2}


def test_chi_table_validation():
    with pytest.raises(ValueError):
        chi_table(ComplexKind.GC_EVEN, 1)
    table = chi_table(ComplexKind.AGC, 6)
    assert table.kind == "agc"
    assert sorted(table.values) == [2, 3, 4, 5, 6]


def test_chi_disconnected_examples():
    even = chi_disconnected("even", 4).values
    odd = chi_disconnected("odd", 4).values
    assert even[0] == 1 and odd[0] == 1  # the empty graph
    assert even[1] == 0
    assert odd[1] == 1  # the theta graph
    assert even == {0: 1, 1: 0, 2: 1, 3: 0, 4: 2}
    assert odd == {0: 1, 1: 1, 2: 2, 3: 3, 4: 6}
    assert chi_disconnected("even", 0).values == {0: 1}


def test_euler_product_roundtrip():
    assert euler_product_roundtrip("even", 0).all_equal
    for parity in ("even", "odd"):
        report = euler_product_roundtrip(parity, 20)
        assert len(report.rows) == 21
        assert report.all_equal, [r for r in report.rows if r[1] != r[2]]
    # deeper run: exercises chi exponents ~1e10 in the product expansion
    assert euler_product_roundtrip("even", 40).all_equal


def test_moebius_inversion_identity():
    # recompute connected chi from the disconnected table via log + Moebius
    nmax = 16
    for parity, kind in (("even", ComplexKind.GC_EVEN), ("odd", ComplexKind.GC_ODD)):
        disc = chi_disconnected(parity, nmax).values
        f = TLS.from_terms(dict(disc.items()), nmax)
        logf = series_log1p(f)
        connected = chi_table(kind, nmax + 1).values
        for n in range(1, nmax + 1):
            acc = Fraction(0)
            for ell in divisors(n):
                acc += Fraction(moebius(ell), ell) * logf.coefficient(n // ell)
            assert acc == connected[n + 1]


def test_xi_table_bernoulli_form():
    for parity, s in (("even", 1), ("odd", -1)):
        xi1 = xi_table(1, parity, 50)
        for n in range(1, 51):
            assert xi1[n] == -s * bernoulli(n + 1) / (n * (n + 1))
        for n in range(2, 51, 2):
            assert xi1[n] == 0  # xi_{2n,1} = 0


def test_xi_k2_value():
    # xi_{3,2}^+ oracle: -(B_2/2) [u^3] 2u^2/(1-u) - 0 (B_3 term) = -1/6
    xi2 = xi_table(2, "even", 6)
    assert xi2[3] == Fraction(-1, 6)
    assert xi2[1] == 0  # below n = k
    assert xi_table(2, "odd", 6)[3] == Fraction(1, 6)


def test_substituted_psi_consistency():
    # substitution used by chi_table is the ring map u -> u^ell
    psi = psi_series(2, 1, 6)
    sub = series_substitute_power(psi, 2)
    for e in range(1, 7):
        assert sub.coefficient(2 * e) == psi.coefficient(e)


def test_decomposition_residual():
    rows = decomposition_residual("even", 12)
    assert set(rows) == set(range(3, 13))
    # consistency: residual vanishes when chi is replaced by the rhs itself
    xi1 = xi_table(1, "even", 12)
    xi2 = xi_table(2, "even", 12)
    for n, row in rows.items():
        rhs = xi1[n] + xi2[n]
        if n % 2 == 0:
            rhs -= Fraction(1, 2) * xi1[n // 2]
        chi = chi_table(ComplexKind.GC_EVEN, n + 1).values[n + 1]
        assert row.residual == chi - rhs
        assert row.scale > 0
    # r_10 by direct subtraction of the exact tables
    r10 = rows[10]
    assert r10.residual == chi_table(ComplexKind.GC_EVEN, 11).values[11] - (
        xi1[10] + xi2[10] - Fraction(1, 2) * xi1[5]
    )


def test_decomposition_residual_bounded_trend():
    gmax = 40
    rows = decomposition_residual("even", gmax - 1)
    band = [rows[n].normalized for n in range(6, gmax)]
    assert max(band) < 1.0  # |r_n| stays within the stated scale on this range


def test_gk_table_integrality_and_agreement_scale():
    agc = chi_table(ComplexKind.AGC, 12).values
    assert all(isinstance(v, int) for v in agc.values())
    assert agc[2] == 1
