"""Sign/log-magnitude asymptotics against the exact tables."""

import mpmath as mp
import pytest

from gceuler.asymptotics import (
    SignedLogValue,
    asym_value,
    cos_argument,
    cos_lower_bound_scan,
    hgc_bound_report,
    hgc_lower_bound,
    ratio_table,
    xi22_asym_check,
)
from gceuler.euler_series import ComplexKind, chi_table


def test_signed_log_value_arithmetic():
    a = SignedLogValue.from_exact(-8)
    b = SignedLogValue.from_exact(2)
    assert a.sign == -1 and b.sign == 1
    assert (a * b).sign == -1
    assert mp.almosteq((a * b).to_mpf(), mp.mpf(-16))
    assert mp.almosteq((a / a).to_mpf(), mp.mpf(1))
    assert (-a).sign == 1
    zero = SignedLogValue.from_exact(0)
    assert (zero * a).sign == 0
    with pytest.raises(ZeroDivisionError):
        a / zero


def test_asym_value_even_sign_and_magnitude():
    v = asym_value(40, ComplexKind.GC_EVEN)
    assert v.sign == 1  # (-1)^20
    # independent high-precision evaluation at 320 bits
    with mp.workprec(320):
        g = mp.mpf(40)
        direct = mp.sqrt(8 * mp.pi / g**3) * (g / (2 * mp.pi * mp.e)) ** g
        assert mp.almosteq(v.log_mag, mp.log(direct), rel_eps=mp.mpf("1e-40"))
    assert asym_value(42, ComplexKind.GC_EVEN).sign == -1  # (-1)^21


def test_asym_value_odd_uses_cosine():
    v = asym_value(41, ComplexKind.GC_EVEN)
    with mp.workprec(320):
        g = mp.mpf(41)
        c = mp.cos(mp.sqrt(mp.pi * g / 4) - mp.pi * g / 4 - mp.pi / 8)
        direct = (
            mp.sqrt(2) / g * c * mp.exp(mp.sqrt(mp.pi * g / 4)) * (g / (2 * mp.pi * mp.e)) ** (g / 2)
        )
        assert v.sign == (1 if c > 0 else -1)
        assert mp.almosteq(v.log_mag, mp.log(abs(direct)), rel_eps=mp.mpf("1e-40"))


def test_odd_and_agc_are_negated_even():
    for g in (7, 12, 25, 60):
        even = asym_value(g, ComplexKind.GC_EVEN)
        for kind in (ComplexKind.GC_ODD, ComplexKind.AGC):
            other = asym_value(g, kind)
            assert other.sign == -even.sign
            assert other.log_mag == even.log_mag


def test_ratio_table_round_trip():
    table = chi_table(ComplexKind.GC_EVEN, 20)
    rows = ratio_table(ComplexKind.GC_EVEN, table)
    by_g = {r.g: r for r in rows}
    assert by_g[2].ratio is None  # chi = 0 rows are flagged, not divided
    r = by_g[19]
    # ratio * asym reproduces chi
    with mp.workprec(192):
        recon = r.ratio * r.asym.to_mpf()
        assert mp.almosteq(recon, mp.mpf(r.chi), rel_eps=mp.mpf("1e-40"))


def test_even_sign_pattern_threshold():
    # sign(chi(g)) = (-1)^(g/2) for even g >= g0; measured threshold g0 = 26
    table = chi_table(ComplexKind.GC_EVEN, 60).values
    exceptions = [
        g
        for g in range(2, 61, 2)
        if table[g] == 0 or (1 if table[g] > 0 else -1) != (1 if (g // 2) % 2 == 0 else -1)
    ]
    assert exceptions == [2, 4, 8, 12, 16, 22, 24]
    assert max(exceptions) < 26


def test_cos_bound_examples():
    with mp.workprec(192):
        c3 = abs(mp.cos(cos_argument(3)))
        assert mp.mpf("0.34") < c3 < mp.mpf("0.36")
        assert c3 >= mp.mpf(3) ** mp.mpf(-7)
    report = cos_lower_bound_scan(2001, 7.5)
    assert report.violations == []
    assert report.clean_from == 3
    mahler = cos_lower_bound_scan(2001, 42.0)
    assert mahler.violations == []
    with pytest.raises(ValueError):
        cos_lower_bound_scan(100, 7.0)


def test_xi22_trend():
    ratios = xi22_asym_check(range(10, 41))
    diffs = {n: abs(ratios[n] - 1) for n in ratios if ratios[n] is not None}
    first = sorted(diffs[n] for n in range(10, 25))
    second = sorted(diffs[n] for n in range(26, 41))
    # medians shrink; near cosine zeros single points legitimately blow up
    assert second[len(second) // 2] < first[len(first) // 2]
    # well-conditioned pointwise pair (|cos| ~ 1 at both)
    assert diffs[36] < diffs[12]


def test_hgc_lower_bound():
    with pytest.raises(ValueError):
        hgc_lower_bound(10, 0.06)  # above 1/(2 pi e) = 0.0585...
    with pytest.raises(ValueError):
        hgc_lower_bound(10, 0.0)
    # 0.05 arrives as a double, so compare at double-precision tolerance
    b_even = hgc_lower_bound(10, 0.05)
    with mp.workprec(192):
        assert mp.almosteq(
            b_even.log_mag, 10 * mp.log(mp.mpf("0.5")), rel_eps=mp.mpf("1e-14")
        )
    b_odd = hgc_lower_bound(11, 0.05)
    with mp.workprec(192):
        assert mp.almosteq(
            b_odd.log_mag,
            mp.mpf(11) / 2 * mp.log(mp.mpf("0.55")),
            rel_eps=mp.mpf("1e-14"),
        )
    # C -> 0+ makes the bound trivial (below 1) for small g
    tiny = hgc_lower_bound(4, 1e-6)
    assert tiny.log_mag < 0


def test_hgc_report_against_table():
    table = chi_table(ComplexKind.GC_EVEN, 60)
    report = dict(hgc_bound_report(table, 0.05))
    # all but a finite prefix satisfy the bound; even at C = 0.05 the
    # even-g rows from 26 on and odd-g rows from 27 on hold
    assert all(report[g] for g in range(26, 61))
    assert not report[2]  # chi(2) = 0 cannot dominate anything
