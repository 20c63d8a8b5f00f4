"""Adaptive quadrature, Q integrals, the Stirling identity, and J products."""

import math

import mpmath as mp
import pytest

from gceuler.quadrature import (
    ConvergenceError,
    QuadratureResult,
    exp_minus_lin,
    integrate_adaptive,
    integrate_path,
    j_product,
    jres_scan,
    log_gamma,
    q_exp_form,
    q_integral,
    q_residual_scan,
    stirling_gamma_ratio,
    stirling_identity_check,
)
from gceuler.euler_series import chi_disconnected


def test_integrate_constant_and_sin():
    r = integrate_adaptive(lambda y: mp.mpf(1), 0, 1, mp.mpf("1e-24"))
    assert abs(r.value - 1) < mp.mpf("1e-24")
    r = integrate_adaptive(mp.sin, 0, mp.pi, mp.mpf("1e-12"))
    assert abs(r.value - 2) < mp.mpf("1e-12")
    assert r.evaluations > 0
    assert isinstance(r, QuadratureResult)


def test_integrate_complex_exponential():
    r = integrate_path(lambda y: mp.exp(1j * y), [-1, 1], mp.mpf("1e-12"))
    assert abs(r.value - 2 * mp.sin(1)) < mp.mpf("1e-12")


def test_zero_length_interval():
    r = integrate_adaptive(mp.sin, 2, 2, mp.mpf("1e-12"))
    assert r.value == 0 and r.evaluations == 0


def test_convergence_error_carries_best():
    f = lambda y: 1 / mp.sqrt(abs(y - mp.mpf(1) / 3))
    with pytest.raises(ConvergenceError) as exc:
        integrate_adaptive(f, 0, 1, mp.mpf("1e-30"), max_levels=6)
    best = exc.value.best
    # true value: 2 sqrt(1/3) + 2 sqrt(2/3); the carried estimate is coarse
    # (depth-capped) but in the right neighbourhood with an honest error bar
    truth = 2 * mp.sqrt(mp.mpf(1) / 3) + 2 * mp.sqrt(mp.mpf(2) / 3)
    assert abs(best.value - truth) < mp.mpf("0.1")
    assert best.abs_error_estimate > mp.mpf("1e-30")


def test_exp_minus_lin_stability():
    # the series branch keeps full RELATIVE precision where the naive
    # expression cancels catastrophically: compare against a reference
    # computed at much higher precision
    for w in (mp.mpf("1e-30"), mp.mpf("1e-8") * (1 + 1j), mp.mpf("0.2"), mp.mpc(0, "0.1")):
        with mp.workprec(900):
            reference = mp.exp(mp.mpc(w)) - 1 - w
        with mp.workprec(400):
            got = exp_minus_lin(w)
            assert abs(got - reference) <= mp.mpf("1e-110") * abs(reference)


def test_q_integral_examples():
    # eps -> 0 gives 0
    assert q_integral("-", 100, 0).value == 0
    # z=100, eps = z^(-5/12), sign -: close to exp(1/1200) within the
    # window-truncation error scale e^e * exp(-z eps^2 / 2)
    z = mp.mpf(100)
    eps = z ** (mp.mpf(-5) / 12)
    qm = q_integral("-", z, eps, 0)
    scale = mp.exp(mp.e) * mp.exp(-z * eps**2 / 2)
    assert abs(qm.value - mp.exp(mp.mpf(1) / 1200)) < scale
    qp = q_integral("+", z, eps, 0)
    assert abs(qp.value - mp.exp(-mp.mpf(1) / 1200)) < scale
    with pytest.raises(ValueError):
        q_integral("x", 100, 1)


def test_q_path_independence():
    z, eps = mp.mpf(80), mp.mpf("0.3")
    direct = q_integral("+", z, eps, mp.mpf("0.01"))
    detour = q_integral("+", z, eps, mp.mpf("0.01"), waypoints=[mp.mpc(0, 0.2)])
    tol = direct.abs_error_estimate + detour.abs_error_estimate + mp.mpf("1e-30")
    assert abs(direct.value - detour.value) <= tol


def test_q_residual_doubling_shrink():
    rows = q_residual_scan([50, 100, 200, 400])
    residuals = [r for _, _, r in rows]
    for a, b in zip(residuals, residuals[1:]):
        assert a / b >= 8, residuals


def test_q_pair_product_trend():
    vals = []
    for z in (50, 100, 200, 400):
        zm = mp.mpf(z)
        eps = 3 * zm ** (mp.mpf(-5) / 12)
        qp = q_integral("+", zm, eps, 0, tol=mp.mpf("1e-30"))
        qm = q_integral("-", zm, eps, 0, tol=mp.mpf("1e-30"))
        vals.append(abs(qp.value * qm.value - 1))
    assert all(a > b for a, b in zip(vals, vals[1:])), vals


def test_log_gamma_on_integers():
    for n in (1, 2, 3, 7, 15, 30, 171):
        expect = mp.mpf(math.factorial(n - 1))
        got = mp.exp(log_gamma(n))
        with mp.workprec(160):
            assert mp.almosteq(got, expect, rel_eps=mp.mpf("1e-30"))
    with pytest.raises(ValueError):
        log_gamma(0)


def test_stirling_identity_z1_closed_form():
    rep = stirling_identity_check(1, mp.mpf("1e-10"))
    with mp.workprec(200):
        closed = mp.e / mp.sqrt(2 * mp.pi)  # Gamma(1) = 1
        assert abs(rep["rhs"] - closed) < mp.mpf("1e-30")
        assert abs(rep["lhs"] - closed) < mp.mpf("1e-10")


@pytest.mark.parametrize("z", [1, 5.5, 20, 50])
def test_stirling_identity_tolerance(z):
    rep = stirling_identity_check(z, mp.mpf("1e-9"))
    assert rep["abs_diff"] < mp.mpf("1e-8")


def test_stirling_gamma_ratio_non_integer():
    # independent spot value via exact Gamma(5.5) = 10395 sqrt(pi) / 2^6... wait:
    # Gamma(1/2 + n) = (2n)! sqrt(pi) / (4^n n!)
    with mp.workprec(200):
        n = 5
        gamma_exact = mp.mpf(math.factorial(2 * n)) * mp.sqrt(mp.pi) / (4**n * math.factorial(n))
        z = mp.mpf("5.5")
        expect = gamma_exact / (mp.sqrt(2 * mp.pi) * z ** (z - mp.mpf(1) / 2) * mp.exp(-z))
        assert mp.almosteq(stirling_gamma_ratio(z), expect, rel_eps=mp.mpf("1e-30"))


def test_j_product_basics():
    # zero-length interval in any factor kills the product
    r = j_product(2, 100, 0, "even")
    assert r.value == 0
    with pytest.raises(ValueError):
        j_product(0, 100, mp.mpf("0.1"))


def test_j_product_single_factor_tends_to_one():
    # n = 1: J_1 = chi_0 + O(z^{-1/6}) = 1 + o(1); the window covers
    # z^{1/12}/6 Gaussian widths, so convergence needs very large z
    prev_gap = None
    for z in (10**12, 10**15, 10**18):
        eps = mp.mpf(z) ** (mp.mpf(-5) / 12) / 6
        r = j_product(1, z, eps, "even", tol=mp.mpf("1e-30"))
        gap = abs(r.value - 1)
        if prev_gap is not None:
            assert gap < prev_gap
        prev_gap = gap
    assert prev_gap < mp.mpf("1e-5")


def test_j_product_matches_q_at_n1():
    z = 10**6
    eps = mp.mpf(z) ** (mp.mpf(-5) / 12) / 6
    j = j_product(1, z, eps, "even", tol=mp.mpf("1e-30"))
    q = q_integral("+", z, eps, 0, tol=mp.mpf("1e-30"))
    assert abs(j.value - q.value) < mp.mpf("1e-25")


def test_jres_scan_columns_and_trend():
    chi = chi_disconnected("even", 1).values
    rows = jres_scan("even", 12, [10**3, 10**4], chi)
    assert {"z", "j", "partial_sum", "delta", "delta_normalized", "quad_error"} <= set(rows[0])
    assert rows[0]["delta"] > rows[1]["delta"]
    with pytest.raises(ValueError):
        jres_scan("even", 30, [10], chi)
