import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate, optimize, stats

from bmtdist import bmt
from bmtdist._numerics import gauss_legendre_unit
from bmtdist.bezier_core import bezier_derivative, bezier_eval
from bmtdist.bmt import BmtDistribution, BmtDomain, BmtParams

kappa = st.floats(1e-6, 1 - 1e-6)


def test_params_validation():
    with pytest.raises(ValueError):
        BmtParams(0.0, 0.5)
    with pytest.raises(ValueError):
        BmtParams(0.5, 1.0)
    BmtParams(1e-9, 1 - 1e-9)
    with pytest.raises(ValueError):
        BmtDomain(1.0, 1.0)
    with pytest.raises(ValueError):
        BmtDomain(0.0, math.inf)


def test_x_of_t_values():
    assert bmt.x_of_t((0.3, 0.7), 0.0) == 0.0
    assert bmt.x_of_t((0.3, 0.7), 1.0) == 1.0
    assert bmt.x_of_t((0.4, 0.4), 0.5) == pytest.approx(0.5, abs=1e-15)
    assert bmt.x_of_t((0.9, 0.1), 0.75) == pytest.approx(0.928125, abs=1e-15)
    poly = BmtDistribution(0.9, 0.1).control_polygon()
    assert bmt.x_of_t((0.9, 0.1), 0.75) == pytest.approx(bezier_eval(poly, 0.75).x, abs=1e-15)


def test_x_of_t_identity_outside_unit_interval():
    assert bmt.x_of_t((0.3, 0.7), -0.5) == -0.5
    assert bmt.x_of_t((0.3, 0.7), 2.0) == 2.0


def test_x_of_t_matches_expanded_cubic(rng):
    for kl, kr in rng.uniform(0, 1, (50, 2)):
        t = rng.random(20)
        expanded = (3 * kl + 3 * kr - 2) * t**3 + (-6 * kl - 3 * kr + 3) * t**2 + 3 * kl * t
        assert np.max(np.abs(bmt.x_of_t((kl, kr), t) - expanded)) < 1e-14


def test_density_parametric_values():
    assert bmt.y_f_of_t((0.3, 0.6), 0.0) == 0.0
    assert bmt.y_f_of_t((0.3, 0.6), 1.0) == 0.0
    assert bmt.y_f_of_t((0.3, 0.6), 1e-12) == pytest.approx(0.0, abs=1e-10)
    # centre of the symmetric case: 2 * 0.25 / 0.25
    assert bmt.y_f_of_t((0.5, 0.5), 0.5) == pytest.approx(2.0, rel=1e-15)
    d = BmtDistribution(0.5, 0.5)
    h = 1e-6
    assert (d.cdf(0.5 + h) - d.cdf(0.5 - h)) / (2 * h) == pytest.approx(2.0, rel=1e-8)


def test_density_matches_generic_bezier(rng):
    for _ in range(1000 // 50):
        kl, kr = rng.uniform(0.001, 0.999, 2)
        t = rng.uniform(0.001, 0.999, 50)
        generic = BmtDistribution(kl, kr).to_bezier()
        x = bmt.x_of_t((kl, kr), t)
        assert np.allclose(bmt.y_f_of_t((kl, kr), t), generic.pdf(x), rtol=1e-9, atol=1e-12)


def test_denominator_positive_on_grid():
    # x'(t) > 0 on (0, 1) for every kappa pair, including kl + kr > 1
    k = np.linspace(1e-6, 1 - 1e-6, 201)
    t = np.linspace(1e-6, 1 - 1e-6, 401)
    kl, kr, tt = np.meshgrid(k, k, t, indexing="ij")
    assert np.min(bmt._denominator(kl, kr, tt)) > 0.0


def test_cdf_pdf_at_domain_ends():
    d = BmtDistribution(0.3, 0.6, 10, 20)
    assert d.cdf(10) == 0.0 and d.pdf(10) == 0.0
    assert d.cdf(20) == 1.0 and d.pdf(20) == 0.0
    assert d.cdf(5) == 0.0 and d.cdf(25) == 1.0
    assert BmtDistribution(0.5, 0.5).cdf(0.5) == pytest.approx(0.5, abs=1e-15)


def test_four_parameter_mean_by_quadrature():
    d = BmtDistribution(0.2, 0.4, 10, 20)
    val, _ = integrate.quad(lambda x: x * d.pdf(x), 10, 20, epsabs=1e-12, epsrel=1e-13, limit=200)
    assert val == pytest.approx(14.4, abs=1e-8)
    assert d.mean() == pytest.approx(14.4, abs=1e-12)


def test_cdf_matches_generic_bezier(rng):
    for kl, kr in rng.uniform(0.001, 0.999, (30, 2)):
        x = rng.random(40)
        assert np.allclose(BmtDistribution(kl, kr).cdf(x), BmtDistribution(kl, kr).to_bezier().cdf(x), atol=1e-12)


def test_quantile_values():
    d = BmtDistribution(0.2, 0.4, 3, 7)
    assert d.quantile(0.0) == 3.0 and d.quantile(1.0) == 7.0
    with pytest.raises(ValueError):
        d.quantile(-0.1)
    std = BmtDistribution(0.2, 0.4)
    assert std.quantile(0.5) == pytest.approx(0.425, abs=1e-15)
    oracle = optimize.bisect(lambda x: std.cdf(x) - 0.5, 0, 1, xtol=1e-15)
    assert std.quantile(0.5) == pytest.approx(oracle, abs=1e-13)


def test_y_F_inverse_roundtrip(rng):
    p = np.concatenate((rng.random(1000), [0.0, 0.5, 1.0]))
    t = bmt.y_F_inverse(p)
    assert np.max(np.abs(bmt.y_F_of_t(t) - p)) < 1e-14
    assert bmt.y_F_inverse(0.0) == 0.0 and bmt.y_F_inverse(1.0) == 1.0


@given(kl=kappa, kr=kappa, p=st.floats(0.0, 1.0))
def test_quantile_cdf_round_trip(kl, kr, p):
    d = BmtDistribution(kl, kr)
    assert abs(d.cdf(d.quantile(p)) - p) <= 1e-10


def test_round_trip_near_degenerate_leading_coefficient(rng):
    # 3 kl + 3 kr - 2 close to zero takes the quadratic branch of the cubic solver
    for delta in (0.0, 1e-12, 1e-9, -1e-8, 5e-8, 1e-6):
        kl = rng.uniform(0.05, 0.6)
        kr = 2 / 3 - kl + delta / 3
        d = BmtDistribution(kl, kr)
        p = rng.random(500)
        assert np.max(np.abs(d.cdf(d.quantile(p)) - p)) <= 1e-10


@given(kl=kappa, kr=kappa, x=st.floats(0.0, 1.0))
def test_reflection(kl, kr, x):
    assert BmtDistribution(kl, kr).cdf(x) == pytest.approx(1 - BmtDistribution(kr, kl).cdf(1 - x), abs=1e-10)


def test_median_and_iqr_closed_forms(rng):
    for kl, kr in rng.uniform(1e-6, 1 - 1e-6, (200, 2)):
        d = BmtDistribution(kl, kr)
        assert d.median() == pytest.approx(d.quantile(0.5), abs=1e-12)
        assert d.median() == pytest.approx(0.5 - 0.375 * (kr - kl), abs=1e-15)
        assert d.iqr() == pytest.approx(d.quantile(0.75) - d.quantile(0.25), abs=1e-12)
        assert d.iqr() == pytest.approx(BmtDistribution(kr, kl).iqr(), abs=1e-15)


def test_symmetric_median_and_iqr():
    d = BmtDistribution(0.5, 0.5)
    assert d.iqr() == pytest.approx(0.5 - 3 * (0.25 - math.cos(4 * math.pi / 9)), abs=1e-15)
    assert BmtDistribution(0.3, 0.3, 2, 6).median() == pytest.approx(4.0, abs=1e-14)


def _mode_oracle(kl, kr):
    # stationary point of the density: y''x' - y'x'' = 0, from generic curve derivatives
    poly = BmtDistribution(kl, kr).control_polygon()

    def g(t):
        d1 = bezier_derivative(poly, 1, t)
        d2 = bezier_derivative(poly, 2, t)
        return d2.y * d1.x - d1.y * d2.x

    return bmt.x_of_t((kl, kr), optimize.brentq(g, 1e-12, 1 - 1e-12, xtol=1e-15))


def test_mode_values():
    assert BmtDistribution(0.4, 0.4, 2, 4).mode() == 3.0
    assert bmt.mode_parameter(0.9, 0.1) == pytest.approx(0.75, abs=1e-15)
    assert BmtDistribution(0.9, 0.1).mode() == pytest.approx(0.928125, abs=1e-15)
    # golden-section maximization of the density as an independent, coarser check
    d = BmtDistribution(0.9, 0.1)
    res = optimize.minimize_scalar(lambda x: -d.pdf(x), bracket=(0.8, 0.9, 0.99), method="golden", tol=1e-10)
    assert res.x == pytest.approx(0.928125, abs=1e-6)


def test_mode_matches_stationary_point_oracle(rng):
    for kl, kr in rng.uniform(0.01, 0.99, (200, 2)):
        assert BmtDistribution(kl, kr).mode() == pytest.approx(_mode_oracle(kl, kr), abs=1e-10)


def test_mode_maximizes_density(rng):
    for kl, kr in rng.uniform(0.01, 0.99, (30, 2)):
        d = BmtDistribution(kl, kr)
        grid = np.linspace(0, 1, 1001)
        assert d.pdf(d.mode()) >= np.max(d.pdf(grid)) - 1e-12
        assert np.all(d.pdf(d.mode()) >= d.pdf(rng.random(1000)) - 1e-12)


# moments --------------------------------------------------------------------------


def test_mean_closed_form(rng):
    for kl, kr in rng.uniform(0, 1, (20, 2)):
        assert bmt.raw_moment((kl, kr), 1) == pytest.approx(0.5 - 0.3 * (kr - kl), abs=1e-15)


def test_variance_symmetric_half():
    assert bmt.central_moment((0.5, 0.5), 2) == pytest.approx(77.5 / 2100, rel=1e-14)
    t, w = gauss_legendre_unit(64)
    x = bmt.x_of_t((0.5, 0.5), t)
    dy = 6 * t * (1 - t)
    assert np.sum(w * (x - 0.5) ** 2 * dy) == pytest.approx(77.5 / 2100, rel=1e-13)


def test_first_central_moment_vanishes(rng):
    for kl, kr in rng.uniform(0, 1, (20, 2)):
        assert abs(bmt.central_moment((kl, kr), 1)) < 1e-12


def test_composition_formula_matches_generic_formula(rng):
    for kl, kr in rng.uniform(0.001, 0.999, (100, 2)):
        generic = BmtDistribution(kl, kr).to_bezier()
        for r in range(1, 7):
            assert bmt.raw_moment((kl, kr), r) == pytest.approx(generic.raw_moment(r), rel=1e-12)
            assert bmt.central_moment((kl, kr), r) == pytest.approx(generic.central_moment(r), rel=1e-12, abs=1e-15)


def test_closed_forms_match_moment_sums(rng):
    for kl, kr in rng.uniform(0.001, 0.999, (200, 2)):
        m2 = bmt.central_moment((kl, kr), 2)
        assert bmt.std_variance(kl, kr) == pytest.approx(m2, rel=1e-10)
        assert bmt.std_skewness(kl, kr) == pytest.approx(bmt.central_moment((kl, kr), 3) / m2**1.5, rel=1e-10, abs=1e-13)
        assert bmt.std_kurtosis(kl, kr) == pytest.approx(bmt.central_moment((kl, kr), 4) / m2**2, rel=1e-10)


def test_symmetric_skewness_zero():
    assert bmt.std_skewness(0.37, 0.37) == 0.0


def test_limiting_moments():
    eps = 1e-9
    assert bmt.std_variance(eps, eps) == pytest.approx(1 / 12, abs=1e-8)
    assert bmt.std_kurtosis(eps, eps) == pytest.approx(1.8, abs=1e-6)
    assert bmt.std_kurtosis(0.999999, 0.999999) == pytest.approx(6.78, abs=0.01)


def test_moment_order_checked():
    with pytest.raises(ValueError):
        bmt.raw_moment((0.5, 0.5), 0)
    with pytest.raises(ValueError):
        bmt.central_moment((0.5, 0.5), 9)


def test_domain_scaling(rng):
    for kl, kr in rng.uniform(0.01, 0.99, (30, 2)):
        c = rng.normal(scale=10)
        d = c + rng.uniform(0.1, 20)
        std, big = BmtDistribution(kl, kr), BmtDistribution(kl, kr, c, d)
        assert big.mean() == pytest.approx((d - c) * std.mean() + c, rel=1e-12, abs=1e-12)
        assert big.var() == pytest.approx((d - c) ** 2 * std.var(), rel=1e-12)
        assert big.skewness() == std.skewness() and big.kurtosis() == std.kurtosis()
        assert big.raw_moment(1) == pytest.approx(big.mean(), rel=1e-12, abs=1e-12)
        assert big.central_moment(2) == pytest.approx(big.var(), rel=1e-12)
        # the generic four-point polygon on [c, d] agrees
        assert big.to_bezier().central_moment(3) == pytest.approx(big.central_moment(3), rel=1e-9, abs=1e-12)


def test_skew_direction_consistent(rng):
    for kl, kr in rng.uniform(0.01, 0.99, (100, 2)):
        if abs(kl - kr) < 1e-3:
            continue
        d = BmtDistribution(kl, kr)
        assert np.sign(d.mean() - d.median()) == np.sign(d.skewness()) == np.sign(kr - kl)


# sampling ------------------------------------------------------------------------


def test_sample_deterministic_and_empty():
    d = BmtDistribution(0.3, 0.7)
    assert np.array_equal(d.sample(100, seed=5), d.sample(100, seed=5))
    assert d.sample(0, seed=5).size == 0
    with pytest.raises(ValueError):
        d.sample(-1)


def test_sample_mean_clt_band():
    d = BmtDistribution(0.5, 0.5)
    x = d.sample(100_000, seed=11)
    assert abs(x.mean() - 0.5) < 3 * d.std() / math.sqrt(x.size)


def test_sample_ks():
    d = BmtDistribution(0.2, 0.7, 1, 3)
    x = d.sample(10_000, seed=2)
    assert stats.kstest(x, d.cdf).statistic < 1.63 / math.sqrt(x.size)
