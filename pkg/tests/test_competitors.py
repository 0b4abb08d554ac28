import numpy as np
import pytest
from scipy import integrate, special

from bmtdist.competitors import (
    BetaDistribution,
    KumaraswamyDistribution,
    beta_cdf,
    beta_pdf,
    kumaraswamy_cdf,
    kumaraswamy_pdf,
)


def _beta_density(a, b, z, one_minus_z):
    return np.exp((a - 1) * np.log(z) + (b - 1) * np.log(one_minus_z) - special.betaln(a, b))


def trapezoid_beta_cdf(a, b, x, nodes=200_001):
    # pdf integrated with a power substitution that removes the endpoint singularity;
    # the transformed integrand vanishes at v = 0 for shapes >= 0.5
    m = 4
    v = np.linspace(0.0, 1.0, nodes)[1:]
    jac = m * v ** (m - 1)
    if x <= 0.5:
        z = x * v**m
        f = _beta_density(a, b, z, 1.0 - z) * x * jac
        return integrate.trapezoid(np.r_[0.0, f], np.r_[0.0, v])
    w = (1.0 - x) * v**m
    f = _beta_density(a, b, 1.0 - w, w) * (1.0 - x) * jac
    return 1.0 - integrate.trapezoid(np.r_[0.0, f], np.r_[0.0, v])


def test_uniform_cases():
    x = np.linspace(0, 1, 11)
    for d in (BetaDistribution(1, 1), KumaraswamyDistribution(1, 1)):
        assert np.allclose(d.pdf(x), 1.0)
        assert np.allclose(d.cdf(x), x, atol=1e-15)
    k = KumaraswamyDistribution(1, 1, 2, 6)
    assert k.pdf(3.0) == pytest.approx(0.25) and k.cdf(3.0) == pytest.approx(0.25)


def test_endpoints_and_monotone(rng):
    for d in (BetaDistribution(2.5, 0.7, -1, 3), KumaraswamyDistribution(0.6, 4.0, -1, 3)):
        assert d.cdf(-1) == 0.0 and d.cdf(3) == 1.0
        assert d.cdf(-5) == 0.0 and d.cdf(5) == 1.0
        assert d.pdf(-2) == 0.0 and d.pdf(4) == 0.0
        x = np.sort(rng.uniform(-1, 3, 500))
        assert np.all(np.diff(d.cdf(x)) >= 0)


def test_beta_symmetry():
    assert BetaDistribution(2, 2).cdf(0.5) == pytest.approx(0.5, abs=1e-15)
    assert BetaDistribution(2, 2).pdf(0.5) == pytest.approx(1.5)


def test_kumaraswamy_square_case():
    assert KumaraswamyDistribution(2, 1).cdf(0.5) == pytest.approx(0.25, abs=1e-15)


def test_kumaraswamy_quantile_round_trip(rng):
    for a, b in rng.uniform(0.3, 8, (20, 2)):
        d = KumaraswamyDistribution(a, b, 1, 2)
        p = rng.random(200)
        assert np.max(np.abs(d.cdf(d.quantile(p)) - p)) <= 1e-12


def test_pdf_integrates_to_one():
    for d in (BetaDistribution(0.5, 3), BetaDistribution(12, 4, 2, 5), KumaraswamyDistribution(0.7, 2),
              KumaraswamyDistribution(3, 9, -2, 1)):
        val, _ = integrate.quad(d.pdf, d.c, d.d, limit=400, epsabs=1e-13, epsrel=1e-12)
        assert val == pytest.approx(1.0, abs=1e-8)


def test_beta_cdf_against_trapezoid_oracle(rng):
    shapes = np.vstack([[0.5, 0.5], [0.5, 30], [30, 0.5], [30, 30], rng.uniform(0.5, 30, (12, 2))])
    for a, b in shapes:
        d = BetaDistribution(a, b)
        for x in (0.01, 0.2, 0.5, 0.77, 0.99):
            assert abs(d.cdf(x) - trapezoid_beta_cdf(a, b, x)) <= 1e-8


def test_singular_densities():
    assert BetaDistribution(0.5, 1).pdf(0.0) == np.inf
    assert KumaraswamyDistribution(0.5, 1).pdf(0.0) == np.inf
    assert BetaDistribution(2, 3).pdf(0.0) == 0.0


def test_functional_aliases():
    d, k = BetaDistribution(2, 3), KumaraswamyDistribution(2, 3)
    assert beta_pdf(d, 0.3) == d.pdf(0.3) and beta_cdf(d, 0.3) == d.cdf(0.3)
    assert kumaraswamy_pdf(k, 0.3) == k.pdf(0.3) and kumaraswamy_cdf(k, 0.3) == k.cdf(0.3)


@pytest.mark.parametrize("args", [(0, 1), (1, -1), (np.nan, 1), (1, 1, 2, 2)])
def test_invalid_parameters(args):
    with pytest.raises(ValueError):
        BetaDistribution(*args)
    with pytest.raises(ValueError):
        KumaraswamyDistribution(*args)


def test_quantile_range_checked():
    with pytest.raises(ValueError):
        BetaDistribution(2, 2).quantile(1.5)
    with pytest.raises(ValueError):
        KumaraswamyDistribution(2, 2).quantile(-0.5)


def test_sampling_matches_mean():
    d = BetaDistribution(2, 5, 10, 20)
    x = d.sample(20_000, seed=4)
    assert abs(x.mean() - d.mean()) < 4 * x.std() / np.sqrt(x.size)
