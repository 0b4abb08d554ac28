"""Beta and Kumaraswamy distributions on [c, d], used as comparison models."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special

from .bezier_dist import _as_rng
from .bmt import BmtDomain


def _check_shapes(**shapes):
    for name, v in shapes.items():
        if not (np.isfinite(v) and v > 0):
            raise ValueError(f"{name} must be positive and finite, got {v!r}")


# standardized kernels (z in [0, 1]) -----------------------------------------


def beta_std_logpdf(alpha, beta, z):
    z = np.asarray(z, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = special.xlogy(alpha - 1.0, z) + special.xlog1py(beta - 1.0, -z) - special.betaln(alpha, beta)
    return np.where((z >= 0.0) & (z <= 1.0), val, -np.inf)


def beta_std_cdf(alpha, beta, z):
    z = np.clip(np.asarray(z, dtype=float), 0.0, 1.0)
    return special.betainc(alpha, beta, z)


def kumaraswamy_std_logpdf(a, b, z):
    z = np.asarray(z, dtype=float)
    zc = np.clip(z, 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = np.log(a) + np.log(b) + special.xlogy(a - 1.0, zc) + special.xlog1py(b - 1.0, -(zc**a))
    return np.where((z >= 0.0) & (z <= 1.0), val, -np.inf)


def kumaraswamy_std_cdf(a, b, z):
    z = np.clip(np.asarray(z, dtype=float), 0.0, 1.0)
    with np.errstate(divide="ignore"):
        return -np.expm1(b * np.log1p(-(z**a)))


def kumaraswamy_std_quantile(a, b, p):
    p = np.asarray(p, dtype=float)
    return (-np.expm1(np.log1p(-p) / b)) ** (1.0 / a)


# distribution objects -------------------------------------------------------


@dataclass(frozen=True)
class _Bounded:
    c: float
    d: float

    @property
    def domain(self) -> BmtDomain:
        return BmtDomain(self.c, self.d)

    @property
    def support(self) -> tuple[float, float]:
        return self.c, self.d

    def _z(self, x):
        return (np.asarray(x, dtype=float) - self.c) / (self.d - self.c)

    def pdf(self, x):
        out = np.exp(self.logpdf(x))
        return out if np.ndim(out) else float(out)

    def sample(self, size: int, seed=None) -> np.ndarray:
        if size < 0:
            raise ValueError("size must be nonnegative")
        return np.atleast_1d(self.quantile(_as_rng(seed).random(size)))


@dataclass(frozen=True)
class BetaDistribution(_Bounded):
    """Beta(alpha, beta) rescaled to [c, d]."""

    alpha: float = 1.0
    beta: float = 1.0

    def __init__(self, alpha: float, beta: float, c: float = 0.0, d: float = 1.0):
        _check_shapes(alpha=alpha, beta=beta)
        BmtDomain(c, d)
        object.__setattr__(self, "alpha", float(alpha))
        object.__setattr__(self, "beta", float(beta))
        object.__setattr__(self, "c", float(c))
        object.__setattr__(self, "d", float(d))

    def logpdf(self, x):
        out = beta_std_logpdf(self.alpha, self.beta, self._z(x)) - np.log(self.d - self.c)
        return out if np.ndim(out) else float(out)

    def cdf(self, x):
        out = beta_std_cdf(self.alpha, self.beta, self._z(x))
        return out if np.ndim(out) else float(out)

    def quantile(self, p):
        p = np.asarray(p, dtype=float)
        if np.any((p < 0.0) | (p > 1.0)):
            raise ValueError("probabilities must lie in [0, 1]")
        out = self.c + (self.d - self.c) * special.betaincinv(self.alpha, self.beta, p)
        return out if np.ndim(out) else float(out)

    def mean(self) -> float:
        return self.c + (self.d - self.c) * self.alpha / (self.alpha + self.beta)


@dataclass(frozen=True)
class KumaraswamyDistribution(_Bounded):
    """Kumaraswamy(a, b) rescaled to [c, d]: ``F(z) = 1 - (1 - z^a)^b``."""

    a: float = 1.0
    b: float = 1.0

    def __init__(self, a: float, b: float, c: float = 0.0, d: float = 1.0):
        _check_shapes(a=a, b=b)
        BmtDomain(c, d)
        object.__setattr__(self, "a", float(a))
        object.__setattr__(self, "b", float(b))
        object.__setattr__(self, "c", float(c))
        object.__setattr__(self, "d", float(d))

    def logpdf(self, x):
        out = kumaraswamy_std_logpdf(self.a, self.b, self._z(x)) - np.log(self.d - self.c)
        return out if np.ndim(out) else float(out)

    def cdf(self, x):
        out = kumaraswamy_std_cdf(self.a, self.b, self._z(x))
        return out if np.ndim(out) else float(out)

    def quantile(self, p):
        p = np.asarray(p, dtype=float)
        if np.any((p < 0.0) | (p > 1.0)):
            raise ValueError("probabilities must lie in [0, 1]")
        out = self.c + (self.d - self.c) * kumaraswamy_std_quantile(self.a, self.b, p)
        return out if np.ndim(out) else float(out)


# functional aliases ---------------------------------------------------------


def beta_pdf(params: BetaDistribution, x):
    return params.pdf(x)


def beta_cdf(params: BetaDistribution, x):
    return params.cdf(x)


def kumaraswamy_pdf(params: KumaraswamyDistribution, x):
    return params.pdf(x)


def kumaraswamy_cdf(params: KumaraswamyDistribution, x):
    return params.cdf(x)


# parameter-record names used by the fitting layer
BetaParams = BetaDistribution
KumaraswamyParams = KumaraswamyDistribution
