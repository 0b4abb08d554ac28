"""scikit-learn style wrappers around the fitters.

Each estimator fits one model family to a univariate sample and then acts as
a transformer (``transform`` maps data through the fitted CDF) and a density
scorer (``score_samples`` returns log densities, ``score`` their sum).
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_domain, check_method, check_n_params, check_univariate
from .estimation import FitResult, fit_model


class _ShapeEstimator(TransformerMixin, BaseEstimator):
    _model: str = ""

    def __init__(self, method: str = "mle", n_params: int = 2, domain=(0.0, 1.0), start=None):
        self.method = method
        self.n_params = n_params
        self.domain = domain
        self.start = start

    def fit(self, X, y=None):
        x = check_univariate(X)
        method = check_method(self.method)
        n_params = check_n_params(self.n_params)
        domain = check_domain(self.domain)
        result = fit_model(x, self._model, method, n_params, domain, self.start)
        self.result_: FitResult = result
        self.distribution_ = result.distribution()
        self.params_ = result.params()
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        check_is_fitted(self, "result_")
        return np.asarray(self.distribution_.cdf(check_univariate(X)), dtype=float).reshape(-1, 1)

    def inverse_transform(self, P):
        check_is_fitted(self, "result_")
        return np.asarray(self.distribution_.quantile(check_univariate(P, "P")), dtype=float).reshape(-1, 1)

    def score_samples(self, X):
        check_is_fitted(self, "result_")
        return np.asarray(self.distribution_.logpdf(check_univariate(X)), dtype=float)

    def score(self, X, y=None) -> float:
        return float(np.sum(self.score_samples(X)))

    def sample(self, n_samples: int = 1, random_state=None) -> np.ndarray:
        check_is_fitted(self, "result_")
        return self.distribution_.sample(n_samples, seed=random_state).reshape(-1, 1)


class BmtEstimator(_ShapeEstimator):
    """BMT fit; shapes ``kappa_l``, ``kappa_r`` (plus ``c``, ``d`` when ``n_params=4``)."""

    _model = "bmt"


class BetaEstimator(_ShapeEstimator):
    _model = "beta"


class KumaraswamyEstimator(_ShapeEstimator):
    _model = "kumaraswamy"
