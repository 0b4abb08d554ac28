"""Maximum likelihood and maximum product of spacings estimation.

Three model families (``bmt``, ``beta``, ``kumaraswamy``) are fitted either
on a fixed domain (two shape parameters) or with the domain endpoints
estimated jointly (four parameters ``c, d, shape1, shape2``).  The search is
a box-constrained quasi-Newton ascent (L-BFGS-B) driven by forward-difference
gradients.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass, field
from typing import Callable, Literal, Sequence

import numpy as np
from scipy.optimize import minimize

from .bmt import KAPPA_EPS, BmtDistribution, cdf_pdf_standard, spacings_standard
from .competitors import (
    BetaDistribution,
    KumaraswamyDistribution,
    beta_std_cdf,
    beta_std_logpdf,
    kumaraswamy_std_cdf,
    kumaraswamy_std_logpdf,
)

ModelName = Literal["bmt", "beta", "kumaraswamy"]
MethodName = Literal["mle", "mpse"]

MAX_ITER = 500
FTOL = 1e-10
GTOL = 1e-8
TIE_TOL = 1e-12
N_RESTARTS = 3

# large finite stand-in for an infinite negative objective; keeps the line search backtracking
_REJECT = 1e30


@dataclass(frozen=True)
class _Family:
    name: str
    shape_names: tuple[str, str]
    evaluate: Callable[[float, float, np.ndarray, bool, bool], tuple[np.ndarray | None, np.ndarray | None]]
    build: Callable[..., object]
    shape_bounds: tuple[tuple[float, float], tuple[float, float]]
    shape_start: tuple[float, float]
    log_scale: bool
    spacings: Callable[[float, float, np.ndarray, np.ndarray], np.ndarray] | None = None


def _bmt_eval(s1, s2, z, want_cdf, want_logpdf):
    cdf, pdf = cdf_pdf_standard(s1, s2, z)
    logpdf = None
    if want_logpdf:
        with np.errstate(divide="ignore"):
            logpdf = np.log(pdf)
    return cdf, logpdf


def _beta_eval(s1, s2, z, want_cdf, want_logpdf):
    return (beta_std_cdf(s1, s2, z) if want_cdf else None,
            beta_std_logpdf(s1, s2, z) if want_logpdf else None)


def _kuma_eval(s1, s2, z, want_cdf, want_logpdf):
    return (kumaraswamy_std_cdf(s1, s2, z) if want_cdf else None,
            kumaraswamy_std_logpdf(s1, s2, z) if want_logpdf else None)


FAMILIES: dict[str, _Family] = {
    "bmt": _Family(
        "bmt", ("kappa_l", "kappa_r"), _bmt_eval,
        lambda s1, s2, c=0.0, d=1.0: BmtDistribution(s1, s2, c, d),
        ((KAPPA_EPS, 1.0 - KAPPA_EPS), (KAPPA_EPS, 1.0 - KAPPA_EPS)), (0.6, 0.6), False,
        spacings_standard,
    ),
    "beta": _Family(
        "beta", ("alpha", "beta"), _beta_eval,
        lambda s1, s2, c=0.0, d=1.0: BetaDistribution(s1, s2, c, d),
        ((1e-4, 1e8), (1e-4, 1e8)), (1.0, 1.0), True,
    ),
    "kumaraswamy": _Family(
        "kumaraswamy", ("a", "b"), _kuma_eval,
        lambda s1, s2, c=0.0, d=1.0: KumaraswamyDistribution(s1, s2, c, d),
        ((1e-4, 1e8), (1e-4, 1e8)), (1.0, 1.0), True,
    ),
}


def _family(model: str) -> _Family:
    try:
        return FAMILIES[model]
    except KeyError:
        raise ValueError(f"unknown model {model!r}; expected one of {sorted(FAMILIES)}") from None


def _describe(dist) -> tuple[_Family, float, float, float, float]:
    if isinstance(dist, BmtDistribution):
        return FAMILIES["bmt"], dist.kappa_l, dist.kappa_r, dist.c, dist.d
    if isinstance(dist, BetaDistribution):
        return FAMILIES["beta"], dist.alpha, dist.beta, dist.c, dist.d
    if isinstance(dist, KumaraswamyDistribution):
        return FAMILIES["kumaraswamy"], dist.a, dist.b, dist.c, dist.d
    raise TypeError(f"unsupported distribution type {type(dist).__name__}")


# objectives ----------------------------------------------------------------


def _as_data(data) -> np.ndarray:
    x = np.asarray(data, dtype=float).ravel()
    if x.size == 0:
        raise ValueError("data must be nonempty")
    if not np.all(np.isfinite(x)):
        raise ValueError("data must be finite")
    return x


def _drop_endpoints(x: np.ndarray, c: float, d: float, warn: bool = True) -> tuple[np.ndarray, int]:
    keep = (x != c) & (x != d)
    n_drop = int(x.size - keep.sum())
    if n_drop and warn:
        warnings.warn(f"{n_drop} observation(s) equal to a domain endpoint were excluded", stacklevel=3)
    x = x[keep]
    if x.size == 0:
        raise ValueError("no observations left after excluding domain endpoints")
    return x, n_drop


def _loglik(fam: _Family, s1, s2, c, d, x) -> float:
    w = d - c
    _, logpdf = fam.evaluate(s1, s2, (x - c) / w, False, True)
    total = float(np.sum(logpdf)) - x.size * math.log(w)
    return total if not math.isnan(total) else -math.inf


def _sum_log_spacings(fam: _Family, s1, s2, c, d, x_sorted) -> float:
    w = d - c
    z = (x_sorted - c) / w
    dz = np.diff(np.concatenate(([c], x_sorted, [d]))) / w
    tie = dz[1:-1] < TIE_TOL
    if fam.spacings is not None:
        spacings = fam.spacings(s1, s2, z, dz)
        logpdf = fam.evaluate(s1, s2, z, False, True)[1] if tie.any() else None
    else:
        cdf, logpdf = fam.evaluate(s1, s2, z, True, bool(tie.any()))
        spacings = np.diff(np.concatenate(([0.0], cdf, [1.0])))
    with np.errstate(divide="ignore", invalid="ignore"):
        logs = np.log(spacings)
    if tie.any():
        # tied order statistic: density in place of the vanishing spacing
        logs[1:-1] = np.where(tie, logpdf[1:] - math.log(w), logs[1:-1])
    total = float(np.sum(logs))
    return total if not math.isnan(total) else -math.inf


def log_likelihood(dist, data) -> float:
    """Sum of log densities; observations equal to ``c`` or ``d`` are excluded.

    Returns ``-inf`` when some remaining observation has zero density.
    """
    fam, s1, s2, c, d = _describe(dist)
    x, _ = _drop_endpoints(_as_data(data), c, d)
    return _loglik(fam, s1, s2, c, d, x)


def sum_log_spacings(dist, data) -> float:
    """Sum of log spacings of the fitted CDF over the ordered sample.

    The sample is augmented with the domain endpoints, ties are replaced by
    the log density, and observations equal to an endpoint are excluded.
    """
    fam, s1, s2, c, d = _describe(dist)
    x = _as_data(data)
    outside = x[(x < c) | (x > d)]
    if outside.size:
        raise ValueError(f"observation {outside[0]!r} lies outside the domain [{c}, {d}]")
    x, _ = _drop_endpoints(x, c, d)
    return _sum_log_spacings(fam, s1, s2, c, d, np.sort(x))


def spacings_upper_bound(n: int) -> float:
    """``(n + 1) log(1 / (n + 1))``, attained when all spacings are equal."""
    return -(n + 1) * math.log(n + 1)


def information_criteria(log_lik, k: int | None = None, n: int | None = None) -> tuple[float, float]:
    """(AIC, BIC) for ``k`` parameters and ``n`` observations.

    ``log_lik`` may also be a :class:`FitResult`, in which case ``k`` and
    ``n`` default to its parameter count and number of observations used.
    """
    if isinstance(log_lik, FitResult):
        k = log_lik.n_params if k is None else k
        n = log_lik.n_obs if n is None else n
        log_lik = log_lik.log_likelihood
    if k is None or n is None:
        raise ValueError("k and n are required for a plain log-likelihood")
    if n < 1:
        raise ValueError("n must be positive")
    return 2.0 * k - 2.0 * log_lik, k * math.log(n) - 2.0 * log_lik


# specs and results -----------------------------------------------------------


@dataclass(frozen=True)
class ObjectiveSpec:
    """What to fit and where to search.

    For ``n_params == 2`` the parameter vector is ``(shape1, shape2)`` and the
    domain is fixed; for ``n_params == 4`` it is ``(c, d, shape1, shape2)``.
    """

    model: ModelName
    method: MethodName
    n_params: int
    bounds: tuple[tuple[float, float], ...]
    start: tuple[float, ...]
    domain: tuple[float, float] = (0.0, 1.0)

    def __post_init__(self):
        _family(self.model)
        if self.method not in ("mle", "mpse"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.n_params not in (2, 4):
            raise ValueError("n_params must be 2 or 4")
        if len(self.bounds) != self.n_params or len(self.start) != self.n_params:
            raise ValueError("bounds and start must have one entry per parameter")
        for (lo, hi), s in zip(self.bounds, self.start):
            if not lo < hi:
                raise ValueError(f"empty bound interval [{lo}, {hi}]")
            if not lo < s < hi:
                raise ValueError(f"start value {s} not strictly inside its bound [{lo}, {hi}]")

    @property
    def param_names(self) -> tuple[str, ...]:
        names = _family(self.model).shape_names
        return names if self.n_params == 2 else ("c", "d", *names)


def make_spec(
    model: ModelName,
    method: MethodName = "mle",
    n_params: int = 2,
    data=None,
    domain: tuple[float, float] = (0.0, 1.0),
    start: Sequence[float] | None = None,
) -> ObjectiveSpec:
    """Default search box and start point for a model.

    Two-parameter fits start BMT at (0.6, 0.6) and beta/Kumaraswamy at (1, 1).
    Four-parameter fits need ``data``: ``c`` is searched in
    ``[min - 10 range, min - delta]``, ``d`` in ``[max + delta, max + 10 range]``
    with ``delta = 1e-6 range``, starting 5% of the range outside the sample.
    """
    fam = _family(model)
    if n_params == 2:
        bounds = fam.shape_bounds
        start = tuple(start) if start is not None else fam.shape_start
        return ObjectiveSpec(model, method, 2, bounds, tuple(float(s) for s in start), tuple(domain))
    if n_params != 4:
        raise ValueError("n_params must be 2 or 4")
    if data is None:
        raise ValueError("four-parameter specs need the data to place the domain box")
    x = _as_data(data)
    lo, hi = float(x.min()), float(x.max())
    rng = hi - lo
    if not rng > 0:
        raise ValueError("four-parameter fits need a sample with positive range")
    delta = 1e-6 * rng
    bounds = ((lo - 10.0 * rng, lo - delta), (hi + delta, hi + 10.0 * rng), *fam.shape_bounds)
    if start is None:
        start = (lo - 0.05 * rng, hi + 0.05 * rng, *fam.shape_start)
    return ObjectiveSpec(model, method, 4, bounds, tuple(float(s) for s in start))


@dataclass
class FitResult:
    """Estimate plus both objectives evaluated at it."""

    model: str
    method: str
    n_params: int
    param_names: tuple[str, ...]
    estimate: tuple[float, ...]
    log_likelihood: float
    sum_log_spacings: float
    aic: float
    bic: float
    converged: bool
    iterations: int
    objective_evals: int
    n_obs: int
    n_excluded: int = 0
    bound_active: tuple[bool, ...] = ()
    domain: tuple[float, float] = (0.0, 1.0)
    message: str = ""
    start_objective: float = field(default=math.nan, repr=False)

    @property
    def objective(self) -> float:
        return self.log_likelihood if self.method == "mle" else self.sum_log_spacings

    def params(self) -> dict[str, float]:
        return dict(zip(self.param_names, self.estimate))

    def distribution(self):
        fam = _family(self.model)
        if self.n_params == 2:
            return fam.build(*self.estimate, *self.domain)
        c, d, s1, s2 = self.estimate
        return fam.build(s1, s2, c, d)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["param_names"] = list(self.param_names)
        out["estimate"] = list(self.estimate)
        out["bound_active"] = list(self.bound_active)
        out["domain"] = list(self.domain)
        return out

    @classmethod
    def from_dict(cls, doc: dict) -> FitResult:
        doc = dict(doc)
        for key in ("param_names", "estimate", "bound_active", "domain"):
            if key in doc:
                doc[key] = tuple(doc[key])
        return cls(**doc)


# optimizer -------------------------------------------------------------------


class _Problem:
    """Maps optimizer coordinates to model parameters and evaluates the objective.

    Shapes of beta/Kumaraswamy are searched on a log scale; the domain
    endpoints of four-parameter fits are searched in units of the sample
    range measured from the sample minimum.
    """

    def __init__(self, spec: ObjectiveSpec, x_sorted: np.ndarray):
        self.spec = spec
        self.fam = _family(spec.model)
        self.x = x_sorted
        self.n_evals = 0
        k = spec.n_params
        self.log_idx = [i for i in range(k - 2, k)] if self.fam.log_scale else []
        if k == 4:
            self.loc = float(x_sorted[0])
            self.scale = float(x_sorted[-1] - x_sorted[0])
        self.objective = _loglik if spec.method == "mle" else _sum_log_spacings

    def to_work(self, theta) -> np.ndarray:
        u = np.array(theta, dtype=float)
        if self.spec.n_params == 4:
            u[:2] = (u[:2] - self.loc) / self.scale
        for i in self.log_idx:
            u[i] = math.log(u[i])
        return u

    def from_work(self, u) -> np.ndarray:
        theta = np.array(u, dtype=float)
        if self.spec.n_params == 4:
            theta[:2] = self.loc + self.scale * theta[:2]
        for i in self.log_idx:
            theta[i] = math.exp(theta[i])
        return theta

    def work_bounds(self) -> list[tuple[float, float]]:
        lo = self.to_work([b[0] for b in self.spec.bounds])
        hi = self.to_work([b[1] for b in self.spec.bounds])
        return list(zip(lo, hi))

    def split(self, theta) -> tuple[float, float, float, float]:
        if self.spec.n_params == 2:
            c, d = self.spec.domain
            return float(theta[0]), float(theta[1]), c, d
        return float(theta[2]), float(theta[3]), float(theta[0]), float(theta[1])

    def value(self, theta) -> float:
        s1, s2, c, d = self.split(theta)
        if not c < d:
            return -math.inf
        return self.objective(self.fam, s1, s2, c, d, self.x)

    def negative(self, u) -> float:
        self.n_evals += 1
        v = self.value(self.from_work(u))
        return -v if math.isfinite(v) else _REJECT

    def gradient(self, u, f0=None) -> np.ndarray:
        # forward differences, flipped backwards at an upper bound
        u = np.asarray(u, dtype=float)
        if f0 is None:
            f0 = self.negative(u)
        g = np.empty_like(u)
        bounds = self.work_bounds()
        for i in range(u.size):
            h = 1e-7 * (1.0 + abs(u[i]))
            if u[i] + h > bounds[i][1]:
                h = -h
            v = u.copy()
            v[i] += h
            g[i] = (self.negative(v) - f0) / h
        return g


def _fit_from(problem: _Problem, u0: np.ndarray):
    bounds = problem.work_bounds()

    def fun_and_grad(u):
        f0 = problem.negative(u)
        return f0, problem.gradient(u, f0)

    res = minimize(
        fun_and_grad, u0, jac=True, method="L-BFGS-B", bounds=bounds,
        options={"maxiter": MAX_ITER, "ftol": FTOL, "gtol": GTOL, "maxfun": 20 * MAX_ITER},
    )
    return res


def _central_derivatives(problem: _Problem, u: np.ndarray, h: float) -> tuple[np.ndarray, np.ndarray]:
    k = u.size
    f0 = problem.negative(u)
    g = np.empty(k)
    hess = np.empty((k, k))
    eye = np.eye(k) * h
    fp = [problem.negative(u + eye[i]) for i in range(k)]
    fm = [problem.negative(u - eye[i]) for i in range(k)]
    for i in range(k):
        g[i] = (fp[i] - fm[i]) / (2 * h)
        hess[i, i] = (fp[i] - 2 * f0 + fm[i]) / h**2
        for j in range(i):
            hess[i, j] = hess[j, i] = (
                problem.negative(u + eye[i] + eye[j]) - fp[i] - fp[j] + 2 * f0 - fm[i] - fm[j]
                + problem.negative(u - eye[i] - eye[j])
            ) / (2 * h**2)
    return g, hess


def _newton_polish(problem: _Problem, u: np.ndarray, max_steps: int = 10) -> np.ndarray:
    """Refine an interior quasi-Newton optimum with guarded Newton steps.

    The relative-change stopping rule of the quasi-Newton stage can stop while
    the gradient is still visibly nonzero on large samples.  Central
    differences remove the forward-difference bias; a step is kept only if it
    stays inside the box and lowers the negative objective.
    """
    wb = np.array(problem.work_bounds())
    h = 1e-5
    f = problem.negative(u)
    for _ in range(max_steps):
        if np.any(u - h <= wb[:, 0]) or np.any(u + h >= wb[:, 1]):
            break
        g, hess = _central_derivatives(problem, u, h)
        if not np.all(np.isfinite(hess)) or np.max(np.abs(g)) < 1e-9:
            break
        try:
            if np.any(np.linalg.eigvalsh(hess) <= 0.0):
                break
            step = np.linalg.solve(hess, g)
        except np.linalg.LinAlgError:
            break
        for _ in range(20):
            cand = u - step
            if np.all(cand > wb[:, 0]) and np.all(cand < wb[:, 1]):
                fc = problem.negative(cand)
                if fc <= f:
                    break
            step = 0.5 * step
        else:
            break
        if np.max(np.abs(cand - u)) < 1e-13:
            u, f = cand, fc
            break
        u, f = cand, fc
    return u


def fit(spec: ObjectiveSpec, data) -> FitResult:
    """Maximize the objective selected by ``spec`` over its box.

    Non-convergence is reported through ``FitResult.converged``; after a
    failed first run the search is restarted from three jittered points and
    the best outcome is kept.
    """
    x = _as_data(data)
    if spec.n_params == 2:
        c, d = spec.domain
        outside = x[(x < c) | (x > d)]
        if outside.size:
            raise ValueError(f"observation {outside[0]!r} lies outside the domain [{c}, {d}]")
        x, n_drop = _drop_endpoints(x, c, d)
    else:
        n_drop = 0
        (clo, chi), (dlo, dhi) = spec.bounds[:2]
        if not (chi < x.min() and dlo > x.max()):
            raise ValueError("four-parameter box must keep c below and d above every observation")
    x = np.sort(x)
    problem = _Problem(spec, x)
    u_start = problem.to_work(spec.start)
    start_value = problem.value(np.asarray(spec.start, dtype=float))

    best = _fit_from(problem, u_start)
    iterations = int(best.nit)
    if not best.success:
        jitter_rng = np.random.default_rng(20240531)
        wb = np.array(problem.work_bounds())
        width = np.minimum(wb[:, 1] - wb[:, 0], 10.0)
        for _ in range(N_RESTARTS):
            u0 = np.clip(u_start + 0.1 * width * jitter_rng.uniform(-1, 1, u_start.size), wb[:, 0], wb[:, 1])
            res = _fit_from(problem, u0)
            iterations += int(res.nit)
            if (res.success, -res.fun) > (best.success, -best.fun):
                best = res

    u_best = _newton_polish(problem, best.x) if best.success else best.x
    theta = problem.from_work(u_best)
    # never report a point worse than the start
    if problem.value(theta) < start_value:
        theta = np.asarray(spec.start, dtype=float)
    return _result(spec, problem, theta, bool(best.success), iterations, str(best.message), n_drop, start_value)


def _result(spec, problem, theta, converged, iterations, message, n_drop, start_value) -> FitResult:
    s1, s2, c, d = problem.split(theta)
    fam = problem.fam
    ll = _loglik(fam, s1, s2, c, d, problem.x)
    sls = _sum_log_spacings(fam, s1, s2, c, d, problem.x)
    n = problem.x.size
    aic, bic = information_criteria(ll, spec.n_params, n)
    active = tuple(
        bool(min(t - lo, hi - t) <= 1e-8 * (hi - lo)) for t, (lo, hi) in zip(theta, spec.bounds)
    )
    return FitResult(
        model=spec.model,
        method=spec.method,
        n_params=spec.n_params,
        param_names=spec.param_names,
        estimate=tuple(float(v) for v in theta),
        log_likelihood=ll,
        sum_log_spacings=sls,
        aic=aic,
        bic=bic,
        converged=converged,
        iterations=iterations,
        objective_evals=problem.n_evals,
        n_obs=n,
        n_excluded=n_drop,
        bound_active=active,
        domain=(c, d),
        message=message,
        start_objective=start_value,
    )


def fit_four_parameter(spec: ObjectiveSpec, data) -> FitResult:
    """Joint fit of ``(c, d, shape1, shape2)``; needs at least five observations."""
    x = _as_data(data)
    if x.size < 5:
        raise ValueError("four-parameter fits need at least 5 observations")
    if spec.n_params != 4:
        raise ValueError("spec must describe a four-parameter fit")
    return fit(spec, x)


def fit_model(
    data,
    model: ModelName = "bmt",
    method: MethodName = "mle",
    n_params: int = 2,
    domain: tuple[float, float] = (0.0, 1.0),
    start: Sequence[float] | None = None,
) -> FitResult:
    """Convenience wrapper: default spec, then :func:`fit` or :func:`fit_four_parameter`."""
    spec = make_spec(model, method, n_params, data=data if n_params == 4 else None, domain=domain, start=start)
    if n_params == 4:
        return fit_four_parameter(spec, data)
    return fit(spec, data)
