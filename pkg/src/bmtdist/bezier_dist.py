"""Distributions whose CDF is a planar Bezier curve.

The CDF is the curve ``(x(t), y(t))`` traced by a validated control polygon:
``F(x) = y(x^{-1}(x))``, ``f(x) = y'(t) / x'(t)`` and ``Q(p) = x(y^{-1}(p))``.
Raw and central moments are exact finite sums over weak compositions.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from ._numerics import monotone_solve, weak_compositions
from .bezier_core import (
    ControlPolygon,
    bernstein_basis,
    binomial,
    check_cdf_conditions,
    forward_differences,
)

MAX_MOMENT_ORDER = 8

_T_TOL = 1e-13


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


class BezierDistribution:
    """Continuous-or-mixed distribution with a Bezier-curve CDF.

    Parameters
    ----------
    polygon : ControlPolygon or array_like of shape (n+1, 2)
        Control points.  A polygon drawn right to left is reversed.

    Raises
    ------
    ValueError
        If the curve is not a valid CDF (see
        :func:`bmtdist.bezier_core.check_cdf_conditions`) or has an empty
        support.
    """

    def __init__(self, polygon: ControlPolygon | Sequence[Sequence[float]] | np.ndarray):
        if not isinstance(polygon, ControlPolygon):
            polygon = ControlPolygon(polygon)
        report = check_cdf_conditions(polygon)
        if not report.valid:
            reasons = []
            if report.degenerate:
                reasons.append("all abscissae are equal")
            if not report.condition_i:
                reasons.append("end ordinates outside [0, 1]")
            if not report.condition_ii_x:
                reasons.append(f"x(t) decreases somewhere (min derivative form {report.min_dx:.3g})")
            if not report.condition_ii_y:
                reasons.append(f"y(t) decreases somewhere (min derivative form {report.min_dy:.3g})")
            raise ValueError("control polygon does not define a CDF: " + "; ".join(reasons))
        self.polygon = report.polygon
        self.validity = report
        pts = self.polygon.points
        self._n = self.polygon.degree
        self._x = pts[:, 0].copy()
        self._y = pts[:, 1].copy()
        self._dx = self._n * forward_differences(self._x, 1)
        self._dy = self._n * forward_differences(self._y, 1)
        self.support = (float(self._x[0]), float(self._x[-1]))

    def __repr__(self) -> str:
        return f"BezierDistribution(degree={self._n}, support={self.support})"

    # parametric pieces -------------------------------------------------

    def _xt(self, t):
        return bernstein_basis(self._n, t) @ self._x

    def _yt(self, t):
        return bernstein_basis(self._n, t) @ self._y

    def _dxt(self, t):
        return bernstein_basis(self._n - 1, t) @ self._dx

    def _dyt(self, t):
        return bernstein_basis(self._n - 1, t) @ self._dy

    def _derivs(self, r: int, t):
        scale = math.perm(self._n, r)
        basis = bernstein_basis(self._n - r, t)
        return (
            scale * basis @ forward_differences(self._x, r),
            scale * basis @ forward_differences(self._y, r),
        )

    # inversion ---------------------------------------------------------

    def t_of_x(self, x):
        """Curve parameter ``t`` with ``x(t) = x`` for ``x`` in the support."""
        x = np.asarray(x, dtype=float)
        lo, hi = self.support
        if np.any((x < lo) | (x > hi)) or np.any(np.isnan(x)):
            raise ValueError(f"x must lie in the support [{lo}, {hi}]")
        start = (x - lo) / (hi - lo)
        t = monotone_solve(self._xt, self._dxt, x, np.zeros_like(x), np.ones_like(x), start, tol=_T_TOL)
        t = np.where(x == lo, 0.0, np.where(x == hi, 1.0, t))
        return t if t.ndim else float(t)

    # distribution functions --------------------------------------------

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        lo, hi = self.support
        inside = (x >= lo) & (x < hi)
        out = np.where(x >= hi, 1.0, 0.0)
        if inside.any():
            out[inside] = self._yt(self.t_of_x(x[inside]))
        return out if out.ndim else float(out)

    def pdf(self, x):
        """Density; ``+inf`` where the curve has a vertical tangent."""
        x = np.asarray(x, dtype=float)
        lo, hi = self.support
        inside = (x >= lo) & (x <= hi)
        out = np.zeros(x.shape)
        if inside.any():
            out[inside] = self._density_at_t(np.atleast_1d(self.t_of_x(x[inside])))
        return out if out.ndim else float(out)

    def _density_at_t(self, t: np.ndarray) -> np.ndarray:
        dx = self._dxt(t)
        dy = self._dyt(t)
        xtol = 1e-14 * max(1.0, float(np.abs(self._dx).max()))
        ytol = 1e-14 * max(1.0, float(np.abs(self._dy).max()))
        out = np.empty(t.shape)
        pending = np.ones(t.shape, dtype=bool)
        for r in range(1, self._n + 1):
            if r > 1:
                dx, dy = self._derivs(r, t)
            zx = np.abs(dx) <= xtol
            zy = np.abs(dy) <= ytol
            resolved = pending & ~(zx & zy)
            with np.errstate(divide="ignore", invalid="ignore"):
                ratio = np.where(zx, np.where(zy, 0.0, np.inf), dy / dx)
            out[resolved] = np.maximum(ratio[resolved], 0.0)
            pending &= ~resolved
            if not pending.any():
                break
        out[pending] = 0.0
        return out

    def quantile(self, p):
        """Generalized inverse ``min{x : F(x) >= p}``; ``p = 0`` and ``p = 1`` map to the support ends."""
        p = np.asarray(p, dtype=float)
        if np.any((p < 0.0) | (p > 1.0)) or np.any(np.isnan(p)):
            raise ValueError("probabilities must lie in [0, 1]")
        lo, hi = self.support
        y0, yn = self._y[0], self._y[-1]
        out = np.where(p <= y0, lo, hi).astype(float)
        mid = (p > y0) & (p <= yn)
        if mid.any():
            pm = p[mid]
            t = monotone_solve(self._yt, self._dyt, pm, np.zeros_like(pm), np.ones_like(pm), tol=_T_TOL)
            out[mid] = self._xt(t)
        out = np.where(p == 0.0, lo, np.where(p == 1.0, hi, out))
        return out if out.ndim else float(out)

    ppf = quantile

    # moments -----------------------------------------------------------

    def raw_moment(self, r: int) -> float:
        """Exact r-th raw moment as a sum over weak compositions of ``r``."""
        return _bezier_raw_moment(self._x, self._y, r)

    def central_moment(self, r: int) -> float:
        """Exact r-th central moment: the raw formula on abscissae shifted by the mean."""
        mu = self.raw_moment(1)
        return _bezier_raw_moment(self._x - mu, self._y, r)

    def mean(self) -> float:
        return self.raw_moment(1)

    def var(self) -> float:
        return self.central_moment(2)

    def std(self) -> float:
        return math.sqrt(self.var())

    def skewness(self) -> float:
        return self.central_moment(3) / self.central_moment(2) ** 1.5

    def kurtosis(self) -> float:
        return self.central_moment(4) / self.central_moment(2) ** 2

    # transforms and sampling -------------------------------------------

    def affine_transform(self, u: float, v: float) -> BezierDistribution:
        """Distribution of ``u X + v`` for ``u > 0``."""
        if not u > 0:
            raise ValueError(f"scale must be positive, got {u}")
        pts = self.polygon.points.copy()
        pts[:, 0] = u * pts[:, 0] + v
        return BezierDistribution(ControlPolygon(pts))

    def sample(self, size: int, seed=None) -> np.ndarray:
        """Inversion sampling: ``quantile(U)`` with ``U`` uniform on (0, 1)."""
        if size < 0:
            raise ValueError("size must be nonnegative")
        u = _as_rng(seed).random(size)
        return np.atleast_1d(self.quantile(u))

    rvs = sample


def _bezier_raw_moment(xs: np.ndarray, ys: np.ndarray, r: int) -> float:
    if not isinstance(r, (int, np.integer)) or not 1 <= r <= MAX_MOMENT_ORDER:
        raise ValueError(f"moment order must be an integer in [1, {MAX_MOMENT_ORDER}], got {r}")
    r = int(r)
    n = len(xs) - 1
    dy = np.diff(ys)
    top = (r + 1) * n - 1
    bin_n = [binomial(n, i) for i in range(n + 1)]
    inner_j = [binomial(n - 1, j) * dy[j] for j in range(n)]
    total = 0.0
    for k in weak_compositions(r, n + 1):
        coef = 1.0
        shift = 0
        for i, ki in enumerate(k):
            if ki:
                coef *= (bin_n[i] * xs[i]) ** ki / math.factorial(ki)
                shift += i * ki
        if coef == 0.0:
            continue
        acc = 0.0
        for j in range(n):
            if inner_j[j] != 0.0:
                acc += inner_j[j] / binomial(top, j + shift)
        total += coef * acc
    continuous = math.factorial(r) / (r + 1) * total
    # point masses at the support ends when the curve does not start at 0 / end at 1
    atoms = ys[0] * xs[0] ** r + (1.0 - ys[-1]) * xs[-1] ** r
    return float(continuous + atoms)
