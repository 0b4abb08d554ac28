"""Bernstein polynomials, Bezier curves and the CDF-candidacy check."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

MAX_DEGREE = 30

# condition (ii) tolerances
_FAST_PATH_TOL = 1e-12
_GRID_TOL = 1e-9
_GRID_POINTS = 4097


class ControlPoint(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class ControlPolygon:
    """Ordered control points ``b_0, ..., b_n`` of a planar Bezier curve.

    Coordinates are stored as a read-only ``(n + 1, 2)`` float array.
    """

    points: np.ndarray = field(repr=False)

    def __init__(self, points: Sequence[Sequence[float]] | np.ndarray):
        arr = np.array(points, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError(f"control points must have shape (n+1, 2), got {arr.shape}")
        if arr.shape[0] < 2:
            raise ValueError("a control polygon needs at least two points")
        if arr.shape[0] - 1 > MAX_DEGREE:
            raise ValueError(f"degree {arr.shape[0] - 1} exceeds the supported maximum {MAX_DEGREE}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("control points must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "points", arr)

    @property
    def degree(self) -> int:
        return self.points.shape[0] - 1

    @property
    def xs(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def ys(self) -> np.ndarray:
        return self.points[:, 1]

    def __len__(self) -> int:
        return self.points.shape[0]

    def __getitem__(self, i: int) -> ControlPoint:
        x, y = self.points[i]
        return ControlPoint(float(x), float(y))

    def reversed(self) -> ControlPolygon:
        return ControlPolygon(self.points[::-1])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ControlPolygon):
            return NotImplemented
        return self.points.shape == other.points.shape and bool(np.all(self.points == other.points))

    def __hash__(self) -> int:
        return hash(self.points.tobytes())


def binomial(n: int, k: int) -> float:
    """Binomial coefficient by iterated multiplication (exact in float for n <= 30)."""
    if k < 0 or k > n:
        return 0.0
    k = min(k, n - k)
    out = 1.0
    for j in range(1, k + 1):
        out = out * (n - k + j) / j
    return float(round(out))


def bernstein(i: int, n: int, t):
    """Bernstein basis polynomial ``C(n, i) t^i (1 - t)^(n - i)``.

    ``t`` may be a scalar or an array; the result has the same shape.
    """
    if not 0 <= n <= MAX_DEGREE:
        raise ValueError(f"degree must be in [0, {MAX_DEGREE}], got {n}")
    if not 0 <= i <= n:
        raise ValueError(f"index i={i} out of range for degree {n}")
    t = np.asarray(t, dtype=float)
    out = binomial(n, i) * t**i * (1.0 - t) ** (n - i)
    return out if out.ndim else float(out)


def bernstein_basis(n: int, t) -> np.ndarray:
    """All ``n + 1`` basis polynomials at ``t``, stacked on the last axis."""
    t = np.asarray(t, dtype=float)
    return np.stack([np.asarray(bernstein(i, n, t)) for i in range(n + 1)], axis=-1)


def _check_unit_interval(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if np.any((t < 0.0) | (t > 1.0)) or np.any(np.isnan(t)):
        raise ValueError("parameter t must lie in [0, 1]")
    return t


def _combine(coeffs: np.ndarray, t: np.ndarray) -> np.ndarray:
    # sum_i coeffs[i] B_i^m(t) for coeffs of shape (m+1, k)
    m = coeffs.shape[0] - 1
    return bernstein_basis(m, t) @ coeffs


def bezier_eval(poly: ControlPolygon, t):
    """Point on the curve at parameter ``t`` in [0, 1].

    Returns a :class:`ControlPoint` for scalar ``t`` and an ``(m, 2)`` array
    for array input.  Endpoints are returned exactly.
    """
    t = _check_unit_interval(t)
    out = _combine(poly.points, t)
    # exact endpoint interpolation
    out = np.where((t == 0.0)[..., None], poly.points[0], out)
    out = np.where((t == 1.0)[..., None], poly.points[-1], out)
    if t.ndim == 0:
        return ControlPoint(float(out[0]), float(out[1]))
    return out


def forward_differences(values: np.ndarray, r: int) -> np.ndarray:
    """r-th forward differences ``Delta^r b_j`` along the first axis."""
    return np.diff(np.asarray(values, dtype=float), n=r, axis=0)


def bezier_derivative(poly: ControlPolygon, r: int, t):
    """r-th derivative of the curve with respect to ``t``."""
    n = poly.degree
    if not 1 <= r <= n:
        raise ValueError(f"derivative order must be in [1, {n}], got {r}")
    t = _check_unit_interval(t)
    scale = 1.0
    for j in range(n - r + 1, n + 1):
        scale *= j
    out = scale * _combine(forward_differences(poly.points, r), t)
    if t.ndim == 0:
        return ControlPoint(float(out[0]), float(out[1]))
    return out


def bernstein_form(coeffs, t):
    """Evaluate ``sum_i coeffs[i] B_i^m(t)`` for a 1-D coefficient vector."""
    coeffs = np.asarray(coeffs, dtype=float)
    t = np.asarray(t, dtype=float)
    return _combine(coeffs[:, None], t)[..., 0]


def _bernstein_form_minimum(coeffs: np.ndarray) -> float:
    """Minimum over [0, 1] of a Bernstein-form polynomial.

    Dense grid plus the interior stationary points, located by bracketed
    Newton iterations between sign changes of the derivative.
    """
    m = len(coeffs) - 1
    grid = np.linspace(0.0, 1.0, _GRID_POINTS)
    values = bernstein_form(coeffs, grid)
    best = float(values.min())
    if m < 2:
        return best
    dcoef = m * np.diff(coeffs)
    d2coef = (m - 1) * np.diff(dcoef) if m >= 2 else np.zeros(1)
    dvals = bernstein_form(dcoef, grid)
    for k in np.flatnonzero(np.sign(dvals[:-1]) * np.sign(dvals[1:]) < 0):
        lo, hi = grid[k], grid[k + 1]
        flo = dvals[k]
        t = 0.5 * (lo + hi)
        for _ in range(60):
            g = float(bernstein_form(dcoef, t))
            if g == 0.0:
                break
            if np.sign(g) == np.sign(flo):
                lo, flo = t, g
            else:
                hi = t
            h = float(bernstein_form(d2coef, t))
            step = t - g / h if h != 0.0 else np.nan
            t = step if lo < step < hi else 0.5 * (lo + hi)
            if hi - lo < 1e-15:
                break
        best = min(best, float(bernstein_form(coeffs, t)))
    return best


@dataclass(frozen=True)
class CdfValidity:
    """Outcome of :func:`check_cdf_conditions`.

    ``polygon`` is the (possibly orientation-normalized) polygon that the
    conditions were verified on.
    """

    condition_i: bool
    condition_ii_x: bool
    condition_ii_y: bool
    degenerate: bool
    reversed: bool
    min_dx: float
    min_dy: float
    method: str
    polygon: ControlPolygon

    @property
    def condition_ii(self) -> bool:
        return self.condition_ii_x and self.condition_ii_y

    @property
    def valid(self) -> bool:
        return self.condition_i and self.condition_ii and not self.degenerate


def check_cdf_conditions(poly: ControlPolygon) -> CdfValidity:
    """Check whether the curve of ``poly`` is the graph of a CDF.

    Condition (i) bounds the ordinates of the end points to [0, 1];
    condition (ii) requires both degree ``n - 1`` derivative forms to be
    nonnegative on [0, 1].  Nonnegative control-point differences certify
    (ii) directly; otherwise the forms are minimized numerically and must
    stay above ``-1e-9``.  A polygon whose differences are all nonpositive is
    traversed right to left and is reversed before checking.
    """
    pts = poly.points
    diffs = np.diff(pts, axis=0)
    reversed_ = False
    if np.all(diffs <= 0.0) and np.any(diffs < 0.0):
        poly = poly.reversed()
        pts = poly.points
        diffs = np.diff(pts, axis=0)
        reversed_ = True

    degenerate = bool(np.all(pts[:, 0] == pts[0, 0]))
    condition_i = bool(pts[0, 1] >= 0.0 and pts[-1, 1] <= 1.0)

    if np.all(diffs >= -_FAST_PATH_TOL):
        method = "differences"
        min_dx = float(diffs[:, 0].min())
        min_dy = float(diffs[:, 1].min())
        ok_x = ok_y = True
    else:
        method = "grid"
        min_dx = _bernstein_form_minimum(diffs[:, 0])
        min_dy = _bernstein_form_minimum(diffs[:, 1])
        ok_x = min_dx >= -_GRID_TOL
        ok_y = min_dy >= -_GRID_TOL

    return CdfValidity(
        condition_i=condition_i,
        condition_ii_x=bool(ok_x),
        condition_ii_y=bool(ok_y),
        degenerate=degenerate,
        reversed=reversed_,
        min_dx=min_dx,
        min_dy=min_dy,
        method=method,
        polygon=poly,
    )
