"""The BMT distribution on [0, 1] and its four-parameter form on [c, d].

BMT(kappa_l, kappa_r) is the Bezier distribution with control points
(0, 0), (kappa_l, 0), (1 - kappa_r, 1), (1, 1).  Its CDF is the cubic curve

    x(t) = (3kl + 3kr - 2) t^3 + (-6kl - 3kr + 3) t^2 + 3kl t
    y(t) = -2 t^3 + 3 t^2

for t in [0, 1].  The quantile function is closed form; the CDF and density
need the inverse of x(t), obtained from the cubic formula and a bracketed
Newton polish.

Internally x(t) is evaluated around t = 1/2, where it can be nearly flat
when both kappas approach 1:

    x = m + L s + Q s^2 + A s^3,   s = t - 1/2

with m the median, L = 3/2 - 3/4 (kl + kr), Q = 3/2 (kr - kl) and
A = 3 (kl + kr) - 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._cubic import cubic_root_in_interval
from ._numerics import monotone_solve, weak_compositions
from .bezier_core import ControlPolygon
from .bezier_dist import MAX_MOMENT_ORDER, BezierDistribution, _as_rng

KAPPA_EPS = 1e-9

_COS_4PI_9 = math.cos(4.0 * math.pi / 9.0)


@dataclass(frozen=True)
class BmtParams:
    """Tail-curvature pair, each strictly inside (0, 1)."""

    kappa_l: float
    kappa_r: float

    def __post_init__(self):
        for name in ("kappa_l", "kappa_r"):
            v = getattr(self, name)
            if not (KAPPA_EPS <= v <= 1.0 - KAPPA_EPS):
                raise ValueError(f"{name} must lie in [{KAPPA_EPS}, 1 - {KAPPA_EPS}], got {v!r}")
            object.__setattr__(self, name, float(v))


@dataclass(frozen=True)
class BmtDomain:
    c: float = 0.0
    d: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.c) and math.isfinite(self.d)):
            raise ValueError("domain endpoints must be finite")
        if not self.c < self.d:
            raise ValueError(f"domain requires c < d, got c={self.c}, d={self.d}")
        object.__setattr__(self, "c", float(self.c))
        object.__setattr__(self, "d", float(self.d))

    @property
    def width(self) -> float:
        return self.d - self.c


def _unpack(params) -> tuple[float, float]:
    if isinstance(params, BmtParams):
        return params.kappa_l, params.kappa_r
    if isinstance(params, BmtDistribution):
        return params.kappa_l, params.kappa_r
    kl, kr = params
    return float(kl), float(kr)


def _centered_coeffs(kl, kr):
    m = 0.5 - 0.375 * (kr - kl)
    lin = 1.5 - 0.75 * (kl + kr)
    quad = 1.5 * (kr - kl)
    cub = 3.0 * (kl + kr) - 2.0
    return m, lin, quad, cub


def _x_std(kl, kr, t):
    m, lin, quad, cub = _centered_coeffs(kl, kr)
    s = t - 0.5
    return m + s * (lin + s * (quad + s * cub))


def _denominator(kl, kr, t):
    # x'(t) / 3, positive on (0, 1) for kappas in the open unit square
    _, lin, quad, cub = _centered_coeffs(kl, kr)
    s = t - 0.5
    return (lin + s * (2.0 * quad + 3.0 * cub * s)) / 3.0


def x_of_t(params, t):
    """Abscissa of the standardized BMT curve; identity outside [0, 1]."""
    kl, kr = _unpack(params)
    t = np.asarray(t, dtype=float)
    inside = (t >= 0.0) & (t <= 1.0)
    out = np.where(inside, _x_std(kl, kr, np.clip(t, 0.0, 1.0)), t)
    out = np.where(t == 0.0, 0.0, np.where(t == 1.0, 1.0, out))
    return out if out.ndim else float(out)


def y_F_of_t(t):
    """Ordinate ``-2t^3 + 3t^2`` of the CDF curve (0 below, 1 above)."""
    t = np.asarray(t, dtype=float)
    tc = np.clip(t, 0.0, 1.0)
    out = tc * tc * (3.0 - 2.0 * tc)
    return out if out.ndim else float(out)


def y_f_of_t(params, t):
    """Density ordinate ``2t(1-t) / D(t)`` of the standardized BMT; 0 off (0, 1)."""
    kl, kr = _unpack(params)
    t = np.asarray(t, dtype=float)
    inside = (t > 0.0) & (t < 1.0)
    tc = np.where(inside, t, 0.5)
    with np.errstate(divide="ignore"):
        val = 2.0 * tc * (1.0 - tc) / _denominator(kl, kr, tc)
    out = np.where(inside, val, 0.0)
    return out if out.ndim else float(out)


def _s_of_z(kl, kr, zf: np.ndarray) -> np.ndarray:
    # centered parameter s = t - 1/2 for a flat array of abscissae in [0, 1]
    m, lin, quad, cub = _centered_coeffs(kl, kr)
    half = np.full(zf.shape, 0.5)
    s0 = cubic_root_in_interval(cub, quad, lin, m - zf, -half, half)

    def f(s):
        return m + s * (lin + s * (quad + s * cub))

    def df(s):
        return lin + s * (2.0 * quad + 3.0 * cub * s)

    s = monotone_solve(f, df, zf, -half, half, s0, tol=1e-15, max_iter=100)
    return np.where(zf <= 0.0, -0.5, np.where(zf >= 1.0, 0.5, s))


def t_of_z(kl, kr, z):
    """Curve parameter for standardized abscissae ``z`` in [0, 1] (vectorized)."""
    z = np.asarray(z, dtype=float)
    s = _s_of_z(kl, kr, np.ravel(z))
    t = np.clip(s + 0.5, 0.0, 1.0)
    return t.reshape(z.shape)


def spacings_standard(kl: float, kr: float, z_sorted, dz=None) -> np.ndarray:
    """CDF increments over ``0, z_(1), ..., z_(n), 1`` without subtracting CDF values.

    Each increment is ``dz`` times the ratio of the divided differences of
    ``y_F`` and ``x`` between neighbouring curve parameters, so tiny spacings
    keep full relative accuracy.  ``dz`` defaults to the differences of the
    augmented abscissae; callers with raw data can pass more accurate ones.
    """
    z = np.asarray(z_sorted, dtype=float).ravel()
    _, lin, quad, cub = _centered_coeffs(kl, kr)
    s = np.concatenate(([-0.5], _s_of_z(kl, kr, np.clip(z, 0.0, 1.0)), [0.5]))
    if dz is None:
        dz = np.diff(np.concatenate(([0.0], z, [1.0])))
    a, b = s[:-1], s[1:]
    q = a * a + a * b + b * b
    # slope of y_F between a and b, written from the nearer tail to avoid cancellation
    left = a + b < 0.0
    ua = np.where(left, a + 0.5, 0.5 - a)
    ub = np.where(left, b + 0.5, 0.5 - b)
    num = 3.0 * (ua + ub) - 2.0 * (ua * ua + ua * ub + ub * ub)
    den = lin + quad * (a + b) + cub * q
    return np.asarray(dz, dtype=float) * num / den


def y_F_inverse(p):
    """Closed-form root in [0, 1] of ``-2t^3 + 3t^2 = p``."""
    p = np.asarray(p, dtype=float)
    arg = np.clip(2.0 * p - 1.0, -1.0, 1.0)
    t = 0.5 - np.cos((np.arccos(arg) - 2.0 * np.pi) / 3.0)
    t = np.where(p <= 0.0, 0.0, np.where(p >= 1.0, 1.0, np.clip(t, 0.0, 1.0)))
    return t if t.ndim else float(t)


def cdf_pdf_standard(kl: float, kr: float, z):
    """CDF and density of BMT(kl, kr) on [0, 1] from a single inversion."""
    z = np.asarray(z, dtype=float)
    zc = np.clip(z, 0.0, 1.0)
    t = t_of_z(kl, kr, zc)
    cdf = t * t * (3.0 - 2.0 * t)
    cdf = np.where(z <= 0.0, 0.0, np.where(z >= 1.0, 1.0, cdf))
    pdf = np.where((z > 0.0) & (z < 1.0), y_f_of_t((kl, kr), t), 0.0)
    return cdf, pdf


# moments -----------------------------------------------------------------


def _check_order(r):
    if not isinstance(r, (int, np.integer)) or not 1 <= r <= MAX_MOMENT_ORDER:
        raise ValueError(f"moment order must be an integer in [1, {MAX_MOMENT_ORDER}], got {r}")
    return int(r)


def raw_moment(params, r: int) -> float:
    """E[X^r] of the standardized BMT by the three-part composition sum."""
    kl, kr = _unpack(params)
    r = _check_order(r)
    total = 0.0
    for k1, k2, k3 in weak_compositions(r, 3):
        num = 3.0 ** (k1 + k2) * kl**k1 * (1.0 - kr) ** k2
        den = math.factorial(k1) * math.factorial(k2) * math.factorial(k3) * math.comb(3 * r + 2, 1 + k1 + 2 * k2 + 3 * k3)
        total += num / den
    return 2.0 * math.factorial(r) / (r + 1) * total


def central_moment(params, r: int) -> float:
    """E[(X - mu)^r] of the standardized BMT by the four-part composition sum."""
    kl, kr = _unpack(params)
    r = _check_order(r)
    mu = 0.5 - 0.3 * (kr - kl)
    a = (-mu, kl - mu, 1.0 - kr - mu, 1.0 - mu)
    total = 0.0
    for k in weak_compositions(r, 4):
        k0, k1, k2, k3 = k
        num = 3.0 ** (k1 + k2) * a[0] ** k0 * a[1] ** k1 * a[2] ** k2 * a[3] ** k3
        den = math.prod(math.factorial(v) for v in k) * math.comb(3 * r + 2, 1 + k1 + 2 * k2 + 3 * k3)
        total += num / den
    return 2.0 * math.factorial(r) / (r + 1) * total


# The symmetric polynomials below are written in s = kl + kr and p = kl kr so
# that swapping the kappas gives bit-identical values.


def _variance_poly(kl, kr):
    # 36 kl^2 + 36 kr^2 + 18 kl kr - 120 kl - 120 kr + 175
    s, p = kl + kr, kl * kr
    return 36 * s**2 - 54 * p - 120 * s + 175


def std_mean(kl, kr):
    return 0.5 - 0.3 * (kr - kl)


def std_variance(kl, kr):
    return _variance_poly(kl, kr) / 2100.0


def std_skewness(kl, kr):
    # cubic factor: 13 kl^2 + 13 kr^2 + 4 kl kr - 65 kl - 65 kr + 150
    s, p = kl + kr, kl * kr
    num = 27.0 * math.sqrt(21.0) * (kr - kl) * (13 * s**2 - 22 * p - 65 * s + 150)
    return num / (11.0 * _variance_poly(kl, kr) ** 1.5)


def std_fourth_central_moment(kl, kr):
    """Fourth central moment of the standard BMT.

    Expanded in the kappas the numerator reads 6507 kl^4 + 6507 kr^4
    + 432 kl^3 kr + 432 kl kr^3 + 13122 kl^2 kr^2 - 43380 kl^3 - 43380 kr^3
    - 28620 kl^2 kr - 28620 kl kr^2 + 29700 kl kr + 135900 kl^2
    + 135900 kr^2 - 150000 kl - 150000 kr + 125125.
    """
    s, p = kl + kr, kl * kr
    poly = (
        6507 * s**4 - 25596 * s**2 * p + 25272 * p**2 - 43380 * s**3 + 101520 * s * p
        - 242100 * p + 135900 * s**2 - 150000 * s + 125125
    )
    return poly / 10010000.0


def std_kurtosis(kl, kr):
    return std_fourth_central_moment(kl, kr) / std_variance(kl, kr) ** 2


def std_median(kl, kr):
    return 0.5 - 0.375 * (kr - kl)


def std_iqr(kl, kr):
    return 0.5 - 3.0 * (0.25 - _COS_4PI_9) * (kr + kl)


def mode_parameter(kl, kr):
    """Curve parameter of the mode.

    ``(sqrt(kl kr) - kl) / (kr - kl)`` reduces to
    ``sqrt(kl) / (sqrt(kl) + sqrt(kr))``, which avoids the 0/0 near the
    symmetric case.
    """
    if abs(kl - kr) < 1e-9:
        return 0.5
    sl, sr = math.sqrt(kl), math.sqrt(kr)
    return sl / (sl + sr)


def std_mode(kl, kr):
    return float(_x_std(kl, kr, mode_parameter(kl, kr)))


# distribution object -------------------------------------------------------


@dataclass(frozen=True)
class BmtDistribution:
    """BMT(c, d, kappa_l, kappa_r).

    Parameters
    ----------
    kappa_l, kappa_r : float
        Left and right tail curvature, in ``[1e-9, 1 - 1e-9]``.
    c, d : float
        Support endpoints, ``c < d``; defaults to [0, 1].
    """

    kappa_l: float
    kappa_r: float
    c: float = 0.0
    d: float = 1.0

    def __post_init__(self):
        params = BmtParams(self.kappa_l, self.kappa_r)
        domain = BmtDomain(self.c, self.d)
        object.__setattr__(self, "kappa_l", params.kappa_l)
        object.__setattr__(self, "kappa_r", params.kappa_r)
        object.__setattr__(self, "c", domain.c)
        object.__setattr__(self, "d", domain.d)

    @classmethod
    def from_params(cls, params: BmtParams, domain: BmtDomain | None = None) -> BmtDistribution:
        domain = domain or BmtDomain()
        return cls(params.kappa_l, params.kappa_r, domain.c, domain.d)

    @property
    def params(self) -> BmtParams:
        return BmtParams(self.kappa_l, self.kappa_r)

    @property
    def domain(self) -> BmtDomain:
        return BmtDomain(self.c, self.d)

    @property
    def support(self) -> tuple[float, float]:
        return self.c, self.d

    @property
    def _width(self) -> float:
        return self.d - self.c

    def control_polygon(self) -> ControlPolygon:
        w, c = self._width, self.c
        return ControlPolygon(
            [(c, 0.0), (w * self.kappa_l + c, 0.0), (w * (1.0 - self.kappa_r) + c, 1.0), (self.d, 1.0)]
        )

    def to_bezier(self) -> BezierDistribution:
        return BezierDistribution(self.control_polygon())

    # evaluation ----------------------------------------------------------

    def _z(self, x):
        return (np.asarray(x, dtype=float) - self.c) / self._width

    def t_of_x(self, x):
        z = self._z(x)
        if np.any((z < 0.0) | (z > 1.0)) or np.any(np.isnan(z)):
            raise ValueError(f"x must lie in [{self.c}, {self.d}]")
        t = t_of_z(self.kappa_l, self.kappa_r, z)
        return t if t.ndim else float(t)

    def cdf(self, x):
        out, _ = cdf_pdf_standard(self.kappa_l, self.kappa_r, self._z(x))
        return out if out.ndim else float(out)

    def pdf(self, x):
        _, out = cdf_pdf_standard(self.kappa_l, self.kappa_r, self._z(x))
        out = out / self._width
        return out if out.ndim else float(out)

    def logpdf(self, x):
        with np.errstate(divide="ignore"):
            return np.log(self.pdf(x))

    def quantile(self, p):
        p = np.asarray(p, dtype=float)
        if np.any((p < 0.0) | (p > 1.0)) or np.any(np.isnan(p)):
            raise ValueError("probabilities must lie in [0, 1]")
        t = np.asarray(y_F_inverse(p))
        z = np.asarray(x_of_t((self.kappa_l, self.kappa_r), t))
        out = np.where(p <= 0.0, self.c, np.where(p >= 1.0, self.d, self.c + self._width * z))
        return out if out.ndim else float(out)

    ppf = quantile

    # closed-form summaries -------------------------------------------------

    def median(self) -> float:
        return self.c + self._width * std_median(self.kappa_l, self.kappa_r)

    def iqr(self) -> float:
        return self._width * std_iqr(self.kappa_l, self.kappa_r)

    def mode(self) -> float:
        return self.c + self._width * std_mode(self.kappa_l, self.kappa_r)

    def mean(self) -> float:
        return self.c + self._width * std_mean(self.kappa_l, self.kappa_r)

    def var(self) -> float:
        return self._width**2 * std_variance(self.kappa_l, self.kappa_r)

    def std(self) -> float:
        return math.sqrt(self.var())

    def skewness(self) -> float:
        return std_skewness(self.kappa_l, self.kappa_r)

    def kurtosis(self) -> float:
        return std_kurtosis(self.kappa_l, self.kappa_r)

    def raw_moment(self, r: int) -> float:
        """E[Y^r] on [c, d], expanded binomially from the standardized raw moments."""
        r = _check_order(r)
        w, c = self._width, self.c
        total = c**r
        for j in range(1, r + 1):
            total += math.comb(r, j) * w**j * c ** (r - j) * raw_moment(self, j)
        return total

    def central_moment(self, r: int) -> float:
        return self._width**r * central_moment(self, r)

    # sampling --------------------------------------------------------------

    def sample(self, size: int, seed=None) -> np.ndarray:
        """``size`` inversion draws; ``seed`` is an int, SeedSequence or Generator."""
        if size < 0:
            raise ValueError("size must be nonnegative")
        u = _as_rng(seed).random(size)
        return np.atleast_1d(self.quantile(u))

    rvs = sample
