"""Vectorized real roots of cubics restricted to an interval."""

from __future__ import annotations

import numpy as np

# below this leading coefficient the cubic is treated as a quadratic
LEADING_TOL = 1e-7


def _pick(candidates: list[np.ndarray], lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    # root closest to [lo, hi]; nan candidates are ignored
    best = np.full(lo.shape, np.nan)
    best_dist = np.full(lo.shape, np.inf)
    for r in candidates:
        dist = np.where(np.isnan(r), np.inf, np.maximum(lo - r, 0.0) + np.maximum(r - hi, 0.0))
        better = dist < best_dist
        best = np.where(better, r, best)
        best_dist = np.where(better, dist, best_dist)
    return np.clip(np.where(np.isnan(best), 0.5 * (lo + hi), best), lo, hi)


def _quadratic_roots(a, b, c):
    # a x^2 + b x + c with the cancellation-free pairing of roots
    with np.errstate(divide="ignore", invalid="ignore"):
        disc = b * b - 4.0 * a * c
        sq = np.sqrt(np.maximum(disc, 0.0))
        q = -0.5 * (b + np.where(b >= 0.0, sq, -sq))
        r1 = np.where(a != 0.0, q / a, np.nan)
        r2 = np.where(q != 0.0, c / q, np.nan)
        linear = np.where(b != 0.0, -c / b, np.nan)
    quad = np.abs(a) > 0.0
    return [np.where(quad, r1, linear), np.where(quad, r2, np.nan)]


def cubic_root_in_interval(a, b, c, d, lo, hi) -> np.ndarray:
    """A real root of ``a x^3 + b x^2 + c x + d`` lying in ``[lo, hi]``.

    Closed form (Cardano when one real root, trigonometric when three),
    falling back to the quadratic formula when ``|a| < 1e-7``.  When several
    roots qualify, the first candidate found is kept; callers that need the
    unique root of a monotone cubic should polish the result with a
    bracketed iteration.
    """
    a, b, c, d, lo, hi = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (a, b, c, d, lo, hi)))
    small = np.abs(a) < LEADING_TOL
    quad = _quadratic_roots(b, c, d)

    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        aa = np.where(small, 1.0, a)
        a2, a1, a0 = b / aa, c / aa, d / aa
        shift = a2 / 3.0
        p = a1 - a2 * shift
        q = 2.0 * shift**3 - shift * a1 + a0
        disc = (0.5 * q) ** 2 + (p / 3.0) ** 3

        # one real root
        sq = np.sqrt(np.maximum(disc, 0.0))
        u = np.cbrt(-0.5 * q - np.where(q >= 0.0, sq, -sq))
        one = np.where(u != 0.0, u - p / (3.0 * u), 0.0) - shift

        # three real roots
        m = 2.0 * np.sqrt(np.maximum(-p / 3.0, 0.0))
        arg = np.where(m > 0.0, 3.0 * q / (p * m), 0.0)
        theta = np.arccos(np.clip(arg, -1.0, 1.0)) / 3.0
        three = [m * np.cos(theta - 2.0 * np.pi * k / 3.0) - shift for k in range(3)]

    cubic_candidates = [np.where(disc > 0.0, one, r) for r in three]
    candidates = [np.where(small, quad[0], cubic_candidates[0]),
                  np.where(small, quad[1], cubic_candidates[1]),
                  np.where(small, np.nan, cubic_candidates[2])]
    return _pick(candidates, lo, hi)
