"""Small numerical helpers shared across modules."""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Callable

import numpy as np


@lru_cache(maxsize=None)
def weak_compositions(total: int, parts: int) -> tuple[tuple[int, ...], ...]:
    """All ordered ``parts``-tuples of nonnegative integers summing to ``total``.

    Stars and bars; there are ``C(total + parts - 1, parts - 1)`` of them, so
    the count grows quickly with both arguments.
    """
    if parts < 1 or total < 0:
        raise ValueError("need parts >= 1 and total >= 0")
    out = []
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        comp = []
        for b in bars:
            comp.append(b - prev - 1)
            prev = b
        comp.append(total + parts - 2 - prev)
        out.append(tuple(comp))
    return tuple(out)


@lru_cache(maxsize=8)
def gauss_legendre_unit(nodes: int = 64) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    return 0.5 * (x + 1.0), 0.5 * w


def monotone_solve(
    func: Callable[[np.ndarray], np.ndarray],
    dfunc: Callable[[np.ndarray], np.ndarray],
    target: np.ndarray,
    lo: np.ndarray,
    hi: np.ndarray,
    start: np.ndarray | None = None,
    tol: float = 1e-13,
    max_iter: int = 200,
) -> np.ndarray:
    """Solve ``func(t) = target`` elementwise for nondecreasing ``func``.

    Safeguarded Newton: a Newton step is taken when it stays strictly inside
    the current bracket and the derivative is positive, otherwise the bracket
    is bisected.  All inputs broadcast to a common shape.
    """
    target, lo, hi = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in (target, lo, hi)))
    shape = target.shape
    target = target.ravel()
    lo = lo.ravel().copy()
    hi = hi.ravel().copy()
    if start is None:
        t = 0.5 * (lo + hi)
    else:
        t = np.clip(np.broadcast_to(np.asarray(start, dtype=float), shape).ravel(), lo, hi)
    active = np.ones(t.shape, dtype=bool)
    for _ in range(max_iter):
        if not active.any():
            break
        idx = np.nonzero(active)
        ta = t[idx]
        f = func(ta) - target[idx]
        lo_a = np.where(f < 0.0, ta, lo[idx])
        hi_a = np.where(f > 0.0, ta, hi[idx])
        d = dfunc(ta)
        with np.errstate(divide="ignore", invalid="ignore"):
            newton = ta - f / d
        use_newton = (d > 0.0) & (newton > lo_a) & (newton < hi_a)
        t_new = np.where(use_newton, newton, 0.5 * (lo_a + hi_a))
        t_new = np.where(f == 0.0, ta, t_new)
        done = (f == 0.0) | (np.abs(t_new - ta) <= tol) | (hi_a - lo_a <= tol)
        lo[idx], hi[idx], t[idx] = lo_a, hi_a, t_new
        active[idx] = ~done
    return t.reshape(shape)
