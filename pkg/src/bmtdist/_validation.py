"""Input checks for the estimator wrappers."""

from __future__ import annotations

import numpy as np
from sklearn.utils import check_array


def check_univariate(X, name: str = "X") -> np.ndarray:
    """Return ``X`` as a flat float array.

    Accepts a 1-d array or a single-column 2-d array; rejects NaN/inf,
    empty input and several columns.
    """
    arr = np.asarray(X)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    arr = check_array(arr, dtype=np.float64, ensure_2d=True, ensure_min_samples=1, input_name=name)
    if arr.shape[1] != 1:
        raise ValueError(f"{name} must have exactly one column, got {arr.shape[1]}")
    return arr[:, 0]


def check_method(method: str) -> str:
    if method not in ("mle", "mpse"):
        raise ValueError(f"method must be 'mle' or 'mpse', got {method!r}")
    return method


def check_n_params(n_params: int) -> int:
    if n_params not in (2, 4):
        raise ValueError(f"n_params must be 2 or 4, got {n_params!r}")
    return int(n_params)


def check_domain(domain) -> tuple[float, float]:
    c, d = (float(v) for v in domain)
    if not (np.isfinite(c) and np.isfinite(d) and c < d):
        raise ValueError(f"domain must be finite with c < d, got {domain!r}")
    return c, d
