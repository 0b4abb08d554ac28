"""Sample summaries and population measure surfaces over the shape square."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass

import numpy as np

from . import bmt

MEASURES = ("mean", "median", "mode", "variance", "sd", "iqr", "skewness", "kurtosis")


@dataclass(frozen=True)
class SampleSummary:
    n: int
    min: float
    max: float
    median: float
    mean: float
    sd: float
    skewness: float
    kurtosis: float

    def to_dict(self) -> dict:
        return asdict(self)


def summarize(data) -> SampleSummary:
    """Table-style summary of a sample.

    ``sd`` uses the ``n - 1`` divisor; skewness and kurtosis are the plain
    moment ratios ``m3 / m2**1.5`` and ``m4 / m2**2`` with ``n``-divisor
    central moments, i.e. no small-sample corrections.
    """
    x = np.asarray(data, dtype=float).ravel()
    if x.size < 2:
        raise ValueError("need at least two observations")
    if not np.all(np.isfinite(x)):
        raise ValueError("data must be finite")
    mean = float(np.mean(x))
    dev = x - mean
    m2 = float(np.mean(dev**2))
    m3 = float(np.mean(dev**3))
    m4 = float(np.mean(dev**4))
    if m2 > 0.0:
        skew, kurt = m3 / m2**1.5, m4 / m2**2
    else:
        skew = kurt = float("nan")
    return SampleSummary(
        n=int(x.size),
        min=float(x.min()),
        max=float(x.max()),
        median=float(np.median(x)),
        mean=mean,
        sd=float(np.std(x, ddof=1)),
        skewness=skew,
        kurtosis=kurt,
    )


def kappa_axis(resolution: int) -> np.ndarray:
    """Cell midpoints ``(j + 0.5) / resolution`` of a uniform grid on (0, 1)."""
    if int(resolution) != resolution or resolution < 2:
        raise ValueError("resolution must be an integer >= 2")
    return (np.arange(int(resolution)) + 0.5) / int(resolution)


def _measures(kl: np.ndarray, kr: np.ndarray) -> dict[str, np.ndarray]:
    var = bmt.std_variance(kl, kr)
    sl, sr = np.sqrt(kl), np.sqrt(kr)
    t_mode = np.where(np.abs(kl - kr) < 1e-9, 0.5, sl / (sl + sr))
    return {
        "mean": bmt.std_mean(kl, kr),
        "median": bmt.std_median(kl, kr),
        "mode": bmt._x_std(kl, kr, t_mode),
        "variance": var,
        "sd": np.sqrt(var),
        "iqr": bmt.std_iqr(kl, kr),
        "skewness": bmt.std_skewness(kl, kr),
        "kurtosis": bmt.std_kurtosis(kl, kr),
    }


@dataclass(frozen=True)
class MeasureGrid:
    """Closed-form measures of the standard BMT on a midpoint grid.

    ``values[name][i, j]`` belongs to ``kappa_l = axis[i]``,
    ``kappa_r = axis[j]``.
    """

    resolution: int
    axis: np.ndarray
    values: dict[str, np.ndarray]

    def rows(self):
        """Long-format ``(kappa_l, kappa_r, measure, value)`` tuples."""
        for i, kl in enumerate(self.axis):
            for j, kr in enumerate(self.axis):
                for name in MEASURES:
                    yield float(kl), float(kr), name, float(self.values[name][i, j])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["kappa_l", "kappa_r", "measure", "value"])
        for kl, kr, name, v in self.rows():
            w.writerow([repr(kl), repr(kr), name, f"{v:.17g}"])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({
            "resolution": self.resolution,
            "kappa": self.axis.tolist(),
            "measures": {k: v.tolist() for k, v in self.values.items()},
        })


def measure_grid(resolution: int) -> MeasureGrid:
    axis = kappa_axis(resolution)
    kl, kr = np.meshgrid(axis, axis, indexing="ij")
    return MeasureGrid(int(resolution), axis, _measures(kl, kr))


def skew2_kurt_region(resolution: int) -> np.ndarray:
    """Rows ``(kappa_l, kappa_r, skewness**2, kurtosis)`` over the midpoint grid."""
    axis = kappa_axis(resolution)
    kl, kr = np.meshgrid(axis, axis, indexing="ij")
    skew = bmt.std_skewness(kl, kr)
    kurt = bmt.std_kurtosis(kl, kr)
    return np.column_stack([kl.ravel(), kr.ravel(), (skew**2).ravel(), kurt.ravel()])
