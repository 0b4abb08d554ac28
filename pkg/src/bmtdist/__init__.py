"""BMT and general Bezier-curve distributions on bounded intervals."""

from .bezier_core import (
    CdfValidity,
    ControlPoint,
    ControlPolygon,
    bernstein,
    bezier_derivative,
    bezier_eval,
    check_cdf_conditions,
)
from .bezier_dist import BezierDistribution
from .bmt import BmtDistribution, BmtDomain, BmtParams
from .competitors import BetaDistribution, KumaraswamyDistribution
from .descriptives import MeasureGrid, SampleSummary, measure_grid, skew2_kurt_region, summarize
from .estimation import (
    FitResult,
    ObjectiveSpec,
    fit,
    fit_four_parameter,
    fit_model,
    information_criteria,
    log_likelihood,
    make_spec,
    sum_log_spacings,
)
from .estimators import BetaEstimator, BmtEstimator, KumaraswamyEstimator
from .simulation import RecoveryConfig, RecoveryReport, run_recovery

__version__ = "0.1.0"

__all__ = [
    "BetaDistribution",
    "BetaEstimator",
    "BezierDistribution",
    "BmtDistribution",
    "BmtDomain",
    "BmtEstimator",
    "BmtParams",
    "CdfValidity",
    "ControlPoint",
    "ControlPolygon",
    "FitResult",
    "KumaraswamyDistribution",
    "KumaraswamyEstimator",
    "MeasureGrid",
    "ObjectiveSpec",
    "RecoveryConfig",
    "RecoveryReport",
    "SampleSummary",
    "bernstein",
    "bezier_derivative",
    "bezier_eval",
    "check_cdf_conditions",
    "fit",
    "fit_four_parameter",
    "fit_model",
    "information_criteria",
    "log_likelihood",
    "make_spec",
    "measure_grid",
    "run_recovery",
    "skew2_kurt_region",
    "sum_log_spacings",
    "summarize",
]
