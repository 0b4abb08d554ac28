import csv
import io
import json

import numpy as np
import pytest

from bmtdist.estimation import spacings_upper_bound
from bmtdist.simulation import RecoveryConfig, replicate_seed, run_recovery

SMALL = RecoveryConfig(replicates=6, sizes=(30, 300), thetas=((0.5, 0.5), (0.9, 0.1)), base_seed=5)


@pytest.fixture(scope="module")
def report():
    return run_recovery(SMALL)


def test_config_validation():
    with pytest.raises(ValueError):
        RecoveryConfig(replicates=0)
    with pytest.raises(ValueError):
        RecoveryConfig(sizes=(4,))
    with pytest.raises(ValueError):
        RecoveryConfig(thetas=((0.0, 0.5),))
    with pytest.raises(ValueError):
        RecoveryConfig(methods=("mom",))


def test_seeds_are_distinct_per_cell_and_replicate():
    a = np.random.default_rng(replicate_seed(1, 0, 0)).random()
    b = np.random.default_rng(replicate_seed(1, 0, 1)).random()
    c = np.random.default_rng(replicate_seed(1, 1, 0)).random()
    assert len({a, b, c}) == 3


def test_report_shape_and_nonnegative(report):
    assert len(report.cells) == 2 * 2 * 2
    for c in report.cells:
        assert c.estimates.shape == (6, 2)
        assert min(c.mean + c.median + c.sd) >= 0
        assert c.failures == 0


def test_determinism(report):
    again = run_recovery(SMALL)
    assert again.to_csv() == report.to_csv()


def test_parallel_matches_serial(report):
    cfg = RecoveryConfig(replicates=6, sizes=(30, 300), thetas=((0.5, 0.5), (0.9, 0.1)), base_seed=5, n_jobs=2)
    assert run_recovery(cfg).to_csv() == report.to_csv()


def test_methods_share_samples(report):
    # MLE and MPSE estimates of one replicate come from the same data, so they are close at n = 300
    mle = report.cell(300, (0.5, 0.5), "mle").estimates
    mpse = report.cell(300, (0.5, 0.5), "mpse").estimates
    assert np.max(np.abs(mle - mpse)) < 0.05


def test_spacings_bound_holds(report):
    for c in report.cells:
        assert np.all(c.sum_log_spacings <= spacings_upper_bound(c.n))


def test_csv_layout(report):
    rows = list(csv.reader(io.StringIO(report.to_csv())))
    assert rows[0] == ["n", "method", "statistic", "theta1_kappa_l", "theta1_kappa_r", "theta2_kappa_l", "theta2_kappa_r"]
    assert len(rows) == 1 + 2 * 2 * 4
    assert [r[2] for r in rows[1:5]] == ["mean", "median", "sd", "failures"]
    cell = report.cell(30, (0.9, 0.1), "mpse")
    row = next(r for r in rows if r[:3] == ["30", "mpse", "mean"])
    assert float(row[5]) == cell.mean[0]


def test_json(report):
    doc = json.loads(report.to_json())
    assert doc["config"]["replicates"] == 6 and len(doc["cells"]) == 8


def test_accuracy_improves_with_n():
    rep = run_recovery(RecoveryConfig(replicates=40, sizes=(30, 300, 3000), thetas=((0.2, 0.4),), base_seed=1))
    for method in ("mle", "mpse"):
        m = [rep.cell(n, (0.2, 0.4), method).mean for n in (30, 300, 3000)]
        for k in range(2):
            assert m[0][k] > m[1][k] > m[2][k]
            assert 2.2 <= m[1][k] / m[2][k] <= 4.5
    for k in range(2):
        a = rep.cell(3000, (0.2, 0.4), "mle").mean[k]
        b = rep.cell(3000, (0.2, 0.4), "mpse").mean[k]
        assert abs(a - b) / a < 0.15
