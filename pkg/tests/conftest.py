import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_monotone_polygon(rng, degree):
    """Polygon with nondecreasing coordinates and ordinates spanning [0, 1]."""
    xs = np.concatenate(([0.0], np.sort(rng.uniform(0, 1, degree - 1)), [1.0]))
    ys = np.concatenate(([0.0], np.sort(rng.uniform(0, 1, degree - 1)), [1.0]))
    return np.column_stack([xs, ys])


# one summary line per acceptance criterion ------------------------------------

_CRITERIA: list[tuple[str, str, str]] = []


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    props = dict(report.user_properties)
    if "criterion" in props:
        _CRITERIA.append((props["criterion"], "PASS" if report.passed else "FAIL", props.get("detail", "")))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for crit, outcome, detail in sorted(_CRITERIA, key=lambda r: (int(r[0].rstrip("ab")), r[0])):
        terminalreporter.write_line(f"criterion {crit}: {outcome}  {detail}".rstrip())
