import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bmtdist.bezier_core import (
    ControlPoint,
    ControlPolygon,
    bernstein,
    bernstein_basis,
    bezier_derivative,
    bezier_eval,
    binomial,
    check_cdf_conditions,
)

BMT_HALF = ControlPolygon([(0, 0), (0.5, 0), (0.5, 1), (1, 1)])


def test_bernstein_endpoint_values():
    assert bernstein(0, 3, 0.0) == 1.0
    assert bernstein(3, 3, 1.0) == 1.0


def test_bernstein_interior_value_matches_naive_formula():
    assert bernstein(1, 3, 0.5) == pytest.approx(0.375, abs=1e-15)
    assert bernstein(1, 3, 0.5) == pytest.approx(math.comb(3, 1) * 0.5 * 0.25, abs=1e-15)


@pytest.mark.parametrize("i,n", [(-1, 3), (4, 3), (0, -1)])
def test_bernstein_rejects_bad_index(i, n):
    with pytest.raises(ValueError):
        bernstein(i, n, 0.3)


def test_binomial_exact_to_degree_30():
    for n in range(31):
        for k in range(n + 1):
            assert binomial(n, k) == math.comb(n, k)


def test_partition_of_unity(rng):
    t = rng.random(1000)
    for n in range(11):
        assert np.max(np.abs(bernstein_basis(n, t).sum(axis=-1) - 1.0)) < 1e-12


def test_eval_endpoints_exact(rng):
    for _ in range(50):
        poly = ControlPolygon(rng.normal(size=(rng.integers(2, 9), 2)))
        assert bezier_eval(poly, 0.0) == poly[0]
        assert bezier_eval(poly, 1.0) == poly[-1]


def test_eval_bmt_polygon_centre():
    p = bezier_eval(BMT_HALF, 0.5)
    assert isinstance(p, ControlPoint)
    assert p.x == pytest.approx(0.5, abs=1e-15) and p.y == pytest.approx(0.5, abs=1e-15)


def test_eval_rejects_outside_unit_interval():
    with pytest.raises(ValueError):
        bezier_eval(BMT_HALF, 1.2)


def test_eval_vectorized_shape():
    out = bezier_eval(BMT_HALF, np.linspace(0, 1, 7))
    assert out.shape == (7, 2)


def test_reversed_polygon_symmetry(rng):
    for _ in range(50):
        poly = ControlPolygon(rng.normal(size=(rng.integers(2, 9), 2)))
        t = rng.random(20)
        assert np.max(np.abs(bezier_eval(poly.reversed(), 1 - t) - bezier_eval(poly, t))) < 1e-12


def test_derivative_of_line_is_constant():
    line = ControlPolygon([(0, 0), (1, 1)])
    for t in (0.0, 0.3, 1.0):
        assert tuple(bezier_derivative(line, 1, t)) == pytest.approx((1.0, 1.0))


def test_derivative_bmt_polygon_at_zero():
    d = bezier_derivative(BMT_HALF, 1, 0.0)
    assert d.x == pytest.approx(1.5) and d.y == pytest.approx(0.0)
    h = 1e-6
    fd = (np.array(bezier_eval(BMT_HALF, h)) - np.array(bezier_eval(BMT_HALF, 0.0))) / h
    assert fd == pytest.approx(np.array(d), abs=1e-5)


def test_derivative_order_out_of_range():
    with pytest.raises(ValueError):
        bezier_derivative(BMT_HALF, 4, 0.5)
    with pytest.raises(ValueError):
        bezier_derivative(BMT_HALF, 0, 0.5)


@given(
    pts=st.lists(st.tuples(st.floats(-5, 5), st.floats(-5, 5)), min_size=2, max_size=9),
    t=st.floats(0.01, 0.99),
)
def test_first_derivative_matches_central_difference(pts, t):
    poly = ControlPolygon(pts)
    h = 1e-6
    fd = (np.array(bezier_eval(poly, t + h)) - np.array(bezier_eval(poly, t - h))) / (2 * h)
    exact = np.array(bezier_derivative(poly, 1, t))
    assert np.all(np.abs(fd - exact) <= 1e-6 * np.maximum(1.0, np.abs(exact)))


def test_second_derivative_matches_difference_of_first(rng):
    poly = ControlPolygon(rng.normal(size=(6, 2)))
    h = 1e-6
    for t in rng.uniform(0.05, 0.95, 10):
        fd = (np.array(bezier_derivative(poly, 1, t + h)) - np.array(bezier_derivative(poly, 1, t - h))) / (2 * h)
        assert fd == pytest.approx(np.array(bezier_derivative(poly, 2, t)), rel=1e-6, abs=1e-6)


def test_polygon_validation():
    with pytest.raises(ValueError):
        ControlPolygon([(0, 0)])
    with pytest.raises(ValueError):
        ControlPolygon([(0, 0), (np.nan, 1)])
    with pytest.raises(ValueError):
        ControlPolygon([(0, 0, 0), (1, 1, 1)])
    with pytest.raises(ValueError):
        ControlPolygon(np.zeros((32, 2)))


def test_polygon_is_immutable():
    with pytest.raises(ValueError):
        BMT_HALF.points[0, 0] = 3.0


# CDF candidacy ---------------------------------------------------------------


def test_bmt_polygons_are_valid(rng):
    for kl, kr in rng.uniform(1e-6, 1 - 1e-6, size=(200, 2)):
        v = check_cdf_conditions(ControlPolygon([(0, 0), (kl, 0), (1 - kr, 1), (1, 1)]))
        assert v.valid
        assert v.method == ("differences" if kl + kr <= 1 else "grid")


def test_alternating_x_differences_use_grid_fallback():
    poly = ControlPolygon([(0, 0), (1, 0), (0, 1), (1, 1)])
    v = check_cdf_conditions(poly)
    assert v.method == "grid"
    # the x form is (1 - 2t)^2, so the grid oracle minimum is 0
    t = np.linspace(0, 1, 100001)
    oracle = np.min((1 - t) ** 2 - 2 * t * (1 - t) + t**2)
    assert v.min_dx == pytest.approx(oracle, abs=1e-9)
    assert v.valid


def test_decreasing_ordinate_is_invalid():
    v = check_cdf_conditions(ControlPolygon([(0, 0), (0.5, 0.6), (1, 0.4)]))
    assert not v.condition_ii_y
    assert not v.valid


def test_condition_i_bounds():
    assert not check_cdf_conditions(ControlPolygon([(0, -0.1), (1, 1)])).condition_i
    assert not check_cdf_conditions(ControlPolygon([(0, 0), (1, 1.2)])).condition_i
    assert check_cdf_conditions(ControlPolygon([(0, 0.2), (1, 0.8)])).valid


def test_right_to_left_polygon_is_reversed():
    v = check_cdf_conditions(ControlPolygon([(1, 1), (0.5, 1), (0.5, 0), (0, 0)]))
    assert v.reversed and v.valid
    assert v.polygon[0] == ControlPoint(0.0, 0.0)


def test_degenerate_vertical_polygon_rejected():
    v = check_cdf_conditions(ControlPolygon([(0.3, 0), (0.3, 1)]))
    assert v.degenerate and not v.valid


def test_negative_x_form_is_invalid():
    # x differences (1, -3, 1): the form dips below zero around t = 1/2
    v = check_cdf_conditions(ControlPolygon([(0, 0), (1, 0.3), (-2, 0.6), (-1, 1)]))
    assert v.method == "grid" and not v.condition_ii_x
