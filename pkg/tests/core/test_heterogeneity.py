import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from l1_centrality.core.heterogeneity import gini, gini_from_curve, group_gini, lorenz
from l1_centrality.exceptions import GraphInputError

samples = st.lists(
    st.floats(min_value=0.0, max_value=1e3, allow_nan=False), min_size=1, max_size=40
).filter(lambda xs: sum(xs) > 1e-6)


def pairwise_gini(values):
    x = np.asarray(values, dtype=float)
    total = sum(abs(a - b) for a in x for b in x)
    return total / (2 * x.size**2 * x.mean())


def test_equal_values_have_zero_gini():
    assert gini([2.0, 2.0, 2.0, 2.0]) == pytest.approx(0.0, abs=1e-15)
    assert gini([7.0]) == 0.0


def test_two_value_examples():
    assert gini([1.0, 3.0]) == pytest.approx(0.25)
    assert gini([0.0, 5.0]) == pytest.approx(0.5)
    curve = lorenz([3.0, 1.0])
    assert curve.evaluate(0.5) == pytest.approx(0.25)
    assert curve.knots == ((0.0, 0.0), (0.5, 0.25), (1.0, 1.0))


def test_curve_endpoints_and_interpolation():
    curve = lorenz([1.0, 1.0, 2.0, 4.0])
    assert curve.evaluate(0.0) == 0.0
    assert curve.evaluate(1.0) == 1.0
    assert curve.evaluate(0.125) == pytest.approx(0.0625)
    with pytest.raises(GraphInputError):
        curve.evaluate(1.5)


@settings(max_examples=200, deadline=None)
@given(samples)
def test_three_gini_routes_agree(values):
    expected = pairwise_gini(values)
    assert gini(values) == pytest.approx(expected, abs=1e-9)
    assert gini_from_curve(lorenz(values)) == pytest.approx(expected, abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(samples, st.floats(min_value=1e-3, max_value=1e3), st.randoms())
def test_scale_and_order_free(values, factor, random):
    shuffled = list(values)
    random.shuffle(shuffled)
    base = gini(values)
    assert gini([factor * v for v in shuffled]) == pytest.approx(base, abs=1e-9)
    assert 0.0 <= base <= 1.0 - 1.0 / len(values) + 1e-12


@settings(max_examples=100, deadline=None)
@given(samples)
def test_lorenz_is_convex_and_below_diagonal(values):
    curve = lorenz(values)
    assert np.all(np.diff(curve.lp) >= -1e-15)
    assert np.all(curve.lp <= curve.p + 1e-12)
    slopes = np.diff(curve.lp) / np.diff(curve.p)
    assert np.all(np.diff(slopes) >= -1e-9)


@pytest.mark.parametrize("values", [[], [0.0, 0.0], [1.0, -1.0], [1.0, np.inf]])
def test_invalid_values(values):
    with pytest.raises(GraphInputError):
        gini(values)


def test_group_gini():
    result = group_gini([1.0, 3.0, 2.0, 2.0], ["a", "a", "b", "b"])
    assert list(result) == ["a", "b"]
    assert result["a"] == (2, pytest.approx(0.25))
    assert result["b"][0] == 2
    assert result["b"][1] == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(GraphInputError):
        group_gini([1.0, 2.0], ["a"])
