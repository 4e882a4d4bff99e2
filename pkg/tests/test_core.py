import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stardisc.core import (
    BoxDifference,
    Point,
    PointSet,
    box_difference_measure,
    count_closed,
    count_in,
    count_strict,
    default_budget,
    volume,
)
from stardisc.errors import InputError

unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


def test_volume_examples():
    assert volume((0.5, 0.5)) == 0.25
    for s in (1, 3, 17):
        assert volume((1.0,) * s) == 1.0
    assert volume((0.2, 0.9, 0.5)) == pytest.approx(0.09, abs=1e-15)


def test_point_validation():
    with pytest.raises(InputError):
        Point((0.5, 1.5))
    with pytest.raises(InputError):
        Point(())
    with pytest.raises(InputError):
        PointSet([[0.1, -0.1]])
    with pytest.raises(InputError):
        PointSet(np.empty((0, 2)))


def test_pointset_is_read_only():
    P = PointSet([[0.1, 0.2]])
    with pytest.raises(ValueError):
        P.points[0, 0] = 0.5


def test_counts():
    P = PointSet([(0.25, 0.25), (0.75, 0.75)])
    assert count_closed(P, (0.5, 0.5)) == 1
    assert count_closed(P, (1.0, 1.0)) == 2
    assert count_closed(PointSet([(0.5,)]), (0.5,)) == 1
    assert count_strict(PointSet([(0.5,)]), (0.5,)) == 0
    assert count_strict(PointSet([(0.25, 0.25)]), (0.5, 0.5)) == 1
    assert count_strict(P, (0.0, 0.9)) == 0


def test_count_dimension_mismatch():
    P = PointSet([(0.25, 0.25)])
    with pytest.raises(InputError):
        count_closed(P, (0.5,))
    with pytest.raises(InputError):
        count_strict(P, (0.5, 0.5, 0.5))


def test_box_difference_measure_cases():
    zero = Point.zero(2)
    assert box_difference_measure(BoxDifference(zero, Point((0.5, 0.5)))) == 0.25
    assert box_difference_measure(BoxDifference(zero, zero)) == 0.0
    d = BoxDifference(Point((0.5, 0.5)), Point((0.75, 1.0)))
    assert box_difference_measure(d) == pytest.approx(0.5, abs=1e-15)
    with pytest.raises(InputError):
        BoxDifference(Point((0.6, 0.5)), Point((0.5, 1.0)))


def test_budget_env(monkeypatch):
    monkeypatch.delenv("STARDISC_BUDGET", raising=False)
    assert default_budget() == 10**9
    monkeypatch.setenv("STARDISC_BUDGET", "1234")
    assert default_budget() == 1234
    monkeypatch.setenv("STARDISC_BUDGET", "lots")
    with pytest.raises(InputError):
        default_budget()


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4).flatmap(lambda s: st.tuples(
    st.lists(st.lists(unit, min_size=s, max_size=s), min_size=1, max_size=20),
    st.lists(unit, min_size=s, max_size=s))))
def test_strict_never_exceeds_closed(data):
    pts, y = data
    P = PointSet(pts)
    assert count_strict(P, y) <= count_closed(P, y)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6).flatmap(lambda s: st.tuples(
    st.lists(unit, min_size=s, max_size=s), st.lists(unit, min_size=s, max_size=s))))
def test_volume_monotone(pair):
    a, b = pair
    lo = [min(u, v) for u, v in zip(a, b)]
    hi = [max(u, v) for u, v in zip(a, b)]
    assert volume(lo) <= volume(hi)


@pytest.mark.parametrize("s", [1, 2, 5, 10])
def test_volume_gap_below_coordinate_sum(rng, s):
    a = rng.random((10_000, s))
    b = rng.random((10_000, s))
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    gap = np.array([volume(h) - volume(l) for l, h in zip(lo, hi)])
    assert np.all(gap <= (hi - lo).sum(axis=1) + 1e-15)


@pytest.mark.parametrize("s", [1, 2, 3])
def test_box_difference_membership(rng, s):
    P = PointSet(rng.random((500, s)))
    for _ in range(50):
        a, b = rng.random(s), rng.random(s)
        lo, hi = Point(tuple(np.minimum(a, b))), Point(tuple(np.maximum(a, b)))
        d = BoxDifference(lo, hi)
        expected = sum(
            1 for z in P.points if np.all(z <= hi.as_array()) and not np.all(z <= lo.as_array())
        )
        assert count_in(P, d) == expected
        assert abs(d.measure - (math.prod(hi.coords) - math.prod(lo.coords))) <= 1e-12
