import pytest

from cubicgaps.dynamics import IntervalSet
from cubicgaps.errors import BadInput


def test_normalization_merges_and_sorts():
    s = IntervalSet(((1.0, 2.0), (-1.0, 0.5), (0.4, 0.9)))
    assert s.intervals == ((-1.0, 0.9), (1.0, 2.0))


def test_touching_intervals_merge():
    s = IntervalSet(((0.0, 1.0), (1.0, 2.0)))
    assert s.intervals == ((0.0, 2.0),)


def test_degenerate_interval_becomes_point():
    s = IntervalSet(((0.5, 0.5), (1.0, 2.0)))
    assert s.intervals == ((1.0, 2.0),)
    assert s.points == (0.5,)


def test_points_absorbed_by_intervals():
    s = IntervalSet(((0.0, 1.0),), (0.5, 2.0, 0.0))
    assert s.points == (2.0,)


def test_reversed_interval_rejected():
    with pytest.raises(BadInput):
        IntervalSet(((2.0, 1.0),))


def test_contains():
    s = IntervalSet(((-2.0, 0.0), (1.0, 3.0)), (0.5,))
    assert s.contains(-1.0)
    assert s.contains(0.5)
    assert not s.contains(0.4)
    assert s.contains(0.4, tol=0.11)
    assert not s.contains(3.2)
    assert s.contains(3.05, tol=0.1)


def test_union_intersect():
    a = IntervalSet(((0.0, 2.0),))
    b = IntervalSet(((1.0, 3.0),), (5.0,))
    u = a.union(b)
    assert u.intervals == ((0.0, 3.0),) and u.points == (5.0,)
    i = a.intersect(b)
    assert i.intervals == ((1.0, 2.0),) and i.points == ()


def test_intersect_degenerate_overlap_is_point():
    a = IntervalSet(((0.0, 1.0),))
    b = IntervalSet(((1.0, 2.0),))
    i = a.intersect(b)
    assert i.intervals == () and i.points == (1.0,)


def test_complement_in_box():
    s = IntervalSet(((-2.0, 0.0), (1.0, 3.0)))
    c = s.complement_in(-3.0, 3.0)
    assert c.intervals == ((-3.0, -2.0), (0.0, 1.0))
    # complement ignores isolated points (closure semantics)
    s2 = IntervalSet(((-2.0, 0.0),), (1.5,))
    c2 = s2.complement_in(-3.0, 3.0)
    assert c2.intervals == ((-3.0, -2.0), (0.0, 3.0))


def test_complement_roundtrip_partition():
    s = IntervalSet(((-1.0, 0.5), (2.0, 2.5)))
    c = s.complement_in(-3.0, 3.0)
    assert abs(s.total_length + c.total_length - 6.0) < 1e-12


def test_contains_set():
    big = IntervalSet(((-2.0, 0.0), (1.0, 3.0)))
    small = IntervalSet(((-1.9, -0.1), (1.5, 2.0)), (2.5,))
    assert big.contains_set(small)
    assert not small.contains_set(big)


def test_json_round_trip():
    s = IntervalSet(((-2.0, 0.0),), (2.5,))
    d = s.to_json()
    assert d == {"intervals": [[-2.0, 0.0]], "points": [2.5]}
    assert IntervalSet.from_json(d) == s


def test_bounds_and_empty():
    s = IntervalSet(((0.0, 1.0),), (-4.0,))
    assert s.bounds() == (-4.0, 1.0)
    e = IntervalSet()
    assert e.is_empty
    with pytest.raises(BadInput):
        e.bounds()
