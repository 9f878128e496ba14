from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cantorsum.intervals import IntervalSet, merge_sorted

small = st.fractions(min_value=0, max_value=4, max_denominator=27)


@st.composite
def interval_sets(draw, max_size=8):
    pairs = draw(st.lists(st.tuples(small, small), min_size=1, max_size=max_size))
    return IntervalSet((min(a, b), max(a, b)) for a, b in pairs)


def test_touching_intervals_merge():
    s = IntervalSet([(0, Fraction(1, 3)), (Fraction(1, 3), Fraction(1, 2)), (2, 3)])
    assert s.intervals == ((0, Fraction(1, 2)), (2, 3))


def test_degenerate_interval_kept():
    s = IntervalSet([(1, 1), (2, 3)])
    assert len(s) == 2 and 1 in s and Fraction(3, 2) not in s


def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        IntervalSet([(1, 0)])


def test_merge_sorted_nested():
    assert merge_sorted([(0, 5), (1, 2), (3, 4)]) == [(0, 5)]


def test_covers_needs_single_member():
    s = IntervalSet([(0, 1), (2, 3)])
    assert s.covers(0, 1)
    assert s.covers(Fraction(1, 2), Fraction(1, 2))
    assert not s.covers(Fraction(1, 2), Fraction(5, 2))
    assert not IntervalSet().covers(0, 0)


def test_intersect_window():
    s = IntervalSet([(0, 1), (2, 3)])
    assert s.intersect(Fraction(1, 2), Fraction(5, 2)).intervals == ((Fraction(1, 2), 1), (2, Fraction(5, 2)))


@given(interval_sets())
def test_normalized_invariant(s):
    assert s.is_normalized()
    assert IntervalSet(s.intervals) == s


@given(interval_sets(), small, small)
def test_intersection_never_grows_measure(s, a, b):
    lo, hi = min(a, b), max(a, b)
    t = s.intersect(lo, hi)
    assert t.is_normalized()
    assert t.measure() <= s.measure()
    assert t.issubset(s)


@given(interval_sets(), interval_sets())
def test_union_contains_both(a, b):
    u = a.union(b)
    assert u.is_normalized()
    assert a.issubset(u) and b.issubset(u)


@given(interval_sets(), small)
def test_contains_matches_scan(s, x):
    assert s.contains(x) == any(lo <= x <= hi for lo, hi in s)
