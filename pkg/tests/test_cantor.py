from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cantorsum.cantor import (
    CantorPoint,
    cantor_ceil,
    cantor_floor,
    flip,
    is_member,
    locate_gap,
    stage_intervals,
    value,
)
from cantorsum.errors import DigitUnavailable, NotInGap, NotTriadic, ParseError, StageTooLarge

points = st.builds(
    CantorPoint,
    st.lists(st.sampled_from([0, 2]), max_size=25).map(tuple),
    st.sampled_from([0, 2]),
)


@st.composite
def triadic_unit(draw, max_k=20):
    k = draw(st.integers(0, max_k))
    return Fraction(draw(st.integers(0, 3 ** k)), 3 ** k)


def test_value_examples():
    assert CantorPoint.parse("0.22").value == Fraction(8, 9)
    assert CantorPoint.parse("0.(2~)").value == 1
    assert CantorPoint.parse("0.0(2~)").value == Fraction(1, 3)
    assert value(CantorPoint((2, 0, 2))) == Fraction(20, 27)


def test_canonical_form_and_text():
    p = CantorPoint((2, 2, 0, 0, 0), 0)
    assert p.prefix == (2, 2)
    assert str(p) == "0.22(0~)"
    assert CantorPoint.parse(str(p)) == p
    assert str(CantorPoint.from_value(Fraction(1, 3))) == "0.0(2~)"


@pytest.mark.parametrize("text", ["0.12", "1.0", "0.2(1~)", "x"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        CantorPoint.parse(text)


def test_flip_examples():
    p = CantorPoint.from_value(Fraction(2, 3))
    assert flip(p, 2, 2).value == Fraction(8, 9)
    q = CantorPoint((), 2)
    assert q.flip(1, 0).value == Fraction(1, 3)
    with pytest.raises(DigitUnavailable):
        p.flip(1, 2)


@given(points, st.integers(1, 40))
def test_flip_changes_value_by_two_over_3j(p, j):
    to = 2 - p.digit(j)
    q = p.flip(j, to)
    step = Fraction(2, 3 ** j)
    assert q.value - p.value == (step if to == 2 else -step)
    assert q.flip(j, p.digit(j)) == p
    assert is_member(q.value)


@given(points)
def test_points_are_members(p):
    assert is_member(p.value)
    assert CantorPoint.from_value(p.value) == p


def test_is_member_examples():
    assert is_member(Fraction(1, 3))
    assert is_member(Fraction(2, 9))
    assert is_member(Fraction(1))
    assert not is_member(Fraction(4, 9))
    assert not is_member(Fraction(5, 9))
    with pytest.raises(NotTriadic):
        is_member(Fraction(1, 4))


@given(triadic_unit())
def test_membership_matches_stage_sets(x):
    # a triadic of depth k is a member iff it lies in the stage-(k+1) set
    k = 0
    d = x.denominator
    while d > 1:
        d //= 3
        k += 1
    # a point window keeps the stage tree to a single path
    assert is_member(x) == bool(stage_intervals(k + 1, (x, x), cap=64))


def test_locate_gap_examples():
    g = locate_gap(Fraction(4, 9))
    assert (g.stage, g.left, g.right) == (1, Fraction(1, 3), Fraction(2, 3))
    g = locate_gap(Fraction(4, 27))
    assert (g.stage, g.left, g.right) == (2, Fraction(1, 9), Fraction(2, 9))
    with pytest.raises(NotInGap):
        locate_gap(Fraction(2, 3))


@given(triadic_unit())
def test_gap_invariants(y):
    if is_member(y):
        return
    g = locate_gap(y)
    assert g.left < y < g.right
    assert g.right - g.left == Fraction(1, 3 ** g.stage)
    assert is_member(g.left) and is_member(g.right)
    assert g.left_point.value == g.left and g.right_point.value == g.right
    # the open gap misses the stage set that removed it
    assert not stage_intervals(g.stage, (y, y))


def test_stage_intervals_examples():
    assert stage_intervals(0).intervals == ((0, 1),)
    assert stage_intervals(1).intervals == ((0, Fraction(1, 3)), (Fraction(2, 3), 1))
    w = stage_intervals(2, (Fraction(8, 9), Fraction(1)))
    assert w.intervals == ((Fraction(8, 9), 1),)
    with pytest.raises(StageTooLarge):
        stage_intervals(21)


@pytest.mark.parametrize("k", range(0, 9))
def test_stage_nesting_and_measure(k):
    s = stage_intervals(k)
    assert len(s) == 2 ** k
    assert s.measure() == Fraction(2, 3) ** k
    assert stage_intervals(k + 1).issubset(s)
    assert s.is_normalized()


def test_floor_ceil():
    assert cantor_floor(Fraction(1, 2), 10).value == Fraction(1, 3)
    assert cantor_ceil(Fraction(1, 2), 10).value == Fraction(2, 3)
    assert cantor_ceil(Fraction(25, 27), 10).value == Fraction(25, 27)
    assert cantor_floor(Fraction(25, 27), 10).value == Fraction(25, 27)


@given(st.fractions(min_value=0, max_value=1, max_denominator=10 ** 5), st.integers(5, 30))
def test_floor_ceil_bracket(x, depth):
    lo, hi = cantor_floor(x, depth), cantor_ceil(x, depth)
    assert lo.value <= x <= hi.value
    assert is_member(lo.value) and is_member(hi.value)
