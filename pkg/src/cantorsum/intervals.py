"""Finite unions of closed intervals with exact endpoints."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, List, Sequence, Tuple

from .exact import render

Interval = Tuple[Fraction, Fraction]


def merge_sorted(intervals: Sequence[Interval]) -> List[Interval]:
    """Coalesce intervals already sorted by left endpoint.

    Closed-set semantics: intervals that overlap or share an endpoint merge.
    """
    out: List[Interval] = []
    if not intervals:
        return out
    lo, hi = intervals[0]
    for a, b in intervals[1:]:
        if a > hi:
            out.append((lo, hi))
            lo, hi = a, b
        elif b > hi:
            hi = b
    out.append((lo, hi))
    return out


class IntervalSet:
    """Sorted, pairwise disjoint, non-touching closed intervals.

    Degenerate intervals ``[x, x]`` are allowed.  Instances are immutable.
    """

    __slots__ = ("_iv",)

    def __init__(self, intervals: Iterable[Tuple[object, object]] = ()):
        ivs = []
        for lo, hi in intervals:
            lo, hi = Fraction(lo), Fraction(hi)
            if lo > hi:
                raise ValueError(f"empty interval [{render(lo)}, {render(hi)}]")
            ivs.append((lo, hi))
        ivs.sort()
        self._iv: Tuple[Interval, ...] = tuple(merge_sorted(ivs))

    @classmethod
    def _trusted(cls, intervals: Sequence[Interval]) -> "IntervalSet":
        # caller guarantees the invariant already holds
        obj = cls.__new__(cls)
        obj._iv = tuple(intervals)
        return obj

    @classmethod
    def point(cls, x) -> "IntervalSet":
        return cls([(x, x)])

    @property
    def intervals(self) -> Tuple[Interval, ...]:
        return self._iv

    def __iter__(self) -> Iterator[Interval]:
        return iter(self._iv)

    def __len__(self) -> int:
        return len(self._iv)

    def __bool__(self) -> bool:
        return bool(self._iv)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self._iv == other._iv

    def __hash__(self) -> int:
        return hash(self._iv)

    def __repr__(self) -> str:
        body = ", ".join(f"[{render(a)}, {render(b)}]" for a, b in self._iv[:6])
        more = f", ... ({len(self._iv)} intervals)" if len(self._iv) > 6 else ""
        return f"IntervalSet({{{body}{more}}})"

    @property
    def lo(self) -> Fraction:
        return self._iv[0][0]

    @property
    def hi(self) -> Fraction:
        return self._iv[-1][1]

    def measure(self) -> Fraction:
        return sum((b - a for a, b in self._iv), Fraction(0))

    def _index_at_or_before(self, x: Fraction) -> int:
        # largest i with self._iv[i][0] <= x, or -1
        lo_, hi_ = 0, len(self._iv)
        while lo_ < hi_:
            mid = (lo_ + hi_) // 2
            if self._iv[mid][0] <= x:
                lo_ = mid + 1
            else:
                hi_ = mid
        return lo_ - 1

    def contains(self, x) -> bool:
        x = Fraction(x)
        i = self._index_at_or_before(x)
        return i >= 0 and x <= self._iv[i][1]

    __contains__ = contains

    def covers(self, lo, hi) -> bool:
        """True iff ``[lo, hi]`` lies inside a single member interval."""
        lo, hi = Fraction(lo), Fraction(hi)
        i = self._index_at_or_before(lo)
        return i >= 0 and hi <= self._iv[i][1]

    def intersect(self, lo, hi) -> "IntervalSet":
        lo, hi = Fraction(lo), Fraction(hi)
        out = []
        for a, b in self._iv:
            a2, b2 = max(a, lo), min(b, hi)
            if a2 <= b2:
                out.append((a2, b2))
        return IntervalSet._trusted(out)

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet._trusted(merge_sorted(sorted(self._iv + other._iv)))

    def issubset(self, other: "IntervalSet") -> bool:
        return all(other.covers(a, b) for a, b in self._iv)

    def is_normalized(self) -> bool:
        for a, b in self._iv:
            if a > b:
                return False
        return all(self._iv[i][1] < self._iv[i + 1][0] for i in range(len(self._iv) - 1))
