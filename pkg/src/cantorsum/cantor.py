"""Points of the middle-third Cantor set and its stage approximations.

A :class:`CantorPoint` is a ternary digit string over {0, 2} followed by a
constant tail of 0s or 2s, so its value is always an exact triadic rational.
Text form, used in certificates::

    0.220(2~)    prefix "220", then 2 forever  (= 0.2202222...)
    0.22(0~)     prefix "22", then 0 forever   (= 8/9)
    0.(2~)       the point 1

A bare ``0.22`` is accepted on input and means a 0 tail.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import DigitUnavailable, NotInGap, NotTriadic, ParseError, StageTooLarge
from .exact import render, ternary_digits, triadic_exponent
from .intervals import IntervalSet

__all__ = [
    "CantorPoint",
    "GapInfo",
    "IntervalSet",
    "value",
    "flip",
    "is_member",
    "locate_gap",
    "stage_intervals",
    "cantor_floor",
    "cantor_ceil",
    "DEFAULT_STAGE_CAP",
]

DEFAULT_STAGE_CAP = 20


def _canonical(prefix: Sequence[int], tail: int) -> Tuple[int, ...]:
    p = list(prefix)
    while p and p[-1] == tail:
        p.pop()
    return tuple(p)


@dataclass(frozen=True)
class CantorPoint:
    prefix: Tuple[int, ...] = ()
    tail: int = 0

    def __post_init__(self):
        if self.tail not in (0, 2):
            raise ValueError(f"tail digit must be 0 or 2, got {self.tail}")
        if any(d not in (0, 2) for d in self.prefix):
            raise ValueError(f"prefix digits must be 0 or 2, got {self.prefix}")
        object.__setattr__(self, "prefix", _canonical(self.prefix, self.tail))

    @classmethod
    def from_value(cls, x) -> "CantorPoint":
        """The point whose value is the triadic member ``x``."""
        x = Fraction(x)
        if x == 1:
            return cls((), 2)
        digits = ternary_digits(x)
        if 1 not in digits:
            return cls(tuple(digits), 0)
        if digits.index(1) == len(digits) - 1:
            # ...d1 == ...d0222...
            return cls(tuple(digits[:-1]) + (0,), 2)
        raise ValueError(f"{render(x)} is not in the Cantor set")

    @classmethod
    def parse(cls, text: str) -> "CantorPoint":
        m = _POINT_RE.match(text.strip())
        if not m:
            raise ParseError(f"malformed Cantor point {text!r}")
        prefix, tail = m.group(1), m.group(2)
        return cls(tuple(int(c) for c in prefix), int(tail) if tail else 0)

    def __str__(self) -> str:
        return "0." + "".join(map(str, self.prefix)) + f"({self.tail}~)"

    def digit(self, j: int) -> int:
        if j < 1:
            raise ValueError("digit positions start at 1")
        return self.prefix[j - 1] if j <= len(self.prefix) else self.tail

    @property
    def value(self) -> Fraction:
        n = 0
        for d in self.prefix:
            n = 3 * n + d
        L = len(self.prefix)
        return Fraction(n + (1 if self.tail == 2 else 0), 3 ** L)

    def flip(self, j: int, to: int) -> "CantorPoint":
        """Change digit ``j`` to ``to``; the value moves by exactly +-2/3**j."""
        if to not in (0, 2):
            raise ValueError("flip target must be 0 or 2")
        if self.digit(j) == to:
            raise DigitUnavailable(f"digit {j} of {self} is already {to}")
        digits = list(self.prefix)
        if j > len(digits):
            digits.extend([self.tail] * (j - len(digits)))
        digits[j - 1] = to
        return CantorPoint(tuple(digits), self.tail)

    def scaled(self, i: int) -> "CantorPoint":
        """The point with value divided by 3**i (i leading zeros)."""
        return CantorPoint((0,) * i + self.prefix, self.tail)


_POINT_RE = re.compile(r"^0\.([02]*)(?:\(([02])~\))?$")


def value(p: CantorPoint) -> Fraction:
    return p.value


def flip(p: CantorPoint, j: int, to: int) -> CantorPoint:
    return p.flip(j, to)


def is_member(x) -> bool:
    """Membership of a triadic rational in the middle-third Cantor set.

    Either the terminating expansion or its 0222... variant must avoid the
    digit 1, i.e. a 1 may only appear as the final digit.
    """
    x = Fraction(x)
    triadic_exponent(x)
    if not 0 <= x <= 1:
        return False
    if x == 1:
        return True
    digits = ternary_digits(x)
    return 1 not in digits or digits.index(1) == len(digits) - 1


@dataclass(frozen=True)
class GapInfo:
    stage: int
    left: Fraction
    right: Fraction

    @property
    def left_point(self) -> CantorPoint:
        return CantorPoint.from_value(self.left)

    @property
    def right_point(self) -> CantorPoint:
        return CantorPoint.from_value(self.right)


def locate_gap(y) -> GapInfo:
    """The first removed open interval containing the non-member ``y``."""
    y = Fraction(y)
    triadic_exponent(y)
    if is_member(y):
        raise NotInGap(f"{render(y)} is in the Cantor set")
    if not 0 < y < 1:
        raise ValueError(f"{render(y)} is outside (0, 1)")
    digits = ternary_digits(y)
    k0 = digits.index(1) + 1
    n = 0
    for d in digits[: k0 - 1]:
        n = 3 * n + d
    left = Fraction(3 * n + 1, 3 ** k0)
    return GapInfo(k0, left, left + Fraction(1, 3 ** k0))


def stage_intervals(k: int, window: Optional[Tuple[object, object]] = None,
                    cap: int = DEFAULT_STAGE_CAP) -> IntervalSet:
    """The 2**k closed intervals of the stage-k construction, optionally clipped to ``window``."""
    if k < 0:
        raise ValueError("stage must be nonnegative")
    if k > cap:
        raise StageTooLarge(f"stage {k} exceeds cap {cap}")
    if window is None:
        wlo, whi = Fraction(0), Fraction(1)
    else:
        wlo, whi = Fraction(window[0]), Fraction(window[1])
        if wlo > whi:
            raise ValueError("window is empty")
    # left endpoints n / 3**level, pruned to subtrees meeting the window
    nodes: List[int] = [0]
    for level in range(1, k + 1):
        scale = 3 ** level
        nxt = []
        for n in nodes:
            for child in (3 * n, 3 * n + 2):
                if child + 1 >= wlo * scale and child <= whi * scale:
                    nxt.append(child)
        nodes = nxt
    scale = 3 ** k
    out = []
    for n in nodes:
        lo, hi = max(Fraction(n, scale), wlo), min(Fraction(n + 1, scale), whi)
        if lo <= hi:
            out.append((lo, hi))
    return IntervalSet._trusted(out)


def _digits_of(x: Fraction, depth: int) -> List[int]:
    out = []
    r = x
    for _ in range(depth):
        r *= 3
        d = r.numerator // r.denominator
        out.append(d)
        r -= d
    return out


def cantor_floor(x, depth: int) -> CantorPoint:
    """Largest Cantor point resolvable within ``depth`` digits that is <= x.

    When x sits in a gap found within ``depth`` digits this is the gap's left
    endpoint; otherwise it is the depth-``depth`` truncation of x.
    """
    x = Fraction(x)
    if x >= 1:
        return CantorPoint((), 2)
    if x <= 0:
        return CantorPoint((), 0)
    if is_member_strict(x):
        return CantorPoint.from_value(x)
    digits = _digits_of(x, depth)
    if 1 in digits:
        i = digits.index(1)
        return CantorPoint(tuple(digits[:i]) + (0,), 2)
    return CantorPoint(tuple(digits), 0)


def cantor_ceil(x, depth: int) -> CantorPoint:
    """Smallest Cantor point resolvable within ``depth`` digits that is >= x."""
    x = Fraction(x)
    if x >= 1:
        return CantorPoint((), 2)
    if x <= 0:
        return CantorPoint((), 0)
    if is_member_strict(x):
        return CantorPoint.from_value(x)
    digits = _digits_of(x, depth)
    if 1 in digits:
        i = digits.index(1)
        return CantorPoint(tuple(digits[:i]) + (2,), 0)
    return CantorPoint(tuple(digits), 2)


def is_member_strict(x) -> bool:
    """Like :func:`is_member` but returns False instead of raising for non-triadic x."""
    try:
        return is_member(x)
    except NotTriadic:
        return False
