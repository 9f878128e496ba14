"""Exact rational arithmetic and ternary digit access.

``ExactRational`` is :class:`fractions.Fraction`: it is always kept in
lowest terms with a positive denominator, and every operation on it is
exact.  The helpers here add the pieces the rest of the package needs on
top of it: triadic (power-of-3 denominator) checks, canonical ternary
digits, a small parsing grammar and truncated decimal rendering.
"""

from __future__ import annotations

import enum
import re
from fractions import Fraction
from typing import List, Union

from .errors import NotTriadic, ParseError

ExactRational = Fraction
RationalLike = Union[Fraction, int, str]

__all__ = [
    "ExactRational",
    "Ordering",
    "add",
    "sub",
    "mul",
    "pow_",
    "pow",
    "cmp",
    "as_rational",
    "is_triadic",
    "triadic_exponent",
    "ternary_digit",
    "ternary_digits",
    "parse",
    "render",
    "to_decimal",
]


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def add(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(a) + Fraction(b)


def sub(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(a) - Fraction(b)


def mul(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(a) * Fraction(b)


def pow_(a: Fraction, m: int) -> Fraction:
    """Return ``a**m`` for a nonnegative integer exponent, by repeated squaring."""
    if m < 0:
        raise ValueError("exponent must be nonnegative")
    a = Fraction(a)
    result = Fraction(1)
    while m:
        if m & 1:
            result *= a
        a *= a
        m >>= 1
    return result


def cmp(a: Fraction, b: Fraction) -> Ordering:
    d = Fraction(a) - Fraction(b)
    if d < 0:
        return Ordering.LT
    if d > 0:
        return Ordering.GT
    return Ordering.EQ


def as_rational(x: RationalLike) -> Fraction:
    """Coerce ints, Fractions and grammar strings (see :func:`parse`) to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational (floats are rejected)")


def triadic_exponent(x: Fraction) -> int:
    """Return k such that the denominator of ``x`` is ``3**k``.

    Raises NotTriadic if the denominator has any other prime factor.
    """
    d = Fraction(x).denominator
    k = 0
    while d % 3 == 0:
        d //= 3
        k += 1
    if d != 1:
        raise NotTriadic(f"{render(x)} is not triadic (denominator has a factor other than 3)")
    return k


def is_triadic(x: Fraction) -> bool:
    try:
        triadic_exponent(x)
    except NotTriadic:
        return False
    return True


def _check_unit(x: Fraction) -> None:
    if not 0 <= x <= 1:
        raise ValueError(f"{render(x)} is outside [0, 1]")


def ternary_digit(x: Fraction, i: int) -> int:
    """Digit ``i`` (1-based) of the terminating ternary expansion of a triadic ``x`` in [0, 1].

    1 has no terminating expansion after the point; its digits are all 2.

    >>> ternary_digit(Fraction(4, 9), 2)
    1
    """
    x = Fraction(x)
    if i < 1:
        raise ValueError("digit positions start at 1")
    k = triadic_exponent(x)
    _check_unit(x)
    if x == 1:
        return 2
    if i > k:
        return 0
    # x = n / 3**k, so digit i is base-3 digit (k - i) of n
    return (x.numerator // 3 ** (k - i)) % 3


def ternary_digits(x: Fraction, count: int | None = None) -> List[int]:
    """All digits of the terminating expansion of triadic ``x`` (or the first ``count``).

    1 is rejected here since its only expansion never terminates.
    """
    x = Fraction(x)
    k = triadic_exponent(x)
    _check_unit(x)
    if x == 1:
        raise ValueError("1 has no terminating ternary expansion")
    n = x.numerator
    digits = []
    for _ in range(k):
        n, r = divmod(n, 3)
        digits.append(r)
    digits.reverse()
    if count is not None:
        digits = (digits + [0] * count)[:count]
    return digits


_FRACTION_RE = re.compile(r"^(-?)(\d+)(?:/(?:3\^(\d+)|(\d+)))?$")
_DECIMAL_RE = re.compile(r"^(-?)(\d+)\.(\d+)$")


def parse(text: str) -> Fraction:
    """Parse ``p``, ``p/q``, ``p/3^k`` or a finite decimal ``d.ddd`` exactly."""
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    s = text.strip()
    m = _FRACTION_RE.match(s)
    if m:
        sign, num, k, den = m.groups()
        if k is not None:
            q = 3 ** int(k)
        elif den is not None:
            q = int(den)
        else:
            q = 1
        if q == 0:
            raise ParseError(f"zero denominator in {text!r}")
        value = Fraction(int(num), q)
        return -value if sign else value
    m = _DECIMAL_RE.match(s)
    if m:
        sign, whole, frac = m.groups()
        value = Fraction(int(whole + frac), 10 ** len(frac))
        return -value if sign else value
    raise ParseError(f"malformed rational {text!r}")


def render(x: Fraction) -> str:
    """Lowest-terms ``p/q`` form (integers render as ``p/1``)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def to_decimal(x: Fraction, digits: int) -> str:
    """Fixed-point decimal with ``digits`` places, truncated toward zero."""
    x = Fraction(x)
    if digits < 0:
        raise ValueError("digits must be nonnegative")
    sign = "-" if x < 0 else ""
    scaled = abs(x.numerator) * 10 ** digits // x.denominator
    whole, frac = divmod(scaled, 10 ** digits)
    if digits == 0:
        return f"{sign}{whole}"
    if sign and scaled == 0:
        sign = ""
    return f"{sign}{whole}.{frac:0{digits}d}"


pow = pow_  # noqa: A001  (public name; the builtin is not used in this module)
