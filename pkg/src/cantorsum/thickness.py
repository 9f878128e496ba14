"""Closed-form thickness numbers and term-count predictions.

Everything is exact; ceilings go through integer division so values of
(3/2)**(m-1) that sit just above an integer are never misrounded.
"""

from __future__ import annotations

import csv
import io
from fractions import Fraction
from typing import Iterable, List, Tuple

from .exact import render


def _check_m(m: int) -> None:
    if m < 1:
        raise ValueError(f"exponent m must be >= 1, got {m}")


def ceil_fraction(x: Fraction) -> int:
    x = Fraction(x)
    return -(-x.numerator // x.denominator)


def tau(m: int) -> Fraction:
    """Thickness of {x**m : x in C}."""
    _check_m(m)
    return Fraction(1, 2 ** m - 1)


def gamma(m: int) -> Fraction:
    _check_m(m)
    return Fraction(1, 2 ** m)


def gamma_restricted(m: int) -> Fraction:
    """Normalized thickness after restricting to x**m >= (2/3)**m."""
    _check_m(m)
    return Fraction(7 ** m - 6 ** m, 8 ** m - 6 ** m)


def terms_astels(m: int) -> int:
    return ceil_fraction(1 / gamma(m))


def terms_restricted(m: int) -> int:
    return ceil_fraction(1 / gamma_restricted(m))


def terms_restricted_approx(m: int) -> int:
    """ceil((8/7)**m), the large-m approximation of :func:`terms_restricted`."""
    _check_m(m)
    return ceil_fraction(Fraction(8, 7) ** m)


def terms_paper(m: int) -> int:
    """Term count t_m = 2 * ceil((3/2)**(m-1)) used by the constructive algorithm."""
    _check_m(m)
    return 2 * ceil_fraction(Fraction(3, 2) ** (m - 1))


def paper_interval(m: int) -> Tuple[Fraction, Fraction]:
    """Interval guaranteed inside the t_m-fold sum of m-th powers of C."""
    _check_m(m)
    r = Fraction(2, 3) ** m
    return (m + 1) * r + (m - 1), (m - 1) * r + (m + 1)


def windowed_prediction(m: int, k: int) -> Tuple[int, Fraction]:
    """(terms, interval length) when working inside [1 - 3**-k, 1]; needs k >= 3."""
    _check_m(m)
    if k < 3:
        raise ValueError(f"window depth k must be >= 3, got {k}")
    ratio = Fraction(3 ** k, 3 ** k - 1)
    terms = 2 * ceil_fraction(ratio ** (m - 1))
    length = 2 * (1 - (1 / ratio) ** m)
    return terms, length


COLUMNS = [
    "m", "tau", "gamma", "gamma_restricted", "terms_astels", "terms_restricted",
    "terms_restricted_approx", "terms_paper", "interval_lo", "interval_hi", "interval_length",
]


def table_rows(ms: Iterable[int]) -> List[dict]:
    rows = []
    for m in ms:
        lo, hi = paper_interval(m)
        rows.append({
            "m": m,
            "tau": render(tau(m)),
            "gamma": render(gamma(m)),
            "gamma_restricted": render(gamma_restricted(m)),
            "terms_astels": terms_astels(m),
            "terms_restricted": terms_restricted(m),
            "terms_restricted_approx": terms_restricted_approx(m),
            "terms_paper": terms_paper(m),
            "interval_lo": render(lo),
            "interval_hi": render(hi),
            "interval_length": render(hi - lo),
        })
    return rows


def format_table(ms: Iterable[int], fmt: str = "csv") -> str:
    rows = table_rows(ms)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    if fmt == "md":
        lines = ["| " + " | ".join(COLUMNS) + " |", "|" + "---|" * len(COLUMNS)]
        for r in rows:
            lines.append("| " + " | ".join(str(r[c]) for c in COLUMNS) + " |")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown table format {fmt!r}")
