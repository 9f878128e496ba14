import random
from fractions import Fraction

import pytest

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE = {}

CRITERIA = {
    1: "average completeness",
    2: "product interval",
    3: "power-sum intervals",
    4: "mixed squares configuration",
    5: "oracle identities",
    6: "thickness table",
    7: "trace property suites",
    8: "parametric family report",
}


def random_triadic(rng: random.Random, lo: Fraction, hi: Fraction, depth: int) -> Fraction:
    """Uniform triadic n / 3**depth inside [lo, hi]."""
    scale = 3 ** depth
    a = -(-lo.numerator * scale // lo.denominator)
    b = hi.numerator * scale // hi.denominator
    return Fraction(rng.randint(a, b), scale)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n, name in CRITERIA.items():
        if n not in ACCEPTANCE:
            tr.write_line(f"[ NOT RUN ] {n}. {name}")
            continue
        ok, detail = ACCEPTANCE[n]
        tr.write_line(f"[{'PASS' if ok else 'FAIL':^9}] {n}. {name}: {detail}")
