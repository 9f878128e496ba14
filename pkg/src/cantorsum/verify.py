"""Independent replay checker for decomposition certificates.

The checker works from the JSON-shaped document alone (hand-edited ones
included): it rebuilds the start state, replays every flip with its own
objective arithmetic and reports each check as pass or fail.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Union

from .cantor import is_member
from .errors import CertificateFormatError, DigitUnavailable, NotTriadic, ParseError, UnsupportedDomain
from .exact import parse, render
from .problem import AVERAGE, PRODUCT, UP, Certificate, Problem


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def __str__(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass
class VerificationReport:
    checks: List[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def __str__(self) -> str:
        lines = [str(c) for c in self.checks]
        lines.append("certificate OK" if self.ok else f"certificate INVALID ({len(self.failures)} failed)")
        return "\n".join(lines)


def _eval(problem: Problem, values: List[Fraction]) -> Fraction:
    if problem.objective == PRODUCT:
        out = Fraction(1)
        for v in values:
            out *= v
        return out
    if problem.objective == AVERAGE:
        return sum(values, Fraction(0))
    return sum((v ** problem.m for v in values), Fraction(0))


def _member(x: Fraction) -> bool:
    try:
        return is_member(x)
    except NotTriadic:
        return False


def verify(certificate: Union[Certificate, Dict[str, Any]]) -> VerificationReport:
    """Replay a certificate and check every invariant; never raises on a bad certificate."""
    doc = certificate.to_dict() if isinstance(certificate, Certificate) else certificate
    return verify_document(doc)


def verify_document(doc: Dict[str, Any]) -> VerificationReport:
    """Check a certificate document.

    Raises CertificateFormatError only when the document cannot be read at
    all (wrong schema, missing fields); mathematical defects are report entries.
    """
    cert = Certificate.from_dict(doc)
    problem = cert.problem
    report = VerificationReport()
    t = problem.t
    N = problem.precision
    eps = Fraction(1, 3 ** N)

    try:
        T = problem.effective_target
    except ValueError as exc:
        raise CertificateFormatError(str(exc)) from exc
    lo, hi = problem.claimed_interval
    report.add("target inside claimed interval", lo <= problem.target <= hi,
               f"{render(problem.target)} vs [{render(lo)}, {render(hi)}]")

    if len(cert.initial) != t or len(cert.final) != t:
        report.add("variable count", False, f"expected {t} initial and final points")
        return report
    report.add("variable count", True)

    bad_init = [i for i, (p, v) in enumerate(zip(cert.initial, problem.variables))
                if not (v.window[0] <= p.value <= v.window[1])]
    report.add("initial points inside windows", not bad_init,
               f"variables {bad_init}" if bad_init else "")

    try:
        from .decomposer import sensitivity
        sens = sensitivity(problem)
    except UnsupportedDomain:
        sens = None

    # replay
    points = list(cert.initial)
    values = [p.value for p in points]
    last_pos = [0] * t
    delta = T - _eval(problem, values)
    chain_fail = ""
    for s, f in enumerate(cert.flips):
        i, j = f.variable, f.position
        if not 0 <= i < t:
            chain_fail = f"step {s}: variable index {i} out of range"
            break
        v = problem.variables[i]
        expected_change = "0->2" if v.direction == UP else "2->0"
        if f.change != expected_change:
            chain_fail = f"direction mismatch at step {s}: variable {i} is {v.direction}"
            break
        if j <= last_pos[i]:
            chain_fail = f"frontier regression at step {s}: position {j} after {last_pos[i]}"
            break
        if f.delta_before != delta:
            chain_fail = f"residual chain mismatch at step {s}"
            break
        try:
            new_point = points[i].flip(j, 2 if v.direction == UP else 0)
        except DigitUnavailable:
            chain_fail = f"digit unavailable at step {s}: variable {i} position {j}"
            break
        new_value = new_point.value
        if not v.window[0] <= new_value <= v.window[1]:
            chain_fail = f"domain violation at step {s}: variable {i} leaves its window"
            break
        old_obj = T - delta
        values[i] = new_value
        points[i] = new_point
        last_pos[i] = j
        new_obj = _eval(problem, values)
        delta = T - new_obj
        if f.delta_after != delta:
            chain_fail = f"residual chain mismatch at step {s}"
            break
        if not abs(delta) < abs(f.delta_before):
            chain_fail = f"no strict decrease at step {s}"
            break
        if sens is not None and not sens.brackets(new_obj - old_obj, j):
            chain_fail = f"sensitivity bracket violated at step {s}"
            break
    report.add("residual chain", not chain_fail, chain_fail)
    report.add("iteration count", doc.get("iterations") == len(cert.flips),
               f"stated {doc.get('iterations')}, trace has {len(cert.flips)}")

    if not chain_fail:
        mismatched = [i for i in range(t) if points[i] != cert.final[i]]
        report.add("replay reproduces final state", not mismatched,
                   f"variables {mismatched}" if mismatched else "")

    # stated values, checked on their own
    stated: List[Fraction] = []
    for i, entry in enumerate(doc["final"]):
        try:
            x = parse(entry["value"])
        except (KeyError, ParseError) as exc:
            raise CertificateFormatError(f"final value {i}: {exc}") from exc
        stated.append(x)
        if x != cert.final[i].value:
            report.add(f"final value matches point, variable {i}", False,
                       f"{render(x)} vs {cert.final[i]}")
    for i, x in enumerate(stated):
        if not _member(x):
            report.add(f"membership failure, variable {i}", False, render(x))
    if all(_member(x) for x in stated):
        report.add("membership", True)

    obj = _eval(problem, stated)
    report.add("objective value", obj == cert.objective_value,
               f"recomputed {render(obj)}, stated {render(cert.objective_value)}")
    report.add("objective + residual = target", cert.objective_value + cert.residual == T)
    report.add("residual below 3^-precision", abs(cert.residual) < eps,
               f"|residual| = {render(abs(cert.residual))}, bound 3^-{N}")
    return report
