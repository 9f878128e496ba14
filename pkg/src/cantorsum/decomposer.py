"""Greedy digit-flip decomposition of a target into Cantor-set variables.

Each variable is a :class:`CantorPoint` that only moves in one direction:
"up" variables turn 0 digits into 2s, "down" variables turn 2s into 0s, and
each variable uses strictly increasing digit positions.

At every step the sign of the residual picks the group that can shrink it.
Each variable in that group proposes its shallowest flip that strictly
reduces |residual| (evaluated exactly, inside its window); the proposal
leaving the smallest |residual| wins, ties going to the lower variable
index.  Taking the shallowest improving position per variable, rather
than the single best position overall, keeps every variable's unused
digits deep enough to absorb the next correction; the unrestricted choice
strands single-variable groups.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .cantor import CantorPoint, cantor_ceil, cantor_floor, is_member, locate_gap
from .errors import (
    IterationCap,
    NotTriadic,
    Stalled,
    TargetOutsideInterval,
    UnsupportedDomain,
    UnsupportedKind,
)
from .exact import render, triadic_exponent
from .problem import (
    AVERAGE,
    DOWN,
    POWER_SUM,
    PRODUCT,
    UP,
    Certificate,
    Flip,
    Problem,
    Variable,
)

log = logging.getLogger(__name__)

STALL_MARGIN = 8
SAFETY = 4


@dataclass
class VariableState:
    point: CantorPoint
    direction: str
    window: Tuple[Fraction, Fraction]
    frontier: int = 1
    history: List[Tuple[int, str]] = field(default_factory=list)

    @property
    def value(self) -> Fraction:
        return self.point.value


@dataclass(frozen=True)
class Sensitivity:
    alpha: Fraction
    beta: Fraction

    def brackets(self, change: Fraction, position: int) -> bool:
        step = Fraction(2, 3 ** position)
        return self.alpha * step <= abs(change) <= self.beta * step


def objective_of(problem: Problem, values: Sequence[Fraction]) -> Fraction:
    if problem.objective == PRODUCT:
        out = Fraction(1)
        for v in values:
            out *= v
        return out
    m = problem.exponent
    return sum((v ** m for v in values), Fraction(0))


def objective(problem: Problem, states: Sequence[VariableState]) -> Fraction:
    if len(states) != problem.t:
        raise ValueError(f"expected {problem.t} states, got {len(states)}")
    return objective_of(problem, [s.value for s in states])


def sensitivity(problem: Problem) -> Sensitivity:
    """Exact bounds on |objective change| / flip size over the admissible windows.

    Raises UnsupportedDomain when the lower factor would be 0, since the
    greedy loop's progress guarantee needs a positive one.
    """
    windows = [v.window for v in problem.variables]
    if problem.objective == AVERAGE:
        return Sensitivity(Fraction(1), Fraction(1))
    if problem.objective == POWER_SUM:
        m = problem.m
        lo = min(w[0] for w in windows)
        hi = max(w[1] for w in windows)
        alpha, beta = m * lo ** (m - 1), m * hi ** (m - 1)
    else:
        alpha = beta = None
        for i in range(len(windows)):
            lo_prod = hi_prod = Fraction(1)
            for j, (lo, hi) in enumerate(windows):
                if j != i:
                    lo_prod *= lo
                    hi_prod *= hi
            alpha = lo_prod if alpha is None else min(alpha, lo_prod)
            beta = hi_prod if beta is None else max(beta, hi_prod)
    if alpha <= 0:
        raise UnsupportedDomain(
            f"{problem.name or problem.kind}: a window touches 0, so flips can have no effect"
        )
    return Sensitivity(alpha, beta)


def _check_target(problem: Problem) -> Fraction:
    if problem.target is None:
        raise ValueError("problem has no target; use Problem.with_target")
    x = problem.target
    triadic_exponent(x)
    lo, hi = problem.claimed_interval
    if not lo <= x <= hi:
        raise TargetOutsideInterval(
            f"target {render(x)} is outside the claimed interval [{render(lo)}, {render(hi)}]"
        )
    return x


def initialize(problem: Problem) -> Tuple[List[VariableState], Optional[dict]]:
    """Initial variable states plus a description of the seed step, if one was taken."""
    x = _check_target(problem)
    states = [VariableState(v.start, v.direction, v.window) for v in problem.variables]

    if problem.objective == AVERAGE:
        if is_member(x):
            p = CantorPoint.from_value(x)
            for s in states:
                s.point = p
            return states, {"rule": "member", "value": render(x)}
        gap = locate_gap(x)
        up, down = (0, 1) if states[0].direction == UP else (1, 0)
        states[up].point = gap.right_point
        states[down].point = gap.left_point
        return states, {"rule": "gap", "stage": gap.stage,
                        "left": render(gap.left), "right": render(gap.right)}

    if problem.objective == PRODUCT:
        return states, _product_seed(problem, states)
    # power sums start from the configured points: the exact seed is a root
    return states, None


def _product_seed(problem: Problem, states: List[VariableState]) -> Optional[dict]:
    T = problem.effective_target
    p1 = objective(problem, states)
    if T == p1:
        return None
    want = UP if T > p1 else DOWN
    idx = next((i for i, s in enumerate(states) if s.direction == want), None)
    if idx is None:
        return None
    others = Fraction(1)
    for i, s in enumerate(states):
        if i != idx:
            others *= s.value
    if others == 0:
        return None
    x0 = T / others
    depth = problem.precision + STALL_MARGIN
    s = states[idx]
    snapped = cantor_ceil(x0, depth) if want == UP else cantor_floor(x0, depth)
    lo, hi = s.window
    moves_right_way = snapped.value >= s.value if want == UP else snapped.value <= s.value
    if not (lo <= snapped.value <= hi and moves_right_way):
        return None
    s.point = snapped
    return {"rule": "product_gap", "variable": idx, "x0": render(x0), "point": str(snapped)}


def _snapshot(problem: Problem, initial: List[CantorPoint], states: List[VariableState],
              flips: List[Flip], delta: Fraction, obj: Fraction, seed, status: str) -> Certificate:
    final = [s.point for s in states]
    eps = Fraction(1, 3 ** problem.precision)
    flags = {
        "residual_within_precision": abs(delta) < eps,
        "objective_identity": obj + delta == problem.effective_target,
        "all_members": all(is_member(p.value) for p in final),
    }
    return Certificate(problem, list(initial), final, delta, obj, list(flips), seed, flags, status)


def decompose(problem: Problem, stall_margin: int = STALL_MARGIN, safety: int = SAFETY) -> Certificate:
    """Run the greedy loop until |residual| < 3**-precision."""
    sens = sensitivity(problem)
    states, seed = initialize(problem)
    initial = [s.point for s in states]
    T = problem.effective_target
    N = problem.precision
    eps = Fraction(1, 3 ** N)
    cap = problem.t * N * safety
    scan_limit = N + stall_margin
    is_product = problem.objective == PRODUCT
    m = problem.exponent

    values = [s.value for s in states]
    obj = objective_of(problem, values)
    delta = T - obj
    flips: List[Flip] = []

    while abs(delta) >= eps:
        if len(flips) >= cap:
            raise IterationCap(
                f"{len(flips)} flips without reaching 3^-{N}",
                _snapshot(problem, initial, states, flips, delta, obj, seed, "iteration_cap"),
            )
        want = UP if delta > 0 else DOWN
        to = 2 if want == UP else 0
        target_abs = abs(delta)
        best = None
        for i, s in enumerate(states):
            if s.direction != want:
                continue
            x = values[i]
            lo, hi = s.window
            if is_product:
                others = Fraction(1)
                for k, v in enumerate(values):
                    if k != i:
                        others *= v
                base = obj - others * x
            else:
                base = obj - x ** m
            for j in range(s.frontier, scan_limit + 1):
                if s.point.digit(j) == to:
                    continue
                step = Fraction(2, 3 ** j)
                x_new = x + step if to == 2 else x - step
                if not lo <= x_new <= hi:
                    continue
                new_obj = base + (others * x_new if is_product else x_new ** m)
                d_new = T - new_obj
                if abs(d_new) < target_abs:
                    # this variable's shallowest improving flip is its only candidate
                    key = (abs(d_new), i, j)
                    if best is None or key < best[0]:
                        best = (key, x_new, new_obj, d_new)
                    break
        if best is None:
            raise Stalled(
                f"no residual-reducing flip among {want} variables up to position {scan_limit} "
                f"(residual {render(delta)})",
                _snapshot(problem, initial, states, flips, delta, obj, seed, "stalled"),
            )
        (_, i, j), x_new, new_obj, d_new = best
        s = states[i]
        s.point = s.point.flip(j, to)
        s.frontier = j + 1
        s.history.append((j, want))
        values[i] = x_new
        change = "0->2" if to == 2 else "2->0"
        flips.append(Flip(i, j, change, delta, d_new))
        assert sens.brackets(new_obj - obj, j), "flip effect escaped the sensitivity bracket"
        obj, delta = new_obj, d_new

    log.debug("%s: %d flips, residual %s", problem.name, len(flips), render(delta))
    return _snapshot(problem, initial, states, flips, delta, obj, seed, "complete")


def scale_certificate(cert: Certificate, i: int) -> Certificate:
    """Divide every variable by 3**i; the target scales by 3**-i (average) or 9**-i (squares)."""
    p = cert.problem
    if i < 0:
        raise ValueError("scale exponent must be nonnegative")
    if p.objective == AVERAGE:
        factor, extra = Fraction(1, 3 ** i), i
    elif p.objective == POWER_SUM and p.m == 2:
        factor, extra = Fraction(1, 9 ** i), 2 * i
    else:
        raise UnsupportedKind(f"scaling is defined for average and m=2 power sums, not {p.name or p.kind}")
    if i == 0:
        return cert
    d = Fraction(1, 3 ** i)
    variables = tuple(Variable(v.start.scaled(i), v.direction, (v.window[0] * d, v.window[1] * d))
                      for v in p.variables)
    lo, hi = p.claimed_interval
    claimed = (lo * d, hi * d) if p.objective == AVERAGE else (lo * factor, hi * factor)
    target = p.target * (d if p.objective == AVERAGE else factor)
    problem = Problem(p.kind, variables, claimed, target, p.precision + extra, p.m, p.objective,
                      f"{p.name}/3^{i}" if p.name else "")
    flips = [Flip(f.variable, f.position + i, f.change, f.delta_before * factor, f.delta_after * factor)
             for f in cert.flips]
    seed = dict(cert.seed, scaled_by=f"1/3^{i}") if cert.seed else None
    return Certificate(problem, [x.scaled(i) for x in cert.initial], [x.scaled(i) for x in cert.final],
                       cert.residual * factor, cert.objective_value * factor, flips, seed,
                       dict(cert.flags), cert.status)


def staged_decay_violations(cert: Certificate, factor: int = 3) -> List[int]:
    """Trace indices s where |delta| did not shrink by ``factor`` over flips s .. s+t-1."""
    t = cert.problem.t
    deltas = [abs(f.delta_before) for f in cert.flips] + [abs(cert.residual)]
    bad = []
    for s in range(len(cert.flips) - t + 1):
        if factor * deltas[s + t] > deltas[s]:
            bad.append(s)
    return bad


def is_decomposable_target(problem: Problem) -> bool:
    try:
        _check_target(problem)
    except (NotTriadic, TargetOutsideInterval):
        return False
    return True
