"""Decomposition problems, the standard catalog and certificates."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import thickness
from .cantor import CantorPoint, is_member
from .errors import CertificateFormatError, ParseError
from .exact import as_rational, parse, render

SCHEMA_VERSION = 1

AVERAGE = "average"
PRODUCT = "product"
POWER_SUM = "power_sum"
CUSTOM = "custom"
KINDS = (AVERAGE, PRODUCT, POWER_SUM, CUSTOM)
UP, DOWN = "up", "down"

Window = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class Variable:
    start: CantorPoint
    direction: str
    window: Window

    def __post_init__(self):
        if self.direction not in (UP, DOWN):
            raise ValueError(f"direction must be 'up' or 'down', got {self.direction!r}")
        lo, hi = Fraction(self.window[0]), Fraction(self.window[1])
        if not 0 <= lo <= hi <= 1:
            raise ValueError(f"window [{render(lo)}, {render(hi)}] is not inside [0, 1]")
        object.__setattr__(self, "window", (lo, hi))
        if not lo <= self.start.value <= hi:
            raise ValueError(f"start {self.start} lies outside its window")


@dataclass(frozen=True)
class Problem:
    """A decomposition task.

    ``objective`` names the function being matched: for the three named
    kinds it equals ``kind``; a custom problem picks ``power_sum`` or
    ``product`` and supplies its own variables and windows.  ``target`` may
    be left unset for catalog entries; see :meth:`with_target`.
    """

    kind: str
    variables: Tuple[Variable, ...]
    claimed_interval: Window
    target: Optional[Fraction] = None
    precision: int = 40
    m: int = 1
    objective: Optional[str] = None
    name: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown problem kind {self.kind!r}")
        obj = self.objective or (POWER_SUM if self.kind == CUSTOM else self.kind)
        if obj not in (AVERAGE, PRODUCT, POWER_SUM):
            raise ValueError(f"unknown objective {obj!r}")
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "variables", tuple(self.variables))
        lo, hi = (Fraction(v) for v in self.claimed_interval)
        object.__setattr__(self, "claimed_interval", (lo, hi))
        if self.target is not None:
            object.__setattr__(self, "target", Fraction(self.target))
        if not self.variables:
            raise ValueError("a problem needs at least one variable")
        if self.m < 1:
            raise ValueError("exponent m must be >= 1")
        if self.precision < 1:
            raise ValueError("precision must be a positive integer")
        if obj == AVERAGE and len(self.variables) != 2:
            raise ValueError("average problems have exactly two variables")

    @property
    def t(self) -> int:
        return len(self.variables)

    @property
    def exponent(self) -> int:
        # the average objective is a plain sum
        return self.m if self.objective == POWER_SUM else 1

    @property
    def effective_target(self) -> Fraction:
        """The value the objective must reach (the average kind works with a + b = 2x)."""
        if self.target is None:
            raise ValueError("problem has no target")
        return 2 * self.target if self.objective == AVERAGE else self.target

    def with_target(self, target, precision: Optional[int] = None) -> "Problem":
        return replace(self, target=as_rational(target) if isinstance(target, str) else Fraction(target),
                       precision=self.precision if precision is None else precision)

    def to_dict(self) -> Dict[str, Any]:
        d = {
            "kind": self.kind,
            "name": self.name,
            "objective": self.objective,
            "m": self.m,
            "t": self.t,
            "target": None if self.target is None else render(self.target),
            "precision": self.precision,
            "claimed_interval": [render(x) for x in self.claimed_interval],
            "variables": [
                {"start": str(v.start), "start_value": render(v.start.value),
                 "direction": v.direction, "window": [render(x) for x in v.window]}
                for v in self.variables
            ],
        }
        if self.target is not None:
            d["effective_target"] = render(self.effective_target)
        return d

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "Problem":
        try:
            variables = tuple(
                Variable(_point_field(v), v["direction"], (parse(v["window"][0]), parse(v["window"][1])))
                for v in d["variables"]
            )
            target = d.get("target")
            return cls(
                kind=d["kind"],
                variables=variables,
                claimed_interval=(parse(d["claimed_interval"][0]), parse(d["claimed_interval"][1])),
                target=None if target is None else parse(target),
                precision=int(d.get("precision", 40)),
                m=int(d.get("m", 1)),
                objective=d.get("objective"),
                name=d.get("name", ""),
            )
        except (KeyError, IndexError, TypeError, ValueError, ParseError) as exc:
            raise CertificateFormatError(f"malformed problem: {exc}") from exc


def _point_field(v: Dict[str, Any]) -> CantorPoint:
    # hand-written configs may give a start as a rational instead of digits
    text = v["start"]
    if text.startswith("0.") and ("~" in text or set(text[2:]) <= {"0", "2"}):
        return CantorPoint.parse(text)
    return CantorPoint.from_value(parse(text))


# ---------------------------------------------------------------- catalog

def _var(x, direction, window) -> Variable:
    return Variable(CantorPoint.from_value(Fraction(x)), direction,
                    (Fraction(window[0]), Fraction(window[1])))


def average_problem(precision: int = 40) -> Problem:
    return Problem(AVERAGE, (_var(0, UP, (0, 1)), _var(1, DOWN, (0, 1))),
                   (Fraction(0), Fraction(1)), precision=precision, name="average")


def product_problem(k: int = 2, precision: int = 40) -> Problem:
    """Four-fold product on C cap [1 - 3**-k, 1]; k = 2 is the [8/9, 1] configuration."""
    w = 1 - Fraction(1, 3 ** k)
    win = (w, Fraction(1))
    variables = (_var(w, UP, win), _var(w, UP, win), _var(1, DOWN, win), _var(1, DOWN, win))
    name = "product4" if k == 2 else f"product4_window{k}"
    return Problem(PRODUCT, variables, (w ** 3, w), precision=precision, name=name)


def power_sum_problem(m: int, t: Optional[int] = None, precision: int = 40,
                      window: Window = (Fraction(2, 3), Fraction(1))) -> Problem:
    """Half the variables start at the window's left end moving up, half at its right end moving down."""
    t = thickness.terms_paper(m) if t is None else t
    if t < 2 or t % 2:
        raise ValueError("power_sum problems use an even number of variables >= 2")
    lo, hi = Fraction(window[0]), Fraction(window[1])
    s = t // 2
    variables = tuple([_var(lo, UP, (lo, hi))] * s + [_var(hi, DOWN, (lo, hi))] * s)
    if (lo, hi) == (Fraction(2, 3), Fraction(1)) and t == thickness.terms_paper(m):
        claimed = thickness.paper_interval(m)
        name = f"powersum_m{m}"
    else:
        claimed = (t * lo ** m, t * hi ** m)
        name = f"powersum_m{m}_t{t}_window"
    return Problem(POWER_SUM, variables, claimed, precision=precision, m=m, name=name)


def mixed_squares_problem(precision: int = 40) -> Problem:
    """Sum of four squares started at 1/3, 1/3, 2/9, 2/3, windows [2/9, 1/3] and [2/3, 1]."""
    low = (Fraction(2, 9), Fraction(1, 3))
    high = (Fraction(2, 3), Fraction(1))
    variables = (
        _var(Fraction(1, 3), DOWN, low),
        _var(Fraction(1, 3), DOWN, low),
        _var(Fraction(2, 9), UP, low),
        _var(Fraction(2, 3), UP, high),
    )
    return Problem(CUSTOM, variables, (Fraction(53, 81), Fraction(71, 81)), precision=precision,
                   m=2, objective=POWER_SUM, name="mixed_squares")


def family_interval(k: int) -> Window:
    """The displayed interval of the k-parametric four-squares family (k >= 2)."""
    e = Fraction(1, 3 ** (2 * k))
    lo = Fraction(36, 81) + Fraction(8, 9) * e + e
    hi = (Fraction(36, 81) + Fraction(4, 3 ** (2 * k + 1)) + e * e) + 2 * e + Fraction(4, 9) * e
    return lo, hi


def family_problem(k: int, precision: int = 40) -> Problem:
    if k < 2:
        raise ValueError("the family is defined for k >= 2")
    small = (Fraction(2, 3 ** (k + 1)), Fraction(1, 3 ** k))
    top = (Fraction(2, 3), Fraction(2, 3) + Fraction(1, 3 ** (2 * k)))
    variables = (
        _var(Fraction(1, 3 ** k), DOWN, small),
        _var(Fraction(1, 3 ** k), DOWN, small),
        _var(Fraction(2, 3 ** (k + 1)), UP, small),
        _var(Fraction(2, 3), UP, top),
    )
    return Problem(CUSTOM, variables, family_interval(k), precision=precision, m=2,
                   objective=POWER_SUM, name=f"family_k{k}")


def standard_problems(precision: int = 40, max_m: int = 6) -> List[Problem]:
    """Ready-made configurations with their claimed intervals."""
    problems = [average_problem(precision), product_problem(2, precision)]
    problems += [power_sum_problem(m, precision=precision) for m in range(1, max_m + 1)]
    problems.append(mixed_squares_problem(precision))
    problems += [product_problem(k, precision) for k in (3, 4)]
    return problems


def problem_by_name(name: str, precision: int = 40) -> Problem:
    if name == "average":
        return average_problem(precision)
    if name in ("product", "product4"):
        return product_problem(2, precision)
    if name.startswith("product4_window"):
        return product_problem(int(name[len("product4_window"):]), precision)
    if name.startswith("powersum_m") and name[len("powersum_m"):].isdigit():
        return power_sum_problem(int(name[len("powersum_m"):]), precision=precision)
    if name == "powersum_m2_full":
        return power_sum_problem(2, 4, precision, window=(Fraction(0), Fraction(1)))
    if name in ("mixed_squares", "custom"):
        return mixed_squares_problem(precision)
    if name.startswith("family_k"):
        return family_problem(int(name[len("family_k"):]), precision)
    raise KeyError(f"unknown problem {name!r}")


# ---------------------------------------------------------------- certificate

@dataclass(frozen=True)
class Flip:
    variable: int
    position: int
    change: str  # "0->2" or "2->0"
    delta_before: Fraction
    delta_after: Fraction

    def to_dict(self) -> Dict[str, Any]:
        return {"variable": self.variable, "position": self.position, "change": self.change,
                "delta_before": render(self.delta_before), "delta_after": render(self.delta_after)}


@dataclass
class Certificate:
    problem: Problem
    initial: List[CantorPoint]
    final: List[CantorPoint]
    residual: Fraction
    objective_value: Fraction
    flips: List[Flip] = field(default_factory=list)
    seed: Optional[Dict[str, Any]] = None
    flags: Dict[str, bool] = field(default_factory=dict)
    status: str = "complete"

    @property
    def iterations(self) -> int:
        return len(self.flips)

    @property
    def values(self) -> List[Fraction]:
        return [p.value for p in self.final]

    def to_dict(self) -> Dict[str, Any]:
        p = self.problem
        return {
            "schema_version": SCHEMA_VERSION,
            "status": self.status,
            "problem": p.to_dict(),
            "seed": self.seed,
            "initial": [{"point": str(x), "value": render(x.value)} for x in self.initial],
            "final": [{"point": str(x), "value": render(x.value), "direction": v.direction}
                      for x, v in zip(self.final, p.variables)],
            "objective_value": render(self.objective_value),
            "residual": render(self.residual),
            "iterations": self.iterations,
            "flips": [f.to_dict() for f in self.flips],
            "verification": dict(self.flags),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "Certificate":
        try:
            if d.get("schema_version") != SCHEMA_VERSION:
                raise CertificateFormatError(f"unsupported schema version {d.get('schema_version')!r}")
            flips = [Flip(int(f["variable"]), int(f["position"]), f["change"],
                          parse(f["delta_before"]), parse(f["delta_after"])) for f in d["flips"]]
            return cls(
                problem=Problem.from_dict(d["problem"]),
                initial=[CantorPoint.parse(x["point"]) for x in d["initial"]],
                final=[CantorPoint.parse(x["point"]) for x in d["final"]],
                residual=parse(d["residual"]),
                objective_value=parse(d["objective_value"]),
                flips=flips,
                seed=d.get("seed"),
                flags=dict(d.get("verification", {})),
                status=d.get("status", "complete"),
            )
        except CertificateFormatError:
            raise
        except (KeyError, TypeError, ValueError, ParseError, AttributeError) as exc:
            raise CertificateFormatError(f"malformed certificate: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CertificateFormatError(f"not a JSON document: {exc}") from exc
        if not isinstance(d, dict):
            raise CertificateFormatError("certificate must be a JSON object")
        return cls.from_dict(d)


def members_ok(points: Sequence[CantorPoint]) -> bool:
    return all(is_member(p.value) for p in points)
