"""Sufficient conditions for 2- and 4-periodic solutions, and exact period
detection on computed orbits."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .coeffs import CONSTANT, CoefficientSpec
from .orbit import InitialState, Orbit, iterate


class ConditionUndefined(ValueError):
    """The condition divides by b and b is zero."""


class InsufficientWindow(ValueError):
    pass


def check_period2_conditions(a, b, c, d, init: InitialState) -> bool:
    """x_{-2} = x_0, y_{-2} = y_0, a = c, b = d and
    x_{-1} y_{-2} = x_{-2} y_{-1} = (1 - a)/b."""
    if b == 0:
        raise ConditionUndefined("period-2 condition needs b != 0")
    target = (1 - Fraction(a)) / b
    i = init
    return (
        i.x_m2 == i.x_0
        and i.y_m2 == i.y_0
        and a == c
        and b == d
        and i.x_m1 * i.y_m2 == target
        and i.x_m2 * i.y_m1 == target
    )


def check_period4_conditions(a, b, c, d, init: InitialState) -> bool:
    """x_0 = -x_{-2}, y_0 = -y_{-2}, a = c, b = -d and
    x_{-1} y_{-2} = -x_{-2} y_{-1} = (1 + a)/b."""
    if b == 0:
        raise ConditionUndefined("period-4 condition needs b != 0")
    target = (1 + Fraction(a)) / b
    i = init
    return (
        i.x_0 == -i.x_m2
        and i.y_0 == -i.y_m2
        and a == c
        and b == -d
        and i.x_m1 * i.y_m2 == target
        and -i.x_m2 * i.y_m1 == target
    )


def check_period4_remark(a, b, c, d, init: InitialState) -> bool:
    # the x_{-1} y_{-2} condition is deliberately absent
    i = init
    return a == 1 and c == 1 and d == -1 and b == 1 and i.x_0 == -i.x_m2 and i.y_0 == -i.y_m2


@dataclass
class PeriodReport:
    detected: int | None
    window: int
    conditions: dict[str, bool | None] = field(default_factory=dict)

    def line(self) -> str:
        def fmt(v):
            return "true" if v else "false"

        p = "none" if self.detected is None else str(self.detected)
        c = self.conditions
        return (
            f"period={p} thm2={fmt(c.get('period2'))} "
            f"thm4={fmt(c.get('period4'))} remark={fmt(c.get('remark'))}"
        )


def _is_periodic(orbit: Orbit, p: int) -> bool:
    xs, ys = orbit.xs, orbit.ys
    return all(xs[k + p] == xs[k] and ys[k + p] == ys[k] for k in range(len(xs) - p))


def detect_period(orbit: Orbit, max_period: int, min_window: int = 3) -> PeriodReport:
    """Smallest p <= max_period with x_{n+p} = x_n and y_{n+p} = y_n for
    every n in the orbit (from the start, not eventually).

    The orbit must hold at least ``min_window * max_period`` values.
    """
    if max_period < 1:
        raise ValueError("max_period must be >= 1")
    if not orbit.complete:
        raise InsufficientWindow(f"orbit is not complete: {orbit.forbidden}")
    window = len(orbit.xs)
    if window < min_window * max_period:
        raise InsufficientWindow(
            f"orbit has {window} values, need >= {min_window * max_period} for P={max_period}"
        )
    for p in range(1, max_period + 1):
        if _is_periodic(orbit, p):
            return PeriodReport(p, window)
    return PeriodReport(None, window)


def theorem_conditions(spec: CoefficientSpec, init: InitialState) -> dict[str, bool | None]:
    """Evaluate the three condition checkers; None where undefined (b = 0).

    Non-constant coefficients satisfy none of them.
    """
    if spec.kind != CONSTANT:
        return {"period2": False, "period4": False, "remark": False}
    a, b, c, d = spec.constants()
    out: dict[str, bool | None] = {}
    for key, check in (("period2", check_period2_conditions), ("period4", check_period4_conditions)):
        try:
            out[key] = check(a, b, c, d, init)
        except ConditionUndefined:
            out[key] = None
    out["remark"] = check_period4_remark(a, b, c, d, init)
    return out


def period_report(spec: CoefficientSpec, init: InitialState, steps: int, max_period: int,
                  min_window: int = 3) -> PeriodReport:
    report = detect_period(iterate(spec, init, steps), max_period, min_window)
    report.conditions = theorem_conditions(spec, init)
    return report


# -- constructive samplers --------------------------------------------------
# The theorem hypotheses are equalities, so random instances almost never meet
# them.  These pick the free values at random and solve for the rest exactly.

def _nonzero(rng: random.Random, bound: int = 9) -> Fraction:
    num = rng.choice([k for k in range(-bound, bound + 1) if k])
    return Fraction(num, rng.randint(1, bound))


def sample_period2(rng: random.Random, draw: Callable = _nonzero):
    """(spec, init) meeting the period-2 hypotheses.

    a != 1 keeps (1 - a)/b nonzero.  The denominators along the orbit are
    a + b (1 - a)/b = 1, so the orbit never dies.
    """
    a = draw(rng)
    while a == 1:
        a = draw(rng)
    b = draw(rng)
    target = (1 - a) / b
    x_m2, y_m2 = draw(rng), draw(rng)
    init = InitialState(x_m2, target / y_m2, x_m2, y_m2, target / x_m2, y_m2)
    return CoefficientSpec.constant(a, b, a, b), init


def sample_period4(rng: random.Random, draw: Callable = _nonzero):
    """(spec, init) meeting the period-4 hypotheses (a != -1)."""
    a = draw(rng)
    while a == -1:
        a = draw(rng)
    b = draw(rng)
    target = (1 + a) / b
    x_m2, y_m2 = draw(rng), draw(rng)
    init = InitialState(x_m2, target / y_m2, -x_m2, y_m2, -target / x_m2, -y_m2)
    return CoefficientSpec.constant(a, b, a, -b), init


def sample_remark(rng: random.Random, draw: Callable = _nonzero):
    """a = b = c = 1, d = -1, x_0 = -x_{-2}, y_0 = -y_{-2}, free x_{-1}, y_{-1}.

    Draws where the first step would divide by zero are redrawn.
    """
    spec = CoefficientSpec.constant(1, 1, 1, -1)
    while True:
        x_m2, x_m1, y_m2, y_m1 = (draw(rng) for _ in range(4))
        init = InitialState(x_m2, x_m1, -x_m2, y_m2, y_m1, -y_m2)
        if iterate(spec, init, 4).complete:
            return spec, init
