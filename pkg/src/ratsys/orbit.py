"""Direct forward iteration of the system

    x_{n+1} = x_{n-2} y_{n-1} / (y_n (a_n + b_n x_{n-2} y_{n-1}))
    y_{n+1} = y_{n-2} x_{n-1} / (x_n (c_n + d_n y_{n-2} x_{n-1}))

in exact arithmetic.  This is the ground truth every closed form is checked
against, so it deliberately contains nothing but the recurrence itself.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .coeffs import CoefficientSpec
from .exact import RationalLike, as_rational, format_rational

X_EQUATION = "x"
Y_EQUATION = "y"


class InvalidInitialState(ValueError):
    pass


class ForbiddenSet(ArithmeticError):
    """A denominator factor of the recurrence vanished.

    ``step`` is the index n of the step that tried to produce index n+1,
    ``reason`` names the equation (``"x"`` or ``"y"``) and ``operands`` holds
    the coefficient pair and the cross product that made the factor zero.
    """

    def __init__(self, step: int, reason: str, operands: tuple[Fraction, Fraction, Fraction]):
        self.step = step
        self.reason = reason
        self.operands = operands
        lead, slope, product = operands
        super().__init__(
            f"forbidden set at step {step}: {reason}-denominator "
            f"{format_rational(lead)} + {format_rational(slope)}*{format_rational(product)} = 0"
        )

    # value semantics, so that orbits carrying a diagnosis compare equal
    def _key(self):
        return (self.step, self.reason, self.operands)

    def __eq__(self, other):
        if not isinstance(other, ForbiddenSet):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())


@dataclass(frozen=True)
class InitialState:
    """Seeds x_{-2}, x_{-1}, x_0, y_{-2}, y_{-1}, y_0 (all nonzero)."""

    x_m2: Fraction
    x_m1: Fraction
    x_0: Fraction
    y_m2: Fraction
    y_m1: Fraction
    y_0: Fraction

    def __post_init__(self):
        for name in ("x_m2", "x_m1", "x_0", "y_m2", "y_m1", "y_0"):
            value = as_rational(getattr(self, name))
            if value == 0:
                raise InvalidInitialState(f"initial value {name} must be nonzero")
            object.__setattr__(self, name, value)

    @classmethod
    def of(cls, values: Iterable[RationalLike]) -> "InitialState":
        vals = list(values)
        if len(vals) != 6:
            raise InvalidInitialState(f"need six initial values, got {len(vals)}")
        return cls(*vals)

    @classmethod
    def parse(cls, text: str) -> "InitialState":
        """From ``x-2,x-1,x0,y-2,y-1,y0``."""
        return cls.of(part.strip() for part in text.split(","))

    @property
    def xs(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.x_m2, self.x_m1, self.x_0)

    @property
    def ys(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.y_m2, self.y_m1, self.y_0)

    def values(self) -> tuple[Fraction, ...]:
        return self.xs + self.ys

    def to_text(self) -> str:
        return ",".join(format_rational(v) for v in self.values())


@dataclass(frozen=True)
class Orbit:
    """x_n, y_n for n = -2 .. last; ``forbidden`` is set when iteration died."""

    xs: tuple[Fraction, ...]
    ys: tuple[Fraction, ...]
    requested: int
    forbidden: ForbiddenSet | None = None

    @property
    def complete(self) -> bool:
        return self.forbidden is None

    @property
    def last(self) -> int:
        return len(self.xs) - 3

    def x(self, n: int) -> Fraction:
        if not -2 <= n <= self.last:
            raise IndexError(f"x_{n} is outside the orbit (-2..{self.last})")
        return self.xs[n + 2]

    def y(self, n: int) -> Fraction:
        if not -2 <= n <= self.last:
            raise IndexError(f"y_{n} is outside the orbit (-2..{self.last})")
        return self.ys[n + 2]

    def indices(self) -> range:
        return range(-2, self.last + 1)

    def status_line(self) -> str:
        if self.forbidden is None:
            return "# status=complete"
        return f"# status=forbidden step={self.forbidden.step} eq={self.forbidden.reason}"

    def raise_if_forbidden(self) -> "Orbit":
        if self.forbidden is not None:
            raise self.forbidden
        return self


def step(spec: CoefficientSpec, window, n: int) -> tuple[Fraction, Fraction]:
    """One application of the recurrence.

    ``window`` is ``(x_{n-2}, x_{n-1}, x_n, y_{n-2}, y_{n-1}, y_n)``; the
    coefficients are read at index ``n``.
    """
    xm2, xm1, x0, ym2, ym1, y0 = window
    a, b = spec.a.at(n), spec.b.at(n)
    p = xm2 * ym1
    den_x = a + b * p
    if den_x == 0:
        raise ForbiddenSet(n, X_EQUATION, (a, b, p))
    c, d = spec.c.at(n), spec.d.at(n)
    q = ym2 * xm1
    den_y = c + d * q
    if den_y == 0:
        raise ForbiddenSet(n, Y_EQUATION, (c, d, q))
    return p / (y0 * den_x), q / (x0 * den_y)


def iterate(spec: CoefficientSpec, init: InitialState, steps: int) -> Orbit:
    """Iterate ``steps`` times; on a forbidden-set hit keep the partial orbit."""
    if steps < 0:
        raise ValueError("steps must be >= 0")
    xs = list(init.xs)
    ys = list(init.ys)
    for n in range(steps):
        window = (xs[-3], xs[-2], xs[-1], ys[-3], ys[-2], ys[-1])
        try:
            x_next, y_next = step(spec, window, n)
        except ForbiddenSet as exc:
            return Orbit(tuple(xs), tuple(ys), steps, exc)
        xs.append(x_next)
        ys.append(y_next)
    return Orbit(tuple(xs), tuple(ys), steps)


def orbit_csv(orbit: Orbit, floats: bool = False) -> str:
    """CSV ``n,x,y`` in exact p/q form plus a trailing ``# status=...`` line.

    With ``floats`` two lossy ``x_float,y_float`` columns are appended for
    plotting.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["n", "x", "y"]
    if floats:
        header += ["x_float", "y_float"]
    writer.writerow(header)
    for n in orbit.indices():
        x, y = orbit.x(n), orbit.y(n)
        row = [n, format_rational(x), format_rational(y)]
        if floats:
            row += [repr(float(x)), repr(float(y))]
        writer.writerow(row)
    buf.write(orbit.status_line() + "\n")
    return buf.getvalue()
