"""Coefficient sequences a_n, b_n, c_n, d_n of the system.

Each of the four sequences is constant, periodic or tabulated.  The step that
produces ``(x_{n+1}, y_{n+1})`` reads the coefficients at index ``n``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .exact import RationalLike, as_rational, format_rational

CONSTANT = "constant"
PERIODIC = "periodic"
TABULATED = "tabulated"

NAMES = ("a", "b", "c", "d")
# a_n and c_n sit alone in the denominators whenever the product term vanishes.
_NONZERO = ("a", "c")


class IndexOutOfRange(IndexError):
    """Raised when a tabulated sequence is queried past its table."""


class CoefficientError(ValueError):
    """Raised for malformed coefficient specifications or files."""


@dataclass(frozen=True)
class CoefficientSequence:
    kind: str
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if self.kind not in (CONSTANT, PERIODIC, TABULATED):
            raise CoefficientError(f"unknown sequence kind {self.kind!r}")
        if not self.values:
            raise CoefficientError("coefficient sequence needs at least one value")
        if self.kind == CONSTANT and len(self.values) != 1:
            raise CoefficientError("a constant sequence holds exactly one value")

    @property
    def period(self) -> int | None:
        """1 for constants, the list length for periodic, None for tables."""
        if self.kind == CONSTANT:
            return 1
        if self.kind == PERIODIC:
            return len(self.values)
        return None

    def at(self, n: int) -> Fraction:
        if n < 0:
            raise IndexOutOfRange(f"coefficient index must be >= 0, got {n}")
        if self.kind == CONSTANT:
            return self.values[0]
        if self.kind == PERIODIC:
            return self.values[n % len(self.values)]
        if n >= len(self.values):
            raise IndexOutOfRange(
                f"tabulated coefficient has {len(self.values)} entries, index {n} requested"
            )
        return self.values[n]

    def to_line(self, name: str) -> str:
        body = ",".join(format_rational(v) for v in self.values)
        if self.kind == CONSTANT:
            return f"{name}: {body}"
        tag = "@period" if self.kind == PERIODIC else "@table"
        return f"{name}: {body} {tag}"


def _sequence(kind: str, values: Iterable[RationalLike]) -> CoefficientSequence:
    return CoefficientSequence(kind, tuple(as_rational(v) for v in values))


@dataclass(frozen=True)
class CoefficientSpec:
    """The four coefficient sequences, queryable at any index n >= 0."""

    a: CoefficientSequence
    b: CoefficientSequence
    c: CoefficientSequence
    d: CoefficientSequence

    def __post_init__(self):
        for name in _NONZERO:
            seq = getattr(self, name)
            for i, v in enumerate(seq.values):
                if v == 0:
                    raise CoefficientError(f"{name} must be nonzero (entry {i} is 0)")
        lengths = {len(s.values) for s in self.sequences() if s.kind == TABULATED}
        if len(lengths) > 1:
            raise CoefficientError(f"tabulated sequences differ in length: {sorted(lengths)}")

    # -- constructors --------------------------------------------------------
    @classmethod
    def constant(cls, a: RationalLike, b: RationalLike, c: RationalLike, d: RationalLike):
        return cls(*(_sequence(CONSTANT, [v]) for v in (a, b, c, d)))

    @classmethod
    def periodic(cls, a: Sequence, b: Sequence, c: Sequence, d: Sequence):
        return cls(*(_sequence(PERIODIC, vs) for vs in (a, b, c, d)))

    @classmethod
    def tabulated(cls, a: Sequence, b: Sequence, c: Sequence, d: Sequence):
        return cls(*(_sequence(TABULATED, vs) for vs in (a, b, c, d)))

    # -- queries -------------------------------------------------------------
    def sequences(self) -> tuple[CoefficientSequence, ...]:
        return (self.a, self.b, self.c, self.d)

    def at(self, which: str, n: int) -> Fraction:
        if which not in NAMES:
            raise CoefficientError(f"unknown coefficient {which!r}")
        return getattr(self, which).at(n)

    @property
    def kind(self) -> str:
        kinds = {s.kind for s in self.sequences()}
        if TABULATED in kinds:
            return TABULATED
        if kinds == {CONSTANT}:
            return CONSTANT
        return PERIODIC

    @property
    def period(self) -> int | None:
        """Common period (lcm over the four sequences), None when tabulated."""
        periods = [s.period for s in self.sequences()]
        if any(p is None for p in periods):
            return None
        return math.lcm(*periods)

    @property
    def table_length(self) -> int | None:
        for s in self.sequences():
            if s.kind == TABULATED:
                return len(s.values)
        return None

    def constants(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """(a, b, c, d) for a constant spec."""
        if self.kind != CONSTANT:
            raise CoefficientError("spec is not constant")
        return tuple(s.values[0] for s in self.sequences())  # type: ignore[return-value]

    def to_text(self) -> str:
        return "\n".join(s.to_line(name) for name, s in zip(NAMES, self.sequences())) + "\n"


def coeff_at(spec: CoefficientSpec, which: str, n: int) -> Fraction:
    return spec.at(which, n)


def parse_coefficients(text: str) -> CoefficientSpec:
    """Parse the line-based coefficient format.

    One line per sequence::

        a: 1/2              # constant
        b: 1,2,3,4 @period
        c: 1,2,3 @table

    ``#`` starts a comment.  All of a, b, c, d must appear exactly once.
    """
    found: dict[str, CoefficientSequence] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, rest = line.partition(":")
        name = name.strip()
        if not sep or name not in NAMES:
            raise CoefficientError(f"line {lineno}: expected '<a|b|c|d>: values', got {raw!r}")
        if name in found:
            raise CoefficientError(f"line {lineno}: sequence {name} given twice")
        parts = rest.split()
        tag = None
        if parts and parts[-1].startswith("@"):
            tag = parts.pop()
        if not parts:
            raise CoefficientError(f"line {lineno}: no values for {name}")
        try:
            values = [as_rational(v.strip()) for v in " ".join(parts).split(",")]
        except ValueError as exc:
            raise CoefficientError(f"line {lineno}: {exc}") from None
        if tag is None:
            if len(values) != 1:
                raise CoefficientError(
                    f"line {lineno}: several values need an @period or @table tag"
                )
            kind = CONSTANT
        elif tag == "@period":
            kind = PERIODIC
        elif tag == "@table":
            kind = TABULATED
        else:
            raise CoefficientError(f"line {lineno}: unknown tag {tag!r}")
        found[name] = CoefficientSequence(kind, tuple(values))
    missing = [n for n in NAMES if n not in found]
    if missing:
        raise CoefficientError(f"missing sequences: {', '.join(missing)}")
    return CoefficientSpec(*(found[n] for n in NAMES))


def load_coefficients(path: str | Path) -> CoefficientSpec:
    return parse_coefficients(Path(path).read_text(encoding="utf-8"))


def parse_constants(text: str) -> CoefficientSpec:
    """Parse ``a=1,b=1/2,c=1,d=-1`` into a constant spec."""
    values: dict[str, Fraction] = {}
    for item in text.split(","):
        key, sep, val = item.partition("=")
        key = key.strip()
        if not sep or key not in NAMES:
            raise CoefficientError(f"expected a=..,b=..,c=..,d=.., got {text!r}")
        try:
            values[key] = as_rational(val.strip())
        except ValueError as exc:
            raise CoefficientError(f"{key}: {exc}") from None
    missing = [n for n in NAMES if n not in values]
    if missing:
        raise CoefficientError(f"missing constants: {', '.join(missing)}")
    return CoefficientSpec.constant(*(values[n] for n in NAMES))
