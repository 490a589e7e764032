"""Explicit solutions in terms of the six initial values.

Every solution index m >= -2 is addressed as ``m = 4n + j`` with
``j in {-2, -1, 0, 1}``.  Each of the eight (component, j) formulas is a
prefactor in the initial values times a product over blocks s = 0..n-1 of
ratios of *block factors*.  A block factor is one of eight families (U or V,
residue 0..3) evaluated at a block index q:

    family with residue 0 or 1:   P(q) + z * S(q)
    family with residue 2 or 3:   lead * P(q) + (slope * P(q) + S(q)) * w

where P(q) is a product of q coefficient products and S(q) the matching
nested sum (see :func:`ratsys.reduction.u_block`).  z and w are cross
products of initial values, and lead/slope are a_0, b_0, ... .  A block
factor equals the invariant U_{4q+r} or V_{4q+r} times a fixed nonzero
cross product, so it vanishes exactly when the orbit hits the forbidden set.

The branches differ only in how P and S are computed:

* general:   explicit products and nested sums over the coefficient sequences
* constant:  powers (ac)^q and closed geometric sums
* period4:   the same with residue products (a_0 c_2)^q, (a_3 c_1)^q, ...
* unit:      simplified formulas for (1,1,1,1) and (1,-1,1,-1)
             written out with linear terms 1 + k*z; the other fourteen sign
             patterns go through the constant branch.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Callable

from .coeffs import CONSTANT, CoefficientSpec
from .orbit import InitialState, X_EQUATION, Y_EQUATION
from .reduction import u_block, v_block

GENERAL = "general"
CONSTANT_BRANCH = "constant"
UNIT = "unit"
PERIOD4 = "period4"
BRANCHES = (GENERAL, CONSTANT_BRANCH, UNIT, PERIOD4)

RESIDUES = (-2, -1, 0, 1)
U, V = "U", "V"


class DenominatorVanished(ArithmeticError):
    """A block factor of a closed form evaluated to zero.

    ``s`` is the block index of the vanishing factor, ``invariant`` names
    the invariant that is zero (``"V_6"``), and ``step``/``eq`` give the
    matching forbidden-set step of the orbit.
    """

    def __init__(self, branch: str, s: int, invariant: str, step: int, eq: str):
        self.branch = branch
        self.s = s
        self.invariant = invariant
        self.step = step
        self.eq = eq
        super().__init__(
            f"{branch} closed form: block factor for {invariant} vanished at s={s} "
            f"(forbidden set, step {step}, {eq}-equation)"
        )


class BranchMismatch(ValueError):
    """The coefficient spec does not fit the requested branch."""


@dataclass(frozen=True)
class ClosedFormQuery:
    n: int
    j: int
    component: str
    branch: str = GENERAL

    def __post_init__(self):
        if self.j not in RESIDUES:
            raise ValueError(f"residue j must be one of {RESIDUES}, got {self.j}")
        if self.n < 0:
            raise ValueError("block index n must be >= 0")
        if self.component not in ("x", "y"):
            raise ValueError(f"component must be 'x' or 'y', got {self.component!r}")
        if self.branch not in BRANCHES:
            raise ValueError(f"unknown branch {self.branch!r}")

    @property
    def index(self) -> int:
        return 4 * self.n + self.j

    @classmethod
    def at(cls, m: int, component: str, branch: str = GENERAL) -> "ClosedFormQuery":
        n, j = split_index(m)
        return cls(n, j, component, branch)


def split_index(m: int) -> tuple[int, int]:
    """m -> (n, j) with m = 4n + j and j in {-2, -1, 0, 1}."""
    if m < -2:
        raise ValueError(f"solution indices start at -2, got {m}")
    n = (m + 2) // 4
    return n, m - 4 * n


# ---------------------------------------------------------------------------
# block factors
# ---------------------------------------------------------------------------
class _Factors:
    branch = GENERAL

    def __init__(self, spec: CoefficientSpec, init: InitialState):
        self.spec = spec
        self.init = init
        i = init
        # cross products that turn U_r, V_r into block factors
        self._z = {
            (U, 0): i.x_m2 * i.y_m1,
            (U, 1): i.x_m1 * i.y_0,
            (V, 0): i.x_m1 * i.y_m2,
            (V, 1): i.x_0 * i.y_m1,
        }
        # (lead, slope, w) per family; looked up lazily so that queries at
        # small indices do not need coefficients they never use
        self._lead = {
            (U, 2): (spec.c, spec.d, 0, i.x_m1 * i.y_m2),
            (U, 3): (spec.c, spec.d, 1, i.x_0 * i.y_m1),
            (V, 2): (spec.a, spec.b, 0, i.x_m2 * i.y_m1),
            (V, 3): (spec.a, spec.b, 1, i.x_m1 * i.y_0),
        }
        self._cache: dict[tuple[str, int, int], Fraction] = {}

    def block(self, kind: str, r: int, q: int) -> tuple[Fraction, Fraction]:
        return (u_block if kind == U else v_block)(self.spec, r, q)

    def factor(self, kind: str, r: int, q: int) -> Fraction:
        key = (kind, r, q)
        value = self._cache.get(key)
        if value is None:
            p, s = self.block(kind, r, q)
            if r < 2:
                value = p + self._z[kind, r] * s
            else:
                lead_seq, slope_seq, k, w = self._lead[kind, r]
                lead, slope = lead_seq.at(k), slope_seq.at(k)
                value = lead * p + (slope * p + s) * w
            self._cache[key] = value
        return value

    def guard(self, m: int) -> None:
        """Raise if the orbit through index m would meet the forbidden set.

        Step k divides by a block factor proportional to V_{k+2} (x-equation)
        and then one proportional to U_{k+2} (y-equation).
        """
        for i in range(2, m + 2):
            q, r = divmod(i, 4)
            for kind, eq in ((V, X_EQUATION), (U, Y_EQUATION)):
                if self.factor(kind, r, q) == 0:
                    raise DenominatorVanished(self.branch, q, f"{kind}_{i}", i - 2, eq)


def _geometric(ratio: Fraction, q: int) -> Fraction:
    """sum_{l<q} ratio**l in closed form."""
    if ratio == 1:
        return Fraction(q)
    return (ratio**q - 1) / (ratio - 1)


class _ConstantFactors(_Factors):
    branch = CONSTANT_BRANCH

    def __init__(self, spec: CoefficientSpec, init: InitialState):
        super().__init__(spec, init)
        a, b, c, d = spec.constants()
        self._ac = a * c
        self._term = {U: b * c + d, V: a * d + b}

    def block(self, kind, r, q):
        return self._ac**q, self._term[kind] * _geometric(self._ac, q)


class _Period4Factors(_Factors):
    branch = PERIOD4

    def __init__(self, spec: CoefficientSpec, init: InitialState):
        super().__init__(spec, init)
        a, b, c, d = ([s.at(k) for k in range(4)] for s in spec.sequences())
        # every subscript 4k + r collapses to r, and 4k + r + 2 to (r + 2) mod 4
        self._ratio = {}
        self._term = {}
        for r in range(4):
            r2 = (r + 2) % 4
            self._ratio[U, r] = a[r] * c[r2]
            self._term[U, r] = b[r] * c[r2] + d[r2]
            self._ratio[V, r] = a[r2] * c[r]
            self._term[V, r] = a[r2] * d[r] + b[r2]

    def block(self, kind, r, q):
        ratio = self._ratio[kind, r]
        return ratio**q, self._term[kind, r] * _geometric(ratio, q)


# ---------------------------------------------------------------------------
# the eight solution formulas
# ---------------------------------------------------------------------------
# Each formula: prefactor(init, n, F) and two ratios per block s, given as
# ((kind, residue, shift), (kind, residue, shift)); shift 1 means block s+1.
_Ratio = tuple[tuple[str, int, int], tuple[str, int, int]]

_FORMULAS: dict[tuple[str, int], tuple[Callable, tuple[_Ratio, _Ratio]]] = {
    ("x", -2): (
        lambda i, n, F: i.x_0**n * i.y_0**n / (i.x_m2 ** (n - 1) * i.y_m2**n),
        (((U, 0, 0), (V, 1, 0)), ((U, 2, 0), (V, 3, 0))),
    ),
    ("y", -2): (
        lambda i, n, F: i.x_0**n * i.y_0**n / (i.x_m2**n * i.y_m2 ** (n - 1)),
        (((V, 0, 0), (U, 1, 0)), ((V, 2, 0), (U, 3, 0))),
    ),
    ("x", -1): (
        lambda i, n, F: i.x_m1 * i.x_m2**n * i.y_m2**n / (i.x_0**n * i.y_0**n),
        (((U, 1, 0), (V, 2, 0)), ((U, 3, 0), (V, 0, 1))),
    ),
    ("y", -1): (
        lambda i, n, F: i.y_m1 * i.x_m2**n * i.y_m2**n / (i.x_0**n * i.y_0**n),
        (((V, 1, 0), (U, 2, 0)), ((V, 3, 0), (U, 0, 1))),
    ),
    ("x", 0): (
        lambda i, n, F: i.x_0 ** (n + 1) * i.y_0**n / (i.x_m2**n * i.y_m2**n),
        (((U, 2, 0), (V, 3, 0)), ((U, 0, 1), (V, 1, 1))),
    ),
    ("y", 0): (
        lambda i, n, F: i.x_0**n * i.y_0 ** (n + 1) / (i.x_m2**n * i.y_m2**n),
        (((V, 2, 0), (U, 3, 0)), ((V, 0, 1), (U, 1, 1))),
    ),
    # the trailing 1/(a_0 + b_0 x_{-2} y_{-1}) is the block factor V2 at s = 0
    ("x", 1): (
        lambda i, n, F: i.x_m2 ** (n + 1) * i.y_m2**n * i.y_m1
        / (i.x_0**n * i.y_0 ** (n + 1) * F.factor(V, 2, 0)),
        (((U, 3, 0), (V, 0, 1)), ((U, 1, 1), (V, 2, 1))),
    ),
    ("y", 1): (
        lambda i, n, F: i.x_m2**n * i.y_m2 ** (n + 1) * i.x_m1
        / (i.x_0 ** (n + 1) * i.y_0**n * F.factor(U, 2, 0)),
        (((V, 3, 0), (U, 0, 1)), ((V, 1, 1), (U, 2, 1))),
    ),
}


def _evaluate(F: _Factors, q: ClosedFormQuery) -> Fraction:
    F.guard(q.index)
    prefactor, ratios = _FORMULAS[q.component, q.j]
    value = prefactor(F.init, q.n, F)
    for s in range(q.n):
        for (nk, nr, ns), (dk, dr, ds) in ratios:
            value *= F.factor(nk, nr, s + ns) / F.factor(dk, dr, s + ds)
    return value


# ---------------------------------------------------------------------------
# public evaluators
# ---------------------------------------------------------------------------
@lru_cache(maxsize=32)
def _factors(cls: type, spec: CoefficientSpec, init: InitialState) -> _Factors:
    # queries against the same instance share their block factors
    return cls(spec, init)


def closed_general(spec: CoefficientSpec, init: InitialState, q: ClosedFormQuery) -> Fraction:
    """x_{4n+j} or y_{4n+j} from the nonautonomous formulas."""
    return _evaluate(_factors(_Factors, spec, init), q)


def closed_constant(a, b, c, d, init: InitialState, q: ClosedFormQuery) -> Fraction:
    """Constant coefficients: powers of ac and geometric sums."""
    spec = CoefficientSpec.constant(a, b, c, d)
    return _evaluate(_factors(_ConstantFactors, spec, init), q)


def closed_period4(spec: CoefficientSpec, init: InitialState, q: ClosedFormQuery) -> Fraction:
    """Coefficients of period 4 (any period dividing 4 is accepted)."""
    period = spec.period
    if period is None or 4 % period:
        raise BranchMismatch(f"period-4 branch needs a period dividing 4, got {period}")
    return _evaluate(_factors(_Period4Factors, spec, init), q)


# -- unit coefficients ------------------------------------------------------
SIMPLIFIED_UNIT_CASES = ((1, 1, 1, 1), (1, -1, 1, -1))
UNIT_CASES = tuple(
    (a, b, c, d) for a in (1, -1) for b in (1, -1) for c in (1, -1) for d in (1, -1)
)

# Linear terms 1 + sign*k(s)*cross with k(s) one of 2s, 2s+1, 2s+2, 2s+3.
# Cross products: "m2m1" = x_{-2}y_{-1}, "m1m0" = x_{-1}y_0,
# "m1m2" = x_{-1}y_{-2}, "0m1" = x_0 y_{-1}.
_UNIT_TERMS: dict[tuple[str, int], tuple[tuple[int, str], ...]] = {
    # (offset in k = 2s + offset, cross) for num1, den1, num2, den2
    ("x", -2): ((0, "m2m1"), (0, "0m1"), (1, "m1m2"), (1, "m1m0")),
    ("x", -1): ((0, "m1m0"), (1, "m2m1"), (1, "0m1"), (2, "m1m2")),
    ("x", 0): ((1, "m1m2"), (1, "m1m0"), (2, "m2m1"), (2, "0m1")),
    ("x", 1): ((1, "0m1"), (2, "m1m2"), (2, "m1m0"), (3, "m2m1")),
    ("y", -2): ((0, "m1m2"), (0, "m1m0"), (1, "m2m1"), (1, "0m1")),
    ("y", -1): ((0, "0m1"), (1, "m1m2"), (1, "m1m0"), (2, "m2m1")),
    ("y", 0): ((1, "m2m1"), (1, "0m1"), (2, "m1m2"), (2, "m1m0")),
    ("y", 1): ((1, "m1m0"), (2, "m2m1"), (2, "0m1"), (3, "m1m2")),
}


def _closed_unit_simplified(sign: int, init: InitialState, q: ClosedFormQuery) -> Fraction:
    i = init
    cross = {
        "m2m1": i.x_m2 * i.y_m1,
        "m1m0": i.x_m1 * i.y_0,
        "m1m2": i.x_m1 * i.y_m2,
        "0m1": i.x_0 * i.y_m1,
    }
    n, j = q.n, q.j
    if q.component == "x":
        if j == -2:
            prefix = i.x_0**n * i.y_0**n / (i.y_m2**n * i.x_m2 ** (n - 1))
        elif j == -1:
            prefix = i.x_m1 * i.x_m2**n * i.y_m2**n / (i.x_0**n * i.y_0**n)
        elif j == 0:
            prefix = i.x_0 ** (n + 1) * i.y_0**n / (i.x_m2**n * i.y_m2**n)
        else:
            prefix = i.x_m2 ** (n + 1) * i.y_m2**n * i.y_m1 / (
                i.x_0**n * i.y_0 ** (n + 1) * (1 + sign * cross["m2m1"])
            )
    else:
        if j == -2:
            prefix = i.x_0**n * i.y_0**n / (i.x_m2**n * i.y_m2 ** (n - 1))
        elif j == -1:
            prefix = i.x_m2**n * i.y_m2**n * i.y_m1 / (i.x_0**n * i.y_0**n)
        elif j == 0:
            prefix = i.x_0**n * i.y_0 ** (n + 1) / (i.x_m2**n * i.y_m2**n)
        else:
            prefix = i.x_m1 * i.x_m2**n * i.y_m2 ** (n + 1) / (
                i.x_0 ** (n + 1) * i.y_0**n * (1 + sign * cross["m1m2"])
            )
    terms = _UNIT_TERMS[q.component, q.j]
    value = prefix
    for s in range(n):
        num1, den1, num2, den2 = (1 + sign * (2 * s + off) * cross[name] for off, name in terms)
        value *= num1 / den1 * num2 / den2
    return value


def closed_unit(case, init: InitialState, q: ClosedFormQuery) -> Fraction:
    """Coefficients a, b, c, d each +1 or -1.

    The cases (1,1,1,1) and (1,-1,1,-1) use their simplified
    formulas; every other sign pattern is the constant branch evaluated at
    those values.
    """
    case = tuple(int(v) for v in case)
    if case not in UNIT_CASES:
        raise BranchMismatch(f"unit branch needs a, b, c, d in {{1, -1}}, got {case}")
    spec = CoefficientSpec.constant(*case)
    if case not in SIMPLIFIED_UNIT_CASES:
        return closed_constant(*case, init, q)
    F = _ConstantFactors(spec, init)
    F.branch = UNIT
    F.guard(q.index)
    return _closed_unit_simplified(case[1], init, q)


def choose_branch(spec: CoefficientSpec) -> str:
    """Most specific branch that applies to ``spec``."""
    if spec.kind == CONSTANT:
        if all(v in (1, -1) for v in spec.constants()):
            return UNIT
        return CONSTANT_BRANCH
    period = spec.period
    if period is not None and 4 % period == 0:
        return PERIOD4
    return GENERAL


def evaluate(spec: CoefficientSpec, init: InitialState, q: ClosedFormQuery) -> Fraction:
    """Dispatch on ``q.branch``."""
    if q.branch == GENERAL:
        return closed_general(spec, init, q)
    if q.branch == PERIOD4:
        return closed_period4(spec, init, q)
    if spec.kind != CONSTANT:
        raise BranchMismatch(f"{q.branch} branch needs constant coefficients")
    if q.branch == UNIT:
        return closed_unit(spec.constants(), init, q)
    return closed_constant(*spec.constants(), init, q)


def closed_value(spec: CoefficientSpec, init: InitialState, m: int, component: str,
                 branch: str | None = None) -> Fraction:
    """x_m or y_m for an absolute index m >= -2."""
    return evaluate(spec, init, ClosedFormQuery.at(m, component, branch or choose_branch(spec)))
