"""Randomised exact cross-checks: closed forms and invariants against direct
iteration, and the scaling action against iteration.

Instances are small rationals (numerators in [-9, 9] without 0,
denominators in [1, 9]); any instance whose orbit dies on the forbidden set
inside the checked depth is resampled.  Trial ``i`` of a run with seed ``S``
draws from its own generator seeded with ``(S, i)``, so results do not
depend on execution order.
"""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import closedform as cf
from .coeffs import CoefficientSpec
from .exact import format_rational
from .orbit import InitialState, Orbit, iterate
from .reduction import (
    four_step_u,
    four_step_v,
    orbit_seeds,
    reconstruct,
    reconstruct_fourstep,
    seeds_from_init,
    uv_closed,
    uv_from_orbit,
    uv_iterate,
    uv_step,
)
from .symmetry import verify_symmetry

MODES = ("general", "constant", "unit16", "period4", "uv", "symmetry")
MAX_RESAMPLE = 10_000


class ResampleExhausted(RuntimeError):
    pass


def trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(f"{seed}:{trial}")


def random_rational(rng: random.Random, bound: int = 9) -> Fraction:
    num = rng.choice([k for k in range(-bound, bound + 1) if k])
    return Fraction(num, rng.randint(1, bound))


def random_init(rng: random.Random) -> InitialState:
    return InitialState.of(random_rational(rng) for _ in range(6))


def random_constant(rng: random.Random) -> CoefficientSpec:
    return CoefficientSpec.constant(*(random_rational(rng) for _ in range(4)))


def random_period4(rng: random.Random) -> CoefficientSpec:
    return CoefficientSpec.periodic(*([random_rational(rng) for _ in range(4)] for _ in range(4)))


def random_tabulated(rng: random.Random, length: int) -> CoefficientSpec:
    return CoefficientSpec.tabulated(
        *([random_rational(rng) for _ in range(length)] for _ in range(4))
    )


def sample_instance(rng: random.Random, make_spec, steps: int) -> tuple[CoefficientSpec, InitialState, Orbit]:
    """Draw (spec, init) until the orbit survives ``steps`` steps."""
    for _ in range(MAX_RESAMPLE):
        spec = make_spec(rng)
        init = random_init(rng)
        orbit = iterate(spec, init, steps)
        if orbit.complete:
            return spec, init, orbit
    raise ResampleExhausted(f"no admissible instance in {MAX_RESAMPLE} draws")


def orbit_value(orbit: Orbit, m: int, component: str) -> Fraction:
    return orbit.x(m) if component == "x" else orbit.y(m)


@dataclass
class Counterexample:
    spec: CoefficientSpec
    init: InitialState
    what: str
    expected: object
    got: object

    def render(self) -> str:
        def fmt(v):
            return format_rational(v) if isinstance(v, Fraction) else str(v)

        lines = [
            f"counterexample: {self.what}",
            f"  expected={fmt(self.expected)} got={fmt(self.got)}",
            f"  --init={self.init.to_text()}",
        ]
        if self.spec.kind == "constant":
            a, b, c, d = (format_rational(v) for v in self.spec.constants())
            lines.append(f"  --const a={a},b={b},c={c},d={d}")
        else:
            lines.append("  coefficient file:")
            lines += [f"    {line}" for line in self.spec.to_text().splitlines()]
        return "\n".join(lines)


def _closed_queries(nmax: int):
    for n in range(nmax + 1):
        for j in cf.RESIDUES:
            for comp in ("x", "y"):
                yield n, j, comp


def check_general(spec, init, orbit, nmax: int) -> Counterexample | None:
    for n, j, comp in _closed_queries(nmax):
        q = cf.ClosedFormQuery(n, j, comp)
        got = cf.closed_general(spec, init, q)
        want = orbit_value(orbit, q.index, comp)
        if got != want:
            return Counterexample(spec, init, f"general {comp}[4*{n}{j:+d}]", want, got)
    return None


def check_constant(spec, init, orbit, nmax: int) -> Counterexample | None:
    a, b, c, d = spec.constants()
    for n, j, comp in _closed_queries(nmax):
        q = cf.ClosedFormQuery(n, j, comp)
        want = orbit_value(orbit, q.index, comp)
        for label, got in (
            ("constant", cf.closed_constant(a, b, c, d, init, q)),
            ("general", cf.closed_general(spec, init, q)),
        ):
            if got != want:
                return Counterexample(spec, init, f"{label} {comp}[4*{n}{j:+d}]", want, got)
    return None


def check_unit(spec, init, orbit, nmax: int) -> Counterexample | None:
    case = spec.constants()
    for n, j, comp in _closed_queries(nmax):
        q = cf.ClosedFormQuery(n, j, comp)
        want = orbit_value(orbit, q.index, comp)
        for label, got in (
            ("unit", cf.closed_unit(case, init, q)),
            ("constant", cf.closed_constant(*case, init, q)),
        ):
            if got != want:
                return Counterexample(spec, init, f"{label} {comp}[4*{n}{j:+d}]", want, got)
    return None


def check_period4(spec, init, orbit, nmax: int) -> Counterexample | None:
    for n, j, comp in _closed_queries(nmax):
        q = cf.ClosedFormQuery(n, j, comp)
        want = orbit_value(orbit, q.index, comp)
        for label, got in (
            ("period4", cf.closed_period4(spec, init, q)),
            ("general", cf.closed_general(spec, init, q)),
        ):
            if got != want:
                return Counterexample(spec, init, f"{label} {comp}[4*{n}{j:+d}]", want, got)
    return None


def check_uv(spec, init, orbit, nmax: int) -> Counterexample | None:
    track = uv_from_orbit(orbit)
    length = len(track)
    # the linear recurrences hold along the orbit
    for i in range(length - 2):
        v_next, u_next = uv_step(spec, track.us, track.vs, i)
        if v_next != track.vs[i + 2]:
            return Counterexample(spec, init, f"V_{i + 2} = a_{i} U_{i} + b_{i}", track.vs[i + 2], v_next)
        if u_next != track.us[i + 2]:
            return Counterexample(spec, init, f"U_{i + 2} = c_{i} V_{i} + d_{i}", track.us[i + 2], u_next)
    for i in range(length - 4):
        if four_step_u(spec, track.us[i], i) != track.us[i + 4]:
            return Counterexample(spec, init, f"four-step U_{i + 4}", track.us[i + 4],
                                  four_step_u(spec, track.us[i], i))
        if four_step_v(spec, track.vs[i], i) != track.vs[i + 4]:
            return Counterexample(spec, init, f"four-step V_{i + 4}", track.vs[i + 4],
                                  four_step_v(spec, track.vs[i], i))
    # block closed forms against the affine iteration from the same seeds
    iterated = uv_iterate(spec, *seeds_from_init(init), 4 * nmax + 4)
    for n in range(nmax + 1):
        for j in range(4):
            got = uv_closed(spec, iterated.us[j], iterated.vs[j], n, j)
            want = (iterated.us[4 * n + j], iterated.vs[4 * n + j])
            if got != want:
                return Counterexample(spec, init, f"(U, V)_{4 * n + j} closed", want, got)
    # rebuilding the orbit from the invariants
    seeds = orbit_seeds(init)
    for m in range(length + 1):
        want = (orbit.x(m - 2), orbit.y(m - 2))
        for label, rebuild in (("two-step", reconstruct), ("four-step", reconstruct_fourstep)):
            got = rebuild(seeds, track, m)
            if got != want:
                return Counterexample(spec, init, f"{label} reconstruction of index {m - 2}", want, got)
    return None


def _depth(nmax: int) -> int:
    # the largest index addressed is 4*nmax + 1, so the orbit needs 4*nmax + 1 steps
    return 4 * nmax + 1


def run_trial(mode: str, seed: int, trial: int, nmax: int, t: Fraction = Fraction(2)) -> Counterexample | None:
    rng = trial_rng(seed, trial)
    steps = _depth(nmax)
    if mode == "general":
        spec, init, orbit = sample_instance(rng, lambda r: random_tabulated(r, steps + 1), steps)
        return check_general(spec, init, orbit, nmax)
    if mode == "constant":
        spec, init, orbit = sample_instance(rng, random_constant, steps)
        return check_constant(spec, init, orbit, nmax)
    if mode == "unit16":
        case = cf.UNIT_CASES[trial % len(cf.UNIT_CASES)]
        spec, init, orbit = sample_instance(rng, lambda r: CoefficientSpec.constant(*case), steps)
        return check_unit(spec, init, orbit, nmax)
    if mode == "period4":
        spec, init, orbit = sample_instance(rng, random_period4, steps)
        return check_period4(spec, init, orbit, nmax)
    if mode == "uv":
        spec, init, orbit = sample_instance(rng, lambda r: random_tabulated(r, steps + 4), steps + 2)
        return check_uv(spec, init, orbit, nmax)
    if mode == "symmetry":
        spec, init, orbit = sample_instance(rng, lambda r: random_tabulated(r, steps + 1), steps)
        report = verify_symmetry(spec, init, t, steps)
        if not report.ok:
            return Counterexample(spec, init, f"symmetry t={format_rational(report.t)}",
                                  "equivariant", "; ".join(report.mismatches[:3]))
        return None
    raise ValueError(f"unknown mode {mode!r}")


def _run_trial_args(args):
    return run_trial(*args)


@dataclass
class VerifyResult:
    mode: str
    trials: int
    failures: list[tuple[int, Counterexample]] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return self.trials - len(self.failures)

    @property
    def ok(self) -> bool:
        return not self.failures


def run_verify(mode: str, trials: int, seed: int, nmax: int, t: Fraction = Fraction(2),
               jobs: int = 1) -> VerifyResult:
    """Run ``trials`` independent trials; results are ordered by trial index."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    args = [(mode, seed, i, nmax, t) for i in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_trial_args, args))
    else:
        outcomes = [run_trial(*a) for a in args]
    result = VerifyResult(mode, trials)
    result.failures = [(i, ce) for i, ce in enumerate(outcomes) if ce is not None]
    return result
