"""Acceptance criteria, all checked with exact equality.

Each criterion prints one line ``[PASS]`` or ``[FAIL]``.  Run with
``pytest tests/test_acceptance.py -s`` to see the lines inline, or as a
plain script: ``python3 tests/test_acceptance.py``.
"""
import random
import sys
import time
from fractions import Fraction as F

import pytest

from ratsys import closedform as cf
from ratsys.coeffs import CoefficientSpec
from ratsys.orbit import InitialState, iterate
from ratsys.periodicity import (
    check_period4_remark,
    detect_period,
    sample_period2,
    sample_period4,
    sample_remark,
)
from ratsys.reduction import orbit_seeds, reconstruct, reconstruct_fourstep, uv_from_orbit
from ratsys.symmetry import OPPOSITE, verify_symmetry
from ratsys.verification import (
    random_init,
    random_rational,
    random_tabulated,
    run_verify,
    sample_instance,
    trial_rng,
)

SEED = 20240601


def _verify(mode, trials, nmax, seed=SEED):
    result = run_verify(mode, trials, seed, nmax)
    detail = f"{result.passed}/{result.trials} instances"
    if result.failures:
        detail += "\n" + result.failures[0][1].render()
    return result.ok, detail


def _is_periodic(orbit, p):
    xs, ys = orbit.xs, orbit.ys
    return all(xs[k + p] == xs[k] and ys[k + p] == ys[k] for k in range(len(xs) - p))


def criterion_1():
    """general closed forms == iteration, 200 instances, n = 0..10"""
    start = time.perf_counter()
    ok, detail = _verify("general", 200, 10)
    elapsed = time.perf_counter() - start
    return ok and elapsed < 60, f"{detail}, {elapsed:.1f}s (limit 60s)"


def criterion_2():
    """uv_closed == uv_step iteration and the affine recurrences on orbits, 200 instances, n <= 25"""
    return _verify("uv", 200, 25)


def criterion_3():
    """two-step and four-step reconstruction == orbit, 100 instances, indices through 24"""
    last = 4 * 6
    bad = 0
    for trial in range(100):
        rng = trial_rng(SEED + 3, trial)
        spec, init, orbit = sample_instance(rng, lambda r: random_tabulated(r, last + 1), last)
        track = uv_from_orbit(orbit)
        seeds = orbit_seeds(init)
        for m in range(last + 3):  # X_m = x_{m-2}
            want = (orbit.x(m - 2), orbit.y(m - 2))
            if reconstruct(seeds, track, m) != want or reconstruct_fourstep(seeds, track, m) != want:
                bad += 1
                break
    return bad == 0, f"{100 - bad}/100 instances"


def criterion_4():
    """constant == general == iteration, and all sixteen unit sign patterns, n <= 6"""
    ok_c, detail_c = _verify("constant", 100, 6)
    ok_u, detail_u = _verify("unit16", 16 * 6, 6)
    return ok_c and ok_u, f"constant {detail_c}; unit16 {detail_u} (6 per pattern)"


def criterion_5():
    """period-4 closed forms == general == iteration, 100 specs, n <= 8"""
    return _verify("period4", 100, 8)


def criterion_6():
    """period-2 theorem: 100 constructed instances, 200 steps, plus the pinned witness"""
    rng = random.Random(SEED + 6)
    good = sum(_is_periodic(iterate(*sample_period2(rng, random_rational), 200), 2) for _ in range(100))
    spec = CoefficientSpec.constant(F(1, 2), 1, F(1, 2), 1)
    witness = iterate(spec, InitialState.of([1, F(1, 2), 1, 1, F(1, 2), 1]), 200)
    pinned = witness.complete and _is_periodic(witness, 2) and detect_period(witness, 8).detected == 2
    return good == 100 and pinned, f"{good}/100 instances, witness {'ok' if pinned else 'FAILED'}"


def criterion_7():
    """period-4 theorem: 100 constructed instances, 200 steps, plus the pinned witness"""
    rng = random.Random(SEED + 7)
    good = sum(_is_periodic(iterate(*sample_period4(rng, random_rational), 200), 4) for _ in range(100))
    spec = CoefficientSpec.constant(1, 1, 1, -1)
    witness = iterate(spec, InitialState.of([1, 2, -1, 1, -2, -1]), 200)
    pinned = (
        witness.complete
        and witness.xs[:4] == (1, 2, -1, -2)
        and _is_periodic(witness, 4)
        and detect_period(witness, 8).detected == 4
    )
    return good == 100 and pinned, f"{good}/100 instances, witness {'ok' if pinned else 'FAILED'}"


def criterion_8():
    """remark: a = b = c = 1, d = -1, negated seeds, free x_{-1}, y_{-1} are 4-periodic"""
    rng = random.Random(SEED + 8)
    good = 0
    for _ in range(100):
        spec, init = sample_remark(rng, random_rational)
        orbit = iterate(spec, init, 200)
        good += check_period4_remark(*spec.constants(), init) and orbit.complete and _is_periodic(orbit, 4)
    return good == 100, f"{good}/100 instances"


def criterion_9():
    """same-sign scaling is equivariant and keeps U, V; the opposite sign is not"""
    steps = 30
    ts = (F(2), F(1, 3), F(5, 7))
    good = 0
    opposite_failures = 0
    for trial in range(100):
        rng = trial_rng(SEED + 9, trial)
        spec, init, _ = sample_instance(rng, lambda r: random_tabulated(r, steps + 1), steps)
        good += all(verify_symmetry(spec, init, t, steps).ok for t in ts)
        opposite_failures += not verify_symmetry(spec, init, F(2), steps, convention=OPPOSITE).ok
    ok = good == 100 and opposite_failures >= 1
    return ok, f"{good}/100 instances x t in {{2, 1/3, 5/7}}; opposite sign fails on {opposite_failures}/100"


def _engineered(trial):
    """An instance whose first step divides by zero in the x- or y-equation."""
    rng = trial_rng(SEED + 10, trial)
    while True:
        init = random_init(rng)
        a, b, c, d = ([random_rational(rng) for _ in range(12)] for _ in range(4))
        if trial % 2 == 0:
            b[0] = -a[0] / (init.x_m2 * init.y_m1)
            eq = "x"
        else:
            d[0] = -c[0] / (init.y_m2 * init.x_m1)
            if a[0] + b[0] * init.x_m2 * init.y_m1 == 0:
                continue
            eq = "y"
        return CoefficientSpec.tabulated(a, b, c, d), init, eq


def criterion_10():
    """engineered forbidden-set instances: iteration stops at step 0, closed forms raise for 4n+j >= 1"""
    good = 0
    for trial in range(20):
        spec, init, eq = _engineered(trial)
        orbit = iterate(spec, init, 10)
        ok = orbit.forbidden is not None and orbit.forbidden.step == 0 and orbit.forbidden.reason == eq
        for m in range(1, 12):
            for comp in ("x", "y"):
                try:
                    cf.closed_general(spec, init, cf.ClosedFormQuery.at(m, comp))
                    ok = False
                except cf.DenominatorVanished as exc:
                    ok = ok and exc.step == 0 and exc.eq == eq
        good += ok
    return good == 20, f"{good}/20 instances"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def _report(number, fn):
    ok, detail = fn()
    title = fn.__doc__.strip()
    return ok, f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})"


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number, capsys):
    ok, line = _report(number, CRITERIA[number - 1])
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for number, fn in enumerate(CRITERIA, 1):
        ok, line = _report(number, fn)
        failed += not ok
        print(line, flush=True)
    sys.exit(1 if failed else 0)
