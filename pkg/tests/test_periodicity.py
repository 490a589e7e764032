import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from ratsys.coeffs import CoefficientSpec
from ratsys.orbit import InitialState, Orbit, iterate
from ratsys.periodicity import (
    ConditionUndefined,
    InsufficientWindow,
    PeriodReport,
    check_period2_conditions,
    check_period4_conditions,
    check_period4_remark,
    detect_period,
    period_report,
    sample_period2,
    sample_period4,
    sample_remark,
    theorem_conditions,
)

from conftest import ONES, UNIT

P2_INIT = InitialState.of([1, F(1, 2), 1, 1, F(1, 2), 1])
P2 = (F(1, 2), 1, F(1, 2), 1)
P4_INIT = InitialState.of([1, 2, -1, 1, -2, -1])
P4 = (1, 1, 1, -1)


def test_period2_conditions():
    assert check_period2_conditions(*P2, P2_INIT)
    assert not check_period2_conditions(*P2, InitialState.of([1, F(1, 2), 1, 1, 1, 1]))
    # a = 1 forces x_{-1} y_{-2} = 0, impossible with nonzero seeds
    assert not check_period2_conditions(1, 1, 1, 1, ONES)
    with pytest.raises(ConditionUndefined):
        check_period2_conditions(1, 0, 1, 0, ONES)


def test_period4_conditions():
    assert check_period4_conditions(*P4, P4_INIT)
    assert not check_period4_conditions(1, 1, 1, 1, P4_INIT)
    not_negated = InitialState.of([1, 2, 1, 1, -2, -1])
    assert not check_period4_conditions(*P4, not_negated)
    with pytest.raises(ConditionUndefined):
        check_period4_conditions(1, 0, 1, 0, P4_INIT)


def test_remark_conditions():
    init = InitialState.of([3, F(7, 3), -3, F(1, 2), -5, F(-1, 2)])
    assert check_period4_remark(*P4, init)
    assert not check_period4_remark(F(1, 2), 1, 1, -1, init)
    assert not check_period4_remark(1, 1, 1, 1, init)
    # b = 0 is simply false here, no division involved
    assert not check_period4_remark(1, 0, 1, -1, init)


def test_detect_period2_witness():
    report = detect_period(iterate(CoefficientSpec.constant(*P2), P2_INIT, 40), 8)
    assert report.detected == 2
    assert report.window == 43


def test_detect_period4_witness():
    orbit = iterate(CoefficientSpec.constant(*P4), P4_INIT, 40)
    assert detect_period(orbit, 8).detected == 4
    assert orbit.xs[:4] == (1, 2, -1, -2)
    assert orbit.x(2) == 1 and orbit.x(3) == 2


def test_detect_none_on_unit_orbit():
    orbit = iterate(UNIT, ONES, 40)
    assert detect_period(orbit, 8).detected is None


def test_detect_fixed_point():
    # x = y = 1 is fixed when a + b = 1 and c + d = 1
    orbit = iterate(CoefficientSpec.constant(F(1, 2), F(1, 2), 2, -1), ONES, 30)
    assert detect_period(orbit, 8).detected == 1


def test_window_requirements():
    orbit = iterate(UNIT, ONES, 20)
    with pytest.raises(InsufficientWindow):
        detect_period(orbit, 8)
    assert detect_period(orbit, 8, min_window=2).detected is None
    dead = iterate(UNIT, InitialState.of([1, 1, 1, 1, -1, 1]), 40)
    with pytest.raises(InsufficientWindow):
        detect_period(dead, 2)
    with pytest.raises(ValueError):
        detect_period(orbit, 0)


def test_theorem_conditions_kinds():
    assert theorem_conditions(CoefficientSpec.constant(*P2), P2_INIT) == {
        "period2": True, "period4": False, "remark": False,
    }
    assert theorem_conditions(CoefficientSpec.constant(1, 0, 1, 0), ONES) == {
        "period2": None, "period4": None, "remark": False,
    }
    periodic = CoefficientSpec.periodic([1, 2], [1], [1], [1])
    assert not any(theorem_conditions(periodic, ONES).values())


def test_report_lines():
    assert period_report(CoefficientSpec.constant(*P2), P2_INIT, 40, 8).line() == (
        "period=2 thm2=true thm4=false remark=false"
    )
    assert period_report(CoefficientSpec.constant(*P4), P4_INIT, 40, 8).line() == (
        "period=4 thm2=false thm4=true remark=true"
    )
    assert period_report(UNIT, ONES, 40, 8).line().startswith("period=none ")
    assert PeriodReport(None, 0, {"period2": None}).line() == (
        "period=none thm2=false thm4=false remark=false"
    )


@pytest.mark.parametrize("seed", range(10))
def test_samplers_meet_hypotheses(seed):
    rng = random.Random(seed)
    spec, init = sample_period2(rng)
    assert check_period2_conditions(*spec.constants(), init)
    spec, init = sample_period4(rng)
    assert check_period4_conditions(*spec.constants(), init)
    spec, init = sample_remark(rng)
    assert check_period4_remark(*spec.constants(), init)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32))
def test_theorem_soundness(seed):
    rng = random.Random(seed)
    for sampler, p in ((sample_period2, 2), (sample_period4, 4), (sample_remark, 4)):
        spec, init = sampler(rng)
        report = period_report(spec, init, 60, 8)
        assert report.detected is not None and p % report.detected == 0


def _orbit_from(xs, ys):
    return Orbit(tuple(map(F, xs)), tuple(map(F, ys)), len(xs) - 3)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.lists(st.integers(1, 4), min_size=6, max_size=6), st.integers(0, 1))
def test_minimality(p, seeds, perturb):
    # build a sequence of exact period p (or eventually broken), then check the detector
    xs = [seeds[i % p] for i in range(30)]
    ys = [seeds[(i + 1) % p] for i in range(30)]
    if perturb:
        xs[-1] += 100
    report = detect_period(_orbit_from(xs, ys), 8)
    if report.detected is not None:
        q = report.detected
        assert all(xs[i + q] == xs[i] and ys[i + q] == ys[i] for i in range(30 - q))
        for smaller in range(1, q):
            assert not all(xs[i + smaller] == xs[i] and ys[i + smaller] == ys[i] for i in range(30 - smaller))
    if not perturb:
        assert report.detected is not None and p % report.detected == 0
