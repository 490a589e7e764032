from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from ratsys.coeffs import CoefficientSpec
from ratsys.orbit import ForbiddenSet, InitialState, iterate
from ratsys.reduction import uv_from_orbit
from ratsys.symmetry import (
    OPPOSITE,
    SAME,
    InvalidGroupParameter,
    ScalingAction,
    apply_scaling,
    verify_symmetry,
)
from ratsys.verification import random_tabulated, sample_instance, trial_rng

from conftest import ONES, UNIT, constant_specs, inits, small_rationals

nonzero_t = small_rationals()


def test_identity():
    assert apply_scaling(ONES, 1) == ONES
    init = InitialState.of([2, F(-1, 3), 5, 7, F(1, 2), -4])
    assert apply_scaling(init, F(1)) == init


def test_exponent_table():
    scaled = apply_scaling(ONES, 2)
    assert scaled.xs == (2, F(1, 2), 2)
    assert scaled.ys == (2, F(1, 2), 2)


def test_inverse():
    init = InitialState.of([2, F(-1, 3), 5, 7, F(1, 2), -4])
    assert apply_scaling(apply_scaling(init, 2), F(1, 2)) == init


def test_zero_parameter():
    with pytest.raises(InvalidGroupParameter):
        apply_scaling(ONES, 0)
    with pytest.raises(ValueError):
        ScalingAction(F(2), "sideways")


def test_unit_first_step():
    report = verify_symmetry(UNIT, ONES, 2, 1)
    assert report.ok
    scaled = iterate(UNIT, apply_scaling(ONES, 2), 1)
    assert scaled.x(1) == F(1, 4) == F(1, 2) * iterate(UNIT, ONES, 1).x(1)


def test_random_instance_three_fifths():
    spec, init, _ = sample_instance(trial_rng(9, 0), lambda r: random_tabulated(r, 21), 20)
    report = verify_symmetry(spec, init, F(3, 5), 20)
    assert report.ok and not report.mismatches


def test_identity_orbit_unchanged():
    spec, init, orbit = sample_instance(trial_rng(9, 1), lambda r: random_tabulated(r, 11), 10)
    assert iterate(spec, apply_scaling(init, 1), 10) == orbit


def test_requires_complete_orbit():
    with pytest.raises(ForbiddenSet):
        verify_symmetry(UNIT, InitialState.of([1, 1, 1, 1, -1, 1]), 2, 3)


def test_action_on_orbit_composes():
    orbit = iterate(UNIT, ONES, 6)
    a, b = ScalingAction(F(2)), ScalingAction(F(-3, 7))
    assert a.compose(b).on_orbit(orbit) == a.on_orbit(b.on_orbit(orbit))
    assert a.inverse().on_orbit(a.on_orbit(orbit)) == orbit
    with pytest.raises(ValueError):
        a.compose(ScalingAction(F(2), OPPOSITE))


def test_opposite_sign_is_not_a_symmetry():
    # the alternative convention scales y by t^{-(-1)^n}; it fails on a plain instance
    report = verify_symmetry(UNIT, ONES, 2, 4, convention=OPPOSITE)
    assert not report.ok
    assert report.mismatches


def test_opposite_sign_changes_invariants():
    orbit = iterate(UNIT, ONES, 6)
    moved = ScalingAction(F(2), OPPOSITE).on_orbit(orbit)
    assert uv_from_orbit(moved) != uv_from_orbit(orbit)
    kept = ScalingAction(F(2), SAME).on_orbit(orbit)
    assert uv_from_orbit(kept) == uv_from_orbit(orbit)


@settings(max_examples=40, deadline=None)
@given(inits(), nonzero_t, nonzero_t)
def test_group_laws(init, t1, t2):
    assert apply_scaling(apply_scaling(init, t1), t2) == apply_scaling(init, t1 * t2)
    assert apply_scaling(apply_scaling(init, t1), 1 / t1) == init


@settings(max_examples=40, deadline=None)
@given(constant_specs(), inits(), nonzero_t)
def test_equivariance(spec, init, t):
    orbit = iterate(spec, init, 15)
    scaled = iterate(spec, apply_scaling(init, t), 15)
    # the forbidden set is invariant too: both die at the same step or neither does
    assert (orbit.forbidden is None) == (scaled.forbidden is None)
    if orbit.complete:
        report = verify_symmetry(spec, init, t, 15)
        assert report.ok, report.mismatches
    else:
        assert orbit.forbidden.step == scaled.forbidden.step
        assert orbit.forbidden.reason == scaled.forbidden.reason
