from fractions import Fraction

import pytest
from hypothesis import strategies as st

from ratsys.coeffs import CoefficientSpec
from ratsys.orbit import InitialState

ONES = InitialState.of([1] * 6)
UNIT = CoefficientSpec.constant(1, 1, 1, 1)


def small_rationals(bound=9):
    nums = st.integers(-bound, bound).filter(bool)
    return st.builds(Fraction, nums, st.integers(1, bound))


def inits():
    return st.lists(small_rationals(), min_size=6, max_size=6).map(InitialState.of)


def constant_specs():
    return st.tuples(*[small_rationals()] * 4).map(lambda v: CoefficientSpec.constant(*v))


def naive_orbit(coef, xs, ys, steps):
    """Plain-list iteration, kept separate from the library on purpose.

    coef(n) returns (a, b, c, d); xs and ys hold the three seeds each.
    Returns None if a denominator vanishes.
    """
    xs, ys = list(xs), list(ys)
    for n in range(steps):
        a, b, c, d = coef(n)
        k = n + 2  # list position of index n
        dx = ys[k] * (a + b * xs[k - 2] * ys[k - 1])
        dy = xs[k] * (c + d * ys[k - 2] * xs[k - 1])
        if dx == 0 or dy == 0:
            return None
        xs.append(xs[k - 2] * ys[k - 1] / dx)
        ys.append(ys[k - 2] * xs[k - 1] / dy)
    return xs, ys


@pytest.fixture
def ones():
    return ONES


@pytest.fixture
def unit():
    return UNIT
