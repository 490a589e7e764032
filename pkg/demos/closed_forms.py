"""Closed-form values against the iterated orbit.

Picks a random instance with tabulated coefficients, evaluates every
x_{4n+j}, y_{4n+j} from the closed forms, and compares with iteration.
Then it shows what happens on the forbidden set.
"""
from fractions import Fraction

from ratsys import closedform as cf
from ratsys.coeffs import CoefficientSpec
from ratsys.orbit import InitialState, iterate
from ratsys.verification import random_tabulated, sample_instance, trial_rng

N = 6
steps = 4 * N + 1
spec, init, orbit = sample_instance(trial_rng(42, 0), lambda r: random_tabulated(r, steps + 1), steps)
print("initial values:", init.to_text())

mismatches = 0
for m in range(-2, steps + 1):
    for comp in "xy":
        value = cf.closed_general(spec, init, cf.ClosedFormQuery.at(m, comp))
        mismatches += value != (orbit.x(m) if comp == "x" else orbit.y(m))
print(f"indices -2..{steps}, both components: {mismatches} mismatches")

x_last = orbit.x(steps)
print(f"x_{steps} has a {len(str(x_last.numerator))}-digit numerator")

# The constant-coefficient evaluator uses powers of ac and geometric sums.
a, b, c, d = Fraction(2, 3), Fraction(-1, 5), 3, Fraction(1, 4)
const = CoefficientSpec.constant(a, b, c, d)
init2 = InitialState.of([2, Fraction(1, 3), -1, 5, Fraction(7, 2), 1])
q = cf.ClosedFormQuery(n=10, j=1, component="y")
same = cf.closed_constant(a, b, c, d, init2, q) == iterate(const, init2, q.index).y(q.index)
print(f"y_{q.index} from the constant branch matches iteration: {same}")

# Engineered forbidden set: a_0 + b_0 x_{-2} y_{-1} = 1 + 1*1*(-1) = 0
unit = CoefficientSpec.constant(1, 1, 1, 1)
dead = InitialState.of([1, 1, 1, 1, -1, 1])
print("iteration:", iterate(unit, dead, 3).status_line())
try:
    cf.closed_general(unit, dead, cf.ClosedFormQuery.at(5, "x"))
except cf.DenominatorVanished as exc:
    print("closed form:", exc)
