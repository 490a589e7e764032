"""The scaling symmetry maps orbits to orbits.

Scaling x_n and y_n both by t^{(-1)^n} commutes with iteration and leaves
U_n, V_n alone.  Giving y the opposite exponent does not.
"""
from fractions import Fraction

from ratsys.coeffs import CoefficientSpec
from ratsys.orbit import InitialState, iterate
from ratsys.reduction import uv_from_orbit
from ratsys.symmetry import OPPOSITE, ScalingAction, verify_symmetry

spec = CoefficientSpec.periodic([1, "1/2"], [2], [1, 3], ["-1/3"])
init = InitialState.parse("1,2,3,1/2,1/3,4")
t = Fraction(5, 7)

same = verify_symmetry(spec, init, t, 20)
print(f"same-sign action, t={t}: equivariant={same.equivariant} invariants kept={same.invariants_preserved}")

opposite = verify_symmetry(spec, init, t, 20, convention=OPPOSITE)
print(f"opposite-sign action:      equivariant={opposite.equivariant}; first mismatch:")
print("   ", opposite.mismatches[0])

# Side by side for the first few terms
orbit = iterate(spec, init, 5)
action = ScalingAction(t)
scaled = iterate(spec, action.on_init(init), 5)
for n in orbit.indices():
    print(f"n={n:2d}  x_n={str(orbit.x(n)):>12}  scaled x_n={str(scaled.x(n)):>12}  ratio={scaled.x(n) / orbit.x(n)}")
print("U_n unchanged:", uv_from_orbit(orbit) == uv_from_orbit(scaled))
