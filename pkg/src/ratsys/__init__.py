"""Exact arithmetic for the third-order rational system

    x[n+1] = x[n-2] y[n-1] / (y[n] (a[n] + b[n] x[n-2] y[n-1]))
    y[n+1] = y[n-2] x[n-1] / (x[n] (c[n] + d[n] y[n-2] x[n-1]))

Orbits, the reduction to affine invariants U/V, closed-form solutions,
the scaling symmetry, and periodicity checks.  Everything is computed
over the rationals; there is no floating point anywhere in the core.
"""
from .coeffs import CoefficientSpec, parse_coefficients, load_coefficients, parse_constants
from .exact import format_rational, parse_rational
from .orbit import ForbiddenSet, InitialState, Orbit, iterate
from .reduction import InvariantTrack, reconstruct, uv_from_orbit, uv_iterate
from .closedform import ClosedFormQuery, DenominatorVanished, closed_value, evaluate
from .symmetry import ScalingAction, apply_scaling, verify_symmetry
from .periodicity import detect_period, period_report

__version__ = "0.1.0"

__all__ = [
    "CoefficientSpec",
    "parse_coefficients",
    "load_coefficients",
    "parse_constants",
    "format_rational",
    "parse_rational",
    "ForbiddenSet",
    "InitialState",
    "Orbit",
    "iterate",
    "InvariantTrack",
    "reconstruct",
    "uv_from_orbit",
    "uv_iterate",
    "ClosedFormQuery",
    "DenominatorVanished",
    "closed_value",
    "evaluate",
    "ScalingAction",
    "apply_scaling",
    "verify_symmetry",
    "detect_period",
    "period_report",
]
