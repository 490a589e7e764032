"""Invariants of the scaling symmetry and the linear recurrences they obey.

Indexing
--------
The invariant layer is indexed the way the shifted system
``x_{n+3} = x_n y_{n+1} / (y_{n+2}(a_n + b_n x_n y_{n+1}))`` is, i.e. with
the seeds at 0, 1, 2 rather than -2, -1, 0.  In orbit (seed at -2) indices
that means

    U_i = 1 / (x_{i-2} y_{i-1}),     V_i = 1 / (x_{i-1} y_{i-2}),

and with this alignment the coefficients enter unshifted:

    V_{i+2} = a_i U_i + b_i,         U_{i+2} = c_i V_i + d_i.

So ``U_2 = 1/(x_0 y_1)``, ``V_2 = 1/(x_1 y_0)``.  Reconstruction helpers
speak the same indexing: ``X_i = x_{i-2}`` and ``Y_i = y_{i-2}``.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from .coeffs import CoefficientSpec
from .exact import DivisionByZero, format_rational
from .orbit import InitialState, Orbit

ONE = Fraction(1)
ZERO = Fraction(0)


@dataclass(frozen=True)
class InvariantTrack:
    """U_i and V_i for i = 0 .. len-1."""

    us: tuple[Fraction, ...]
    vs: tuple[Fraction, ...]

    def __len__(self) -> int:
        return min(len(self.us), len(self.vs))


def seeds_from_init(init: InitialState) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """(U_0, U_1, V_0, V_1) straight from the six initial values."""
    return (
        1 / (init.x_m2 * init.y_m1),
        1 / (init.x_m1 * init.y_0),
        1 / (init.x_m1 * init.y_m2),
        1 / (init.x_0 * init.y_m1),
    )


def uv_from_orbit(orbit: Orbit) -> InvariantTrack:
    """U_i, V_i for every i whose defining orbit values are present."""
    if orbit.last < 1:
        raise ValueError("orbit needs at least indices -2..1")
    us, vs = [], []
    for i in range(orbit.last + 2):
        us.append(1 / (orbit.x(i - 2) * orbit.y(i - 1)))
        vs.append(1 / (orbit.x(i - 1) * orbit.y(i - 2)))
    return InvariantTrack(tuple(us), tuple(vs))


def uv_step(spec: CoefficientSpec, us, vs, n: int) -> tuple[Fraction, Fraction]:
    """(V_{n+2}, U_{n+2}) from U_n, V_n."""
    return spec.a.at(n) * us[n] + spec.b.at(n), spec.c.at(n) * vs[n] + spec.d.at(n)


def uv_iterate(spec: CoefficientSpec, u0, u1, v0, v1, length: int) -> InvariantTrack:
    """Run the two-step affine recurrence until ``length`` terms exist."""
    us = [Fraction(u0), Fraction(u1)]
    vs = [Fraction(v0), Fraction(v1)]
    n = 0
    while len(us) < length:
        v_next, u_next = uv_step(spec, us, vs, n)
        us.append(u_next)
        vs.append(v_next)
        n += 1
    return InvariantTrack(tuple(us[:length]), tuple(vs[:length]))


def four_step_u(spec: CoefficientSpec, u_n: Fraction, n: int) -> Fraction:
    """U_{n+4} = c_{n+2} a_n U_n + c_{n+2} b_n + d_{n+2}."""
    c2 = spec.c.at(n + 2)
    return c2 * spec.a.at(n) * u_n + c2 * spec.b.at(n) + spec.d.at(n + 2)


def four_step_v(spec: CoefficientSpec, v_n: Fraction, n: int) -> Fraction:
    """V_{n+4} = a_{n+2} c_n V_n + a_{n+2} d_n + b_{n+2}."""
    a2 = spec.a.at(n + 2)
    return a2 * spec.c.at(n) * v_n + a2 * spec.d.at(n) + spec.b.at(n + 2)


def _block(ratio, term, m: int) -> tuple[Fraction, Fraction]:
    # P = prod_{k<m} ratio(k);  S = sum_{l<m} term(l) prod_{l<k<m} ratio(k)
    suffix = ONE
    total = ZERO
    for l in range(m - 1, -1, -1):
        total += term(l) * suffix
        suffix *= ratio(l)
    return suffix, total


def u_block(spec: CoefficientSpec, j: int, m: int) -> tuple[Fraction, Fraction]:
    """Product and sum such that ``U_{4m+j} = U_j * P + S``."""
    a, b, c, d = spec.a.at, spec.b.at, spec.c.at, spec.d.at
    return _block(
        lambda k: a(4 * k + j) * c(4 * k + j + 2),
        lambda l: b(4 * l + j) * c(4 * l + j + 2) + d(4 * l + j + 2),
        m,
    )


def v_block(spec: CoefficientSpec, j: int, m: int) -> tuple[Fraction, Fraction]:
    """Product and sum such that ``V_{4m+j} = V_j * P + S``."""
    a, b, c, d = spec.a.at, spec.b.at, spec.c.at, spec.d.at
    return _block(
        lambda k: a(4 * k + j + 2) * c(4 * k + j),
        lambda l: a(4 * l + j + 2) * d(4 * l + j) + b(4 * l + j + 2),
        m,
    )


def uv_closed(spec: CoefficientSpec, u_j, v_j, n: int, j: int) -> tuple[Fraction, Fraction]:
    """(U_{4n+j}, V_{4n+j}) from the residue seeds U_j, V_j, j in 0..3."""
    if j not in (0, 1, 2, 3):
        raise ValueError(f"residue j must be in 0..3, got {j}")
    if n < 0:
        raise ValueError("n must be >= 0")
    pu, su = u_block(spec, j, n)
    pv, sv = v_block(spec, j, n)
    return u_j * pu + su, v_j * pv + sv


def _ratio(num: Fraction, den: Fraction, what: str) -> Fraction:
    if den == 0:
        raise DivisionByZero(f"{what} is zero")
    return num / den


def reconstruct(seeds, track: InvariantTrack, m: int) -> tuple[Fraction, Fraction]:
    """(X_m, Y_m) from X_0, X_1, Y_0, Y_1 and the invariants.

    Uses the two-step products
    ``X_{2n+j} = X_j prod_{i<n} U_{2i+j} / V_{2i+j+1}`` and
    ``Y_{2n+j} = Y_j prod_{i<n} V_{2i+j} / U_{2i+j+1}``.
    """
    x0, x1, y0, y1 = seeds
    if m < 0:
        raise ValueError("m must be >= 0")
    n, j = divmod(m, 2)
    x = x1 if j else x0
    y = y1 if j else y0
    us, vs = track.us, track.vs
    for i in range(n):
        x *= _ratio(us[2 * i + j], vs[2 * i + j + 1], f"V_{2 * i + j + 1}")
        y *= _ratio(vs[2 * i + j], us[2 * i + j + 1], f"U_{2 * i + j + 1}")
    return x, y


def reconstruct_fourstep(seeds, track: InvariantTrack, m: int) -> tuple[Fraction, Fraction]:
    """Same as :func:`reconstruct` but grouped four steps at a time.

    ``X_{4n+j} = X_j prod_{i<n} U_{4i+j} U_{4i+j+2} / (V_{4i+j+1} V_{4i+j+3})``
    for j = 0..3, with X_2, X_3 (and Y_2, Y_3) obtained from one two-step
    ratio first.
    """
    x0, x1, y0, y1 = seeds
    us, vs = track.us, track.vs
    if m < 0:
        raise ValueError("m must be >= 0")
    n, j = divmod(m, 4)
    if j < 2:
        x, y = (x0, y0) if j == 0 else (x1, y1)
    else:
        base = j - 2
        xb, yb = (x0, y0) if base == 0 else (x1, y1)
        x = xb * _ratio(us[base], vs[base + 1], f"V_{base + 1}")
        y = yb * _ratio(vs[base], us[base + 1], f"U_{base + 1}")
    for i in range(n):
        k = 4 * i + j
        x *= _ratio(us[k] * us[k + 2], vs[k + 1] * vs[k + 3], f"V_{k + 1} V_{k + 3}")
        y *= _ratio(vs[k] * vs[k + 2], us[k + 1] * us[k + 3], f"U_{k + 1} U_{k + 3}")
    return x, y


def orbit_seeds(init: InitialState) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """(X_0, X_1, Y_0, Y_1) = (x_{-2}, x_{-1}, y_{-2}, y_{-1})."""
    return init.x_m2, init.x_m1, init.y_m2, init.y_m1


def track_csv(track: InvariantTrack) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "U", "V"])
    for i in range(len(track)):
        writer.writerow([i, format_rational(track.us[i]), format_rational(track.vs[i])])
    return buf.getvalue()
