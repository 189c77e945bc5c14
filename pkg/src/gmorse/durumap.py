"""Map from one-dimensional Morse dynamics to a planar isotropic oscillator.

With parabolic coordinates ``u**2 + v**2 = rho**2 = exp(-alpha x)`` and the
parametric time ``dt = 4 / (alpha**2 rho**2) ds`` the Morse constraint
``H - E = 0`` becomes

    (pu**2 + pv**2) / 2m + m Omega**2 rho**2 / 2 - pseudo_energy = 0

with ``Omega**2 = 8 v1 / (m alpha**2)``, ``pseudo_energy = 4 v2 / alpha**2`` and
the angular momentum ``u pv - v pu = hbar * ell`` fixed by the Morse energy,
``ell = 2 sqrt(-2 m E) / (alpha hbar)``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import cumulative_simpson, solve_ivp

from .potential import eval_potential, potential_derivative


@dataclass(frozen=True)
class OscillatorChart:
    omega: complex
    pseudo_energy: complex
    centrifugal: complex
    time_factor_scale: complex
    mass: float
    hbar: float
    energy: complex

    @property
    def is_real(self):
        return self.omega.imag == 0 and self.omega.real > 0


def build_chart(params, E=0.0):
    """Oscillator constants for the Morse model `params` at reference energy `E`."""
    a2 = params.alpha * params.alpha
    m = params.mass
    E = complex(E)
    return OscillatorChart(
        omega=complex(np.sqrt(8 * params.v1 / (m * a2))),
        pseudo_energy=4 * params.v2 / a2,
        centrifugal=complex(2 * np.sqrt(-2 * m * E) / (params.alpha * params.hbar)),
        time_factor_scale=4 / a2,
        mass=m,
        hbar=params.hbar,
        energy=E,
    )


@dataclass(frozen=True)
class PhasePoint:
    """A point known on both sides of the map.

    ``(x, px)`` lives on the Morse side, ``(u, v, pu, pv)`` on the oscillator
    side. ``s`` is the parametric time and ``t`` the physical time.
    """

    x: float = math.nan
    px: float = math.nan
    u: float = math.nan
    v: float = math.nan
    pu: float = math.nan
    pv: float = math.nan
    s: float = 0.0
    t: float = 0.0


class SingularPointError(ValueError):
    """The oscillator point sits at u = v = 0, which has no Morse image."""


def _real_alpha(params):
    if params.alpha.imag != 0:
        raise ValueError("phase-space mapping needs a real alpha")
    return params.alpha.real


def morse_energy(params, x, px):
    return px * px / (2 * params.mass) + eval_potential(params, x).real


def angular_momentum(params, E):
    """Oscillator angular momentum u*pv - v*pu carried by a bound Morse orbit."""
    if E >= 0:
        return 0.0
    return 2 * math.sqrt(-2 * params.mass * E) / _real_alpha(params)


def map_coords(point, direction, params):
    """Carry `point` across the map.

    ``"to_morse"`` reads ``(u, v, pu, pv)`` and fills ``(x, px)``.
    ``"to_oscillator"`` reads ``(x, px)`` and uses the zero-angle gauge
    ``u = rho, v = 0``; ``pv`` carries the angular momentum of the Morse
    energy shell through the point (zero when that energy is not negative).
    """
    alpha = _real_alpha(params)
    if direction == "to_morse":
        rho2 = point.u * point.u + point.v * point.v
        if not rho2 > 0:
            raise SingularPointError(f"u = v = 0 has no Morse image (s = {point.s})")
        x = -math.log(rho2) / alpha
        # p_rho = (u pu + v pv) / rho, px = -(alpha rho / 2) p_rho
        px = -0.5 * alpha * (point.u * point.pu + point.v * point.pv)
        return replace(point, x=x, px=px)
    if direction == "to_oscillator":
        rho = math.exp(-0.5 * alpha * point.x)
        p_rho = -2.0 * point.px / (alpha * rho)
        L = angular_momentum(params, morse_energy(params, point.x, point.px))
        return replace(point, u=rho, v=0.0, pu=p_rho, pv=L / rho)
    raise ValueError(f"unknown direction {direction!r}")


def phase_point_at(params, E, x, sign=1):
    """Morse phase point at position `x` on the energy shell `E`."""
    kin = E - eval_potential(params, x).real
    if kin < 0:
        raise ValueError(f"x = {x} is outside the classically allowed region at E = {E}")
    px = math.copysign(math.sqrt(2 * params.mass * kin), sign)
    return PhasePoint(x=x, px=px)


def physical_time(rho2, s_grid, params):
    """Physical time t(s) = int_0^s 4 / (alpha**2 rho**2) ds' on a sampled orbit.

    Composite Simpson quadrature; ``t[0] = 0``.
    """
    s_grid = np.asarray(s_grid, dtype=float)
    rho2 = np.asarray(rho2)
    if s_grid.ndim != 1 or s_grid.size < 2 or rho2.shape != s_grid.shape:
        raise ValueError("s_grid and rho2 must be 1-D arrays of equal length >= 2")
    ds = np.diff(s_grid)
    if not (np.all(ds > 0) or np.all(ds < 0)):
        raise ValueError("s grid must be strictly monotone")
    if np.iscomplexobj(rho2):
        if np.any(rho2.imag != 0):
            raise ValueError("rho**2 must be real")
        rho2 = rho2.real
    if not np.all(rho2 > 0):
        bad = s_grid[np.argmax(~(rho2 > 0))]
        raise ValueError(f"rho**2 must be positive on the grid (fails at s = {bad})")
    scale = 4 / (params.alpha * params.alpha)
    if scale.imag == 0:
        scale = scale.real
    if ds[0] < 0:
        # running backwards in s: t decreases from 0
        return -scale * cumulative_simpson(1.0 / rho2, x=-s_grid, initial=0.0)
    return scale * cumulative_simpson(1.0 / rho2, x=s_grid, initial=0.0)


@dataclass(frozen=True)
class Trajectory:
    s: np.ndarray
    t: np.ndarray
    x: np.ndarray
    px: np.ndarray
    u: np.ndarray
    v: np.ndarray
    pu: np.ndarray
    pv: np.ndarray

    COLUMNS = ("s", "t", "x", "px", "u", "v", "pu", "pv")

    def point(self, i):
        return PhasePoint(**{c: float(getattr(self, c)[i]) for c in self.COLUMNS})

    def write_csv(self, fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(self.COLUMNS)
        cols = [getattr(self, c) for c in self.COLUMNS]
        for row in zip(*cols):
            w.writerow([f"{float(val):.17g}" for val in row])


def oscillator_flow(chart, u, v, pu, pv, s):
    """Exact isotropic-oscillator flow in parametric time from (u, v, pu, pv) at s=0."""
    m = chart.mass
    w = chart.omega.real
    s = np.asarray(s, dtype=float)
    c, sn = np.cos(w * s), np.sin(w * s)
    return (
        u * c + pu / (m * w) * sn,
        v * c + pv / (m * w) * sn,
        pu * c - m * w * u * sn,
        pv * c - m * w * v * sn,
    )


def rk4_oscillator(chart, state, ds, n_steps):
    """Fixed-step classical RK4 for the planar oscillator, returning all steps."""
    m = chart.mass
    w2 = chart.omega.real ** 2
    y = np.array(state, dtype=float)
    out = np.empty((n_steps + 1, 4))
    out[0] = y

    def f(y):
        return np.array([y[2] / m, y[3] / m, -m * w2 * y[0], -m * w2 * y[1]])

    for i in range(n_steps):
        k1 = f(y)
        k2 = f(y + 0.5 * ds * k1)
        k3 = f(y + 0.5 * ds * k2)
        k4 = f(y + ds * k3)
        y = y + ds / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        out[i + 1] = y
    return out


def _check_bound(params, E):
    if not params.is_real:
        raise ValueError("trajectory mapping requires Hermitian parameters")
    v1, v2 = params.v1.real, params.v2.real
    if v1 <= 0 or v2 <= 0:
        raise ValueError("no bound classical motion unless v1 > 0 and v2 > 0")
    v_min = -v2 * v2 / (4 * v1)
    if not v_min <= E < 0:
        raise ValueError(f"E = {E} is not in the bound range [{v_min}, 0)")


def mapped_trajectory(params, E, initial, s_grid):
    """Evolve `initial` with the oscillator flow and map every sample back.

    `initial` must carry ``(x, px)`` on the energy shell `E`.
    """
    _check_bound(params, E)
    h0 = morse_energy(params, initial.x, initial.px)
    if abs(h0 - E) > 1e-8 * max(abs(E), 1e-300):
        raise ValueError(f"initial point has energy {h0}, not {E}")
    chart = build_chart(params, E)
    osc = map_coords(initial, "to_oscillator", params)
    s_grid = np.asarray(s_grid, dtype=float)
    rel = s_grid - s_grid[0]
    u, v, pu, pv = oscillator_flow(chart, osc.u, osc.v, osc.pu, osc.pv, rel)
    rho2 = u * u + v * v
    alpha = params.alpha.real
    x = -np.log(rho2) / alpha
    px = -0.5 * alpha * (u * pu + v * pv)
    t = initial.t + physical_time(rho2, s_grid, params)
    return Trajectory(s_grid, t, x, px, u, v, pu, pv)


def verify_trajectory(params, E, initial, s_span, n_samples=2001):
    """Largest violation of the Morse Hamilton equations along a mapped orbit.

    The oscillator orbit is propagated exactly in ``s``; s-derivatives are
    converted to t-derivatives with ``dt/ds = 4 / (alpha**2 rho**2)`` and
    compared against ``dx/dt = px/m`` and ``dpx/dt = -V'(x)``.
    """
    s0, s1 = s_span
    traj = mapped_trajectory(params, E, initial, np.linspace(s0, s1, n_samples))
    m = params.mass
    alpha = params.alpha.real
    w2 = build_chart(params, E).omega.real ** 2
    u, v, pu, pv = traj.u, traj.v, traj.pu, traj.pv
    du, dv = pu / m, pv / m
    dpu, dpv = -m * w2 * u, -m * w2 * v
    rho2 = u * u + v * v
    dt_ds = 4.0 / (alpha * alpha * rho2)
    dx_ds = -2.0 * (u * du + v * dv) / (alpha * rho2)
    dpx_ds = -0.5 * alpha * (du * pu + u * dpu + dv * pv + v * dpv)
    r_x = np.abs(dx_ds / dt_ds - traj.px / m)
    r_p = np.abs(dpx_ds / dt_ds + potential_derivative(params, traj.x).real)
    return float(max(r_x.max(), r_p.max()))


def morse_direct(params, x0, px0, s_grid, rtol=1e-12, atol=1e-14):
    """Integrate Morse's equations in parametric time with t as an extra state.

    Independent of the oscillator picture: only ``H = px**2/2m + V(x)`` and
    the time factor ``dt/ds = 4 exp(alpha x) / alpha**2`` enter.
    Returns ``(t, x, px)`` sampled on `s_grid`.
    """
    m = params.mass
    alpha = params.alpha.real

    def rhs(_s, y):
        x, px, _t = y
        f = 4.0 * math.exp(alpha * x) / (alpha * alpha)
        return [f * px / m, -f * potential_derivative(params, x).real, f]

    s_grid = np.asarray(s_grid, dtype=float)
    sol = solve_ivp(rhs, (s_grid[0], s_grid[-1]), [x0, px0, 0.0], method="DOP853",
                    t_eval=s_grid, rtol=rtol, atol=atol)
    if not sol.success:
        raise RuntimeError(f"Morse integration failed: {sol.message}")
    return sol.y[2], sol.y[0], sol.y[1]


def morse_direct_in_t(params, x0, px0, t_eval, rtol=1e-12, atol=1e-14):
    """Integrate Morse's equations in physical time; returns ``(x, px)``."""
    m = params.mass

    def rhs(_t, y):
        return [y[1] / m, -potential_derivative(params, y[0]).real]

    t_eval = np.asarray(t_eval, dtype=float)
    sol = solve_ivp(rhs, (t_eval[0], t_eval[-1]), [x0, px0], method="DOP853",
                    t_eval=t_eval, rtol=rtol, atol=atol)
    if not sol.success:
        raise RuntimeError(f"Morse integration failed: {sol.message}")
    return sol.y[0], sol.y[1]


def radial_period(params):
    """Parametric-time period of rho**2 on a mapped orbit (pi / Omega)."""
    return math.pi / build_chart(params).omega.real


def morse_period(params, E):
    """Classical Morse period 2 pi / (alpha sqrt(-2E/m)) for bound E."""
    _check_bound(params, E)
    return 2 * math.pi / (params.alpha.real * math.sqrt(-2 * E / params.mass))
