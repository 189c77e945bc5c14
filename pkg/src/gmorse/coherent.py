"""Parametric-time coherent states of the two mapped oscillators.

A state is labeled by the holomorphic coordinates ``(a_u, a_v)`` and evolves
in parametric time by the exact phase law ``a -> a exp(-i Omega ds)``.
Mean positions are carried back to the Morse coordinate through the
classical law ``x = -ln(<u>**2 + <v>**2) / alpha``; this is a classical mean
mapping, not an operator-ordered quantum expectation of ln(u**2 + v**2).
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass, replace

import numpy as np

from .durumap import PhasePoint, build_chart, map_coords, morse_energy, physical_time

MEAN_MAPPING = "classical"


class UnsupportedChartError(ValueError):
    pass


@dataclass(frozen=True)
class CoherentState:
    a_u: complex
    a_v: complex
    chart: object
    s: float = 0.0

    def __post_init__(self):
        if self.chart.omega == 0:
            raise ValueError("chart frequency must be nonzero")
        for a in (self.a_u, self.a_v):
            if not cmath.isfinite(a):
                raise ValueError("holomorphic coordinates must be finite")


def _real_omega(chart):
    if chart.omega.imag != 0 or chart.omega.real <= 0:
        raise UnsupportedChartError("observables are defined only for real positive Omega")
    return chart.omega.real


def coherent_from_phase_space(q, p, chart):
    w = _real_omega(chart)
    m, hbar = chart.mass, chart.hbar
    return math.sqrt(m * w / (2 * hbar)) * complex(q, p / (m * w))


def evolve(state, ds):
    phase = cmath.exp(-1j * state.chart.omega * ds)
    return replace(state, a_u=state.a_u * phase, a_v=state.a_v * phase, s=state.s + ds)


@dataclass(frozen=True)
class Observables:
    mean_q: float
    mean_p: float
    dq: float
    dp: float


def observables(state):
    """Means and widths for each oscillator, ``(u_obs, v_obs)``."""
    w = _real_omega(state.chart)
    m, hbar = state.chart.mass, state.chart.hbar
    q_scale = math.sqrt(2 * hbar / (m * w))
    p_scale = math.sqrt(2 * hbar * m * w)
    dq = math.sqrt(hbar / (2 * m * w))
    dp = math.sqrt(hbar * m * w / 2)
    return tuple(
        Observables(q_scale * a.real, p_scale * a.imag, dq, dp)
        for a in (state.a_u, state.a_v)
    )


def coherent_from_morse(params, x, px, s=0.0):
    """State whose mean oscillator point is the image of the Morse point (x, px)."""
    E = morse_energy(params, x, px)
    chart = build_chart(params, E)
    osc = map_coords(PhasePoint(x=x, px=px), "to_oscillator", params)
    return CoherentState(
        coherent_from_phase_space(osc.u, osc.pu, chart),
        coherent_from_phase_space(osc.v, osc.pv, chart),
        chart,
        s,
    )


class SingularSampleError(ValueError):
    def __init__(self, s):
        super().__init__(f"mean orbit passes through the origin at s = {s}")
        self.s = s


@dataclass(frozen=True)
class MeanTrajectory:
    s: np.ndarray
    t: np.ndarray
    x_mean: np.ndarray
    a_u: np.ndarray
    a_v: np.ndarray
    mapping: str = MEAN_MAPPING

    def write_csv(self, fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("s", "t", "x_mean", "re_au", "im_au", "re_av", "im_av"))
        for row in zip(self.s, self.t, self.x_mean, self.a_u, self.a_v):
            s, t, x, au, av = row
            w.writerow([f"{v:.17g}" for v in (s, t, x, au.real, au.imag, av.real, av.imag)])


def mean_morse_trajectory(state0, s_grid, params):
    """Sample the evolved state on `s_grid` and map its mean orbit to (t, x)."""
    s_grid = np.asarray(s_grid, dtype=float)
    w = _real_omega(state0.chart)
    phase = np.exp(-1j * w * (s_grid - state0.s))
    a_u = state0.a_u * phase
    a_v = state0.a_v * phase
    q_scale = math.sqrt(2 * state0.chart.hbar / (state0.chart.mass * w))
    u = q_scale * a_u.real
    v = q_scale * a_v.real
    rho2 = u * u + v * v
    bad = rho2 <= 1e-12 * max(float(rho2.max()), np.finfo(float).tiny)
    if np.any(bad):
        raise SingularSampleError(float(s_grid[np.argmax(bad)]))
    alpha = params.alpha
    if alpha.imag != 0:
        raise UnsupportedChartError("mean Morse trajectory needs a real alpha")
    x_mean = -np.log(rho2) / alpha.real
    t = physical_time(rho2, s_grid, params)
    return MeanTrajectory(s_grid, t, x_mean, a_u, a_v)
