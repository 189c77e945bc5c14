"""Bound-state wave functions in Laguerre form.

    psi_n(x) = N z**s_n exp(-z/2) L_n^(2 s_n)(z),   z = z0 exp(-alpha x),
    z0 = 2 sqrt(2 m v1) / (alpha hbar).

The power ``z**s_n`` is taken as ``exp(s_n log z)`` with
``log z = Log z0 - alpha x``: the principal branch at x = 0 continued
analytically along the real axis, so that imaginary-alpha cases stay smooth.
"""

from __future__ import annotations

import csv
import logging
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .potential import eval_potential
from .spectrum import sqrt_v1

log = logging.getLogger(__name__)

UNDERFLOW_Z = 700.0


class QuadratureError(RuntimeError):
    pass


def laguerre_assoc(n, a, z):
    """Associated Laguerre polynomial L_n^(a)(z) by three-term recurrence.

    Parameters
    ----------
    n : int
        Degree, ``n >= 0``.
    a : complex
        Order; complex values are allowed.
    z : complex or array_like
        Evaluation point(s).
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    z = np.asarray(z)
    prev = np.ones_like(z, dtype=np.result_type(z, a, complex))
    if n == 0:
        return prev[()] if prev.ndim == 0 else prev
    cur = 1 + a - z + 0 * prev
    for k in range(2, n + 1):
        prev, cur = cur, ((2 * k - 1 + a - z) * cur - (k - 1 + a) * prev) / k
    return cur[()] if cur.ndim == 0 else cur


@dataclass(frozen=True)
class WaveSpec:
    n: int
    z0: complex
    s_exponent: complex
    norm: complex = 1.0
    normalizable: bool = True


def z_scale(params):
    return 2 * math.sqrt(2 * params.mass) * sqrt_v1(params) / (params.alpha * params.hbar)


def log_z(params, x):
    return np.log(z_scale(params)) - params.alpha * np.asarray(x, dtype=float)


def wave_spec(params, level, norm=1.0, normalizable=True):
    return WaveSpec(level.n, z_scale(params), level.s_exponent, complex(norm), normalizable)


def _psi_parts(params, level, x):
    lz = log_z(params, x)
    z = np.exp(lz)
    s = level.s_exponent
    underflow = z.real > UNDERFLOW_Z
    with np.errstate(over="ignore", invalid="ignore"):
        envelope = np.exp(s * lz - z / 2)
    envelope = np.where(underflow, 0, envelope)
    return z, envelope, underflow


def eval_psi(params, level, x, norm=1.0, return_underflow=False):
    """Wave function of `level` at real positions `x`.

    Points with ``Re z > 700`` are below double-precision range and are set
    to 0; pass ``return_underflow=True`` to also get the boolean mask.
    """
    z, envelope, underflow = _psi_parts(params, level, x)
    lag = laguerre_assoc(level.n, 2 * level.s_exponent, np.where(underflow, 0, z))
    psi = norm * envelope * lag
    if np.ndim(psi) == 0:
        psi = complex(psi)
        underflow = bool(underflow)
    if return_underflow:
        return psi, underflow
    return psi


def eval_dpsi(params, level, x, norm=1.0):
    """d psi / dx, using dz/dx = -alpha z and dL_n^(a)/dz = -L_(n-1)^(a+1)."""
    z, envelope, underflow = _psi_parts(params, level, x)
    z = np.where(underflow, 1.0, z)
    s, n = level.s_exponent, level.n
    a = 2 * s
    lag = laguerre_assoc(n, a, z)
    dlag = -laguerre_assoc(n - 1, a + 1, z) if n > 0 else 0.0
    dpsi_dz = envelope * ((s / z - 0.5) * lag + dlag)
    out = norm * (-params.alpha) * z * dpsi_dz
    return complex(out) if np.ndim(out) == 0 else out


def is_decaying(params, level):
    return params.alpha.real > 0 and level.s_exponent.real > 0


@dataclass(frozen=True)
class QuadConfig:
    """Adaptive quadrature settings for normalization integrals."""

    tail: float = 1e-16
    window_scale: float = 1.0
    epsrel: float = 1e-13
    limit: int = 500
    max_steps: int = 100000


def _window(params, level, cfg):
    """Interval outside which |psi|**2 is below `cfg.tail` of its peak."""
    ra = params.alpha.real
    zabs = abs(z_scale(params))
    z_hi = 4 * (level.n + abs(level.s_exponent)) + 60
    zs = np.geomspace(1e-8, z_hi, 4000)
    xs = np.log(zabs / zs) / ra
    f = np.abs(eval_psi(params, level, xs)) ** 2
    i = int(np.argmax(f))
    x_peak, peak = xs[i], f[i]
    if not peak > 0:
        raise QuadratureError("wave function vanishes on the search grid")
    step = 1.0 / ra
    bounds = []
    for direction, start in ((-1, xs.min()), (1, xs.max())):
        x = start
        for _ in range(cfg.max_steps):
            if abs(eval_psi(params, level, x)) ** 2 < cfg.tail * peak:
                break
            x += direction * step
        else:
            raise QuadratureError("could not bracket the wave-function tail")
        bounds.append(x)
    lo, hi = bounds
    lo = x_peak - cfg.window_scale * (x_peak - lo)
    hi = x_peak + cfg.window_scale * (hi - x_peak)
    return lo, hi, x_peak


def _quad(f, lo, hi, points, cfg, epsabs=0.0):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err, _info, *warn = integrate.quad(
            f, lo, hi, points=points, epsabs=epsabs, epsrel=cfg.epsrel,
            limit=cfg.limit, full_output=1,
        )
    if not math.isfinite(val):
        raise QuadratureError("quadrature produced a non-finite value")
    # quad flags roundoff-limited results too; only reject a real accuracy loss
    if warn and err > max(1e3 * cfg.epsrel * abs(val), epsabs):
        raise QuadratureError(f"quadrature did not converge ({warn[0]!s:.80}; err={err:.3e})")
    return val


def overlap(params, level_a, level_b, quad=QuadConfig(), norms=(1.0, 1.0), conjugate=True):
    """Integral of conj(psi_a) psi_b (or psi_a psi_b) over the real line."""
    for lv in (level_a, level_b):
        if not is_decaying(params, lv):
            raise ValueError(f"level {lv.n} does not decay on the real line")
    la, ha, pa = _window(params, level_a, quad)
    lb, hb, pb = _window(params, level_b, quad)
    lo, hi = min(la, lb), max(ha, hb)

    def prod(x):
        a = eval_psi(params, level_a, x, norms[0])
        b = eval_psi(params, level_b, x, norms[1])
        return (np.conj(a) if conjugate else a) * b

    pts = sorted({pa, pb})
    # the overlap may vanish exactly, so relative accuracy alone cannot be met
    sizes = [_quad(lambda x, lv=lv, c=c: abs(eval_psi(params, lv, x, c)) ** 2, lo, hi, pts, quad)
             for lv, c in ((level_a, norms[0]), (level_b, norms[1]))]
    epsabs = quad.epsrel * math.sqrt(sizes[0] * sizes[1])
    re = _quad(lambda x: prod(x).real, lo, hi, pts, quad, epsabs)
    im = _quad(lambda x: prod(x).imag, lo, hi, pts, quad, epsabs)
    return complex(re, im)


def normalize_numeric(params, level, quad=QuadConfig(), norm=1.0):
    """WaveSpec with ``norm`` chosen so that the integral of |psi|**2 is 1.

    `norm` is the current scale of psi (pass a previous result to renormalize).
    Non-decaying cases are returned unnormalized with ``normalizable=False``.
    """
    if not is_decaying(params, level):
        return wave_spec(params, level, norm, normalizable=False)
    lo, hi, peak = _window(params, level, quad)
    total = _quad(lambda x: abs(eval_psi(params, level, x, norm)) ** 2, lo, hi, [peak], quad)
    if not total > 0:
        raise QuadratureError("zero norm integral")
    return wave_spec(params, level, norm / math.sqrt(total))


def rayleigh_quotient(params, level, quad=QuadConfig()):
    """<psi|H|psi> / <psi|psi> with the kinetic term in |psi'|**2 form."""
    if not is_decaying(params, level):
        raise ValueError("Rayleigh quotient needs a decaying wave function")
    lo, hi, peak = _window(params, level, quad)
    c = params.hbar ** 2 / (2 * params.mass)

    def energy_density(x):
        psi = eval_psi(params, level, x)
        dpsi = eval_dpsi(params, level, x)
        return c * abs(dpsi) ** 2 + (eval_potential(params, x) * abs(psi) ** 2).real

    num = _quad(energy_density, lo, hi, [peak], quad)
    den = _quad(lambda x: abs(eval_psi(params, level, x)) ** 2, lo, hi, [peak], quad)
    return num / den


def ode_residual(params, level, grid, norm=1.0):
    """Max pointwise Schrodinger residual of psi on a uniform grid, relative to max|psi|.

    psi'' uses the 5-point central stencil, so the result is meaningful for
    complex E and V and for non-normalizable states alike. A wave function
    that vanishes on the whole grid gives ``inf``.
    """
    x = np.asarray(grid, dtype=float)
    if x.ndim != 1 or x.size < 9:
        raise ValueError("grid needs at least 9 points")
    h = (x[-1] - x[0]) / (x.size - 1)
    if not h > 0 or not np.allclose(np.diff(x), h, rtol=1e-9, atol=0):
        raise ValueError("grid must be uniform and increasing")
    psi = eval_psi(params, level, x, norm)
    scale = float(np.max(np.abs(psi)))
    if scale == 0 or not math.isfinite(scale):
        log.warning("wave function is identically zero on the grid; residual undefined")
        return math.inf
    d2 = (-psi[:-4] + 16 * psi[1:-3] - 30 * psi[2:-2] + 16 * psi[3:-1] - psi[4:]) / (12 * h * h)
    inner = psi[2:-2]
    res = (-(params.hbar ** 2) / (2 * params.mass) * d2
           + eval_potential(params, x[2:-2]) * inner - level.energy * inner)
    return float(np.max(np.abs(res)) / scale)


def write_csv(fh, x, psi):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(("x", "re_psi", "im_psi"))
    for xi, p in zip(x, psi):
        w.writerow((f"{float(xi):.17g}", f"{p.real:.17g}", f"{p.imag:.17g}"))
