"""Closed-form Morse spectrum from the oscillator quantization condition.

Quantizing the planar oscillator, ``pseudo_energy = hbar Omega (2n + ell + 1)``,
and solving for the Morse energy gives

    E_n = -(alpha**2 hbar**2 / 2m) (lam - n - 1/2)**2,
    lam = v2 / (hbar alpha) * sqrt(m / (2 v1)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

REALITY_TOL = 1e-10


@dataclass(frozen=True)
class EnergyLevel:
    n: int
    energy: complex
    s_exponent: complex
    is_real: bool

    def to_dict(self):
        return {
            "n": self.n,
            "E": [self.energy.real, self.energy.imag],
            "s": [self.s_exponent.real, self.s_exponent.imag],
            "real": self.is_real,
        }


def sqrt_v1(params):
    """Principal square root of v1; the single branch shared by lam and z0."""
    return complex(np.sqrt(params.v1))


def lambda_param(params):
    return params.v2 * math.sqrt(params.mass / 2) / (params.hbar * params.alpha * sqrt_v1(params))


def is_real_energy(E, tol=REALITY_TOL):
    return abs(E.imag) <= tol * max(1.0, abs(E.real))


def energy_level(params, n, tol=REALITY_TOL):
    if n < 0:
        raise ValueError("n must be nonnegative")
    s = lambda_param(params) - n - 0.5
    E = -(params.alpha * params.alpha * params.hbar ** 2 / (2 * params.mass)) * s * s
    return EnergyLevel(int(n), complex(E), complex(s), is_real_energy(E, tol))


def bound_count(params):
    lam = lambda_param(params)
    # threshold levels with s_n = 0 up to rounding are not bound
    slack = 1e-12 * max(1.0, abs(lam))
    return max(0, math.ceil(lam.real - 0.5 - slack))


def bound_levels(params, tol=REALITY_TOL):
    """All levels with Re(lam - n - 1/2) > 0, ascending in n."""
    if not tol > 0:
        raise ValueError("tol must be > 0")
    return [energy_level(params, n, tol) for n in range(bound_count(params))]
