"""Generalized Morse potential V(x) = v1 exp(-2 alpha x) - v2 exp(-alpha x).

Parameters may be complex, which covers the Hermitian, PT-symmetric and
non-PT-symmetric non-Hermitian members of the family.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class SymmetryClass(str, enum.Enum):
    HERMITIAN = "Hermitian"
    PT_SYMMETRIC = "PTSymmetric"
    NON_PT_NON_HERMITIAN = "NonPTNonHermitian"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class MorseParams:
    """Model instance of the generalized Morse potential.

    Attributes
    ----------
    v1, v2 : complex
        Strengths of the repulsive ``exp(-2 alpha x)`` and attractive
        ``exp(-alpha x)`` terms.
    alpha : complex
        Inverse width.
    mass, hbar : float
        Positive particle mass and reduced Planck constant.
    """

    v1: complex
    v2: complex
    alpha: complex
    mass: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("v1", "v2", "alpha"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        object.__setattr__(self, "mass", float(self.mass))
        object.__setattr__(self, "hbar", float(self.hbar))
        if not self.mass > 0:
            raise ValueError(f"mass must be > 0, got {self.mass}")
        if not self.hbar > 0:
            raise ValueError(f"hbar must be > 0, got {self.hbar}")
        if self.alpha == 0:
            raise ValueError("alpha must be nonzero")
        if self.v1 == 0:
            raise ValueError("v1 must be nonzero (no oscillator map for v1 = 0)")

    @property
    def is_real(self):
        return self.v1.imag == 0 and self.v2.imag == 0 and self.alpha.imag == 0

    def to_dict(self):
        return {
            "v1": [self.v1.real, self.v1.imag],
            "v2": [self.v2.real, self.v2.imag],
            "alpha": [self.alpha.real, self.alpha.imag],
            "mass": self.mass,
            "hbar": self.hbar,
        }


def eval_potential(params, x):
    """Evaluate V(x); `x` may be a scalar or an array of real positions."""
    x = np.asarray(x, dtype=float)
    out = params.v1 * np.exp(-2 * params.alpha * x) - params.v2 * np.exp(-params.alpha * x)
    return out[()] if out.ndim == 0 else out


def potential_derivative(params, x):
    """dV/dx."""
    x = np.asarray(x, dtype=float)
    a = params.alpha
    out = -2 * a * params.v1 * np.exp(-2 * a * x) + a * params.v2 * np.exp(-a * x)
    return out[()] if out.ndim == 0 else out


def default_probes(params, n=41):
    half = 5.0 / abs(params.alpha)
    return np.linspace(-half, half, n)


def classify_symmetry(params, probes=None, tol=None):
    """Classify the potential as Hermitian, PT-symmetric or neither.

    Parameters
    ----------
    params : MorseParams
    probes : array_like, optional
        Real probe positions, closed under x -> -x. Defaults to 41 points
        uniform on ``[-5/|alpha|, 5/|alpha|]``.
    tol : float, optional
        Absolute tolerance. Defaults to ``1e-10 * max|V|`` over the probes.

    Returns
    -------
    SymmetryClass
    """
    if probes is None:
        probes = default_probes(params)
    probes = np.asarray(probes, dtype=float)
    if probes.size == 0:
        raise ValueError("probe set must be nonempty")
    scale = max(float(np.max(np.abs(probes))), 1.0)
    mirrored = np.sort(-probes)
    if not np.allclose(np.sort(probes), mirrored, rtol=0, atol=1e-12 * scale):
        raise ValueError("probe set must be symmetric about 0")

    v = eval_potential(params, probes)
    v_mirror = eval_potential(params, -probes)
    if tol is None:
        tol = 1e-10 * max(float(np.max(np.abs(v))), np.finfo(float).tiny)
    if not tol > 0:
        raise ValueError("tol must be > 0")

    if np.max(np.abs(np.imag(v))) <= tol:
        return SymmetryClass.HERMITIAN
    if np.max(np.abs(np.conj(v_mirror) - v)) <= tol:
        return SymmetryClass.PT_SYMMETRIC
    return SymmetryClass.NON_PT_NON_HERMITIAN


PRESET_KINDS = ("hermitian", "pt_imaginary_alpha", "non_pt_complex")


def make_preset(kind, mass=1.0, hbar=1.0, **raw):
    """Build MorseParams from one of the named complexification families.

    ``hermitian(v1, v2, alpha)``
        all real.
    ``pt_imaginary_alpha(v1, v2, a)``
        ``alpha = i*a`` with real strengths.
    ``non_pt_complex(A, B, C, alpha)``
        ``v1 = (A + iB)**2``, ``v2 = (2C + 1)(A + iB)``, real alpha.
    """
    try:
        if kind == "hermitian":
            v1, v2, alpha = float(raw["v1"]), float(raw["v2"]), float(raw["alpha"])
        elif kind == "pt_imaginary_alpha":
            v1, v2 = float(raw["v1"]), float(raw["v2"])
            alpha = 1j * float(raw["a"])
        elif kind == "non_pt_complex":
            w = complex(float(raw["A"]), float(raw["B"]))
            v1 = w * w
            v2 = (2 * float(raw["C"]) + 1) * w
            alpha = float(raw["alpha"])
        else:
            raise ValueError(f"unknown preset kind {kind!r}; expected one of {PRESET_KINDS}")
    except KeyError as exc:
        raise ValueError(f"preset {kind!r} is missing parameter {exc.args[0]!r}") from None
    return MorseParams(v1, v2, alpha, mass, hbar)


def _as_complex(value, name):
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"{name} must be a number or a [re, im] pair")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, (int, float)):
        return complex(value)
    raise ValueError(f"{name} must be a number or a [re, im] pair")


def params_from_dict(doc):
    """Parse the JSON parameter document (explicit values or a preset)."""
    if not isinstance(doc, dict):
        raise ValueError("parameter document must be a JSON object")
    mass = float(doc.get("mass", 1.0))
    hbar = float(doc.get("hbar", 1.0))
    if "preset" in doc:
        if any(k in doc for k in ("v1", "v2", "alpha")):
            raise ValueError("give either explicit parameters or a preset, not both")
        preset = dict(doc["preset"])
        kind = preset.pop("kind", None)
        mass = float(preset.pop("mass", mass))
        hbar = float(preset.pop("hbar", hbar))
        return make_preset(kind, mass=mass, hbar=hbar, **preset)
    missing = [k for k in ("v1", "v2", "alpha") if k not in doc]
    if missing:
        raise ValueError(f"missing parameters: {', '.join(missing)}")
    return MorseParams(
        _as_complex(doc["v1"], "v1"),
        _as_complex(doc["v2"], "v2"),
        _as_complex(doc["alpha"], "alpha"),
        mass,
        hbar,
    )


def load_params(path):
    with open(Path(path)) as fh:
        return params_from_dict(json.load(fh))
