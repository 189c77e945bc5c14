"""Finite-difference grid Hamiltonian used as an independent spectral check.

Dirichlet walls at both grid ends; only interior points are unknowns. The
wide stencil reaches one point past each wall, where the odd continuation
psi(-h) = -psi(h) is used. The kinetic band is symmetric, so every matrix is
(complex) symmetric.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .potential import eval_potential

# second-derivative stencils, coefficients for offsets 0, 1, 2 (times 1/h**2)
_STENCILS = {
    2: (-2.0, 1.0),
    4: (-30.0 / 12, 16.0 / 12, -1.0 / 12),
}

DENSE_LIMIT = 400


class SolverError(RuntimeError):
    pass


@dataclass(frozen=True)
class GridSpec:
    x_min: float
    x_max: float
    n_points: int
    stencil_order: int = 4

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ValueError("x_min must be < x_max")
        if self.n_points < 16:
            raise ValueError("n_points must be >= 16")
        if self.stencil_order not in _STENCILS:
            raise ValueError("stencil_order must be 2 or 4")

    @property
    def h(self):
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def x(self):
        return np.linspace(self.x_min, self.x_max, self.n_points)

    @property
    def interior(self):
        return self.x[1:-1]

    def to_dict(self):
        return {"x_min": self.x_min, "x_max": self.x_max,
                "n_points": self.n_points, "stencil_order": self.stencil_order}


def default_grid(params, n_points=4000, stencil_order=4):
    ra = params.alpha.real
    if ra <= 0:
        raise ValueError("no default grid: the potential does not confine for Re(alpha) <= 0")
    return GridSpec(-5.0 / ra, 25.0 / ra, n_points, stencil_order)


@dataclass(frozen=True)
class GridHamiltonian:
    """Banded H = -(hbar**2/2m) D2 + diag(V) on the interior grid points.

    ``bands[k]`` is the constant k-th off-diagonal (k >= 1); ``diag`` holds the
    full main diagonal.
    """

    diag: np.ndarray
    bands: tuple
    grid: GridSpec

    @property
    def size(self):
        return self.diag.size

    @property
    def is_real(self):
        return not np.iscomplexobj(self.diag)

    def to_sparse(self):
        n = self.size
        offs, data = [0], [self.diag]
        for k, b in enumerate(self.bands, start=1):
            col = np.full(n - k, b, dtype=self.diag.dtype)
            offs += [k, -k]
            data += [col, col]
        return sp.diags(data, offs, shape=(n, n), format="csr")

    def to_dense(self):
        return self.to_sparse().toarray()

    def upper_banded(self):
        """Upper banded storage for scipy.linalg.eig_banded."""
        p = len(self.bands)
        ab = np.zeros((p + 1, self.size), dtype=self.diag.dtype)
        ab[p] = self.diag
        for k, b in enumerate(self.bands, start=1):
            ab[p - k, k:] = b
        return ab


def build_grid_hamiltonian(params, grid):
    c = -(params.hbar ** 2) / (2 * params.mass * grid.h ** 2)
    coeffs = _STENCILS[grid.stencil_order]
    v = eval_potential(params, grid.interior)
    if params.is_real:
        v = np.real(v).astype(float)
    return GridHamiltonian(_kinetic_diag(c, coeffs, v), tuple(c * b for b in coeffs[1:]), grid)


def _kinetic_diag(c, coeffs, v):
    diag = c * coeffs[0] + v
    if len(coeffs) > 2:
        # odd continuation across the wall folds the outer coefficient onto the diagonal
        diag[0] -= c * coeffs[2]
        diag[-1] -= c * coeffs[2]
    return diag


def _lowest_hermitian(H, k):
    try:
        return sla.eig_banded(H.upper_banded(), eigvals_only=True,
                              select="i", select_range=(0, k - 1))
    except (sla.LinAlgError, ValueError) as exc:
        raise SolverError(f"banded symmetric solver failed: {exc}") from exc


def _lowest_complex(H, k):
    n = H.size
    if n <= DENSE_LIMIT:
        try:
            w = sla.eigvals(H.to_dense())
        except sla.LinAlgError as exc:
            raise SolverError(f"dense solver failed: {exc}") from exc
        return w[np.argsort(w.real, kind="stable")][:k]
    # shift-invert below the real-part Gershgorin bound picks the low-real-part end
    radius = 2 * sum(abs(b) for b in H.bands)
    sigma = float(np.min(H.diag.real)) - radius - 1.0
    m = min(n - 2, max(2 * k + 6, k + 10))
    A = H.to_sparse().tocsc()
    try:
        w = spla.eigs(A, k=m, sigma=sigma, which="LM", return_eigenvectors=False, tol=1e-14)
    except (spla.ArpackNoConvergence, RuntimeError) as exc:
        cond = spla.norm(A, 1) * spla.norm(spla.inv(A - sigma * sp.identity(n, format="csc")), 1)
        raise SolverError(f"shift-invert solver failed ({exc}); "
                          f"1-norm condition of shifted matrix ~ {cond:.3e}") from exc
    return w[np.argsort(w.real, kind="stable")][:k]


def eig_low(params, grid, k):
    """The k grid eigenvalues with the lowest real part, ascending."""
    if not 0 < k < grid.n_points - 2:
        raise ValueError("need 0 < k < n_points - 2")
    H = build_grid_hamiltonian(params, grid)
    if H.is_real:
        return _lowest_hermitian(H, k).astype(complex)
    return _lowest_complex(H, k)


def eig_low_potential(v_func, grid, k, mass=1.0, hbar=1.0):
    """Lowest eigenvalues for an arbitrary real potential callable (oracle calibration)."""
    c = -(hbar ** 2) / (2 * mass * grid.h ** 2)
    coeffs = _STENCILS[grid.stencil_order]
    diag = _kinetic_diag(c, coeffs, np.asarray(v_func(grid.interior), dtype=float))
    H = GridHamiltonian(diag, tuple(c * b for b in coeffs[1:]), grid)
    return _lowest_hermitian(H, k)


@dataclass(frozen=True)
class Match:
    n: int
    analytic: complex
    numeric: complex | None
    delta: float
    passed: bool

    def to_dict(self):
        return {
            "n": self.n,
            "analytic": [self.analytic.real, self.analytic.imag],
            "numeric": None if self.numeric is None else [self.numeric.real, self.numeric.imag],
            "delta": self.delta,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class MatchReport:
    matches: list
    tol_abs: float

    @property
    def passed(self):
        return all(m.passed for m in self.matches)

    def to_dict(self, case="", grid=None):
        return {
            "case": case,
            "grid": {} if grid is None else grid.to_dict(),
            "matches": [m.to_dict() for m in self.matches],
            "pass": self.passed,
        }


def match_spectra(analytic, numeric, tol_abs):
    """Greedy nearest matching of analytic levels to grid eigenvalues.

    Pairs are taken in order of increasing complex distance; each numeric
    eigenvalue is used at most once.
    """
    if not tol_abs > 0:
        raise ValueError("tol_abs must be > 0")
    numeric = [complex(z) for z in numeric]
    pairs = sorted(
        (abs(lv.energy - z), i, j)
        for i, lv in enumerate(analytic)
        for j, z in enumerate(numeric)
    )
    taken_a, taken_n, chosen = set(), set(), {}
    for d, i, j in pairs:
        if i in taken_a or j in taken_n:
            continue
        taken_a.add(i)
        taken_n.add(j)
        chosen[i] = (j, d)
    out = []
    for i, lv in enumerate(analytic):
        if i in chosen:
            j, d = chosen[i]
            out.append(Match(lv.n, lv.energy, numeric[j], float(d), d <= tol_abs))
        else:
            out.append(Match(lv.n, lv.energy, None, float("inf"), False))
    return MatchReport(out, tol_abs)
