"""Generalized Morse potential: oscillator map, spectra, wave functions and
parametric-time coherent states."""

from .coherent import CoherentState, coherent_from_phase_space, evolve, mean_morse_trajectory, observables
from .durumap import OscillatorChart, PhasePoint, build_chart, map_coords, physical_time, verify_trajectory
from .oracle import GridSpec, build_grid_hamiltonian, eig_low, match_spectra
from .potential import MorseParams, SymmetryClass, classify_symmetry, eval_potential, make_preset
from .spectrum import EnergyLevel, bound_levels, energy_level, lambda_param
from .wavefn import WaveSpec, eval_psi, laguerre_assoc, normalize_numeric, ode_residual

__version__ = "0.1.0"
