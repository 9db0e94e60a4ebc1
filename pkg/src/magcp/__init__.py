"""magcp: Casimir-Polder energy of an atom above magnetized graphene.

Computes the finite-temperature dispersion interaction between a
polarizable particle and a suspended graphene sheet in a perpendicular
static magnetic field, on the imaginary-frequency axis: Landau-level
magneto-conductivity, anisotropic-sheet reflection coefficients, a
Matsubara-summed (or zero-temperature integrated) energy engine, and a
config-driven sweep CLI.
"""
from ._backend import BACKEND
from .conductivity import (B_REF, ConductivitySample, GrapheneParams,
                           conductivity_sample, fermi_dirac, landau_level,
                           landau_scale, predict_crossings, sigma_xx, sigma_xy)
from .energy import (EnergyQuery, EnergyResult, casimir_polder_energy,
                     casimir_polder_energy_T0, k_integral, matsubara_frequency,
                     normalized_energy, zero_frequency_term)
from .exceptions import ConvergenceError, MagcpError, ValidationError
from .polarizability import (LorentzPolarizability, TabulatedPolarizability,
                             alpha_imag, alpha_static, load_table)
from .reflection import (ReflectionPair, WaveContext, impedances,
                         reflection_pair, reflection_pair_static)
from .scan import (ScanConfig, ScanRow, detect_discontinuities, emit,
                   parse_config, run_scan)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "B_REF",
    "ConductivitySample",
    "ConvergenceError",
    "EnergyQuery",
    "EnergyResult",
    "GrapheneParams",
    "LorentzPolarizability",
    "MagcpError",
    "ReflectionPair",
    "ScanConfig",
    "ScanRow",
    "TabulatedPolarizability",
    "ValidationError",
    "WaveContext",
    "alpha_imag",
    "alpha_static",
    "casimir_polder_energy",
    "casimir_polder_energy_T0",
    "conductivity_sample",
    "detect_discontinuities",
    "emit",
    "fermi_dirac",
    "impedances",
    "k_integral",
    "landau_level",
    "landau_scale",
    "load_table",
    "matsubara_frequency",
    "normalized_energy",
    "parse_config",
    "predict_crossings",
    "reflection_pair",
    "reflection_pair_static",
    "run_scan",
    "sigma_xx",
    "sigma_xy",
    "zero_frequency_term",
]
