"""Vacuum-field observables of a 1D cavity with a movable quantum mirror.

The movable wall is bound harmonically and treated quantum-mechanically; its
zero-point position fluctuations dress the field vacuum with virtual photon
pairs.  This package computes the resulting per-mode photon spectrum, mirror
excitation, second-order Casimir-energy correction, and the spatially resolved
renormalized field energy density, all validated against an independent
exact-diagonalization oracle in truncated Fock space.
"""

__version__ = "0.1.0"

from .density import (
    EnergyDensityProfile,
    baseline_density,
    delta_density,
    density_profile,
    time_split_baseline,
)
from .errors import (
    ConfigError,
    CutoffCrossingWarning,
    ExtrapolationError,
    ModelError,
    OracleError,
    ParameterError,
)
from .observables import (
    EnergyBudget,
    ForceResult,
    SpectrumResult,
    casimir_energy_correction,
    energy_shift,
    mirror_excitation,
    photon_number,
    photon_spectrum,
    spectrum_peak_check,
)
from .params import (
    C_LIGHT,
    HBAR,
    ModeBasis,
    PhysicalParams,
    default_params,
    max_mode_index,
    mode_frequency,
)

__all__ = [
    "C_LIGHT",
    "HBAR",
    "ConfigError",
    "CutoffCrossingWarning",
    "EnergyBudget",
    "EnergyDensityProfile",
    "ExtrapolationError",
    "ForceResult",
    "ModeBasis",
    "ModelError",
    "OracleError",
    "ParameterError",
    "PhysicalParams",
    "SpectrumResult",
    "__version__",
    "baseline_density",
    "casimir_energy_correction",
    "default_params",
    "delta_density",
    "density_profile",
    "energy_shift",
    "max_mode_index",
    "mirror_excitation",
    "mode_frequency",
    "photon_number",
    "photon_spectrum",
    "spectrum_peak_check",
    "time_split_baseline",
]
