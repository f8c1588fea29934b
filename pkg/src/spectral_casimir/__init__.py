"""Spectral-representation van der Waals interaction of a sphere above a substrate.

Quick use::

    from spectral_casimir import PRESETS, SystemSpec, interaction_energy, force
    system = SystemSpec(10.0, 5.0, PRESETS["Al"], PRESETS["Inf"])
    interaction_energy(system).energy_ev   # eV
    force(system).force_pN                 # negative = attraction
"""
__version__ = "0.1.0"

from .comparison import PfaResult, compare_with_spectral, pfa_force
from .dos import (
    DOSProfile,
    QuadratureSpec,
    dos_greens,
    dos_interaction_energy,
    dos_lorentzian,
    total_states,
)
from .errors import (
    DomainError,
    NumericalError,
    PoleError,
    QuadratureError,
    SingularValueError,
    SpectralCasimirError,
    UnknownMaterialError,
    UnsupportedModelError,
    ValidationError,
)
from .materials import (
    PRESETS,
    DielectricModel,
    MaterialLibrary,
    contrast_factor,
    epsilon_at,
    spectral_variable,
)
from .modes_energy import (
    EnergyResult,
    ForceResult,
    ModeSpectrum,
    decompose,
    force,
    interaction_energy,
    mode_frequencies,
)
from .spectral_core import (
    N0,
    Geometry,
    InteractionMatrix,
    SpectralDecomposition,
    dipole_tensor,
    eigen_decompose,
    greens_trace,
    interaction_matrix,
)
from .sweep import SweepRow, SweepSpec, fit_power_law, run_sweep
from .system import SystemSpec

__all__ = [
    "N0", "PRESETS", "DOSProfile", "DielectricModel", "DomainError", "EnergyResult", "ForceResult",
    "Geometry", "InteractionMatrix", "MaterialLibrary", "ModeSpectrum", "NumericalError", "PfaResult",
    "PoleError", "QuadratureError", "QuadratureSpec", "SingularValueError", "SpectralCasimirError",
    "SpectralDecomposition", "SweepRow", "SweepSpec", "SystemSpec", "UnknownMaterialError",
    "UnsupportedModelError", "ValidationError", "compare_with_spectral", "contrast_factor", "decompose",
    "dipole_tensor", "dos_greens", "dos_interaction_energy", "dos_lorentzian", "eigen_decompose",
    "epsilon_at", "fit_power_law", "force", "greens_trace", "interaction_energy", "interaction_matrix",
    "mode_frequencies", "pfa_force", "run_sweep", "spectral_variable", "total_states",
]
