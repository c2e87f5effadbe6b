"""Casimir pressure between parallel plates from the vacuum Lorentz force."""
from .correlators import CorrelatorTensor, Setup, SetupKind, corr_BB, corr_EB, corr_EE, e2_minus_b2
from .pressure import (
    ForceResult,
    ThreePlateConfig,
    difference_identity,
    energy_per_area,
    net_pressure,
    numeric_cancellation_profile,
    side_force,
)
from .specfun import SeriesExpansion, eval_F, eval_G, expand_F, expand_G

__version__ = "0.1.0"

__all__ = [
    "CorrelatorTensor", "Setup", "SetupKind", "corr_BB", "corr_EB", "corr_EE", "e2_minus_b2",
    "ForceResult", "ThreePlateConfig", "difference_identity", "energy_per_area", "net_pressure",
    "numeric_cancellation_profile", "side_force",
    "SeriesExpansion", "eval_F", "eval_G", "expand_F", "expand_G",
]
