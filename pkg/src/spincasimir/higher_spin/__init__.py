"""Spin-3/2 and spin-2 supporting machinery."""

from .dirac import (
    clifford_residual,
    dirac_bar,
    epsilon_identity_residual,
    gamma,
    gamma5,
    gamma_lower,
    levi_civita,
)
from .gravity import (
    GravitonMode,
    GravitonModeSet,
    PolarizationTensor,
    SVTParts,
    bel_robinson,
    canonical_axis,
    polarization_tensor,
    spin2_mode_energy,
    svt_decompose,
    tt_kernel,
    tt_project,
    tt_residuals,
)
from .rarita import (
    RaritaMode,
    conjugate_orthogonality_residual,
    dirac_spinor,
    orthonormality_residual,
    rarita_mode,
)

__all__ = [
    "GravitonMode",
    "GravitonModeSet",
    "PolarizationTensor",
    "RaritaMode",
    "SVTParts",
    "bel_robinson",
    "canonical_axis",
    "clifford_residual",
    "conjugate_orthogonality_residual",
    "dirac_bar",
    "dirac_spinor",
    "epsilon_identity_residual",
    "gamma",
    "gamma5",
    "gamma_lower",
    "levi_civita",
    "orthonormality_residual",
    "polarization_tensor",
    "rarita_mode",
    "spin2_mode_energy",
    "svt_decompose",
    "tt_kernel",
    "tt_project",
    "tt_residuals",
]
