"""Boundary conditions, spectra and Casimir forces for massless fields of arbitrary spin."""

from .boundary import (
    Plate,
    SpectrumEntry,
    Statistics,
    allowed_k3,
    bc_map,
    bc_residual,
    continuity_residual,
    normal_current_check,
    quantization_value,
    spin_current,
)
from .errors import InputError, NumericalError, PeriodicityError
from .helicity_modes import (
    ModeSolution,
    NullMomentum,
    PlateGeometry,
    eom_residual,
    free_plane_wave,
    helicity_spinor,
    standing_mode,
    standing_solution,
)
from .spinor_core import SpinTensor, Spinor2, Variance, conj_lower, sym_power
from .vacuum_energy import (
    casimir_energy,
    casimir_force,
    extrapolated_energy,
    regulated_energy,
    supergravity_force,
)

__version__ = "0.1.0"

__all__ = [
    "InputError",
    "ModeSolution",
    "NullMomentum",
    "NumericalError",
    "PeriodicityError",
    "Plate",
    "PlateGeometry",
    "SpectrumEntry",
    "SpinTensor",
    "Spinor2",
    "Statistics",
    "Variance",
    "allowed_k3",
    "bc_map",
    "bc_residual",
    "casimir_energy",
    "casimir_force",
    "conj_lower",
    "continuity_residual",
    "eom_residual",
    "extrapolated_energy",
    "free_plane_wave",
    "helicity_spinor",
    "normal_current_check",
    "quantization_value",
    "regulated_energy",
    "spin_current",
    "standing_mode",
    "standing_solution",
    "supergravity_force",
    "sym_power",
]
