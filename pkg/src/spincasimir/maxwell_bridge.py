"""Dictionary between the rank-2 spin-tensor and the vector Maxwell field.

The field is packaged as ``F = E + iB``; the free Maxwell equations become
``i dF/dt = curl F`` and the symmetric spin-tensor built from ``F`` obeys the
rank-2 massless equation. Everything here is a classical c-number identity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boundary import bc_residual, spin_current
from .errors import InputError
from .helicity_modes import NullMomentum, eom_residual
from .spinor_core import SpinTensor

__all__ = [
    "EMField",
    "circular_polarization",
    "spin_from_F",
    "F_from_spin",
    "maxwell_residual",
    "spin_eom_residual",
    "em_stress",
    "stress_equivalence",
    "em_bc_residual",
    "spin_bc_residual",
]


def _vec3(v, name, dtype=float):
    arr = np.asarray(v, dtype=dtype).reshape(-1)
    if arr.shape != (3,):
        raise InputError(f"{name} must have 3 components, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class EMField:
    E: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "E", _vec3(self.E, "E"))
        object.__setattr__(self, "B", _vec3(self.B, "B"))

    @classmethod
    def from_F(cls, F):
        F = _vec3(F, "F", complex)
        return cls(F.real, F.imag)

    @property
    def F(self):
        return self.E + 1j * self.B


def circular_polarization(k, helicity=1):
    """Unit transverse vector ``(theta_hat + i h phi_hat)/sqrt(2)``.

    For ``helicity=+1`` the plane wave ``F0 exp(i(k.x - omega t))`` solves
    the free Maxwell equation.
    """
    if not isinstance(k, NullMomentum):
        k = NullMomentum(k)
    if helicity not in (1, -1):
        raise InputError(f"helicity must be +1 or -1, got {helicity!r}")
    if k.omega == 0.0:
        raise InputError("polarisation is undefined for zero momentum")
    nx, ny, nz = k.k / k.omega
    theta = np.arctan2(np.hypot(nx, ny), nz)
    phi = np.arctan2(ny, nx)
    theta_hat = np.array(
        [np.cos(theta) * np.cos(phi), np.cos(theta) * np.sin(phi), -np.sin(theta)]
    )
    phi_hat = np.array([-np.sin(phi), np.cos(phi), 0.0])
    return (theta_hat + 1j * helicity * phi_hat) / np.sqrt(2.0)


def spin_from_F(F):
    """Symmetric rank-2 spin-tensor with components ``(psi00, psi01, psi11)``."""
    F1, F2, F3 = _vec3(F, "F", complex)
    return SpinTensor(np.array([-F1 + 1j * F2, F3, F1 + 1j * F2]))


def F_from_spin(t):
    if not isinstance(t, SpinTensor) or t.rank != 2:
        raise InputError("F_from_spin expects a rank-2 SpinTensor")
    p00, p01, p11 = t.components
    return np.array([(p11 - p00) / 2.0, (p11 + p00) / 2j, p01])


def maxwell_residual(F0, k):
    """``|omega F0 - i k x F0|`` for the plane wave ``F0 exp(i(k.x - omega t))``."""
    if not isinstance(k, NullMomentum):
        k = NullMomentum(k)
    F0 = _vec3(F0, "F0", complex)
    return float(np.linalg.norm(k.omega * F0 - 1j * np.cross(k.k, F0)))


def spin_eom_residual(F0, k):
    """Rank-2 equation-of-motion residual of the spin-tensor built from ``F0``."""
    if not isinstance(k, NullMomentum):
        k = NullMomentum(k)
    return eom_residual(2, (spin_from_F(F0), k.four_vector()))


def em_stress(E, B):
    """Energy density and Poynting vector: ``((E^2 + B^2)/2, E x B)``."""
    E = _vec3(E, "E")
    B = _vec3(B, "B")
    return np.concatenate([[0.5 * (E @ E + B @ B)], np.cross(E, B)])


def stress_equivalence(F):
    """Mismatch between the spin-tensor current and the Maxwell stress column.

    The rank-2 current with normalised Pauli matrices equals twice
    ``T^{mu 0}``; the factor is removed before comparing.
    """
    F = _vec3(F, "F", complex)
    j = spin_current(2, spin_from_F(F))
    return float(np.max(np.abs(0.5 * j - em_stress(F.real, F.imag))))


def em_bc_residual(E, B, normal):
    """Perfect-conductor residual ``|n.B| + |n x E|``."""
    n = _vec3(normal, "normal")
    if not np.isclose(np.linalg.norm(n), 1.0, atol=1e-12):
        raise InputError("normal must be a unit vector")
    E = _vec3(E, "E")
    B = _vec3(B, "B")
    return float(abs(n @ B) + np.linalg.norm(np.cross(n, E)))


def spin_bc_residual(F, side=0):
    """Mirror condition on the rank-2 tensor built from ``F`` (normal along x3)."""
    return bc_residual(2, side, spin_from_F(F))
