"""Helicity wavefunctions and plane/standing-wave mode solutions.

A mode is a finite superposition of plane-wave terms
``c_T * exp(-i s_T p_T.x)`` with ``p_T`` a null four-momentum and
``s_T = +1`` (positive energy) or ``-1`` (the conjugate-frequency partner).
Both signs solve the same momentum-space kernel condition, so the equation
of motion is checked term by term.

The barred-lowered field compared against the reflected field at a plate is
built term by term from ``conj_lower`` of each coefficient, keeping the
term's propagation factor. This is the left-helicity field assembled from
charge-conjugated momentum spinors; for fields whose positive- and
negative-frequency parts carry the same coefficients it coincides with the
pointwise conjugate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import InputError
from .spinor_core import (
    METRIC,
    SpinTensor,
    Spinor2,
    Variance,
    apply_each_index,
    conj_lower,
    conj_raise,
    pauli,
    sym_power,
    unit_pauli,
)

__all__ = [
    "MAX_RANK",
    "NullMomentum",
    "PlateGeometry",
    "PlaneWaveTerm",
    "ModeSolution",
    "check_rank",
    "helicity_spinor",
    "free_plane_wave",
    "free_mode",
    "standing_solution",
    "standing_mode",
    "kernel_matrix",
    "eom_residual",
]

MAX_RANK = 8


def check_rank(m):
    if not isinstance(m, (int, np.integer)) or not 1 <= m <= MAX_RANK:
        raise InputError(f"rank must be an integer in 1..{MAX_RANK}, got {m!r}")
    return int(m)


@dataclass(frozen=True)
class NullMomentum:
    """Spatial wavevector ``k`` with ``omega = |k|``."""

    k: np.ndarray

    def __post_init__(self):
        k = np.array(self.k, dtype=float).reshape(-1)
        if k.shape != (3,):
            raise InputError(f"wavevector must have 3 components, got {k.shape}")
        k.setflags(write=False)
        object.__setattr__(self, "k", k)

    @classmethod
    def from_parts(cls, k_perp, k3):
        kx, ky = k_perp
        return cls(np.array([kx, ky, k3]))

    @property
    def omega(self):
        return float(np.linalg.norm(self.k))

    @property
    def k_perp(self):
        return np.array([self.k[0], self.k[1], 0.0])

    @property
    def k3(self):
        return float(self.k[2])

    def four_vector(self):
        """Contravariant ``(omega, k)``."""
        return np.concatenate([[self.omega], self.k])

    def reflected(self):
        """Mirror image in the plate plane: ``k3 -> -k3``."""
        return NullMomentum(self.k * np.array([1.0, 1.0, -1.0]))


@dataclass(frozen=True)
class PlateGeometry:
    """Perfect mirrors at ``x3 = 0`` and ``x3 = d``."""

    d: float

    def __post_init__(self):
        if not np.isfinite(self.d) or self.d <= 0:
            raise InputError(f"plate separation must be positive, got {self.d!r}")

    def position(self, side):
        return 0.0 if _side_index(side) == 0 else float(self.d)

    def normal(self, side):
        """Outward unit normal ``n^mu`` at the plate."""
        sign = -1.0 if _side_index(side) == 0 else 1.0
        return np.array([0.0, 0.0, 0.0, sign])

    def on_plate_points(self, side, count=5, seed=0, spread=3.0):
        """Deterministic pseudo-random spacetime points lying on a plate."""
        rng = np.random.default_rng(seed)
        pts = rng.uniform(-spread, spread, size=(count, 4))
        pts[:, 3] = self.position(side)
        return pts


def _side_index(side):
    if side in (0, "0", "lower"):
        return 0
    if side in (1, "d", "upper"):
        return 1
    raise InputError(f"plate selector must be 0 or 'd', got {side!r}")


def kernel_matrix(p):
    """``sigma^mu p_mu`` for a contravariant four-momentum ``p``."""
    p_low = METRIC @ np.asarray(p, dtype=float)
    return sum(pauli(mu) * p_low[mu] for mu in range(4))


def helicity_spinor(k):
    """Unit spinor ``u`` with ``sigma^mu k_mu u = 0``.

    The phase makes the first component real and non-negative; on the
    ``-z`` axis, where that component vanishes, ``u = (0, 1)``.
    """
    if not isinstance(k, NullMomentum):
        k = NullMomentum(k)
    w = k.omega
    if w == 0.0:
        raise InputError("helicity spinor is undefined for zero momentum")
    nx, ny, nz = k.k / w
    # eigenvector of n.sigma with eigenvalue +1: (cos(t/2), e^{i phi} sin(t/2));
    # 1 +- nz are formed without cancellation
    rho2 = nx * nx + ny * ny
    one_plus = 1.0 + nz if nz >= 0 else rho2 / (1.0 - nz)
    one_minus = 1.0 - nz if nz <= 0 else rho2 / (1.0 + nz)
    if one_plus == 0.0:
        return Spinor2(np.array([0.0, 1.0]))
    phase = np.exp(1j * np.arctan2(ny, nx))
    return Spinor2(np.array([np.sqrt(one_plus / 2.0), phase * np.sqrt(one_minus / 2.0)]))


@dataclass(frozen=True)
class PlaneWaveTerm:
    coefficient: SpinTensor
    momentum: np.ndarray  # contravariant (omega, k)
    sign: int = 1

    def phase(self, x):
        p_low = METRIC @ self.momentum
        return np.exp(-1j * self.sign * (p_low @ np.asarray(x, dtype=float)))


@dataclass(frozen=True)
class ModeSolution:
    """Finite superposition of plane-wave terms of a common rank."""

    rank: int
    terms: tuple = field(default_factory=tuple)

    def __post_init__(self):
        for term in self.terms:
            if term.coefficient.rank != self.rank:
                raise InputError("all terms of a mode must share its rank")

    def __call__(self, x):
        return SpinTensor(self._coefficients @ self._phases(x), Variance.UPPER)

    def partner(self, x):
        """Barred-lowered field built term by term from ``conj_lower``."""
        return SpinTensor(self._partner_coefficients @ self._phases(x), Variance.BAR_LOWER)

    @cached_property
    def _coefficients(self):
        return np.array([t.coefficient.components for t in self.terms]).T.reshape(
            self.rank + 1, len(self.terms)
        )

    @cached_property
    def _partner_coefficients(self):
        return np.array(
            [conj_lower(t.coefficient).components for t in self.terms]
        ).T.reshape(self.rank + 1, len(self.terms))

    @cached_property
    def _signed_momenta(self):
        # rows: s_T * (p_T)_mu
        return np.array(
            [t.sign * (METRIC @ t.momentum) for t in self.terms]
        ).reshape(len(self.terms), 4)

    def _phases(self, x):
        return np.exp(-1j * (self._signed_momenta @ np.asarray(x, dtype=float)))

    def __add__(self, other):
        if other.rank != self.rank:
            raise InputError("cannot superpose modes of different rank")
        return ModeSolution(self.rank, self.terms + other.terms)

    def scaled(self, factor):
        return ModeSolution(
            self.rank,
            tuple(
                PlaneWaveTerm(t.coefficient * factor, t.momentum, t.sign)
                for t in self.terms
            ),
        )

    def with_conjugate_frequency(self):
        """Add the negative-frequency copy of every term (same coefficients).

        The result has real propagation factors ``2 cos(p.x)`` per term and
        satisfies the boundary condition pointwise with the true conjugate.
        """
        extra = tuple(
            PlaneWaveTerm(t.coefficient, t.momentum, -t.sign) for t in self.terms
        )
        return ModeSolution(self.rank, self.terms + extra)


def free_mode(m, k):
    """Single positive-energy plane wave built on the helicity spinor."""
    m = check_rank(m)
    if not isinstance(k, NullMomentum):
        k = NullMomentum(k)
    u = helicity_spinor(k)
    return ModeSolution(m, (PlaneWaveTerm(sym_power(u, m), k.four_vector()),))


def free_plane_wave(m, k, x):
    """Value of the free helicity plane wave ``u^{(m)} exp(i(k.x - omega t))`` at ``x``."""
    return free_mode(m, k)(x)


_REFLECT = unit_pauli(3)


def standing_solution(m, k, geom=None, real=False):
    """Incident plus mirror-reflected wave anchored at the plate ``x3 = 0``.

    With ``w = conj_lower(u^{(m)})`` the incident coefficient is the unbarred
    partner of ``w`` (momentum ``(k_perp, k3)``) and the reflected one is
    ``sigma3`` applied to every index of ``w`` (momentum ``(k_perp, -k3)``).
    Both share the factor ``exp(-i omega t) exp(i k_perp.x_perp)``. The
    plate-0 condition then holds identically and the plate-d condition
    reduces to ``cos(k3 d) = 0`` for odd ``m`` and ``sin(k3 d) = 0`` for even.

    ``sigma3`` here is the unit-normalised reflection ``sqrt(2) sigma^3``.
    ``geom`` only validates the plate setup; the admissible ``k3`` values
    are what tie a mode to a particular separation.
    """
    m = check_rank(m)
    if not isinstance(k, NullMomentum):
        k = NullMomentum(k)
    if k.omega == 0.0:
        raise InputError("standing mode needs nonzero momentum")
    if geom is not None and not isinstance(geom, PlateGeometry):
        raise InputError("geom must be a PlateGeometry")
    w = conj_lower(sym_power(helicity_spinor(k), m))
    incident = conj_raise(w)
    reflected = apply_each_index(_REFLECT, w, variance=Variance.UPPER)
    terms = (
        PlaneWaveTerm(incident, k.four_vector()),
        PlaneWaveTerm(reflected, k.reflected().four_vector()),
    )
    mode = ModeSolution(m, terms)
    return mode.with_conjugate_frequency() if real else mode


def standing_mode(m, k, geom, x):
    """Value of :func:`standing_solution` at the spacetime point ``x``."""
    return standing_solution(m, k, geom)(x)


def eom_residual(m, mode):
    """Max over terms of ``|sigma^mu p_mu`` contracted into the first index|.

    ``mode`` may be a :class:`ModeSolution` or a ``(SpinTensor, p)`` pair.
    """
    m = check_rank(m)
    if isinstance(mode, ModeSolution):
        pairs = [(t.coefficient, t.momentum) for t in mode.terms]
        if mode.rank != m:
            raise InputError(f"mode has rank {mode.rank}, expected {m}")
    else:
        coeff, p = mode
        pairs = [(coeff, np.asarray(p, dtype=float))]
    worst = 0.0
    for coeff, p in pairs:
        full = coeff.to_full()
        out = np.tensordot(kernel_matrix(p), full, axes=([1], [0]))
        worst = max(worst, float(np.max(np.abs(out))))
    return worst
