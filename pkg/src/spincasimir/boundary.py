"""Mirror boundary conditions, the rank-m current and the allowed spectra.

At a plate with outward normal ``n`` the condition reads
``(n_mu sigma^mu)^{(x)m} psi = conj_lower(psi)``. With the normal along
``x3`` this is the reflection ``(s sigma3)^{(x)m}`` with ``s = +1`` at
``x3 = 0`` and ``s = -1`` at ``x3 = d``, so odd ranks see opposite signs at
the two plates and even ranks see the same one.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InputError, PeriodicityError
from .helicity_modes import (
    ModeSolution,
    PlateGeometry,
    _side_index,
    check_rank,
)
from .spinor_core import (
    METRIC,
    SpinTensor,
    Variance,
    apply_each_index,
    conj_lower,
    pauli,
    unit_pauli,
)

__all__ = [
    "Statistics",
    "Plate",
    "SpectrumEntry",
    "bc_map",
    "bc_residual",
    "impose_bc",
    "quantization_value",
    "allowed_k3",
    "spectrum",
    "spin_current",
    "current_density",
    "normal_current",
    "normal_current_check",
    "continuity_residual",
]

ON_PLATE_TOL = 1e-12
SAMPLE_POINTS = 5
SAMPLE_SEED = 20240611


class Statistics(enum.Enum):
    FERMIONIC = "fermionic"
    BOSONIC = "bosonic"

    @classmethod
    def for_rank(cls, m):
        return cls.FERMIONIC if check_rank(m) % 2 else cls.BOSONIC

    @classmethod
    def for_spin(cls, spin):
        """Map a spin ``s`` (``s = m/2``) to its statistics."""
        try:
            value = Fraction(spin)
        except (TypeError, ValueError) as exc:
            raise InputError(f"spin must be a number, got {spin!r}") from exc
        twice = 2 * value
        if twice <= 0 or twice.denominator != 1:
            raise InputError(f"spin must be a positive multiple of 1/2, got {spin!r}")
        return cls.FERMIONIC if twice.numerator % 2 else cls.BOSONIC

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower()
        for stat in cls:
            if text in (stat.value, stat.value[0], stat.name.lower()):
                return stat
        raise InputError(f"statistics must be 'fermionic' or 'bosonic', got {value!r}")


@dataclass(frozen=True)
class Plate:
    """One mirror: which plate, where it sits and its reflection sign."""

    selector: str
    position: float | None

    @classmethod
    def of(cls, side, geom=None):
        """Resolve ``0``/``'d'``; the far plate's position needs ``geom``."""
        if isinstance(side, Plate):
            return side
        if _side_index(side) == 0:
            return cls("0", 0.0)
        return cls("d", None if geom is None else float(geom.d))

    @property
    def sign(self):
        return 1.0 if self.selector == "0" else -1.0

    @property
    def normal(self):
        return np.array([0.0, 0.0, 0.0, -self.sign])

    def reflection(self, m):
        """Overall sign ``s**m`` of the rank-m condition on this plate."""
        return self.sign ** check_rank(m)


@dataclass(frozen=True)
class SpectrumEntry:
    n: int
    k3: float
    statistics: Statistics


def bc_map(m, side, t):
    """Apply ``(s sigma3)`` to every index of ``t`` (barred-lowered output).

    ``sigma3`` is the unit-normalised Pauli matrix, i.e. ``sqrt(2)`` times
    the normalised one, so the map is an isometry.
    """
    m = check_rank(m)
    if not isinstance(t, SpinTensor) or t.rank != m:
        got = getattr(t, "rank", type(t).__name__)
        raise InputError(f"bc_map expects a rank-{m} SpinTensor, got {got}")
    mat = Plate.of(side).sign * unit_pauli(3)
    return apply_each_index(mat, t, variance=Variance.BAR_LOWER)


def impose_bc(t, side):
    """Return ``t + R(conj_lower(t))`` with ``R`` the plate reflection.

    The result satisfies the boundary condition of ``side`` exactly, for any
    symmetric ``t``; useful for generating random admissible field values.
    """
    mat = Plate.of(side).sign * unit_pauli(3)
    partner = apply_each_index(mat, conj_lower(t), variance=t.variance)
    return t + partner


def _points_on(plate, geom, points):
    if plate.position is None:
        raise InputError("plate 'd' needs a PlateGeometry to locate it")
    if points is None:
        g = geom if geom is not None else PlateGeometry(max(plate.position, 1.0))
        side = 0 if plate.selector == "0" else "d"
        return g.on_plate_points(side, SAMPLE_POINTS, SAMPLE_SEED)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.shape[1] != 4:
        raise InputError("spacetime points need four coordinates")
    off = np.abs(pts[:, 3] - plate.position)
    if np.any(off > ON_PLATE_TOL * max(1.0, abs(plate.position))):
        raise InputError(f"point(s) not on plate x3 = {plate.position}")
    return pts


def bc_residual(m, side, mode, x_on_plate=None, geom=None):
    """Max-norm of ``bc_map(psi) - partner`` over points on a plate.

    ``mode`` is a :class:`ModeSolution` (its term-wise partner is used) or a
    bare :class:`SpinTensor` field value, compared against its pointwise
    ``conj_lower``. Without ``x_on_plate``, five fixed pseudo-random points
    on the plate are used.
    """
    m = check_rank(m)
    plate = Plate.of(side, geom)
    if isinstance(mode, SpinTensor):
        diff = bc_map(m, plate, mode).components - conj_lower(mode).components
        return float(np.max(np.abs(diff)))
    if not isinstance(mode, ModeSolution):
        raise InputError("mode must be a ModeSolution or SpinTensor")
    worst = 0.0
    for x in _points_on(plate, geom, x_on_plate):
        diff = bc_map(m, plate, mode(x)).components - mode.partner(x).components
        worst = max(worst, float(np.max(np.abs(diff))))
    return worst


def quantization_value(m, d, k3):
    """``cos(k3 d)`` for odd ``m``, ``sin(k3 d)`` for even ``m``."""
    m = check_rank(m)
    if not d > 0:
        raise InputError(f"plate separation must be positive, got {d!r}")
    return float(np.cos(k3 * d) if m % 2 else np.sin(k3 * d))


def allowed_k3(m, d, n):
    """Admissible ``k3`` for mode number ``n``.

    Odd ranks need odd ``n`` and give ``n pi / 2d``; even ranks accept any
    ``n >= 0`` and give ``n pi / d``.
    """
    m = check_rank(m)
    if not d > 0:
        raise InputError(f"plate separation must be positive, got {d!r}")
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 0:
        raise InputError(f"mode number must be a non-negative integer, got {n!r}")
    stat = Statistics.for_rank(m)
    if stat is Statistics.FERMIONIC:
        if n % 2 == 0:
            raise PeriodicityError(
                f"odd-rank fields need odd n, got n={n}: the two mirrors impose "
                "opposite signs, so k3 d must be an odd multiple of pi/2 and "
                "a periodic (even-n) mode does not exist"
            )
        return SpectrumEntry(int(n), n * np.pi / (2.0 * d), stat)
    return SpectrumEntry(int(n), n * np.pi / d, stat)


def spectrum(m, d, n_max):
    """All admissible entries with ``n <= n_max``."""
    m = check_rank(m)
    start = 1 if m % 2 else 0
    step = 2 if m % 2 else 1
    return [allowed_k3(m, d, n) for n in range(start, int(n_max) + 1, step)]


def _bilinear(a_full, b_full):
    """``sigma^mu`` on the first index pair, ``sigma^0`` on the rest."""
    m = a_full.ndim
    a = a_full.reshape(2, -1)
    b = b_full.reshape(2, -1).conj()
    scale = 2.0 ** (-(m - 1) / 2.0)
    return scale * np.array([np.einsum("ir,ij,jr->", b, pauli(mu), a) for mu in range(4)])


def spin_current(m, t):
    """``j^mu = sigma^mu sigma^0 ... sigma^0 psi psibar`` (contravariant)."""
    m = check_rank(m)
    if t.rank != m:
        raise InputError(f"expected rank {m}, got {t.rank}")
    full = t.to_full()
    return _bilinear(full, full).real


def current_density(mode, x):
    """The current of a mode evaluated at spacetime point ``x``."""
    return spin_current(mode.rank, mode(x))


def normal_current(plate, j):
    """``n_mu j^mu`` on a plate."""
    return float(plate.normal @ METRIC @ j)


def normal_current_check(m, geom, mode, sides=(0, "d"), points=None):
    """Max of ``|n_mu j^mu|`` over sample points on the requested plates."""
    m = check_rank(m)
    worst = 0.0
    for side in sides:
        plate = Plate.of(side, geom)
        for x in _points_on(plate, geom, points):
            if isinstance(mode, ModeSolution):
                j = current_density(mode, x)
            else:
                j = spin_current(m, mode)
            worst = max(worst, abs(normal_current(plate, j)))
    return worst


def continuity_residual(m, k, points=None):
    """``|d_mu j^mu|`` evaluated analytically for a plane wave or a mode.

    ``k`` may be a wavevector (a single free plane wave is built) or any
    :class:`ModeSolution`. Each pair of terms contributes a bilinear times
    the difference of their phase momenta, so no finite differences enter.
    """
    from .helicity_modes import free_mode

    m = check_rank(m)
    mode = k if isinstance(k, ModeSolution) else free_mode(m, k)
    if points is None:
        points = np.random.default_rng(SAMPLE_SEED).uniform(-3, 3, size=(SAMPLE_POINTS, 4))
    fulls = [t.coefficient.to_full() for t in mode.terms]
    worst = 0.0
    for x in np.atleast_2d(points):
        div = 0.0j
        for a, ta in zip(fulls, mode.terms):
            for b, tb in zip(fulls, mode.terms):
                # psi ~ exp(-i s p.x), psibar ~ exp(+i s' p'.x)
                q = ta.sign * ta.momentum - tb.sign * tb.momentum
                phase = ta.phase(x) * np.conj(tb.phase(x))
                div += -1j * (q @ METRIC @ _bilinear(a, b)) * phase
        worst = max(worst, abs(div))
    return float(worst)
