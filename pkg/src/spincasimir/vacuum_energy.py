"""Exponentially regulated vacuum energy between plates and Casimir forces.

After the transverse integral, the mode sum per unit area becomes a second
alpha-derivative of a geometric series over the allowed ``k3``::

    fermionic:  b(alpha) = sum_{n odd} exp(-alpha n pi / 2d) / alpha
                         = 1 / (2 alpha sinh(c alpha))
    bosonic:    b(alpha) = sum'_{n>=0} exp(-alpha n pi / d) / alpha
                         = coth(c alpha) / (2 alpha)

with ``c = pi / 2d`` and the primed sum giving ``n = 0`` half weight. The
energies are ``E_f = -b_f''/pi`` and ``E_b = +b_b''/(2 pi)``; both behave as
``c_{-4} alpha^-4 + c_0 + O(alpha^2)`` with ``c_{-4}`` linear in ``d``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np
from scipy import integrate

from .boundary import Statistics
from .errors import InputError, NumericalError

__all__ = [
    "Statistics",
    "RegulatedEnergy",
    "LaurentFit",
    "regulated_bracket",
    "regulated_energy",
    "casimir_energy",
    "casimir_force",
    "force_expression",
    "laurent_fit",
    "extrapolated_energy",
    "extrapolated_bracket",
    "geometric_grid",
    "supergravity_force",
    "transverse_reduction_check",
]

ENERGY_POWERS = (-4, 0, 2, 4, 6)
BRACKET_POWERS = (-2, 0, 2, 4, 6)
MAX_CONDITION = 1e12
FIT_DPS = 50

# E = coeff * pi^2 / d^3 and F = 3 E / d
_ENERGY_COEFF = {Statistics.FERMIONIC: -7.0 / 2880.0, Statistics.BOSONIC: -1.0 / 720.0}
_FORCE_TEXT = {
    Statistics.FERMIONIC: "-7pi^2/960 d^4",
    Statistics.BOSONIC: "-pi^2/240 d^4",
}


def _positive(name, value):
    try:
        ok = value > 0 and math.isfinite(float(value))
    except TypeError:
        ok = False
    if not ok:
        raise InputError(f"{name} must be positive and finite, got {value!r}")


def _stat(value):
    """Accept a :class:`Statistics`, a statistics name or a spin."""
    if isinstance(value, Statistics):
        return value
    if isinstance(value, str):
        try:
            return Statistics.parse(value)
        except InputError:
            pass
    return Statistics.for_spin(value)


class _Lib:
    """The few elementary functions needed, from numpy or mpmath."""

    def __init__(self, high_precision):
        self.mp = high_precision
        if high_precision:
            self.sinh, self.cosh, self.tanh = mp.sinh, mp.cosh, mp.tanh
            self.pi = mp.pi
            self.num = mp.mpf
        else:
            self.sinh, self.cosh, self.tanh = math.sinh, math.cosh, math.tanh
            self.pi = math.pi
            self.num = float


def _g_derivatives(stat, c, alpha, lib):
    """``g`` with ``b = 1/(2g)`` and its first two derivatives in ``alpha``."""
    x = c * alpha
    if stat is Statistics.FERMIONIC:
        s, ch = lib.sinh(x), lib.cosh(x)
        return alpha * s, s + x * ch, 2 * c * ch + c * x * s
    t = lib.tanh(x)
    sech2 = 1 - t * t
    return alpha * t, t + x * sech2, 2 * c * sech2 - 2 * c * x * sech2 * t


def _bracket(stat, d, alpha, lib):
    c = lib.pi / (2 * lib.num(d))
    g, _, _ = _g_derivatives(stat, c, lib.num(alpha), lib)
    return 1 / (2 * g)


def _energy(stat, d, alpha, lib):
    c = lib.pi / (2 * lib.num(d))
    g, g1, g2 = _g_derivatives(stat, c, lib.num(alpha), lib)
    b2 = (2 * g1 * g1 - g * g2) / (2 * g**3)
    return -b2 / lib.pi if stat is Statistics.FERMIONIC else b2 / (2 * lib.pi)


def regulated_bracket(stat, d, alpha, high_precision=False):
    """The resummed mode series ``b(alpha)`` before differentiation."""
    stat = _stat(stat)
    _positive("d", d)
    _positive("alpha", alpha)
    return _bracket(stat, d, alpha, _Lib(high_precision))


def regulated_energy(stat, d, alpha, high_precision=False):
    """Regulated vacuum energy per unit plate area (analytic second derivative).

    With ``high_precision`` the value is an ``mpmath.mpf`` at the current
    working precision; otherwise a float.
    """
    stat = _stat(stat)
    _positive("d", d)
    _positive("alpha", alpha)
    return _energy(stat, d, alpha, _Lib(high_precision))


@dataclass(frozen=True)
class RegulatedEnergy:
    statistics: Statistics
    d: float
    alpha: float
    value: float

    @classmethod
    def evaluate(cls, stat, d, alpha):
        stat = _stat(stat)
        return cls(stat, float(d), float(alpha), regulated_energy(stat, d, alpha))


def casimir_energy(stat, d):
    """Finite part of the regulated energy: ``-7 pi^2/2880 d^3`` or ``-pi^2/720 d^3``."""
    stat = _stat(stat)
    _positive("d", d)
    return _ENERGY_COEFF[stat] * math.pi**2 / d**3


def casimir_force(stat_or_spin, d):
    """``-dE/dd`` per unit area; depends on the spin only through statistics."""
    stat = _stat(stat_or_spin)
    _positive("d", d)
    return 3.0 * _ENERGY_COEFF[stat] * math.pi**2 / d**4


def force_expression(stat_or_spin):
    return _FORCE_TEXT[_stat(stat_or_spin)]


def supergravity_force(d):
    """Graviton plus gravitino force."""
    return casimir_force(Statistics.BOSONIC, d) + casimir_force(Statistics.FERMIONIC, d)


@dataclass(frozen=True)
class LaurentFit:
    """Least-squares fit ``sum_p c_p alpha^p``."""

    powers: tuple
    coefficients: dict
    residual: float
    condition_number: float
    alphas: tuple

    def coefficient(self, power):
        return self.coefficients[power]

    @property
    def c0(self):
        return self.coefficients[0]


def geometric_grid(alpha_min, alpha_max, points):
    _positive("alpha_min", alpha_min)
    _positive("alpha_max", alpha_max)
    if alpha_max <= alpha_min:
        raise InputError("alpha_max must exceed alpha_min")
    if int(points) != points or points < 2:
        raise InputError(f"need an integer number of grid points >= 2, got {points!r}")
    return np.geomspace(alpha_min, alpha_max, int(points))


def laurent_fit(alphas, values, powers):
    """Fit ``values`` on ``alphas`` in the monomials ``alpha**p``.

    Columns are normalised before solving; the condition number reported is
    that of the normalised design matrix. The solve runs at the current
    mpmath precision so that large divergent terms do not swamp ``c_0``.
    """
    alphas = [mp.mpf(a) for a in alphas]
    values = [mp.mpf(v) for v in values]
    powers = tuple(powers)
    n, p = len(alphas), len(powers)
    if n < p + 1:
        raise NumericalError(
            f"underdetermined fit: {n} grid points for {p} coefficients "
            f"(need at least {p + 1})"
        )
    design = mp.matrix(n, p)
    for i, a in enumerate(alphas):
        for j, q in enumerate(powers):
            design[i, j] = a**q
    scales = [mp.sqrt(sum(design[i, j] ** 2 for i in range(n))) for j in range(p)]
    for j in range(p):
        for i in range(n):
            design[i, j] /= scales[j]
    sv = np.linalg.svd(np.array(design.tolist(), dtype=float), compute_uv=False)
    cond = float(sv[0] / sv[-1]) if sv[-1] > 0 else math.inf
    if not cond < MAX_CONDITION:
        raise NumericalError(f"ill-conditioned fit (condition number {cond:.3g})", cond)
    sol, res = mp.qr_solve(design, mp.matrix(values))
    coeffs = {q: float(sol[j] / scales[j]) for j, q in enumerate(powers)}
    return LaurentFit(powers, coeffs, float(res), cond, tuple(float(a) for a in alphas))


def _fit(fn, stat, d, alpha_grid, powers, dps):
    stat = _stat(stat)
    _positive("d", d)
    grid = np.asarray(alpha_grid, dtype=float).reshape(-1)
    if grid.size == 0 or np.any(~(grid > 0)):
        raise InputError("alpha grid must contain positive values")
    with mp.workdps(dps):
        values = [fn(stat, d, a, _Lib(True)) for a in grid]
        return laurent_fit(grid, values, powers)


def extrapolated_energy(stat, d, alpha_grid, powers=ENERGY_POWERS, dps=FIT_DPS):
    """Independent numerical route to the finite part: fit the regulated
    energy over ``alpha_grid`` and read off ``c_0``.
    """
    return _fit(_energy, stat, d, alpha_grid, powers, dps)


def extrapolated_bracket(stat, d, alpha_grid, powers=BRACKET_POWERS, dps=FIT_DPS):
    """Laurent fit of the undifferentiated series ``b(alpha)``.

    For fermions ``c_0 = -pi/24d`` and ``c_2 = 7 pi^3 / 5760 d^3``.
    """
    return _fit(_bracket, stat, d, alpha_grid, powers, dps)


def transverse_reduction_check(k3, cutoff):
    """Compare the 2-d transverse integral with its 1-d radial reduction.

    ``2 int_{|q|<L} sqrt(q^2 + k3^2) d^2q / (2 pi)^2`` (polar quadrature)
    against ``(1/pi) int_{k3}^{sqrt(L^2 + k3^2)} x^2 dx``.
    """
    _positive("k3", k3)
    if not cutoff >= 0:
        raise InputError(f"cutoff must be non-negative, got {cutoff!r}")
    if cutoff == 0:
        return 0.0
    two_d, _ = integrate.dblquad(
        lambda r, theta: r * math.sqrt(r * r + k3 * k3),
        0.0,
        2.0 * math.pi,
        0.0,
        cutoff,
        epsabs=1e-12,
        epsrel=1e-12,
    )
    two_d *= 2.0 / (2.0 * math.pi) ** 2
    one_d, _ = integrate.quad(
        lambda x: x * x, k3, math.sqrt(cutoff**2 + k3**2), epsabs=1e-12, epsrel=1e-12
    )
    return abs(two_d - one_d / math.pi)
