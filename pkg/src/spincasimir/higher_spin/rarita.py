"""Spin-3/2 plane-wave modes in generalised Coulomb gauge.

A helicity +-3/2 mode is the product of a helicity +-1 polarisation vector
and a helicity +-1/2 massless Dirac spinor, ``u^mu = eps^mu u_D`` with
``eps^0 = 0``. Vector indices are contravariant throughout; contractions
over ``mu`` use the metric.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import InputError
from ..helicity_modes import NullMomentum, helicity_spinor
from ..maxwell_bridge import circular_polarization
from ..spinor_core import METRIC
from .dirac import dirac_bar, gamma

__all__ = [
    "RaritaMode",
    "rarita_mode",
    "dirac_spinor",
    "orthonormality_residual",
    "conjugate_orthogonality_residual",
]

_HELICITIES = (Fraction(3, 2), Fraction(-3, 2))


def _parse_lambda(lam):
    try:
        value = Fraction(lam)
    except (TypeError, ValueError) as exc:
        raise InputError(f"helicity must be +3/2 or -3/2, got {lam!r}") from exc
    if value not in _HELICITIES:
        raise InputError(f"helicity must be +3/2 or -3/2, got {lam!r}")
    return 1 if value > 0 else -1


def dirac_spinor(k, h):
    """Massless Dirac spinor ``sqrt(omega) (chi, h chi)`` with ``(k.sigma) chi = h omega chi``."""
    chi = helicity_spinor(k if h > 0 else NullMomentum(-k.k)).components
    return np.sqrt(k.omega) * np.concatenate([chi, h * chi])


@dataclass(frozen=True)
class RaritaMode:
    """Four bispinors ``u^mu`` (array of shape ``(4, 4)``: vector, spinor)."""

    k: NullMomentum
    lam: Fraction
    u: np.ndarray

    def lowered(self):
        return METRIC @ self.u

    def gamma_trace(self):
        """``gamma^mu u_mu``."""
        low = self.lowered()
        return sum(gamma(mu) @ low[mu] for mu in range(4))

    def divergence(self):
        """``k^mu u_mu``."""
        return self.k.four_vector() @ self.lowered()

    def constraint_residuals(self):
        return {
            "gamma_trace": float(np.max(np.abs(self.gamma_trace()))),
            "divergence": float(np.max(np.abs(self.divergence()))),
            "time_component": float(np.max(np.abs(self.u[0]))),
        }

    def charge_conjugate(self):
        """``v^mu = i gamma^2 gamma^0 (ubar^mu)^T = i gamma^2 (u^mu)*``."""
        g2 = gamma(2)
        return np.array([1j * g2 @ np.conj(um) for um in self.u])


def rarita_mode(k, lam):
    """Positive-energy helicity ``lam = +-3/2`` mode for null momentum ``k``."""
    if not isinstance(k, NullMomentum):
        k = NullMomentum(k)
    if k.omega == 0.0:
        raise InputError("spin-3/2 mode needs nonzero momentum")
    h = _parse_lambda(lam)
    eps = np.concatenate([[0.0], circular_polarization(k, h)])
    u = np.outer(eps, dirac_spinor(k, h))
    return RaritaMode(k, Fraction(3 * h, 2), u)


def _bar_gamma(a, b, nu):
    """``abar^mu gamma^nu b_mu`` for vector-spinor arrays."""
    low = METRIC @ b
    return sum(dirac_bar(a[mu]) @ gamma(nu) @ low[mu] for mu in range(4))


def orthonormality_residual(k):
    """Max over ``nu`` and helicity pairs of ``|ubar gamma^nu u' + 2 k^nu delta|``."""
    if not isinstance(k, NullMomentum):
        k = NullMomentum(k)
    modes = [rarita_mode(k, lam) for lam in _HELICITIES]
    kv = k.four_vector()
    worst = 0.0
    for i, a in enumerate(modes):
        for j, b in enumerate(modes):
            for nu in range(4):
                target = -2.0 * kv[nu] if i == j else 0.0
                worst = max(worst, abs(_bar_gamma(a.u, b.u, nu) - target))
    return float(worst)


def conjugate_orthogonality_residual(k):
    """Max of ``|ubar(k) gamma^0 v(-k)|`` over helicity pairs, plus the
    deviation of ``vbar gamma^nu v`` from ``-2 k^nu``."""
    if not isinstance(k, NullMomentum):
        k = NullMomentum(k)
    kv = k.four_vector()
    minus = NullMomentum(-k.k)
    worst = 0.0
    for la in _HELICITIES:
        a = rarita_mode(k, la)
        v_self = a.charge_conjugate()
        for nu in range(4):
            worst = max(worst, abs(_bar_gamma(v_self, v_self, nu) + 2.0 * kv[nu]))
        for lb in _HELICITIES:
            v = rarita_mode(minus, lb).charge_conjugate()
            worst = max(worst, abs(_bar_gamma(a.u, v, 0)))
    return float(worst)
