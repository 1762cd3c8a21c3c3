"""Dirac matrices in the Dirac basis and the epsilon-gamma5 identity."""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from ..errors import InputError
from ..spinor_core import METRIC, unit_pauli

__all__ = [
    "gamma",
    "gamma_lower",
    "gamma5",
    "levi_civita",
    "dirac_bar",
    "clifford_residual",
    "epsilon_identity_residual",
]


@lru_cache(maxsize=None)
def _gammas():
    zero = np.zeros((2, 2), dtype=complex)
    eye = np.eye(2, dtype=complex)
    out = [np.block([[eye, zero], [zero, -eye]])]
    for i in (1, 2, 3):
        s = unit_pauli(i)
        out.append(np.block([[zero, s], [-s, zero]]))
    for g in out:
        g.setflags(write=False)
    return tuple(out)


def gamma(mu):
    """Contravariant ``gamma^mu``."""
    if not isinstance(mu, (int, np.integer)) or not 0 <= mu <= 3:
        raise InputError(f"spacetime index must be 0..3, got {mu!r}")
    return _gammas()[mu]


def gamma_lower(mu):
    return METRIC[mu, mu] * gamma(mu)


def gamma5():
    """``i gamma^0 gamma^1 gamma^2 gamma^3``."""
    g = _gammas()
    return 1j * g[0] @ g[1] @ g[2] @ g[3]


@lru_cache(maxsize=None)
def levi_civita():
    """Contravariant ``eps^{mu nu rho sigma}`` with ``eps^{0123} = +1``."""
    eps = np.zeros((4, 4, 4, 4))
    for perm in itertools.permutations(range(4)):
        # parity from the inversion count
        inv = sum(1 for i in range(4) for j in range(i + 1, 4) if perm[i] > perm[j])
        eps[perm] = -1.0 if inv % 2 else 1.0
    eps.setflags(write=False)
    return eps


def dirac_bar(u):
    """Row spinor ``u^dagger gamma^0`` (acts on the last axis)."""
    return np.conj(u) @ gamma(0)


def clifford_residual(mu, nu):
    """``|{gamma^mu, gamma^nu} - 2 g^{mu nu}|`` (max-norm)."""
    a, b = gamma(mu), gamma(nu)
    return float(np.max(np.abs(a @ b + b @ a - 2.0 * METRIC[mu, nu] * np.eye(4))))


def epsilon_identity_residual(mu, nu, sigma):
    """Max-norm mismatch of
    ``eps^{mu nu rho sigma} gamma5 gamma_rho =
    i(g^{mu nu} gamma^sigma - g^{mu sigma} gamma^nu - g^{nu sigma} gamma^mu
    + gamma^mu gamma^sigma gamma^nu)``.
    """
    for idx in (mu, nu, sigma):
        gamma(idx)
    eps = levi_civita()
    g5 = gamma5()
    lhs = sum(eps[mu, nu, rho, sigma] * g5 @ gamma_lower(rho) for rho in range(4))
    g = METRIC
    rhs = 1j * (
        g[mu, nu] * gamma(sigma)
        - g[mu, sigma] * gamma(nu)
        - g[nu, sigma] * gamma(mu)
        + gamma(mu) @ gamma(sigma) @ gamma(nu)
    )
    return float(np.max(np.abs(lhs - rhs)))
