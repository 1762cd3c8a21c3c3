"""Linearised gravity in TT gauge: polarisations, projectors and energy.

Polarisation tensors are built from a hemisphere-canonical axis ``n`` (the
one of ``+-k_hat`` pointing into the upper half-space), which makes them
even under ``k -> -k``. The label ``lambda`` is therefore the helicity along
``n``; it coincides with the helicity along ``k`` for upward ``k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import InputError
from ..maxwell_bridge import circular_polarization
from ..spinor_core import SpinTensor, pauli

__all__ = [
    "PolarizationTensor",
    "canonical_axis",
    "polarization_tensor",
    "tt_kernel",
    "tt_project",
    "SVTParts",
    "svt_decompose",
    "tt_residuals",
    "GravitonMode",
    "GravitonModeSet",
    "spin2_mode_energy",
    "bel_robinson",
]

TT_TOL = 1e-10


def _unit(k_hat):
    k = np.asarray(k_hat, dtype=float).reshape(-1)
    if k.shape != (3,):
        raise InputError("direction must have 3 components")
    norm = np.linalg.norm(k)
    if not np.isclose(norm, 1.0, atol=1e-10):
        raise InputError(f"direction must be a unit vector, |k| = {norm}")
    return k / norm


def canonical_axis(k_hat):
    """``+k_hat`` or ``-k_hat``, whichever lies in the upper hemisphere."""
    k = _unit(k_hat)
    for c in (k[2], k[1], k[0]):
        if c != 0.0:
            return k if c > 0 else -k
    raise InputError("zero direction")


@dataclass(frozen=True)
class PolarizationTensor:
    k_hat: np.ndarray
    lam: int
    e: np.ndarray

    def contract(self, other):
        """``e_ij conj(e'_ij)``."""
        return complex(np.sum(self.e * np.conj(other.e)))


def polarization_tensor(k_hat, lam):
    """``sqrt(2) eps (x) eps`` with ``eps`` the circular vector for ``lam/2``."""
    if lam not in (2, -2):
        raise InputError(f"graviton helicity must be +2 or -2, got {lam!r}")
    k = _unit(k_hat)
    eps = circular_polarization(canonical_axis(k), lam // 2)
    return PolarizationTensor(k, int(lam), np.sqrt(2.0) * np.outer(eps, eps))


def tt_kernel(k_hat):
    """``K_ijkl = 1/2 sum_lam conj(e_ij) e_kl`` so that ``f^TT_kl = K_ijkl f_ij``."""
    out = np.zeros((3, 3, 3, 3), dtype=complex)
    for lam in (2, -2):
        e = polarization_tensor(k_hat, lam).e
        out += 0.5 * np.einsum("ij,kl->ijkl", np.conj(e), e)
    return out


def tt_project(f, k_hat):
    """Transverse-traceless part of a symmetric tensor via the helicity sum."""
    f = _sym3(f)
    out = np.einsum("ijkl,ij->kl", tt_kernel(k_hat), f)
    return out.real if np.isrealobj(f) else out


def _sym3(f):
    f = np.asarray(f)
    if f.shape != (3, 3):
        raise InputError(f"expected a 3x3 tensor, got shape {f.shape}")
    if not np.allclose(f, f.T, atol=1e-12 * max(1.0, np.max(np.abs(f)))):
        raise InputError("tensor must be symmetric")
    return f


@dataclass(frozen=True)
class SVTParts:
    trace: np.ndarray
    scalar: np.ndarray
    vector: np.ndarray
    tt: np.ndarray
    trace_coeff: complex
    scalar_coeff: complex
    vector_coeff: np.ndarray

    def total(self):
        return self.trace + self.scalar + self.vector + self.tt


def svt_decompose(f, k_hat):
    """Split ``f`` into trace, scalar, vector and TT pieces relative to ``k_hat``.

    ``f = (t/3) delta + s (k k - delta/3) + (k v + v k) + f^TT`` with
    ``v`` transverse; the coefficients are fixed by orthogonal projection.
    """
    f = _sym3(f)
    k = _unit(k_hat)
    delta = np.eye(3)
    t = np.trace(f)
    s = 1.5 * (k @ f @ k - t / 3.0)
    proj = delta - np.outer(k, k)
    v = proj @ f @ k
    trace = t / 3.0 * delta
    scalar = s * (np.outer(k, k) - delta / 3.0)
    vector = np.outer(k, v) + np.outer(v, k)
    tt = f - trace - scalar - vector
    return SVTParts(trace, scalar, vector, tt, t, s, v)


def tt_residuals(f, k_hat):
    """``(|k.f|, |tr f|, |f - f^T|)`` for a candidate TT tensor."""
    f = np.asarray(f)
    k = _unit(k_hat)
    return (
        float(np.max(np.abs(k @ f))),
        float(abs(np.trace(f))),
        float(np.max(np.abs(f - f.T))),
    )


@dataclass(frozen=True)
class GravitonMode:
    """One box mode: integer wave numbers, complex amplitude, polarisation."""

    wave_numbers: tuple
    amplitude: complex
    polarization: np.ndarray

    @classmethod
    def helicity(cls, wave_numbers, lam, amplitude):
        n = np.asarray(wave_numbers, dtype=float)
        if not np.any(n):
            raise InputError("zero-momentum mode has no polarisation")
        e = polarization_tensor(n / np.linalg.norm(n), lam).e
        return cls(tuple(int(c) for c in wave_numbers), complex(amplitude), e)


@dataclass(frozen=True)
class GravitonModeSet:
    """Real TT field on a periodic cube of side ``length``.

    ``h_ij = sum (2 omega V)^(-1/2) (a e_ij exp(i(k.x - omega t)) + c.c.)``
    with ``k = 2 pi n / length`` and ``omega = |k|``.
    """

    length: float
    modes: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if not self.length > 0:
            raise InputError("box length must be positive")
        object.__setattr__(self, "modes", tuple(self.modes))

    @property
    def volume(self):
        return self.length**3

    def momentum(self, mode):
        return 2.0 * np.pi * np.asarray(mode.wave_numbers, dtype=float) / self.length

    def check_tt(self, tol=TT_TOL):
        for mode in self.modes:
            k = self.momentum(mode)
            if not np.any(k):
                raise InputError("zero-momentum mode in a TT configuration")
            worst = max(tt_residuals(mode.polarization, k / np.linalg.norm(k)))
            if worst > tol:
                raise InputError(f"mode {mode.wave_numbers} is not transverse-traceless ({worst:.3g})")

    def _amplitude(self, mode):
        w = np.linalg.norm(self.momentum(mode))
        return mode.amplitude * mode.polarization / np.sqrt(2.0 * w * self.volume)

    def h(self, x, t=0.0):
        """Metric perturbation at points ``x`` of shape ``(..., 3)``."""
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape[:-1] + (3, 3))
        for mode in self.modes:
            k = self.momentum(mode)
            ph = np.exp(1j * (x @ k - np.linalg.norm(k) * t))
            out += 2.0 * np.real(ph[..., None, None] * self._amplitude(mode))
        return out

    def gamma0(self, x, t=0.0):
        """``Gamma^0_ij = -1/2 dh_ij/dt``."""
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape[:-1] + (3, 3))
        for mode in self.modes:
            k = self.momentum(mode)
            w = np.linalg.norm(k)
            ph = np.exp(1j * (x @ k - w * t))
            out += -np.real(-1j * w * ph[..., None, None] * self._amplitude(mode))
        return out

    def grad_h(self, x, t=0.0):
        """``d_k h_ij`` with the derivative index last."""
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape[:-1] + (3, 3, 3))
        for mode in self.modes:
            k = self.momentum(mode)
            ph = np.exp(1j * (x @ k - np.linalg.norm(k) * t))
            amp = self._amplitude(mode)[..., None] * (1j * k)
            out += 2.0 * np.real(ph[..., None, None, None] * amp)
        return out


def spin2_mode_energy(modes, box_volume=None, t=0.0):
    """``int [(Gamma^0_ij)^2 + 1/4 (d_k h_ij)^2] d^3x`` by discrete Parseval.

    Fourier coefficients of ``h`` and ``Gamma^0`` are collected on the
    lattice of box momenta (so ``+-k`` pairs interfere correctly) and the
    integral becomes ``V sum_q (|Gamma(q)|^2 + |q|^2 |h(q)|^2 / 4)``.
    """
    if box_volume is not None and not np.isclose(box_volume, modes.volume, rtol=1e-12):
        raise InputError("box_volume disagrees with the mode set's box")
    modes.check_tt()
    h_hat = {}
    g_hat = {}
    for mode in modes.modes:
        k = modes.momentum(mode)
        w = np.linalg.norm(k)
        amp = modes._amplitude(mode) * np.exp(-1j * w * t)
        n = tuple(mode.wave_numbers)
        n_neg = tuple(-c for c in n)
        for key, a, fac in ((n, amp, 0.5j * w), (n_neg, np.conj(amp), -0.5j * w)):
            h_hat[key] = h_hat.get(key, 0.0) + a
            g_hat[key] = g_hat.get(key, 0.0) + fac * a
    total = 0.0
    for key, hq in h_hat.items():
        q2 = (2.0 * np.pi / modes.length) ** 2 * float(np.dot(key, key))
        total += np.sum(np.abs(g_hat[key]) ** 2) + 0.25 * q2 * np.sum(np.abs(hq) ** 2)
    return float(modes.volume * total)


def bel_robinson(t):
    """``T^{mu nu rho sigma}`` from a rank-4 spin-tensor and its conjugate."""
    if not isinstance(t, SpinTensor) or t.rank != 4:
        raise InputError("Bel-Robinson tensor needs a rank-4 SpinTensor")
    psi = t.to_full()
    s = np.array([pauli(mu) for mu in range(4)])
    out = np.einsum(
        "mAa,nBb,rCc,sDd,abcd,ABCD->mnrs", s, s, s, s, psi, np.conj(psi), optimize=True
    )
    return out.real
