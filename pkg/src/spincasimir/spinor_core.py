r"""Two-spinor calculus kernel.

Conventions
-----------
* Metric ``diag(1, -1, -1, -1)``; four-vectors are plain ``ndarray`` of
  shape ``(4,)`` holding contravariant components unless stated otherwise.
* Pauli matrices carry the :math:`1/\sqrt{2}` normalisation, so that
  ``tr(sigma^mu sigma~^nu) = g^{mu nu}``. A matrix ``sigma^mu`` is indexed
  ``[abar, a]``; ``sigma~^mu`` is indexed ``[a, abar]``.
* The symplectic form is ``omega = [[0, 1], [-1, 0]]`` for every index type.
  Lowering contracts the *first* slot (``psi_b = omega_ab psi^a``), raising
  contracts the *second* (``psi^a = omega^ab psi_b``).
* A totally symmetric rank-``m`` spin-tensor is stored as ``m + 1``
  components; component ``j`` is the value at any index tuple containing
  ``j`` ones.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .errors import InputError

__all__ = [
    "METRIC",
    "OMEGA",
    "DEFAULT_TOL",
    "Variance",
    "Spinor2",
    "SpinTensor",
    "pauli",
    "pauli_tilde",
    "unit_pauli",
    "minkowski_trace",
    "lower_vector",
    "minkowski_inner",
    "vector_to_spin",
    "spin_to_vector",
    "raise_index",
    "lower_index",
    "contract",
    "sym_power",
    "conj_lower",
    "conj_raise",
    "apply_each_index",
    "is_hermitian",
]

DEFAULT_TOL = 1e-10

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])
METRIC.setflags(write=False)

OMEGA = np.array([[0.0, 1.0], [-1.0, 0.0]])
OMEGA.setflags(write=False)

# lowering with the first slot is multiplication by omega^T
_LOWER = OMEGA.T.astype(complex)
_RAISE = OMEGA.astype(complex)

_UNIT_PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
for _m in _UNIT_PAULI:
    _m.setflags(write=False)

_SQRT_HALF = 1.0 / np.sqrt(2.0)


class Variance(enum.Enum):
    """Index type of a spinor: position (upper/lower) and barred-ness."""

    UPPER = "upper"
    LOWER = "lower"
    BAR_UPPER = "bar_upper"
    BAR_LOWER = "bar_lower"

    @property
    def barred(self):
        return self in (Variance.BAR_UPPER, Variance.BAR_LOWER)

    @property
    def is_upper(self):
        return self in (Variance.UPPER, Variance.BAR_UPPER)


_TOGGLE_POSITION = {
    Variance.UPPER: Variance.LOWER,
    Variance.LOWER: Variance.UPPER,
    Variance.BAR_UPPER: Variance.BAR_LOWER,
    Variance.BAR_LOWER: Variance.BAR_UPPER,
}
# complex conjugation followed by lowering, and its inverse
_CONJ_LOWER = {
    Variance.UPPER: Variance.BAR_LOWER,
    Variance.BAR_LOWER: Variance.UPPER,
    Variance.LOWER: Variance.BAR_UPPER,
    Variance.BAR_UPPER: Variance.LOWER,
}


def _check_mu(mu):
    if not isinstance(mu, (int, np.integer)) or not 0 <= mu <= 3:
        raise InputError(f"spacetime index must be 0, 1, 2 or 3, got {mu!r}")


def unit_pauli(mu):
    """Standard (unnormalised) Pauli matrix; ``unit_pauli(0)`` is the identity."""
    _check_mu(mu)
    return _UNIT_PAULI[mu]


def pauli(mu):
    """Normalised Pauli matrix ``sigma^mu`` (indexed ``[abar, a]``)."""
    _check_mu(mu)
    return _SQRT_HALF * _UNIT_PAULI[mu]


def pauli_tilde(mu):
    """``sigma~^mu``: equal to ``sigma^0`` for ``mu = 0`` and ``-sigma^i`` otherwise."""
    _check_mu(mu)
    sign = 1.0 if mu == 0 else -1.0
    return sign * _SQRT_HALF * _UNIT_PAULI[mu]


def minkowski_trace(mu, nu):
    """``tr(sigma_mu sigma~_nu)``, which equals ``g_{mu nu}``."""
    s_lower = METRIC[mu, mu] * pauli(mu)
    t_lower = METRIC[nu, nu] * pauli_tilde(nu)
    return float(np.trace(s_lower @ t_lower).real)


def lower_vector(v):
    """Lower (or raise; the metric is its own inverse) a four-vector index."""
    return METRIC @ np.asarray(v)


def minkowski_inner(v, w):
    """``g(v, w)`` computed as ``tr([v*][w])`` through the spinor dictionary."""
    return np.trace(vector_to_spin(v, "lower") @ vector_to_spin(w, "upper"))


def vector_to_spin(v, variance="lower"):
    """Convert a contravariant four-vector to a 2x2 spin matrix.

    ``variance="lower"`` gives ``v_{abar a} = sigma^mu v_mu`` (the matrix
    ``[v*]``); ``variance="upper"`` gives ``v^{a abar} = sigma~^mu v_mu``.
    """
    v_low = lower_vector(np.asarray(v, dtype=complex))
    if variance == "lower":
        basis = pauli
    elif variance == "upper":
        basis = pauli_tilde
    else:
        raise InputError(f"variance must be 'lower' or 'upper', got {variance!r}")
    return sum(basis(mu) * v_low[mu] for mu in range(4))


def spin_to_vector(s, variance="lower"):
    """Inverse of :func:`vector_to_spin`; returns contravariant components."""
    s = np.asarray(s)
    if variance == "upper":
        out = [np.sum(pauli(mu) * s.T) for mu in range(4)]
    elif variance == "lower":
        out = [np.sum(pauli_tilde(mu) * s.T) for mu in range(4)]
    else:
        raise InputError(f"variance must be 'lower' or 'upper', got {variance!r}")
    return np.array(out)


def is_hermitian(mat, tol=DEFAULT_TOL):
    mat = np.asarray(mat)
    return bool(np.allclose(mat, mat.conj().T, atol=tol, rtol=0.0))


@dataclass(frozen=True)
class Spinor2:
    """A two-component spinor with an explicit index type."""

    components: np.ndarray
    variance: Variance = Variance.UPPER

    def __post_init__(self):
        comps = np.array(self.components, dtype=complex).reshape(-1)
        if comps.shape != (2,):
            raise InputError(f"a spinor has two components, got shape {comps.shape}")
        comps.setflags(write=False)
        object.__setattr__(self, "components", comps)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.components, dtype=dtype)


def raise_index(s):
    """``psi^a = omega^{ab} psi_b`` (contraction on the second slot)."""
    if s.variance.is_upper:
        raise InputError(f"cannot raise an index of variance {s.variance.value}")
    return Spinor2(_RAISE @ s.components, _TOGGLE_POSITION[s.variance])


def lower_index(s):
    """``psi_b = omega_{ab} psi^a`` (contraction on the first slot)."""
    if not s.variance.is_upper:
        raise InputError(f"cannot lower an index of variance {s.variance.value}")
    return Spinor2(_LOWER @ s.components, _TOGGLE_POSITION[s.variance])


def contract(lower, upper):
    """Pair a lower-index spinor with an upper-index one of the same barred-ness."""
    if lower.variance.is_upper or not upper.variance.is_upper:
        raise InputError("contract expects (lower, upper) spinors")
    if lower.variance.barred != upper.variance.barred:
        raise InputError("cannot contract a barred index with an unbarred one")
    return complex(lower.components @ upper.components)


@lru_cache(maxsize=None)
def _index_table(m):
    """All 2**m index tuples and the count of ones in each."""
    idx = np.array(list(itertools.product((0, 1), repeat=m)), dtype=int)
    return idx, idx.sum(axis=1)


@dataclass(frozen=True)
class SpinTensor:
    """Totally symmetric rank-``m`` spin-tensor stored as ``m + 1`` components."""

    components: np.ndarray
    variance: Variance = Variance.UPPER

    def __post_init__(self):
        comps = np.array(self.components, dtype=complex).reshape(-1)
        if comps.size < 2:
            raise InputError("a spin-tensor needs rank >= 1 (at least two components)")
        comps.setflags(write=False)
        object.__setattr__(self, "components", comps)

    @property
    def rank(self):
        return self.components.size - 1

    def to_full(self):
        """Expand to the ``(2,) * m`` array of all index values."""
        m = self.rank
        _, ones = _index_table(m)
        return self.components[ones].reshape((2,) * m)

    @classmethod
    def from_full(cls, full, variance=Variance.UPPER, tol=None):
        """Compress a symmetric ``(2,) * m`` array.

        With ``tol`` given, the array is checked for total symmetry first.
        """
        full = np.asarray(full, dtype=complex)
        m = full.ndim
        idx, ones = _index_table(m)
        flat = full.reshape(-1)
        comps = np.zeros(m + 1, dtype=complex)
        # average over each multiplicity class; exact for symmetric input
        np.add.at(comps, ones, flat)
        comps /= np.array([comb(m, j) for j in range(m + 1)])
        if tol is not None and np.max(np.abs(comps[ones] - flat)) > tol:
            raise InputError("array is not totally symmetric")
        return cls(comps, variance)

    def norm(self):
        """Max-norm over the independent components."""
        return float(np.max(np.abs(self.components)))

    def frobenius(self):
        """Euclidean norm of the full tensor (binomial multiplicities included)."""
        m = self.rank
        weights = np.array([comb(m, j) for j in range(m + 1)], dtype=float)
        return float(np.sqrt(np.sum(weights * np.abs(self.components) ** 2)))

    def __add__(self, other):
        self._check_compatible(other)
        return SpinTensor(self.components + other.components, self.variance)

    def __sub__(self, other):
        self._check_compatible(other)
        return SpinTensor(self.components - other.components, self.variance)

    def __mul__(self, scalar):
        return SpinTensor(self.components * scalar, self.variance)

    __rmul__ = __mul__

    def __neg__(self):
        return SpinTensor(-self.components, self.variance)

    def _check_compatible(self, other):
        if not isinstance(other, SpinTensor):
            raise TypeError(f"expected SpinTensor, got {type(other).__name__}")
        if other.rank != self.rank:
            raise InputError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.components, dtype=dtype)


def apply_each_index(mat, t, variance=None):
    """Apply the same 2x2 matrix to every index of a symmetric tensor."""
    full = t.to_full()
    for axis in range(t.rank):
        full = np.moveaxis(np.tensordot(mat, full, axes=([1], [axis])), 0, axis)
    return SpinTensor.from_full(full, t.variance if variance is None else variance)


def sym_power(s, m):
    """Symmetric product of ``m`` copies of ``s``.

    Component ``j`` equals ``s0**(m - j) * s1**j``.
    """
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise InputError(f"rank must be a positive integer, got {m!r}")
    if isinstance(s, Spinor2):
        comps, variance = s.components, s.variance
    else:
        comps, variance = np.asarray(s, dtype=complex).reshape(-1), Variance.UPPER
    j = np.arange(m + 1)
    return SpinTensor(comps[0] ** (m - j) * comps[1] ** j, variance)


def conj_lower(t):
    """Barred-lowered partner: conjugate every component, then lower each index.

    Applied twice this returns ``(-1)**m`` times the input, since ``omega``
    squares to minus the identity.
    """
    if isinstance(t, Spinor2):
        return Spinor2(_LOWER @ t.components.conj(), _CONJ_LOWER[t.variance])
    lowered = apply_each_index(_LOWER, SpinTensor(t.components.conj(), t.variance))
    return SpinTensor(lowered.components, _CONJ_LOWER[t.variance])


def conj_raise(t):
    """Inverse of :func:`conj_lower`."""
    out = conj_lower(t)
    if isinstance(t, Spinor2):
        return Spinor2(-out.components, out.variance)
    return out if t.rank % 2 == 0 else -out
