import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spincasimir.boundary import spin_current
from spincasimir.errors import InputError
from spincasimir.higher_spin import (
    GravitonMode,
    GravitonModeSet,
    bel_robinson,
    canonical_axis,
    polarization_tensor,
    spin2_mode_energy,
    svt_decompose,
    tt_kernel,
    tt_project,
    tt_residuals,
)
from spincasimir.spinor_core import SpinTensor
from spincasimir.verification import random_mode_set

from conftest import finite, spin_tensors, unit_vectors

sym3 = st.lists(finite, min_size=9, max_size=9).map(lambda v: np.reshape(v, (3, 3))).map(lambda a: a + a.T)


def lambda_projector(k):
    # textbook TT projector Lambda_ijkl built from P = 1 - k k
    P = np.eye(3) - np.outer(k, k)
    return (
        np.einsum("ik,jl->ijkl", P, P) + np.einsum("il,jk->ijkl", P, P) - np.einsum("ij,kl->ijkl", P, P)
    ) / 2


def grid_energy(modes, t, n=16):
    # real-space trapezoid rule (exact for band-limited periodic integrands)
    L = modes.length
    g = np.arange(n) * L / n
    X = np.stack(np.meshgrid(g, g, g, indexing="ij"), -1)
    G = modes.gamma0(X, t)
    D = modes.grad_h(X, t)
    return float((np.sum(G**2) + 0.25 * np.sum(D**2)) * (L / n) ** 3)


class TestPolarization:
    def test_z_frozen(self):
        e = polarization_tensor([0, 0, 1], 2).e
        eps = np.array([1, 1j, 0]) / np.sqrt(2)
        np.testing.assert_allclose(e, np.sqrt(2) * np.outer(eps, eps))
        assert abs(np.trace(e)) < 1e-15

    @given(unit_vectors())
    def test_properties(self, k):
        ep, em = polarization_tensor(k, 2), polarization_tensor(k, -2)
        assert abs(ep.contract(ep) - 2) < 1e-12
        assert abs(em.contract(em) - 2) < 1e-12
        assert abs(ep.contract(em)) < 1e-12
        for e in (ep.e, em.e):
            assert max(tt_residuals(e, k)) < 1e-12
        np.testing.assert_allclose(polarization_tensor(-k, 2).e, ep.e, atol=1e-12)
        np.testing.assert_allclose(np.conj(ep.e), em.e, atol=1e-12)

    def test_canonical_axis(self):
        np.testing.assert_array_equal(canonical_axis([0, 0, -1]), [0, 0, 1])
        np.testing.assert_array_equal(canonical_axis([0, -1, 0]), [0, 1, 0])
        np.testing.assert_array_equal(canonical_axis([-1, 0, 0]), [1, 0, 0])

    def test_bad_input(self):
        with pytest.raises(InputError):
            polarization_tensor([0, 0, 1], 1)
        with pytest.raises(InputError):
            polarization_tensor([0, 0, 2], 2)


class TestSVT:
    def test_identity(self):
        parts = svt_decompose(np.eye(3), [0, 0, 1])
        np.testing.assert_allclose(parts.trace, np.eye(3))
        for p in (parts.scalar, parts.vector, parts.tt):
            np.testing.assert_allclose(p, 0, atol=1e-15)

    @given(unit_vectors())
    def test_longitudinal(self, k):
        parts = svt_decompose(np.outer(k, k), k)
        assert parts.trace_coeff == pytest.approx(1.0)
        assert parts.scalar_coeff == pytest.approx(1.0)
        np.testing.assert_allclose(parts.vector, 0, atol=1e-14)
        np.testing.assert_allclose(parts.tt, 0, atol=1e-14)

    @given(sym3, unit_vectors())
    def test_reconstruction_and_orthogonality(self, f, k):
        parts = svt_decompose(f, k)
        np.testing.assert_allclose(parts.total(), f, atol=1e-13 * max(1, np.max(np.abs(f))))
        assert abs(parts.vector_coeff @ k) < 1e-12 * max(1, np.max(np.abs(f)))
        pieces = (parts.trace, parts.scalar, parts.vector, parts.tt)
        for a, b in itertools.combinations(pieces, 2):
            assert abs(np.sum(a * b)) < 1e-10 * max(1, np.sum(f * f))

    def test_asymmetric_rejected(self):
        with pytest.raises(InputError):
            svt_decompose(np.arange(9.0).reshape(3, 3), [0, 0, 1])


class TestTTProjector:
    @settings(max_examples=200)
    @given(sym3, unit_vectors())
    def test_agrees_with_svt_and_lambda(self, f, k):
        scale = max(1.0, np.max(np.abs(f)))
        proj = tt_project(f, k)
        np.testing.assert_allclose(proj, svt_decompose(f, k).tt, atol=1e-12 * scale)
        np.testing.assert_allclose(proj, np.einsum("ijkl,kl->ij", lambda_projector(k), f), atol=1e-12 * scale)
        np.testing.assert_allclose(tt_project(proj, k), proj, atol=1e-12 * scale)
        assert max(tt_residuals(proj, k)) < 1e-12 * scale

    def test_fixed_point(self):
        f = polarization_tensor([0, 0, 1], 2).e.real
        np.testing.assert_allclose(tt_project(f, [0, 0, 1]), f, atol=1e-15)

    def test_kernel_is_helicity_sum(self):
        k = np.array([0.6, 0.0, 0.8])
        np.testing.assert_allclose(tt_kernel(k).real, lambda_projector(k), atol=1e-14)


class TestSpin2Energy:
    def test_single_mode(self):
        modes = GravitonModeSet(2.0, [GravitonMode.helicity((1, 0, 0), 2, 0.5 + 0.2j)])
        w = np.pi
        assert spin2_mode_energy(modes, 8.0) == pytest.approx(w * abs(0.5 + 0.2j) ** 2, rel=1e-12)
        assert grid_energy(modes, 0.3) == pytest.approx(w * abs(0.5 + 0.2j) ** 2, rel=1e-12)

    def test_zero(self):
        modes = GravitonModeSet(1.0, [GravitonMode.helicity((0, 1, 0), -2, 0.0)])
        assert spin2_mode_energy(modes) == 0.0

    def test_additive_with_opposite_momenta(self):
        a = GravitonMode.helicity((1, 0, 0), 2, 0.7)
        b = GravitonMode.helicity((-1, 0, 0), 2, 0.3j)
        both = GravitonModeSet(2.0, [a, b])
        sep = spin2_mode_energy(GravitonModeSet(2.0, [a])) + spin2_mode_energy(GravitonModeSet(2.0, [b]))
        for t in (0.0, 0.4, 1.3):
            assert spin2_mode_energy(both, t=t) == pytest.approx(sep, rel=1e-12)
            assert grid_energy(both, t) == pytest.approx(sep, rel=1e-12)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_random_five_modes(self, seed):
        modes = random_mode_set(np.random.default_rng(seed), 5, 1.7)
        ms = modes.modes
        expected = sum(np.linalg.norm(modes.momentum(m)) * abs(m.amplitude) ** 2 for m in ms)
        assert abs(spin2_mode_energy(modes) - expected) < 1e-10 * max(1, expected)

    def test_grid_oracle_random(self):
        rng = np.random.default_rng(5)
        ms = [GravitonMode.helicity(n, lam, complex(*rng.normal(size=2)))
              for n, lam in [((1, 0, 0), 2), ((0, 1, 1), -2), ((1, 2, 0), 2), ((-1, 0, 0), -2), ((2, -1, 1), 2)]]
        modes = GravitonModeSet(2.0, ms)
        assert grid_energy(modes, 0.21) == pytest.approx(spin2_mode_energy(modes, t=0.21), rel=1e-11)

    def test_scaling_in_amplitude(self):
        m1 = GravitonModeSet(1.0, [GravitonMode.helicity((0, 0, 1), 2, 1.0)])
        m3 = GravitonModeSet(1.0, [GravitonMode.helicity((0, 0, 1), 2, 3.0)])
        assert spin2_mode_energy(m3) == pytest.approx(9 * spin2_mode_energy(m1))

    def test_non_tt_rejected(self):
        bad = GravitonMode((0, 0, 1), 1.0, np.diag([1.0, 0, 0]).astype(complex))
        with pytest.raises(InputError):
            spin2_mode_energy(GravitonModeSet(1.0, [bad]))
        longitudinal = GravitonMode((0, 0, 1), 1.0, np.diag([0, 0, 1.0]).astype(complex))
        with pytest.raises(InputError):
            spin2_mode_energy(GravitonModeSet(1.0, [longitudinal]))

    def test_repeated_label_is_one_mode(self):
        # two amplitudes on the same (n, lambda) add coherently
        a = GravitonMode.helicity((0, 1, 0), 2, 1.0)
        b = GravitonMode.helicity((0, 1, 0), 2, 1.0)
        w = 2 * np.pi
        assert spin2_mode_energy(GravitonModeSet(1.0, [a, b])) == pytest.approx(4 * w)

    def test_volume_mismatch(self):
        modes = GravitonModeSet(1.0, [GravitonMode.helicity((0, 0, 1), 2, 1.0)])
        with pytest.raises(InputError):
            spin2_mode_energy(modes, 2.0)

    def test_zero_mode_rejected(self):
        with pytest.raises(InputError):
            GravitonMode.helicity((0, 0, 0), 2, 1.0)


class TestBelRobinson:
    @settings(max_examples=50)
    @given(spin_tensors(rank=4))
    def test_properties(self, t):
        T = bel_robinson(t)
        scale = max(1.0, t.frobenius() ** 2)
        assert T[0, 0, 0, 0] >= -1e-12 * scale
        np.testing.assert_allclose(T[:, 0, 0, 0], spin_current(4, t), atol=1e-12 * scale)
        for perm in itertools.permutations(range(4)):
            np.testing.assert_allclose(T, T.transpose(perm), atol=1e-12 * scale)

    def test_rank_check(self):
        with pytest.raises(InputError):
            bel_robinson(SpinTensor([1, 0, 0]))
