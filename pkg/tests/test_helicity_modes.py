import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import null_space

from spincasimir.errors import InputError
from spincasimir.helicity_modes import (
    MAX_RANK,
    ModeSolution,
    NullMomentum,
    PlaneWaveTerm,
    PlateGeometry,
    eom_residual,
    free_mode,
    free_plane_wave,
    helicity_spinor,
    kernel_matrix,
    standing_mode,
    standing_solution,
)
from spincasimir.spinor_core import METRIC, SpinTensor, conj_lower, pauli, sym_power

from conftest import ranks, spin_tensors, wavevectors


def contraction_oracle(coeff, p):
    # sigma^mu_{abar a} p_mu psi^{a ...} by explicit index loops
    p_low = METRIC @ p
    full = coeff.to_full()
    worst = 0.0
    for abar in (0, 1):
        for rest in np.ndindex(*(2,) * (coeff.rank - 1)):
            val = sum(
                p_low[mu] * pauli(mu)[abar, a] * full[(a,) + rest] for mu in range(4) for a in (0, 1)
            )
            worst = max(worst, abs(val))
    return worst


class TestNullMomentum:
    def test_null(self):
        k = NullMomentum([0.3, -1.0, 2.0])
        p = k.four_vector()
        assert abs(p @ METRIC @ p) < 1e-12
        assert k.omega >= 0

    def test_parts(self):
        k = NullMomentum.from_parts((1.0, 2.0), 3.0)
        np.testing.assert_array_equal(k.k_perp, [1, 2, 0])
        assert k.k3 == 3.0
        assert k.reflected().k3 == -3.0

    def test_bad_shape(self):
        with pytest.raises(InputError):
            NullMomentum([1, 2])


class TestGeometry:
    def test_normals(self):
        g = PlateGeometry(2.0)
        np.testing.assert_array_equal(g.normal(0), [0, 0, 0, -1])
        np.testing.assert_array_equal(g.normal("d"), -g.normal(0))

    @pytest.mark.parametrize("d", [0.0, -1.0, float("nan")])
    def test_bad_separation(self, d):
        with pytest.raises(InputError):
            PlateGeometry(d)

    def test_plate_points(self):
        pts = PlateGeometry(1.5).on_plate_points("d", 5, seed=3)
        assert pts.shape == (5, 4)
        assert np.all(pts[:, 3] == 1.5)


class TestHelicitySpinor:
    def test_plus_z(self):
        u = helicity_spinor([0, 0, 2.0]).components
        ns = null_space(kernel_matrix([2.0, 0, 0, 2.0]))
        assert ns.shape[1] == 1
        assert abs(abs(np.vdot(ns[:, 0], u)) - 1) < 1e-12
        np.testing.assert_allclose(u, [1, 0], atol=1e-15)

    def test_minus_z(self):
        u = helicity_spinor([0, 0, -3.0]).components
        ns = null_space(kernel_matrix([3.0, 0, 0, -3.0]))
        assert abs(abs(np.vdot(ns[:, 0], u)) - 1) < 1e-12
        np.testing.assert_allclose(u, [0, 1], atol=1e-15)

    @given(wavevectors())
    def test_kernel_and_norm(self, k):
        u = helicity_spinor(k).components
        p = NullMomentum(k).four_vector()
        assert np.linalg.norm(kernel_matrix(p) @ u) < 1e-12
        assert abs(np.linalg.norm(u) - 1) < 1e-12
        assert np.all(np.isfinite(u))
        assert u[0].imag == 0 and u[0].real >= 0

    def test_zero_momentum(self):
        with pytest.raises(InputError):
            helicity_spinor([0, 0, 0])

    @given(wavevectors(1.0, 1.0), st.floats(min_value=-1, max_value=1))
    def test_smooth_away_from_cut(self, k, t):
        if k[2] < -0.9:
            k = -k
        axis = np.cross(k, [0.3, 0.5, 0.8])
        axis /= np.linalg.norm(axis)
        # rotate by an angle below 1e-6
        ang = 1e-6 * t
        k2 = k * np.cos(ang) + np.cross(axis, k) * np.sin(ang) + axis * (axis @ k) * (1 - np.cos(ang))
        du = helicity_spinor(k).components - helicity_spinor(k2).components
        assert np.linalg.norm(du) < 1e-4


class TestFreePlaneWave:
    def test_origin(self):
        k = [0.2, 0.4, -1.0]
        for m in (1, 2, 3):
            np.testing.assert_allclose(
                free_plane_wave(m, k, np.zeros(4)).components,
                sym_power(helicity_spinor(k), m).components,
            )

    def test_time_period(self):
        k = NullMomentum([0.2, 0.4, -1.0])
        x = np.array([0.3, 1.0, -2.0, 0.5])
        shifted = x + np.array([2 * np.pi / k.omega, 0, 0, 0])
        np.testing.assert_allclose(
            free_plane_wave(2, k, x).components, free_plane_wave(2, k, shifted).components, atol=1e-12
        )

    def test_phase_convention(self):
        # exp(i(k.x - omega t))
        k = NullMomentum([0, 0, 1.0])
        x = np.array([0.0, 0.0, 0.0, 0.25])
        assert free_plane_wave(1, k, x).components[0] == pytest.approx(np.exp(0.25j))

    @settings(max_examples=200)
    @given(wavevectors(), ranks)
    def test_eom(self, k, m):
        mode = free_mode(m, k)
        assert eom_residual(m, mode) < 1e-12
        t = mode.terms[0]
        assert contraction_oracle(t.coefficient, t.momentum) < 1e-12


class TestEomResidual:
    @given(spin_tensors())
    def test_timelike_momentum_detects(self, t):
        if t.norm() < 1e-6:
            return
        res = eom_residual(t.rank, (t, np.array([1.0, 0, 0, 0])))
        assert res > 0
        assert res == pytest.approx(contraction_oracle(t, np.array([1.0, 0, 0, 0])), rel=1e-12)

    def test_rank_cap(self):
        with pytest.raises(InputError):
            eom_residual(MAX_RANK + 1, (SpinTensor(np.ones(MAX_RANK + 2)), np.ones(4)))
        with pytest.raises(InputError):
            free_mode(0, [0, 0, 1])

    def test_rank_mismatch(self):
        with pytest.raises(InputError):
            eom_residual(2, free_mode(3, [0, 0, 1]))


class TestStandingMode:
    @settings(max_examples=100)
    @given(wavevectors(), ranks)
    def test_both_terms_solve_eom(self, k, m):
        mode = standing_solution(m, k)
        assert len(mode.terms) == 2
        assert eom_residual(m, mode) < 1e-12
        for t in mode.terms:
            assert contraction_oracle(t.coefficient, t.momentum) < 1e-12

    def test_common_transverse_factor(self):
        k = NullMomentum([0.7, -0.3, 1.1])
        mode = standing_solution(2, k)
        inc, ref = mode.terms
        np.testing.assert_array_equal(inc.momentum[:3], ref.momentum[:3])
        assert ref.momentum[3] == -inc.momentum[3]

    @settings(max_examples=50)
    @given(wavevectors(), ranks)
    def test_reflection_swaps_terms(self, k, m):
        # the mode for k3 -> -k3 has the same two terms in swapped order, each
        # up to a unit-modulus phase
        if abs(k[0]) + abs(k[1]) < 1e-3:
            return
        a = standing_solution(m, k)
        b = standing_solution(m, NullMomentum(k).reflected())
        for ta, tb in ((a.terms[0], b.terms[1]), (a.terms[1], b.terms[0])):
            np.testing.assert_allclose(ta.momentum, tb.momentum)
            x, y = ta.coefficient.components, tb.coefficient.components
            ratio = np.vdot(y, x) / np.vdot(y, y)
            assert abs(abs(ratio) - 1) < 1e-9
            np.testing.assert_allclose(x, ratio * y, atol=1e-9)

    def test_value_matches_solution(self):
        k = [0.3, 0.2, np.pi / 2]
        x = np.array([0.1, 0.2, 0.3, 0.4])
        g = PlateGeometry(1.0)
        np.testing.assert_array_equal(
            standing_mode(3, k, g, x).components, standing_solution(3, k, g)(x).components
        )

    def test_partner_is_termwise(self):
        mode = standing_solution(2, [0.3, 0.2, 1.0])
        x = np.array([0.5, -0.1, 0.2, 0.3])
        expect = sum(
            conj_lower(t.coefficient).components * t.phase(x) for t in mode.terms
        )
        np.testing.assert_allclose(mode.partner(x).components, expect)

    def test_real_type_partner_is_pointwise(self):
        mode = standing_solution(3, [0.3, 0.2, np.pi / 2], real=True)
        x = np.array([0.5, -0.1, 0.2, 0.3])
        np.testing.assert_allclose(
            mode.partner(x).components, conj_lower(mode(x)).components, atol=1e-14
        )

    def test_zero_momentum(self):
        with pytest.raises(InputError):
            standing_solution(1, [0, 0, 0])

    def test_mixed_rank_superposition(self):
        with pytest.raises(InputError):
            standing_solution(1, [0, 0, 1]) + standing_solution(2, [0, 0, 1])
        with pytest.raises(InputError):
            ModeSolution(1, (PlaneWaveTerm(SpinTensor([1, 0, 0]), np.ones(4)),))
