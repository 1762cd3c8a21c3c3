"""Deterministic invariant batteries, one per physics layer.

Each suite returns a list of :class:`Check` records. Residual checks pass
when the residual is below the tolerance; separation checks (a quantity
that must stay *away* from zero) carry their own threshold.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import boundary as bd
from . import helicity_modes as hm
from . import maxwell_bridge as mx
from . import vacuum_energy as ve
from .errors import PeriodicityError
from .higher_spin import dirac, gravity, rarita
from .spinor_core import SpinTensor

__all__ = [
    "Check",
    "SUITES",
    "run_suite",
    "random_null_momentum",
    "random_bc_configuration",
    "real_standing_superposition",
]

SEED = 1729
SEPARATION = 0.1


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    residual: float

    def as_dict(self):
        return {"name": self.name, "pass": bool(self.passed), "residual": float(self.residual)}


def _below(name, residual, tol):
    return Check(name, bool(residual < tol), float(residual))


def _above(name, value, threshold):
    return Check(name, bool(value > threshold), float(value))


def random_null_momentum(rng, scale=(0.2, 4.0)):
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    return hm.NullMomentum(direction * rng.uniform(*scale))


def _random_tensor(rng, m):
    return SpinTensor(rng.normal(size=m + 1) + 1j * rng.normal(size=m + 1))


def real_standing_superposition(rng, m, geom, n_modes=3, n_max=4):
    """Sum of real-type standing modes at admissible ``k3`` with random
    transverse momenta and real amplitudes."""
    ns = [e.n for e in bd.spectrum(m, geom.d, n_max)]
    total = None
    for _ in range(n_modes):
        k3 = bd.allowed_k3(m, geom.d, int(rng.choice(ns))).k3
        k_perp = rng.normal(size=2) * 0.8
        if k3 == 0.0 and not np.any(k_perp):
            k_perp = np.array([0.5, 0.0])
        k = hm.NullMomentum.from_parts(k_perp, k3)
        term = hm.standing_solution(m, k, real=True).scaled(rng.normal())
        total = term if total is None else total + term
    return total


def random_bc_configuration(rng, m, side):
    """A random field value satisfying the mirror condition of ``side``."""
    return bd.impose_bc(_random_tensor(rng, m), side)


def suite_bc(tol):
    checks = []
    geom = hm.PlateGeometry(1.0)
    k_perp = (0.3, 0.2)
    for m in range(1, 5):
        worst_ok = 0.0
        weakest_mid = math.inf
        for entry in bd.spectrum(m, geom.d, 6)[:4]:
            k = hm.NullMomentum.from_parts(k_perp, entry.k3)
            mode = hm.standing_solution(m, k, geom)
            for side in (0, "d"):
                worst_ok = max(worst_ok, bd.bc_residual(m, side, mode, geom=geom))
            # neighbouring admissible values are pi/d apart for either parity
            mid_k = hm.NullMomentum.from_parts(k_perp, entry.k3 + math.pi / (2.0 * geom.d))
            mid = hm.standing_solution(m, mid_k, geom)
            weakest_mid = min(weakest_mid, bd.bc_residual(m, "d", mid, geom=geom))
            worst_ok = max(worst_ok, hm.eom_residual(m, mode))
        checks.append(_below(f"bc_admissible_m{m}", worst_ok, tol))
        checks.append(_above(f"bc_midpoint_violated_m{m}", weakest_mid, SEPARATION))
    try:
        bd.allowed_k3(1, 1.0, 2)
        rejected = False
    except PeriodicityError:
        rejected = True
    checks.append(Check("fermionic_even_n_rejected", rejected, 0.0 if rejected else 1.0))
    return checks


def suite_current(tol, n_configs=1000):
    rng = np.random.default_rng(SEED)
    worst_nj = 0.0
    worst_bc = 0.0
    min_j0 = math.inf
    for i in range(n_configs):
        m = int(rng.integers(1, 5))
        if i % 2:
            geom = hm.PlateGeometry(rng.uniform(0.5, 2.0))
            mode = real_standing_superposition(rng, m, geom)
            for side in (0, "d"):
                worst_bc = max(worst_bc, bd.bc_residual(m, side, mode, geom=geom))
            worst_nj = max(worst_nj, bd.normal_current_check(m, geom, mode))
            x = rng.uniform(-2, 2, size=4)
            min_j0 = min(min_j0, bd.current_density(mode, x)[0])
        else:
            for side in (0, "d"):
                psi = random_bc_configuration(rng, m, side)
                plate = bd.Plate.of(side, hm.PlateGeometry(1.0))
                worst_bc = max(worst_bc, bd.bc_residual(m, side, psi))
                j = bd.spin_current(m, psi)
                worst_nj = max(worst_nj, abs(bd.normal_current(plate, j)))
                min_j0 = min(min_j0, j[0])
    # a free plane wave with k3 != 0 violates the condition and carries flux
    k = hm.NullMomentum([0.3, 0.1, 0.9])
    plate = bd.Plate.of(0)
    free_nj = abs(bd.normal_current(plate, bd.spin_current(1, hm.free_plane_wave(1, k, np.zeros(4)))))
    worst_cont = max(
        bd.continuity_residual(m, random_null_momentum(rng)) for m in range(1, 5)
    )
    return [
        _below("bc_precondition", worst_bc, tol),
        _below("normal_current_vanishes", worst_nj, tol),
        Check("energy_density_nonnegative", bool(min_j0 >= -tol), float(min(min_j0, 0.0))),
        _above("free_wave_normal_flux", free_nj, SEPARATION),
        _below("continuity", worst_cont, tol),
    ]


def suite_maxwell(tol, n_fields=1000, n_momenta=100):
    rng = np.random.default_rng(SEED + 1)
    worst_stress = 0.0
    worst_round = 0.0
    bc_agree = True
    for _ in range(n_fields):
        F = rng.normal(size=3) + 1j * rng.normal(size=3)
        worst_stress = max(worst_stress, mx.stress_equivalence(F))
        worst_round = max(worst_round, float(np.max(np.abs(mx.F_from_spin(mx.spin_from_F(F)) - F))))
    # conductor condition vs rank-2 mirror condition on standing modes
    geom = hm.PlateGeometry(1.0)
    worst_bc_gap = 0.0
    for k3 in (0.0, math.pi, 2 * math.pi, math.pi / 2, 3 * math.pi / 2, 0.77):
        mode = hm.standing_solution(2, hm.NullMomentum.from_parts((0.4, -0.3), k3), real=True)
        for side in (0, "d"):
            plate = bd.Plate.of(side, geom)
            for x in geom.on_plate_points(side, 5, SEED):
                psi = mode(x)
                F = mx.F_from_spin(psi)
                em = mx.em_bc_residual(F.real, F.imag, plate.normal[1:])
                sp = bd.bc_residual(2, side, psi)
                worst_bc_gap = max(worst_bc_gap, min(em, sp) if (em < tol) != (sp < tol) else 0.0)
                bc_agree &= (em < tol) == (sp < tol)
    worst_pos = 0.0
    min_neg = math.inf
    for _ in range(n_momenta):
        k = random_null_momentum(rng)
        pos = mx.circular_polarization(k, 1)
        neg = mx.circular_polarization(k, -1)
        worst_pos = max(worst_pos, mx.maxwell_residual(pos, k), mx.spin_eom_residual(pos, k))
        min_neg = min(min_neg, mx.maxwell_residual(neg, k), mx.spin_eom_residual(neg, k))
    return [
        _below("stress_equivalence", worst_stress, tol),
        _below("riemann_silberstein_round_trip", worst_round, tol),
        Check("conductor_bc_equivalence", bc_agree, worst_bc_gap),
        _below("positive_helicity_covanishing", worst_pos, tol),
        _above("negative_helicity_both_nonzero", min_neg, SEPARATION),
    ]


def suite_gamma(tol):
    cliff = max(dirac.clifford_residual(a, b) for a in range(4) for b in range(4))
    eps = max(
        dirac.epsilon_identity_residual(*t) for t in itertools.product(range(4), repeat=3)
    )
    g5 = dirac.gamma5()
    g5_sq = float(np.max(np.abs(g5 @ g5 - np.eye(4))))
    g5_anti = max(
        float(np.max(np.abs(g5 @ dirac.gamma(mu) + dirac.gamma(mu) @ g5))) for mu in range(4)
    )
    return [
        Check("clifford_exact", cliff == 0.0, cliff),
        _below("epsilon_gamma5_identity", eps, min(tol, 1e-13)),
        _below("gamma5_squared", g5_sq, tol),
        _below("gamma5_anticommutes", g5_anti, tol),
    ]


def suite_rarita(tol, n_momenta=100):
    rng = np.random.default_rng(SEED + 2)
    worst_con = 0.0
    worst_norm = 0.0
    worst_conj = 0.0
    for _ in range(n_momenta):
        k = random_null_momentum(rng)
        for lam in (1.5, -1.5):
            worst_con = max(worst_con, *rarita.rarita_mode(k, lam).constraint_residuals().values())
        worst_norm = max(worst_norm, rarita.orthonormality_residual(k))
        worst_conj = max(worst_conj, rarita.conjugate_orthogonality_residual(k))
    return [
        _below("constraints", worst_con, tol),
        _below("orthonormality", worst_norm, tol),
        _below("charge_conjugate_orthogonality", worst_conj, tol),
    ]


def random_mode_set(rng, n_modes=5, length=2.0):
    # distinct (n, lambda) labels; a repeated label would be one mode
    modes = []
    seen = set()
    while len(modes) < n_modes:
        n = tuple(int(c) for c in rng.integers(-2, 3, size=3))
        lam = int(rng.choice([2, -2]))
        if not any(n) or (n, lam) in seen:
            continue
        seen.add((n, lam))
        amp = complex(rng.normal(), rng.normal())
        modes.append(gravity.GravitonMode.helicity(n, lam, amp))
    return gravity.GravitonModeSet(length, modes)


def suite_tt(tol, n_cases=1000, n_energy=20):
    rng = np.random.default_rng(SEED + 3)
    worst_agree = worst_idem = worst_tt = worst_norm = 0.0
    for _ in range(n_cases):
        k = rng.normal(size=3)
        k /= np.linalg.norm(k)
        f = rng.normal(size=(3, 3))
        f = f + f.T
        proj = gravity.tt_project(f, k)
        worst_agree = max(worst_agree, float(np.max(np.abs(proj - gravity.svt_decompose(f, k).tt))))
        worst_idem = max(worst_idem, float(np.max(np.abs(gravity.tt_project(proj, k) - proj))))
        worst_tt = max(worst_tt, *gravity.tt_residuals(proj, k))
        ep, em = gravity.polarization_tensor(k, 2), gravity.polarization_tensor(k, -2)
        worst_norm = max(
            worst_norm,
            abs(ep.contract(ep) - 2),
            abs(em.contract(em) - 2),
            abs(ep.contract(em)),
            float(np.max(np.abs(gravity.polarization_tensor(-k, 2).e - ep.e))),
            *gravity.tt_residuals(ep.e, k),
        )
    worst_energy = 0.0
    for _ in range(n_energy):
        modes = random_mode_set(rng)
        expected = sum(
            np.linalg.norm(modes.momentum(md)) * abs(md.amplitude) ** 2 for md in modes.modes
        )
        got = gravity.spin2_mode_energy(modes, modes.volume, t=rng.uniform(0, 3))
        worst_energy = max(worst_energy, abs(got - expected) / expected)
    return [
        _below("tt_projector_matches_svt", worst_agree, tol),
        _below("tt_projector_idempotent", worst_idem, tol),
        _below("tt_transverse_traceless", worst_tt, tol),
        _below("polarization_norms", worst_norm, tol),
        _below("spin2_energy_parseval", worst_energy, tol),
    ]


def suite_vacuum(tol):
    checks = []
    for stat in ve.Statistics:
        for d in (0.5, 1.0, 2.0):
            fit = ve.extrapolated_energy(stat, d, ve.geometric_grid(0.01 * d, 0.1 * d, 12))
            exact = ve.casimir_energy(stat, d)
            checks.append(
                _below(f"extrapolated_c0_{stat.value}_d{d:g}", abs(fit.c0 / exact - 1.0), 1e-6)
            )
    bracket = ve.extrapolated_bracket("fermionic", 1.0, ve.geometric_grid(0.01, 0.1, 12))
    checks.append(
        _below("bracket_constant", abs(bracket.c0 / (-math.pi / 24.0) - 1.0), 1e-5)
    )
    checks.append(
        _below(
            "bracket_alpha2",
            abs(bracket.coefficient(2) / (7 * math.pi**3 / 5760.0) - 1.0),
            1e-5,
        )
    )
    f_half = ve.casimir_force(0.5, 1.0)
    f_one = ve.casimir_force(1, 1.0)
    checks.append(_below("force_fermionic", abs(f_half + 7 * math.pi**2 / 960), tol))
    checks.append(_below("force_bosonic", abs(f_one + math.pi**2 / 240), tol))
    same = ve.casimir_force(1.5, 1.0) == f_half and ve.casimir_force(2, 1.0) == f_one
    checks.append(Check("force_statistics_only", same, 0.0 if same else 1.0))
    checks.append(_below("fermion_boson_ratio", abs(f_half / f_one - 7.0 / 4.0), tol))
    checks.append(
        _below(
            "transverse_reduction",
            max(ve.transverse_reduction_check(math.pi / 2, 10), ve.transverse_reduction_check(math.pi, 20)),
            1e-6,
        )
    )
    return checks


SUITES = {
    "bc": suite_bc,
    "current": suite_current,
    "maxwell": suite_maxwell,
    "gamma": suite_gamma,
    "tt": suite_tt,
    "rarita": suite_rarita,
    "vacuum": suite_vacuum,
}


def run_suite(name, tol):
    if name == "all":
        return [c for suite in SUITES.values() for c in suite(tol)]
    return SUITES[name](tol)
