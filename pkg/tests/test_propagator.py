"""Time steppers against dense matrix-exponential and eigenbasis oracles."""

import numpy as np
import pytest
from scipy.linalg import eigh_tridiagonal, expm

from halfline_ctqw import (
    AmplitudeField,
    HoppingPair,
    Integrator,
    LatticeKind,
    LatticeTopology,
    WalkConfig,
    build_hamiltonian,
    delta_at_origin,
    euler_step,
    evolve,
    expm_apply,
    probability_distribution,
)
from halfline_ctqw.errors import ConfigError, NonFiniteDetected, SizeMismatch
from halfline_ctqw.propagator import MAX_SAMPLES, chebyshev_coefficients

LOC = HoppingPair(1 / 3, 1 / 2)


def topo(n):
    return LatticeTopology(LatticeKind.HALF_LINE_TRUNCATED, n)


def config(n=32, t_max=1.0, dt=1e-3, integrator=Integrator.REFERENCE, **kw):
    return WalkConfig(
        couplings=kw.pop("couplings", LOC),
        topology=topo(n),
        t_max=t_max,
        dt=dt,
        integrator=integrator,
        **kw,
    )


class TestEulerStep:
    def test_single_step_from_delta(self):
        h = build_hamiltonian(LOC, topo(8))
        psi = delta_at_origin(8)
        out = euler_step(psi, h, 1e-4)
        assert out.values[0] == 1.0
        assert out.values[1] == pytest.approx(-1j * (1 / 3) * 1e-4)
        assert np.all(out.values[2:] == 0.0)
        assert out.time == pytest.approx(1e-4)

    def test_norm_never_decreases(self):
        rng = np.random.default_rng(3)
        h = build_hamiltonian(HoppingPair(-0.9, 0.6), topo(16))
        psi = AmplitudeField(rng.standard_normal(16) + 1j * rng.standard_normal(16))
        for _ in range(50):
            stepped = euler_step(psi, h, 0.05)
            assert stepped.norm_squared() >= psi.norm_squared()
            psi = stepped

    def test_two_half_steps_differ_from_one_at_second_order(self):
        h = build_hamiltonian(LOC, topo(16))
        psi = delta_at_origin(16)
        errs = []
        for dt in (1e-2, 5e-3):
            two = euler_step(euler_step(psi, h, dt / 2), h, dt / 2)
            one = euler_step(psi, h, dt)
            errs.append(np.max(np.abs(two.values - one.values)))
        # halving dt shrinks the mismatch ~4x (second-order local term)
        assert errs[1] == pytest.approx(errs[0] / 4, rel=0.1)

    def test_rejects_nonpositive_dt(self):
        h = build_hamiltonian(LOC, topo(8))
        with pytest.raises(ConfigError):
            euler_step(delta_at_origin(8), h, 0.0)


class TestReferencePropagator:
    def test_matches_dense_expm(self):
        n = 16
        h = build_hamiltonian(LOC, topo(n))
        mat = np.zeros((n, n))
        for k, b in enumerate(h.bonds):
            mat[k, k + 1] = mat[k + 1, k] = b
        psi0 = delta_at_origin(n).values
        for t in (0.3, 2.0, 7.7):
            exact = expm(-1j * mat * t) @ psi0
            assert np.max(np.abs(expm_apply(h, psi0, t) - exact)) < 1e-12

    def test_matches_tridiagonal_eigenbasis(self):
        # Independent oracle: spectral decomposition of the tridiagonal matrix.
        n = 64
        h = build_hamiltonian(HoppingPair(0.45, -0.8), topo(n))
        lam, vec = eigh_tridiagonal(np.zeros(n), np.asarray(h.bonds))
        psi0 = delta_at_origin(n).values
        t = 11.0
        exact = vec @ (np.exp(-1j * lam * t) * (vec.T @ psi0))
        assert np.max(np.abs(expm_apply(h, psi0, t) - exact)) < 1e-11

    def test_time_reversal(self):
        n = 64
        h = build_hamiltonian(LOC, topo(n))
        psi0 = delta_at_origin(n).values
        forth = expm_apply(h, psi0, 37.0)
        back = expm_apply(h, forth, -37.0)
        assert np.max(np.abs(back - psi0)) < 1e-8

    def test_norm_conserved_on_long_run(self, ref_traj_localized_t500):
        assert ref_traj_localized_t500.norm_drift < 1e-10

    def test_linearity(self):
        n = 32
        rng = np.random.default_rng(5)
        psi1 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        psi2 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        a, b = 0.3 - 0.2j, 1.1 + 0.7j
        combined = config(n=n, t_max=4.0, dt=0.1, initial=AmplitudeField(a * psi1 + b * psi2))
        t1 = evolve(config(n=n, t_max=4.0, dt=0.1, initial=AmplitudeField(psi1)))
        t2 = evolve(config(n=n, t_max=4.0, dt=0.1, initial=AmplitudeField(psi2)))
        tc = evolve(combined)
        recombined = a * t1.values[-1] + b * t2.values[-1]
        assert np.max(np.abs(tc.values[-1] - recombined)) < 1e-9

    def test_chebyshev_coefficients_sum_to_unit_phase(self):
        # sum_k c_k T_k(1) = exp(-i z): T_k(1) = 1 for all k.
        for z in (0.05, 0.7, 3.0, 20.0):
            coeffs = chebyshev_coefficients(z)
            assert abs(np.sum(coeffs) - np.exp(-1j * z)) < 1e-13


class TestEvolve:
    def test_zero_horizon_returns_initial_state_only(self):
        traj = evolve(config(t_max=0.0, dt=1e-3))
        assert traj.n_samples == 1
        assert traj.times[0] == 0.0
        assert traj.values[0, 0] == 1.0
        assert np.all(traj.values[0, 1:] == 0.0)

    def test_first_sample_is_initial_state(self):
        traj = evolve(config(t_max=2.0, dt=1e-2))
        assert traj.times[0] == 0.0
        assert traj.values[0, 0] == 1.0
        assert np.all(np.diff(traj.times) > 0)

    def test_euler_agrees_with_reference_at_short_horizon(self):
        c = HoppingPair(0.5, 0.5)
        n = 64
        ref = evolve(config(n=n, t_max=1.0, dt=1e-2, couplings=c))
        eul = evolve(
            config(n=n, t_max=1.0, dt=1e-4, couplings=c, integrator=Integrator.EULER,
                   record_stride=100)
        )
        assert np.allclose(ref.times, eul.times)
        assert abs(ref.values[-1, 0] - eul.values[-1, 0]) < 1e-3

    def test_euler_order_of_accuracy(self):
        n = 32
        t_max = 2.0
        ref = evolve(config(n=n, t_max=t_max, dt=0.5, record_stride=1))
        errs = []
        for dt in (1e-3, 5e-4):
            eul = evolve(
                config(n=n, t_max=t_max, dt=dt, integrator=Integrator.EULER)
            )
            errs.append(np.max(np.abs(eul.values[-1] - ref.values[-1])))
        order = np.log2(errs[0] / errs[1])
        assert 0.8 <= order <= 1.2

    def test_record_stride_default_caps_samples(self):
        traj = evolve(config(t_max=3.0, dt=1e-4))
        assert traj.n_samples <= MAX_SAMPLES

    def test_explicit_record_stride(self):
        traj = evolve(config(t_max=1.0, dt=1e-2, record_stride=10))
        assert traj.n_samples == 11
        assert traj.times[1] == pytest.approx(0.1)

    def test_custom_initial_state(self):
        n = 16
        values = np.zeros(n, complex)
        values[3] = 1.0
        traj = evolve(config(n=n, t_max=1.0, dt=0.1, initial=AmplitudeField(values)))
        assert traj.values[0, 3] == 1.0

    def test_boundary_leak_flags_when_front_arrives(self):
        c = HoppingPair(0.5, 0.5)
        traj = evolve(config(n=40, t_max=60.0, dt=0.5, couplings=c))
        assert traj.boundary_leak_flagged
        assert traj.leak_trip_index() is not None

    def test_no_leak_on_short_run(self, ref_traj_localized_t50):
        assert not ref_traj_localized_t50.boundary_leak_flagged

    @pytest.mark.filterwarnings("ignore::RuntimeWarning")
    def test_nonfinite_detection_with_unstable_euler(self):
        with pytest.raises(NonFiniteDetected):
            evolve(
                config(
                    n=16,
                    t_max=1e5,
                    dt=50.0,
                    integrator=Integrator.EULER,
                    couplings=HoppingPair(1.0, 1.0),
                )
            )

    def test_config_validation(self):
        with pytest.raises(ConfigError):
            config(t_max=1.0, dt=0.0)
        with pytest.raises(ConfigError):
            config(t_max=1.0, dt=2.0)
        with pytest.raises(ConfigError):
            config(t_max=-1.0, dt=0.1)
        with pytest.raises(ConfigError):
            config(t_max=1.0, dt=0.1, record_stride=0)
        with pytest.raises(SizeMismatch):
            config(n=16, t_max=1.0, dt=0.1, initial=AmplitudeField(np.zeros(8)))

    def test_euler_norm_log_monotone(self):
        traj = evolve(
            config(n=64, t_max=5.0, dt=1e-3, integrator=Integrator.EULER)
        )
        assert np.all(np.diff(traj.norm_log) >= 0.0)


class TestProbabilityDistribution:
    def test_delta(self):
        p = probability_distribution(delta_at_origin(6))
        assert p[0] == 1.0
        assert np.all(p[1:] == 0.0)

    def test_modulus_arithmetic(self):
        values = np.zeros(4, complex)
        values[1] = (1 + 1j) / 2
        values[2] = (1 - 1j) / 2
        p = probability_distribution(AmplitudeField(values))
        assert p[1] == pytest.approx(0.5)
        assert p[2] == pytest.approx(0.5)

    def test_sums_to_norm_on_reference_run(self, ref_traj_localized_t50):
        probs = np.abs(ref_traj_localized_t50.values) ** 2
        sums = probs.sum(axis=1)
        assert np.max(np.abs(sums - 1.0)) < 1e-10

    def test_even_odd_structure_at_long_times(self, ref_traj_localized_t500):
        # With the walker launched at the edge, the long-time mass
        # concentrates on even sites; odd sites decay (time-averaged).
        mask = ref_traj_localized_t500.times >= 400.0
        odd = np.abs(ref_traj_localized_t500.values[mask][:, 1:12:2]) ** 2
        assert odd.mean(axis=0).max() < 0.01
