"""Closed-form spectral quantities against independent 2x2 linear algebra."""

import numpy as np
import pytest

from halfline_ctqw import (
    HoppingPair,
    LimitMeasure,
    Phase,
    classify_phase,
    half_line_operator,
    invariant_state,
    laplace_amplitude,
    limit_measure,
    limiting_amplitude,
    normalized_invariant_state,
    spectral_pair,
    transfer_matrices,
    transfer_power_closed_form,
    verify_laplace_recurrences,
)
from halfline_ctqw.closed_form import InvariantState
from halfline_ctqw.errors import (
    NonPositiveS,
    NotSquareSummable,
    ZeroPhi0,
)

LOC = HoppingPair(1 / 3, 1 / 2)
DELOC = HoppingPair(1 / 2, 1 / 3)


def random_couplings(rng) -> HoppingPair:
    while True:
        g0, g1 = rng.uniform(-1.0, 1.0, size=2)
        if g0 != 0.0 and g1 != 0.0:
            return HoppingPair(g0, g1)


class TestSpectralPair:
    def test_hand_value_equal_couplings(self):
        pair = spectral_pair(1.0, HoppingPair(0.5, 0.5))
        assert pair.q_minus == pytest.approx(-(3 - 2 * np.sqrt(2)), abs=1e-14)
        assert pair.q_plus == pytest.approx(-(3 + 2 * np.sqrt(2)), abs=1e-13)
        assert pair.q_plus * pair.q_minus == pytest.approx(1.0, rel=1e-14)

    def test_hand_value_dimerized(self):
        pair = spectral_pair(1.0, LOC)
        assert pair.q_minus == pytest.approx(-0.12434215992676571, rel=1e-12)

    def test_p_definition(self):
        g0, g1 = 0.7, -0.4
        s = 2.0
        pair = spectral_pair(s, HoppingPair(g0, g1))
        expected = (s**2 + (g0 + g1) ** 2) * (s**2 + (g0 - g1) ** 2)
        assert pair.p == pytest.approx(expected, rel=1e-14)
        assert pair.p > 0

    def test_product_identity_random(self):
        rng = np.random.default_rng(11)
        for _ in range(1000):
            s = rng.uniform(1e-6, 10.0)
            pair = spectral_pair(s, random_couplings(rng))
            assert abs(pair.q_plus * pair.q_minus - 1.0) < 1e-12

    def test_q_minus_inside_unit_disk(self):
        rng = np.random.default_rng(12)
        for _ in range(200):
            s = rng.uniform(1e-4, 10.0)
            pair = spectral_pair(s, random_couplings(rng))
            assert abs(pair.q_minus) < 1.0
            assert abs(pair.q_plus) > 1.0

    def test_eigenvalue_oracle(self):
        # q_pm must be the eigenvalues of the two-cell transfer matrix.
        rng = np.random.default_rng(13)
        for _ in range(50):
            s = rng.uniform(0.05, 8.0)
            c = random_couplings(rng)
            tm = transfer_matrices(s, c)
            eigs = np.linalg.eigvals(tm.m1 @ tm.m0)
            assert np.max(np.abs(eigs.imag)) < 1e-9 * np.max(np.abs(eigs))
            got = sorted(eigs.real)
            pair = spectral_pair(s, c)
            want = sorted([pair.q_plus, pair.q_minus])
            assert got[0] == pytest.approx(want[0], rel=1e-9)
            assert got[1] == pytest.approx(want[1], rel=1e-9)

    def test_small_s_limit_matches_coupling_ratio(self):
        # s -> 0+ with gamma0*gamma1 > 0 and |gamma0| < |gamma1|.
        pair = spectral_pair(1e-9, LOC)
        assert pair.q_minus == pytest.approx(-LOC.gamma0 / LOC.gamma1, rel=1e-9)

    def test_rejects_nonpositive_s(self):
        with pytest.raises(NonPositiveS):
            spectral_pair(0.0, LOC)
        with pytest.raises(NonPositiveS):
            spectral_pair(-1.0, LOC)


class TestTransferMatrices:
    def test_determinants(self):
        tm = transfer_matrices(1.3, LOC)
        assert np.linalg.det(tm.m0) == pytest.approx(LOC.gamma0 / LOC.gamma1)
        assert np.linalg.det(tm.m1) == pytest.approx(LOC.gamma1 / LOC.gamma0)
        assert np.linalg.det(tm.m1 @ tm.m0) == pytest.approx(1.0)

    def test_power_zero_is_identity(self):
        assert np.array_equal(
            transfer_power_closed_form(1.0, LOC, 0), np.eye(2, dtype=complex)
        )

    def test_power_one_equals_direct_product(self):
        tm = transfer_matrices(1.0, LOC)
        direct = tm.m1 @ tm.m0
        closed = transfer_power_closed_form(1.0, LOC, 1)
        assert np.allclose(closed, direct, rtol=1e-12, atol=1e-14)

    def test_power_ten_matches_iterated_multiplication(self):
        tm = transfer_matrices(1.0, LOC)
        direct = np.linalg.matrix_power(tm.m1 @ tm.m0, 10)
        closed = transfer_power_closed_form(1.0, LOC, 10)
        scale = np.max(np.abs(direct))
        assert np.max(np.abs(closed - direct)) < 1e-9 * scale

    def test_power_random_draws(self):
        rng = np.random.default_rng(21)
        for _ in range(30):
            s = rng.uniform(0.1, 10.0)
            c = random_couplings(rng)
            n = int(rng.integers(0, 21))
            tm = transfer_matrices(s, c)
            direct = np.linalg.matrix_power(tm.m1 @ tm.m0, n)
            closed = transfer_power_closed_form(s, c, n)
            scale = max(np.max(np.abs(direct)), 1.0)
            assert np.max(np.abs(closed - direct)) < 1e-9 * scale


class TestLaplaceAmplitude:
    def test_site_zero_value(self):
        f0 = laplace_amplitude(0, 1.0, LOC)
        assert f0.imag == 0.0
        assert f0.real == pytest.approx(0.9171052267154896, abs=2e-5)

    def test_site_one_consistency(self):
        # F_1(s) = i (s F_0(s) - 1) / gamma0
        s = 1.0
        f0 = laplace_amplitude(0, s, LOC)
        f1 = laplace_amplitude(1, s, LOC)
        assert f1 == pytest.approx(1j * (s * f0 - 1.0) / LOC.gamma0, rel=1e-12)

    @pytest.mark.parametrize("couplings", [LOC, DELOC, HoppingPair(-0.8, 0.3)])
    def test_bounded_by_one_over_s(self, couplings):
        for s in (0.1, 0.5, 1.0, 3.0, 10.0):
            for x in range(12):
                assert abs(laplace_amplitude(x, s, couplings)) <= 1.0 / s + 1e-15

    def test_parity_structure(self):
        # Even sites are real, odd sites purely imaginary for real s.
        for x in range(8):
            f = laplace_amplitude(x, 2.0, LOC)
            if x % 2 == 0:
                assert f.imag == 0.0
            else:
                assert f.real == 0.0

    def test_rejects_nonpositive_s(self):
        with pytest.raises(NonPositiveS):
            laplace_amplitude(0, 0.0, LOC)


class TestRecurrences:
    @pytest.mark.parametrize("s", [0.1, 1.0, 2.0, 10.0])
    @pytest.mark.parametrize("couplings", [LOC, DELOC, HoppingPair(1.0, 1.0)])
    def test_residuals_below_tolerance(self, s, couplings):
        report = verify_laplace_recurrences(s, couplings, 50)
        assert report.max_residual < 1e-10

    def test_nmax_zero_checks_single_row(self):
        report = verify_laplace_recurrences(1.0, LOC, 0)
        assert report.rows_checked == 1
        assert report.max_residual < 1e-10

    def test_row_count(self):
        report = verify_laplace_recurrences(1.0, LOC, 50)
        assert report.rows_checked == 101


class TestLimits:
    def test_limiting_amplitude_values(self):
        assert limiting_amplitude(0, LOC) == pytest.approx(5 / 9)
        assert limiting_amplitude(2, LOC) == pytest.approx(-10 / 27)
        assert limiting_amplitude(4, LOC) == pytest.approx((5 / 9) * (4 / 9))

    def test_limiting_amplitude_zero_branches(self):
        for x in (1, 3, 5, 17):
            assert limiting_amplitude(x, LOC) == 0.0
        for x in range(8):
            assert limiting_amplitude(x, DELOC) == 0.0
            assert limiting_amplitude(x, HoppingPair(0.5, 0.5)) == 0.0

    def test_limit_measure_values(self):
        assert limit_measure(0, LOC) == pytest.approx(25 / 81, rel=1e-14)
        assert limit_measure(2, LOC) == pytest.approx((25 / 81) * (4 / 9), rel=1e-14)
        assert limit_measure(0, DELOC) == 0.0

    def test_total_mass(self):
        measure = LimitMeasure(LOC)
        assert measure.total_mass == pytest.approx(5 / 9, rel=1e-14)
        assert measure.truncated_mass() == pytest.approx(measure.total_mass, abs=1e-12)
        assert LimitMeasure(DELOC).total_mass == 0.0
        assert LimitMeasure(HoppingPair(-0.3, 0.9)).total_mass < 1.0

    def test_final_value_theorem_realized_numerically(self):
        # s * F_x(s) -> limiting amplitude as s -> 0+ (Richardson on s^2).
        for couplings in (LOC, DELOC):
            for x in (0, 1, 2, 5, 6):
                s_values = np.array([1e-2, 1e-3, 1e-4])
                v = np.array(
                    [s * laplace_amplitude(x, s, couplings) for s in s_values]
                )
                # quadratic-in-s Neville extrapolation to 0
                for level in range(1, 3):
                    for i in range(3 - level):
                        si, sj = s_values[i], s_values[i + level]
                        v[i] = (si * v[i + 1] - sj * v[i]) / (si - sj)
                assert abs(v[0] - limiting_amplitude(x, couplings)) < 1e-4


class TestPhase:
    def test_spec_examples(self):
        assert classify_phase(LOC) is Phase.LOCALIZED
        assert classify_phase(DELOC) is Phase.DELOCALIZED
        assert classify_phase(HoppingPair(0.5, 0.5)) is Phase.DELOCALIZED

    def test_sign_agnostic(self):
        assert classify_phase(HoppingPair(-1 / 3, 1 / 2)) is Phase.LOCALIZED
        assert classify_phase(HoppingPair(1 / 3, -1 / 2)) is Phase.LOCALIZED
        assert classify_phase(HoppingPair(-1 / 2, -1 / 3)) is Phase.DELOCALIZED
        assert classify_phase(HoppingPair(-0.7, 0.7)) is Phase.DELOCALIZED


class TestInvariantState:
    def test_geometric_profile(self):
        field = invariant_state(LOC, 1.0, 8)
        expected = [1.0, 0.0, -2 / 3, 0.0, 4 / 9, 0.0, -8 / 27, 0.0]
        assert np.allclose(field.values, expected, rtol=1e-15, atol=0.0)

    def test_interior_kernel_of_hamiltonian(self):
        n = 64
        field = invariant_state(LOC, 1.0, n)
        h = half_line_operator(LOC, n)
        residual = h.apply_values(field.values)
        assert np.max(np.abs(residual[: n - 1])) < 1e-15

    def test_normalized_variant(self):
        field = normalized_invariant_state(LOC, 2000)
        assert abs(field.values[0]) == pytest.approx(np.sqrt(5) / 3, rel=1e-14)
        assert field.norm_squared() == pytest.approx(1.0, abs=1e-12)

    def test_normalization_requires_localized_phase(self):
        with pytest.raises(NotSquareSummable):
            normalized_invariant_state(HoppingPair(0.5, 0.5), 100)
        with pytest.raises(NotSquareSummable):
            normalized_invariant_state(DELOC, 100)

    def test_equal_couplings_alternate_without_decay(self):
        field = invariant_state(HoppingPair(0.5, 0.5), 2.0, 10)
        assert np.allclose(field.values[0::2], [2, -2, 2, -2, 2])
        state = InvariantState(HoppingPair(0.5, 0.5), 2.0)
        assert not state.is_square_summable
        with pytest.raises(NotSquareSummable):
            _ = state.total_mass

    def test_rejects_zero_phi0(self):
        with pytest.raises(ZeroPhi0):
            invariant_state(LOC, 0.0, 10)

    def test_total_mass_formula(self):
        state = InvariantState(LOC, 0.5j)
        assert state.total_mass == pytest.approx(0.25 / (1 - 4 / 9), rel=1e-14)
