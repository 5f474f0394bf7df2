import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import random_density
from pauli_kit.basis import SIGMA_X, SIGMA_Y, SIGMA_Z
from pauli_kit.channel import (
    BlochForm,
    bloch_to_super,
    is_completely_positive,
    super_to_bloch,
)
from pauli_kit.errors import (
    DomainError,
    LogUndefinedError,
    NotInteriorOfSError,
    SingularShiftError,
)
from pauli_kit.linalg import frobenius_distance, matrix_power_real, unvec, vec
from pauli_kit.pauli import (
    distortion_from_super,
    o4_basis,
    prob_margins,
    random_distortion_in_s,
    superoperator_from_lambda,
)
from pauli_kit.semigroup import (
    axis_jump_generator,
    decompose_times,
    evolve,
    generator_from_channel,
    kappa_bound_check,
    lindblad_from_jumps,
    max_lambda_check,
    nonunital_decompose,
    nonunital_evolve,
    nonunital_evolve_general,
    pauli_lambda_t,
    three_factor_super,
    two_factor_boundary,
)


class TestLindbladFromJumps:
    def test_sigma_z_jump_spectrum(self):
        gen = lindblad_from_jumps([SIGMA_Z])
        o = o4_basis()
        diag = np.diagonal(o @ gen.matrix @ o.T)
        assert_allclose(diag.real, [0, -2, -2, 0], atol=1e-14)
        lam = distortion_from_super(evolve(gen, 0.7))
        assert_allclose(lam, [np.exp(-1.4), np.exp(-1.4), 1.0], atol=1e-12)

    def test_empty_jump_list(self):
        gen = lindblad_from_jumps([], dim=2)
        assert_allclose(gen.matrix, np.zeros((4, 4)))
        assert_allclose(evolve(gen, 3.0).matrix, np.eye(4), atol=1e-14)

    def test_scaled_sigma_x_jump(self):
        gen = lindblad_from_jumps([np.sqrt(0.5) * SIGMA_X])
        lam = distortion_from_super(evolve(gen, 1.0))
        assert_allclose(lam, [1.0, np.exp(-1), np.exp(-1)], atol=1e-12)

    def test_action_matches_master_equation(self):
        rng = np.random.default_rng(50)
        jumps = [
            0.7 * (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
            for _ in range(2)
        ]
        gen = lindblad_from_jumps(jumps)
        rho = random_density(rng)
        direct = sum(
            j @ rho @ j.conj().T
            - 0.5 * (j.conj().T @ j @ rho + rho @ j.conj().T @ j)
            for j in jumps
        )
        assert_allclose(unvec(gen.matrix @ vec(rho)), direct, atol=1e-12)

    def test_trace_preservation_of_generated_maps(self):
        rng = np.random.default_rng(51)
        jumps = [0.5 * (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))]
        gen = lindblad_from_jumps(jumps)
        vi = vec(np.eye(3))
        assert np.linalg.norm(gen.matrix.conj().T @ vi) < 1e-12

    def test_warns_on_redundant_jumps(self):
        with pytest.warns(UserWarning):
            lindblad_from_jumps([SIGMA_X, SIGMA_Y, SIGMA_Z, np.eye(2)])


class TestGeneratorFromChannel:
    def test_identity_channel(self):
        gen = generator_from_channel(superoperator_from_lambda([1.0, 1.0, 1.0]))
        assert_allclose(gen.matrix, np.zeros((4, 4)), atol=1e-12)

    def test_diagonal_log(self):
        lam = np.array([np.exp(-1), np.exp(-1), np.exp(-2)])
        gen = generator_from_channel(superoperator_from_lambda(lam))
        o = o4_basis()
        assert_allclose(
            np.diagonal(o @ gen.matrix @ o.T).real, [0, -1, -1, -2], atol=1e-12
        )

    def test_negative_distortion_hits_branch_cut(self):
        with pytest.raises(LogUndefinedError):
            generator_from_channel(superoperator_from_lambda([0.5, 0.5, -0.25]))

    def test_jump_and_log_generators_produce_same_trajectory(self):
        rng = np.random.default_rng(52)
        for _ in range(5):
            jumps = [
                0.4 * (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
            ]
            g1 = lindblad_from_jumps(jumps)
            g2 = generator_from_channel(evolve(g1, 1.0))
            for t in (0.3, 0.8, 1.7, 2.5):
                assert frobenius_distance(evolve(g1, t).matrix, evolve(g2, t).matrix) < 1e-9


class TestEvolve:
    def test_time_zero(self):
        gen = lindblad_from_jumps([SIGMA_Z])
        assert_allclose(evolve(gen, 0.0).matrix, np.eye(4), atol=1e-14)

    def test_half_time_dephasing(self):
        gen = lindblad_from_jumps([SIGMA_Z])
        lam = distortion_from_super(evolve(gen, 0.5))
        assert_allclose(lam, [np.exp(-1), np.exp(-1), 1.0], atol=1e-12)

    def test_unit_time_recovers_seed(self):
        lam = np.array([0.5, 0.5, 0.25])
        gen = generator_from_channel(superoperator_from_lambda(lam))
        assert frobenius_distance(
            evolve(gen, 1.0).matrix, superoperator_from_lambda(lam).matrix
        ) < 1e-12

    def test_semigroup_law(self):
        rng = np.random.default_rng(53)
        jumps = [0.6 * (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))]
        gen = lindblad_from_jumps(jumps)
        for _ in range(10):
            s, t = rng.uniform(0, 3, 2)
            assert frobenius_distance(
                evolve(gen, s).matrix @ evolve(gen, t).matrix,
                evolve(gen, s + t).matrix,
            ) < 1e-9

    def test_pairwise_commuting_axis_generators(self):
        gens = [axis_jump_generator(a).matrix for a in "xyz"]
        for i in range(3):
            for j in range(3):
                comm = gens[i] @ gens[j] - gens[j] @ gens[i]
                assert np.max(np.abs(comm)) < 1e-14


class TestPauliLambdaT:
    def test_unit_time_is_seed(self):
        lam = np.array([0.5, 0.5, 0.25])
        assert_allclose(
            pauli_lambda_t(lam, 1.0).matrix,
            superoperator_from_lambda(lam).matrix,
            atol=1e-14,
        )

    def test_depolarizing_limit(self):
        lam = np.zeros(3)
        assert_allclose(pauli_lambda_t(lam, 0.0).matrix, np.eye(4))
        for t in (0.5, 1.0, 7.0):
            assert_allclose(
                pauli_lambda_t(lam, t).matrix,
                superoperator_from_lambda([0, 0, 0]).matrix,
                atol=1e-15,
            )

    def test_cp_failure_outside_semigroup_set(self):
        lam = np.array([0.9, 0.9, 0.805])
        verdict = is_completely_positive(pauli_lambda_t(lam, 0.1))
        assert verdict.min_choi_eigenvalue < -1e-8

    def test_matches_log_route(self):
        rng = np.random.default_rng(54)
        for _ in range(20):
            lam = random_distortion_in_s(rng)
            gen = generator_from_channel(superoperator_from_lambda(lam))
            for t in (0.25, 1.5):
                assert frobenius_distance(
                    pauli_lambda_t(lam, t).matrix, evolve(gen, t).matrix
                ) < 1e-10

    def test_rejects_negative_components(self):
        with pytest.raises(DomainError):
            pauli_lambda_t(np.array([0.5, -0.1, 0.2]), 0.5)


class TestNonUnital:
    def test_unital_input_has_zero_shift(self):
        d = nonunital_decompose(BlochForm(np.zeros(3), np.diag([0.5, 0.4, 0.3])))
        assert_allclose(d.shift, np.zeros(3))
        assert_allclose(d.conjugator, np.eye(4), atol=1e-14)

    def test_known_shift(self):
        d = nonunital_decompose(BlochForm([0, 0, 0.25], np.diag([0.5, 0.5, 0.5])))
        assert_allclose(d.shift, [0, 0, 0.5], atol=1e-14)

    def test_reassembly(self):
        rng = np.random.default_rng(55)
        for _ in range(20):
            lam = rng.uniform(0.1, 0.9, 3)
            kappa = 0.1 * rng.standard_normal(3)
            b = BlochForm(kappa, np.diag(lam))
            d = nonunital_decompose(b)
            rebuilt = d.conjugator @ bloch_to_super(d.unital_core).matrix @ d.conjugator_inv
            assert frobenius_distance(rebuilt, bloch_to_super(b).matrix) < 1e-10
            assert_allclose(d.conjugator @ d.conjugator_inv, np.eye(4), atol=1e-12)

    def test_singular_shift_rejected(self):
        with pytest.raises(SingularShiftError):
            nonunital_decompose(BlochForm([0.1, 0, 0], np.diag([1.0, 0.5, 0.5])))
        # and a unit distortion with nonzero shift is already not CP
        assert not is_completely_positive(
            bloch_to_super(BlochForm([0.1, 0, 0], np.diag([1.0, 0.5, 0.5])))
        ).ok

    def test_closed_form_evolution(self):
        b = BlochForm([0, 0, 0.25], np.diag([0.5, 0.5, 0.5]))
        at0 = nonunital_evolve(b, 0.0)
        assert_allclose(at0.kappa, np.zeros(3))
        assert_allclose(at0.T, np.eye(3))
        at2 = nonunital_evolve(b, 2.0)
        assert_allclose(at2.kappa, [0, 0, 0.375], atol=1e-14)
        assert_allclose(at2.T, np.diag([0.25, 0.25, 0.25]), atol=1e-14)
        # two applications of the seed map shift by kappa + T kappa
        assert_allclose(at2.kappa[2], 0.25 + 0.5 * 0.25)

    def test_long_time_limit_is_fixed_point_shift(self):
        b = BlochForm([0, 0, 0.25], np.diag([0.5, 0.5, 0.5]))
        far = nonunital_evolve(b, 200.0)
        assert_allclose(far.kappa, nonunital_decompose(b).shift, atol=1e-12)

    def test_matches_matrix_power_route(self):
        rng = np.random.default_rng(56)
        for _ in range(20):
            lam = rng.uniform(0.1, 0.9, 3)
            kappa = 0.05 * rng.standard_normal(3)
            b = BlochForm(kappa, np.diag(lam))
            full = bloch_to_super(b).matrix
            for t in (0.25, 0.5, 2.0, 3.7):
                closed = bloch_to_super(nonunital_evolve(b, t)).matrix
                assert frobenius_distance(closed, matrix_power_real(full, t)) < 1e-9
                general = bloch_to_super(nonunital_evolve_general(b, t)).matrix
                assert frobenius_distance(general, closed) < 1e-9

    def test_general_route_handles_non_diagonal_distortion(self):
        rng = np.random.default_rng(57)
        q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
        t_mat = q @ np.diag([0.6, 0.5, 0.4]) @ q.T
        b = BlochForm([0.02, -0.03, 0.05], t_mat)
        full = bloch_to_super(b).matrix
        for t in (0.5, 2.0):
            general = bloch_to_super(nonunital_evolve_general(b, t)).matrix
            assert frobenius_distance(general, matrix_power_real(full, t)) < 1e-9

    def test_rejects_domain_violations(self):
        b = BlochForm([0, 0, 0.1], np.diag([1.2, 0.5, 0.5]))
        with pytest.raises(DomainError):
            nonunital_evolve(b, 0.5)


class TestKappaBound:
    def test_unitary_boundary(self):
        ok, slack = kappa_bound_check(BlochForm(np.zeros(3), np.diag([1.0, 1.0, 1.0])))
        assert ok and abs(slack) < 1e-14

    def test_known_values(self):
        ok, slack = kappa_bound_check(BlochForm([0, 0, 0.25], np.diag([0.5, 0.5, 0.5])))
        assert ok and slack == pytest.approx(0.5 - 0.0625)
        ok, slack = kappa_bound_check(BlochForm([0.3, 0, 0], np.diag([0.99] * 3)))
        assert not ok and slack == pytest.approx(1 - 3 * 0.9801 + 2 * 0.970299 - 0.09)

    def test_max_lambda_diagnostic(self):
        report = max_lambda_check(BlochForm(np.zeros(3), np.diag([1.0, 1.0, 1.0])))
        assert report.consistent_with_cp  # unitary: kappa = 0, moduli 1 allowed
        report = max_lambda_check(BlochForm([0.1, 0, 0], np.diag([1.0, 0.5, 0.5])))
        assert not report.consistent_with_cp

    def test_cp_samples_respect_max_lambda(self):
        rng = np.random.default_rng(58)
        found = 0
        while found < 50:
            lam = rng.uniform(0, 1, 3)
            kappa = 0.3 * rng.standard_normal(3)
            b = BlochForm(kappa, np.diag(lam))
            if not is_completely_positive(bloch_to_super(b)).ok:
                continue
            if np.linalg.norm(kappa) > 1e-8:
                assert np.max(np.abs(lam)) < 1
            found += 1


class TestDecomposeTimes:
    def test_symmetric_point(self):
        times = decompose_times(np.full(3, np.exp(-2.0)))
        assert times.s == pytest.approx(0.5)
        assert times.t == pytest.approx(0.5)
        assert times.u == pytest.approx(0.5)
        assert np.exp(-2 * (times.s + times.u)) == pytest.approx(np.exp(-2.0))

    def test_boundary_rejected(self):
        lam = np.array([0.9, 0.8, 0.9 * 0.8])  # l3 = l1*l2 exactly
        with pytest.raises(NotInteriorOfSError):
            decompose_times(lam)

    def test_interior_roundtrip(self):
        lam = np.array([0.9, 0.8, 0.75])
        times = decompose_times(lam)
        assert times.s > 0 and times.t > 0 and times.u > 0
        rec = three_factor_super(times)
        assert frobenius_distance(rec.matrix, superoperator_from_lambda(lam).matrix) < 1e-10

    def test_random_interior_roundtrips(self):
        rng = np.random.default_rng(59)
        for _ in range(100):
            lam = random_distortion_in_s(rng, strict_margin=1e-9)
            times = decompose_times(lam)
            rec = three_factor_super(times)
            assert frobenius_distance(
                rec.matrix, superoperator_from_lambda(lam).matrix
            ) < 1e-10


class TestTwoFactorBoundary:
    def test_zero_times_give_identity(self):
        assert_allclose(two_factor_boundary(0.0, 0.0, "zx"), [1, 0, 0, 0])

    def test_known_distortions(self):
        p = two_factor_boundary(0.3, 0.7, "zx")
        from pauli_kit.pauli import lambda_from_p

        assert_allclose(
            lambda_from_p(p), [np.exp(-0.6), np.exp(-2.0), np.exp(-1.4)], atol=1e-15
        )
        assert abs(p[0] * p[2] - p[1] * p[3]) < 1e-14

    def test_full_decoherence_limit(self):
        assert_allclose(two_factor_boundary(40.0, 40.0, "zx"), [0.25] * 4, atol=1e-12)

    def test_each_pair_saturates_its_sheet(self):
        rng = np.random.default_rng(60)
        saturated_margin = {"yx": 0, "zx": 1, "zy": 2}
        for pair, idx in saturated_margin.items():
            for _ in range(100):
                s, t = rng.uniform(0, 5, 2)
                margins = prob_margins(two_factor_boundary(s, t, pair))
                assert abs(margins[idx]) < 1e-13
                assert np.all(margins >= -1e-13)

    def test_matches_composed_evolutions(self):
        rng = np.random.default_rng(61)
        for _ in range(10):
            s, t = rng.uniform(0, 2, 2)
            p = two_factor_boundary(s, t, "zx")
            composed = (
                evolve(axis_jump_generator("z"), s).matrix
                @ evolve(axis_jump_generator("x"), t).matrix
            )
            from pauli_kit.pauli import pauli_superoperator

            assert frobenius_distance(composed, pauli_superoperator(p).matrix) < 1e-12

    def test_normalized_prefactor_identity(self):
        # p0 of the z-x composition equals exp(-(s+t)) cosh(s) cosh(t)
        rng = np.random.default_rng(62)
        for _ in range(50):
            s, t = rng.uniform(0, 4, 2)
            p = two_factor_boundary(s, t, "zx")
            assert p[0] == pytest.approx(np.exp(-(s + t)) * np.cosh(s) * np.cosh(t))
            assert p.sum() == pytest.approx(1.0)
