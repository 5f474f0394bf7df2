import numpy as np
import pytest
from numpy.testing import assert_allclose

from pauli_kit.channel import super_to_bloch
from pauli_kit.errors import (
    DomainError,
    NotUnistochasticRealizableError,
    NotUnitaryError,
)
from pauli_kit.linalg import frobenius_distance
from pauli_kit.pauli import (
    distortion_from_super,
    random_distortion_in_s,
    semigroup_condition,
)
from pauli_kit.unistochastic import (
    angles_from_lambda,
    apply_unistochastic,
    cartan_superoperator,
    cartan_unitary,
    haar_unitary,
    in_weyl_chamber,
    local_equivalence_check,
    local_invariants,
    unistochastic_from_unitary,
    unistochastic_from_unitary_definition,
    weyl_normalize,
)

# CNOT with the control on the environment qubit (the system is the first
# tensor factor); induces an equal mixture of identity and bit flip
CNOT_ENV = np.array(
    [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]], dtype=complex
)
SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)


class TestUnistochasticConstruction:
    def test_identity_coupling(self):
        assert_allclose(unistochastic_from_unitary(np.eye(4)).matrix, np.eye(4), atol=1e-14)

    def test_swap_traces_out_the_system(self):
        sup = unistochastic_from_unitary(SWAP)
        assert_allclose(distortion_from_super(sup), [0, 0, 0], atol=1e-14)
        rng = np.random.default_rng(70)
        rho = np.array([[0.8, 0.1 + 0.2j], [0.1 - 0.2j, 0.2]])
        assert_allclose(apply_unistochastic(SWAP, rho), np.eye(2) / 2, atol=1e-14)

    def test_cnot_dephases_in_the_x_frame(self):
        for route in (unistochastic_from_unitary, unistochastic_from_unitary_definition):
            lam = distortion_from_super(route(CNOT_ENV))
            assert_allclose(lam, [1, 0, 0], atol=1e-14)

    def test_routes_agree_on_haar_samples(self):
        rng = np.random.default_rng(71)
        for _ in range(100):
            u = haar_unitary(4, rng)
            a = unistochastic_from_unitary(u)
            b = unistochastic_from_unitary_definition(u)
            assert frobenius_distance(a.matrix, b.matrix) < 1e-12

    def test_outputs_are_unital_cptp(self):
        from pauli_kit.channel import is_completely_positive

        rng = np.random.default_rng(72)
        for _ in range(50):
            sup = unistochastic_from_unitary(haar_unitary(4, rng))
            bloch = super_to_bloch(sup)
            assert np.linalg.norm(bloch.kappa) < 1e-12
            assert is_completely_positive(sup).ok

    def test_rejects_non_unitary(self):
        with pytest.raises(NotUnitaryError):
            unistochastic_from_unitary(np.diag([1.0, 1.0, 1.0, 0.5]))


class TestCartanForm:
    def test_zero_angles_is_identity(self):
        assert_allclose(cartan_superoperator([0, 0, 0]).matrix, np.eye(4), atol=1e-14)
        assert_allclose(cartan_unitary([0, 0, 0]), np.eye(4), atol=1e-14)

    def test_quarter_pi_is_depolarizing(self):
        sup = cartan_superoperator([np.pi / 4] * 3)
        assert_allclose(distortion_from_super(sup), [0, 0, 0], atol=1e-14)

    def test_sixth_pi_distortion(self):
        sup = cartan_superoperator([np.pi / 6] * 3)
        assert_allclose(distortion_from_super(sup), [0.25, 0.25, 0.25], atol=1e-14)

    def test_closed_form_matches_coupling_route(self):
        rng = np.random.default_rng(73)
        for _ in range(50):
            alpha = np.sort(rng.uniform(0, np.pi / 4, 3))[::-1]
            u = cartan_unitary(alpha)
            assert frobenius_distance(
                cartan_superoperator(alpha).matrix,
                unistochastic_from_unitary(u).matrix,
            ) < 1e-10

    def test_every_chamber_output_is_in_semigroup_set(self):
        rng = np.random.default_rng(74)
        for _ in range(200):
            alpha = np.sort(rng.uniform(0, np.pi / 4, 3))[::-1]
            alpha[2] *= rng.choice([-1.0, 1.0])
            lam = distortion_from_super(cartan_superoperator(np.sort(np.abs(alpha))[::-1]))
            assert np.all(lam >= -1e-12)
            assert semigroup_condition(lam).in_s

    def test_component_order_is_silent_but_large_angles_warn(self):
        import warnings as _warnings

        with _warnings.catch_warnings():
            _warnings.simplefilter("error")
            cartan_superoperator([0.1, 0.5, 0.2])  # unsorted but within the fold
        with pytest.warns(UserWarning):
            cartan_superoperator([1.0, 0.1, 0.05])


class TestAnglesFromLambda:
    def test_identity(self):
        assert_allclose(angles_from_lambda([1, 1, 1]), [0, 0, 0], atol=1e-14)

    def test_known_inverse(self):
        assert_allclose(angles_from_lambda([0.25] * 3), [np.pi / 6] * 3, atol=1e-14)

    def test_roundtrip_on_random_admissible_points(self):
        rng = np.random.default_rng(75)
        for _ in range(200):
            lam = random_distortion_in_s(rng)
            alpha = angles_from_lambda(lam)
            back = distortion_from_super(cartan_superoperator(alpha))
            assert np.abs(back - lam).max() < 1e-10

    def test_rejects_inadmissible_distortion(self):
        with pytest.raises(NotUnistochasticRealizableError):
            angles_from_lambda([0.9, 0.9, 0.805])

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            angles_from_lambda([0.5, 0.0, 0.2])

    def test_weyl_normalization(self):
        alpha = np.array([0.2, 0.7, 0.4])
        folded = weyl_normalize(alpha)
        assert in_weyl_chamber(folded)
        assert_allclose(folded, [0.7, 0.4, 0.2])
        assert frobenius_distance(
            cartan_superoperator(np.array([0.2, -0.4, 0.3])).matrix,
            cartan_superoperator(np.array([0.2, 0.4, 0.3])).matrix,
        ) < 1e-14


class TestLocalEquivalence:
    def test_local_rotations_preserve_invariants(self):
        rng = np.random.default_rng(76)
        for _ in range(20):
            u = haar_unitary(4, rng)
            w = [haar_unitary(2, rng) for _ in range(4)]
            v = np.kron(w[0], w[1]) @ u @ np.kron(w[2], w[3])
            assert local_equivalence_check(u, v)

    def test_global_phase_irrelevant(self):
        rng = np.random.default_rng(77)
        u = haar_unitary(4, rng)
        assert local_equivalence_check(u, np.exp(1j * 0.813) * u)

    def test_cnot_vs_swap(self):
        assert not local_equivalence_check(CNOT_ENV, SWAP)

    def test_identity_invariants(self):
        g1, g2 = local_invariants(np.eye(4))
        assert abs(g1 - 1) < 1e-12
        assert abs(g2 - 3) < 1e-12

    def test_cnot_invariants(self):
        g1, g2 = local_invariants(CNOT_ENV)
        assert abs(g1) < 1e-12
        assert abs(g2 - 1) < 1e-12

    def test_cartan_angle_classes_separate(self):
        # distinct canonical angle triples yield distinct invariants
        u1 = cartan_unitary([np.pi / 4, 0, 0])
        u2 = cartan_unitary([np.pi / 4, np.pi / 4, np.pi / 4])
        assert local_equivalence_check(CNOT_ENV, u1)
        assert local_equivalence_check(SWAP, u2)
        assert not local_equivalence_check(u1, u2)

    def test_random_unitaries_differ(self):
        rng = np.random.default_rng(78)
        assert not local_equivalence_check(haar_unitary(4, rng), haar_unitary(4, rng))
