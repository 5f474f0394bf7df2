"""Named invariant checks behind the command line ``check`` subcommand.

``quick`` runs deterministic known-value assertions; ``full`` adds the
seeded randomized property suites.  Each check either returns quietly or
raises ``AssertionError`` with a short diagnostic.
"""

from __future__ import annotations

import numpy as np

from . import channel, geometry, pauli, semigroup, unistochastic
from .channel import BlochForm, KrausSet
from .linalg import frobenius_distance, matrix_power_real


def _boundary_min_choi_sweep(lam: np.ndarray, t_grid: np.ndarray) -> float:
    """Minimum dynamical-matrix eigenvalue of the closed-form evolution over
    a time grid, computed blockwise from the two 2x2 Choi blocks."""
    lt = lam[None, :] ** t_grid[:, None]
    outer = np.stack(
        [
            0.5 * (1 + lt[:, 2] - (lt[:, 0] + lt[:, 1])),
            0.5 * (1 - lt[:, 2] - np.abs(lt[:, 0] - lt[:, 1])),
        ]
    )
    return float(outer.min())


def _default_t_grid() -> np.ndarray:
    return np.concatenate([0.001 * np.arange(1, 1001), [2.0, 5.0, 10.0]])


# ---------------------------------------------------------------------------
# quick checks


def check_lambda_p_correspondence(rng, scale):
    lam = pauli.lambda_from_p([0.4, 0.3, 0.2, 0.1])
    assert np.allclose(lam, [0.4, 0.2, 0.0], atol=1e-14 * scale), lam
    p = pauli.p_from_lambda([0.5, 0.5, 0.25])
    assert np.allclose(p, [0.5625, 0.1875, 0.1875, 0.0625], atol=1e-14 * scale), p


def check_pauli_superoperator_pattern(rng, scale):
    m = pauli.pauli_superoperator([0.4, 0.3, 0.2, 0.1]).matrix
    expected = np.array(
        [
            [0.5, 0, 0, 0.5],
            [0, 0.3, 0.1, 0],
            [0, 0.1, 0.3, 0],
            [0.5, 0, 0, 0.5],
        ]
    )
    assert np.abs(m - expected).max() < 1e-14 * scale


def check_representation_known_points(rng, scale):
    cid = channel.super_to_choi(pauli.pauli_superoperator([1, 0, 0, 0]))
    eigs = np.linalg.eigvalsh(cid.matrix)
    assert np.allclose(eigs, [0, 0, 0, 2], atol=1e-12 * scale), eigs
    cstar = channel.super_to_choi(pauli.pauli_superoperator([0.25] * 4))
    assert frobenius_distance(cstar.matrix, np.eye(4) / 2) < 1e-14 * scale


def check_decompose_times_symmetric(rng, scale):
    ts = semigroup.decompose_times(np.full(3, np.exp(-2.0)))
    assert abs(ts.s - 0.5) < 1e-12 * scale and abs(ts.t - 0.5) < 1e-12 * scale
    rec = semigroup.three_factor_super(ts)
    target = pauli.superoperator_from_lambda(np.full(3, np.exp(-2.0)))
    assert frobenius_distance(rec.matrix, target.matrix) < 1e-10 * scale


def check_cartan_known_angles(rng, scale):
    alpha = unistochastic.angles_from_lambda([0.25, 0.25, 0.25])
    assert np.allclose(alpha, np.pi / 6, atol=1e-12 * scale), alpha
    lam = pauli.distortion_from_super(unistochastic.cartan_superoperator(alpha))
    assert np.allclose(lam, 0.25, atol=1e-12 * scale)


def check_classify_named_points(rng, scale):
    from .geometry import RegionLabel, classify

    assert classify([1, 0, 0, 0]) is RegionLabel.BOUNDARY_S
    assert classify([0.25] * 4) is RegionLabel.BOUNDARY_S
    assert classify([0.5, 0, 0, 0.5]) is RegionLabel.BOUNDARY_S
    assert classify([0, 0.5, 0.5, 0]) is RegionLabel.CP_ONLY
    assert classify([0.5, 0.2, 0.2, 0.1]) is RegionLabel.SEMIGROUP_S


def check_kappa_bound_known(rng, scale):
    ok, slack = semigroup.kappa_bound_check(
        BlochForm([0, 0, 0.25], np.diag([0.5, 0.5, 0.5]))
    )
    assert ok and abs(slack - 0.4375) < 1e-12 * scale, slack
    ok, _ = semigroup.kappa_bound_check(
        BlochForm([0.3, 0, 0], np.diag([0.99, 0.99, 0.99]))
    )
    assert not ok


def check_two_factor_product_identity(rng, scale):
    p = semigroup.two_factor_boundary(0.3, 0.7, "zx")
    assert abs(p[0] * p[2] - p[1] * p[3]) < 1e-15 * scale


def check_classical_interval(rng, scale):
    assert geometry.classical_semigroup_check(0.3)
    assert not geometry.classical_semigroup_check(0.7)
    assert geometry.bistochastic_trajectory_within_polytope(0.3)
    assert not geometry.bistochastic_trajectory_within_polytope(0.7)


# ---------------------------------------------------------------------------
# full (randomized) suites


def check_condition_equivalence(rng, scale):
    for _ in range(10_000):
        p = pauli.random_prob_vector(rng)
        lam = pauli.lambda_from_p(p)
        if np.any(lam <= 1e-9):
            continue
        ok, _ = pauli.prob_condition(p)
        verdict = pauli.semigroup_condition(lam)
        assert ok == verdict.in_s, (p, lam)


def check_cp_time_grid_oracle(rng, scale):
    t_grid = _default_t_grid()
    for _ in range(1000):
        lam = rng.uniform(0, 1, size=3)
        analytic = pauli.semigroup_condition(lam).in_s
        brute = _boundary_min_choi_sweep(lam, t_grid) >= -1e-9 * scale
        assert analytic == brute, (lam, analytic, brute)


def check_three_factor_roundtrip(rng, scale):
    for _ in range(1000):
        lam = pauli.random_distortion_in_s(rng, strict_margin=1e-9)
        times = semigroup.decompose_times(lam)
        assert times.s > 0 and times.t > 0 and times.u > 0
        rec = semigroup.three_factor_super(times)
        target = pauli.superoperator_from_lambda(lam)
        assert frobenius_distance(rec.matrix, target.matrix) < 1e-10 * scale


def check_two_factor_boundary_sweep(rng, scale):
    from .geometry import RegionLabel, classify

    for _ in range(1000):
        s, t = rng.uniform(0, 5, size=2)
        p = semigroup.two_factor_boundary(s, t, "zx")
        assert abs(p[0] * p[2] - p[1] * p[3]) < 1e-13 * scale
        assert classify(p) is RegionLabel.BOUNDARY_S


def check_star_shape(rng, scale):
    for _ in range(10_000):
        a, b = rng.uniform(0.5, 1.0, size=2)
        beta, gamma = rng.uniform(0, 1, size=2)
        sheet = int(rng.integers(0, 3))
        p = pauli.product_vector(a, b, sheet)
        assert geometry.star_shape_witness(p, beta, gamma), (a, b, beta, gamma, sheet)


def check_cartan_roundtrip(rng, scale):
    for _ in range(1000):
        lam = pauli.random_distortion_in_s(rng)
        alpha = unistochastic.angles_from_lambda(lam)
        back = pauli.distortion_from_super(unistochastic.cartan_superoperator(alpha))
        assert np.abs(back - lam).max() < 1e-10 * scale, (lam, back)


def check_unistochastic_routes(rng, scale):
    for _ in range(1000):
        u = unistochastic.haar_unitary(4, rng)
        a = unistochastic.unistochastic_from_unitary(u)
        b = unistochastic.unistochastic_from_unitary_definition(u)
        assert frobenius_distance(a.matrix, b.matrix) < 1e-11 * scale
        bloch = channel.super_to_bloch(a)
        assert np.linalg.norm(bloch.kappa) < 1e-12 * scale


def check_nonunital_decoupling(rng, scale):
    done = 0
    while done < 200:
        lam = rng.uniform(0.05, 0.95, size=3)
        _, slack = semigroup.kappa_bound_check(BlochForm(np.zeros(3), np.diag(lam)))
        if slack <= 0:
            continue
        direction = rng.standard_normal(3)
        direction /= np.linalg.norm(direction)
        kappa = direction * np.sqrt(slack) * rng.uniform(0, 0.9)
        b = BlochForm(kappa, np.diag(lam))
        if not channel.is_completely_positive(channel.bloch_to_super(b)).ok:
            continue
        full = channel.bloch_to_super(b).matrix
        for t in (0.25, 0.5, 2.0, 3.7):
            closed = channel.bloch_to_super(semigroup.nonunital_evolve(b, t)).matrix
            assert frobenius_distance(closed, matrix_power_real(full, t)) < 1e-9 * scale
        report = semigroup.max_lambda_check(b)
        assert report.consistent_with_cp
        done += 1


def check_representation_roundtrips(rng, scale):
    for _ in range(500):
        k = int(rng.integers(1, 5))
        ops = [
            (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
            for _ in range(k)
        ]
        gram = sum(op.conj().T @ op for op in ops)
        w, v = np.linalg.eigh(gram)
        inv_sqrt = (v / np.sqrt(w)) @ v.conj().T
        ks = KrausSet([op @ inv_sqrt for op in ops])
        s = channel.kraus_to_super(ks)
        back = channel.choi_to_super(channel.super_to_choi(s))
        assert frobenius_distance(back.matrix, s.matrix) < 1e-10 * scale
        b = channel.super_to_bloch(s)
        assert frobenius_distance(channel.bloch_to_super(b).matrix, s.matrix) < 1e-10 * scale
        verdict = channel.is_completely_positive(s)
        assert verdict.ok, verdict


def check_classical_grid(rng, scale):
    for a in np.arange(0.0, 1.0001, 0.01):
        a = float(min(a, 1.0))
        assert geometry.classical_semigroup_check(a) == (a <= 0.5 + 1e-12)
        assert geometry.bistochastic_trajectory_within_polytope(a) == (a <= 0.5 + 1e-12)


QUICK_CHECKS = [
    ("lambda-p-correspondence", check_lambda_p_correspondence),
    ("pauli-superoperator-pattern", check_pauli_superoperator_pattern),
    ("representation-known-points", check_representation_known_points),
    ("three-factor-symmetric-times", check_decompose_times_symmetric),
    ("cartan-known-angles", check_cartan_known_angles),
    ("classify-named-points", check_classify_named_points),
    ("kappa-bound-known-values", check_kappa_bound_known),
    ("two-factor-product-identity", check_two_factor_product_identity),
    ("classical-interval-endpoints", check_classical_interval),
]

FULL_CHECKS = QUICK_CHECKS + [
    ("probability-vs-distortion-conditions", check_condition_equivalence),
    ("cp-time-grid-oracle", check_cp_time_grid_oracle),
    ("three-factor-roundtrip", check_three_factor_roundtrip),
    ("two-factor-boundary-sweep", check_two_factor_boundary_sweep),
    ("star-shape-witnesses", check_star_shape),
    ("cartan-roundtrip", check_cartan_roundtrip),
    ("unistochastic-construction-routes", check_unistochastic_routes),
    ("nonunital-decoupling", check_nonunital_decoupling),
    ("representation-roundtrips", check_representation_roundtrips),
    ("classical-bistochastic-grid", check_classical_grid),
]


def run_checks(suite: str, seed: int, corrupt_tolerance: bool = False):
    """Run a named suite; returns (all_ok, lines, first_failure_name).

    ``corrupt_tolerance`` shrinks every tolerance absurdly so that failures
    are guaranteed; it exists to prove the harness actually gates on the
    assertions.
    """
    checks = QUICK_CHECKS if suite == "quick" else FULL_CHECKS
    scale = 1e-12 if corrupt_tolerance else 1.0
    lines = []
    first_failure = None
    for name, fn in checks:
        rng = np.random.default_rng(seed)
        try:
            fn(rng, scale)
        except AssertionError as exc:
            detail = str(exc)
            if len(detail) > 120:
                detail = detail[:117] + "..."
            lines.append(f"FAIL {name}: {detail}")
            if first_failure is None:
                first_failure = name
        else:
            lines.append(f"ok   {name}")
    return first_failure is None, lines, first_failure
