"""Pauli channels as probability 4-vectors and distortion 3-vectors.

A Pauli channel ``rho -> sum_i p_i sigma_i rho sigma_i`` is determined by a
probability vector ``p = (p0, p1, p2, p3)``.  Its superoperator has the real
spectrum ``(1, lam1, lam2, lam3)`` with

    lam1 = p0 + p1 - p2 - p3
    lam2 = p0 - p1 + p2 - p3
    lam3 = p0 - p1 - p2 + p3

and the channel embeds in a one-parameter semigroup exactly when, besides
complete positivity, the pairwise product inequalities

    lam3 >= lam1*lam2,   lam2 >= lam1*lam3,   lam1 >= lam2*lam3

hold with non-negative lam.  The closed region cut out by these inequalities
is referred to as the semigroup set throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import config
from .basis import PAULIS
from .channel import Superoperator
from .errors import DomainError, NotCompletelyPositiveError
from .linalg import vec


def as_prob_vector(p, tol: float = config.PROBABILITY_TOL) -> np.ndarray:
    """Validate a probability 4-vector (entries >= -tol, sum 1)."""
    p = np.asarray(p, dtype=float).reshape(-1)
    if p.size != 4:
        raise DomainError(f"probability vector must have 4 components, got {p.size}")
    if not np.all(np.isfinite(p)):
        raise DomainError("probability vector contains NaN or infinity")
    if np.any(p < -tol):
        raise DomainError(f"negative probability component in {p}")
    if abs(p.sum() - 1.0) > config.SIMPLEX_SUM_TOL:
        raise DomainError(f"probabilities sum to {p.sum()!r}, expected 1")
    return p


def as_distortion(lam) -> np.ndarray:
    lam = np.asarray(lam, dtype=float).reshape(-1)
    if lam.size != 3:
        raise DomainError(f"distortion vector must have 3 components, got {lam.size}")
    if not np.all(np.isfinite(lam)):
        raise DomainError("distortion vector contains NaN or infinity")
    return lam


def lambda_from_p(p) -> np.ndarray:
    """Distortion triple of the Pauli channel with probabilities ``p``."""
    p0, p1, p2, p3 = as_prob_vector(p)
    return np.array([p0 + p1 - p2 - p3, p0 - p1 + p2 - p3, p0 - p1 - p2 + p3])


def p_from_lambda(lam, tol: float = config.PROBABILITY_TOL) -> np.ndarray:
    """Exact inverse of :func:`lambda_from_p`.

    Raises :class:`NotCompletelyPositiveError` when any component would be
    negative beyond ``tol`` (the distortion triple violates complete
    positivity).
    """
    l1, l2, l3 = as_distortion(lam)
    p = 0.25 * np.array(
        [1 + l1 + l2 + l3, 1 + l1 - l2 - l3, 1 - l1 + l2 - l3, 1 - l1 - l2 + l3]
    )
    if np.any(p < -tol):
        raise NotCompletelyPositiveError(
            f"distortion {lam} gives negative probabilities {p}"
        )
    return p


def cp_condition(lam, tol: float = config.CLOSURE_TOL) -> bool:
    """Complete positivity in terms of the decreasingly ordered distortions:
    ``lam3 >= lam1 + lam2 - 1`` together with ``lam1 + lam2 + lam3 >= -1``.

    The second constraint only binds when the two largest components sum
    negative; with it the test agrees with probability feasibility and with
    positivity of the dynamical matrix on the whole cube ``[-1, 1]^3``.
    """
    d = np.sort(as_distortion(lam))[::-1]
    return bool(d[2] >= d[0] + d[1] - 1 - tol and d.sum() >= -1 - tol)


def eq_margins(lam) -> np.ndarray:
    """Slack of the three pairwise product inequalities on ``lam``."""
    l1, l2, l3 = as_distortion(lam)
    return np.array([l3 - l1 * l2, l2 - l1 * l3, l1 - l2 * l3])


@dataclass(frozen=True)
class SemigroupVerdict:
    """Outcome of the semigroup-membership test for a distortion triple.

    ``in_s`` uses the closed-set convention, so boundary points (including
    the completely depolarizing channel at ``lam = 0``) are members even
    though ``log_exists`` is False there; the two flags disagree exactly on
    the faces where some ``lam_i`` vanishes.
    """

    in_s: bool
    cp: bool
    log_exists: bool
    violated_conditions: tuple[str, ...]
    margins: tuple[float, float, float]


def semigroup_condition(lam, tol: float = config.CLOSURE_TOL) -> SemigroupVerdict:
    lam = as_distortion(lam)
    margins = eq_margins(lam)
    cp = cp_condition(lam, tol)
    log_exists = bool(np.all(lam > tol))
    violated = []
    if not cp:
        violated.append("cp")
    if np.any(lam < -tol):
        violated.append("lambda_min")
    for name, margin in zip(("l3>=l1*l2", "l2>=l1*l3", "l1>=l2*l3"), margins):
        if margin < -tol:
            violated.append(name)
    in_s = not violated
    return SemigroupVerdict(
        in_s=in_s,
        cp=cp,
        log_exists=log_exists,
        violated_conditions=tuple(violated),
        margins=tuple(float(m) for m in margins),
    )


def prob_margins(p) -> np.ndarray:
    """Slack of ``p0*p3 - p1*p2``, ``p0*p2 - p1*p3``, ``p0*p1 - p2*p3``."""
    p0, p1, p2, p3 = np.asarray(p, dtype=float).reshape(4)
    return np.array([p0 * p3 - p1 * p2, p0 * p2 - p1 * p3, p0 * p1 - p2 * p3])


def prob_condition(p, tol: float = config.CLOSURE_TOL) -> tuple[bool, np.ndarray]:
    """Probability-vector form of the semigroup inequalities."""
    margins = prob_margins(as_prob_vector(p))
    return bool(np.all(margins >= -tol)), margins


def product_vector(a: float, b: float, sheet: int = 0) -> np.ndarray:
    """Probability vector ``(a, 1-a) x (b, 1-b)`` permuted onto one sheet.

    ``sheet`` selects which product identity is saturated exactly:
    0 for ``p0*p3 = p1*p2``, 1 for ``p0*p2 = p1*p3``, 2 for ``p0*p1 = p2*p3``.
    The point lies on the boundary of the semigroup set when both factors
    are at least one half; for smaller factors it sits on the continuation
    of the same ruled surface outside the set.
    """
    if not (0 <= a <= 1 and 0 <= b <= 1):
        raise DomainError(f"factors must lie in [0, 1], got a={a}, b={b}")
    ap, bp = 1 - a, 1 - b
    base = np.array([a * b, a * bp, ap * b, ap * bp])
    if sheet == 0:
        return base
    if sheet == 1:
        return base[[0, 1, 3, 2]]
    if sheet == 2:
        return base[[0, 3, 2, 1]]
    raise DomainError(f"sheet must be 0, 1 or 2, got {sheet}")


def pauli_superoperator(p) -> Superoperator:
    """``sum_i p_i kron(sigma_i, conj(sigma_i))`` in the product basis."""
    p = as_prob_vector(p)
    m = np.zeros((4, 4), dtype=complex)
    for pi, sigma in zip(p, PAULIS):
        m += pi * np.kron(sigma, sigma.conj())
    return Superoperator(m)


def o4_basis() -> np.ndarray:
    """Real orthogonal matrix diagonalizing every Pauli-channel superoperator.

    Rows are the vectorizations of ``I, sigma_x, i*sigma_y, sigma_z`` over
    sqrt(2); conjugation sends the superoperator of probabilities ``p`` to
    ``diag(1, lam1, lam2, lam3)``.
    """
    rows = [vec(PAULIS[0]), vec(PAULIS[1]), vec(1j * PAULIS[2]), vec(PAULIS[3])]
    return np.real(np.stack(rows)) / np.sqrt(2)


_O4 = None


def _o4() -> np.ndarray:
    global _O4
    if _O4 is None:
        _O4 = o4_basis()
    return _O4


def superoperator_from_lambda(lam) -> Superoperator:
    """Pauli-channel superoperator with the given distortion triple.

    Works for any real triple, including ones violating complete positivity.
    """
    lam = as_distortion(lam)
    o = _o4()
    return Superoperator(o.T @ np.diag(np.concatenate(([1.0], lam))) @ o)


def distortion_from_super(s: Superoperator, tol: float = 1e-9) -> np.ndarray:
    """Read the distortion triple off a Pauli-diagonal superoperator."""
    o = _o4()
    e = o @ s.matrix @ o.T
    off = e - np.diag(np.diagonal(e))
    if np.max(np.abs(off)) > tol or abs(e[0, 0] - 1) > tol:
        raise ValueError("superoperator is not diagonal in the Pauli-channel frame")
    if np.max(np.abs(np.diagonal(e).imag)) > tol:
        raise ValueError("distortion spectrum is not real")
    return np.diagonal(e)[1:].real.copy()


def random_prob_vector(rng: np.random.Generator) -> np.ndarray:
    """Uniform sample from the probability simplex (normalized exponentials)."""
    e = rng.exponential(size=4)
    return e / e.sum()


def random_distortion_in_s(
    rng: np.random.Generator,
    strict_margin: float = 0.0,
    max_tries: int = 10_000,
) -> np.ndarray:
    """Rejection-sample ``lam`` in ``(0, 1)^3`` with all product margins above
    ``strict_margin``."""
    for _ in range(max_tries):
        lam = rng.uniform(0.0, 1.0, size=3)
        if np.all(lam > 0) and np.all(eq_margins(lam) > strict_margin):
            return lam
    raise RuntimeError("rejection sampling failed")
