"""Unistochastic channels and the canonical two-qubit interaction form.

A unitary ``U`` of order ``N^2`` defines the unistochastic channel

    Phi_U(rho) = tr_B( U (rho x I/N) U^dag ),

the coupling of the system with an environment of equal size prepared in the
maximally mixed state.  Two equivalent constructions are provided: the
partial-trace definition applied to a matrix unit basis, and the reshuffling
identity ``Phi_U = (1/N) [U^R (U^R)^dag]^R``.

For qubits, every ``U`` in U(4) is locally equivalent to the canonical form
``exp(i sum_j alpha_j sigma_j x sigma_j)`` with angles from the Weyl chamber
``pi/4 >= a1 >= a2 >= |a3| >= 0``.  The induced channel is a Pauli channel
with distortions ``cos(2a2)cos(2a3), cos(2a1)cos(2a3), cos(2a1)cos(2a2)``,
which always satisfy the semigroup inequalities; conversely any admissible
distortion triple determines angles realizing it.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from . import config
from .channel import Superoperator
from .errors import (
    DomainError,
    NotUnistochasticRealizableError,
    NotUnitaryError,
)
from .linalg import as_square_matrix, dagger, partial_trace_second, reshuffle, vec
from .pauli import as_distortion, eq_margins, _o4

# Magic (Bell-like) basis used for the local invariants of two-qubit gates.
MAGIC_BASIS = np.array(
    [
        [1, 0, 0, 1j],
        [0, 1j, 1, 0],
        [0, 1j, -1, 0],
        [1, 0, 0, -1j],
    ],
    dtype=complex,
) / np.sqrt(2)


def unitarity_defect(u: np.ndarray) -> float:
    u = as_square_matrix(u, "unitary")
    return float(np.linalg.norm(dagger(u) @ u - np.eye(u.shape[0])))


def _check_unitary(u, tol: float) -> np.ndarray:
    u = as_square_matrix(u, "unitary")
    defect = unitarity_defect(u)
    if defect > tol:
        raise NotUnitaryError(f"unitarity defect {defect:.3e} exceeds {tol:.1e}")
    return u


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix with the
    R-diagonal phases absorbed into Q."""
    g = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def unistochastic_from_unitary(
    u, tol: float = config.UNITARITY_TOL
) -> Superoperator:
    """Channel of the coupling unitary, via the reshuffling identity."""
    u = _check_unitary(u, tol)
    n = math.isqrt(u.shape[0])
    if n * n != u.shape[0]:
        raise ValueError(f"coupling unitary must have square order, got {u.shape[0]}")
    ur = reshuffle(u)
    return Superoperator(reshuffle(ur @ dagger(ur)) / n)


def apply_unistochastic(u, rho, tol: float = config.UNITARITY_TOL) -> np.ndarray:
    """``tr_B( U (rho x I/N) U^dag )`` for a single input state."""
    u = _check_unitary(u, tol)
    n = math.isqrt(u.shape[0])
    rho = as_square_matrix(rho, "state")
    if rho.shape[0] != n:
        raise ValueError(f"state dimension {rho.shape[0]} does not match system size {n}")
    w = u @ np.kron(rho, np.eye(n) / n) @ dagger(u)
    return partial_trace_second(w, (n, n))


def unistochastic_from_unitary_definition(
    u, tol: float = config.UNITARITY_TOL
) -> Superoperator:
    """Channel of the coupling unitary, built column by column from the
    partial-trace definition on the matrix unit basis."""
    u = _check_unitary(u, tol)
    n = math.isqrt(u.shape[0])
    m = np.zeros((n * n, n * n), dtype=complex)
    for i in range(n):
        for j in range(n):
            unit = np.zeros((n, n), dtype=complex)
            unit[i, j] = 1.0
            m[:, i * n + j] = vec(apply_unistochastic(u, unit, tol))
    return Superoperator(m)


# ---------------------------------------------------------------------------
# canonical interaction form


def in_weyl_chamber(alpha, tol: float = 1e-12) -> bool:
    a1, a2, a3 = np.asarray(alpha, dtype=float).reshape(3)
    return bool(a1 <= math.pi / 4 + tol and a1 >= a2 - tol and a2 >= abs(a3) - tol)


def weyl_normalize(alpha, tol: float = 1e-12) -> np.ndarray:
    """Fold an angle triple produced by the inverse construction into the
    Weyl chamber (moduli sorted decreasingly).

    Only angles with ``|a_j| <= pi/4`` are supported; the induced channel is
    unchanged because it depends on the angles through ``cos(2 a_j)`` only.
    """
    a = np.abs(np.asarray(alpha, dtype=float).reshape(3))
    if np.any(a > math.pi / 4 + tol):
        raise DomainError(f"angles {alpha} outside [-pi/4, pi/4] cannot be folded")
    return np.sort(a)[::-1]


def cartan_unitary(alpha) -> np.ndarray:
    """``exp(i (a1 XX + a2 YY + a3 ZZ))`` in closed form.

    The three tensor squares commute and are diagonal in the Pauli-channel
    frame, so the exponential reduces to phases on that basis.
    """
    a1, a2, a3 = np.asarray(alpha, dtype=float).reshape(3)
    phases = np.array(
        [
            a1 - a2 + a3,
            a1 + a2 - a3,
            -a1 - a2 - a3,
            -a1 + a2 + a3,
        ]
    )
    o = _o4()
    return o.T @ np.diag(np.exp(1j * phases)) @ o


def cartan_superoperator(alpha) -> Superoperator:
    """Pauli channel induced by the canonical-form coupling unitary.

    Distortion spectrum ``(cos 2a2 cos 2a3, cos 2a1 cos 2a3, cos 2a1 cos 2a2)``.
    The result depends on the angles only through ``cos(2 a_j)``, so ordering
    and signs are irrelevant; a warning is emitted when some magnitude
    exceeds pi/4, where the cosines (and hence distortions) go negative.
    """
    alpha = np.asarray(alpha, dtype=float).reshape(3)
    if np.any(np.abs(alpha) > math.pi / 4 + 1e-12):
        warnings.warn(
            f"angle magnitudes {np.abs(alpha)} exceed pi/4; distortions go negative",
            stacklevel=2,
        )
    c1, c2, c3 = np.cos(2 * alpha)
    o = _o4()
    diag = np.diag([1.0, c2 * c3, c1 * c3, c1 * c2])
    return Superoperator(o.T @ diag @ o)


def angles_from_lambda(lam, tol: float = config.CLOSURE_TOL) -> np.ndarray:
    """Interaction angles realizing a given admissible distortion triple.

        a1 = (1/2) arccos sqrt(l2 l3 / l1)   (and cyclic)

    Requires strictly positive components satisfying the semigroup product
    inequalities (so every arccos argument is at most one); the angles are
    returned in component order, not Weyl-sorted, so that
    :func:`cartan_superoperator` reproduces ``lam`` exactly; use
    :func:`weyl_normalize` for the chamber representative.
    """
    lam = as_distortion(lam)
    if np.any(lam <= 0):
        raise DomainError(f"distortion components must be positive, got {lam}")
    margins = eq_margins(lam)
    if np.any(margins < -tol):
        raise NotUnistochasticRealizableError(
            f"product margins {margins} violated; no coupling unitary exists"
        )
    l1, l2, l3 = lam
    args = np.sqrt(np.clip(np.array([l2 * l3 / l1, l1 * l3 / l2, l1 * l2 / l3]), 0.0, 1.0))
    return 0.5 * np.arccos(args)


# ---------------------------------------------------------------------------
# local equivalence of two-qubit gates


def local_invariants(u, tol: float = config.UNITARITY_TOL) -> tuple[complex, complex]:
    """The two local invariants of a two-qubit gate, computed in the magic
    basis; both are insensitive to global phase and one-qubit rotations."""
    u = _check_unitary(u, tol)
    if u.shape[0] != 4:
        raise ValueError("local invariants are defined for order-4 unitaries")
    ub = dagger(MAGIC_BASIS) @ u @ MAGIC_BASIS
    m = ub.T @ ub
    tr2 = np.trace(m) ** 2
    det = np.linalg.det(u)
    g1 = tr2 / (16 * det)
    g2 = (tr2 - np.trace(m @ m)) / (4 * det)
    return complex(g1), complex(g2)


def local_equivalence_check(u, v, tol: float = 1e-9) -> bool:
    """Whether two order-4 unitaries differ only by one-qubit rotations."""
    gu = local_invariants(u)
    gv = local_invariants(v)
    return bool(abs(gu[0] - gv[0]) <= tol and abs(gu[1] - gv[1]) <= tol)
