"""Lindblad generators and continuous embeddings of channels.

A channel seeds a semigroup when ``t -> exp(t log Phi)`` is completely
positive for every ``t >= 0``.  This module builds generators from jump
operators or from the principal matrix log, evolves them, provides the
closed-form Pauli-channel evolution, decouples the non-unital translation
from the time dependence, and factors interior Pauli channels into the
three axis decoherence semigroups.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import config
from .basis import SIGMA_X, SIGMA_Y, SIGMA_Z
from .channel import BlochForm, ChannelRep, Superoperator, bloch_to_super, to_super
from .errors import DomainError, NotInteriorOfSError, SingularShiftError
from .linalg import as_square_matrix, dagger, matrix_exp, matrix_log, matrix_power_real
from .pauli import as_distortion, eq_margins, p_from_lambda


@dataclass(frozen=True, eq=False)
class LindbladGenerator:
    """Superoperator-form generator, tagged with its provenance."""

    matrix: np.ndarray
    source: str  # "jumps" | "log"
    jumps: tuple[np.ndarray, ...] | None = None

    @property
    def dim(self) -> int:
        import math

        return math.isqrt(self.matrix.shape[0])


def lindblad_from_jumps(jumps, dim: int | None = None) -> LindbladGenerator:
    """Generator ``sum_j kron(L_j, conj(L_j)) - (1/2) kron(L_j^dag L_j, I)
    - (1/2) kron(I, (L_j^dag L_j)^T)`` from jump operators.

    An empty list needs an explicit ``dim`` and yields the zero generator.
    More than ``dim^2 - 1`` operators are legal but redundant, so a warning
    is emitted.
    """
    ops = tuple(as_square_matrix(j, "jump operator") for j in jumps)
    if ops:
        sizes = {op.shape[0] for op in ops}
        if len(sizes) != 1:
            raise ValueError(f"jump operators disagree on dimension: {sorted(sizes)}")
        n = ops[0].shape[0]
        if dim is not None and dim != n:
            raise ValueError(f"dim={dim} does not match jump operators of size {n}")
    elif dim is None:
        raise ValueError("empty jump list requires an explicit dim")
    else:
        n = dim
    eye = np.eye(n)
    gen = np.zeros((n * n, n * n), dtype=complex)
    for op in ops:
        gram = dagger(op) @ op
        gen += np.kron(op, op.conj())
        gen -= 0.5 * np.kron(gram, eye)
        gen -= 0.5 * np.kron(eye, gram.T)
    if len(ops) > n * n - 1:
        warnings.warn(
            f"{len(ops)} jump operators exceed the {n * n - 1} needed in dimension {n}",
            stacklevel=2,
        )
    return LindbladGenerator(matrix=gen, source="jumps", jumps=ops)


def generator_from_channel(channel: ChannelRep) -> LindbladGenerator:
    """Principal log of the channel superoperator.

    Propagates :class:`LogUndefinedError` / :class:`NotDiagonalizableError`,
    which signal that the channel cannot seed a semigroup through the
    principal branch.
    """
    s = to_super(channel)
    return LindbladGenerator(matrix=matrix_log(s.matrix), source="log", jumps=None)


def evolve(generator: LindbladGenerator, t: float) -> Superoperator:
    """``exp(t L)`` as a superoperator; the semigroup law holds in ``t``."""
    if t < 0:
        raise ValueError(f"evolution time must be non-negative, got {t}")
    return Superoperator(matrix_exp(t * generator.matrix))


def pauli_lambda_t(lam, t: float) -> Superoperator:
    """Closed-form Pauli semigroup element at time ``t``.

    In the product basis the matrix is::

        1/2 * [[1+l3^t, 0,         0,         1-l3^t],
               [0,      l1^t+l2^t, l1^t-l2^t, 0     ],
               [0,      l1^t-l2^t, l1^t+l2^t, 0     ],
               [1-l3^t, 0,         0,         1+l3^t]]

    Components may vanish: ``0**t = 0`` for ``t > 0`` and ``0**0 = 1``, which
    reproduces the completely depolarizing limit analytically.  Negative
    components are rejected because no real power is defined there.
    """
    lam = as_distortion(lam)
    if t < 0:
        raise DomainError(f"time must be non-negative, got {t}")
    if np.any(lam < 0):
        raise DomainError(f"distortion components must be non-negative, got {lam}")
    l1, l2, l3 = lam**t
    return Superoperator(
        0.5
        * np.array(
            [
                [1 + l3, 0, 0, 1 - l3],
                [0, l1 + l2, l1 - l2, 0],
                [0, l1 - l2, l1 + l2, 0],
                [1 - l3, 0, 0, 1 + l3],
            ],
            dtype=complex,
        )
    )


# ---------------------------------------------------------------------------
# non-unital decoupling


@dataclass(frozen=True, eq=False)
class NonUnitalDecomposition:
    """Similarity splitting the translation off the time evolution.

    ``conjugator @ super(unital_core) @ conjugator_inv`` reproduces the
    original channel; both conjugators are superoperator-sized matrices in
    the product basis and are exact inverses of each other.
    """

    shift: np.ndarray
    unital_core: BlochForm
    conjugator: np.ndarray
    conjugator_inv: np.ndarray


def nonunital_decompose(b: BlochForm, sv_tol: float = 1e-10) -> NonUnitalDecomposition:
    """Split ``[[1,0],[kappa,T]]`` as shift * diag(1,T) * shift^-1.

    Requires ``T - I`` invertible (smallest singular value above ``sv_tol``);
    the shift vector is ``(I - T)^-1 kappa``.
    """
    size = b.kappa.size
    m = np.eye(size) - b.T
    smallest = np.linalg.svd(m, compute_uv=False)[-1]
    if smallest <= sv_tol:
        raise SingularShiftError(
            f"T - I has smallest singular value {smallest:.3e}; shift undefined"
        )
    shift = np.linalg.solve(m, b.kappa)
    eye = np.eye(size)
    conj = bloch_to_super(BlochForm(shift, eye)).matrix
    conj_inv = bloch_to_super(BlochForm(-shift, eye)).matrix
    return NonUnitalDecomposition(
        shift=shift,
        unital_core=BlochForm(np.zeros(size), b.T),
        conjugator=conj,
        conjugator_inv=conj_inv,
    )


def nonunital_evolve(b: BlochForm, t: float, diag_tol: float = 1e-12) -> BlochForm:
    """Closed-form evolution of a diagonal affine qubit form.

    For ``T = diag(lam)`` with all ``lam_i`` strictly inside (0, 1), the
    channel at time ``t`` has ``T' = diag(lam**t)`` and translation
    ``kappa_i * (1 - lam_i**t) / (1 - lam_i)``.
    """
    if t < 0:
        raise DomainError(f"time must be non-negative, got {t}")
    off = b.T - np.diag(np.diagonal(b.T))
    if np.max(np.abs(off)) > diag_tol:
        raise DomainError("closed-form evolution needs a diagonal distortion matrix")
    lam = np.diagonal(b.T)
    if np.any(lam <= 0) or np.any(lam >= 1):
        raise DomainError(f"diagonal entries must lie strictly in (0, 1), got {lam}")
    lt = lam**t
    return BlochForm(b.kappa * (1 - lt) / (1 - lam), np.diag(lt))


def nonunital_evolve_general(b: BlochForm, t: float, imag_tol: float = 1e-9) -> BlochForm:
    """Evolution for any dimension via the real matrix power of ``T``.

    ``T`` must be diagonalizable with spectrum off ``(-inf, 0]``; the
    translation evolves as ``(I - T^t)(I - T)^-1 kappa``.
    """
    if t < 0:
        raise DomainError(f"time must be non-negative, got {t}")
    size = b.kappa.size
    m = np.eye(size) - b.T
    smallest = np.linalg.svd(m, compute_uv=False)[-1]
    if smallest <= 1e-10:
        raise SingularShiftError("T - I numerically singular")
    tt = matrix_power_real(b.T, t)
    if np.max(np.abs(tt.imag)) > imag_tol:
        raise DomainError("matrix power left a complex residue; spectrum not admissible")
    tt = tt.real
    kappa_t = (np.eye(size) - tt) @ np.linalg.solve(m, b.kappa)
    return BlochForm(kappa_t, tt)


def kappa_bound_check(b: BlochForm, tol: float = config.CLOSURE_TOL) -> tuple[bool, float]:
    """Necessary complete-positivity bound on the translation of a diagonal
    qubit form:

        |kappa|^2 <= 1 - l1^2 - l2^2 - l3^2 + 2 l1 l2 l3

    Returns (holds, slack).
    """
    lam = _diagonal_lambda(b)
    l1, l2, l3 = lam
    slack = 1 - l1**2 - l2**2 - l3**2 + 2 * l1 * l2 * l3 - float(b.kappa @ b.kappa)
    return bool(slack >= -tol), float(slack)


@dataclass(frozen=True)
class MaxLambdaReport:
    """Diagnostic: a completely positive channel with nonzero translation
    must have all distortion moduli strictly below one."""

    kappa_norm: float
    max_abs_lambda: float
    consistent_with_cp: bool


def max_lambda_check(
    b: BlochForm,
    kappa_tol: float = 1e-8,
    lam_tol: float = 1e-10,
) -> MaxLambdaReport:
    lam = _diagonal_lambda(b)
    kappa_norm = float(np.linalg.norm(b.kappa))
    max_abs = float(np.max(np.abs(lam)))
    flagged = kappa_norm > kappa_tol and max_abs >= 1 - lam_tol
    return MaxLambdaReport(
        kappa_norm=kappa_norm,
        max_abs_lambda=max_abs,
        consistent_with_cp=not flagged,
    )


def _diagonal_lambda(b: BlochForm) -> np.ndarray:
    if b.dim != 2:
        raise DomainError("check is defined for qubit forms")
    off = b.T - np.diag(np.diagonal(b.T))
    if np.max(np.abs(off)) > 1e-12:
        raise DomainError("check needs a diagonal distortion matrix")
    return np.diagonal(b.T)


# ---------------------------------------------------------------------------
# axis decoherence factors


@dataclass(frozen=True)
class SemigroupTimes:
    """Durations of the z, x and y decoherence factors."""

    s: float
    t: float
    u: float


def axis_jump_generator(axis: str, rate: float = 1.0) -> LindbladGenerator:
    """Decoherence generator with the single jump ``sqrt(rate) * sigma_axis``."""
    sigma = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}.get(axis)
    if sigma is None:
        raise ValueError(f"axis must be one of x, y, z, got {axis!r}")
    return lindblad_from_jumps([np.sqrt(rate) * sigma])


def decompose_times(lam, interior_tol: float = 0.0) -> SemigroupTimes:
    """Times (s, t, u) with ``Lambda_s^z Lambda_t^x Lambda_u^y`` equal to the
    Pauli channel of distortion ``lam``.

        s = (1/4) log(l3 / (l1 l2))
        t = (1/4) log(l1 / (l2 l3))
        u = (1/4) log(l2 / (l1 l3))

    Only defined strictly inside the semigroup set (all product margins above
    ``interior_tol``); on the boundary one factor time degenerates to zero and
    :class:`NotInteriorOfSError` is raised.
    """
    lam = as_distortion(lam)
    if np.any(lam <= 0):
        raise DomainError(f"distortion components must be positive, got {lam}")
    margins = eq_margins(lam)
    if np.any(margins <= interior_tol):
        raise NotInteriorOfSError(
            f"product margins {margins} not strictly positive; boundary or exterior point"
        )
    l1, l2, l3 = lam
    return SemigroupTimes(
        s=0.25 * np.log(l3 / (l1 * l2)),
        t=0.25 * np.log(l1 / (l2 * l3)),
        u=0.25 * np.log(l2 / (l1 * l3)),
    )


def three_factor_super(times: SemigroupTimes) -> Superoperator:
    """Product of the z, x and y decoherence factors at the given times."""
    m = (
        evolve(axis_jump_generator("z"), times.s).matrix
        @ evolve(axis_jump_generator("x"), times.t).matrix
        @ evolve(axis_jump_generator("y"), times.u).matrix
    )
    return Superoperator(m)


_TWO_FACTOR_LAMBDA = {
    # axis pair -> distortion triple; saturated identity noted per pair
    "zx": lambda s, t: np.array([np.exp(-2 * s), np.exp(-2 * (s + t)), np.exp(-2 * t)]),
    "zy": lambda s, t: np.array([np.exp(-2 * (s + t)), np.exp(-2 * s), np.exp(-2 * t)]),
    "yx": lambda s, t: np.array([np.exp(-2 * s), np.exp(-2 * t), np.exp(-2 * (s + t))]),
}


def two_factor_boundary(s: float, t: float, pair: str = "zx") -> np.ndarray:
    """Probability vector of a two-factor decoherence composition.

    The result always has a product structure: pair ``zx`` saturates
    ``p0*p2 = p1*p3``, pair ``zy`` saturates ``p0*p1 = p2*p3`` and pair
    ``yx`` saturates ``p0*p3 = p1*p2``.  These maps sweep out the boundary
    of the semigroup set as (s, t) range over the non-negative quadrant.
    """
    if s < 0 or t < 0:
        raise DomainError(f"factor times must be non-negative, got ({s}, {t})")
    try:
        lam = _TWO_FACTOR_LAMBDA[pair](s, t)
    except KeyError:
        raise DomainError(f"pair must be one of zx, zy, yx, got {pair!r}") from None
    return p_from_lambda(lam)
