"""Quantum channel representations and lossless conversions between them.

Four interchangeable forms are supported:

* :class:`KrausSet` - operators ``K_j`` with ``sum_j K_j^dag K_j = I``;
* :class:`Superoperator` - the ``N^2 x N^2`` matrix ``sum_j kron(K_j, conj(K_j))``
  acting on row-major vectorized density matrices;
* :class:`ChoiMatrix` - the reshuffled superoperator, normalized to trace N,
  positive exactly when the map is completely positive;
* :class:`BlochForm` - the real affine block form ``[[1, 0], [kappa, T]]`` in
  an orthonormal Hermitian basis whose first element is ``I/sqrt(N)``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from . import config
from .basis import PAULIS, hermitian_basis
from .errors import NotTracePreservingError, NotUnitalError
from .linalg import (
    Spectrum,
    as_square_matrix,
    dagger,
    eig,
    reshuffle,
    vec,
)


@dataclass(frozen=True, eq=False)
class KrausSet:
    """A channel as a tuple of Kraus operators of equal dimension."""

    operators: tuple[np.ndarray, ...]

    def __init__(self, operators):
        ops = tuple(as_square_matrix(k, "Kraus operator") for k in operators)
        if not ops:
            raise ValueError("Kraus set must be nonempty")
        if len({k.shape[0] for k in ops}) != 1:
            raise ValueError("Kraus operators must share one dimension")
        object.__setattr__(self, "operators", ops)

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]

    def tp_defect(self) -> float:
        """Frobenius distance of ``sum_j K_j^dag K_j`` from the identity."""
        s = sum(dagger(k) @ k for k in self.operators)
        return float(np.linalg.norm(s - np.eye(self.dim)))


def _square_root_dim(order: int, what: str) -> int:
    n = math.isqrt(order)
    if n * n != order:
        raise ValueError(f"{what} must have perfect-square order, got {order}")
    return n


@dataclass(frozen=True, eq=False)
class Superoperator:
    """Channel matrix acting on row-major vectorized states."""

    matrix: np.ndarray

    def __init__(self, matrix):
        m = as_square_matrix(matrix, "superoperator")
        _square_root_dim(m.shape[0], "superoperator")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return math.isqrt(self.matrix.shape[0])


@dataclass(frozen=True, eq=False)
class ChoiMatrix:
    """Dynamical matrix; Hermitian with trace N for a valid channel."""

    matrix: np.ndarray

    def __init__(self, matrix):
        m = as_square_matrix(matrix, "Choi matrix")
        _square_root_dim(m.shape[0], "Choi matrix")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return math.isqrt(self.matrix.shape[0])

    def hermiticity_defect(self) -> float:
        return float(np.linalg.norm(self.matrix - dagger(self.matrix)))


@dataclass(frozen=True, eq=False)
class BlochForm:
    """Affine form: translation ``kappa`` and distortion matrix ``T``."""

    kappa: np.ndarray
    T: np.ndarray

    def __init__(self, kappa, T):
        kappa = np.asarray(kappa, dtype=float).reshape(-1)
        T = np.asarray(T, dtype=float)
        if T.shape != (kappa.size, kappa.size):
            raise ValueError(f"T shape {T.shape} does not match kappa length {kappa.size}")
        n = math.isqrt(kappa.size + 1)
        if n * n != kappa.size + 1:
            raise ValueError(f"kappa length {kappa.size} is not N^2 - 1")
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(self, "T", T)

    @property
    def dim(self) -> int:
        return math.isqrt(self.kappa.size + 1)


ChannelRep = Union[KrausSet, Superoperator, ChoiMatrix, BlochForm]


class CPVerdict(NamedTuple):
    ok: bool
    min_choi_eigenvalue: float


# ---------------------------------------------------------------------------
# conversions


def kraus_to_super(k: KrausSet) -> Superoperator:
    """``sum_j kron(K_j, conj(K_j))``."""
    n = k.dim
    m = np.zeros((n * n, n * n), dtype=complex)
    for op in k.operators:
        m += np.kron(op, op.conj())
    return Superoperator(m)


def super_to_choi(s: Superoperator, herm_tol: float = config.HERMITICITY_TOL) -> ChoiMatrix:
    """Reshuffle the superoperator into the dynamical matrix.

    Warns (but does not fail) if the result is not Hermitian to ``herm_tol``,
    which signals that the input was not a Hermiticity-preserving map.
    """
    c = ChoiMatrix(reshuffle(s.matrix))
    defect = c.hermiticity_defect()
    if defect > herm_tol:
        warnings.warn(
            f"Choi matrix Hermiticity defect {defect:.3e}; input is not a valid channel",
            stacklevel=2,
        )
    return c


def choi_to_super(c: ChoiMatrix) -> Superoperator:
    return Superoperator(reshuffle(c.matrix))


def choi_to_kraus(c: ChoiMatrix, cutoff: float = 1e-12) -> KrausSet:
    """Kraus operators from the spectral decomposition of the Choi matrix.

    Eigenvalues below ``cutoff`` are dropped; the input must be (numerically)
    positive for the result to reproduce the channel.
    """
    h = (c.matrix + dagger(c.matrix)) / 2
    w, v = np.linalg.eigh(h)
    ops = [
        np.sqrt(wi) * v[:, i].reshape(c.dim, c.dim)
        for i, wi in enumerate(w)
        if wi > cutoff
    ]
    return KrausSet(ops)


def to_super(rep: ChannelRep) -> Superoperator:
    """Convert any representation to a superoperator."""
    if isinstance(rep, Superoperator):
        return rep
    if isinstance(rep, KrausSet):
        return kraus_to_super(rep)
    if isinstance(rep, ChoiMatrix):
        return choi_to_super(rep)
    if isinstance(rep, BlochForm):
        return bloch_to_super(rep)
    raise TypeError(f"not a channel representation: {type(rep).__name__}")


def to_choi(rep: ChannelRep) -> ChoiMatrix:
    if isinstance(rep, ChoiMatrix):
        return rep
    return super_to_choi(to_super(rep))


def _basis_frame(dim: int) -> np.ndarray:
    """Unitary whose columns are the vectorized Hermitian basis elements."""
    basis = hermitian_basis(dim)
    return np.stack([vec(b) for b in basis], axis=1)


def super_to_bloch(
    s: Superoperator,
    tol: float = config.FROBENIUS_TOL,
) -> BlochForm:
    """Express the channel in the Hermitian basis and split off ``(kappa, T)``.

    Raises :class:`NotTracePreservingError` if the first row is not
    ``(1, 0, ..., 0)`` to ``tol``; raises ``ValueError`` if the remaining
    block has imaginary residue above ``tol`` (the map does not preserve
    Hermiticity).  The residue is discarded after the check.
    """
    w = _basis_frame(s.dim)
    m = dagger(w) @ s.matrix @ w
    first = np.zeros(m.shape[0])
    first[0] = 1.0
    if np.linalg.norm(m[0] - first) > tol:
        raise NotTracePreservingError(
            f"first basis row is {np.round(m[0], 12)}, expected (1, 0, ..., 0)"
        )
    if np.max(np.abs(m.imag)) > tol:
        raise ValueError(
            f"affine block has imaginary residue {np.max(np.abs(m.imag)):.3e}; "
            "channel is not Hermiticity-preserving"
        )
    return BlochForm(m[1:, 0].real, m[1:, 1:].real)


def bloch_to_super(b: BlochForm) -> Superoperator:
    n2 = b.kappa.size + 1
    block = np.zeros((n2, n2), dtype=complex)
    block[0, 0] = 1.0
    block[1:, 0] = b.kappa
    block[1:, 1:] = b.T
    w = _basis_frame(b.dim)
    return Superoperator(w @ block @ dagger(w))


# ---------------------------------------------------------------------------
# diagnostics


def is_completely_positive(rep: ChannelRep, tol: float = config.FROBENIUS_TOL) -> CPVerdict:
    """Complete positivity via the minimum dynamical-matrix eigenvalue."""
    c = to_choi(rep)
    h = (c.matrix + dagger(c.matrix)) / 2
    min_eig = float(np.linalg.eigvalsh(h)[0])
    return CPVerdict(min_eig >= -tol, min_eig)


def trace_preservation_defect(s: Superoperator) -> float:
    """Norm of ``S^dag vec(I) - vec(I)``; zero exactly for TP maps."""
    vi = vec(np.eye(s.dim))
    return float(np.linalg.norm(dagger(s.matrix) @ vi - vi))


def is_trace_preserving(s: Superoperator, tol: float = config.FROBENIUS_TOL) -> bool:
    return trace_preservation_defect(s) <= tol


def unitality_defect(s: Superoperator) -> float:
    vi = vec(np.eye(s.dim))
    return float(np.linalg.norm(s.matrix @ vi - vi))


def is_unital(s: Superoperator, tol: float = config.FROBENIUS_TOL) -> bool:
    return unitality_defect(s) <= tol


@dataclass(frozen=True, eq=False)
class SpectrumReport:
    """Spectral sanity checks for a channel superoperator."""

    eigenvalues: np.ndarray
    leading_is_one: bool
    max_modulus: float
    within_unit_disk: bool
    conjugate_pairs_ok: bool
    det_is_real: bool
    trace_is_real: bool


def _conjugate_pairs_ok(w: np.ndarray, tol: float) -> bool:
    upper = sorted((z for z in w if z.imag > tol), key=lambda z: (z.real, z.imag))
    lower = sorted((z.conjugate() for z in w if z.imag < -tol), key=lambda z: (z.real, z.imag))
    if len(upper) != len(lower):
        return False
    return all(abs(a - b) <= 10 * tol for a, b in zip(upper, lower))


def spectrum_diagnostics(s: Superoperator, tol: float = 1e-9) -> SpectrumReport:
    w = eig(s.matrix).eigenvalues
    det = np.prod(w)
    tr = np.sum(w)
    max_mod = float(np.max(np.abs(w)))
    return SpectrumReport(
        eigenvalues=w,
        leading_is_one=bool(abs(w[0] - 1) <= tol),
        max_modulus=max_mod,
        within_unit_disk=bool(max_mod <= 1 + tol),
        conjugate_pairs_ok=_conjugate_pairs_ok(w, tol),
        det_is_real=bool(abs(det.imag) <= tol),
        trace_is_real=bool(abs(tr.imag) <= tol),
    )


# ---------------------------------------------------------------------------
# SU(2) <-> SO(3)


def rotation_from_su2(u: np.ndarray) -> np.ndarray:
    """Bloch rotation of the conjugation ``rho -> U rho U^dag``."""
    u = as_square_matrix(u, "SU(2) element")
    r = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            r[i, j] = 0.5 * np.trace(PAULIS[i + 1] @ u @ PAULIS[j + 1] @ dagger(u)).real
    return r


def su2_from_rotation(r: np.ndarray) -> np.ndarray:
    """Unitary of order two inducing the proper rotation ``r`` on Bloch vectors.

    The quaternion is extracted with Shepperd's method; the global sign is
    fixed by requiring ``Re U[0,0] >= 0``, with ``Im U[0,0] >= 0`` breaking
    the tie.  The induced channel is insensitive to this choice.
    """
    r = np.asarray(r, dtype=float)
    t = np.trace(r)
    if t > 0:
        s = math.sqrt(1.0 + t)
        w = 0.5 * s
        f = 0.5 / s
        x = (r[2, 1] - r[1, 2]) * f
        y = (r[0, 2] - r[2, 0]) * f
        z = (r[1, 0] - r[0, 1]) * f
    elif r[0, 0] >= r[1, 1] and r[0, 0] >= r[2, 2]:
        s = math.sqrt(1.0 + r[0, 0] - r[1, 1] - r[2, 2])
        x = 0.5 * s
        f = 0.5 / s
        w = (r[2, 1] - r[1, 2]) * f
        y = (r[0, 1] + r[1, 0]) * f
        z = (r[0, 2] + r[2, 0]) * f
    elif r[1, 1] >= r[2, 2]:
        s = math.sqrt(1.0 - r[0, 0] + r[1, 1] - r[2, 2])
        y = 0.5 * s
        f = 0.5 / s
        w = (r[0, 2] - r[2, 0]) * f
        x = (r[0, 1] + r[1, 0]) * f
        z = (r[1, 2] + r[2, 1]) * f
    else:
        s = math.sqrt(1.0 - r[0, 0] - r[1, 1] + r[2, 2])
        z = 0.5 * s
        f = 0.5 / s
        w = (r[1, 0] - r[0, 1]) * f
        x = (r[0, 2] + r[2, 0]) * f
        y = (r[1, 2] + r[2, 1]) * f
    u = np.array(
        [[w - 1j * z, -y - 1j * x], [y - 1j * x, w + 1j * z]], dtype=complex
    )
    tie = 1e-12
    if u[0, 0].real < -tie or (abs(u[0, 0].real) <= tie and u[0, 0].imag < -tie):
        u = -u
    return u


# ---------------------------------------------------------------------------
# canonical diagonal form


def canonical_diagonal_form(
    s: Superoperator,
    tol: float = config.FROBENIUS_TOL,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Diagonalize a unital qubit channel by a pair of unitary rotations.

    Returns ``(U, V, lam)`` such that ``kron(U, conj(U)) @ s @ kron(V, conj(V))``
    has Bloch form ``diag(lam)`` with real ``lam`` (negative entries allowed),
    and both induced Bloch rotations are proper (determinant +1).

    The route depends on the distortion matrix ``T``:

    * already diagonal: returned unchanged with ``U = V = I``;
    * symmetric: orthogonal eigendecomposition, a genuine similarity, so the
      superoperator spectrum ``{1} + lam`` is preserved exactly and ``lam``
      keeps the eigenvalue signs (ordered by descending modulus, ties broken
      by descending value);
    * general: singular value decomposition with determinant bookkeeping;
      when a raw factor is improper, its last column and the matching
      singular value flip sign, so ``lam`` may end with a negative entry.
    """
    if s.dim != 2:
        raise ValueError("canonical diagonal form is defined for qubit channels")
    b = super_to_bloch(s, tol=tol)
    if np.linalg.norm(b.kappa) > tol:
        raise NotUnitalError(f"translation vector has norm {np.linalg.norm(b.kappa):.3e}")
    t = b.T
    eye2 = np.eye(2, dtype=complex)
    off = t - np.diag(np.diagonal(t))
    if np.max(np.abs(off)) <= tol:
        return eye2, eye2, np.diagonal(t).copy()
    if np.linalg.norm(t - t.T) <= tol:
        lam, q = np.linalg.eigh((t + t.T) / 2)
        order = sorted(range(3), key=lambda k: (-abs(lam[k]), -lam[k]))
        lam = lam[order]
        q = q[:, order]
        if np.linalg.det(q) < 0:
            q = q.copy()
            q[:, 2] *= -1
        return su2_from_rotation(q.T), su2_from_rotation(q), lam
    a, sv, bh = np.linalg.svd(t)
    lam = sv.copy()
    a = a.copy()
    bmat = bh.T.copy()
    if np.linalg.det(a) < 0:
        a[:, 2] *= -1
        lam[2] *= -1
    if np.linalg.det(bmat) < 0:
        bmat[:, 2] *= -1
        lam[2] *= -1
    return su2_from_rotation(a.T), su2_from_rotation(bmat), lam


def conjugate_channel(s: Superoperator, u: np.ndarray, v: np.ndarray) -> Superoperator:
    """``kron(U, conj(U)) @ s @ kron(V, conj(V))``."""
    return Superoperator(np.kron(u, u.conj()) @ s.matrix @ np.kron(v, v.conj()))


__all__ = [
    "KrausSet",
    "Superoperator",
    "ChoiMatrix",
    "BlochForm",
    "ChannelRep",
    "CPVerdict",
    "Spectrum",
    "SpectrumReport",
    "kraus_to_super",
    "super_to_choi",
    "choi_to_super",
    "choi_to_kraus",
    "to_super",
    "to_choi",
    "super_to_bloch",
    "bloch_to_super",
    "is_completely_positive",
    "is_trace_preserving",
    "trace_preservation_defect",
    "is_unital",
    "unitality_defect",
    "spectrum_diagnostics",
    "rotation_from_su2",
    "su2_from_rotation",
    "canonical_diagonal_form",
    "conjugate_channel",
]
