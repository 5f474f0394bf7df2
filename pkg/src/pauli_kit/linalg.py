"""Dense complex linear algebra primitives.

Conventions used throughout the package:

* matrices are square ``numpy.ndarray`` of ``complex128``;
* vectorization is row-major, ``vec(rho)[m*N + n] = rho[m, n]``, so that
  ``vec(A @ X @ B) == kron(A, B.T) @ vec(X)`` and a channel with Kraus
  operators ``K_j`` has superoperator ``sum_j kron(K_j, conj(K_j))``;
* matrix functions (log, exp, real power) go through an eigendecomposition
  with a conditioning gate rather than Pade or scaling-and-squaring: every
  matrix in scope is small (order <= 16) and diagonalizable, and refusing
  defective inputs is preferred over silently returning garbage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import config
from .errors import EigenSolverError, LogUndefinedError, NotDiagonalizableError


def as_square_matrix(x, name: str = "matrix") -> np.ndarray:
    """Coerce to a finite square complex array."""
    a = np.asarray(x, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains NaN or infinite entries")
    return a


def dagger(a: np.ndarray) -> np.ndarray:
    return np.asarray(a).conj().T


def vec(rho) -> np.ndarray:
    """Row-major vectorization."""
    return np.asarray(rho, dtype=complex).reshape(-1)


def unvec(v) -> np.ndarray:
    """Inverse of :func:`vec`."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    n = math.isqrt(v.size)
    if n * n != v.size:
        raise ValueError(f"vector of length {v.size} is not a square matrix")
    return v.reshape(n, n)


def frobenius_distance(a, b) -> float:
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))


def kron(a, b) -> np.ndarray:
    """Kronecker product of two square matrices with input validation."""
    a = as_square_matrix(a, "left factor")
    b = as_square_matrix(b, "right factor")
    return np.kron(a, b)


def reshuffle(x) -> np.ndarray:
    """Swap the inner pair of the four indices of an N^2 x N^2 matrix.

    With row index ``(m, mu)`` and column index ``(n, nu)``, the output
    satisfies ``Y[m mu, n nu] = X[m n, mu nu]``.  The map is an involution
    and carries a channel superoperator onto its dynamical (Choi) matrix.
    """
    x = as_square_matrix(x)
    n = math.isqrt(x.shape[0])
    if n * n != x.shape[0]:
        raise ValueError(f"dimension {x.shape[0]} is not a perfect square")
    return x.reshape(n, n, n, n).transpose(0, 2, 1, 3).reshape(n * n, n * n)


def partial_trace_second(x, dims: tuple[int, int]) -> np.ndarray:
    """Trace out the second tensor factor: ``Y[i, j] = sum_k X[(i,k), (j,k)]``."""
    x = as_square_matrix(x)
    n, m = dims
    if n * m != x.shape[0]:
        raise ValueError(f"dims {dims} do not factor dimension {x.shape[0]}")
    return np.einsum("ikjk->ij", x.reshape(n, m, n, m))


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigendecomposition with a deterministic eigenvalue ordering."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None


def _eig_sort_key(z: complex):
    # moduli and real parts are quantized so that floating point noise does
    # not override the documented tie-breaking order
    return (-round(float(abs(z)), 10), -round(float(z.real), 10), -float(z.imag))


def _sorted_eig(x: np.ndarray):
    try:
        w, v = np.linalg.eig(x)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK rarely fails here
        raise EigenSolverError(str(exc)) from exc
    order = sorted(range(len(w)), key=lambda k: _eig_sort_key(w[k]))
    return w[order], v[:, order]


def eig(x) -> Spectrum:
    """Eigenvalues sorted by descending modulus, ties broken by descending
    real part, then descending imaginary part; eigenvectors as columns in
    the matching order."""
    w, v = _sorted_eig(as_square_matrix(x))
    return Spectrum(w, v)


def _orthonormalize_clusters(w: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Re-orthonormalize eigenvector columns inside (near-)degenerate runs.

    LAPACK's general eigensolver may return an almost-parallel basis for a
    degenerate eigenspace; any orthonormal basis of the same span is an
    equally valid set of eigenvectors and keeps matrix functions accurate.
    Only eigenvalues agreeing to ~1e-12 are clustered, so genuinely distinct
    eigenvalues are never mixed.
    """
    v = v.copy()
    start = 0
    for stop in range(1, len(w) + 1):
        if stop < len(w) and abs(w[stop] - w[start]) <= 1e-12 * max(1.0, abs(w[start])):
            continue
        if stop - start > 1:
            q, _ = np.linalg.qr(v[:, start:stop])
            v[:, start:stop] = q
        start = stop
    return v


def _diagonalize(x: np.ndarray, cond_bound: float):
    herm_defect = np.linalg.norm(x - x.conj().T)
    if herm_defect <= 1e-13 * (1.0 + np.linalg.norm(x)):
        w, v = np.linalg.eigh((x + x.conj().T) / 2)
        order = sorted(range(len(w)), key=lambda k: _eig_sort_key(complex(w[k])))
        w = w[order].astype(complex)
        v = v[:, order]
        return w, v, v.conj().T
    w, v = _sorted_eig(x)
    v = _orthonormalize_clusters(w, v)
    cond = np.linalg.cond(v)
    if not np.isfinite(cond) or cond > cond_bound:
        raise NotDiagonalizableError(
            f"eigenvector matrix condition number {cond:.3e} exceeds bound {cond_bound:.1e}"
        )
    vinv = np.linalg.inv(v)
    residual = np.linalg.norm((v * w) @ vinv - x)
    if residual > 1e-7 * max(1.0, np.linalg.norm(x)):
        raise NotDiagonalizableError(
            f"eigendecomposition residual {residual:.3e}; matrix is numerically defective"
        )
    return w, v, vinv


def _on_branch_cut(w: np.ndarray, tol: float) -> np.ndarray:
    return (w.real <= tol) & (np.abs(w.imag) <= tol)


def matrix_exp(x, cond_bound: float = config.EIG_COND_BOUND) -> np.ndarray:
    """Matrix exponential via eigendecomposition.

    Raises :class:`NotDiagonalizableError` for numerically defective input.
    """
    x = as_square_matrix(x)
    w, v, vinv = _diagonalize(x, cond_bound)
    return (v * np.exp(w)) @ vinv


def matrix_log(
    x,
    cond_bound: float = config.EIG_COND_BOUND,
    cut_tol: float = config.BRANCH_CUT_TOL,
) -> np.ndarray:
    """Principal matrix logarithm via eigendecomposition.

    The branch cut lies on ``(-inf, 0]``; any eigenvalue within ``cut_tol``
    of the cut triggers :class:`LogUndefinedError`.
    """
    x = as_square_matrix(x)
    w, v, vinv = _diagonalize(x, cond_bound)
    on_cut = _on_branch_cut(w, cut_tol)
    if np.any(on_cut):
        bad = w[on_cut]
        raise LogUndefinedError(
            f"eigenvalue(s) {bad} lie on the branch cut (-inf, 0]; no principal log"
        )
    return (v * np.log(w)) @ vinv


def matrix_power_real(
    x,
    t: float,
    cond_bound: float = config.EIG_COND_BOUND,
    cut_tol: float = config.BRANCH_CUT_TOL,
) -> np.ndarray:
    """Principal real matrix power ``x**t`` for ``t >= 0``.

    Equivalent to ``matrix_exp(t * matrix_log(x))`` and shares the domain of
    :func:`matrix_log`; ``t = 0`` returns the identity, ``t = 1`` the input.
    """
    if t < 0:
        raise ValueError(f"exponent must be non-negative, got {t}")
    x = as_square_matrix(x)
    w, v, vinv = _diagonalize(x, cond_bound)
    on_cut = _on_branch_cut(w, cut_tol)
    if np.any(on_cut):
        raise LogUndefinedError(
            f"eigenvalue(s) {w[on_cut]} lie on the branch cut (-inf, 0]; no principal power"
        )
    return (v * np.exp(t * np.log(w))) @ vinv
