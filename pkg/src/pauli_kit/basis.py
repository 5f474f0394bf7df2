"""Pauli matrices and orthonormal Hermitian operator bases."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

PAULIS = (SIGMA_0, SIGMA_X, SIGMA_Y, SIGMA_Z)


@lru_cache(maxsize=None)
def hermitian_basis(dim: int) -> np.ndarray:
    """Orthonormal Hermitian basis ``B_0 .. B_{dim^2-1}`` of dim x dim matrices.

    ``B_0 = I/sqrt(dim)`` and ``tr(B_i B_j) = delta_ij``.  For ``dim == 2``
    the remaining elements are the Pauli matrices over sqrt(2), in the order
    x, y, z; for larger dimensions the generalized Gell-Mann construction is
    used (symmetric and antisymmetric pair elements first, then the diagonal
    ladder).
    """
    if dim < 2:
        raise ValueError("basis needs dim >= 2")
    mats = [np.eye(dim, dtype=complex) / np.sqrt(dim)]
    if dim == 2:
        mats += [SIGMA_X / np.sqrt(2), SIGMA_Y / np.sqrt(2), SIGMA_Z / np.sqrt(2)]
    else:
        for j in range(dim):
            for k in range(j + 1, dim):
                sym = np.zeros((dim, dim), dtype=complex)
                sym[j, k] = sym[k, j] = 1 / np.sqrt(2)
                asym = np.zeros((dim, dim), dtype=complex)
                asym[j, k] = -1j / np.sqrt(2)
                asym[k, j] = 1j / np.sqrt(2)
                mats += [sym, asym]
        for level in range(1, dim):
            diag = np.zeros(dim)
            diag[:level] = 1.0
            diag[level] = -level
            mats.append(np.diag(diag).astype(complex) / np.sqrt(level * (level + 1)))
    out = np.stack(mats)
    out.setflags(write=False)
    return out
