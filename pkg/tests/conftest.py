"""Shared helpers for the test suite."""

import numpy as np

from pauli_kit.channel import KrausSet


def random_kraus_set(rng, dim=2, n_ops=3):
    """Random trace-preserving Kraus set from Ginibre operators."""
    ops = [
        rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        for _ in range(n_ops)
    ]
    gram = sum(op.conj().T @ op for op in ops)
    w, v = np.linalg.eigh(gram)
    inv_sqrt = (v / np.sqrt(w)) @ v.conj().T
    return KrausSet([op @ inv_sqrt for op in ops])


def random_density(rng, dim=2):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho)
