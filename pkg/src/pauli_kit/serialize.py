"""JSON interchange format for channels.

A channel document is ``{"dim": N, "repr": <kind>, "data": ...}`` where
``kind`` is one of ``kraus``, ``superoperator``, ``choi``, ``bloch``,
``pauli``, ``lambda``, ``unitary4`` or ``cartan``.  Complex entries are
``[re, im]`` pairs; ``pauli`` carries a probability 4-vector, ``lambda`` a
distortion 3-vector, ``bloch`` an object ``{"kappa": [...], "T": [[...]]}``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import config
from .channel import (
    BlochForm,
    ChoiMatrix,
    KrausSet,
    Superoperator,
    bloch_to_super,
    kraus_to_super,
)
from .errors import FormatError, InvalidChannelError, NotUnitaryError, DomainError
from .pauli import as_distortion, as_prob_vector, pauli_superoperator, superoperator_from_lambda
from .unistochastic import unistochastic_from_unitary

KINDS = ("kraus", "superoperator", "choi", "bloch", "pauli", "lambda", "unitary4", "cartan")


@dataclass(frozen=True, eq=False)
class LoadedChannel:
    dim: int
    kind: str
    data: object


def round15(x: float) -> float:
    """Round to 15 significant digits, the CLI serialization precision."""
    return float(format(float(x), ".15g"))


def encode_complex_matrix(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[round15(z.real), round15(z.imag)] for z in row] for row in m]


def decode_complex_matrix(rows) -> np.ndarray:
    try:
        arr = np.asarray(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"complex matrix entries must be [re, im] pairs: {exc}") from exc
    if arr.ndim != 3 or arr.shape[-1] != 2:
        raise FormatError(f"complex matrix must be rows of [re, im] pairs, got shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def encode_real_vector(v) -> list:
    return [round15(x) for x in np.asarray(v, dtype=float).reshape(-1)]


def encode_real_matrix(m) -> list:
    return [[round15(x) for x in row] for row in np.asarray(m, dtype=float)]


def _real_array(data, what: str) -> np.ndarray:
    try:
        return np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"{what} must be numeric: {exc}") from exc


def load_channel(obj) -> LoadedChannel:
    """Parse and validate a channel document.

    Structural problems raise :class:`FormatError`; documents that parse but
    do not describe a usable channel raise :class:`InvalidChannelError`.
    """
    if not isinstance(obj, dict):
        raise FormatError(f"channel document must be an object, got {type(obj).__name__}")
    try:
        kind = obj["repr"]
        data = obj["data"]
    except KeyError as exc:
        raise FormatError(f"channel document missing key {exc}") from exc
    if kind not in KINDS:
        raise FormatError(f"unknown repr {kind!r}; expected one of {KINDS}")
    dim = obj.get("dim", 2)
    if not isinstance(dim, int) or dim < 2:
        raise FormatError(f"dim must be an integer >= 2, got {dim!r}")

    if kind == "kraus":
        if not isinstance(data, list) or not data:
            raise FormatError("kraus data must be a nonempty list of matrices")
        ops = [decode_complex_matrix(mat) for mat in data]
        try:
            ks = KrausSet(ops)
        except ValueError as exc:
            raise FormatError(str(exc)) from exc
        if ks.dim != dim:
            raise FormatError(f"kraus operators of size {ks.dim} but dim={dim}")
        if ks.tp_defect() > 1e-6:
            raise InvalidChannelError(
                f"Kraus set is not trace preserving (defect {ks.tp_defect():.3e})"
            )
        return LoadedChannel(dim, kind, ks)

    if kind in ("superoperator", "choi"):
        m = decode_complex_matrix(data)
        if m.shape != (dim * dim, dim * dim):
            raise FormatError(f"{kind} matrix has shape {m.shape}, expected {(dim*dim, dim*dim)}")
        rep = Superoperator(m) if kind == "superoperator" else ChoiMatrix(m)
        return LoadedChannel(dim, kind, rep)

    if kind == "bloch":
        if not isinstance(data, dict) or "kappa" not in data or "T" not in data:
            raise FormatError('bloch data must be {"kappa": [...], "T": [[...]]}')
        kappa = _real_array(data["kappa"], "kappa")
        t = _real_array(data["T"], "T")
        try:
            b = BlochForm(kappa, t)
        except ValueError as exc:
            raise FormatError(str(exc)) from exc
        if b.dim != dim:
            raise FormatError(f"bloch form of dimension {b.dim} but dim={dim}")
        return LoadedChannel(dim, kind, b)

    if kind == "pauli":
        arr = _real_array(data, "probability vector")
        if arr.shape != (4,):
            raise FormatError(f"pauli data must be a 4-vector, got shape {arr.shape}")
        try:
            p = as_prob_vector(arr)
        except DomainError as exc:
            raise InvalidChannelError(str(exc)) from exc
        return LoadedChannel(2, kind, p)

    if kind == "lambda":
        arr = _real_array(data, "distortion vector")
        if arr.shape != (3,):
            raise FormatError(f"lambda data must be a 3-vector, got shape {arr.shape}")
        try:
            lam = as_distortion(arr)
        except DomainError as exc:
            raise InvalidChannelError(str(exc)) from exc
        return LoadedChannel(2, kind, lam)

    if kind == "unitary4":
        m = decode_complex_matrix(data)
        if m.shape != (4, 4):
            raise FormatError(f"unitary4 must be 4x4, got shape {m.shape}")
        try:
            unistochastic_from_unitary(m, tol=1e-8)
        except NotUnitaryError as exc:
            raise InvalidChannelError(str(exc)) from exc
        return LoadedChannel(2, kind, m)

    # cartan
    arr = _real_array(data, "angle vector")
    if arr.shape != (3,):
        raise FormatError(f"cartan data must be a 3-vector, got shape {arr.shape}")
    return LoadedChannel(2, kind, arr)


def loaded_to_super(loaded: LoadedChannel) -> Superoperator:
    from .unistochastic import cartan_superoperator

    kind, data = loaded.kind, loaded.data
    if kind == "kraus":
        return kraus_to_super(data)
    if kind == "superoperator":
        return data
    if kind == "choi":
        from .channel import choi_to_super

        return choi_to_super(data)
    if kind == "bloch":
        return bloch_to_super(data)
    if kind == "pauli":
        return pauli_superoperator(data)
    if kind == "lambda":
        return superoperator_from_lambda(data)
    if kind == "unitary4":
        return unistochastic_from_unitary(data, tol=1e-8)
    return cartan_superoperator(data)


def dump_channel(loaded: LoadedChannel) -> dict:
    kind, data = loaded.kind, loaded.data
    if kind == "kraus":
        payload = [encode_complex_matrix(k) for k in data.operators]
    elif kind in ("superoperator", "choi"):
        payload = encode_complex_matrix(data.matrix)
    elif kind == "bloch":
        payload = {"kappa": encode_real_vector(data.kappa), "T": encode_real_matrix(data.T)}
    elif kind == "unitary4":
        payload = encode_complex_matrix(data)
    else:  # pauli / lambda / cartan vectors
        payload = encode_real_vector(data)
    return {"dim": loaded.dim, "repr": kind, "data": payload}
