"""Sampling and classification of the Pauli-channel tetrahedron.

Points of the probability simplex are labelled by their relation to the
semigroup set: strictly inside, on its boundary (some product margin within
tolerance of zero), completely positive but outside, or outside the simplex
altogether.  Cross-section and full-tetrahedron grids back the exported
classification data; the classical two-state bistochastic interval is the
commutative analogue of the same membership question.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import config
from .errors import DegenerateSectionError, DomainError, LogUndefinedError, NotOnBoundaryError
from .linalg import matrix_exp, matrix_log
from .pauli import as_prob_vector, prob_margins


class RegionLabel(Enum):
    OUTSIDE_TETRAHEDRON = "OUTSIDE_TETRAHEDRON"
    CP_ONLY = "CP_ONLY"
    SEMIGROUP_S = "SEMIGROUP_S"
    BOUNDARY_S = "BOUNDARY_S"


@dataclass(frozen=True)
class GridSample:
    """One classified lattice point of a section or of the full simplex."""

    bary: tuple[float, float, float]
    p: tuple[float, float, float, float]
    label: RegionLabel
    margins: tuple[float, float, float]


IDENTITY_P = (1.0, 0.0, 0.0, 0.0)
DEPOLARIZING_P = (0.25, 0.25, 0.25, 0.25)
Z_ROTATION_P = (0.0, 0.0, 0.0, 1.0)
FIG_SECTION_VERTICES = (IDENTITY_P, DEPOLARIZING_P, Z_ROTATION_P)


def classify(p, tol: float = config.BOUNDARY_TOL) -> RegionLabel:
    """Label a 4-vector by its position relative to the semigroup set."""
    p = np.asarray(p, dtype=float).reshape(-1)
    if p.size != 4 or not np.all(np.isfinite(p)):
        return RegionLabel.OUTSIDE_TETRAHEDRON
    if np.any(p < -tol) or abs(p.sum() - 1.0) > tol:
        return RegionLabel.OUTSIDE_TETRAHEDRON
    margins = prob_margins(p)
    if np.all(margins > tol):
        return RegionLabel.SEMIGROUP_S
    if np.min(margins) >= -tol:
        return RegionLabel.BOUNDARY_S
    return RegionLabel.CP_ONLY


def _sample(bary: tuple[float, float, float], p: np.ndarray, tol: float) -> GridSample:
    return GridSample(
        bary=bary,
        p=tuple(float(x) for x in p),
        label=classify(p, tol),
        margins=tuple(float(m) for m in prob_margins(p)),
    )


def cross_section_grid(
    vertex_a=IDENTITY_P,
    vertex_b=DEPOLARIZING_P,
    vertex_c=Z_ROTATION_P,
    resolution: int = 100,
    tol: float = config.BOUNDARY_TOL,
) -> list[GridSample]:
    """Barycentric lattice over a triangle of channels, classified pointwise.

    The lattice is ``{(i, j, k) >= 0 : i + j + k = resolution}`` iterated with
    ``i`` descending then ``j`` descending, which fixes the output order.
    The default triangle spans the identity, the completely depolarizing
    channel and the z rotation.
    """
    if resolution < 2:
        raise DomainError(f"resolution must be at least 2, got {resolution}")
    a = as_prob_vector(vertex_a)
    b = as_prob_vector(vertex_b)
    c = as_prob_vector(vertex_c)
    edges = np.stack([b - a, c - a])
    if np.linalg.svd(edges, compute_uv=False)[-1] < 1e-12:
        raise DegenerateSectionError("section vertices are collinear")
    out = []
    r = resolution
    for i in range(r, -1, -1):
        for j in range(r - i, -1, -1):
            k = r - i - j
            p = (i * a + j * b + k * c) / r
            out.append(_sample((i / r, j / r, k / r), p, tol))
    return out


def tetrahedron_grid(resolution: int, tol: float = config.BOUNDARY_TOL) -> list[GridSample]:
    """Lattice over the whole simplex; the fourth barycentric coordinate is
    implied by the first three."""
    if resolution < 2:
        raise DomainError(f"resolution must be at least 2, got {resolution}")
    out = []
    r = resolution
    for i in range(r, -1, -1):
        for j in range(r - i, -1, -1):
            for k in range(r - i - j, -1, -1):
                m = r - i - j - k
                p = np.array([i, j, k, m], dtype=float) / r
                out.append(_sample((i / r, j / r, k / r), p, tol))
    return out


def star_shape_witness(
    boundary_p,
    beta: float,
    gamma: float,
    tol: float = config.BOUNDARY_TOL,
) -> bool:
    """Check one star-shapedness witness segment.

    ``boundary_p`` must saturate one product identity (otherwise
    :class:`NotOnBoundaryError`); the tested point interpolates between it
    and the axis joining the identity channel to the completely depolarizing
    one.  Returns whether all product inequalities hold there.
    """
    p = as_prob_vector(boundary_p)
    if not (0 <= beta <= 1 and 0 <= gamma <= 1):
        raise DomainError(f"beta and gamma must lie in [0, 1], got ({beta}, {gamma})")
    margins = prob_margins(p)
    if np.min(np.abs(margins)) > tol:
        raise NotOnBoundaryError(f"margins {margins} saturate no product identity")
    axis_point = beta * np.array(IDENTITY_P) + (1 - beta) * np.array(DEPOLARIZING_P)
    r = gamma * axis_point + (1 - gamma) * p
    return bool(np.all(prob_margins(r) >= -tol))


def classical_semigroup_check(a: float, tol: float = 1e-12) -> bool:
    """Whether the symmetric two-state bistochastic matrix with flip rate
    ``a`` embeds in a continuous bistochastic evolution: true iff a <= 1/2."""
    if not 0 <= a <= 1:
        raise DomainError(f"flip probability must lie in [0, 1], got {a}")
    return bool(a <= 0.5 + tol)


def bistochastic_trajectory_within_polytope(
    a: float,
    t_grid=None,
    tol: float = 1e-9,
) -> bool:
    """Brute-force cross-check of :func:`classical_semigroup_check`.

    Follows ``exp(t log B_a)`` on a time grid and verifies every entry stays
    a probability.  At ``a = 1/2`` the second eigenvalue sits exactly at the
    log branch point; the trajectory limit is the flat matrix for ``t > 0``,
    which lies in the polytope, so that point is accepted analytically.
    """
    if not 0 <= a <= 1:
        raise DomainError(f"flip probability must lie in [0, 1], got {a}")
    mu = 1 - 2 * a
    if abs(mu) <= config.BRANCH_CUT_TOL:
        return True
    b = np.array([[1 - a, a], [a, 1 - a]])
    try:
        gen = matrix_log(b)
    except LogUndefinedError:
        return False
    if t_grid is None:
        t_grid = np.linspace(0.05, 10.0, 200)
    for t in t_grid:
        m = matrix_exp(t * gen)
        if np.max(np.abs(m.imag)) > tol:
            return False
        entries = m.real
        if np.any(entries < -tol) or np.any(entries > 1 + tol):
            return False
    return True


# ---------------------------------------------------------------------------
# export

_CSV_HEADER = "bary_a,bary_b,bary_c,p0,p1,p2,p3,label,margin1,margin2,margin3"


def _g15(x: float) -> str:
    return format(float(x), ".15g")


def export_grid(samples, fmt: str, path) -> None:
    """Write classified samples to ``path`` as CSV or JSON.

    CSV carries 15 significant digits and LF line endings; JSON keeps full
    float precision so that :func:`load_grid_json` reproduces the samples
    exactly.
    """
    samples = list(samples)
    if not samples:
        raise DomainError("nothing to export: empty sample list")
    if fmt == "csv":
        lines = [_CSV_HEADER]
        for s in samples:
            fields = (
                [_g15(x) for x in s.bary]
                + [_g15(x) for x in s.p]
                + [s.label.value]
                + [_g15(x) for x in s.margins]
            )
            lines.append(",".join(fields))
        payload = "\n".join(lines) + "\n"
        with open(path, "w", newline="") as fh:
            fh.write(payload)
    elif fmt == "json":
        doc = {
            "samples": [
                {
                    "bary": list(s.bary),
                    "p": list(s.p),
                    "label": s.label.value,
                    "margins": list(s.margins),
                }
                for s in samples
            ]
        }
        with open(path, "w", newline="") as fh:
            json.dump(doc, fh, indent=1, sort_keys=True)
            fh.write("\n")
    else:
        raise DomainError(f"format must be csv or json, got {fmt!r}")


def load_grid_json(path) -> list[GridSample]:
    with open(path) as fh:
        doc = json.load(fh)
    return [
        GridSample(
            bary=tuple(rec["bary"]),
            p=tuple(rec["p"]),
            label=RegionLabel(rec["label"]),
            margins=tuple(rec["margins"]),
        )
        for rec in doc["samples"]
    ]
