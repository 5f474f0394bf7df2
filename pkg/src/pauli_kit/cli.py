"""Command line front-end.

Subcommands: ``analyze``, ``evolve``, ``decompose``, ``geometry``, ``check``.
Channels travel as JSON documents (see :mod:`pauli_kit.serialize`); reports
are machine-readable JSON on stdout unless ``--human`` or ``--out`` is given.

Exit codes: 0 ok, 2 unparseable input, 3 numerically invalid channel,
4 principal log undefined, 5 decomposition infeasible, 6 output IO failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import config
from .channel import (
    canonical_diagonal_form,
    is_completely_positive,
    spectrum_diagnostics,
    super_to_bloch,
    trace_preservation_defect,
    unitality_defect,
)
from .checks import run_checks
from .errors import (
    DomainError,
    FormatError,
    InvalidChannelError,
    LogUndefinedError,
    NotDiagonalizableError,
    NotInteriorOfSError,
    NotTracePreservingError,
    NotUnistochasticRealizableError,
    NotUnitalError,
    PauliKitError,
)
from .geometry import cross_section_grid, export_grid, tetrahedron_grid
from .linalg import frobenius_distance, matrix_power_real
from .pauli import (
    distortion_from_super,
    lambda_from_p,
    semigroup_condition,
    superoperator_from_lambda,
)
from .semigroup import (
    decompose_times,
    kappa_bound_check,
    nonunital_evolve,
    pauli_lambda_t,
    three_factor_super,
)
from .serialize import (
    LoadedChannel,
    dump_channel,
    encode_real_vector,
    load_channel,
    loaded_to_super,
    round15,
)
from .unistochastic import angles_from_lambda, cartan_superoperator

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_LOG_UNDEFINED = 4
EXIT_INFEASIBLE = 5
EXIT_IO = 6


def _default_tol() -> float:
    return float(os.environ.get("PAULI_KIT_TOL", config.FROBENIUS_TOL))


def _parse_time_grid(spec: str) -> list[float]:
    """``"0.5"``, ``"0.25,0.5,2"`` or ``"start:stop:step"`` (inclusive)."""
    spec = spec.strip()
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError(f"range must be start:stop:step, got {spec!r}")
        start, stop, step = (float(x) for x in parts)
        if step <= 0 or stop < start:
            raise ValueError(f"bad range {spec!r}")
        n = int(round((stop - start) / step))
        ts = [start + k * step for k in range(n + 1) if start + k * step <= stop + 1e-12]
    else:
        ts = [float(x) for x in spec.split(",") if x.strip()]
    if not ts or any(t < 0 for t in ts):
        raise ValueError(f"time grid must be non-negative and nonempty, got {spec!r}")
    return ts


def _round_floats(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, (float, np.floating)):
        return round15(float(obj))
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_round_floats(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _read_json(args):
    if args.inline is not None:
        text = args.inline
    else:
        try:
            with open(args.input) as fh:
                text = fh.read()
        except OSError as exc:
            raise FormatError(f"cannot read input: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON: {exc}") from exc


def _load_single(args) -> LoadedChannel:
    return load_channel(_read_json(args))


def _load_many(args) -> list[LoadedChannel]:
    obj = _read_json(args)
    if isinstance(obj, dict) and "repr" in obj:
        return [load_channel(obj)]
    if isinstance(obj, dict) and "results" in obj:
        try:
            return [load_channel(rec["channel"]) for rec in obj["results"]]
        except (TypeError, KeyError) as exc:
            raise FormatError(f"malformed evolution document: {exc}") from exc
    if isinstance(obj, list):
        return [load_channel(o) for o in obj]
    raise FormatError("document is neither a channel, a list, nor an evolution result")


def _emit(doc, args) -> int:
    doc = _round_floats(doc)
    if getattr(args, "human", False):
        text = _human_lines(doc)
    else:
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"cannot write output: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _human_lines(doc, prefix="") -> str:
    lines = []

    def walk(node, path):
        if isinstance(node, dict):
            for k in sorted(node):
                walk(node[k], f"{path}.{k}" if path else k)
        elif isinstance(node, list) and node and isinstance(node[0], (dict, list)):
            for i, item in enumerate(node):
                walk(item, f"{path}[{i}]")
        else:
            lines.append(f"{path}: {node}")

    walk(doc, prefix)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# analyze


def _distortion_of(loaded: LoadedChannel, sup, bloch, tol: float):
    if loaded.kind == "lambda":
        return np.asarray(loaded.data, dtype=float)
    if loaded.kind == "pauli":
        return lambda_from_p(loaded.data)
    if loaded.kind == "cartan":
        return distortion_from_super(cartan_superoperator(loaded.data))
    if loaded.dim != 2 or bloch is None:
        return None
    t = bloch.T
    off = t - np.diag(np.diagonal(t))
    if np.max(np.abs(off)) <= tol:
        return np.diagonal(t).copy()
    if np.linalg.norm(bloch.kappa) <= tol:
        try:
            _, _, lam = canonical_diagonal_form(sup, tol=tol)
        except (NotUnitalError, NotTracePreservingError):
            return None
        return lam
    return None


def _analysis_report(loaded: LoadedChannel, tol: float) -> dict:
    sup = loaded_to_super(loaded)
    spec = spectrum_diagnostics(sup)
    cp = is_completely_positive(sup, tol)
    tp_defect = trace_preservation_defect(sup)
    un_defect = unitality_defect(sup)
    report = {
        "dim": loaded.dim,
        "repr": loaded.kind,
        "trace_preserving": {"ok": tp_defect <= tol, "defect": tp_defect},
        "unital": {"ok": un_defect <= tol, "defect": un_defect},
        "spectrum": [[z.real, z.imag] for z in spec.eigenvalues],
        "spectral_checks": {
            "leading_is_one": spec.leading_is_one,
            "max_modulus": spec.max_modulus,
            "within_unit_disk": spec.within_unit_disk,
            "conjugate_pairs_ok": spec.conjugate_pairs_ok,
            "det_is_real": spec.det_is_real,
            "trace_is_real": spec.trace_is_real,
        },
        "cp": {"ok": cp.ok, "min_choi_eigenvalue": cp.min_choi_eigenvalue},
    }
    try:
        bloch = super_to_bloch(sup, tol=max(tol, 1e-8))
    except (NotTracePreservingError, ValueError):
        bloch = None
    if bloch is not None:
        report["bloch"] = {
            "kappa": list(bloch.kappa),
            "T": [list(row) for row in bloch.T],
        }
        lam = _distortion_of(loaded, sup, bloch, tol)
        if lam is not None:
            verdict = semigroup_condition(lam)
            report["lambda"] = list(lam)
            report["semigroup"] = {
                "in_s": verdict.in_s,
                "cp": verdict.cp,
                "log_exists": verdict.log_exists,
                "margins": list(verdict.margins),
                "violated_conditions": list(verdict.violated_conditions),
            }
        off = bloch.T - np.diag(np.diagonal(bloch.T))
        if loaded.dim == 2 and np.max(np.abs(off)) <= tol:
            ok, slack = kappa_bound_check(bloch)
            report["kappa_bound"] = {"ok": ok, "slack": slack}
    return report


def cmd_analyze(args) -> int:
    loaded = _load_many(args)
    reports = [_analysis_report(lc, args.tol) for lc in loaded]
    return _emit(reports[0] if len(reports) == 1 else reports, args)


# ---------------------------------------------------------------------------
# evolve


def _evolved_documents(loaded: LoadedChannel, times, tol: float):
    """Yield (t, channel_doc, superoperator) along the trajectory."""
    if loaded.kind in ("pauli", "lambda"):
        lam = (
            lambda_from_p(loaded.data)
            if loaded.kind == "pauli"
            else np.asarray(loaded.data, dtype=float)
        )
        if np.any(lam < 0):
            raise LogUndefinedError(
                f"distortion spectrum {lam} has negative components on the log branch cut"
            )
        for t in times:
            sup = pauli_lambda_t(lam, t)
            doc = {"dim": 2, "repr": "lambda", "data": encode_real_vector(lam**t)}
            yield t, doc, sup
        return
    if loaded.kind == "bloch":
        b = loaded.data
        diag = np.diagonal(b.T)
        off = b.T - np.diag(diag)
        if np.max(np.abs(off)) <= 1e-12 and np.all(diag > 0) and np.all(diag < 1):
            from .channel import bloch_to_super

            for t in times:
                bt = nonunital_evolve(b, t)
                doc = {
                    "dim": b.dim,
                    "repr": "bloch",
                    "data": {
                        "kappa": encode_real_vector(bt.kappa),
                        "T": [encode_real_vector(row) for row in bt.T],
                    },
                }
                yield t, doc, bloch_to_super(bt)
            return
    from .serialize import encode_complex_matrix

    sup = loaded_to_super(loaded)
    for t in times:
        m = matrix_power_real(sup.matrix, t)
        doc = {"dim": loaded.dim, "repr": "superoperator", "data": encode_complex_matrix(m)}
        from .channel import Superoperator

        yield t, doc, Superoperator(m)


def cmd_evolve(args) -> int:
    loaded = _load_single(args)
    results = []
    first_failure = None
    for t, doc, sup in _evolved_documents(loaded, args.t, args.tol):
        verdict = is_completely_positive(sup, args.tol)
        results.append(
            {
                "t": t,
                "cp": verdict.ok,
                "min_choi_eigenvalue": verdict.min_choi_eigenvalue,
                "channel": doc,
            }
        )
        if not verdict.ok and (first_failure is None or t < first_failure):
            first_failure = t
    out = {
        "seed": dump_channel(loaded),
        "results": results,
        "first_cp_failure": first_failure,
    }
    return _emit(out, args)


# ---------------------------------------------------------------------------
# decompose


def _decomposable_lambda(loaded: LoadedChannel, tol: float) -> np.ndarray:
    sup = loaded_to_super(loaded)
    bloch = super_to_bloch(sup, tol=max(tol, 1e-8))
    lam = _distortion_of(loaded, sup, bloch, tol)
    if lam is None:
        raise NotInteriorOfSError(
            "channel is not reducible to a distortion triple (non-unital, non-diagonal)"
        )
    return np.asarray(lam, dtype=float)


def cmd_decompose(args) -> int:
    loaded = _load_single(args)
    lam = _decomposable_lambda(loaded, args.tol)
    target = superoperator_from_lambda(lam)
    if args.mode == "times":
        times = decompose_times(lam)
        residual = frobenius_distance(three_factor_super(times).matrix, target.matrix)
        out = {
            "repr": "times",
            "data": {"s": times.s, "t": times.t, "u": times.u},
            "lambda": list(lam),
            "residual": residual,
        }
    else:
        alpha = angles_from_lambda(lam, tol=args.tol)
        residual = frobenius_distance(cartan_superoperator(alpha).matrix, target.matrix)
        out = {
            "repr": "cartan",
            "data": list(alpha),
            "lambda": list(lam),
            "residual": residual,
        }
    return _emit(out, args)


# ---------------------------------------------------------------------------
# geometry / check


def cmd_geometry(args) -> int:
    if args.section == "fig1":
        samples = cross_section_grid(resolution=args.resolution, tol=args.tol)
    else:
        samples = tetrahedron_grid(args.resolution, tol=args.tol)
    try:
        export_grid(samples, args.format, args.out)
    except OSError as exc:
        print(f"cannot write grid: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_check(args) -> int:
    ok, lines, first = run_checks(args.suite, args.seed, args.debug_corrupt_tolerance)
    for line in lines:
        print(line)
    if not ok:
        print(f"first failing invariant: {first}", file=sys.stderr)
        return 1
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_io_arguments(sub, with_tol=True):
    sub.add_argument("input", nargs="?", help="path to a channel JSON document")
    sub.add_argument("--inline", help="channel JSON given directly on the command line")
    sub.add_argument("--out", help="write the report to this path instead of stdout")
    sub.add_argument("--human", action="store_true", help="flat key: value text output")
    if with_tol:
        sub.add_argument(
            "--tol",
            type=float,
            default=_default_tol(),
            help="numerical tolerance (default %(default)g, or PAULI_KIT_TOL)",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pauli-kit",
        description="Analyze channels, embed them in semigroups, and export "
        "the Pauli-channel geometry.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="diagnostics for a channel document")
    _add_io_arguments(p_an)
    p_an.set_defaults(fn=cmd_analyze)

    p_ev = sub.add_parser("evolve", help="evolve a semigroup seed over a time grid")
    _add_io_arguments(p_ev)
    p_ev.add_argument(
        "--t",
        type=_parse_time_grid,
        required=True,
        help='times: "1", "0.25,0.5,2" or "start:stop:step"',
    )
    p_ev.set_defaults(fn=cmd_evolve)

    p_de = sub.add_parser("decompose", help="factor a channel into certified pieces")
    _add_io_arguments(p_de)
    p_de.add_argument(
        "--mode",
        choices=("times", "cartan"),
        default="times",
        help="times: three axis decoherence factors; cartan: interaction angles",
    )
    p_de.set_defaults(fn=cmd_decompose)

    p_ge = sub.add_parser("geometry", help="classified grid over a section or the simplex")
    p_ge.add_argument("--section", choices=("fig1", "tetrahedron"), default="fig1")
    p_ge.add_argument("--resolution", type=int, default=100)
    p_ge.add_argument("--format", choices=("csv", "json"), default="csv")
    p_ge.add_argument("--out", required=True, help="output file path")
    p_ge.add_argument("--tol", type=float, default=float(os.environ.get("PAULI_KIT_TOL", config.BOUNDARY_TOL)))
    p_ge.set_defaults(fn=cmd_geometry)

    p_ch = sub.add_parser("check", help="run the built-in invariant suites")
    p_ch.add_argument("--suite", choices=("quick", "full"), default="quick")
    p_ch.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    p_ch.add_argument("--debug-corrupt-tolerance", action="store_true", help=argparse.SUPPRESS)
    p_ch.set_defaults(fn=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "input", None) is not None and getattr(args, "inline", None) is not None:
        parser.error("give either an input path or --inline, not both")
    if hasattr(args, "inline") and args.input is None and args.inline is None:
        parser.error("an input path or --inline is required")
    try:
        return args.fn(args)
    except FormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InvalidChannelError,) as exc:
        print(f"invalid channel: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (LogUndefinedError, NotDiagonalizableError) as exc:
        print(f"no principal generator: {exc}", file=sys.stderr)
        return EXIT_LOG_UNDEFINED
    except (NotInteriorOfSError, NotUnistochasticRealizableError) as exc:
        print(f"decomposition infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except DomainError as exc:
        if args.command == "evolve":
            print(f"no principal generator: {exc}", file=sys.stderr)
            return EXIT_LOG_UNDEFINED
        if args.command == "decompose":
            print(f"decomposition infeasible: {exc}", file=sys.stderr)
            return EXIT_INFEASIBLE
        print(f"invalid channel: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except PauliKitError as exc:
        print(f"invalid channel: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
