"""Command-line front end.

Subcommands: pencil, roof, graph-table, oracle, check-positive, lift.  All
inputs are JSON files (schemas in jsonio); the payload goes to stdout as
JSON with fixed float formatting, diagnostics to stderr.  Exit codes:
0 success, 1 computation failure, 2 bad input.  LROOF_TOL overrides the
default tolerance 1e-9.
"""

import argparse
import os
import sys

from . import graphs, jsonio, maps, oracle, pencil, roof
from .errors import (
    HypothesisViolatedError,
    InvalidInputError,
    LroofError,
    NumericalFailureError,
)
from .roof import RoofKind

EXIT_OK = 0
EXIT_COMPUTATION = 1
EXIT_INPUT = 2


def _default_tol():
    raw = os.environ.get("LROOF_TOL", "")
    if not raw.strip():
        return 1e-9
    try:
        tol = float(raw)
    except ValueError as exc:
        raise InvalidInputError(f"LROOF_TOL is not a number: {raw!r}") from exc
    if tol < 0:
        raise InvalidInputError("LROOF_TOL must be >= 0")
    return tol


def _load_map(path):
    obj = jsonio.load_file(path)
    if isinstance(obj, dict) and "ops" in obj:
        return jsonio.kraus_from_json(obj)
    if isinstance(obj, dict) and "matrix" in obj:
        return jsonio.lorentz_map_from_json(obj)
    raise InvalidInputError(f"{path}: not a lorentz-map or kraus-map object")


def _load_input(path):
    obj = jsonio.load_file(path)
    if isinstance(obj, dict) and "x" in obj:
        return jsonio.vector_from_json(obj)
    if isinstance(obj, dict) and "re" in obj:
        return jsonio.hermitian_from_json(obj)
    raise InvalidInputError(f"{path}: not a vector or hermitian-matrix object")


def _cmd_pencil(args, tol):
    pen = jsonio.pencil_from_json(jsonio.load_file(args.file))
    spec = pencil.generalized_eigenvalues(pen)
    interval = pencil.psd_interval(pen, tol)
    return {
        "eigenvalues": list(spec.eigenvalues),
        "eigenvectors": [list(spec.eigenvectors[:, k]) for k in range(pen.m)],
        "psd_interval": [interval.lambda2, interval.lambda1],
        "psd_certified": interval.certified,
        "max_imag_residual": spec.max_imag_residual,
    }


def _roof_kind(name):
    return RoofKind.CONCURRENCE if name == "concurrence" else RoofKind.FIDELITY


def _cmd_roof(args, tol):
    m = _load_map(args.map_file)
    x = _load_input(args.input_file)
    kind = _roof_kind(args.kind)
    if isinstance(m, maps.LorentzMap):
        if not hasattr(x, "x"):
            raise InvalidInputError("a lorentz map needs a vector input")
        result = roof.roof_lorentz(m, x, kind, want_decomposition=args.decompose, tol=tol)
    else:
        if hasattr(x, "x"):
            raise InvalidInputError("a kraus map needs a hermitian-matrix input")
        result = roof.roof_rank2(
            maps.from_kraus(m), x, kind, want_decomposition=args.decompose, tol=tol
        )
    return jsonio.roof_result_to_json(result)


def _cmd_graph_table(args, tol):
    table = graphs.table_multiset(args.rows, args.cols)
    if not table:
        raise InvalidInputError(
            f"no rank-2 graphs on a {args.rows}x{args.cols} grid (need >= 3 vertices)"
        )
    rows = sorted(
        table.items(), key=lambda kv: tuple(-v for v in kv[0][:4]) + kv[0][4:]
    )
    if args.format == "json":
        lines = []
        for tup, count in rows:
            lines.append(
                jsonio.dumps(
                    {
                        "eigenvalues": list(tup[:4]),
                        "q1": tup[4],
                        "q2": tup[5],
                        "concurrence": tup[6],
                        "fidelity": tup[7],
                        "count": count,
                    }
                )
            )
        return "\n".join(lines)
    header = ["lambda1", "lambda2", "lambda3", "lambda4", "Q1", "Q2", "C", "F", "count"]
    width = 15
    out = ["".join(h.rjust(width) for h in header)]
    for tup, count in rows:
        cells = [format(v, ".9g").rjust(width) for v in tup] + [str(count).rjust(width)]
        out.append("".join(cells))
    return "\n".join(out)


def _cmd_oracle(args, tol):
    if args.samples < 1:
        raise InvalidInputError("--samples must be >= 1")
    m = _load_map(args.map_file)
    x = _load_input(args.input_file)
    if isinstance(m, maps.LorentzMap):
        if not hasattr(x, "x"):
            raise InvalidInputError("a lorentz map needs a vector input")
        pen = maps.lorentz_pencil(m)
        est = oracle.two_point_search(pen.P, pen.J, x.x, samples=args.samples, seed=args.seed)
    else:
        if hasattr(x, "x"):
            raise InvalidInputError("a kraus map needs a hermitian-matrix input")
        est = oracle.pure_state_search(
            maps.from_kraus(m), x, k=args.k, samples=args.samples, seed=args.seed, tol=tol
        )
    return {
        "min": est.lower_kind_value,
        "max": est.upper_kind_value,
        "samples": est.samples,
        "seed": args.seed,
    }


def _cmd_check_positive(args, tol):
    m = _load_map(args.map_file)
    if not isinstance(m, maps.LorentzMap):
        raise InvalidInputError("check-positive expects a lorentz-map file")
    res = maps.is_lorentz_positive(m, tol)
    return {
        "positive": res.positive,
        "certificate": res.certificate,
        "witness": jsonio.vector_to_json(res.witness) if res.witness is not None else None,
        "stage": res.stage,
    }


def _cmd_lift(args, tol):
    m = _load_map(args.map_file)
    if isinstance(m, maps.LorentzMap):
        raise InvalidInputError("lift expects a kraus-map file")
    return jsonio.lorentz_map_to_json(maps.lift_to_lorentz(maps.from_kraus(m)))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lroof",
        description="Concurrence and I-fidelity of cone-positive maps via pencil eigenvalues",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pencil", help="generalized eigenvalues of a symmetric pencil")
    p.add_argument("file", help="JSON file with fields m, P, J")
    p.set_defaults(func=_cmd_pencil)

    p = sub.add_parser("roof", help="concurrence or I-fidelity of a map at an input")
    p.add_argument("map_file")
    p.add_argument("input_file")
    p.add_argument("--kind", choices=["concurrence", "fidelity"], default="concurrence")
    p.add_argument("--decompose", action="store_true", help="return an optimal decomposition")
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=_cmd_roof)

    p = sub.add_parser("graph-table", help="roof table over all rank-2 grid graphs")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.set_defaults(func=_cmd_graph_table, raw=True)

    p = sub.add_parser("oracle", help="Monte-Carlo roof estimates over decompositions")
    p.add_argument("map_file")
    p.add_argument("input_file")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, default=2, help="parts for the pure-state search")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("check-positive", help="certificate-based Lorentz positivity test")
    p.add_argument("map_file")
    p.set_defaults(func=_cmd_check_positive)

    p = sub.add_parser("lift", help="lifting of a completely positive map into cone coordinates")
    p.add_argument("map_file")
    p.set_defaults(func=_cmd_lift)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tol = _default_tol()
        if getattr(args, "tol", None) is not None:
            if args.tol < 0:
                raise InvalidInputError("--tol must be >= 0")
            tol = args.tol
        payload = args.func(args, tol)
    except (HypothesisViolatedError, NumericalFailureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION
    except LroofError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if getattr(args, "raw", False):
        print(payload)
    else:
        print(jsonio.dumps(payload))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
