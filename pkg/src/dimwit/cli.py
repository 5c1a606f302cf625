"""Command-line entry point: ``dimwit <subcommand> ...``.

Exit status is 0 on success, 1 on validation or domain errors and 2 when a
size guard trips.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import io as dio
from .behaviour import dimension_lower_bound, svd_witness, witness_bound
from .classical import DEFAULT_CAP, classical_witness_max
from .errors import DimwitError, SizeError, ValidationError
from .linalg import inner_product
from .qrac import (
    RacParams,
    optimal_qrac_model,
    rac_bound,
    rac_index_matrix,
    rac_isometry,
    rac_witness,
)
from .quantum import quantum_behaviour
from .statedisc import (
    ASYMPTOTIC_RATIO,
    DiscriminationScenario,
    classical_bound,
    closed_form_behaviour,
    discrimination_model,
    discrimination_witness,
    qd_bound,
    quantum_bound,
    ratio_series,
    ratio_series_csv,
)

DEFAULT_DIGITS = 9


def _digits() -> int:
    raw = os.environ.get("DIMWIT_PRECISION")
    if raw is None or raw == "":
        return DEFAULT_DIGITS
    try:
        n = int(raw)
    except ValueError:
        raise ValidationError(f"DIMWIT_PRECISION must be an integer, got {raw!r}") from None
    if not 6 <= n <= 17:
        raise ValidationError(f"DIMWIT_PRECISION must be in 6..17, got {n}")
    return n


def _num(v: float) -> str:
    return format(float(v), f".{_digits()}g")


def _out(label: str, value) -> None:
    if isinstance(value, float):
        value = _num(value)
    print(f"{label}: {value}")


def cmd_validate(args) -> int:
    P = dio.load_behaviour(args.behaviour)
    _out("scenario", str(P.scenario))
    _out("max_normalization_deviation", P.normalization_error)
    return 0


def cmd_bound(args) -> int:
    rep = dimension_lower_bound(dio.load_behaviour(args.behaviour))
    _out("trace_norm", rep.trace_norm)
    _out("raw_bound", rep.raw_bound)
    _out("dimension_lower_bound", rep.dimension_lower_bound)
    _out("saturated", "yes" if rep.saturated else "no")
    return 0


def cmd_witness_eval(args) -> int:
    P = dio.load_behaviour(args.behaviour)
    G = dio.load_witness(args.witness)
    if P.scenario != G.scenario:
        raise ValidationError(f"behaviour scenario {P.scenario} does not match witness {G.scenario}")
    value = inner_product(P.matrix, G.matrix)
    _out("value", value)
    if args.dim is not None:
        bound = witness_bound(G, args.dim)
        _out("witness_bound", bound)
        _out("respected", "yes" if value <= bound + 1e-9 else "no")
    return 0


def cmd_svd_witness(args) -> int:
    G = svd_witness(dio.load_behaviour(args.behaviour), args.rank_tolerance)
    dio.save_witness(G, args.output)
    return 0


def cmd_classical_max(args) -> int:
    G = dio.load_witness(args.witness)
    value, strategy = classical_witness_max(G, args.dim, cap=args.cap)
    _out("value", value)
    _out("strategy", json.dumps(strategy.to_dict()))
    if args.output:
        dio.save_strategy(strategy, args.output)
    return 0


def cmd_qrac(args) -> int:
    if args.what == "model":
        if args.n is None:
            raise ValidationError("qrac model needs --n")
        dio.save_model(optimal_qrac_model(args.n), _need_output(args))
        return 0
    if args.m is None or args.n is None:
        raise ValidationError(f"qrac {args.what} needs --m and --n")
    if args.what == "bound":
        if args.dim is None:
            raise ValidationError("qrac bound needs --dim")
        value = rac_bound(args.m, args.n, args.dim)
        _out("bound", value)
        if value >= 1.0:
            print("note: bound >= 1, vacuous for these parameters")
        return 0
    p = RacParams(args.m, args.n)
    out = _need_output(args)
    if args.what == "matrix":
        dio.save_matrix(rac_index_matrix(p), p.scenario, out)
    elif args.what == "isometry":
        dio.save_matrix(rac_isometry(p), p.scenario, out)
    else:
        dio.save_witness(rac_witness(p), out)
    return 0


def cmd_statedisc(args) -> int:
    N = DiscriminationScenario(args.N).N
    dim = 2 if args.dim is None else args.dim
    if args.what == "bounds":
        _out("B_Q", quantum_bound(N))
        if N % 2 == 0:
            _out("B_C", classical_bound(N))
        else:
            _out("B_C", "n/a (odd N)")
        _out(f"qd_bound(d={dim})", qd_bound(N, dim))
        return 0
    out = _need_output(args)
    if args.what == "witness":
        if dim != 2:
            raise ValidationError("the closed-form witness is defined for --dim 2; use svd-witness")
        dio.save_witness(discrimination_witness(N), out)
    elif args.what == "model":
        dio.save_model(discrimination_model(N, dim), out)
    elif dim == 2:
        dio.save_behaviour(closed_form_behaviour(N), out)
    else:
        dio.save_behaviour(quantum_behaviour(discrimination_model(N, dim)), out)
    return 0


def cmd_figure1(args) -> int:
    rows = ratio_series(args.max_n)
    Path(args.output).write_text(ratio_series_csv(rows))
    _out("rows", len(rows))
    _out("last_ratio", rows[-1].ratio)
    _out("asymptote", ASYMPTOTIC_RATIO)
    return 0


def _need_output(args) -> str:
    if not args.output:
        raise ValidationError(f"{args.command} {args.what} needs -o/--output")
    return args.output


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dimwit",
        description="Trace-norm dimension bounds and witnesses for prepare-and-measure behaviours.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a behaviour file")
    p.add_argument("behaviour")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("bound", help="trace-norm lower bound on the dimension")
    p.add_argument("behaviour")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("witness-eval", help="evaluate <P, G> and optionally its dimension bound")
    p.add_argument("behaviour")
    p.add_argument("witness")
    p.add_argument("--dim", type=int)
    p.set_defaults(func=cmd_witness_eval)

    p = sub.add_parser("svd-witness", help="optimal witness U V^T from the SVD of a behaviour")
    p.add_argument("behaviour")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--rank-tolerance", type=float, default=1e-8)
    p.set_defaults(func=cmd_svd_witness)

    p = sub.add_parser("classical-max", help="brute-force maximum of a witness over C_d")
    p.add_argument("witness")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("-o", "--output", help="write the maximizing strategy here")
    p.set_defaults(func=cmd_classical_max)

    p = sub.add_parser("qrac", help="random access code constructions")
    p.add_argument("what", choices=["matrix", "isometry", "witness", "bound", "model"])
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--dim", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_qrac)

    p = sub.add_parser("statedisc", help="state-discrimination scenario")
    p.add_argument("what", choices=["behaviour", "witness", "model", "bounds"])
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--dim", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_statedisc)

    p = sub.add_parser("figure1", help="emit the B_C/B_Q ratio series as CSV")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_figure1)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SizeError as exc:
        print(f"error: size guard exceeded: {exc}", file=sys.stderr)
        return 2
    except (DimwitError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
