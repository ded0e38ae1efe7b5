"""Command-line interface: prepare / solve / trace / sweep / baseline."""
from __future__ import annotations

import argparse
import json
import sys

from .baseline import baseline_encode
from .errors import SimulationError
from .fileio import (
    SCHEMA_VERSION,
    load_system,
    resolve_vector,
    write_json_report,
)
from .prep import choose_parameters, prepare_state, trace_steps
from .solver import solve_qlsp
from .statevector import fidelity
from .sweep import SweepSpec, run_sweep

TRACE_QUBIT_CAP = 14


def _add_vector_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--input",
        required=True,
        help="vector file (.csv re,im rows / .json entries) or generator spec "
        "(uniform:N, basis:N:J, random:N, randomc:N, exact:N)",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed (generators and sampling)")


def _prep_params_from_args(args, b, suggested_t):
    t = args.t if args.t is not None else suggested_t
    return choose_parameters(
        b,
        args.nc,
        t=t,
        C=args.C,
        postselect_mode=getattr(args, "mode", "exact"),
        max_attempts=getattr(args, "max_attempts", 64),
        seed=args.seed,
    )


def _cmd_prepare(args) -> int:
    b, suggested_t = resolve_vector(args.input, args.seed, args.nc)
    params = _prep_params_from_args(args, b, suggested_t)
    _, report = prepare_state(b, params)
    print(f"n_target={b.n_qubits} n_clock={params.n_clock} t={params.t!r} C={params.C!r}")
    print(f"fidelity={report.fidelity!r}")
    print(f"success_prob_analytic={report.success_prob_analytic!r}")
    if report.success_prob_observed is not None:
        print(f"success_prob_observed={report.success_prob_observed!r} attempts={report.attempts}")
    print(f"clock_residual={report.clock_residual!r}")
    print(f"total_charged_unit={report.census.total_charged('unit')}")
    if args.report:
        write_json_report(args.report, "prepare", {"seed": args.seed, **report.to_dict()})
    return 0


def _cmd_solve(args) -> int:
    system = load_system(args.system)
    prep_params = None
    if args.input_mode == "prepared" and (args.prep_nc or args.prep_t):
        prep_params = choose_parameters(
            system.b,
            args.prep_nc if args.prep_nc else args.nc,
            t=args.prep_t,
            seed=args.seed,
        )
    report = solve_qlsp(
        system,
        args.nc,
        input_mode=args.input_mode,
        t=args.t,
        C=args.C,
        prep_params=prep_params,
        seed=args.seed,
    )
    print(f"kappa={system.condition_number!r}")
    print(f"fidelity={report.fidelity!r}")
    print(f"success_prob={report.success_prob!r}")
    print(f"t={report.t!r} C={report.C!r} input_mode={report.input_mode}")
    if args.report:
        write_json_report(args.report, "solve", {"seed": args.seed, **report.to_dict()})
    return 0


def _cmd_trace(args) -> int:
    b, suggested_t = resolve_vector(args.input, args.seed, args.nc)
    params = _prep_params_from_args(args, b, suggested_t)
    total = b.n_qubits + (1 if b.is_complex else 0) + params.n_clock + 1
    if total > TRACE_QUBIT_CAP:
        print(
            f"error: trace dumps full amplitude arrays; {total} qubits exceeds "
            f"the cap of {TRACE_QUBIT_CAP}",
            file=sys.stderr,
        )
        return 2
    states = {
        label: [[z.real, z.imag] for z in state.amplitudes]
        for label, state in trace_steps(b, params)
    }
    payload = {
        "schema_version": SCHEMA_VERSION,
        "kind": "trace",
        "seed": args.seed,
        "params": params.to_dict(),
        "states": states,
    }
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    else:
        json.dump(payload, sys.stdout)
        print()
    return 0


def _cmd_sweep(args) -> int:
    spec = SweepSpec.from_file(args.spec)
    if args.output:
        spec = SweepSpec(**{**spec.__dict__, "output": args.output})
    rows = run_sweep(spec, workers=args.workers)
    print(f"{len(rows)} rows" + (f" -> {spec.output}" if spec.output else ""))
    return 0


def _cmd_baseline(args) -> int:
    b, _ = resolve_vector(args.input, args.seed)
    state, census = baseline_encode(b)
    fid = fidelity(state, b)
    print(f"n_target={b.n_qubits} rotations={census.rotation_ops_charged} fidelity={fid!r}")
    if args.report:
        write_json_report(
            args.report,
            "baseline",
            {
                "seed": args.seed,
                "n_target": b.n_qubits,
                "fidelity": fid,
                "census": census.to_dict(),
            },
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hhlprep",
        description="Statevector simulator and benchmarks for phase-estimation "
        "based amplitude encoding",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prepare", help="run the state-preparation pipeline")
    _add_vector_options(p)
    p.add_argument("--nc", type=int, required=True, help="clock qubits")
    p.add_argument("--t", type=float, default=None, help="evolution time (default: auto)")
    p.add_argument("--C", type=float, default=None, help="rotation constant (default: auto)")
    p.add_argument("--mode", choices=("exact", "sampled"), default="exact")
    p.add_argument("--max-attempts", type=int, default=64, dest="max_attempts")
    p.add_argument("--report", default=None, help="write a JSON report here")
    p.set_defaults(func=_cmd_prepare)

    p = sub.add_parser("solve", help="solve a Hermitian linear system")
    p.add_argument("--system", required=True, help="system JSON file")
    p.add_argument("--nc", type=int, required=True, help="solver clock qubits")
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--C", type=float, default=None)
    p.add_argument(
        "--input-mode", choices=("injected", "prepared"), default="injected",
        dest="input_mode",
    )
    p.add_argument("--prep-nc", type=int, default=None, dest="prep_nc")
    p.add_argument("--prep-t", type=float, default=None, dest="prep_t")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", default=None)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("trace", help="dump all ten intermediate states as JSON")
    _add_vector_options(p)
    p.add_argument("--nc", type=int, required=True)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--C", type=float, default=None)
    p.add_argument("--report", default=None, help="output path (default: stdout)")
    p.set_defaults(func=_cmd_trace)

    p = sub.add_parser("sweep", help="run a sweep described by a JSON spec")
    p.add_argument("--spec", required=True, help="sweep spec JSON file")
    p.add_argument("--output", default=None, help="override the CSV output path")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("baseline", help="run the O(N) tree encoder")
    _add_vector_options(p)
    p.add_argument("--report", default=None)
    p.set_defaults(func=_cmd_baseline)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SimulationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
