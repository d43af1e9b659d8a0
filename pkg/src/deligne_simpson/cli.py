"""Command-line front end.

Every subcommand reads JSON and writes JSON with sorted keys, so repeated
runs on the same input and seed are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .construct import construct, jordan_normalize
from .criterion import DEFAULT_BUDGET, NOTES, Status, decide, enumerate_q_null_roots
from .errors import BudgetExceeded, DSPError, InconsistentSize, InvalidXiRow, SchemaError
from .instance import instance_from_json
from .rep import Rep, check_relations, middle_convolution
from .verify import MatrixTuple, full_report

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CRITERION_FAILS = 2
EXIT_NO_SOLUTION_DET = 3
EXIT_INPUT = 4
EXIT_BUDGET = 5

STATUS_EXIT = {
    Status.EXISTS_RIGID: EXIT_OK,
    Status.EXISTS_NONRIGID: EXIT_OK,
    Status.CRITERION_FAILS: EXIT_CRITERION_FAILS,
    Status.NO_SOLUTION_DET: EXIT_NO_SOLUTION_DET,
}


class InputError(Exception):
    pass


def _load(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(args, report: dict, extra_text: dict[str, str] | None = None):
    report["seed"] = args.seed
    text = _dump(report)
    if args.out:
        out = Path(args.out)
        out.write_text(text)
        for suffix, body in (extra_text or {}).items():
            out.with_suffix(suffix).write_text(body)
    else:
        sys.stdout.write(text)


def _log(args, line: str):
    if args.verbose:
        print(line, file=sys.stderr)


def cmd_decide(args) -> int:
    inst = instance_from_json(_load(args.instance))
    verdict = decide(inst, args.budget, args.workers)
    report = {"instance": inst.to_json(), "derived": inst.derived_json(), "verdict": verdict.to_json(inst.quiver)}
    _emit(args, report)
    return STATUS_EXIT[verdict.status]


def cmd_roots(args) -> int:
    inst = instance_from_json(_load(args.instance))
    catalog = enumerate_q_null_roots(inst, args.budget, args.workers)
    _emit(args, {"derived": inst.derived_json(), "catalog": catalog.to_json(inst.quiver)})
    return EXIT_OK


def cmd_construct(args) -> int:
    inst = instance_from_json(_load(args.instance))
    verdict = decide(inst, args.budget, args.workers)
    if verdict.status is not Status.EXISTS_RIGID:
        print(
            f"refusing to construct: status {verdict.status.value} ({NOTES[verdict.status]}); "
            "only the rigid case has a constructive proof",
            file=sys.stderr,
        )
        return STATUS_EXIT[verdict.status] or EXIT_FAILED
    result = construct(inst, budget=args.budget)
    for line in result.trace:
        _log(args, line)
    report = full_report(inst, result.tuple, result.rep, expect_rigid=True)
    out = {
        "instance": inst.to_json(),
        "derived": inst.derived_json(),
        "verdict": verdict.to_json(inst.quiver),
        "path": result.path.vertices,
        "tuple": result.tuple.to_json(),
        "trace": result.trace,
        "verification": report.to_json(),
    }
    if args.jordan_normalize:
        out["tuple_jordan"] = jordan_normalize(result.tuple, inst.classes[0]).to_json()
    _emit(args, out, {".trace": "\n".join(result.trace) + "\n"})
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_verify(args) -> int:
    inst = instance_from_json(_load(args.instance))
    obj = _load(args.tuple)
    if isinstance(obj, dict) and "tuple" in obj:
        obj = obj["tuple"]
    try:
        T = MatrixTuple.from_json(obj)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise SchemaError("$.matrices", f"malformed matrix tuple: {exc}") from exc
    if T.conductor != inst.conductor:
        raise SchemaError("$.conductor", f"expected {inst.conductor}, got {T.conductor}")
    report = full_report(inst, T)
    _emit(args, {"verification": report.to_json()})
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_convolve(args) -> int:
    X = Rep.from_json(_load(args.rep))
    if args.vertex not in X.quiver.vertices:
        raise SchemaError("--vertex", f"unknown vertex {args.vertex!r}")
    steps = []
    Y = middle_convolution(X, args.vertex, trace=steps)
    trace = [s.format(X.quiver) for s in steps]
    for line in trace:
        _log(args, line)
    _emit(args, {"rep": Y.to_json(), "relations_ok": bool(check_relations(Y)), "trace": trace},
          {".trace": "\n".join(trace) + "\n"})
    return EXIT_OK


def _budget(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("budget must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=_budget, default=DEFAULT_BUDGET, help="cap on enumerated states")
    common.add_argument("--seed", type=int, default=0, help="recorded in every report")
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--workers", type=int, default=1, help="processes for root enumeration")
    common.add_argument("-v", "--verbose", action="store_true", help="print traces to stderr")

    parser = argparse.ArgumentParser(prog="deligne-simpson", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", parents=[common], help="run the existence criterion")
    p.add_argument("instance")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("construct", parents=[common], help="build and verify a rigid solution")
    p.add_argument("instance")
    p.add_argument("--jordan-normalize", action="store_true", help="also emit a copy with A_1 in Jordan form")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="check a matrix tuple against an instance")
    p.add_argument("instance")
    p.add_argument("tuple")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("roots", parents=[common], help="dump the positive roots below alpha")
    p.add_argument("instance")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("convolve", parents=[common], help="middle convolution of a representation file")
    p.add_argument("rep")
    p.add_argument("--vertex", required=True)
    p.set_defaults(func=cmd_convolve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc.states} states attempted, budget {exc.budget}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, SchemaError, InconsistentSize, InvalidXiRow) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DSPError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
