"""Command-line interface.

Subcommands: validate, classify, solve, gen, check.  Output is canonical
JSON (sorted keys) on stdout so identical invocations produce identical
bytes; progress and error text goes to stderr.  Exit codes: 0 success,
1 precondition/suite failure, 2 parse error, 3 schema mismatch,
4 content-validation failure, 5 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from ..cone_metric import Potential
from ..errors import (
    GenerationBudgetError,
    InstanceParseError,
    InstanceSchemaError,
    InstanceValidationError,
    InternalConsistencyError,
    PreconditionError,
)
from ..mappings import (
    ClassifierReport,
    check_chatterjea,
    check_contraction,
    check_kannan,
    check_pointwise_contraction,
    check_weak_contraction,
)
from ..ordered_space import LinearMap
from ..solvers import (
    SolveTrace,
    bishop_phelps_climb,
    caristi_solve,
    single_valued_solve,
    takahashi_solve,
    weak_contraction_solve,
)
from .generators import KINDS, generate_instance
from .instance import Instance, load_instance, save_instance
from .suites import SUITES, run_property_suite

EXIT_OK = 0
EXIT_PRECONDITION = 1
EXIT_PARSE = 2
EXIT_SCHEMA = 3
EXIT_VALIDATION = 4
EXIT_INTERNAL = 5


def _emit(doc: dict) -> None:
    print(json.dumps(doc, sort_keys=True))


def _witnesses_doc(inst: Instance, report: ClassifierReport) -> list[dict]:
    return [
        {
            "x": inst.labels[w.x],
            "y": inst.labels[w.y],
            "lhs": list(w.lhs.coords),
            "rhs": list(w.rhs.coords),
        }
        for w in report.witnesses
    ]


def _cmd_validate(args) -> int:
    try:
        inst = load_instance(args.file)
    except InstanceValidationError as exc:
        print(f"validation failed: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    report = inst.cms.validate()
    doc = report.to_dict()
    doc.update({"n": inst.n, "dim": inst.space.dim, "points": list(inst.labels)})
    _emit(doc)
    return EXIT_OK if report.passed else EXIT_VALIDATION


def _certified(inst: Instance, name: str):
    op = inst.get_operator(name)
    cert = inst.space.shrinking_factor(op)
    if cert is None:
        witness = inst.space.shrinking_witness(op)
        detail = f"; witness ray {list(witness.coords)}" if witness is not None else ""
        raise PreconditionError(f"operator {name!r} has no shrinking certificate{detail}")
    return cert


def _named_operator(inst: Instance, name: str) -> LinearMap:
    try:
        return inst.get_operator(name)
    except KeyError as exc:
        raise PreconditionError(str(exc)) from exc


def _slack_operator(inst: Instance, name: Optional[str]) -> LinearMap:
    """The carry-term operator: explicit name, else the file's "L", else zero."""
    if name is not None:
        return _named_operator(inst, name)
    try:
        return inst.get_operator("L")
    except KeyError:
        return LinearMap.zero(inst.space.dim)


def _cmd_classify(args) -> int:
    inst = load_instance(args.file)
    try:
        tmap = inst.get_map(args.map)
    except KeyError as exc:
        raise PreconditionError(str(exc)) from exc
    cms = inst.cms
    conditions: dict[str, dict] = {}
    if args.k is not None:
        ratio = _certified(inst, args.k)
        for report in (
            check_contraction(cms, tmap, ratio),
            check_pointwise_contraction(cms, tmap, ratio),
        ):
            conditions[report.condition] = {
                "holds": report.holds,
                "witnesses": _witnesses_doc(inst, report),
                "t": ratio.factor,
            }
    if args.delta is not None:
        shrink = _certified(inst, args.delta)
        slack = _slack_operator(inst, args.L)
        report = check_weak_contraction(cms, tmap, shrink, slack)
        conditions[report.condition] = {
            "holds": report.holds,
            "witnesses": _witnesses_doc(inst, report),
            "t": shrink.factor,
        }
    if args.alpha is not None:
        coeff = _named_operator(inst, args.alpha)
        for check in (check_kannan, check_chatterjea):
            report = check(cms, tmap, coeff)
            conditions[report.condition] = {
                "holds": report.holds,
                "witnesses": _witnesses_doc(inst, report),
            }
    if not conditions:
        print(
            "nothing to classify: pass at least one of --k, --delta, --alpha",
            file=sys.stderr,
        )
        return EXIT_PRECONDITION
    _emit({"map": args.map, "conditions": conditions})
    return EXIT_OK


def _trace_lines(inst: Instance, trace: SolveTrace) -> list[dict]:
    lines: list[dict] = [{"step": 0, "point": inst.labels[trace.iterates[0]]}]
    for k, witness in enumerate(trace.step_witnesses):
        lines.append(
            {
                "step": k + 1,
                "point": inst.labels[trace.iterates[k + 1]],
                "d_step": list(witness.d_step.coords),
                "delta_phi": list(witness.delta_phi.coords),
            }
        )
    cert = {"kind": trace.certificate.kind, "point": inst.labels[trace.certificate.point]}
    if trace.certificate.phi_value is not None:
        cert["phi_value"] = list(trace.certificate.phi_value.coords)
    if trace.certificate.inf_value is not None:
        cert["inf_value"] = list(trace.certificate.inf_value.coords)
    lines.append(
        {"certificate": cert, "iterations": trace.iterations, "method": trace.method}
    )
    return lines


def _start_index(inst: Instance, label: Optional[str]) -> int:
    if label is None:
        return 0
    try:
        return inst.cms.index(label)
    except KeyError as exc:
        raise PreconditionError(str(exc)) from exc


def _named_potential(inst: Instance, name: str) -> Potential:
    try:
        return inst.get_potential(name)
    except KeyError as exc:
        raise PreconditionError(str(exc)) from exc


def _cmd_solve(args) -> int:
    inst = load_instance(args.file)
    cms = inst.cms
    start = _start_index(inst, args.x0)
    method = args.method
    if method == "bishop-phelps":
        trace = bishop_phelps_climb(cms, _named_potential(inst, args.phi), start)
    elif method == "caristi":
        tmap = inst.get_map(args.map)
        trace = caristi_solve(cms, tmap, _named_potential(inst, args.phi), args.mode, start)
    elif method == "takahashi":
        trace = takahashi_solve(cms, _named_potential(inst, args.phi), start)
    elif method == "single":
        tmap = inst.get_map(args.map)
        if any(len(img) != 1 for img in tmap.images):
            raise PreconditionError(
                f"map {args.map!r} is not single-valued: some image is not a singleton"
            )
        func = [img[0] for img in tmap.images]
        trace = single_valued_solve(cms, func, _named_potential(inst, args.phi), start)
    elif method == "weak":
        if args.epsilon is None:
            raise PreconditionError("--epsilon is required for the weak method")
        tmap = inst.get_map(args.map)
        shrink = _certified(inst, args.delta)
        slack = _slack_operator(inst, args.L)
        trace = weak_contraction_solve(cms, tmap, shrink, slack, args.epsilon, start)
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(method)
    for line in _trace_lines(inst, trace):
        _emit(line)
    return EXIT_OK


def _cmd_gen(args) -> int:
    inst = generate_instance(args.kind, args.n, args.m, args.seed)
    save_instance(inst, args.out)
    _emit({"out": str(args.out), "kind": args.kind, "n": args.n, "m": args.m, "seed": args.seed})
    return EXIT_OK


def _cmd_check(args) -> int:
    if args.suite not in SUITES:
        known = "\n  ".join(
            f"{name}: {SUITES[name].description}" for name in sorted(SUITES)
        )
        print(f"unknown suite {args.suite!r}; available suites:\n  {known}", file=sys.stderr)
        return EXIT_PARSE
    report = run_property_suite(args.suite, args.trials, args.seed)
    _emit(report.to_dict())
    print(
        f"suite {report.suite}: {report.trials} trials, "
        f"{len(report.failures)} failures ({report.elapsed_seconds:.2f}s)",
        file=sys.stderr,
    )
    return EXIT_OK if report.passed else EXIT_PRECONDITION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cone-fixpoint",
        description="Validate, classify, and solve finite cone-metric fixed-point instances.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate an instance file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("classify", help="report which contraction conditions hold")
    p.add_argument("file")
    p.add_argument("--map", default="T", help="name of the set-valued map (default: T)")
    p.add_argument("--delta", default=None, help="operator name for the weak-contraction bound")
    p.add_argument("--L", default=None, help="operator name for the weak-contraction carry term")
    p.add_argument("--alpha", default=None, help="operator name for the Kannan/Chatterjea bounds")
    p.add_argument("--k", default=None, help="operator name for the contraction bounds")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("solve", help="run a solver and print its trace as JSON lines")
    p.add_argument("file")
    p.add_argument(
        "--method",
        required=True,
        choices=["bishop-phelps", "caristi", "takahashi", "weak", "single"],
    )
    p.add_argument("--map", default="T", help="name of the set-valued map (default: T)")
    p.add_argument("--phi", default="phi", help="name of the potential (default: phi)")
    p.add_argument("--x0", default=None, help="start point label (default: first point)")
    p.add_argument("--epsilon", type=float, default=None, help="selector slack for --method weak")
    p.add_argument("--mode", choices=["exists", "forall"], default="exists")
    p.add_argument("--delta", default="delta", help="operator name for the weak method")
    p.add_argument("--L", default=None, help="operator name for the carry term (default: zero)")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("gen", help="generate a random instance file")
    p.add_argument("--kind", required=True, choices=list(KINDS))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("check", help="run a property suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_check)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InstanceParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InstanceSchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except InstanceValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (PreconditionError, GenerationBudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except InternalConsistencyError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except KeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
