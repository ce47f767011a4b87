"""Command-line front end.

Exit codes: 0 verified / l-ring / reproduced / all suites pass, 1 violated /
not an l-ring / failure, 2 inconclusive, 3 invalid spec or flags.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Any

from . import classify as cls
from . import truncation as trunc
from .lattice import ModelError, RingModel
from .reproductions import EXAMPLES, run_example
from .serialize import Encoder, SpecFile, dump_report, read_spec, report
from .suites import SUITES, run_all
from .unitization import FAULTS
from .verdict import PreconditionError, Status

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3

SELFTEST_SAMPLES = 300


class UsageError(Exception):
    """Bad flags or an unusable spec; maps to exit code 3."""


def _spec_inputs(spec: SpecFile) -> dict[str, Any]:
    return {"spec": spec.raw}


def _require_truncation(spec: SpecFile):
    if spec.truncation is None:
        raise UsageError("the spec file has no truncation")
    return spec.truncation


def _verdict_lines(name: str, data: dict[str, Any]) -> list[str]:
    line = f"{name}: {data['status']}"
    if data.get("clause"):
        line += f" ({data['clause']})"
    if data.get("message"):
        line += f" - {data['message']}"
    lines = [line]
    for k, v in data.get("witness", {}).items():
        lines.append(f"  {k} = {v}")
    return lines


def cmd_axioms(args) -> tuple[dict[str, Any], int]:
    spec = read_spec(args.model)
    tau = _require_truncation(spec)
    samples = args.samples if args.samples is not None else cls.DEFAULT_SAMPLES
    verdict = trunc.check_axioms(spec.model, tau, seed=args.seed, samples=samples,
                                 bound=args.bound)
    enc = Encoder(spec.model)
    body = {"model": spec.model.describe(), "truncation": enc(tau), "verdict": enc(verdict)}
    code = {Status.VERIFIED: EXIT_OK, Status.VIOLATED: EXIT_FAIL,
            Status.INCONCLUSIVE: EXIT_INCONCLUSIVE}[verdict.status]
    return report("axioms", _spec_inputs(spec), args.seed, body, samples=samples,
                  bound=args.bound), code


def cmd_classify(args) -> tuple[dict[str, Any], int]:
    spec = read_spec(args.model)
    tau = _require_truncation(spec)
    if not isinstance(spec.model, RingModel):
        raise UsageError(f"the {spec.model.kind} model has no multiplication")
    samples = args.samples if args.samples is not None else cls.DEFAULT_SAMPLES
    cone = args.cone_samples if args.cone_samples is not None else cls.DEFAULT_CONE_SAMPLES
    try:
        cl = cls.classify_unitization(spec.model, tau, spec.scale_c, seed=args.seed,
                                      samples=samples, cone_samples=cone)
    except PreconditionError as exc:
        raise UsageError(str(exc)) from None
    body = {"model": spec.model.describe(), "classification": Encoder(spec.model)(cl)}
    return (report("classify", _spec_inputs(spec), args.seed, body, samples=samples),
            EXIT_OK if cl.is_l_ring else EXIT_FAIL)


def cmd_example(args) -> tuple[dict[str, Any], int]:
    if args.name not in EXAMPLES:
        raise UsageError(f"unknown example {args.name!r}; choose from {', '.join(EXAMPLES)}")
    samples = args.samples if args.samples is not None else cls.DEFAULT_SAMPLES
    rep = run_example(args.name, args.seed, samples, args.bound)
    enc = Encoder(rep.model)
    body = {
        "example": rep.name,
        "summary": rep.summary,
        "model": rep.model.describe(),
        "results": {k: enc(v) for k, v in rep.results.items()},
        "expectations": rep.expectations,
        "reproduced": rep.reproduced,
    }
    return (report("example", {"name": args.name}, args.seed, body, samples=samples,
                   bound=args.bound),
            EXIT_OK if rep.reproduced else EXIT_FAIL)


def cmd_selftest(args) -> tuple[dict[str, Any], int]:
    samples = args.samples if args.samples is not None else SELFTEST_SAMPLES
    if args.threads < 1:
        raise UsageError("--threads must be at least 1")
    names = args.suite or None
    results = run_all(args.seed, samples, threads=args.threads, fault=args.fault, names=names)
    enc = Encoder()
    suites = [{"name": r.name, "passed": r.passed,
               "checks": [dict(name=n, **enc(v)) for n, v in r.checks]} for r in results]
    passed = all(r.passed for r in results)
    inputs = {"suites": [r.name for r in results], "fault": args.fault}
    body = {"passed": passed, "suites": suites}
    return report("selftest", inputs, args.seed, body, samples=samples), \
        EXIT_OK if passed else EXIT_FAIL


def render_text(rep: dict[str, Any]) -> str:
    lines = [f"{rep['command']} (seed {rep['seed']})"]
    cmd = rep["command"]
    if cmd == "axioms":
        lines += _verdict_lines("truncation axioms", rep["verdict"])
    elif cmd == "classify":
        cl = rep["classification"]
        lines.append(f"outcome: {cl['outcome']}")
        if cl["witness"] is not None:
            lines.append(f"witness: {cl['witness']}")
        for name, v in cl["evidence"].items():
            lines += _verdict_lines(f"  {name}", v)
    elif cmd == "example":
        lines.append(f"{rep['example']}: {rep['summary']}")
        for name, ok in rep["expectations"].items():
            lines.append(f"  [{'ok' if ok else 'FAIL'}] {name}")
        lines.append("reproduced" if rep["reproduced"] else "NOT reproduced")
    elif cmd == "selftest":
        for suite in rep["suites"]:
            lines.append(f"[{'pass' if suite['passed'] else 'FAIL'}] {suite['name']}")
            for chk in suite["checks"]:
                if chk["status"] != Status.VERIFIED.value:
                    lines += ["    " + s for s in _verdict_lines(chk["name"], chk)]
        lines.append("all suites passed" if rep["passed"] else "failures found")
    if "runtime" in rep:
        lines.append(f"runtime: {rep['runtime']} s")
    return "\n".join(lines) + "\n"


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--samples", type=_positive_int, help="sample budget")
    common.add_argument("--bound", type=_positive_int, default=cls.DEFAULT_BOUND,
                        help="bound N for semi-decidable clauses (default 64)")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", help="write the report to this file instead of stdout")
    common.add_argument("--timing", action="store_true",
                        help="add the runtime to the report (breaks byte-identity)")

    parser = argparse.ArgumentParser(
        prog="alexandroff",
        description="Truncated l-groups, their unitizations and the l-ring classification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("axioms", parents=[common], help="check the truncation axioms")
    p.add_argument("--model", required=True, help="JSON spec file")
    p.set_defaults(run=cmd_axioms)

    p = sub.add_parser("classify", parents=[common], help="is the unitization an l-ring?")
    p.add_argument("--model", required=True, help="JSON spec file")
    p.add_argument("--cone-samples", type=_positive_int,
                   help="positive pairs for the cone sampler (default 10000)")
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("example", parents=[common], help="run a canned reproduction")
    p.add_argument("name", help=", ".join(EXAMPLES))
    p.set_defaults(run=cmd_example)

    p = sub.add_parser("selftest", parents=[common], help="run every property suite")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--suite", action="append", choices=sorted(SUITES),
                   help="run only this suite (repeatable)")
    p.add_argument("--fault", choices=FAULTS, help=argparse.SUPPRESS)
    p.set_defaults(run=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad flags; this tool reserves 2 for inconclusive
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    start = time.perf_counter()
    try:
        rep, code = args.run(args)
    except (UsageError, ModelError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.timing:
        rep["runtime"] = round(time.perf_counter() - start, 3)
    text = dump_report(rep) if args.format == "json" else render_text(rep)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
