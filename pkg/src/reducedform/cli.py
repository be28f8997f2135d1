"""Command line entry point: ``reducedform <command> ...``."""
from __future__ import annotations

import argparse
import json
import sys

from .errors import NotASolution, NotHamiltonian, ParseError, PipelineError, ZeroSolution
from .pipeline import (
    emit_report,
    error_report,
    fixture_path,
    load_problem,
    replay,
    run_pipeline,
)
from .sp4 import ABELIAN, INCONCLUSIVE, NON_ABELIAN

EXIT_ABELIAN, EXIT_USAGE, EXIT_INTERNAL, EXIT_NON_ABELIAN, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4
EXIT_FOR_VERDICT = {ABELIAN: EXIT_ABELIAN, NON_ABELIAN: EXIT_NON_ABELIAN, INCONCLUSIVE: EXIT_INCONCLUSIVE}

# failures caused by the input rather than by the library
_INPUT_ERRORS = (ParseError, NotASolution, NotHamiltonian, ZeroSolution, OSError)


def _extension(value: str) -> str:
    if not value.startswith("D="):
        raise argparse.ArgumentTypeError("expected D=<polynomial>")
    return value[2:]


def _exit_for_error(exc) -> int:
    cause = getattr(exc, "cause", exc)
    return EXIT_USAGE if isinstance(cause, _INPUT_ERRORS) else EXIT_INTERNAL


def _write(out: bytes):
    sys.stdout.buffer.write(out)
    sys.stdout.flush()


def _run(args, stop_after=None):
    """Load and run; returns (report, exit code or None)."""
    try:
        spec = load_problem(args.problem, extension=args.extension)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return error_report(exc, source=args.problem), EXIT_USAGE
    try:
        return run_pipeline(spec, degree_cap=args.degree_cap, simplify=args.simplify or None,
                            stop_after=stop_after), None
    except PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return error_report(exc, source=args.problem), _exit_for_error(exc)


def _replay_checks(report_dict, cap) -> dict:
    if report_dict.get("error"):
        return {}
    return replay(report_dict, cap or 64)


def cmd_reduce(args) -> int:
    report, code = _run(args)
    if code is None:
        code = EXIT_FOR_VERDICT.get(report.verdict, EXIT_INTERNAL)
    if args.replay and not report.error:
        checks = _replay_checks(json.loads(emit_report(report)), args.degree_cap)
        report.notes.append("replay: " + ", ".join(f"{k}={'ok' if v else 'FAILED'}" for k, v in sorted(checks.items())))
        if not all(checks.values()):
            code = EXIT_INTERNAL
    _write(emit_report(report, args.format, timings=args.timings))
    return code


def cmd_classify(args) -> int:
    report, code = _run(args, stop_after="classify_nve")
    _write(emit_report(report, args.format, timings=args.timings))
    return EXIT_ABELIAN if code is None else code


def cmd_verdict(args) -> int:
    report, code = _run(args)
    if code is not None:
        return code
    print(report.verdict)
    return EXIT_FOR_VERDICT.get(report.verdict, EXIT_INTERNAL)


def cmd_replay(args) -> int:
    try:
        with open(args.report, encoding="utf-8") as fh:
            d = json.load(fh)
        checks = replay(d, args.degree_cap or 64)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for k, v in sorted(checks.items()):
        print(f"{'ok  ' if v else 'FAIL'} {k}")
    if not checks:
        print("nothing to replay")
    return EXIT_ABELIAN if all(checks.values()) else EXIT_INTERNAL


def self_test(verbose=True) -> bool:
    """Hill pair plus bracket tables; True when everything matches."""
    from .sp4 import EXPECTED_TABLES, check_bracket_tables, check_products
    results = []

    def check(name, ok):
        results.append(ok)
        if verbose:
            print(f"{'PASS' if ok else 'FAIL'} {name}")

    expected = {"hill_h1.problem": NON_ABELIAN, "hill_h0.problem": ABELIAN}
    for name, want in expected.items():
        r = run_pipeline(load_problem(fixture_path(name)))
        check(f"{name}: verdict {r.verdict}", r.verdict == want)
        checks = replay(json.loads(emit_report(r)))
        check(f"{name}: report replays", bool(checks) and all(checks.values()))
    tables = check_bracket_tables()
    for label in EXPECTED_TABLES:
        check(f"{label} bracket table", all(ok for lab, _, _, ok in tables if lab == label))
    check("products of M1, M2, M3", check_products())
    return all(results)


def cmd_self_test(args) -> int:
    return EXIT_ABELIAN if self_test() else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reducedform",
                                description="Reduced forms and abelianity verdicts for symplectic 4x4 systems.")
    sub = p.add_subparsers(dest="command", required=True)

    def problem_cmd(name, fn, help):
        s = sub.add_parser(name, help=help)
        s.add_argument("problem", help="problem file")
        s.add_argument("--format", choices=("json", "text"), default="json")
        s.add_argument("--degree-cap", type=int, default=None)
        s.add_argument("--extension", type=_extension, default=None, metavar="D=<poly>",
                       help="override the radicand of the working field")
        s.add_argument("--simplify", action="store_true", help="also simplify the reduced form")
        s.add_argument("--timings", action="store_true", help="include stage timings in the report")
        s.set_defaults(func=fn, replay=False)
        return s

    problem_cmd("reduce", cmd_reduce, "run the full pipeline").add_argument(
        "--replay", action="store_true", help="recheck every identity of the report")
    problem_cmd("classify-nve", cmd_classify, "classify the normal block only")
    problem_cmd("verdict", cmd_verdict, "print only the verdict")
    r = sub.add_parser("replay", help="recheck a json report")
    r.add_argument("report")
    r.add_argument("--degree-cap", type=int, default=None)
    r.set_defaults(func=cmd_replay)
    t = sub.add_parser("self-test", help="Hill fixtures and bracket tables")
    t.set_defaults(func=cmd_self_test)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    try:
        return args.func(args)
    except AssertionError as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
