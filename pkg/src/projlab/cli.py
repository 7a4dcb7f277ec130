"""Command-line entry point: ``projlab <command> [options]``.

Exit codes: 0 success, 1 verification violation, 2 usage or domain error,
3 enumeration budget refused.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from projlab import bijection, extremal, hnumbers, teaching
from projlab.bitmatrix import MatrixFormatError, format_matrix, m_q, read_matrix
from projlab.errors import BudgetExceeded, DomainError
from projlab.report import Report

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

SUITES = (
    "theorem21",
    "theorem31",
    "lemma33",
    "lemma41",
    "lemma42",
    "lemma47",
    "isoperimetry",
    "bijection",
    "obs44",
)


def _emit(args, payload, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _budget(args) -> int:
    return args.budget if args.budget is not None else extremal.budget_from_env()


def _order(raw: str | None, default):
    if raw is None:
        return tuple(default)
    return tuple(int(v) for v in raw.split(","))


def cmd_mq(args) -> int:
    m = read_matrix(args.matrix)
    value = m_q(m, args.q)
    _emit(args, {"n": m.n, "k": m.k, "q": args.q, "m_q": value}, str(value))
    return EXIT_OK


def cmd_hq(args) -> int:
    if args.method == "direct":
        value = hnumbers.h_direct(args.q, args.n, args.k)
    elif args.method == "recurrence":
        value = hnumbers.h_recurrence(args.q, args.n, args.k)
    else:
        value = hnumbers.h_incremental(args.q, args.n, args.k)
    payload = {"q": args.q, "n": args.n, "k": args.k, "method": args.method, "h": value}
    _emit(args, payload, str(value))
    return EXIT_OK


def cmd_build_h(args) -> int:
    m = hnumbers.build_H(args.n, args.k)
    _emit(args, m.to_json(), format_matrix(m).rstrip("\n"))
    return EXIT_OK


def cmd_minimize(args) -> int:
    res = extremal.minimize_mq(
        args.n, args.k, args.q, budget=_budget(args), workers=args.threads, prune=args.prune
    )
    text = f"m_{args.q}({args.n},{args.k}) = {res.min_value}\n" + str(res.witness)
    _emit(args, res.to_json(), text)
    return EXIT_OK


def _run_suite(args) -> list[Report]:
    suite = args.suite
    if suite == "theorem21":
        return [
            extremal.verify_theorem_2_1(
                args.max_n or 4,
                k_cap=args.k_cap,
                budget=_budget(args),
                workers=args.threads,
                prune=args.prune,
            )
        ]
    if suite == "theorem31":
        if None not in (args.q, args.n, args.k):
            return [extremal.verify_theorem_3_1(args.q, args.n, args.k)]
        return [extremal.sweep_theorem_3_1(args.max_n or 12, args.k_limit)]
    if suite == "lemma33":
        return [extremal.verify_lemma_3_3(args.max_n or 3, budget=_budget(args))]
    if suite == "lemma41":
        return [extremal.verify_lemma_4_1(args.max_n or 10)]
    if suite == "lemma42":
        return [extremal.verify_corollary_4_2(args.max_n or 10)]
    if suite == "lemma47":
        if None not in (args.q, args.n, args.x, args.j):
            return [extremal.verify_lemma_4_7(args.q, args.n, args.x, args.j)]
        return [extremal.sweep_lemma_4_7(args.max_n or 10)]
    if suite == "isoperimetry":
        ns = [args.n] if args.n is not None else range(2, (args.max_n or 10) + 1)
        return [
            extremal.verify_isoperimetry(n, args.trials, seed=args.seed + n, keep_checks=False)
            for n in ns
        ]
    if suite == "bijection":
        ts = None if args.t is None else {args.t}
        return [bijection.sweep_generalized(args.limit, ts=ts), bijection.sweep_graham(args.limit // 2)]
    if suite == "obs44":
        return [bijection.verify_reverse_triangle(args.bits)]
    raise DomainError(f"unknown suite {suite}")


def cmd_verify(args) -> int:
    reports = _run_suite(args)
    if args.json:
        docs = [r.to_json(include_checks=args.details) for r in reports]
        print(json.dumps(docs[0] if len(docs) == 1 else docs, indent=2))
    else:
        for r in reports:
            print(r.summary())
            for v in r.violations[: args.show]:
                print(f"  violation: {v}")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_VIOLATION


def cmd_bijection(args) -> int:
    if args.shape == "graham":
        cert = bijection.graham_bijection(args.s, args.r)
    else:
        if args.t is None:
            raise DomainError("--t is required for the generalized shape")
        cert = bijection.generalized_bijection(args.s, args.r, args.t)
    diagnosis = bijection.check_certificate(cert)
    text = "\n".join(f"{x} -> {y}" for x, y in cert.pairs)
    _emit(args, cert.to_json(), text)
    return EXIT_OK if diagnosis else EXIT_VIOLATION


def cmd_teach(args) -> int:
    m = read_matrix(args.matrix)
    cc = teaching.ConceptClass(
        m,
        _order(args.concept_order, range(m.k)),
        _order(args.example_order, range(1, m.n + 1)),
    )
    tm = teaching.greedy_teach(cc, budget=args.budget)
    lines = [
        f"concept {c}: {{{', '.join(f'(x{x},{b})' for x, b in w)}}}"
        for c, w in sorted(tm.assignments.items())
    ]
    lines.append(f"teaching dimension: {tm.teaching_dimension}")
    _emit(args, tm.to_json(), "\n".join(lines))
    return EXIT_OK if teaching.validate_teacher(cc, tm) else EXIT_VIOLATION


def cmd_census(args) -> int:
    kwargs = {"workers": args.threads}
    if args.budget is not None:
        kwargs["budget"] = args.budget
    report = teaching.teaching_dimension_census(args.n, args.k, **kwargs)
    text = report.summary() + f"\ndistribution: {report.details['distribution']}"
    _emit(args, report.to_json(include_checks=args.details), text)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("--budget", type=int, default=None, help="enumeration cap (default PROJLAB_BUDGET or 2e7)")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="projlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mq", parents=[common], help="m_q of a matrix file")
    p.add_argument("--matrix", required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_mq)

    p = sub.add_parser("hq", parents=[common], help="h_q(n,k)")
    for name in ("n", "k", "q"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--method", choices=("direct", "recurrence", "incremental"), default="recurrence")
    p.set_defaults(func=cmd_hq)

    p = sub.add_parser("build-h", parents=[common], help="emit H_{n,k}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_build_h)

    p = sub.add_parser("minimize", parents=[common], help="brute-force minimum of m_q over M_{n,k}")
    for name in ("n", "k", "q"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--prune", action="store_true", help="fix row 0 (XOR symmetry)")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--max-n", type=int, default=None)
    for name in ("n", "k", "q", "x", "j", "t"):
        p.add_argument(f"--{name}", type=int, default=None)
    p.add_argument("--k-cap", type=int, default=6, help="theorem21: k cap for n >= 5")
    p.add_argument("--k-limit", type=int, default=4096, help="theorem31 sweep: k cap")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--limit", type=int, default=256, help="bijection: s + r bound")
    p.add_argument("--bits", type=int, default=16)
    p.add_argument("--prune", action="store_true")
    p.add_argument("--details", action="store_true", help="include per-tuple checks in JSON")
    p.add_argument("--show", type=int, default=10, help="violations printed in text mode")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bijection", parents=[common], help="emit a bijection certificate")
    p.add_argument("--shape", choices=("graham", "generalized"), default="generalized")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--t", type=int, default=None)
    p.set_defaults(func=cmd_bijection)

    p = sub.add_parser("teach", parents=[common], help="Greedy teacher for a matrix file")
    p.add_argument("--matrix", required=True)
    p.add_argument("--concept-order", default=None, help="comma-separated 0-based row indices")
    p.add_argument("--example-order", default=None, help="comma-separated 1-based column indices")
    p.set_defaults(func=cmd_teach)

    p = sub.add_parser("census", parents=[common], help="teaching-dimension census")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--details", action="store_true")
    p.set_defaults(func=cmd_census)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (MatrixFormatError, DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except bijection.NoBijectionExists as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
