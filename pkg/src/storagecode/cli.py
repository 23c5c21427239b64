"""Command-line front door.

Subcommands: analyze, classify, construct, verify, oracle. All output is
JSON on stdout (or ``-o``); diagnostics go to stderr. Exit codes:
0 success/pass, 1 verification failure, 2 invalid input, 3 resource or
limit exceeded, 4 no applicable construction.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .classify import classify_capacity
from .construct import (
    ConstructionFailure,
    LinearCode,
    NoApplicableConstruction,
    auto_construct,
)
from .fields import FieldError
from .graphs import GraphError, StorageGraph, parse_graph
from .rules import InapplicableError
from .structure import DEFAULT_PATH_LIMIT, PathOverflowError, analysis_report
from .verify import (
    DEFAULT_ORACLE_CAP,
    CodeMismatchError,
    OracleInfeasibleError,
    check_compatible,
    decoder_for_edge,
    oracle_exhaustive_decode,
    verify_code,
    verify_edge,
)

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_INVALID_INPUT = 2
EXIT_LIMIT = 3
EXIT_NO_CONSTRUCTION = 4


def _emit(payload: dict, out_path: str | None) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_graph(path: str) -> StorageGraph:
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphError("io", f"cannot read graph file {path!r}: {exc}") from exc
    return parse_graph(raw)


def _load_code(path: str) -> LinearCode:
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphError("io", f"cannot read code file {path!r}: {exc}") from exc
    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise GraphError("malformed", f"invalid code JSON: {exc}") from exc
    return LinearCode.from_dict(payload)


def _resolve_seed(args: argparse.Namespace) -> int:
    if args.seed is None:
        print("warning: no --seed given, defaulting to 0", file=sys.stderr)
        return 0
    return args.seed


def cmd_analyze(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    try:
        report = analysis_report(g, path_limit=args.path_limit)
    except PathOverflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    _emit(report, args.output)
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    seed = _resolve_seed(args)
    verdict = classify_capacity(
        g, seed=seed, path_limit=args.path_limit, strict_thm4=args.strict_thm4
    )
    payload = verdict.to_dict()
    payload["seed"] = seed
    _emit(payload, args.output)
    if verdict.kind == "unknown" and verdict.reason and "overflow" in verdict.reason:
        return EXIT_LIMIT
    return EXIT_OK


def cmd_construct(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    seed = _resolve_seed(args)
    try:
        result = auto_construct(
            g,
            rate=args.rate,
            seed=seed,
            strict_thm4=args.strict_thm4,
            path_limit=args.path_limit,
        )
    except NoApplicableConstruction as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONSTRUCTION
    except PathOverflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except ConstructionFailure as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAIL
    print(
        f"constructed via rule {result.rule} in {result.attempts} attempt(s)",
        file=sys.stderr,
    )
    payload = result.code.to_dict()
    payload["rule"] = result.rule
    payload["attempts"] = result.attempts
    payload["seed"] = seed
    _emit(payload, args.output)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    code = _load_code(args.code)
    check_compatible(code, g)
    report = verify_code(code, g, jobs=args.jobs)
    payload = report.to_dict()
    if args.emit_decoder:
        decoders = []
        for check in report.checks:
            entry = {"u": check.edge.u, "v": check.edge.v, "w": check.edge.w}
            if check.decodable:
                entry["decoder"] = decoder_for_edge(code, g, check.edge).to_lists()
            else:
                entry["decoder"] = None
            decoders.append(entry)
        payload["decoders"] = decoders
    _emit(payload, args.output)
    return EXIT_OK if report.all_pass else EXIT_VERIFY_FAIL


def cmd_oracle(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    code = _load_code(args.code)
    check_compatible(code, g)
    edges = []
    agree = True
    try:
        for e in g.edges:
            rank_says = verify_edge(code, g, e)
            oracle_says = oracle_exhaustive_decode(code, g, e, cap=args.oracle_cap)
            agree = agree and (rank_says == oracle_says)
            edges.append(
                {
                    "u": e.u,
                    "v": e.v,
                    "w": e.w,
                    "rank_criterion": rank_says,
                    "exhaustive": oracle_says,
                }
            )
    except OracleInfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    _emit({"agree": agree, "edges": edges}, args.output)
    return EXIT_OK if agree else EXIT_VERIFY_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="storagecode",
        description=(
            "Classify the storage capacity of source-labeled graphs and "
            "construct/verify the matching linear codes."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, seeded: bool = False) -> None:
        p.add_argument("-o", "--output", default=None, help="write JSON here instead of stdout")
        p.add_argument(
            "--path-limit",
            type=int,
            default=DEFAULT_PATH_LIMIT,
            help="maximum residing paths enumerated per internal edge",
        )
        if seeded:
            p.add_argument("--seed", type=int, default=None, help="64-bit RNG seed (default 0, with a warning)")
            p.add_argument(
                "--strict-thm4",
                action="store_true",
                help="require two specials on every residing path, even those with 1-color nodes",
            )

    p_analyze = sub.add_parser("analyze", help="structural report for a graph")
    p_analyze.add_argument("graph")
    common(p_analyze)
    p_analyze.set_defaults(func=cmd_analyze)

    p_classify = sub.add_parser("classify", help="capacity verdict for a graph")
    p_classify.add_argument("graph")
    common(p_classify, seeded=True)
    p_classify.set_defaults(func=cmd_classify)

    p_construct = sub.add_parser("construct", help="build a verified code")
    p_construct.add_argument("graph")
    p_construct.add_argument(
        "--rate",
        choices=["auto", "2", "3/2", "4/3"],
        default="auto",
        help="target rate; auto picks the best certified one",
    )
    common(p_construct, seeded=True)
    p_construct.set_defaults(func=cmd_construct)

    p_verify = sub.add_parser("verify", help="check a code against a graph")
    p_verify.add_argument("graph")
    p_verify.add_argument("code")
    p_verify.add_argument("--emit-decoder", action="store_true", help="include explicit per-edge decoders")
    p_verify.add_argument("--jobs", type=int, default=1, help="parallel edge checks (ordering unchanged)")
    common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_oracle = sub.add_parser("oracle", help="compare rank criterion with exhaustive decoding")
    p_oracle.add_argument("graph")
    p_oracle.add_argument("code")
    p_oracle.add_argument(
        "--oracle-cap",
        type=int,
        default=DEFAULT_ORACLE_CAP,
        help="maximum number of source vectors to enumerate",
    )
    common(p_oracle)
    p_oracle.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, CodeMismatchError, InapplicableError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except PathOverflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
