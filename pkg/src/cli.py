"""
Command line for the K3,3 saturation toolkit.

JSON (or graph6/CSV) goes to stdout, logs to stderr. Exit codes:
0 success, 1 property violated, 2 usage or validation error,
3 budget exhausted before a verdict, 4 internal error.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from src.core.config import (
    CERTIFICATE_DIR,
    DEFAULT_SEED,
    LOG_LEVEL,
    SEARCH_MAX_NODES,
    SEARCH_MAX_TIME,
    SEARCH_THREADS,
    SPLIT_DEPTH,
    get_config,
    validate_config,
)
from src.tools import analyze_tool, construct_tool, sat_tool, table_tool, verify_tool
from src.utils.utils import error_payload, is_error_payload, parse_duration, safe_json_response

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4


def _emit(payload: Dict[str, Any]) -> None:
    print(safe_json_response(payload))


def _error_exit(payload: Dict[str, Any]) -> int:
    _emit(payload)
    return EXIT_USAGE if payload.get("type") == "validation_error" else EXIT_INTERNAL


def _read_g6_file(path: str) -> str:
    """The single graph6 line of a file, or of stdin for ``-``."""
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(path).read_text(encoding="ascii")
        except (OSError, UnicodeDecodeError) as e:
            logger.error(f"Cannot read graph6 file '{path}': {e}")
            raise ValueError(f"Cannot read graph6 file '{path}': {e}")

    lines = [line.strip() for line in text.splitlines() if line.strip() and not line.startswith("#")]
    if len(lines) != 1:
        logger.error(f"Expected exactly one graph6 line in '{path}', found {len(lines)}")
        raise ValueError(f"Expected exactly one graph6 line in '{path}', found {len(lines)}")
    return lines[0]


def _graph_input(args: argparse.Namespace) -> Dict[str, Optional[str]]:
    g6 = args.g6
    if args.g6_file is not None:
        g6 = _read_g6_file(args.g6_file)
    return {"g6": g6, "construction": args.construct}


def _vertex_choice(text: str) -> Optional[int]:
    if text == "auto":
        return None
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a vertex index or 'auto', got '{text}'")


def _duration(text: str) -> float:
    try:
        return parse_duration(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        source = _graph_input(args)
    except ValueError as e:
        return _error_exit(error_payload("Invalid input", str(e), "validation_error"))

    certificate_dir = None if args.no_certificate else args.certificate_dir
    payload = verify_tool.verify(pattern=args.pattern, threads=args.threads,
                                 certificate_dir=certificate_dir, **source)
    if is_error_payload(payload):
        return _error_exit(payload)
    _emit(payload)
    return EXIT_OK if payload["saturated"] else EXIT_VIOLATED


def cmd_sat(args: argparse.Namespace) -> int:
    payload = sat_tool.compute_sat(
        args.n, args.pattern,
        max_nodes=args.max_nodes, max_time=args.max_time, threads=args.threads,
        seed=args.seed, split_depth=args.split_depth, checkpoint=args.checkpoint,
        upper_only=args.upper_only, edge_cap=args.edge_cap,
    )
    if is_error_payload(payload):
        return _error_exit(payload)
    _emit(payload)
    return EXIT_BUDGET if payload["status"] == "BudgetExceeded" else EXIT_OK


_CONFIRM_EXIT = {
    "Confirmed": EXIT_OK,
    "RefutedWithWitness": EXIT_VIOLATED,
    "Unwitnessed": EXIT_VIOLATED,
    "Inconclusive": EXIT_BUDGET,
}


def cmd_confirm(args: argparse.Namespace) -> int:
    payload = sat_tool.confirm_sat(
        args.n, args.claimed, args.pattern,
        max_nodes=args.max_nodes, max_time=args.max_time, threads=args.threads,
        seed=args.seed, split_depth=args.split_depth, checkpoint=args.checkpoint,
    )
    if is_error_payload(payload):
        return _error_exit(payload)
    _emit(payload)
    return _CONFIRM_EXIT[payload["status"]]


def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        source = _graph_input(args)
    except ValueError as e:
        return _error_exit(error_payload("Invalid input", str(e), "validation_error"))

    payload = analyze_tool.analyze(vertex=args.vertex, **source)
    if is_error_payload(payload):
        return _error_exit(payload)
    _emit(payload)

    audit = payload.get("prop31")
    if not payload["identities_hold"] or (audit is not None and not audit["passed"]):
        logger.error("Analysis found a violated identity or audit")
        return EXIT_VIOLATED
    return EXIT_OK


def cmd_table(args: argparse.Namespace) -> int:
    payload = table_tool.build_table(args.pattern, args.n_from, args.n_to)
    if is_error_payload(payload):
        return _error_exit(payload)

    if args.format == "csv":
        sys.stdout.write(payload["csv"])
    elif args.format == "text":
        print(payload["text"])
    else:
        _emit({key: payload[key] for key in ("pattern", "from", "to", "rows")})
    return EXIT_OK


def cmd_construct(args: argparse.Namespace) -> int:
    payload = construct_tool.build(args.name, verify=args.verify)
    if is_error_payload(payload):
        return _error_exit(payload)

    logger.info(f"{payload['name']}: n={payload['n']}, {payload['edges']} edges")
    if args.emit == "g6":
        print(payload["graph6"])
    else:
        _emit(payload)
    return EXIT_VIOLATED if payload["saturated"] is False else EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    from src import server

    server.main()
    return EXIT_OK


def _add_graph_input(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--g6", help="graph in graph6 format")
    group.add_argument("--g6-file", help="file holding one graph6 line ('-' for stdin)")
    group.add_argument("--construct", metavar="NAME", help="named construction: gn:N, ehm:N,K, edge-join-cycle:N, small:N")


def _add_pattern(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--pattern", "-p", default="3,3", help="part sizes s1,...,sr (default: 3,3)")


def _add_budget(parser: argparse.ArgumentParser) -> None:
    budget = parser.add_argument_group(title="Search budget")
    budget.add_argument("--max-nodes", type=int, default=SEARCH_MAX_NODES, help="node budget")
    budget.add_argument("--max-time", type=_duration, default=SEARCH_MAX_TIME, help="time budget: 90, 1s, 5m, 2h")
    budget.add_argument("--threads", type=int, default=SEARCH_THREADS, help="worker processes")
    budget.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for the greedy sampler")
    budget.add_argument("--split-depth", type=int, default=SPLIT_DEPTH, help="tree depth at which work is split")
    budget.add_argument("--checkpoint", type=Path, default=None, help="frontier checkpoint file to write and resume from")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sat-k33", description="Saturation numbers of complete multipartite graphs")
    subparsers = parser.add_subparsers(dest="command", required=True)

    verify = subparsers.add_parser("verify", help="decide whether a graph is saturated")
    _add_graph_input(verify)
    _add_pattern(verify)
    verify.add_argument("--threads", type=int, default=1, help="worker processes for the non-edge checks")
    verify.add_argument("--certificate-dir", type=Path, default=CERTIFICATE_DIR, help="where certificates are written")
    verify.add_argument("--no-certificate", action="store_true", help="do not write a certificate")
    verify.set_defaults(handler=cmd_verify)

    sat = subparsers.add_parser("sat", help="compute sat(n, pattern)")
    sat.add_argument("-n", type=int, required=True, help="number of vertices")
    _add_pattern(sat)
    _add_budget(sat)
    sat.add_argument("--edge-cap", type=int, default=None, help="only search graphs with at most this many edges")
    sat.add_argument("--upper-only", action="store_true", help="constructions and greedy runs only")
    sat.set_defaults(handler=cmd_sat)

    confirm = subparsers.add_parser("confirm", help="confirm or refute a claimed sat(n, pattern)")
    confirm.add_argument("-n", type=int, required=True, help="number of vertices")
    confirm.add_argument("--claimed", type=int, required=True, help="claimed saturation number")
    _add_pattern(confirm)
    _add_budget(confirm)
    confirm.set_defaults(handler=cmd_confirm)

    analyze = subparsers.add_parser("analyze", help="minimum-degree partition, charges and audits")
    _add_graph_input(analyze)
    analyze.add_argument("--vertex", "--min-degree-vertex", dest="vertex", type=_vertex_choice, default=None,
                         help="minimum-degree root vertex, or 'auto' (default)")
    analyze.set_defaults(handler=cmd_analyze)

    table = subparsers.add_parser("table", help="known values and bounds over a range of n")
    _add_pattern(table)
    table.add_argument("--from", dest="n_from", type=int, required=True, help="first n")
    table.add_argument("--to", dest="n_to", type=int, required=True, help="last n (inclusive)")
    table.add_argument("--format", choices=["csv", "text", "json"], default="csv", help="output format")
    table.set_defaults(handler=cmd_table)

    construct = subparsers.add_parser("construct", help="build a named construction")
    construct.add_argument("name", help="gn:N, ehm:N,K, edge-join-cycle:N or small:N")
    construct.add_argument("--emit", choices=["g6", "json"], default="json", help="output format")
    construct.add_argument("--verify", action="store_true", help="check saturation of the built graph")
    construct.set_defaults(handler=cmd_construct)

    serve = subparsers.add_parser("serve", help="run the MCP server on stdio")
    serve.set_defaults(handler=cmd_serve)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point; returns the process exit code."""
    logging.basicConfig(
        level=getattr(logging, LOG_LEVEL, logging.INFO),
        stream=sys.stderr,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )

    try:
        validate_config()
    except Exception as e:
        logger.error(f"Configuration validation failed: {e}")
        return EXIT_USAGE
    logger.debug(f"Configuration: {get_config()}")

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except KeyboardInterrupt:
        logger.info("Interrupted")
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
