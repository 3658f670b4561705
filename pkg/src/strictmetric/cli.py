"""Command-line interface.

Exit codes: 0 computed verdict, 2 input error, 3 budget exceeded,
4 internal invariant violation.  Errors go to stderr as one JSON line.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .certificates import builtin_certificates, load_certificates, verify_certificate
from .config import Budgets, load_budgets
from .errors import BudgetExceeded, Graph6Error, InternalInvariantError, InvalidInput, StrictMetricError
from .graph import Graph, edge, graph_from_json, parse_graph6, read_graph6_lines
from .metric import (
    NON_STRICT,
    STRICT,
    build_constraints,
    feasibility,
    fraction_from_str,
    induced_system,
    realize_zero_on_persistent,
)
from .paths import PathSystem, check_consistent
from .scan import conjecture_scan
from .sm import BUDGET, decide_sm_graph
from .structure import classify_structure, minor, topological_minor
from .zoo import named_graph

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_INTERNAL = 0, 2, 3, 4


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path} is not valid JSON: {exc}") from exc


def load_graph(arg: str) -> Graph:
    """A graph from a JSON file, a graph6 file, a graph6 string or a name."""
    p = Path(arg)
    if p.is_file():
        if p.suffix == ".json":
            obj = _read_json(arg)
            return graph_from_json(obj["graph"] if isinstance(obj, dict) and "graph" in obj else obj)
        lines = [ln for ln in p.read_text().splitlines() if ln.strip()]
        if not lines:
            raise InvalidInput(f"{arg} contains no graph")
        return parse_graph6(lines[0])
    try:
        return parse_graph6(arg)
    except Graph6Error:
        try:
            return named_graph(arg)
        except KeyError:
            pass
        raise


def load_system(arg: str) -> PathSystem:
    return PathSystem.from_json(_read_json(arg))


def _budgets(args) -> Budgets:
    b = load_budgets(args.config)
    return b.updated(enumeration=args.enum_budget, path_cap=args.path_cap,
                     search=args.search_budget, systems=args.systems_budget)


# ---------------------------------------------------------------------------
# subcommands

def cmd_check_consistency(args) -> int:
    s = load_system(args.system)
    v = check_consistent(s)
    out = {"consistent": v is None}
    if v is not None:
        out["violation"] = {"first": list(v.first), "second": list(v.second), "reason": v.reason}
    _emit(out)
    return EXIT_OK


def cmd_decide_sm(args) -> int:
    g = load_graph(args.graph)
    v = decide_sm_graph(g, _budgets(args), use_zoo=not args.no_zoo)
    out = v.to_json()
    if args.witness_out and v.witness is not None:
        Path(args.witness_out).write_text(json.dumps(v.witness.to_json()) + "\n")
        out["witness_file"] = args.witness_out
    _emit(out)
    return EXIT_BUDGET if v.status == BUDGET else EXIT_OK


def _parse_edges(text: Optional[str]) -> list:
    if not text:
        return []
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        parts = tok.replace("-", " ").replace(":", " ").split()
        if len(parts) != 2:
            raise InvalidInput(f"bad edge {tok!r}; use u-v")
        out.append(edge(int(parts[0]), int(parts[1])))
    return out


def cmd_decide_system(args) -> int:
    s = load_system(args.system)
    comparison = NON_STRICT if args.metric else STRICT
    c = build_constraints(s, comparison, _parse_edges(args.zero_edges), _budgets(args).path_cap)
    res = feasibility(c)
    _emit(res.to_json())
    return EXIT_OK


def cmd_realize_zero(args) -> int:
    s = load_system(args.system)
    z = realize_zero_on_persistent(s, _budgets(args).path_cap)
    out = {"feasible": z.feasible, "persistent": [list(e) for e in sorted(z.persistent)]}
    if z.feasible:
        out["weights"] = z.weights.to_json()["weights"]
        out["inductive_weights"] = z.inductive_weights.to_json()["weights"]
    else:
        out["farkas"] = z.direct.to_json()["farkas"]
    _emit(out)
    return EXIT_OK


def cmd_classify(args) -> int:
    _emit(classify_structure(load_graph(args.graph)).to_json())
    return EXIT_OK


def cmd_find_minor(args) -> int:
    g = load_graph(args.graph)
    h = load_graph(args.target)
    budget = _budgets(args).search
    if args.topological:
        model = topological_minor(g, h, budget)
    else:
        model = minor(g, h, budget)
    _emit({"found": model is not None, "kind": "topological" if args.topological else "minor",
           "model": model.to_json() if model is not None else None})
    return EXIT_OK


def cmd_verify_certificates(args) -> int:
    certs = load_certificates(Path(args.file).read_text()) if args.file else builtin_certificates()
    reports = [verify_certificate(c) for c in certs]
    passed = sum(r.passed for r in reports)
    _emit({"passed": passed, "total": len(reports), "reports": [r.to_json() for r in reports]})
    return EXIT_OK


def cmd_conjecture_scan(args) -> int:
    if args.stream == "-":
        lines = sys.stdin.read().splitlines()
    else:
        try:
            lines = Path(args.stream).read_text().splitlines()
        except OSError as exc:
            raise InvalidInput(f"cannot read {args.stream}: {exc.strerror}") from exc
    # validate up front so a bad stream fails before any work
    list(read_graph6_lines(lines))
    summary = conjecture_scan(lines, _budgets(args), Path(args.out), args.workers, args.timings)
    _emit(summary.to_json())
    return EXIT_OK


def cmd_induced(args) -> int:
    g = load_graph(args.graph)
    obj = _read_json(args.weights)
    items = obj["weights"] if isinstance(obj, dict) else obj
    try:
        w = {edge(int(u), int(v)): fraction_from_str(x) for u, v, x in items}
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed weights: {exc}") from exc
    r = induced_system(g, w, args.allow_negative, _budgets(args).path_cap)
    out = {"kind": r.kind}
    if r.kind == "system":
        out["system"] = r.system.to_json()
    elif r.kind == "tie":
        out["pair"] = list(r.pair)
        out["tied"] = [list(p) for p in r.tied]
    else:
        out["violation"] = {"first": list(r.violation.first), "second": list(r.violation.second),
                            "reason": r.violation.reason}
    _emit(out)
    return EXIT_OK


# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInput(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="TOML file with a [budgets] table")
    common.add_argument("--enum-budget", type=int, help="node expansions per system enumeration")
    common.add_argument("--path-cap", type=int, help="simple paths per vertex pair")
    common.add_argument("--search-budget", type=int, help="states per minor search")
    common.add_argument("--systems-budget", type=int, help="systems examined per block")

    ap = _Parser(prog="strictmetric", description="Consistent path systems and strict metrizability.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check-consistency", parents=[common])
    p.add_argument("system")
    p.set_defaults(func=cmd_check_consistency)

    p = sub.add_parser("decide-sm", parents=[common])
    p.add_argument("graph")
    p.add_argument("--witness-out")
    p.add_argument("--no-zoo", action="store_true", help="plain enumeration only")
    p.set_defaults(func=cmd_decide_sm)

    p = sub.add_parser("decide-system", parents=[common])
    p.add_argument("system")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--strict", action="store_true", default=True)
    mode.add_argument("--metric", action="store_true")
    p.add_argument("--zero-edges", help="comma-separated edges forced to weight 0, e.g. 2-3,0-4")
    p.set_defaults(func=cmd_decide_system)

    p = sub.add_parser("realize-zero", parents=[common])
    p.add_argument("system")
    p.set_defaults(func=cmd_realize_zero)

    p = sub.add_parser("classify", parents=[common])
    p.add_argument("graph")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("find-minor", parents=[common])
    p.add_argument("graph")
    p.add_argument("--target", required=True)
    p.add_argument("--topological", action="store_true")
    p.set_defaults(func=cmd_find_minor)

    p = sub.add_parser("verify-certificates", parents=[common])
    p.add_argument("--file", help="certificate JSON (defaults to the built-in set)")
    p.set_defaults(func=cmd_verify_certificates)

    p = sub.add_parser("conjecture-scan", parents=[common])
    p.add_argument("stream", help="graph6 file, or - for stdin")
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timings", action="store_true", help="add per-phase durations (breaks byte-identical reruns)")
    p.set_defaults(func=cmd_conjecture_scan)

    p = sub.add_parser("induced", parents=[common])
    p.add_argument("graph")
    p.add_argument("--weights", required=True)
    p.add_argument("--allow-negative", action="store_true")
    p.set_defaults(func=cmd_induced)
    return ap


def _fail(kind: str, exc: BaseException, code: int) -> int:
    print(json.dumps({"error": kind, "type": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
    return code


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    except InvalidInput as exc:
        return _fail("input", exc, EXIT_INPUT)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        return _fail("budget", exc, EXIT_BUDGET)
    except InternalInvariantError as exc:
        return _fail("internal", exc, EXIT_INTERNAL)
    except (InvalidInput, Graph6Error, StrictMetricError, KeyError, OSError) as exc:
        return _fail("input", exc, EXIT_INPUT)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
