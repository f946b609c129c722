"""Command-line front end: classification runs, pair verification, graph
export, and polynomial reports, with stable machine-readable output.

Exit codes: 0 success, 1 verification failures present, 2 usage error,
3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass

from .folding import (
    FoldingInvolution,
    ValidationReport,
    _canonical_key,
    _orthogonal_involutions,
    candidate_from_json,
    classification_to_json,
    classify,
    pair_to_json,
    validate_candidate,
)
from .orbits import (
    build_graph,
    graph_to_dot,
    graph_to_json,
    poincare_triple,
    report_to_json,
    verify_pair,
)
from .root_system import build_dynkin, disjoint_union
from .weyl import DEFAULT_BUDGET, BudgetExceededError

_TYPE_RE = re.compile(r"^([A-G])([0-9]+)$")


@dataclass(frozen=True)
class RunConfig:
    command: str
    max_rank: int | None
    pair_selector: str | None
    output_format: str
    output_path: str | None
    budget: int


class UsageError(Exception):
    """Invalid configuration or an unresolvable selector."""


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _emit_json(obj, path: str | None) -> None:
    _emit(json.dumps(obj, sort_keys=True, indent=2) + "\n", path)


def _parse_type(text: str) -> tuple[str, int]:
    m = _TYPE_RE.match(text)
    if m is None:
        raise UsageError(f"malformed type {text!r}, expected e.g. A3 or E6")
    return m.group(1), int(m.group(2))


def _build_typed(letter: str, rank: int):
    try:
        return build_dynkin(letter, rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _resolve_pair(selector: str | None, budget: int) -> ValidationReport:
    """Turn a --pair selector into a validation report.

    Family keys ("A3_C2") must resolve to exactly one nontrivial fold;
    "identity:TYPE" and "diag:TYPE" build the trivial and component-swap
    candidates; a string starting with "{" is an explicit candidate JSON.
    Only the explicit forms can return a failing report.
    """
    if selector is None:
        raise UsageError("--pair is required")
    s = selector.strip()
    if s.startswith("{"):
        try:
            diagram, sigma = candidate_from_json(json.loads(s))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed candidate JSON: {exc}") from exc
        return validate_candidate(diagram, sigma, budget=budget)
    if s.startswith("identity:"):
        letter, rank = _parse_type(s[len("identity:"):])
        diagram = _build_typed(letter, rank)
        return validate_candidate(
            diagram, FoldingInvolution.identity(diagram), budget=budget
        )
    if s.startswith("diag:"):
        letter, rank = _parse_type(s[len("diag:"):])
        single = _build_typed(letter, rank)
        doubled = disjoint_union(single, single)
        swap = FoldingInvolution(
            tuple(list(range(rank, 2 * rank)) + list(range(rank)))
        )
        return validate_candidate(doubled, swap, budget=budget)
    if "_" in s:
        g_part, h_part = s.split("_", 1)
        g_letter, g_rank = _parse_type(g_part)
        h_letter, h_rank = _parse_type(h_part)
        diagram = _build_typed(g_letter, g_rank)
        hits: dict[tuple, ValidationReport] = {}
        for sigma in _orthogonal_involutions(diagram):
            if sigma.is_identity:
                continue
            report = validate_candidate(diagram, sigma, budget=budget)
            if (
                report.ok
                and report.pair is not None
                and report.pair.h_colored.diagram.type_label == f"{h_letter}{h_rank}"
            ):
                hits[_canonical_key(diagram.cartan, sigma.mapping)] = report
        if not hits:
            raise UsageError(f"no valid pair matches selector {selector!r}")
        if len(hits) > 1:
            raise UsageError(f"selector {selector!r} matches several pairs")
        return next(iter(hits.values()))
    raise UsageError(f"unrecognized pair selector {selector!r}")


def _require_valid(report: ValidationReport, selector: str | None):
    if not report.ok or report.pair is None:
        raise UsageError(
            f"selector {selector!r} fails validation at check "
            f"{report.failed_check} ({report.tag})"
        )
    return report.pair


def _sigma_text(pair) -> str:
    vertices = pair.g_diagram.vertices
    cycles = pair.sigma.two_cycles
    if not cycles:
        return "id"
    return " ".join(f"({vertices[i]} {vertices[j]})" for i, j in cycles)


def run_classify(cfg: RunConfig) -> int:
    if cfg.max_rank is None:
        raise UsageError("--max-rank is required")
    if cfg.output_format == "dot":
        raise UsageError("dot output is only available for the graph command")
    try:
        pairs = classify(cfg.max_rank, budget=cfg.budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if cfg.output_format == "json":
        _emit_json(classification_to_json(pairs), cfg.output_path)
    else:
        lines = [
            f"{p.g_diagram.type_label}  sigma={_sigma_text(p)}  ->  "
            f"{p.h_colored.diagram.type_label}  "
            f"black={{{','.join(p.h_colored.black) or ''}}}  family={p.family}"
            for p in pairs
        ]
        _emit("\n".join(lines) + "\n", cfg.output_path)
    return 0


def run_verify(cfg: RunConfig) -> int:
    if cfg.output_format == "dot":
        raise UsageError("dot output is only available for the graph command")
    report = _resolve_pair(cfg.pair_selector, cfg.budget)
    if not report.ok or report.pair is None:
        obj = {
            "selector": cfg.pair_selector,
            "ok": False,
            "validation": {"failed_check": report.failed_check, "tag": report.tag},
        }
        if cfg.output_format == "json":
            _emit_json(obj, cfg.output_path)
        else:
            _emit(
                f"candidate rejected at check {report.failed_check} "
                f"({report.tag})\n",
                cfg.output_path,
            )
        return 1
    result = verify_pair(report.pair, budget=cfg.budget)
    if cfg.output_format == "json":
        _emit_json(report_to_json(result), cfg.output_path)
    else:
        lines = [
            f"pair {result.pair.g_diagram.type_label} -> "
            f"{result.pair.h_colored.diagram.type_label}: "
            f"{result.orbit_count} orbits, Q={list(result.q)}"
        ]
        lines += [
            f"  {name}: {'pass' if passed else 'FAIL'}"
            for name, passed in result.checks
        ]
        _emit("\n".join(lines) + "\n", cfg.output_path)
    return 0 if result.ok else 1


def run_graph(cfg: RunConfig) -> int:
    report = _resolve_pair(cfg.pair_selector, cfg.budget)
    pair = _require_valid(report, cfg.pair_selector)
    graph = build_graph(pair, budget=cfg.budget)
    if cfg.output_format == "json":
        _emit_json(graph_to_json(graph), cfg.output_path)
    elif cfg.output_format == "dot":
        _emit(graph_to_dot(graph), cfg.output_path)
    else:
        names = pair.g_diagram.vertices
        lines = [
            f"{len(graph.vertices)} vertices, {len(graph.edges)} edges, "
            f"dims {graph.d_h}..{graph.d_g}"
        ]
        lines += [
            f"  c{lo}/d{graph.vertices[lo].dim} -> c{hi}/d{graph.vertices[hi].dim}"
            f"  [{names[j]}]"
            for lo, hi, j in graph.edges
        ]
        _emit("\n".join(lines) + "\n", cfg.output_path)
    return 0


def run_poincare(cfg: RunConfig) -> int:
    if cfg.output_format == "dot":
        raise UsageError("dot output is only available for the graph command")
    report = _resolve_pair(cfg.pair_selector, cfg.budget)
    pair = _require_valid(report, cfg.pair_selector)
    p_g, p_h, q, identity_ok = poincare_triple(pair, budget=cfg.budget)
    if cfg.output_format == "json":
        _emit_json(
            {
                "pair": pair_to_json(pair),
                "P_G": list(p_g),
                "P_H": list(p_h),
                "Q": list(q),
                "factorization_ok": identity_ok,
            },
            cfg.output_path,
        )
    else:
        _emit(
            f"P_G = {list(p_g)}\nP_H = {list(p_h)}\nQ   = {list(q)}\n"
            f"Q * P_H == P_G: {identity_ok}\n",
            cfg.output_path,
        )
    return 0 if identity_ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minrank",
        description="Classify Dynkin foldings of minimal rank and explore "
        "their orbit graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, with_pair: bool) -> None:
        p.add_argument(
            "--format",
            choices=("json", "dot", "text"),
            default="json",
            help="output format (default json)",
        )
        p.add_argument("--out", metavar="PATH", help="write output to PATH")
        p.add_argument(
            "--budget",
            type=int,
            default=None,
            metavar="N",
            help="Weyl group element budget (default from MINRANK_BUDGET "
            f"or {DEFAULT_BUDGET})",
        )
        if with_pair:
            p.add_argument(
                "--pair",
                required=True,
                metavar="SELECTOR",
                help="family key like A3_C2, identity:TYPE, diag:TYPE, "
                "or explicit candidate JSON",
            )

    p = sub.add_parser("classify", help="emit the classification up to a rank")
    p.add_argument("--max-rank", type=int, required=True, metavar="N")
    add_common(p, with_pair=False)
    for name, text in (
        ("verify", "run every structural check on one pair"),
        ("graph", "export the orbit graph of one pair"),
        ("poincare", "emit (P_G, P_H, Q) for one pair"),
    ):
        p = sub.add_parser(name, help=text)
        add_common(p, with_pair=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        budget = ns.budget
        if budget is None:
            raw = os.environ.get("MINRANK_BUDGET")
            if raw is None:
                budget = DEFAULT_BUDGET
            else:
                try:
                    budget = int(raw)
                except ValueError as exc:
                    raise UsageError(
                        f"MINRANK_BUDGET must be an integer, got {raw!r}"
                    ) from exc
        cfg = RunConfig(
            command=ns.command,
            max_rank=getattr(ns, "max_rank", None),
            pair_selector=getattr(ns, "pair", None),
            output_format=ns.format,
            output_path=ns.out,
            budget=budget,
        )
        runner = {
            "classify": run_classify,
            "verify": run_verify,
            "graph": run_graph,
            "poincare": run_poincare,
        }[cfg.command]
        return runner(cfg)
    except UsageError as exc:
        print(f"minrank: {exc}", file=sys.stderr)
        return 2
    except BudgetExceededError as exc:
        print(f"minrank: {exc}", file=sys.stderr)
        return 3


def run() -> None:
    sys.exit(main())
