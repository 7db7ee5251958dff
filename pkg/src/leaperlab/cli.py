"""Command-line interface. Every command prints JSON carrying a top-level ``"schema": 1``.

Exit codes: 0 on success or a passing verification, 1 on a verification
failure (including basis mismatches and saturated searches), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, fields
from pathlib import Path

from . import checks, render
from .board import standard_board
from .leaper import Leaper, classify, descent, ecf, parent_and_type, tails, tree_children, tree_enumerate
from .lineage import offsets, r_lineages, sl_lineages, verify_perfect_lineage, w_lineages
from .properties import (
    Basis,
    Pattern,
    brute_force_basis,
    default_caps,
    diff_bases,
    journey_property,
    pattern_property,
    property_for,
    theorem_basis,
    w_boards,
)

SCHEMA = 1
KINDS = ("I", "C", "E", "B", "R", "W", "R_half")


class UsageError(Exception):
    pass


def _emit(payload: dict, out=None) -> str:
    text = json.dumps({"schema": SCHEMA, **payload}, indent=2, sort_keys=True) + "\n"
    (out or sys.stdout).write(text)
    return text


def _pair(leaper: Leaper) -> list[int]:
    return [leaper.p, leaper.q]


def _leaper(p: int, q: int) -> Leaper:
    if q <= 0 or p < 0:
        raise UsageError(f"leaper parameters must satisfy 0 <= p and 0 < q, got ({p},{q})")
    return Leaper(p, q)


# ---------------------------------------------------------------- info and tree


def cmd_info(args) -> int:
    leaper = _leaper(args.p, args.q)
    c = classify(leaper)
    payload = {
        "leaper": _pair(leaper),
        "classification": {"kind": c.kind, "gcd": c.gcd, "components": c.component_count},
        "skew": leaper.is_skew,
        "ecf": None,
        "depth": None,
        "tails": None,
        "descent": None,
        "children": None,
        "parent": None,
    }
    if leaper.is_skew and c.kind in ("free", "half-free"):
        e = ecf(leaper)
        parent = parent_and_type(leaper)
        payload.update(
            ecf={"coefficients": list(e.coefficients), "signs": list(e.signs), "text": str(e)},
            depth=e.depth,
            tails=[_pair(t) for t in tails(leaper)],
            descent=descent(leaper),
            children={t: _pair(child) for t, child in zip("fgh", tree_children(leaper))},
            parent=None if parent is None else {"leaper": _pair(parent[0]), "transformation": parent[1]},
        )
    _emit(payload)
    return 0


def cmd_tree(args) -> int:
    if args.bound < 3:
        raise UsageError("the bound on p + q must be at least 3")
    entries = tree_enumerate(args.bound, half_free=args.half_free)
    _emit(
        {
            "bound": args.bound,
            "half_free": args.half_free,
            "leapers": [
                {"leaper": _pair(e.leaper), "depth": e.depth, "descent": e.descent, "ecf": str(e.ecf)} for e in entries
            ],
        }
    )
    return 0


# ---------------------------------------------------------------- bases


def _parse_property(text: str, leaper: Leaper):
    """Returns the property and its closed-form basis (None when there is none)."""
    if text.startswith("pattern:"):
        try:
            cells = [tuple(int(v) for v in item.split(",")) for item in text[len("pattern:"):].split(";") if item]
            pattern = Pattern.of(cells)
        except ValueError:
            raise UsageError(f"cannot parse {text!r}; expected pattern:x,y;x,y;...") from None
        if any(len(c) != 2 for c in cells):
            raise UsageError(f"cannot parse {text!r}; expected pattern:x,y;x,y;...")
        theorem = None
        if leaper.is_skew and classify(leaper).kind == "free":
            if pattern == Pattern.of([(0, 0), (0, 1)]):
                theorem = lambda: Basis(tuple(w_boards(leaper)))
            elif pattern == Pattern.of([(0, 0), (1, 0)]):
                theorem = lambda: Basis(tuple((n, m) for m, n in w_boards(leaper)))
        return pattern_property(pattern, leaper), theorem
    if text.startswith("journey:"):
        try:
            r, s = (int(v) for v in text[len("journey:"):].split(","))
        except ValueError:
            raise UsageError(f"cannot parse {text!r}; expected journey:r,s") from None
        mover = _leaper(r, s)
        theorem = None
        if (mover.p, mover.q) == (0, 1) and leaper.is_skew and classify(leaper).kind == "free":
            theorem = lambda: theorem_basis("W", leaper)
        return journey_property(mover, leaper), theorem
    if text not in KINDS:
        raise UsageError(f"unknown property {text!r}; choose from {', '.join(KINDS)}, pattern:..., journey:...")

    def theorem():
        return theorem_basis(text, leaper)

    return property_for(text, leaper), theorem


def _basis_json(basis: Basis) -> dict:
    return {"boards": [list(s) for s in basis.sizes], "saturated": basis.saturated, "text": str(basis)}


def cmd_basis(args) -> int:
    leaper = _leaper(args.p, args.q)
    prop, theorem = _parse_property(args.property, leaper)
    caps = args.caps or default_caps(leaper)
    payload: dict = {"leaper": _pair(leaper), "property": prop.name, "mode": args.mode}
    predicted = observed = None
    if args.mode in ("theorem", "both"):
        if theorem is None:
            raise UsageError(f"no closed-form basis for {prop.name} and {leaper}")
        try:
            predicted = theorem()
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        payload["theorem"] = _basis_json(predicted)
    if args.mode in ("oracle", "both"):
        observed = brute_force_basis(prop, caps, caps)
        payload["caps"] = [caps, caps]
        payload["oracle"] = _basis_json(observed)
    code = 0
    if predicted is not None and observed is not None:
        diff = diff_bases(predicted, observed)
        payload["diff"] = diff.to_json()
        payload["match"] = diff.equal
        code = diff.exit_code
    elif observed is not None and observed.saturated:
        code = 1
    _emit(payload)
    return code


# ---------------------------------------------------------------- lineages


def cmd_lineage(args) -> int:
    root = _leaper(args.p, args.q)
    build = {"SL": sl_lineages, "R": r_lineages, "W": w_lineages}[args.kind]
    try:
        lineages = build(root, args.depth)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = []
    passed = True
    for lin in lineages:
        report = verify_perfect_lineage(lin, args.depth)
        passed = passed and report.passed
        w, z = offsets(lin, args.depth)
        out.append(
            {
                "root_cells": len(lin.graph.vertices),
                "offsets": [w, z],
                "nodes": [
                    {
                        "leaper": _pair(node.leaper),
                        "depth": node.depth,
                        "board": [node.board.m, node.board.n],
                        "vertices": len(node.graph.vertices),
                        "edges": len(node.graph.edges),
                        "parent": None if node.parent is None else _pair(node.parent),
                        "transformation": node.transformation,
                    }
                    for node in lin.nodes(args.depth)
                ],
                "verified": report.passed,
                "violations": report.violations,
            }
        )
    _emit({"root": _pair(root), "kind": args.kind, "depth": args.depth, "lineages": out, "passed": passed})
    return 0 if passed else 1


# ---------------------------------------------------------------- rendering


def cmd_render(args) -> int:
    leaper = _leaper(args.p, args.q)
    if args.m < 1 or args.n < 1:
        raise UsageError("board sizes must be positive")
    board = standard_board(args.m, args.n)
    try:
        if args.walk:
            svg = render.render_walk(leaper, board, render.parse_walk(Path(args.walk).read_text()))
        elif args.angular:
            svg = render.render_angular(leaper, board)
        elif args.clovers:
            svg = render.render_clovers(leaper, board)
        else:
            svg = render.render_components(leaper, board)
    except (render.RenderError, OSError) as exc:
        raise UsageError(str(exc)) from None
    if args.output:
        Path(args.output).write_text(svg)
        _emit({"leaper": _pair(leaper), "board": [board.m, board.n], "output": args.output})
    else:
        sys.stdout.write(svg)
    return 0


# ---------------------------------------------------------------- verification


def _parse_pairs(value: str) -> tuple:
    try:
        return tuple(tuple(int(v) for v in item.split(",")) for item in value.split())
    except ValueError:
        raise UsageError(f"cannot parse leaper list {value!r}; expected 'p,q p,q ...'") from None


def load_config(path: str | None) -> checks.Config:
    """Read a key = value file; blank lines and lines starting with # are ignored."""
    config = checks.Config()
    if path:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
        known = {f.name: f for f in fields(checks.Config)}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"config line {lineno}: expected key = value")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in known:
                raise UsageError(f"config line {lineno}: unknown key {key!r}")
            if key in ("leapers", "half_free", "lineage_roots"):
                setattr(config, key, _parse_pairs(value))
            elif key == "output_dir":
                config.output_dir = value
            else:
                try:
                    setattr(config, key, int(value))
                except ValueError:
                    raise UsageError(f"config line {lineno}: {key} needs an integer") from None
    env = os.environ.get("LEAPERLAB_THREADS")
    if env:
        try:
            config.threads = max(1, int(env))
        except ValueError:
            raise UsageError("LEAPERLAB_THREADS must be an integer") from None
    return config


def cmd_verify(args) -> int:
    config = load_config(args.config)
    start = time.perf_counter()
    results = checks.run_suite(args.suite, config)
    elapsed = time.perf_counter() - start
    failed = [r["name"] for r in results if not r["passed"]]
    settings = asdict(config)
    # parallelism and output location do not change the content of the report
    settings.pop("threads")
    settings.pop("output_dir")
    payload = {
        "suite": args.suite,
        "config": settings,
        "checks": results,
        "passed": not failed,
        "failed": failed,
        "summary": {"total": len(results), "passed": len(results) - len(failed), "failed": len(failed)},
    }
    text = _emit(payload)
    if args.output:
        Path(args.output).write_text(text)
    if args.timing:
        print(f"suite {args.suite}: {elapsed:.2f}s", file=sys.stderr)
    for name in failed:
        print(f"FAILED {name}", file=sys.stderr)
    return 0 if not failed else 1


# ---------------------------------------------------------------- entry point


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="leaperlab", description="Leaper graphs, minimal boards and lineage verification.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("info", help="classification, ecf, tails and tree position of a leaper")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("tree", help="list the descent tree up to a bound on p + q")
    p.add_argument("--bound", type=int, default=20)
    p.add_argument("--half-free", action="store_true")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("basis", help="minimal boards of a monotone property")
    p.add_argument("property", help="I, C, E, B, R, W, R_half, pattern:x,y;x,y... or journey:r,s")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--caps", type=int, default=None, help="search caps for both sides (default 3(p+q))")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--oracle", dest="mode", action="store_const", const="oracle")
    mode.add_argument("--theorem", dest="mode", action="store_const", const="theorem")
    mode.add_argument("--both", dest="mode", action="store_const", const="both")
    p.set_defaults(func=cmd_basis, mode="both")

    p = sub.add_parser("lineage", help="build and verify the lineages of a leaper")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--kind", choices=("SL", "R", "W"), default="SL")
    p.add_argument("--depth", type=int, default=3)
    p.set_defaults(func=cmd_lineage)

    p = sub.add_parser("render", help="draw a leaper graph as SVG")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    style = p.add_mutually_exclusive_group()
    style.add_argument("--components", action="store_true")
    style.add_argument("--angular", action="store_true")
    style.add_argument("--clovers", action="store_true")
    style.add_argument("--walk", metavar="FILE", help="file with one 'x y' pair per line")
    p.add_argument("-o", "--output", help="write the SVG here instead of stdout")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=("lemmas", "bases", "lineages", "clovers", "all"), default="all")
    p.add_argument("--config", help="key = value configuration file")
    p.add_argument("-o", "--output", help="also write the JSON report here")
    p.add_argument("--timing", action="store_true", help="print the elapsed time to stderr")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"leaperlab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
