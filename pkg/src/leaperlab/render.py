"""Deterministic SVG drawings of leaper graphs.

Cell (x, y) sits at a fixed pitch with y growing upwards. Each highlighted
group (component, angular component, clover class or walk) gets one stroke
colour from a fixed palette, cycling when there are more groups than colours.
"""

from __future__ import annotations

from typing import Sequence

from .board import Board, Cell
from .graph import LeaperGraph, angular_components, complete_graph, components, is_move, _canonical_shape
from .leaper import Leaper

PITCH = 20
MARGIN = 20
MAX_PIXELS = 4000
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22")
GRID = "#dddddd"
BASE_EDGE = "#cccccc"


class RenderError(ValueError):
    pass


def _coords(board: Board, c: Cell) -> tuple[int, int]:
    return MARGIN + (c[0] - board.x_min) * PITCH, MARGIN + (board.y_max - c[1]) * PITCH


def _grid(board: Board) -> list[str]:
    out = ['<g class="grid" stroke="%s" stroke-width="1">' % GRID]
    for x in range(board.x_min, board.x_max + 1):
        x0, y0 = _coords(board, (x, board.y_max))
        _, y1 = _coords(board, (x, board.y_min))
        out.append(f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}"/>')
    for y in range(board.y_min, board.y_max + 1):
        x0, y0 = _coords(board, (board.x_min, y))
        x1, _ = _coords(board, (board.x_max, y))
        out.append(f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}"/>')
    out.append("</g>")
    return out


def _edge_group(board: Board, edges, colour: str, name: str, width: int = 2) -> list[str]:
    out = [f'<g class="{name}" stroke="{colour}" stroke-width="{width}" fill="none">']
    for u, v in edges:
        x0, y0 = _coords(board, u)
        x1, y1 = _coords(board, v)
        out.append(f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}"/>')
    out.append("</g>")
    return out


def _vertex_group(board: Board, cells, colour: str, name: str) -> list[str]:
    out = [f'<g class="{name}" fill="{colour}">']
    for c in cells:
        x, y = _coords(board, c)
        out.append(f'<circle cx="{x}" cy="{y}" r="3"/>')
    out.append("</g>")
    return out


def _document(board: Board, body: list[str]) -> str:
    width = 2 * MARGIN + (board.n - 1) * PITCH
    height = 2 * MARGIN + (board.m - 1) * PITCH
    head = f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">'
    return "\n".join([head, f'<rect width="{width}" height="{height}" fill="white"/>', *body, "</svg>"]) + "\n"


def check_budget(board: Board, max_pixels: int = MAX_PIXELS) -> None:
    if max(board.m, board.n) * PITCH + 2 * MARGIN > max_pixels:
        raise RenderError(f"board {board} exceeds the {max_pixels}px drawing budget")


def _groups_svg(g: LeaperGraph, groups: Sequence[LeaperGraph | list]) -> str:
    board = g.board
    body = _grid(board)
    for i, grp in enumerate(groups):
        edges = grp.sorted_edges() if isinstance(grp, LeaperGraph) else grp
        body += _edge_group(board, edges, PALETTE[i % len(PALETTE)], f"group group-{i}")
    body += _vertex_group(board, g.sorted_vertices(), "#333333", "vertices")
    return _document(board, body)


def render_components(leaper: Leaper, board: Board) -> str:
    """One stroke group per non-singleton connected component."""
    check_budget(board)
    g = complete_graph(leaper, board)
    return _groups_svg(g, [c for c in components(g) if len(c.vertices) > 1])


def render_angular(leaper: Leaper, board: Board) -> str:
    """One stroke group per angular component of the complete graph."""
    check_budget(board)
    g = complete_graph(leaper, board)
    return _groups_svg(g, angular_components(g) if g.edges else [])


def render_clovers(leaper: Leaper, board: Board) -> str:
    """Components coloured by translation class; on the (p+q)-square these are the clover classes."""
    check_budget(board)
    g = complete_graph(leaper, board)
    classes: dict[tuple, list] = {}
    for c in components(g):
        if len(c.vertices) > 1:
            classes.setdefault(_canonical_shape(c.vertices), []).extend(c.sorted_edges())
    ordered = [classes[k] for k in sorted(classes, key=lambda s: (len(s), s))]
    return _groups_svg(g, ordered)


def parse_walk(text: str) -> list[Cell]:
    cells = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise RenderError(f"walk line {lineno}: expected 'x y'")
        cells.append((int(parts[0]), int(parts[1])))
    return cells


def render_walk(leaper: Leaper, board: Board, walk: Sequence[Cell]) -> str:
    """The complete graph in grey with the walk drawn on top as a single group."""
    check_budget(board)
    for c in walk:
        if c not in board:
            raise RenderError(f"walk cell {c} lies outside the board")
    for u, v in zip(walk, walk[1:]):
        if not is_move(leaper, u, v):
            raise RenderError(f"{u}-{v} is not a move of {leaper}")
    g = complete_graph(leaper, board)
    body = _grid(board)
    body += _edge_group(board, g.sorted_edges(), BASE_EDGE, "base", 1)
    body += _edge_group(board, list(zip(walk, walk[1:])), PALETTE[0], "group group-0", 3)
    body += _vertex_group(board, g.sorted_vertices(), "#333333", "vertices")
    return _document(board, body)
