"""Lifting transformations on boards, cells, edges, graphs and closed walks.

Lifting by t in {f, g, h} sends a leaper L on a board A to the leaper t(L) on
the board grown by a margin on every side. Each cell of A is matched with the
eight lifted edges of an octagon around it, and each lifted edge with two cells.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .board import Board, Cell, cell_key
from .graph import (
    AngleType,
    Edge,
    LeaperGraph,
    Matrix,
    angle_type,
    is_move,
    norm_edge,
)
from .leaper import KNIGHT, WAZIR, Leaper, lift_leaper, parent_and_type

LIFT_MATRICES: dict[str, Matrix] = {
    "f": (1, 0, -2, 1),
    "g": (2, -1, 1, 0),
    "h": (-2, 1, 1, 0),
}

# octagon corners in cycle order; consecutive corners span a matched edge and
# walking forward turns counterclockwise by 135 degrees each step
OCTAGON = ("E", "NW", "S", "NE", "W", "SE", "N", "SW")


@dataclass(frozen=True)
class LiftParams:
    transformation: str
    lat: int
    dia: int

    @property
    def mar(self) -> int:
        return min(self.lat, self.dia)

    @property
    def lifted(self) -> Leaper:
        return Leaper(self.dia, self.lat + self.dia)


def lift_params(t: str, leaper: Leaper) -> LiftParams:
    p, q = leaper.p, leaper.q
    if t == "f":
        return LiftParams(t, p + q, p)
    if t == "g":
        return LiftParams(t, q - p, q)
    if t == "h":
        return LiftParams(t, p + q, q)
    raise ValueError(f"unknown transformation {t!r}")


def lower_leaper(t: str, upper: Leaper) -> Leaper:
    """The leaper L with t(L) = upper."""
    if upper == KNIGHT and t in ("g", "h"):
        return WAZIR
    step = parent_and_type(upper)
    if step is None or step[1] != t:
        raise ValueError(f"{upper} is not the image of any leaper under {t}")
    return step[0]


def lift_board(t: str, leaper: Leaper, board: Board) -> Board:
    return board.expand(lift_params(t, leaper).mar)


def lower_board(t: str, upper: Leaper, board: Board) -> Board:
    mar = lift_params(t, lower_leaper(t, upper)).mar
    if board.m <= 2 * mar or board.n <= 2 * mar:
        raise ValueError(f"board {board} is too small to lower: both sides must exceed {2 * mar}")
    return board.expand(-mar)


def octagon(t: str, leaper: Leaper, a: Cell) -> dict[str, Cell]:
    lp = lift_params(t, leaper)
    lat, dia = lp.lat, lp.dia
    x, y = a
    return {
        "E": (x + lat, y),
        "NE": (x + dia, y + dia),
        "N": (x, y + lat),
        "NW": (x - dia, y + dia),
        "W": (x - lat, y),
        "SW": (x - dia, y - dia),
        "S": (x, y - lat),
        "SE": (x + dia, y - dia),
    }


def octagon_cycle(t: str, leaper: Leaper, a: Cell) -> list[Cell]:
    oc = octagon(t, leaper, a)
    return [oc[k] for k in OCTAGON]


def matched_edges(t: str, leaper: Leaper, a: Cell, board: Board | None = None) -> list[Edge]:
    cyc = octagon_cycle(t, leaper, a)
    out = []
    for i in range(8):
        u, v = cyc[i], cyc[(i + 1) % 8]
        if board is None or (u in board and v in board):
            out.append(norm_edge(u, v))
    return out


def are_matched(t: str, leaper: Leaper, a: Cell, e: Edge) -> bool:
    """Definition-level test: one endpoint is a lateral step from a, the other a diagonal step."""
    lp = lift_params(t, leaper)

    def lateral(c):
        d = (abs(c[0] - a[0]), abs(c[1] - a[1]))
        return d in ((lp.lat, 0), (0, lp.lat))

    def diagonal(c):
        return abs(c[0] - a[0]) == lp.dia and abs(c[1] - a[1]) == lp.dia

    u, v = e
    return (lateral(u) and diagonal(v)) or (lateral(v) and diagonal(u))


def matched_cells(t: str, leaper: Leaper, e: Edge) -> tuple[Cell, Cell]:
    lp = lift_params(t, leaper)
    if not is_move(lp.lifted, *e):
        raise ValueError(f"{e} is not an edge of {lp.lifted}")
    found = set()
    for b, other in (e, e[::-1]):
        for dx, dy in ((lp.lat, 0), (-lp.lat, 0), (0, lp.lat), (0, -lp.lat)):
            c = (b[0] - dx, b[1] - dy)
            if abs(other[0] - c[0]) == lp.dia and abs(other[1] - c[1]) == lp.dia:
                found.add(c)
    if len(found) != 2:
        raise AssertionError(f"edge {e} matched with {len(found)} cells")
    a1, a2 = sorted(found, key=cell_key)
    return a1, a2


def cross_edge(t: str, leaper: Leaper, e: Edge) -> Edge:
    """The unique lifted edge matched with both endpoints of an edge of the leaper."""
    u, v = e
    if not is_move(leaper, u, v):
        raise ValueError(f"{e} is not an edge of {leaper}")
    common = set(matched_edges(t, leaper, u)) & set(matched_edges(t, leaper, v))
    if len(common) != 1:
        raise AssertionError(f"edge {e} has {len(common)} cross-edge candidates")
    return common.pop()


def cross_edge_inverse(t: str, leaper: Leaper, e: Edge) -> Edge:
    a1, a2 = matched_cells(t, leaper, e)
    return norm_edge(a1, a2)


def lift_cells(t: str, leaper: Leaper, board: Board, cells: Iterable[Cell]) -> frozenset:
    big = lift_board(t, leaper, board)
    return frozenset(e for a in cells for e in matched_edges(t, leaper, a, big))


def lift_graph(t: str, g: LeaperGraph) -> LeaperGraph:
    big = lift_board(t, g.leaper, g.board)
    edges = lift_cells(t, g.leaper, g.board, g.vertices)
    return LeaperGraph.build(lift_params(t, g.leaper).lifted, big, (), edges)


def lower_cells(t: str, upper: Leaper, board: Board, edges: Iterable[Edge]) -> frozenset:
    lower = lower_leaper(t, upper)
    small = lower_board(t, upper, board)
    return frozenset(a for e in edges for a in matched_cells(t, lower, e) if a in small)


def lower_graph(t: str, h: LeaperGraph) -> LeaperGraph:
    lower = lower_leaper(t, h.leaper)
    small = lower_board(t, h.leaper, h.board)
    return LeaperGraph.induced(lower, small, lower_cells(t, h.leaper, h.board, h.edges))


def core(t: str, upper: Leaper, a: Cell, b1: Cell, b2: Cell) -> Cell:
    """The unique cell matched with both edges of an acute angle of the lifted leaper."""
    if not angle_type(a, b1, b2).is_acute:
        raise ValueError("core is defined for acute angles only")
    lower = lower_leaper(t, upper)
    common = set(matched_cells(t, lower, (a, b1))) & set(matched_cells(t, lower, (a, b2)))
    if len(common) != 1:
        raise AssertionError("acute angle without a unique core")
    return common.pop()


@dataclass(frozen=True)
class MatchedWalk:
    """A closed walk alpha of L and a matched closed walk beta of the lifted leaper.

    Both walks repeat their first cell at the end. ``segments`` gives the
    number of cells of beta belonging to each cell of alpha, in order.
    """

    transformation: str
    lower: Leaper
    alpha: tuple[Cell, ...]
    beta: tuple[Cell, ...]
    segments: tuple[int, ...]


def is_angular_closed(walk: Sequence[Cell]) -> bool:
    """Closed walk whose consecutive edges, including last-to-first, meet at zero or acute angles."""
    if len(walk) < 3 or walk[0] != walk[-1]:
        return False
    k = len(walk) - 1
    for i in range(k):
        a = walk[i]
        prev = walk[i - 1] if i else walk[k - 1]
        nxt = walk[i + 1]
        kind = angle_type(a, prev, nxt)
        if not (kind is AngleType.ZERO or kind.is_acute):
            return False
    return True


def _octagon_path(cyc: list[Cell], on_board: list[bool], src: Cell, dst: Cell) -> list[Cell] | None:
    """Shortest path along the on-board octagon edges; ties go forward (counterclockwise)."""
    i, j = cyc.index(src), cyc.index(dst)
    if i == j:
        return [src]
    best = None
    for direction in (1, -1):
        path = [src]
        k = i
        ok = True
        while k != j:
            edge_index = k if direction == 1 else (k - 1) % 8
            if not on_board[edge_index]:
                ok = False
                break
            k = (k + direction) % 8
            path.append(cyc[k])
        if ok and (best is None or len(path) < len(best)):
            best = path
    return best


def lift_closed_walk(t: str, leaper: Leaper, board: Board, alpha: Sequence[Cell]) -> MatchedWalk:
    alpha = tuple(alpha)
    if len(alpha) < 3 or alpha[0] != alpha[-1]:
        raise ValueError("alpha must be a closed walk with at least one move")
    if any(c not in board for c in alpha):
        raise ValueError("alpha leaves the board")
    if t == "f" and not is_angular_closed(alpha):
        raise ValueError("lifting by f needs an angular-closed walk")
    big = lift_board(t, leaper, board)
    k = len(alpha) - 1
    cells = alpha[:-1]
    crosses = [cross_edge(t, leaper, (cells[i], cells[(i + 1) % k])) for i in range(k)]
    octs = []
    for a in cells:
        cyc = octagon_cycle(t, leaper, a)
        octs.append((cyc, [cyc[i] in big and cyc[(i + 1) % 8] in big for i in range(8)]))

    def connector(i, o_in, o_out):
        # segment i enters through the far end of cross-edge i-1 and leaves through cross-edge i
        src = crosses[i - 1][1 - o_in]
        dst = crosses[i][o_out]
        return _octagon_path(octs[i][0], octs[i][1], src, dst)

    best = None
    for o_last in (0, 1):
        # dynamic programme over the orientation of each cross-edge
        layer = {o_last: (0, [])}
        for i in range(k):
            nxt = {}
            outs = (o_last,) if i == k - 1 else (0, 1)
            for o_out in outs:
                for o_in, (cost, segs) in sorted(layer.items()):
                    path = connector(i, o_in, o_out)
                    if path is None:
                        continue
                    cand = (cost + len(path), segs + [path])
                    if o_out not in nxt or cand[0] < nxt[o_out][0]:
                        nxt[o_out] = cand
            layer = nxt
        if o_last in layer and (best is None or layer[o_last][0] < best[0]):
            best = layer[o_last]
    if best is None:
        raise ValueError("no connector path inside the lifted board")
    segs = best[1]
    beta = tuple(c for seg in segs for c in seg) + (segs[0][0],)
    return MatchedWalk(t, leaper, alpha, beta, tuple(len(s) for s in segs))


def walks_matched(t: str, leaper: Leaper, alpha: Sequence[Cell], beta: Sequence[Cell], segments: Sequence[int]) -> bool:
    """Check the matched-walk definition directly, independent of how beta was built."""
    alpha, beta = list(alpha), list(beta)
    if len(alpha) < 2 or alpha[0] != alpha[-1] or beta[0] != beta[-1]:
        return False
    k = len(alpha) - 1
    if len(segments) != k or sum(segments) != len(beta) - 1 or min(segments) < 1:
        return False
    upper = lift_params(t, leaper).lifted
    for u, v in zip(alpha, alpha[1:]):
        if not is_move(leaper, u, v):
            return False
    for u, v in zip(beta, beta[1:]):
        if not is_move(upper, u, v):
            return False
    starts = [sum(segments[:i]) for i in range(k)]
    for i in range(k):
        a = alpha[i]
        seg = beta[starts[i]:starts[i] + segments[i]]
        for u, v in zip(seg, seg[1:]):
            if not are_matched(t, leaper, a, (u, v)):
                return False
        nxt_start = beta[starts[i] + segments[i]]
        cross = (seg[-1], nxt_start)
        if not (are_matched(t, leaper, alpha[i], cross) and are_matched(t, leaper, alpha[i + 1], cross)):
            return False
    return True


def lower_closed_walk(t: str, upper: Leaper, board: Board, beta: Sequence[Cell]) -> MatchedWalk | None:
    """Find a closed walk matched with a cyclic shift of an angular-closed walk beta.

    Returns None when at most one cell is the core of beta's angles, in which
    case beta is balanced. The shift chosen is the first one, in walk order,
    that begins right after a cross-edge.
    """
    beta = tuple(beta)
    if not is_angular_closed(beta):
        raise ValueError("beta must be an angular-closed walk")
    lower = lower_leaper(t, upper)
    small = lower_board(t, upper, board)
    k = len(beta) - 1
    edges = [(beta[i], beta[i + 1]) for i in range(k)]
    # core of the angle between edge i-1 and edge i, at cell beta[i]
    cores: list[Cell | None] = [None] * k
    for i in range(k):
        prev = beta[i - 1] if i else beta[k - 1]
        if angle_type(beta[i], prev, beta[i + 1]).is_acute:
            cores[i] = core(t, upper, beta[i], prev, beta[i + 1])
    if all(c is None for c in cores):
        return None
    first = next(i for i in range(k) if cores[i] is not None)
    for step in range(1, k):
        i = (first + step) % k
        if cores[i] is None:
            cores[i] = cores[i - 1]
    if any(c not in small for c in cores):
        raise AssertionError("a core falls outside the lowered board")
    if len(set(cores)) < 2:
        return None
    # edge i lies between the angles at beta[i] and beta[i+1]; it is a cross-edge when the cores differ
    changes = [i for i in range(k) if cores[i] != cores[(i + 1) % k]]
    start = (changes[0] + 1) % k
    shifted = [beta[(start + j) % k] for j in range(k)] + [beta[start]]
    core_seq = [cores[(start + j) % k] for j in range(k)]
    alpha = [core_seq[0]]
    segments = [1]
    for j in range(1, k):
        if core_seq[j] == alpha[-1]:
            segments[-1] += 1
        else:
            alpha.append(core_seq[j])
            segments.append(1)
    alpha.append(alpha[0])
    return MatchedWalk(t, lower, tuple(alpha), tuple(shifted), tuple(segments))
