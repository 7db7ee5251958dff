"""Leaper graphs on boards and their analytics.

Cells are plain ``(x, y)`` tuples. Edges are stored as ordered pairs whose
first cell precedes the second in the canonical row-major order, so each
undirected edge has exactly one representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

from .board import Board, Cell, bbox, cell_key, standard_board
from .leaper import Leaper
from .projection import ProjectionComponent, ProjectionGraph, classify_weave, component_of

Edge = tuple[Cell, Cell]
Matrix = tuple[int, int, int, int]  # row-major 2x2

ZERO: Matrix = (0, 0, 0, 0)


def norm_edge(u: Cell, v: Cell) -> Edge:
    return (u, v) if cell_key(u) < cell_key(v) else (v, u)


def is_move(leaper: Leaper, u: Cell, v: Cell) -> bool:
    dx, dy = abs(u[0] - v[0]), abs(u[1] - v[1])
    return (dx, dy) in ((leaper.p, leaper.q), (leaper.q, leaper.p))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3])


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return (
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    )


def mat_apply(a: Matrix, v: tuple[int, int]) -> tuple[int, int]:
    return a[0] * v[0] + a[1] * v[1], a[2] * v[0] + a[3] * v[1]


def direction_matrix(leaper: Leaper, u: Cell, v: Cell) -> Matrix:
    """The matrix M with v - u = M (p, q)^T for a single move of a skew leaper."""
    if not leaper.is_skew:
        raise ValueError("direction matrices need a skew leaper")
    dx, dy = v[0] - u[0], v[1] - u[1]
    sx = 1 if dx > 0 else -1
    sy = 1 if dy > 0 else -1
    if abs(dx) == leaper.p and abs(dy) == leaper.q:
        return (sx, 0, 0, sy)
    if abs(dx) == leaper.q and abs(dy) == leaper.p:
        return (0, sx, sy, 0)
    raise ValueError(f"{u} -> {v} is not a move of {leaper}")


def phi(leaper: Leaper, walk: Sequence[Cell]) -> Matrix:
    total = ZERO
    for u, v in zip(walk, walk[1:]):
        total = mat_add(total, direction_matrix(leaper, u, v))
    return total


def is_balanced(leaper: Leaper, walk: Sequence[Cell]) -> bool:
    if walk and walk[0] != walk[-1]:
        raise ValueError("walk is not closed")
    return phi(leaper, walk) == ZERO


class AngleType(Enum):
    ZERO = "zero"
    LATERALLY_ACUTE = "laterally-acute"
    DIAGONALLY_ACUTE = "diagonally-acute"
    RIGHT = "right"
    LATERALLY_OBTUSE = "laterally-obtuse"
    DIAGONALLY_OBTUSE = "diagonally-obtuse"
    STRAIGHT = "straight"

    @property
    def is_acute(self) -> bool:
        return self in (AngleType.LATERALLY_ACUTE, AngleType.DIAGONALLY_ACUTE)


def _classify_vectors(d1: tuple[int, int], d2: tuple[int, int]) -> AngleType:
    if d1 == d2:
        return AngleType.ZERO
    if d1 == (-d2[0], -d2[1]):
        return AngleType.STRAIGHT
    dot = d1[0] * d2[0] + d1[1] * d2[1]
    if dot == 0:
        return AngleType.RIGHT
    lateral = d1[0] == d2[0] or d1[1] == d2[1]
    diagonal = abs(d1[0] - d2[0]) == abs(d1[1] - d2[1])
    if lateral:
        return AngleType.LATERALLY_ACUTE if dot > 0 else AngleType.LATERALLY_OBTUSE
    if diagonal:
        return AngleType.DIAGONALLY_ACUTE if dot > 0 else AngleType.DIAGONALLY_OBTUSE
    raise ValueError(f"vectors {d1} and {d2} do not belong to one leaper")


@lru_cache(maxsize=None)
def _angle_table(p: int, q: int) -> dict:
    moves = Leaper(p, q).moves()
    return {(d1, d2): _classify_vectors(d1, d2) for d1 in moves for d2 in moves}


def angle_type(a: Cell, b1: Cell, b2: Cell) -> AngleType:
    d1 = (b1[0] - a[0], b1[1] - a[1])
    d2 = (b2[0] - a[0], b2[1] - a[1])
    s1 = sorted((abs(d1[0]), abs(d1[1])))
    s2 = sorted((abs(d2[0]), abs(d2[1])))
    if s1 != s2 or s1[1] == 0:
        raise ValueError("the two edges are not moves of one leaper")
    return _angle_table(s1[0], s1[1])[d1, d2]


@dataclass(frozen=True, eq=False)
class LeaperGraph:
    leaper: Leaper
    board: Board
    vertices: frozenset
    edges: frozenset

    def __post_init__(self):
        for u, v in self.edges:
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"edge {u}-{v} has an endpoint outside the vertex set")
            if not is_move(self.leaper, u, v):
                raise ValueError(f"{u}-{v} is not a move of {self.leaper}")
            if cell_key(u) >= cell_key(v):
                raise ValueError("edges must be normalized; use LeaperGraph.build")
        for c in self.vertices:
            if c not in self.board:
                raise ValueError(f"vertex {c} lies outside the board")

    @classmethod
    def build(cls, leaper: Leaper, board: Board, vertices: Iterable[Cell] = (), edges: Iterable[Edge] = ()) -> LeaperGraph:
        """Construct a graph, adding edge endpoints to the vertex set."""
        es = frozenset(norm_edge(u, v) for u, v in edges)
        vs = set(vertices)
        for u, v in es:
            vs.add(u)
            vs.add(v)
        return cls(leaper, board, frozenset(vs), es)

    @classmethod
    def induced(cls, leaper: Leaper, board: Board, cells: Iterable[Cell]) -> LeaperGraph:
        vs = frozenset(cells)
        es = set()
        for u in vs:
            for dx, dy in leaper.moves():
                v = (u[0] + dx, u[1] + dy)
                if v in vs:
                    es.add(norm_edge(u, v))
        return cls(leaper, board, vs, frozenset(es))

    def __eq__(self, other):
        if not isinstance(other, LeaperGraph):
            return NotImplemented
        return (self.leaper, self.board, self.vertices, self.edges) == (other.leaper, other.board, other.vertices, other.edges)

    def __hash__(self):
        return hash((self.leaper, self.board, self.vertices, self.edges))

    def __repr__(self):
        return f"LeaperGraph({self.leaper}, {self.board}, |V|={len(self.vertices)}, |E|={len(self.edges)})"

    @cached_property
    def adjacency(self) -> dict[Cell, tuple[Cell, ...]]:
        adj: dict[Cell, list[Cell]] = {c: [] for c in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return {c: tuple(sorted(ns, key=cell_key)) for c, ns in adj.items()}

    def degree(self, c: Cell) -> int:
        return len(self.adjacency[c])

    def sorted_vertices(self) -> list[Cell]:
        return sorted(self.vertices, key=cell_key)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges, key=lambda e: (cell_key(e[0]), cell_key(e[1])))

    def isolated_vertices(self) -> list[Cell]:
        return [c for c in self.sorted_vertices() if not self.adjacency[c]]

    def with_board(self, board: Board) -> LeaperGraph:
        return LeaperGraph(self.leaper, board, self.vertices, self.edges)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g


def complete_graph(leaper: Leaper, board: Board) -> LeaperGraph:
    return LeaperGraph.induced(leaper, board, board.cells())


def _bfs_order(adj: dict[Cell, Sequence[Cell]], start: Cell, seen: set) -> list[Cell]:
    order = [start]
    seen.add(start)
    i = 0
    while i < len(order):
        for v in adj[order[i]]:
            if v not in seen:
                seen.add(v)
                order.append(v)
        i += 1
    return order


def components(g: LeaperGraph) -> list[LeaperGraph]:
    """Connected components, ordered by their least vertex."""
    adj = g.adjacency
    seen: set = set()
    out = []
    for c in g.sorted_vertices():
        if c in seen:
            continue
        vs = frozenset(_bfs_order(adj, c, seen))
        es = frozenset(e for v in vs for e in (norm_edge(v, w) for w in adj[v]))
        out.append(LeaperGraph(g.leaper, g.board, vs, es))
    return out


def is_connected(g: LeaperGraph) -> bool:
    if not g.vertices:
        return False
    start = next(iter(g.vertices))
    return len(_bfs_order(g.adjacency, start, set())) == len(g.vertices)


def is_nontrivially_connected(g: LeaperGraph) -> bool:
    return len(g.vertices) >= 2 and is_connected(g)


def is_biconnected(g: LeaperGraph) -> bool:
    return len(g.vertices) >= 3 and nx.is_biconnected(g.to_networkx())


def _unbalanced_in_component(leaper: Leaper, adj, start: Cell, seen: set) -> bool:
    zeta = {start: ZERO}
    seen.add(start)
    stack = [start]
    while stack:
        u = stack.pop()
        zu = zeta[u]
        for v in adj[u]:
            step = mat_add(zu, direction_matrix(leaper, u, v))
            if v not in zeta:
                zeta[v] = step
                seen.add(v)
                stack.append(v)
            elif zeta[v] != step:
                return True
    return False


def is_directionally_rigid(g: LeaperGraph) -> bool:
    """True iff some fundamental cycle of a spanning forest has a nonzero direction sum.

    The check visits every edge in both directions against the spanning-tree
    potentials; an edge is consistent exactly when its fundamental cycle is balanced.
    """
    adj = g.adjacency
    seen: set = set()
    for c in g.sorted_vertices():
        if c not in seen and _unbalanced_in_component(g.leaper, adj, c, seen):
            return True
    return False


def directional_potentials(g: LeaperGraph) -> dict[Cell, Matrix]:
    """Direction sums of tree paths from each component's least vertex.

    Raises ValueError when the graph is directionally rigid.
    """
    adj = g.adjacency
    zeta: dict[Cell, Matrix] = {}
    for c in g.sorted_vertices():
        if c in zeta:
            continue
        zeta[c] = ZERO
        stack = [c]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                step = mat_add(zeta[u], direction_matrix(g.leaper, u, v))
                if v not in zeta:
                    zeta[v] = step
                    stack.append(v)
                elif zeta[v] != step:
                    raise ValueError("graph is directionally rigid")
    return zeta


def proportional(a: Leaper, b: Leaper) -> bool:
    return a.p * b.q == a.q * b.p


def transfer_map(g: LeaperGraph, target: Leaper | None = None) -> tuple[dict[Cell, Cell], LeaperGraph]:
    """Carry a directionally flexible graph over to another leaper, preserving directions.

    Each cell is sent to zeta(cell) (r, s)^T, where zeta is the direction sum of
    a tree path from its component's root. Components are placed side by side.
    When ``target`` is None the first non-proportional skew free leaper (by
    parameter sum) without collisions is used. Returns the cell map and the image.
    """
    zeta = directional_potentials(g)
    if target is None:
        from .leaper import tree_enumerate

        for entry in tree_enumerate(4 * (g.leaper.p + g.leaper.q) + 20):
            if proportional(entry.leaper, g.leaper):
                continue
            try:
                return transfer_map(g, entry.leaper)
            except ValueError:
                continue
        raise ValueError("no collision-free target found")
    if not target.is_skew:
        raise ValueError("target leaper must be skew")
    r, s = target.p, target.q
    image: dict[Cell, Cell] = {}
    shift = 0
    for comp in components(g):
        local = {c: mat_apply(zeta[c], (r, s)) for c in comp.vertices}
        lo = min(x for x, _ in local.values())
        hi = max(x for x, _ in local.values())
        for c, (x, y) in local.items():
            image[c] = (x - lo + shift, y)
        shift += hi - lo + 2 * s + 1
    if len(set(image.values())) != len(image):
        raise ValueError(f"cells collide under transfer to {target}")
    edges = [(image[u], image[v]) for u, v in g.edges]
    board = bbox(image.values()) if image else g.board
    return image, LeaperGraph.build(target, board, image.values(), edges)


def transfer(g: LeaperGraph, target: Leaper | None = None) -> LeaperGraph:
    return transfer_map(g, target)[1]


def completions(g: LeaperGraph, board: Board | None = None) -> tuple[ProjectionComponent, ProjectionComponent]:
    """The x- and y-completions of a connected graph on its board."""
    board = board or g.board
    p, q = g.leaper.p, g.leaper.q
    if not g.vertices:
        raise ValueError("empty graph has no completions")
    c = next(iter(g.vertices))
    cx = component_of(ProjectionGraph(p, q, board.x_min, board.x_max), c[0])
    cy = component_of(ProjectionGraph(p, q, board.y_min, board.y_max), c[1])
    xs = set(cx.vertices)
    ys = set(cy.vertices)
    if any(v[0] not in xs or v[1] not in ys for v in g.vertices):
        raise ValueError("graph projections span several projection components")
    return cx, cy


@dataclass(frozen=True)
class ComponentClass:
    singleton: bool
    vertical_weave: bool
    horizontal_weave: bool

    @property
    def label(self) -> str:
        if self.singleton:
            return "singleton"
        if self.vertical_weave and self.horizontal_weave:
            return "horizontal-vertical-weave"
        if self.vertical_weave:
            return "vertical-weave"
        if self.horizontal_weave:
            return "horizontal-weave"
        return "non-weave"

    @property
    def is_weave(self) -> bool:
        return self.vertical_weave or self.horizontal_weave


def classify_component(d: LeaperGraph, board: Board | None = None) -> ComponentClass:
    cx, cy = completions(d, board)
    return ComponentClass(
        len(d.vertices) == 1,
        classify_weave(cx).is_weave,
        classify_weave(cy).is_weave,
    )


def _acute_pairs(g: LeaperGraph, lateral_only: bool = False):
    """Yield pairs of edges meeting at an acute (or laterally acute) angle."""
    table = _angle_table(g.leaper.p, g.leaper.q)
    for a, nbrs in g.adjacency.items():
        for b1, b2 in combinations(nbrs, 2):
            kind = table[(b1[0] - a[0], b1[1] - a[1]), (b2[0] - a[0], b2[1] - a[1])]
            if kind is AngleType.LATERALLY_ACUTE or (not lateral_only and kind is AngleType.DIAGONALLY_ACUTE):
                yield norm_edge(a, b1), norm_edge(a, b2)


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def groups(self) -> list[list]:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


def _edge_classes(g: LeaperGraph, lateral_only: bool) -> list[list[Edge]]:
    uf = _UnionFind(g.edges)
    for e1, e2 in _acute_pairs(g, lateral_only):
        uf.union(e1, e2)
    classes = [sorted(grp, key=lambda e: (cell_key(e[0]), cell_key(e[1]))) for grp in uf.groups()]
    classes.sort(key=lambda es: (cell_key(es[0][0]), cell_key(es[0][1])))
    return classes


def angular_components(g: LeaperGraph) -> list[LeaperGraph]:
    """Partition of the edge set into angular components, each as a graph on its endpoints."""
    return [LeaperGraph.build(g.leaper, g.board, (), es) for es in _edge_classes(g, False)]


def is_angular(g: LeaperGraph) -> bool:
    if g.isolated_vertices():
        raise ValueError("angularity is defined for graphs without isolated vertices")
    return len(g.edges) > 0 and len(_edge_classes(g, False)) == 1


def zigzags(g: LeaperGraph) -> list[list[Cell]]:
    """Maximal paths whose angles are all laterally acute, each as its cell sequence."""
    out = []
    for es in _edge_classes(g, True):
        sub = LeaperGraph.build(g.leaper, g.board, (), es)
        ends = [c for c in sub.sorted_vertices() if sub.degree(c) == 1]
        start = ends[0] if ends else sub.sorted_vertices()[0]
        path = [start]
        prev = None
        while True:
            nxt = [v for v in sub.adjacency[path[-1]] if v != prev and v != start]
            if not nxt:
                break
            prev = path[-1]
            path.append(nxt[0])
        out.append(path)
    return out


def wazir_neighbourly_components(g: LeaperGraph) -> list[LeaperGraph]:
    out = []
    for comp in components(g):
        vs = comp.vertices
        if any((x + 1, y) in vs or (x, y + 1) in vs for x, y in vs):
            out.append(comp)
    return out


def wazir_journey_exists(g: LeaperGraph) -> bool:
    return bool(wazir_neighbourly_components(g))


def is_connected_component(g: LeaperGraph) -> bool:
    """Whether g is exactly one connected component of the complete graph on its board."""
    if not g.vertices or not is_connected(g):
        return False
    start = min(g.vertices, key=cell_key)
    seen = {start}
    stack = [start]
    moves = g.leaper.moves()
    edges = set()
    while stack:
        u = stack.pop()
        for dx, dy in moves:
            v = (u[0] + dx, u[1] + dy)
            if v in g.board:
                edges.add(norm_edge(u, v))
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
    return seen == g.vertices and edges == g.edges


def _canonical_shape(cells: Iterable[Cell]) -> tuple[Cell, ...]:
    cells = sorted(cells, key=cell_key)
    ax, ay = cells[0]
    return tuple((x - ax, y - ay) for x, y in cells)


@dataclass(frozen=True)
class CloverClass:
    """Clovers on the (p+q)-square that are translation copies of one another."""

    shape: tuple[Cell, ...]
    members: tuple[LeaperGraph, ...]

    @property
    def size(self) -> int:
        return len(self.members)


def clovers(leaper: Leaper) -> list[CloverClass]:
    """Cycles of the complete graph on the standard square of side p + q, grouped by translation."""
    side = leaper.p + leaper.q
    g = complete_graph(leaper, standard_board(side, side))
    groups: dict[tuple, list[LeaperGraph]] = {}
    for comp in components(g):
        if len(comp.vertices) < 2:
            continue
        if any(comp.degree(c) != 2 for c in comp.vertices):
            raise ValueError(f"component {comp} is not a cycle")
        groups.setdefault(_canonical_shape(comp.vertices), []).append(comp)
    out = [CloverClass(shape, tuple(ms)) for shape, ms in groups.items()]
    out.sort(key=lambda c: (len(c.shape), c.shape))
    return out


def admits_hamiltonian_cycle(leaper: Leaper, cells: Iterable[Cell], cutoff: int = 64) -> bool | None:
    """Whether the cells carry a Hamiltonian cycle of the leaper; None when above the cutoff.

    Fast path: an induced graph that is connected and 2-regular is its own
    Hamiltonian cycle. Otherwise a plain backtracking search is run.
    """
    cells = frozenset(cells)
    k = len(cells)
    if k < 3:
        return False
    g = LeaperGraph.induced(leaper, bbox(cells), cells)
    adj = g.adjacency
    if any(len(ns) < 2 for ns in adj.values()):
        return False
    if all(len(ns) == 2 for ns in adj.values()):
        return is_connected(g)
    if k > cutoff:
        return None
    if not is_connected(g):
        return False
    start = min(cells, key=cell_key)
    path = [start]
    on_path = {start}

    def extend() -> bool:
        if len(path) == k:
            return start in adj[path[-1]]
        for v in adj[path[-1]]:
            if v not in on_path:
                path.append(v)
                on_path.add(v)
                if extend():
                    return True
                on_path.discard(path.pop())
        return False

    return extend()

