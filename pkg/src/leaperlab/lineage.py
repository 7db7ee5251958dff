"""Lineages: boards and graphs propagated down a subtree of the descent tree by lifting."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .board import Board, standard_board
from .graph import (
    LeaperGraph,
    admits_hamiltonian_cycle,
    classify_component,
    complete_graph,
    completions,
    components,
    is_connected_component,
    is_directionally_rigid,
    wazir_neighbourly_components,
)
from .leaper import KNIGHT, TRANSFORMATIONS, WAZIR, Leaper, classify, ecf, lift_leaper, parent_and_type, tails
from .lifting import lift_graph, lower_graph
from .projection import classify_weave


@dataclass(frozen=True)
class LineageNode:
    leaper: Leaper
    board: Board
    graph: LeaperGraph
    depth: int
    parent: Leaper | None = None
    transformation: str | None = None


@dataclass
class Lineage:
    """A lineage rooted at a skew free leaper (perfect subtree) or at the wazir.

    The wazir root is followed by the knight on the grown board and then by the
    whole descent tree. Nodes are built on demand and cached.
    """

    root: Leaper
    board: Board
    graph: LeaperGraph
    kind: str = "perfect"
    depth_limit: int = 3
    _nodes: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._nodes[self.root] = LineageNode(self.root, self.board, self.graph, 0)

    @property
    def root_node(self) -> LineageNode:
        return self._nodes[self.root]

    def arrows(self, leaper: Leaper) -> tuple[str, ...]:
        if leaper == WAZIR:
            return ("g",)
        if leaper == self.root:
            return ("g", "h")
        return TRANSFORMATIONS

    def _path_from_root(self, target: Leaper) -> list[str]:
        letters = []
        cur = target
        while cur != self.root:
            if cur == KNIGHT and self.root == WAZIR:
                letters.append("g")
                cur = WAZIR
                continue
            step = parent_and_type(cur)
            if step is None:
                raise ValueError(f"{target} is not in the subtree of {self.root}")
            cur, t = step
            letters.append(t)
        if letters and self.root != WAZIR and letters[-1] == "f":
            raise ValueError(f"{target} lies outside the perfect subtree of {self.root}")
        return letters[::-1]

    def node(self, target: Leaper) -> LineageNode:
        if target in self._nodes:
            return self._nodes[target]
        cur = self.root_node
        for t in self._path_from_root(target):
            child = lift_leaper(cur.leaper, t)
            if child not in self._nodes:
                g = lift_graph(t, cur.graph)
                self._nodes[child] = LineageNode(child, g.board, g, cur.depth + 1, cur.leaper, t)
            cur = self._nodes[child]
        return cur

    def children(self, node: LineageNode) -> list[LineageNode]:
        return [self.node(lift_leaper(node.leaper, t)) for t in self.arrows(node.leaper)]

    def nodes(self, depth_limit: int | None = None) -> list[LineageNode]:
        """Nodes in breadth-first order down to the depth limit."""
        limit = self.depth_limit if depth_limit is None else depth_limit
        out = [self.root_node]
        frontier = [self.root_node]
        for _ in range(limit):
            frontier = [c for n in frontier for c in self.children(n)]
            out.extend(frontier)
        return out

    def override(self, leaper: Leaper, graph: LeaperGraph) -> None:
        """Replace the graph stored at a node; meant for negative controls."""
        self._nodes[leaper] = replace(self.node(leaper), graph=graph)


def _root_ok(root: Leaper, board: Board, graph: LeaperGraph) -> str | None:
    if graph.leaper != root or graph.board != board:
        return "root graph does not live on the root board"
    if root == WAZIR:
        return None if graph == complete_graph(WAZIR, board) else "wazir root graph must be complete"
    if not board.is_standard:
        return "root board is not standard"
    if not is_connected_component(graph):
        return "root graph is not a connected component"
    cx, cy = completions(graph)
    for comp in (cx, cy):
        if classify_weave(comp).kind == "simple-weave":
            return "a completion of the root graph is a simple weave"
    return None


def build_lineage(root: Leaper, board: Board, graph: LeaperGraph | None = None, kind: str = "perfect", depth_limit: int = 3) -> Lineage:
    if graph is None:
        if root != WAZIR:
            raise ValueError("only a wazir root may omit its graph")
        graph = complete_graph(WAZIR, board)
    if root != WAZIR:
        if not root.is_skew or classify(root).kind != "free":
            raise ValueError(f"{root} cannot originate a lineage")
    problem = _root_ok(root, board, graph)
    if problem:
        raise ValueError(f"invalid originator: {problem}")
    return Lineage(root, board, graph, kind, depth_limit)


def offsets(lineage: Lineage, depth_limit: int | None = None) -> tuple[int, int]:
    """The constants (w, z) with board sides u = p + q + w and v = p + q + z at every node."""
    found = set()
    for node in lineage.nodes(depth_limit):
        s = node.leaper.p + node.leaper.q
        found.add((node.board.m - s, node.board.n - s))
    if len(found) != 1:
        raise AssertionError(f"inconsistent lineage offsets {sorted(found)}")
    return found.pop()


def wazir_lineage(m: int, n: int, kind: str, depth_limit: int = 3) -> Lineage:
    return build_lineage(WAZIR, standard_board(m, n), None, kind, depth_limit)


def sl_lineages(leaper: Leaper, depth_limit: int = 3) -> list[Lineage]:
    if leaper == WAZIR:
        return [wazir_lineage(1, 1, "SL", depth_limit)]
    side = leaper.p + leaper.q
    board = standard_board(side, side)
    g = complete_graph(leaper, board)
    return [build_lineage(leaper, board, c, "SL", depth_limit) for c in components(g) if len(c.vertices) == 1]


def r_lineage_board(leaper: Leaper) -> Board:
    p, q = leaper.p, leaper.q
    return standard_board(q + 1, p + 2 * q - q % 2)


def r_lineages(leaper: Leaper, depth_limit: int = 3) -> list[Lineage]:
    if leaper == WAZIR:
        return [wazir_lineage(2, 1, "R", depth_limit)]
    board = r_lineage_board(leaper)
    g = complete_graph(leaper, board)
    return [build_lineage(leaper, board, c, "R", depth_limit) for c in components(g) if is_directionally_rigid(c)]


def w_lineage_board(leaper: Leaper) -> Board:
    e = ecf(leaper)
    p, q = leaper.p, leaper.q
    if e.depth == 2:
        return standard_board(q + 1, p + 2 * q - 1)
    if e.depth == 3 and e.signs[0] == 1:
        c1 = e.coefficients[0]
        return standard_board(p + q - c1, p + 2 * q - c1 - 1)
    raise ValueError(f"{leaper} does not originate W-lineages")


def w_lineages(leaper: Leaper, depth_limit: int = 3) -> list[Lineage]:
    if leaper == WAZIR:
        return [wazir_lineage(1, 1, "W", depth_limit)]
    board = w_lineage_board(leaper)
    g = complete_graph(leaper, board)
    return [build_lineage(leaper, board, c, "W", depth_limit) for c in wazir_neighbourly_components(g)]


@dataclass
class LineageReport:
    root: Leaper
    kind: str
    nodes_checked: int = 0
    arrows_checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def verify_perfect_lineage(lineage: Lineage, depth_limit: int | None = None) -> LineageReport:
    """Check every node's graph is a connected component and every arrow lowers back exactly."""
    report = LineageReport(lineage.root, lineage.kind)
    nodes = lineage.nodes(depth_limit)
    by_leaper = {n.leaper: n for n in nodes}
    for node in nodes:
        report.nodes_checked += 1
        if node.leaper == WAZIR:
            continue
        if not is_connected_component(node.graph):
            report.violations.append(f"{node.leaper}: graph is not a connected component of its board")
        elif node.depth > 0 and classify_component(node.graph).is_weave:
            report.violations.append(f"{node.leaper}: non-root graph is a weave")
        if node.parent is not None:
            report.arrows_checked += 1
            parent = by_leaper[node.parent]
            try:
                back = lower_graph(node.transformation, node.graph)
            except ValueError as exc:
                report.violations.append(f"{node.parent} -{node.transformation}-> {node.leaper}: {exc}")
                continue
            if back != parent.graph:
                report.violations.append(f"{node.parent} -{node.transformation}-> {node.leaper}: lowering does not return the parent graph")
    return report


def clover_classes(leaper: Leaper) -> dict[int, list[LeaperGraph]]:
    """Clovers of the leaper sorted by the tail whose SL-lineages produce them.

    Key i collects the clovers reached from SL-lineages of the tail L_i; the
    clovers are the nodes of those lineages at the leaper itself.
    """
    out: dict[int, list[LeaperGraph]] = {}
    for i, tail in enumerate(tails(leaper)[:-1]):
        found = []
        for lin in sl_lineages(tail, depth_limit=0):
            found.append(lin.node(leaper).graph)
        out[i] = found
    return out


def sl_hamiltonicity(lineage: Lineage, depth_limit: int | None = None, cutoff: int = 64) -> dict[Leaper, bool | None]:
    """For every non-root node, whether its clover carries a Hamiltonian cycle of the root leaper."""
    return {
        node.leaper: admits_hamiltonian_cycle(lineage.root, node.graph.vertices, cutoff)
        for node in lineage.nodes(depth_limit)
        if node.depth > 0
    }
