"""One-dimensional projection graphs and weaves.

A projection graph on an integer interval joins two values when they differ by
the short step ``a`` or the long step ``b``. The x- and y-coordinates of a
leaper graph live in two such graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .board import Board, Cell
from .leaper import Leaper, mmod


@dataclass(frozen=True)
class ProjectionGraph:
    a: int
    b: int
    lo: int
    hi: int

    def __post_init__(self):
        if not 0 < self.a < self.b:
            raise ValueError(f"need 0 < a < b, got a={self.a}, b={self.b}")
        if self.lo > self.hi:
            raise ValueError("empty interval")

    @classmethod
    def of_size(cls, a: int, b: int, s: int) -> ProjectionGraph:
        return cls(a, b, 1, s)

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    def __contains__(self, u: int) -> bool:
        return self.lo <= u <= self.hi

    def neighbors(self, u: int) -> list[int]:
        return [v for v in (u - self.b, u - self.a, u + self.a, u + self.b) if v in self]

    def kind(self, u: int, v: int) -> str:
        """'s' for a short edge, 'l' for a long one."""
        d = abs(u - v)
        if d == self.a:
            return "s"
        if d == self.b:
            return "l"
        raise ValueError(f"{u} and {v} are not adjacent")

    def edges(self) -> list[tuple[int, int]]:
        return [(u, u + d) for u in range(self.lo, self.hi + 1) for d in (self.a, self.b) if u + d <= self.hi]


@dataclass(frozen=True)
class ProjectionComponent:
    graph: ProjectionGraph
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def is_singleton(self) -> bool:
        return len(self.vertices) == 1

    @property
    def is_acyclic(self) -> bool:
        return len(self.edges) == len(self.vertices) - 1

    @property
    def is_path(self) -> bool:
        return self.is_acyclic and all(self.degree(u) <= 2 for u in self.vertices)

    @property
    def is_cycle(self) -> bool:
        return len(self.vertices) >= 3 and all(self.degree(u) == 2 for u in self.vertices)

    def degree(self, u: int) -> int:
        return len(self.graph.neighbors(u))

    def __contains__(self, u: int) -> bool:
        return u in self.vertices

    def has_long_edge(self) -> bool:
        return any(v - u == self.graph.b for u, v in self.edges)

    def has_short_edge(self) -> bool:
        return any(v - u == self.graph.a for u, v in self.edges)


def components(pg: ProjectionGraph) -> list[ProjectionComponent]:
    seen: set[int] = set()
    out = []
    for start in range(pg.lo, pg.hi + 1):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            u = stack.pop()
            for v in pg.neighbors(u):
                if v not in seen:
                    seen.add(v)
                    comp.append(v)
                    stack.append(v)
        comp.sort()
        members = set(comp)
        edges = tuple((u, u + d) for u in comp for d in (pg.a, pg.b) if u + d in members)
        out.append(ProjectionComponent(pg, tuple(comp), edges))
    return out


def component_of(pg: ProjectionGraph, u: int) -> ProjectionComponent:
    for comp in components(pg):
        if u in comp.vertices:
            return comp
    raise ValueError(f"{u} is outside the interval")


def signature(walk: list[int], a: int, b: int) -> str:
    out = []
    for u, v in zip(walk, walk[1:]):
        d = abs(u - v)
        if d == a:
            out.append("s")
        elif d == b:
            out.append("l")
        else:
            raise ValueError(f"step {u}->{v} is neither short nor long")
    return "".join(out)


def complementary(sig1: str, sig2: str) -> bool:
    return len(sig1) == len(sig2) and all(x != y for x, y in zip(sig1, sig2))


@dataclass(frozen=True)
class WeaveClass:
    """Weave status of one component of a projection graph.

    For compound weaves ``segment_lengths`` lists the number of short edges in
    each maximal all-short stretch, read in the order in which short moves go
    right, and ``labels`` maps each vertex to its (i, j) position.
    """

    kind: str
    long_edges: int = 0
    segment_lengths: tuple[int, ...] = ()
    labels: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def is_weave(self) -> bool:
        return self.kind != "non-weave"


def _violates_even_rule(comp: ProjectionComponent) -> bool:
    """Search for a path with signature l s^t l and t odd."""
    pg = comp.graph
    a, b = pg.a, pg.b
    members = set(comp.vertices)
    for u in comp.vertices:
        for v in (u - b, u + b):
            if v not in members:
                continue
            for step in (a, -a):
                on_path = {u, v}
                w = v
                t = 0
                while True:
                    for x in (w - b, w + b):
                        if x in members and x not in on_path and t % 2 == 1:
                            return True
                    nxt = w + step
                    if nxt not in members or nxt in on_path:
                        break
                    on_path.add(nxt)
                    w = nxt
                    t += 1
    return False


def _path_order(comp: ProjectionComponent) -> list[int]:
    adj: dict[int, list[int]] = {u: [] for u in comp.vertices}
    for u, v in comp.edges:
        adj[u].append(v)
        adj[v].append(u)
    ends = [u for u in comp.vertices if len(adj[u]) <= 1]
    order = [ends[0]]
    prev = None
    while True:
        nxt = [v for v in adj[order[-1]] if v != prev]
        if not nxt:
            return order
        prev = order[-1]
        order.append(nxt[0])


def classify_weave(comp: ProjectionComponent) -> WeaveClass:
    pg = comp.graph
    p, q = pg.a, pg.b
    if p == 1:
        weave = comp.is_acyclic
    else:
        weave = not _violates_even_rule(comp)
    if not weave:
        return WeaveClass("non-weave")
    if not comp.has_long_edge():
        return WeaveClass("simple-weave", 0, (len(comp.edges),))
    if not comp.is_path:
        # a weave with a cycle cannot arise for coprime parameters; report it without labels
        return WeaveClass("compound-weave", sum(1 for u, v in comp.edges if v - u == q))
    order = _path_order(comp)
    first_short = next(i for i in range(len(order) - 1) if abs(order[i + 1] - order[i]) == p)
    if order[first_short + 1] < order[first_short]:
        order.reverse()
    segments: list[list[int]] = [[order[0]]]
    for u, v in zip(order, order[1:]):
        if abs(u - v) == q:
            segments.append([v])
        else:
            segments[-1].append(v)
    lengths = tuple(len(seg) - 1 for seg in segments)
    eps = weave_constants(p, q)[2]
    labels = {}
    for i, seg in enumerate(segments):
        offset = 1 if (i == 0 and eps == -1) else 0
        for j, u in enumerate(seg):
            labels[u] = (i, j + offset)
    return WeaveClass("compound-weave", len(segments) - 1, lengths, labels)


def weave_constants(p: int, q: int) -> tuple[int, int, int]:
    """(c, r, eps) with r = q mmod 2p and q = 2cp + eps * r."""
    r = mmod(q, 2 * p)
    eps = -1 if q % (2 * p) > p else 1
    c = (q - eps * r) // (2 * p)
    return c, r, eps


@dataclass(frozen=True)
class WeaveThresholds:
    """Closed-form weave existence in Pi(p, q, s).

    A simple weave exists iff s < simple_bound, some weave exists iff
    s < weave_bound, and a non-singleton weave exists iff
    nonsingleton_lower < s < nonsingleton_upper.
    """

    simple_bound: int
    weave_bound: int
    nonsingleton_lower: int
    nonsingleton_upper: int


def angle_bound(p: int, q: int) -> int:
    """The upper bound shared by non-singleton weaves and non-angular components."""
    if p == 1:
        return q + 1
    r = mmod(q, 2 * p)
    if 4 * p < 3 * q:
        return p + q - mmod(p, r)
    return 3 * q - 2 * p


def weave_thresholds(p: int, q: int) -> WeaveThresholds:
    if not 0 < p < q or gcd(p, q) != 1:
        raise ValueError(f"need relatively prime 0 < p < q, got ({p}, {q})")
    if p == 1:
        return WeaveThresholds(q + 1, q + 1, 1, q + 1)
    r = mmod(q, 2 * p)
    return WeaveThresholds(p + q - mmod(q, p), p + q - mmod(p, r), p, angle_bound(p, q))


def has_unbalanced_closed_walk(pg: ProjectionGraph) -> bool:
    """Decide by checking the signed short-move count of every fundamental cycle."""
    potential: dict[int, int] = {}
    for root in range(pg.lo, pg.hi + 1):
        if root in potential:
            continue
        potential[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for v in pg.neighbors(u):
                step = (1 if v > u else -1) if abs(v - u) == pg.a else 0
                if v not in potential:
                    potential[v] = potential[u] + step
                    stack.append(v)
                elif potential[u] + step != potential[v]:
                    return True
    return False


def unbalanced_threshold(a: int, b: int) -> int:
    return a + b - gcd(a, b) + 1


def zip_walks(chi: list[int], upsilon: list[int], leaper: Leaper, board: Board | None = None) -> list[Cell]:
    """Combine an x-walk and a y-walk with complementary signatures into a leaper walk."""
    if len(chi) != len(upsilon):
        raise ValueError("walks differ in length")
    p, q = leaper.p, leaper.q
    if not complementary(signature(chi, p, q), signature(upsilon, p, q)):
        raise ValueError("signatures are not complements")
    cells = list(zip(chi, upsilon))
    if board is not None and any(c not in board for c in cells):
        raise ValueError("walk leaves the board")
    return cells


def walk_on_four_cycle(chi: list[int], u: int, start: Cell, leaper: Leaper, board: Board | None = None) -> list[Cell]:
    """The walk with x-projection chi whose y-projection stays on the 4-cycle u, u+p, u+p+q, u+q."""
    p, q = leaper.p, leaper.q
    cycle = (u, u + p, u + p + q, u + q)
    if board is not None and any(not board.y_min <= y <= board.y_max for y in cycle):
        raise ValueError("the 4-cycle is not contained in the y-projection of the board")
    if not chi or start[0] != chi[0]:
        raise ValueError("start cell does not sit over the first vertex of chi")
    if start[1] not in cycle:
        raise ValueError("start cell is not on the 4-cycle")
    short_partner = {u: u + p, u + p: u, u + p + q: u + q, u + q: u + p + q}
    long_partner = {u: u + q, u + q: u, u + p: u + p + q, u + p + q: u + p}
    y = start[1]
    out = [start]
    for x0, x1 in zip(chi, chi[1:]):
        d = abs(x1 - x0)
        if d == p:
            y = long_partner[y]
        elif d == q:
            y = short_partner[y]
        else:
            raise ValueError(f"step {x0}->{x1} is not a projection edge")
        out.append((x1, y))
    if board is not None and any(c not in board for c in out):
        raise ValueError("walk leaves the board")
    return out
