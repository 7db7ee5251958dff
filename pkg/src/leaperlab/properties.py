"""Monotone board properties, their minimal bases, and the closed-form bases they should match."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Callable, Iterable

import networkx as nx

from .board import Board, Cell, fits, standard_board
from .leaper import Leaper, classify, ecf, mmod, tails

# ---------------------------------------------------------------- fast complete-graph kernels
#
# The basis scans evaluate predicates on many complete graphs, so they work on
# row-major cell indices of the standard board instead of LeaperGraph objects.
# tests/test_properties.py checks every kernel against the LeaperGraph route.


@lru_cache(maxsize=256)
def _grid(p: int, q: int, m: int, n: int) -> tuple[tuple[tuple[int, tuple[int, int, int, int]], ...], ...]:
    """Neighbour lists of the complete graph: (index, direction matrix) pairs per cell."""
    moves = []
    for dx, dy in Leaper(p, q).moves():
        sx = 1 if dx > 0 else -1
        sy = 1 if dy > 0 else -1
        if 0 < p < q:
            mat = (sx, 0, 0, sy) if abs(dx) == p else (0, sx, sy, 0)
        else:
            mat = (0, 0, 0, 0)
        moves.append((dx, dy, mat))
    out = []
    for y in range(m):
        for x in range(n):
            nb = []
            for dx, dy, mat in moves:
                xx, yy = x + dx, y + dy
                if 0 <= xx < n and 0 <= yy < m:
                    nb.append((yy * n + xx, mat))
            out.append(tuple(nb))
    return tuple(out)


def _labels(adj) -> tuple[list[int], int]:
    """Component label per cell and the number of components."""
    label = [-1] * len(adj)
    count = 0
    for s in range(len(adj)):
        if label[s] >= 0:
            continue
        label[s] = count
        stack = [s]
        while stack:
            u = stack.pop()
            for v, _ in adj[u]:
                if label[v] < 0:
                    label[v] = count
                    stack.append(v)
        count += 1
    return label, count


def no_isolated(leaper: Leaper, m: int, n: int) -> bool:
    return all(_grid(leaper.p, leaper.q, m, n))


def nontrivially_connected(leaper: Leaper, m: int, n: int) -> bool:
    if m * n < 2:
        return False
    return _labels(_grid(leaper.p, leaper.q, m, n))[1] == 1


def edge_connected(leaper: Leaper, m: int, n: int) -> bool:
    adj = _grid(leaper.p, leaper.q, m, n)
    label, _ = _labels(adj)
    used = {label[u] for u in range(len(adj)) if adj[u]}
    return len(used) == 1


def biconnected(leaper: Leaper, m: int, n: int) -> bool:
    if m * n < 3:
        return False
    adj = _grid(leaper.p, leaper.q, m, n)
    g = nx.Graph()
    g.add_nodes_from(range(len(adj)))
    g.add_edges_from((u, v) for u in range(len(adj)) for v, _ in adj[u] if u < v)
    return nx.is_biconnected(g)


def rigid(leaper: Leaper, m: int, n: int) -> bool:
    adj = _grid(leaper.p, leaper.q, m, n)
    zeta: list = [None] * len(adj)
    for s in range(len(adj)):
        if zeta[s] is not None:
            continue
        zeta[s] = (0, 0, 0, 0)
        stack = [s]
        while stack:
            u = stack.pop()
            a, b, c, d = zeta[u]
            for v, (e, f, g, h) in adj[u]:
                step = (a + e, b + f, c + g, d + h)
                if zeta[v] is None:
                    zeta[v] = step
                    stack.append(v)
                elif zeta[v] != step:
                    return True
    return False


def _realizes_offsets(leaper: Leaper, m: int, n: int, offsets: Iterable[Cell]) -> bool:
    """Whether some translate of the offset set lies within one component."""
    offsets = list(offsets)
    w = max(dx for dx, _ in offsets) + 1
    hgt = max(dy for _, dy in offsets) + 1
    if w > n or hgt > m:
        return False
    label, _ = _labels(_grid(leaper.p, leaper.q, m, n))
    for y in range(m - hgt + 1):
        for x in range(n - w + 1):
            first = label[(y + offsets[0][1]) * n + x + offsets[0][0]]
            if all(label[(y + dy) * n + x + dx] == first for dx, dy in offsets[1:]):
                return True
    return False


def wazir_journey(leaper: Leaper, m: int, n: int) -> bool:
    adj = _grid(leaper.p, leaper.q, m, n)
    label, _ = _labels(adj)
    for y in range(m):
        row = y * n
        for x in range(n):
            i = row + x
            if x + 1 < n and label[i] == label[i + 1] and adj[i]:
                return True
            if y + 1 < m and label[i] == label[i + n] and adj[i]:
                return True
    return False


# ---------------------------------------------------------------- patterns and journeys


@dataclass(frozen=True)
class Pattern:
    """A finite cell set translated so that its bounding box starts at the origin."""

    cells: frozenset

    def __post_init__(self):
        if not self.cells:
            raise ValueError("a pattern needs at least one cell")
        x0 = min(c[0] for c in self.cells)
        y0 = min(c[1] for c in self.cells)
        object.__setattr__(self, "cells", frozenset((x - x0, y - y0) for x, y in self.cells))

    @classmethod
    def of(cls, cells: Iterable[Cell]) -> Pattern:
        return cls(frozenset(cells))

    def sorted_cells(self) -> list[Cell]:
        return sorted(self.cells, key=lambda c: (c[1], c[0]))


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def pattern_realizes(pattern: Pattern, leaper: Leaper, board: Board, reduce: bool = True) -> bool:
    """Some translate of the pattern lies inside one connected component of the leaper on the board.

    With ``reduce`` the leaper is first divided by the gcd d of its parameters;
    the pattern must then have all coordinates divisible by d, and the question
    moves to the board of size ceil(m/d) x ceil(n/d).
    """
    cells = pattern.sorted_cells()
    m, n = board.m, board.n
    if reduce:
        d = gcd(leaper.p, leaper.q)
        if d > 1:
            if any(x % d or y % d for x, y in cells):
                return False
            cells = [(x // d, y // d) for x, y in cells]
            leaper = Leaper(leaper.p // d, leaper.q // d)
            m, n = _ceil_div(m, d), _ceil_div(n, d)
    return _realizes_offsets(leaper, m, n, cells)


def journey_exists(mover: Leaper, leaper: Leaper, board: Board, reduce: bool = True) -> bool:
    """Some walk of ``leaper`` on the board ends on a cell adjacent to its start with respect to ``mover``."""
    r, s = mover.p, mover.q
    m, n = board.m, board.n
    if reduce:
        d = gcd(leaper.p, leaper.q)
        if d > 1:
            if r % d or s % d:
                return False
            mover = Leaper(r // d, s // d)
            leaper = Leaper(leaper.p // d, leaper.q // d)
            m, n = _ceil_div(m, d), _ceil_div(n, d)
    for dx, dy in mover.moves():
        offs = [(0, 0), (dx, dy)]
        x0 = min(c[0] for c in offs)
        y0 = min(c[1] for c in offs)
        if _realizes_offsets(leaper, m, n, [(x - x0, y - y0) for x, y in offs]):
            return True
    return False


# ---------------------------------------------------------------- properties and bases


@dataclass(frozen=True)
class MonotoneProperty:
    name: str
    leaper: Leaper
    predicate: Callable[[int, int], bool] = field(compare=False)
    symmetric: bool = True

    def __call__(self, m: int, n: int) -> bool:
        return self.predicate(m, n)

    def holds_on(self, board: Board) -> bool:
        return self.predicate(board.m, board.n)


_KERNELS = {
    "I": no_isolated,
    "C": nontrivially_connected,
    "E": edge_connected,
    "B": biconnected,
    "R": rigid,
    "R_half": rigid,
    "W": wazir_journey,
}


def property_for(kind: str, leaper: Leaper) -> MonotoneProperty:
    """The named property of a leaper: one of I, C, E, B, R, W, R_half."""
    try:
        kernel = _KERNELS[kind]
    except KeyError:
        raise ValueError(f"unknown property {kind!r}") from None
    return MonotoneProperty(kind, leaper, lambda m, n: kernel(leaper, m, n))


def pattern_property(pattern: Pattern, leaper: Leaper) -> MonotoneProperty:
    board_of = standard_board
    cells = pattern.sorted_cells()
    symmetric = Pattern.of((y, x) for x, y in cells) == pattern
    name = "pattern:" + ";".join(f"{x},{y}" for x, y in cells)
    return MonotoneProperty(name, leaper, lambda m, n: pattern_realizes(pattern, leaper, board_of(m, n)), symmetric)


def journey_property(mover: Leaper, leaper: Leaper) -> MonotoneProperty:
    name = f"journey:{mover.p},{mover.q}"
    return MonotoneProperty(name, leaper, lambda m, n: journey_exists(mover, leaper, standard_board(m, n)))


@dataclass(frozen=True)
class Basis:
    """Minimal boards, as (m, n) sizes sorted by increasing height."""

    sizes: tuple[tuple[int, int], ...]
    saturated: bool = False

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(sorted(set(self.sizes))))

    @property
    def boards(self) -> list[Board]:
        return [standard_board(m, n) for m, n in self.sizes]

    def predicts(self, m: int, n: int) -> bool:
        return any(a <= m and b <= n for a, b in self.sizes)

    def is_antichain(self) -> bool:
        return all(
            not (a <= c and b <= d)
            for i, (a, b) in enumerate(self.sizes)
            for j, (c, d) in enumerate(self.sizes)
            if i != j
        )

    def is_staircase(self) -> bool:
        ms = [m for m, _ in self.sizes]
        ns = [n for _, n in self.sizes]
        return all(x < y for x, y in zip(ms, ms[1:])) and all(x > y for x, y in zip(ns, ns[1:]))

    def is_symmetric(self) -> bool:
        return set(self.sizes) == {(n, m) for m, n in self.sizes}

    def __str__(self):
        body = ", ".join(f"{m}x{n}" for m, n in self.sizes)
        return "{" + body + "}" + (" (saturated)" if self.saturated else "")


def brute_force_basis(prop: MonotoneProperty, m_cap: int, n_cap: int) -> Basis:
    """Minimal boards of a monotone property inside the caps.

    The search walks the staircase of minimal widths: the minimal width for
    height m is found by shrinking the minimal width for height m - 1, which
    monotonicity in both sides allows. Each height costs one evaluation plus
    one per unit of shrinkage. The result is flagged as saturated when the
    property never holds or when a minimal board touches a cap, since members
    beyond the caps cannot be excluded then.
    """
    found = []
    width = n_cap
    best = None
    for m in range(1, m_cap + 1):
        if not prop(m, width):
            continue
        while width > 1 and prop(m, width - 1):
            width -= 1
        if best is None or width < best:
            found.append((m, width))
            best = width
    saturated = not found or any(m == m_cap or n == n_cap for m, n in found)
    return Basis(tuple(found), saturated)


def minimal_boards(sizes: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Keep the boards not dominated under <= by another member."""
    sizes = sorted(set(sizes))
    return [a for a in sizes if not any(b != a and b[0] <= a[0] and b[1] <= a[1] for b in sizes)]


def absorb_under_fit(sizes: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Remove every board into which another (distinct) board fits, possibly transposed."""
    uniq = list(dict.fromkeys(sizes))
    out = []
    for i, a in enumerate(uniq):
        if not any(j != i and fits(b, a) and (b != (a[1], a[0]) or j < i) for j, b in enumerate(uniq)):
            out.append(a)
    return out


def full_basis(sizes: Iterable[tuple[int, int]]) -> Basis:
    """Close a reduced basis under transposition and keep the minimal boards."""
    sizes = list(sizes)
    both = sizes + [(n, m) for m, n in sizes]
    return Basis(tuple(minimal_boards(both)))


def reduced_basis(basis: Basis) -> Basis:
    if not basis.is_symmetric():
        raise ValueError("only bases of symmetric properties have a reduced form")
    return Basis(tuple(s for s in basis.sizes if s[0] <= s[1]), basis.saturated)


def r_boards(leaper: Leaper) -> list[tuple[int, int]]:
    """The boards (p+q-p_i+1) x (p+q+q_i-[q_i mod 2]) for i = 0..k, before absorption."""
    p, q = leaper.p, leaper.q
    return [(p + q - t.p + 1, p + q + t.q - t.q % 2) for t in tails(leaper)]


def r_half_boards(leaper: Leaper) -> list[tuple[int, int]]:
    r, s = leaper.p, leaper.q
    return [(r + s, r + s)] + [(r + s - t.p + 1, r + s + t.q) for t in tails(leaper)]


def w_boards(leaper: Leaper) -> list[tuple[int, int]]:
    p, q = leaper.p, leaper.q
    e = ecf(leaper)
    ts = tails(leaper)
    c1 = e.coefficients[0]
    out = [(p + q, p + q)]
    if e.depth >= 2:
        out.append((p + q - c1 + 1, p + q + ts[2].q - 1))
    if e.depth >= 3 and e.signs[0] == 1:
        out.append((p + q - c1, p + q + ts[3].q - c1 - 1))
    return out


def theorem_basis(kind: str, leaper: Leaper) -> Basis:
    if not leaper.is_skew:
        raise ValueError(f"{leaper} is not skew")
    freeness = classify(leaper).kind
    if kind == "R_half":
        if freeness != "half-free":
            raise ValueError("the half-free rigidity basis needs a half-free leaper")
        return full_basis(absorb_under_fit(r_half_boards(leaper)))
    if freeness != "free":
        raise ValueError(f"property {kind} has a closed form only for free leapers")
    p, q = leaper.p, leaper.q
    if kind == "I":
        return full_basis([(2 * p, 2 * q)])
    if kind in ("C", "B"):
        return full_basis([(p + q, 2 * q)])
    if kind == "E":
        if p == 1:
            return full_basis([(q + 1, q + 1)])
        return full_basis([(p + q, 2 * p + q - mmod(q, 2 * p))])
    if kind == "R":
        return full_basis(absorb_under_fit(r_boards(leaper)))
    if kind == "W":
        return full_basis(w_boards(leaper))
    raise ValueError(f"unknown property {kind!r}")


@dataclass(frozen=True)
class BasisDiff:
    missing: tuple[tuple[int, int], ...]
    extra: tuple[tuple[int, int], ...]
    inconclusive: bool

    @property
    def equal(self) -> bool:
        return not self.missing and not self.extra and not self.inconclusive

    @property
    def exit_code(self) -> int:
        return 0 if self.equal else 1

    def to_json(self) -> dict:
        return {
            "equal": self.equal,
            "missing": [list(s) for s in self.missing],
            "extra": [list(s) for s in self.extra],
            "inconclusive": self.inconclusive,
        }


def diff_bases(predicted: Basis, observed: Basis) -> BasisDiff:
    """Boards predicted but not observed are missing; observed but not predicted are extra."""
    pred, obs = set(predicted.sizes), set(observed.sizes)
    return BasisDiff(
        tuple(sorted(pred - obs)),
        tuple(sorted(obs - pred)),
        predicted.saturated or observed.saturated,
    )


def default_caps(leaper: Leaper, multiplier: int = 3) -> int:
    return multiplier * (leaper.p + leaper.q)
