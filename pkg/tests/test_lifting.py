import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from leaperlab.board import standard_board
from leaperlab.graph import (
    ZERO,
    LeaperGraph,
    angle_type,
    angular_components,
    complete_graph,
    components,
    is_angular,
    is_connected,
    mat_mul,
    norm_edge,
    phi,
)
from leaperlab.leaper import KNIGHT, WAZIR, Leaper, lift_leaper
from leaperlab.lifting import (
    LIFT_MATRICES,
    are_matched,
    core,
    cross_edge,
    cross_edge_inverse,
    is_angular_closed,
    lift_board,
    lift_closed_walk,
    lift_graph,
    lift_params,
    lower_board,
    lower_closed_walk,
    lower_graph,
    lower_leaper,
    matched_cells,
    matched_edges,
    octagon_cycle,
    walks_matched,
)

LOWER = [(1, 2), (2, 3), (2, 5), (1, 4), (3, 4)]


def knight_ring():
    g = complete_graph(KNIGHT, standard_board(3, 3))
    ring = [c for c in components(g) if c.edges][0]
    start = ring.sorted_vertices()[0]
    walk = [start, ring.adjacency[start][0]]
    while walk[-1] != start:
        walk.append(next(v for v in ring.adjacency[walk[-1]] if v != walk[-2]))
    return ring, walk


def test_lift_params_and_matrices():
    assert lift_params("f", KNIGHT).lifted == Leaper(1, 4)
    assert lift_params("g", KNIGHT).lifted == Leaper(2, 3)
    assert lift_params("h", KNIGHT).lifted == Leaper(2, 5)
    for p, q in LOWER:
        for t in "fgh":
            lp = lift_params(t, Leaper(p, q))
            assert lp.lifted == lift_leaper(Leaper(p, q), t)
            expected = {"f": (p, q + 2 * p), "g": (q, 2 * q - p), "h": (q, 2 * q + p)}[t]
            assert (lp.lifted.p, lp.lifted.q) == expected


def test_board_examples():
    assert lift_board("h", KNIGHT, standard_board(3, 4)).size == (7, 8)
    assert lift_board("f", KNIGHT, standard_board(3, 4)).size == (5, 6)
    assert lower_board("h", Leaper(2, 5), standard_board(7, 8)).size == (3, 4)
    with pytest.raises(ValueError):
        lower_board("h", Leaper(2, 5), standard_board(4, 8))


def test_lower_leaper():
    assert lower_leaper("g", KNIGHT) == WAZIR
    assert lower_leaper("h", Leaper(5, 12)) == Leaper(2, 5)
    with pytest.raises(ValueError):
        lower_leaper("f", Leaper(2, 5))


def test_giraffe_octagon():
    edges = matched_edges("f", KNIGHT, (0, 0))
    corners = {c for e in edges for c in e}
    assert corners == {(3, 0), (1, 1), (0, 3), (-1, 1), (-3, 0), (-1, -1), (0, -3), (1, -1)}
    assert len(edges) == 8
    assert all(are_matched("f", KNIGHT, (0, 0), e) for e in edges)


@pytest.mark.parametrize("t", "fgh")
@pytest.mark.parametrize("pair", LOWER)
def test_octagon_is_acute_balanced_cycle(t, pair):
    leaper = Leaper(*pair)
    cyc = octagon_cycle(t, leaper, (0, 0))
    upper = lift_leaper(leaper, t)
    assert len(set(cyc)) == 8
    for i in range(8):
        assert angle_type(cyc[i], cyc[i - 1], cyc[(i + 1) % 8]).is_acute
    assert phi(upper, cyc + cyc[:1]) == ZERO


@pytest.mark.parametrize("t", "fgh")
def test_matching_by_definition(t):
    """matched_edges agrees with a scan of every lifted edge near the cell."""
    leaper = Leaper(2, 5)
    upper = lift_leaper(leaper, t)
    near = [(x, y) for x in range(-20, 21) for y in range(-20, 21)]
    found = set()
    for u in near:
        for dx, dy in upper.moves():
            e = norm_edge(u, (u[0] + dx, u[1] + dy))
            if are_matched(t, leaper, (0, 0), e):
                found.add(e)
    assert found == set(matched_edges(t, leaper, (0, 0)))


def test_matched_cells_example():
    assert set(matched_cells("f", KNIGHT, ((0, 0), (4, 1)))) == {(3, 0), (1, 1)}


def test_cross_edge_example():
    assert cross_edge("f", KNIGHT, norm_edge((3, 0), (1, 1))) == ((0, 0), (4, 1))
    assert cross_edge_inverse("f", KNIGHT, ((0, 0), (4, 1))) == norm_edge((3, 0), (1, 1))


@settings(max_examples=200)
@given(st.sampled_from(LOWER), st.sampled_from("fgh"), st.integers(-40, 40), st.integers(-40, 40), st.integers(0, 7))
def test_cross_edge_round_trip(pair, t, x, y, k):
    leaper = Leaper(*pair)
    dx, dy = leaper.moves()[k]
    e = norm_edge((x, y), (x + dx, y + dy))
    assert cross_edge_inverse(t, leaper, cross_edge(t, leaper, e)) == e


@pytest.mark.parametrize("t", "fgh")
def test_cross_edges_stay_on_board(t):
    board = standard_board(3, 4)
    big = lift_board(t, KNIGHT, board)
    for e in complete_graph(KNIGHT, board).edges:
        c = cross_edge(t, KNIGHT, e)
        assert c[0] in big and c[1] in big


def test_wazir_lifts_to_knight_ring():
    root = complete_graph(WAZIR, standard_board(1, 1))
    h = lift_graph("g", root)
    ring, _ = knight_ring()
    assert h.leaper == KNIGHT and h.board == standard_board(3, 3)
    assert h.edges == ring.edges
    low = lower_graph("g", h)
    assert low.vertices == frozenset({(0, 0)})


def test_empty_graph_lifts_to_empty():
    g = LeaperGraph.build(KNIGHT, standard_board(3, 4))
    assert not lift_graph("h", g).edges


def test_lift_then_lower_complete_knight():
    g = complete_graph(KNIGHT, standard_board(3, 4))
    h = lift_graph("h", g)
    assert h.board.size == (7, 8)
    assert is_connected(h) and is_angular(h)
    assert lower_graph("h", h) == g


def test_single_edge_can_lower_to_null_graph():
    upper = Leaper(2, 5)
    board = lift_board("h", KNIGHT, standard_board(1, 2))
    small = lower_board("h", upper, board)
    nulls = 0
    for e in complete_graph(upper, board).edges:
        low = lower_graph("h", LeaperGraph.build(upper, board, (), [e]))
        cells = set(matched_cells("h", KNIGHT, e))
        assert low.vertices == frozenset(c for c in cells if c in small)
        nulls += not low.vertices
    assert nulls > 0


def test_core_lies_on_lower_board():
    for pair in [(1, 2), (2, 3)]:
        leaper = Leaper(*pair)
        for t in "fgh":
            upper = lift_leaper(leaper, t)
            big = lift_board(t, leaper, standard_board(4, 5))
            small = lower_board(t, upper, big)
            full = complete_graph(upper, big)
            for a, nbrs in full.adjacency.items():
                for i, b1 in enumerate(nbrs):
                    for b2 in nbrs[i + 1:]:
                        if angle_type(a, b1, b2).is_acute:
                            c = core(t, upper, a, b1, b2)
                            assert c in small
                            assert are_matched(t, leaper, c, norm_edge(a, b1))
                            assert are_matched(t, leaper, c, norm_edge(a, b2))


@pytest.mark.parametrize("t", "fgh")
def test_knight_ring_walk_lifts(t):
    _, walk = knight_ring()
    assert is_angular_closed(walk)
    mw = lift_closed_walk(t, KNIGHT, standard_board(3, 3), walk)
    assert walks_matched(t, KNIGHT, mw.alpha, mw.beta, mw.segments)
    big = lift_board(t, KNIGHT, standard_board(3, 3))
    assert all(c in big for c in mw.beta)
    assert phi(lift_leaper(KNIGHT, t), mw.beta) == mat_mul(phi(KNIGHT, mw.alpha), LIFT_MATRICES[t])
    assert is_angular_closed(mw.beta)


def random_closed_walk(rng, g, steps):
    start = rng.choice(g.sorted_vertices())
    walk = [start]
    for _ in range(steps):
        walk.append(rng.choice(g.adjacency[walk[-1]]))
    back = list(reversed(walk[:-1]))
    return walk + back


@pytest.mark.parametrize("t", "gh")
def test_balanced_walks_lift_to_balanced(t):
    rng = random.Random(11)
    for i in range(100):
        leaper = Leaper(*LOWER[i % len(LOWER)])
        board = standard_board(leaper.p + leaper.q, leaper.p + leaper.q + 2)
        comps = [c for c in components(complete_graph(leaper, board)) if c.edges]
        walk = random_closed_walk(rng, rng.choice(comps), rng.randint(1, 8))
        assert phi(leaper, walk) == ZERO
        mw = lift_closed_walk(t, leaper, board, walk)
        assert phi(lift_leaper(leaper, t), mw.beta) == ZERO


def test_f_requires_angular_walk():
    # (0,0) -> (1,2) -> (3,3) turns obtusely at (1,2)
    walk = [(0, 0), (1, 2), (3, 3), (1, 2), (0, 0)]
    assert not is_angular_closed(walk)
    assert is_angular_closed([(0, 0), (1, 2), (0, 0)])
    with pytest.raises(ValueError):
        lift_closed_walk("f", KNIGHT, standard_board(5, 5), walk)


@pytest.mark.parametrize("t", "fgh")
def test_lowering_lifted_walks(t):
    rng = random.Random(5)
    lowered = 0
    for i in range(40):
        leaper = Leaper(*LOWER[i % 3])
        board = standard_board(leaper.p + leaper.q + 1, leaper.p + leaper.q + 2)
        g = complete_graph(leaper, board)
        sub = rng.choice([d for c in components(g) if c.edges for d in angular_components(c)])
        start = rng.choice(sub.sorted_edges())
        # go around an acute turn sequence and straight back
        path = [start[0], start[1]]
        for _ in range(rng.randint(0, 5)):
            options = [v for v in sub.adjacency[path[-1]] if angle_type(path[-1], path[-2], v).is_acute]
            if not options:
                break
            path.append(rng.choice(options))
        walk = path + list(reversed(path[:-1]))
        if t == "f" and not is_angular_closed(walk):
            continue
        mw = lift_closed_walk(t, leaper, board, walk)
        upper = lift_leaper(leaper, t)
        big = lift_board(t, leaper, board)
        if not is_angular_closed(mw.beta):
            continue
        low = lower_closed_walk(t, upper, big, mw.beta)
        if low is None:
            assert phi(upper, mw.beta) == ZERO
            continue
        lowered += 1
        assert walks_matched(t, leaper, low.alpha, low.beta, low.segments)
        assert phi(upper, low.beta) == mat_mul(phi(leaper, low.alpha), LIFT_MATRICES[t])
    assert lowered > 0


def test_lifted_angular_graphs_are_angular():
    for pair in [(1, 2), (2, 3), (2, 5)]:
        leaper = Leaper(*pair)
        for m, n in [(2, 5), (3, 4), (4, 6)]:
            g = complete_graph(leaper, standard_board(m, n))
            for c in components(g):
                if not c.edges:
                    continue
                for t in "gh":
                    assert is_angular(lift_graph(t, c))
                if is_angular(c):
                    assert is_angular(lift_graph("f", c))


def test_lowered_angular_graphs_are_connected():
    for pair in [(1, 2), (2, 3)]:
        leaper = Leaper(*pair)
        for t in "fgh":
            upper = lift_leaper(leaper, t)
            big = lift_board(t, leaper, standard_board(4, 5))
            for d in angular_components(complete_graph(upper, big)):
                low = lower_graph(t, d)
                if low.vertices:
                    assert is_connected(low)


def test_lift_graph_vertices_match_oracle():
    """Lifted edges are exactly the edges matched with some vertex, recomputed by definition."""
    g = complete_graph(Leaper(2, 3), standard_board(3, 5))
    for t in "fgh":
        h = lift_graph(t, g)
        up = lift_leaper(g.leaper, t)
        big = oracles.complete_nx(up.p, up.q, h.board.m, h.board.n)
        expected = {
            frozenset(e)
            for e in big.edges
            if any(are_matched(t, g.leaper, a, norm_edge(*e)) for a in g.vertices)
        }
        assert {frozenset(e) for e in h.edges} == expected
