import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from leaperlab.board import bbox, standard_board
from leaperlab.graph import (
    ZERO,
    AngleType,
    LeaperGraph,
    admits_hamiltonian_cycle,
    angle_type,
    angular_components,
    classify_component,
    clovers,
    complete_graph,
    completions,
    components,
    direction_matrix,
    directional_potentials,
    is_angular,
    is_biconnected,
    is_connected_component,
    is_directionally_rigid,
    is_nontrivially_connected,
    phi,
    proportional,
    transfer,
    transfer_map,
    wazir_journey_exists,
    wazir_neighbourly_components,
    zigzags,
)
from leaperlab.leaper import KNIGHT, WAZIR, Leaper, tree_enumerate
from leaperlab.projection import classify_weave

SMALL = [(1, 2), (2, 3), (1, 4), (2, 5), (3, 4)]


def as_nx(g):
    return g.to_networkx()


def edge_sets(graphs):
    return sorted((set(frozenset(e) for e in g.edges) for g in graphs), key=lambda c: sorted(min(e) for e in c))


def random_subgraph(rng, leaper, m, n):
    full = complete_graph(leaper, standard_board(m, n))
    keep = [e for e in full.sorted_edges() if rng.random() < 0.7]
    return LeaperGraph.build(leaper, full.board, (), keep)


def test_knight_on_3x3():
    g = complete_graph(KNIGHT, standard_board(3, 3))
    assert len(g.vertices) == 9 and len(g.edges) == 8
    assert g.isolated_vertices() == [(0, 0)]
    ref = oracles.complete_nx(1, 2, 3, 3)
    assert nx.utils.graphs_equal(as_nx(g), ref)
    cycle = [c for c in components(g) if len(c.vertices) > 1]
    assert len(cycle) == 1 and all(cycle[0].degree(v) == 2 for v in cycle[0].vertices)


def test_complete_graph_matches_oracle():
    for p, q in SMALL:
        for m, n in [(1, 5), (3, 4), (4, 7), (6, 6)]:
            assert nx.utils.graphs_equal(as_nx(complete_graph(Leaper(p, q), standard_board(m, n))), oracles.complete_nx(p, q, m, n))


def test_thin_board_has_no_edges():
    assert not complete_graph(KNIGHT, standard_board(1, 5)).edges


def test_square_board_degrees():
    g = complete_graph(Leaper(5, 12), standard_board(17, 17))
    assert {g.degree(v) for v in g.vertices} == {0, 2}


def test_invalid_graphs_rejected():
    board = standard_board(3, 3)
    with pytest.raises(ValueError):
        LeaperGraph.build(KNIGHT, board, (), [((0, 0), (1, 1))])
    with pytest.raises(ValueError):
        LeaperGraph.build(KNIGHT, board, [(5, 5)])


@pytest.mark.parametrize(
    "b1, b2, kind",
    [
        ((2, 1), (2, -1), AngleType.LATERALLY_ACUTE),
        ((2, 1), (1, 2), AngleType.DIAGONALLY_ACUTE),
        ((2, 1), (-1, 2), AngleType.RIGHT),
        ((2, 1), (-2, -1), AngleType.STRAIGHT),
        ((2, 1), (2, 1), AngleType.ZERO),
        ((2, 1), (-2, 1), AngleType.LATERALLY_OBTUSE),
        ((2, 1), (-1, -2), AngleType.DIAGONALLY_OBTUSE),
    ],
)
def test_angle_examples(b1, b2, kind):
    assert angle_type((0, 0), b1, b2) is kind


@pytest.mark.parametrize("pair", [(1, 2), (2, 3), (2, 5), (3, 8)])
def test_acute_angles_match_definition(pair):
    moves = Leaper(*pair).moves()
    for d1 in moves:
        for d2 in moves:
            if d1 != d2:
                assert angle_type((0, 0), d1, d2).is_acute == oracles.is_acute_by_definition((0, 0), d1, d2)


def test_angle_types_partition_all_pairs():
    moves = Leaper(2, 5).moves()
    counts = {}
    for d1 in moves:
        for d2 in moves:
            kind = angle_type((0, 0), d1, d2)
            counts[kind] = counts.get(kind, 0) + 1
    assert set(counts) == set(AngleType)
    assert sum(counts.values()) == 64


def test_phi_basics():
    assert phi(KNIGHT, []) == ZERO
    assert phi(KNIGHT, [(0, 0)]) == ZERO
    assert direction_matrix(KNIGHT, (0, 0), (1, 2)) == (1, 0, 0, 1)
    assert direction_matrix(KNIGHT, (0, 0), (-2, 1)) == (0, -1, 1, 0)


@settings(max_examples=50)
@given(st.lists(st.sampled_from(Leaper(2, 5).moves()), min_size=1, max_size=12))
def test_phi_recovers_displacement(steps):
    walk = [(0, 0)]
    for dx, dy in steps:
        walk.append((walk[-1][0] + dx, walk[-1][1] + dy))
    a, b, c, d = phi(Leaper(2, 5), walk)
    assert (a * 2 + b * 5, c * 2 + d * 5) == walk[-1]


def test_knight_3x4_has_unbalanced_fundamental_cycle():
    g = oracles.complete_nx(1, 2, 3, 4)
    assert any(any(oracles.signed_counts(1, 2, c)) for c in nx.cycle_basis(g))


def test_rigidity_examples():
    assert not is_directionally_rigid(complete_graph(KNIGHT, standard_board(3, 3)))
    assert is_directionally_rigid(complete_graph(KNIGHT, standard_board(3, 4)))
    edge = LeaperGraph.build(KNIGHT, standard_board(3, 3), (), [((-1, -1), (0, 1))])
    assert not is_directionally_rigid(edge)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(SMALL), st.integers(1, 8), st.integers(1, 10), st.integers(0, 10**6))
def test_rigidity_matches_cycle_basis(pair, m, n, seed):
    g = random_subgraph(random.Random(seed), Leaper(*pair), m, n)
    assert is_directionally_rigid(g) == oracles.rigid_by_cycle_basis(*pair, as_nx(g))


def test_potentials_raise_on_rigid():
    with pytest.raises(ValueError):
        directional_potentials(complete_graph(KNIGHT, standard_board(3, 4)))


def direction_isomorphic(g, h, image):
    if len(set(image.values())) != len(g.vertices):
        return False
    if {frozenset((image[u], image[v])) for u, v in g.edges} != {frozenset(e) for e in h.edges}:
        return False
    for u, v in g.edges:
        if direction_matrix(g.leaper, u, v) != direction_matrix(h.leaper, image[u], image[v]):
            return False
    return True


def test_transfer_of_straight_path():
    path = LeaperGraph.build(KNIGHT, standard_board(5, 5), (), [((-2, -2), (-1, 0)), ((-1, 0), (0, 2))])
    image, h = transfer_map(path, Leaper(1, 4))
    assert h.leaper == Leaper(1, 4)
    assert direction_isomorphic(path, h, image)


def test_transfer_giraffe_to_zebra():
    rng = random.Random(7)
    giraffe, zebra = Leaper(1, 4), Leaper(2, 3)
    done = 0
    for _ in range(40):
        g = random_subgraph(rng, giraffe, rng.randint(2, 7), rng.randint(4, 9))
        if is_directionally_rigid(g) or not g.edges:
            continue
        try:
            image, h = transfer_map(g, zebra)
        except ValueError:
            continue
        assert direction_isomorphic(g, h, image)
        done += 1
    assert done > 10


def test_transfer_default_target_is_not_proportional():
    g = complete_graph(Leaper(2, 5), standard_board(7, 7))
    h = transfer(g)
    assert not proportional(h.leaper, g.leaper)
    assert len(h.edges) == len(g.edges)


def test_matched_octagon_transfers_everywhere():
    from leaperlab.lifting import matched_edges

    targets = [e.leaper for e in tree_enumerate(20)]
    for leaper in (KNIGHT, Leaper(2, 3), Leaper(2, 5)):
        for t in "fgh":
            edges = matched_edges(t, leaper, (0, 0))
            upper = Leaper(*sorted((abs(edges[0][0][0] - edges[0][1][0]), abs(edges[0][0][1] - edges[0][1][1]))))
            g = LeaperGraph.build(upper, bbox([c for e in edges for c in e]), (), edges)
            for target in targets:
                if proportional(target, upper):
                    continue
                image, h = transfer_map(g, target)
                assert direction_isomorphic(g, h, image)


def test_weave_examples():
    for comp in components(complete_graph(KNIGHT, standard_board(2, 3))):
        assert classify_weave(completions(comp)[1]).is_weave
    for comp in components(complete_graph(Leaper(2, 5), standard_board(6, 14))):
        if len(comp.vertices) > 1:
            assert classify_component(comp).horizontal_weave
    for p, q in SMALL:
        for comp in components(complete_graph(Leaper(p, q), standard_board(p + q, p + q + 2))):
            assert not classify_component(comp).is_weave


def test_component_label():
    cls = classify_component(LeaperGraph.build(KNIGHT, standard_board(3, 3), [(0, 0)]))
    assert cls.singleton


def test_angular_components_examples():
    assert len(angular_components(complete_graph(Leaper(2, 5), standard_board(6, 14)))) == 4
    ring = [c for c in components(complete_graph(KNIGHT, standard_board(3, 3))) if c.edges][0]
    assert is_angular(ring)


def test_straight_pair_with_weave_completion():
    leaper = Leaper(2, 5)
    board = standard_board(6, 14)
    g = LeaperGraph.build(leaper, board, (), [((0, 0), (5, 2)), ((0, 0), (-5, -2))])
    assert angle_type((0, 0), (5, 2), (-5, -2)) is AngleType.STRAIGHT
    assert classify_weave(completions(g)[1]).is_weave
    assert len(angular_components(g)) == 2


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL), st.integers(1, 9), st.integers(1, 12), st.integers(0, 10**6))
def test_angular_components_match_oracle(pair, m, n, seed):
    g = random_subgraph(random.Random(seed), Leaper(*pair), m, n)
    ours = {frozenset(c) for c in edge_sets(angular_components(g))}
    assert ours == {frozenset(c) for c in oracles.angular_classes(as_nx(g))}


def test_is_angular_rejects_isolated_vertices():
    with pytest.raises(ValueError):
        is_angular(complete_graph(KNIGHT, standard_board(3, 3)))


def test_knight_ring_zigzags():
    ring = [c for c in components(complete_graph(KNIGHT, standard_board(3, 3))) if c.edges][0]
    zz = zigzags(ring)
    expected = oracles.angular_classes(as_nx(ring), lateral_only=True)
    assert sorted(len(z) - 1 for z in zz) == sorted(len(c) for c in expected)
    assert len(zz) == 4


def test_single_edge_zigzag():
    g = LeaperGraph.build(KNIGHT, standard_board(3, 3), (), [((-1, -1), (0, 1))])
    assert zigzags(g) == [[(-1, -1), (0, 1)]]


def test_zigzags_cover_edges_once():
    g = complete_graph(Leaper(2, 5), standard_board(6, 14))
    zz = zigzags(g)
    covered = [frozenset(e) for z in zz for e in zip(z, z[1:])]
    assert len(covered) == len(set(covered)) == len(g.edges)
    for z in zz:
        dxs = {abs(b[0] - a[0]) for a, b in zip(z, z[1:])}
        assert len(dxs) == 1
        if dxs == {5}:
            assert len({a[0] for a in z}) <= 2
            assert len(z) < 3 or abs(z[0][0] - z[1][0]) == 5


def test_wazir_journeys():
    assert wazir_journey_exists(complete_graph(Leaper(2, 5), standard_board(6, 11)))
    assert wazir_journey_exists(complete_graph(KNIGHT, standard_board(3, 3))) == oracles.prop_wazir_journey(1, 2, 3, 3)
    for n in range(1, 12):
        assert not wazir_journey_exists(complete_graph(KNIGHT, standard_board(1, n)))


def test_wazir_neighbourly_components_match_oracle():
    for p, q in SMALL:
        for m, n in [(4, 7), (5, 9), (7, 7)]:
            g = complete_graph(Leaper(p, q), standard_board(m, n))
            assert bool(wazir_neighbourly_components(g)) == oracles.prop_wazir_journey(p, q, m, n)


def test_connectivity_examples():
    assert is_biconnected(complete_graph(KNIGHT, standard_board(3, 4)))
    assert not is_biconnected(complete_graph(KNIGHT, standard_board(3, 3)))
    assert not is_nontrivially_connected(complete_graph(KNIGHT, standard_board(1, 1)))


def test_is_connected_component():
    g = complete_graph(KNIGHT, standard_board(3, 3))
    ring = [c for c in components(g) if c.edges][0]
    assert is_connected_component(ring)
    broken = LeaperGraph.build(KNIGHT, g.board, ring.vertices, ring.sorted_edges()[1:])
    assert not is_connected_component(broken)


@pytest.mark.parametrize("pair", [(1, 2), (2, 3), (2, 5), (5, 8), (5, 12)])
def test_clover_classes_match_oracle(pair):
    assert sorted(c.size for c in clovers(Leaper(*pair))) == oracles.translation_classes(*pair)


def test_clover_examples():
    knight = clovers(KNIGHT)
    assert len(knight) == 1 and knight[0].size == 1
    assert admits_hamiltonian_cycle(WAZIR, knight[0].members[0].vertices)
    assert sorted(c.size for c in clovers(Leaper(5, 12))) == [1, 1, 9]
    assert sorted(c.size for c in clovers(Leaper(2, 3))) == [1, 1]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(0, 1), (1, 2), (1, 3)]), st.sets(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=3, max_size=8))
def test_hamiltonian_matches_permutations(pair, cells):
    leaper = Leaper(*pair)
    assert admits_hamiltonian_cycle(leaper, cells) == oracles.hamiltonian_by_permutations(leaper.p, leaper.q, cells)


def test_hamiltonian_cutoff():
    cells = list(standard_board(9, 9).cells())
    assert admits_hamiltonian_cycle(WAZIR, cells, cutoff=64) is None
