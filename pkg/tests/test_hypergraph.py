"""Hypergraph of lines and pseudo-discs against definition-level oracles."""

import math
from itertools import combinations

import networkx as nx
import pytest

import naive
from linelab import (
    CapExceeded,
    Disc,
    Line,
    Point,
    Scene,
    UnknownVertex,
    ValidationFailed,
    WitnessLocalizationFailed,
    build_hypergraph,
    delaunay_graph,
    gen_incircle_scene,
    gen_random_lines,
    gen_random_scene_discs,
    induced_subhypergraph,
    link_of_line,
    planarity_check,
    three_hyperedge_cell_graph,
    vc_dimension,
)


@pytest.fixture
def square_scene(square_lines):
    discs = (
        Disc(0, Point(2.0, 2.0), 1.0),   # interior, meets nothing
        Disc(1, Point(2.0, 2.0), 2.6),   # crosses all four
        Disc(2, Point(0.5, 2.0), 1.0),   # crosses x=0 only
        Disc(3, Point(0.5, 1.0), 0.8),   # crosses x=0 only, second witness
        Disc(4, Point(2.0, 0.5), 1.0),   # crosses y=0 only
    )
    return Scene(tuple(square_lines), discs)


def test_hand_scene_edges_and_witnesses(square_scene):
    h = build_hypergraph(square_scene)
    assert h.vertex_ids == frozenset({0, 1, 2, 3})
    assert h.edges == ((0,), (0, 1, 2, 3), (2,))
    # two discs share the (0,) edge, witnesses merge sorted
    assert h.witnesses[(0,)] == (2, 3)
    assert h.witnesses[(0, 1, 2, 3)] == (1,)
    assert h.size_histogram == {1: 2, 4: 1}
    assert h.count_by_size(1) == 2
    assert h.count_by_size(3) == 0


def test_degree_count(square_scene):
    h = build_hypergraph(square_scene)
    assert h.degree_count(0) == 2
    assert h.degree_count(0, 1) == 1
    assert h.degree_count(0, 4) == 1
    assert h.degree_count(1) == 1
    assert h.degree_count(0) == naive.naive_degree(square_scene, 0)
    with pytest.raises(UnknownVertex):
        h.degree_count(7)


def test_recorded_tangency_overrides_distance(square_lines):
    # geometrically nowhere near line 1, the metadata still wins
    d = Disc(0, Point(0.5, 2.0), 0.9, tangent_to=(1,))
    h = build_hypergraph(Scene(tuple(square_lines), (d,)))
    assert h.edges == ((0, 1),)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_matches_definition_oracle(seed):
    lines = gen_random_lines(4, seed)
    s = gen_random_scene_discs(lines, 10, seed)
    h = build_hypergraph(s)
    assert dict(zip(h.edges, (h.witnesses[e] for e in h.edges))) == \
        naive.naive_hyperedges(s)


def test_validation_failure_blocks_build():
    # three concurrent lines fail the audit; validate=False side-steps it
    s2 = math.sqrt(0.5)
    concurrent = (
        Line(0, 1.0, 0.0, 0.0),
        Line(1, 0.0, 1.0, 0.0),
        Line(2, s2, s2, 0.0),
    )
    s = Scene(concurrent, (Disc(0, Point(5.0, 5.0), 0.5),))
    with pytest.raises(ValidationFailed):
        build_hypergraph(s)
    h = build_hypergraph(s, validate=False)
    assert h.edges == ()


def test_to_dict_shape(square_scene):
    d = build_hypergraph(square_scene).to_dict()
    assert d["n"] == 4
    assert d["edges"] == [[0], [0, 1, 2, 3], [2]]
    assert d["witnesses"]["0"] == [2, 3]
    assert d["histogram"] == {"1": 2, "4": 1}


# -- induced and link --------------------------------------------------------


def test_induced_subhypergraph(square_scene):
    h = build_hypergraph(square_scene)
    sub = induced_subhypergraph(h, {0, 1})
    # (0,1,2,3) traces to (0,1); the two (0,) edges collapse
    assert sub.edges == ((0,), (0, 1))
    assert sub.witnesses[(0,)] == (2, 3)
    assert sub.witnesses[(0, 1)] == (1,)
    with pytest.raises(UnknownVertex):
        induced_subhypergraph(h, {0, 9})


def test_induced_traces_merge_witnesses(square_scene):
    h = build_hypergraph(square_scene)
    sub = induced_subhypergraph(h, {0})
    assert sub.edges == ((0,),)
    assert sub.witnesses[(0,)] == (1, 2, 3)


def test_induced_matches_manual_trace():
    lines = gen_random_lines(5, 8)
    s = gen_random_scene_discs(lines, 14, 8)
    h = build_hypergraph(s)
    vs = {0, 2, 4}
    sub = induced_subhypergraph(h, vs)
    manual = {}
    for e in h.edges:
        tr = tuple(v for v in e if v in vs)
        if tr:
            manual.setdefault(tr, set()).update(h.witnesses[e])
    assert set(sub.edges) == set(manual)
    for e in sub.edges:
        assert set(sub.witnesses[e]) == manual[e]


def test_link_of_line(square_scene):
    h = build_hypergraph(square_scene)
    lk = link_of_line(h, 0)
    # (0,) loses its only vertex and drops; the 4-edge keeps the rest
    assert lk.vertex_ids == frozenset({1, 2, 3})
    assert lk.edges == ((1, 2, 3),)
    assert lk.witnesses[(1, 2, 3)] == (1,)
    with pytest.raises(UnknownVertex):
        link_of_line(h, 12)


# -- Delaunay graph and planarity --------------------------------------------


def test_delaunay_graph_collects_pairs(square_lines):
    discs = (
        Disc(0, Point(0.5, 0.5), 0.9),             # meets x=0 and y=0
        Disc(1, Point(3.5, 0.5), 0.9),             # meets x=4 and y=0
        Disc(2, Point(2.0, 2.0), 2.6),             # all four lines
    )
    h = build_hypergraph(Scene(tuple(square_lines), discs))
    g = delaunay_graph(h)
    assert g.edges == frozenset({(0, 2), (1, 2)})
    assert g.edge_count() == 2
    assert planarity_check(g)


def test_planarity_check_input_forms():
    k5 = list(combinations(range(5), 2))
    assert not planarity_check(k5)
    assert not planarity_check(nx.complete_graph(5))
    assert planarity_check([(0, 1), (1, 2), (2, 0)])
    assert not planarity_check(list(nx.complete_bipartite_graph(3, 3).edges))


@pytest.mark.parametrize("n,m,seed", [
    (4, 8, 0), (4, 10, 1), (5, 12, 2), (5, 12, 3), (6, 14, 4),
    (6, 14, 5), (7, 16, 6), (7, 16, 7), (5, 18, 8), (6, 18, 9),
    (4, 14, 10), (7, 20, 11),
])
def test_delaunay_planarity_matches_subdivision_search(n, m, seed):
    s = gen_random_scene_discs(gen_random_lines(n, seed), m, seed)
    g = delaunay_graph(build_hypergraph(s))
    assert planarity_check(g) == naive.naive_planar(g.vertices, g.edges)


# -- VC dimension and Delaunay constant --------------------------------------


@pytest.mark.parametrize("n,m,seed", [(4, 10, 0), (5, 12, 1), (6, 10, 2)])
def test_vc_dimension_matches_bitmask_oracle(n, m, seed):
    s = gen_random_scene_discs(gen_random_lines(n, seed), m, seed)
    h = build_hypergraph(s)
    rep = vc_dimension(h)
    dim, _ = naive.naive_vc(h.edges, h.vertex_ids)
    assert rep.vc_dimension == dim
    if rep.shattered_witness:
        want = 1 << len(rep.shattered_witness)
        target = frozenset(rep.shattered_witness)
        traces = {frozenset(e) & target for e in h.edges}
        assert len(traces) == want


@pytest.mark.parametrize("n,m,seed", [(4, 8, 3), (5, 10, 4)])
def test_delaunay_constant_exhaustive_matches_oracle(n, m, seed):
    s = gen_random_scene_discs(gen_random_lines(n, seed), m, seed)
    h = build_hypergraph(s)
    rep = vc_dimension(h)
    assert rep.delaunay_exhaustive
    assert rep.delaunay_constant == pytest.approx(
        naive.naive_delaunay_constant(h.edges, h.vertex_ids)
    )


def test_vc_cap_exceeded_carries_report(square_scene):
    h = build_hypergraph(square_scene)
    with pytest.raises(CapExceeded) as exc:
        vc_dimension(h, cap=1)
    rep = exc.value.report
    assert rep.vc_dimension >= 1
    assert rep.cap == 1
    assert rep.to_dict()["cap"] == 1


def test_vc_sampled_constant_is_lower_bound():
    s = gen_incircle_scene(7, 0, validate=False)
    h = build_hypergraph(s, validate=False)
    rep = vc_dimension(h, exhaustive_limit=5, samples=50, seed=1)
    assert not rep.delaunay_exhaustive
    full = vc_dimension(h)
    assert rep.delaunay_constant <= full.delaunay_constant + 1e-12


# -- cell-pair graph for 3-hyperedges ----------------------------------------


@pytest.mark.parametrize("n,seed", [(5, 2), (5, 3), (6, 0)])
def test_cell_graph_one_edge_per_three_hyperedge(n, seed):
    s = gen_incircle_scene(n, seed, validate=False)
    h = build_hypergraph(s, validate=False)
    for pivot in range(n):
        g = three_hyperedge_cell_graph(s, pivot, validate=False)
        assert g.edge_count() == h.degree_count(pivot, 3)
        assert len(g.edges) == len({e for _, e, _ in g.edges})
        for (pair, edge, face) in g.edges:
            assert face in g.zone_faces
            assert pair[0] in g.vertices and pair[1] in g.vertices
            assert pivot in edge and len(edge) == 3


def test_cell_graph_pairs_distinct_within_cell():
    s = gen_incircle_scene(6, 1, validate=False)
    g = three_hyperedge_cell_graph(s, 0, validate=False)
    for face, rec in g.per_cell.items():
        pairs = [p for p, _ in rec["pairs"]]
        assert len(pairs) == len(set(pairs))
        assert rec["cell_edges"] == g.arrangement.cell_complexity(face)
    d = g.to_dict()
    assert d["pivot"] == 0
    assert d["n_edges"] == g.edge_count()


def test_cell_graph_needs_companion_lines():
    s = Scene((Line(0, 1.0, 0.0, 0.0),), (Disc(0, Point(0.5, 0.0), 1.0),))
    with pytest.raises(UnknownVertex):
        three_hyperedge_cell_graph(s, 0, validate=False)
