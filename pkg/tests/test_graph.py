import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import all_graphs, graphs
from partilab.catalog import named
from partilab.graph import (
    DuplicateEdge,
    EdgeListError,
    LoopCreated,
    OutOfRange,
    SelfLoop,
    co_connected,
    complement,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    enumerate_induced_p3,
    enumerate_triangles,
    find_induced_cycles_up_to,
    identify_vertices,
    induced_paths,
    induced_subgraph,
    is_bipartite,
    is_clique,
    is_cluster,
    is_connected,
    is_independent,
    is_split,
    is_threshold,
    is_triangle_free,
    join,
    make_graph,
    path_graph,
    read_edge_list,
    two_coloring,
    write_edge_list,
)
from partilab.classifier import is_isomorphic
from networkx.algorithms.threshold import is_threshold_graph


def _split_by_definition(g):
    for k in range(g.n + 1):
        for clique in itertools.combinations(range(g.n), k):
            rest = [v for v in range(g.n) if v not in clique]
            if is_clique(g, clique) and is_independent(g, rest):
                return True
    return False


def naive_triangles(g):
    return [t for t in itertools.combinations(range(g.n), 3)
            if all(g.adjacent(a, b) for a, b in itertools.combinations(t, 2))]


def naive_p3(g):
    out = []
    for v in range(g.n):
        for u, w in itertools.combinations(range(g.n), 2):
            if v not in (u, w) and g.adjacent(u, v) and g.adjacent(v, w) and not g.adjacent(u, w):
                out.append((u, v, w))
    return sorted(out)


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def test_make_graph_examples():
    assert make_graph(3, [(0, 1), (1, 2), (0, 2)]) == complete_graph(3)
    assert make_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)]) == cycle_graph(4)
    assert make_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)]) == path_graph(5)


@pytest.mark.parametrize("n,edges,exc", [
    (3, [(0, 3)], OutOfRange),
    (3, [(1, 1)], SelfLoop),
    (3, [(0, 1), (1, 0)], DuplicateEdge),
    (-1, [], OutOfRange),
])
def test_make_graph_rejects(n, edges, exc):
    with pytest.raises(exc):
        make_graph(n, edges)


def test_disjoint_union_examples():
    g = disjoint_union(complete_graph(3), complete_graph(3))
    assert (g.n, g.m) == (6, 6)
    assert disjoint_union(empty_graph(1), empty_graph(1)).m == 0
    q1 = disjoint_union(path_graph(3), complete_graph(2))
    assert (q1.n, q1.m) == (5, 3)
    assert is_isomorphic(q1, named("Q1"))


def test_join_examples():
    assert is_isomorphic(join(complete_graph(2), empty_graph(2)), named("diamond"))
    assert is_isomorphic(join(empty_graph(1), disjoint_union(empty_graph(1), complete_graph(2))), named("paw"))
    assert is_isomorphic(join(empty_graph(1), disjoint_union(complete_graph(2), complete_graph(2))), named("butterfly"))


def test_complement_examples():
    three_k2 = named("3K2")
    assert is_isomorphic(complement(three_k2), named("octahedron"))
    assert complement(complete_graph(5)) == empty_graph(5)
    assert is_isomorphic(complement(cycle_graph(5)), cycle_graph(5))


def test_induced_subgraph_examples():
    assert induced_subgraph(complete_graph(4), [3, 0, 2]) == complete_graph(3)
    assert induced_subgraph(cycle_graph(5), [1, 2, 3]) == path_graph(3)
    octa = named("octahedron")
    tri = next(t for t in enumerate_triangles(octa))
    rest = [v for v in range(6) if v not in tri]
    assert induced_subgraph(octa, rest) == complete_graph(3)
    with pytest.raises(OutOfRange):
        induced_subgraph(octa, [7])


def test_induced_subgraph_keeps_order():
    g = path_graph(4)
    assert induced_subgraph(g, [3, 2, 1]).edges == ((0, 1), (1, 2))


def test_identify_examples():
    g, mapping = identify_vertices(empty_graph(2), [[0, 1]])
    assert g == empty_graph(1) and mapping == [0, 0]
    two_k2 = named("2K2")
    g, _ = identify_vertices(two_k2, [[1, 2]])
    assert g == path_graph(3)
    with pytest.raises(LoopCreated):
        identify_vertices(path_graph(2), [[0, 1]])


def test_identify_collapses_parallel_edges():
    # two paths a-b-c sharing both ends become a single P3
    g = make_graph(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    h, mapping = identify_vertices(g, [[0, 3], [1, 4], [2, 5]])
    assert h == path_graph(3)
    assert mapping == [0, 1, 2, 0, 1, 2]


def test_enumerator_examples():
    assert len(enumerate_triangles(complete_graph(3))) == 1
    assert enumerate_induced_p3(complete_graph(3)) == []
    assert enumerate_triangles(path_graph(3)) == []
    assert enumerate_induced_p3(path_graph(3)) == [(0, 1, 2)]
    octa = named("octahedron")
    assert len(enumerate_triangles(octa)) == 8
    assert len(enumerate_induced_p3(octa)) == 12


def test_enumerators_exhaustive_small():
    for n in range(7):
        for g in all_graphs(n):
            assert enumerate_triangles(g) == naive_triangles(g)
            assert enumerate_induced_p3(g) == naive_p3(g)


def test_enumerators_random():
    rng = random.Random(4)
    for _ in range(200):
        n = rng.randint(0, 12)
        g = make_graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.4])
        assert enumerate_triangles(g) == naive_triangles(g)
        assert enumerate_induced_p3(g) == naive_p3(g)


def test_predicate_examples():
    assert not is_split(cycle_graph(5))
    assert not is_threshold(named("2K2"))
    assert is_cluster(named("K3 + K2"))
    assert not is_cluster(path_graph(3))
    assert is_clique(complete_graph(4)) and is_independent(empty_graph(4))
    assert is_triangle_free(cycle_graph(5)) and not is_triangle_free(complete_graph(3))
    assert is_bipartite(cycle_graph(6)) and not is_bipartite(cycle_graph(7))
    assert two_coloring(cycle_graph(5)) is None


def test_cycle_examples():
    assert find_induced_cycles_up_to(cycle_graph(5), 5) == [(0, 1, 2, 3, 4)]
    assert find_induced_cycles_up_to(complete_graph(4), 6) == []
    assert len(find_induced_cycles_up_to(named("octahedron"), 4)) == 3
    with pytest.raises(ValueError):
        find_induced_cycles_up_to(cycle_graph(5), 3)


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=9))
def test_cycles_match_networkx(g):
    mine = sorted(tuple(sorted(c)) for c in find_induced_cycles_up_to(g, max(g.n, 4)))
    ref = sorted(tuple(sorted(c)) for c in nx.chordless_cycles(to_nx(g)) if len(c) >= 4)
    assert mine == ref


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=8))
def test_complement_involution(g):
    assert complement(complement(g)) == g


@settings(max_examples=200, deadline=None)
@given(graphs(min_n=1, max_n=6), graphs(min_n=1, max_n=6))
def test_join_connected(g, h):
    assert is_connected(join(g, h))
    assert not co_connected(join(g, h))
    assert is_connected(join(empty_graph(0), h)) == is_connected(h)


def _no_odd_cycle(g):
    # a shortest odd cycle is a triangle or an odd induced cycle
    odd = [c for c in find_induced_cycles_up_to(g, max(g.n, 4)) if len(c) % 2]
    return not odd and is_triangle_free(g)


def test_bipartite_iff_no_odd_cycle():
    for n in range(7):
        for g in all_graphs(n):
            assert is_bipartite(g) == _no_odd_cycle(g)
    rng = random.Random(2)
    for _ in range(500):
        n = rng.randint(7, 9)
        g = make_graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.3])
        assert is_bipartite(g) == _no_odd_cycle(g) == nx.is_bipartite(to_nx(g))


def test_threshold_implies_split():
    rng = random.Random(9)
    for _ in range(500):
        n = rng.randint(1, 10)
        g = make_graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < rng.random()])
        if is_threshold(g):
            assert is_split(g)


def test_split_threshold_match_networkx():
    for n in range(6):
        for g in all_graphs(n):
            h = to_nx(g)
            assert is_threshold(g) == is_threshold_graph(h)
            assert is_split(g) == _split_by_definition(g)


def test_induced_paths():
    assert sorted(induced_paths(cycle_graph(6), 0, 3)) == [(0, 1, 2, 3), (0, 5, 4, 3)]
    assert list(induced_paths(complete_graph(3), 0, 2)) == [(0, 2)]
    assert list(induced_paths(empty_graph(2), 0, 1)) == []


def test_edge_list_roundtrip():
    g = named("H17")
    text = write_edge_list(g)
    assert text.startswith(f"p graph 9 {g.m}\n")
    assert read_edge_list("c comment\n" + text) == g


@pytest.mark.parametrize("text", [
    "e 1 2\n",
    "p graph 2 1\ne 1 1\n",
    "p graph 2 2\ne 1 2\ne 2 1\n",
    "p graph 2 1\ne 1 3\n",
    "p graph 3 2\ne 1 2\n",
    "p graph x 1\n",
])
def test_edge_list_rejects(text):
    with pytest.raises((EdgeListError, OutOfRange, SelfLoop, DuplicateEdge)):
        read_edge_list(text)
