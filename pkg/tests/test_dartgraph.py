"""Dart-based graph tests."""

from __future__ import annotations

import random

import pytest

from voltcov.dartgraph import (
    Graph,
    GraphMorphism,
    Walk,
    classify_edges,
    find_isomorphism,
    has_parallel_darts,
    has_semi_edge,
    is_simple,
    to_dot,
)
from voltcov.errors import (
    DanglingDart,
    InvNotInvolution,
    NotConnected,
    SpecFormatError,
    TooLarge,
)
from voltcov.fixtures import build_graph, complete_bipartite, cycle_graph, prism_graph

K2 = build_graph(2, [("link", 0, 1)])
SEMI = build_graph(1, [("semi", 0)])


def test_validate_accepts_k2_and_semi_edge():
    K2.validate()
    SEMI.validate()


def test_validate_rejects_non_involution():
    bad = Graph(3, (0, 1, 2), (1, 2, 0))  # inv cycles three darts
    with pytest.raises(InvNotInvolution):
        bad.validate()


def test_validate_rejects_dangling():
    with pytest.raises(DanglingDart):
        Graph(1, (0, 3), (1, 0)).validate()
    with pytest.raises(DanglingDart):
        Graph(1, (0,), (4,)).validate()


def test_term_is_beg_of_inverse():
    g = cycle_graph(4)
    for x in g.darts:
        assert g.term(x) == g.beg[g.inv[x]]


def test_classify_semi_loop_link():
    g = build_graph(2, [("link", 0, 1), ("loop", 0), ("semi", 1)])
    cls = classify_edges(g)
    assert len(cls.links) == 1 and len(cls.loops) == 1 and len(cls.semi_edges) == 1
    assert cls.tags[(0, 1)] == "link"
    assert cls.tags[(2, 3)] == "loop"
    assert cls.tags[(4, 4)] == "semi-edge"


def test_classify_six_cycle():
    cls = classify_edges(cycle_graph(6))
    assert len(cls.links) == 6
    assert all(len(c) == 1 for c in cls.parallel_classes)


def test_parallel_classes_group_double_edge():
    g = build_graph(2, [("link", 0, 1), ("link", 0, 1), ("link", 1, 0)])
    cls = classify_edges(g)
    assert [len(c) for c in cls.parallel_classes] == [3]
    assert not is_simple(g)


def test_is_simple():
    assert is_simple(cycle_graph(6))
    assert not is_simple(SEMI)
    assert not is_simple(build_graph(1, [("loop", 0)]))


def test_components():
    assert len(cycle_graph(6).components()) == 1
    lone = build_graph(1, [])
    assert lone.components() == [[0]]
    two = build_graph(4, [("link", 0, 1), ("link", 2, 3)])
    assert two.components() == [[0, 1], [2, 3]]
    assert not two.is_connected()


def test_spanning_tree_six_cycle():
    tree = cycle_graph(6).spanning_tree()
    assert tree.edge_count() == 5
    assert set(tree.vertex_order) == set(range(6))


def test_spanning_tree_k2_is_whole_graph():
    tree = K2.spanning_tree()
    assert tree.darts == frozenset({0, 1})


def test_spanning_tree_prefers_least_dart():
    double = build_graph(2, [("link", 0, 1), ("link", 0, 1)])
    tree = double.spanning_tree()
    assert tree.darts == frozenset({0, 1})


def test_spanning_tree_requires_connected():
    two = build_graph(2, [])
    with pytest.raises(NotConnected):
        two.spanning_tree()


def test_valence_sums_to_dart_count():
    rng = random.Random(0)
    for _ in range(20):
        n = rng.randint(1, 5)
        edges = [("link", rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, 4))]
        edges += [("semi", rng.randrange(n)) for _ in range(rng.randint(0, 2))]
        g = build_graph(n, edges)
        assert sum(g.valence(v) for v in g.vertices) == g.n_darts


def test_walks_chain_and_invert():
    g = cycle_graph(4)
    w = Walk(g, (0, 2))
    assert w.initial_vertex == 0 and w.final_vertex == 2
    back = w.inverse()
    assert back.initial_vertex == 2 and back.final_vertex == 0
    assert back.inverse().darts == w.darts


def test_empty_walk_needs_base():
    g = cycle_graph(4)
    w = Walk(g, (), base=3)
    assert w.initial_vertex == w.final_vertex == 3
    with pytest.raises(ValueError):
        Walk(g, ())


def test_walk_rejects_broken_chain():
    g = cycle_graph(4)
    with pytest.raises(ValueError):
        Walk(g, (0, 4))


def test_walk_concatenation():
    g = cycle_graph(4)
    w = Walk(g, (0,)) + Walk(g, (2,))
    assert w.darts == (0, 2)
    with pytest.raises(ValueError):
        Walk(g, (0,)) + Walk(g, (0,))


def test_morphism_check_and_identity():
    g = cycle_graph(5)
    ident = GraphMorphism.identity(g)
    ident.check()
    assert ident.is_bijective()
    bad = GraphMorphism(g, g, tuple([0] * 5), tuple(g.darts))
    with pytest.raises(ValueError):
        bad.check()


def test_find_isomorphism_relabelled_cycle():
    g = cycle_graph(6)
    # rebuild the same cycle with edges listed in scrambled order
    edges = [("link", 2, 3), ("link", 5, 0), ("link", 1, 2),
             ("link", 4, 5), ("link", 0, 1), ("link", 3, 4)]
    h = build_graph(6, edges)
    iso = find_isomorphism(g, h)
    assert iso is not None
    assert iso.is_bijective()


def test_find_isomorphism_self_identity_exists():
    g = prism_graph(3)
    iso = find_isomorphism(g, g)
    assert iso is not None
    iso.check()


def test_find_isomorphism_distinguishes():
    assert find_isomorphism(cycle_graph(6), prism_graph(3)) is None
    path = build_graph(3, [("link", 0, 1), ("link", 1, 2)])
    tri = cycle_graph(3)
    assert find_isomorphism(path, tri) is None
    loop = build_graph(1, [("loop", 0)])
    semi2 = build_graph(1, [("semi", 0), ("semi", 0)])
    assert find_isomorphism(loop, semi2) is None


def test_find_isomorphism_respects_multiplicity():
    single = build_graph(2, [("link", 0, 1)])
    double = build_graph(2, [("link", 0, 1), ("link", 0, 1)])
    assert find_isomorphism(single, double) is None
    other = build_graph(2, [("link", 1, 0), ("link", 1, 0)])
    assert find_isomorphism(double, other) is not None


def test_find_isomorphism_symmetric_on_random_pairs():
    rng = random.Random(42)
    for _ in range(30):
        n = rng.randint(1, 4)
        def rand_graph():
            edges = []
            for _ in range(rng.randint(0, 4)):
                kind = rng.choice(("link", "loop", "semi"))
                if kind == "link":
                    edges.append(("link", rng.randrange(n), rng.randrange(n)))
                elif kind == "loop":
                    edges.append(("loop", rng.randrange(n)))
                else:
                    edges.append(("semi", rng.randrange(n)))
            return build_graph(n, edges)
        a, b = rand_graph(), rand_graph()
        assert (find_isomorphism(a, b) is None) == (find_isomorphism(b, a) is None)


def test_find_isomorphism_cap():
    big = cycle_graph(20)
    with pytest.raises(TooLarge):
        find_isomorphism(big, big, max_darts=5)


def test_text_round_trip():
    g = build_graph(3, [("link", 0, 1), ("loop", 2), ("semi", 1)])
    assert Graph.from_text(g.to_text()) == g


def test_text_parse_errors():
    with pytest.raises(SpecFormatError):
        Graph.from_text("dart 0 beg 0 inv 0\n")  # missing header
    with pytest.raises(SpecFormatError):
        Graph.from_text("vertices 1\ndart 0 beg 0\n")
    with pytest.raises(SpecFormatError):
        Graph.from_text("vertices 1\ndart 1 beg 0 inv 1\n")  # ids not 0..n-1


def test_dot_export_mentions_semi_stub():
    g = build_graph(2, [("link", 0, 1), ("semi", 0)])
    dot = to_dot(g)
    assert "v0 -- v1" in dot
    assert "shape=point" in dot


def test_parallel_and_semi_scans():
    assert has_parallel_darts(build_graph(1, [("loop", 0)]))
    assert not has_parallel_darts(cycle_graph(5))
    assert has_semi_edge(SEMI)
    assert not has_semi_edge(K2)


def test_walk_inverse_swaps_endpoints():
    g = complete_bipartite(2, 3)
    rng = random.Random(1)
    for _ in range(20):
        v = rng.randrange(g.n_vertices)
        darts = []
        here = v
        for _ in range(rng.randint(0, 5)):
            opts = g.darts_at(here)
            if not opts:
                break
            d = rng.choice(opts)
            darts.append(d)
            here = g.term(d)
        w = Walk(g, darts, base=v if not darts else None)
        assert w.inverse().initial_vertex == w.final_vertex
        assert w.inverse().final_vertex == w.initial_vertex
