"""Cover construction and voltage-level decision procedures."""

from __future__ import annotations

import random

import pytest

from voltcov.acceptance import group_pool, random_gvg
from voltcov.cover import (
    gen_cov,
    has_parallel_darts_by_voltage,
    has_semiedge_by_voltage,
    is_connected_by_voltage,
    is_simple_by_voltage,
    lifted_endpoints_by_enumeration,
    lifted_walk_endpoints,
    neighbours,
    valence_check,
)
from voltcov.dartgraph import Graph, Walk, find_isomorphism, has_parallel_darts, has_semi_edge, is_simple
from voltcov.errors import SizeCapExceeded
from voltcov.fixtures import cycle_graph, k2_s6_pair, z2_semi_edge, z6_bicoset
from voltcov.permgrp import Perm
from voltcov.voltage import (
    dart_fibre_size,
    make_gvg,
    vertex_fibre_size,
)

CYCLE_GVG, PARALLEL_GVG = k2_s6_pair()


def test_gen_cov_trivial_voltages_is_six_cycle():
    cover = gen_cov(CYCLE_GVG)
    assert find_isomorphism(cover.graph, cycle_graph(6)) is not None


def test_gen_cov_parallel_fixture():
    cover = gen_cov(PARALLEL_GVG)
    assert cover.graph.n_vertices == 6
    assert len(cover.graph.edges()) == 6
    assert len(cover.graph.components()) == 3


def test_gen_cov_semi_edge_fixture_is_single_edge():
    cover = gen_cov(z2_semi_edge())
    assert cover.graph.n_vertices == 2 and cover.graph.n_darts == 2
    assert cover.graph.inv[0] != 0


def test_cover_sizes_match_fibre_sizes():
    rng = random.Random(0)
    for _ in range(15):
        gvg = random_gvg(rng, group_pool(12))
        cover = gen_cov(gvg)
        assert cover.graph.n_vertices == sum(
            vertex_fibre_size(gvg, v) for v in gvg.base.vertices)
        assert cover.graph.n_darts == sum(
            dart_fibre_size(gvg, x) for x in gvg.base.darts)


def test_cover_inv_is_involution_and_labels_unique():
    rng = random.Random(1)
    for _ in range(10):
        gvg = random_gvg(rng, group_pool(12))
        cover = gen_cov(gvg)
        g = cover.graph
        assert all(g.inv[g.inv[x]] == x for x in g.darts)
        assert len(set(cover.vertex_labels)) == g.n_vertices
        assert len(set(cover.dart_labels)) == g.n_darts


def test_labels_independent_of_coset_representative():
    # beg and inv of a cover dart agree no matter which member names the coset
    rng = random.Random(2)
    for _ in range(10):
        gvg = random_gvg(rng, group_pool(12))
        cover = gen_cov(gvg)
        base = gvg.base
        for x in base.darts:
            wx = gvg.dart_weights[x]
            wb = gvg.vertex_weights[base.beg[x]]
            wi = gvg.dart_weights[base.inv[x]]
            for g in gvg.group:
                rep = wx.coset_rep(g)
                d = cover.dart_index[(x, rep)]
                assert cover.vertex_labels[cover.graph.beg[d]] == (
                    base.beg[x], wb.coset_rep(g))
                assert cover.dart_labels[cover.graph.inv[d]] == (
                    base.inv[x], wi.coset_rep(gvg.voltages[x] * g))


def test_size_cap():
    with pytest.raises(SizeCapExceeded):
        gen_cov(PARALLEL_GVG, cap=10)


def test_valence_check_fixture():
    assert valence_check(gen_cov(CYCLE_GVG)) == {0: 2, 1: 2}
    assert valence_check(gen_cov(PARALLEL_GVG)) == {0: 2, 1: 2}
    assert valence_check(gen_cov(z6_bicoset())) == {0: 3, 1: 2}


def test_valence_check_isolated_vertex():
    from voltcov.fixtures import cyclic_group

    g3 = cyclic_group(3)
    gvg = make_gvg(Graph(1, (), ()), g3, (g3,), (), ())
    cover = gen_cov(gvg)
    assert cover.graph.n_vertices == 1
    assert valence_check(cover) == {0: 0}


def test_neighbours_match_adjacency_everywhere():
    rng = random.Random(3)
    for _ in range(10):
        gvg = random_gvg(rng, group_pool(12))
        cover = gen_cov(gvg)
        for lab in cover.vertex_labels:
            neighbours(cover, lab)  # raises on any disagreement


def test_neighbours_semi_edge_fixture():
    gvg = z2_semi_edge()
    cover = gen_cov(gvg)
    ident = Perm.identity(2)
    start = (0, gvg.dart_weights[0].coset_rep(ident))
    labs = neighbours(cover, (0, gvg.vertex_weights[0].coset_rep(ident)))
    a = gvg.voltages[0]
    assert labs == frozenset({(0, gvg.vertex_weights[0].coset_rep(a))})


def test_lifted_endpoints_length_zero():
    cover = gen_cov(PARALLEL_GVG)
    w = Walk(PARALLEL_GVG.base, (), base=0)
    ident = Perm.identity(6)
    expected = frozenset({(0, PARALLEL_GVG.vertex_weights[0].coset_rep(ident))})
    assert lifted_walk_endpoints(cover, w) == expected


def test_lifted_endpoints_single_dart_and_closed():
    cover = gen_cov(PARALLEL_GVG)
    for darts in ((0,), (0, 1)):
        w = Walk(PARALLEL_GVG.base, darts)
        assert lifted_walk_endpoints(cover, w) == lifted_endpoints_by_enumeration(cover, w)


def test_lifted_endpoints_from_other_fibre_points():
    rng = random.Random(4)
    for _ in range(8):
        gvg = random_gvg(rng, group_pool(12))
        cover = gen_cov(gvg)
        v0 = rng.randrange(gvg.base.n_vertices)
        starts = [lab for lab in cover.vertex_labels if lab[0] == v0]
        start = rng.choice(starts)
        darts = []
        here = v0
        for _ in range(rng.randint(0, 4)):
            opts = gvg.base.darts_at(here)
            if not opts:
                break
            d = rng.choice(opts)
            darts.append(d)
            here = gvg.base.term(d)
        w = Walk(gvg.base, darts, base=v0 if not darts else None)
        assert lifted_walk_endpoints(cover, w, start) == \
            lifted_endpoints_by_enumeration(cover, w, start)


def test_connectivity_verdicts_fixture():
    v = is_connected_by_voltage(CYCLE_GVG)
    assert v.connected and v.witness.order == 6
    v = is_connected_by_voltage(PARALLEL_GVG)
    assert not v.connected
    assert v.witness.order == 2
    # the witness index equals the component count here
    assert PARALLEL_GVG.group.order // v.witness.order == 3
    assert is_connected_by_voltage(z6_bicoset()).connected


def test_connectivity_single_vertex_full_weight():
    from voltcov.fixtures import cyclic_group

    g = cyclic_group(4)
    base = Graph(1, (0,), (0,))
    gvg = make_gvg(base, g, (g,), (g,), (g.identity,))
    assert is_connected_by_voltage(gvg).connected


def test_parallel_verdicts_fixture():
    assert has_parallel_darts_by_voltage(PARALLEL_GVG).found
    assert not has_parallel_darts_by_voltage(CYCLE_GVG).found


def test_parallel_witness_is_real():
    verdict = has_parallel_darts_by_voltage(PARALLEL_GVG)
    x, y, h = verdict.witness
    gvg = PARALLEL_GVG
    cover = gen_cov(gvg)
    d1 = cover.dart_index[(x, gvg.dart_weights[x].coset_rep(gvg.group.identity))]
    d2 = cover.dart_index[(y, gvg.dart_weights[y].coset_rep(h))]
    assert d1 != d2
    assert cover.graph.beg[d1] == cover.graph.beg[d2]
    assert cover.graph.term(d1) == cover.graph.term(d2)


def test_semi_edge_verdicts():
    assert not has_semiedge_by_voltage(z2_semi_edge()).found
    trivial = z2_semi_edge(trivial_voltage=True)
    verdict = has_semiedge_by_voltage(trivial)
    assert verdict.found and verdict.witness == 0
    assert not has_semiedge_by_voltage(CYCLE_GVG).found


def test_simplicity_fixture():
    assert is_simple_by_voltage(CYCLE_GVG)
    assert not is_simple_by_voltage(PARALLEL_GVG)


def test_voltage_verdicts_match_cover_oracles():
    rng = random.Random(5)
    for _ in range(60):
        gvg = random_gvg(rng, group_pool(12))
        cover = gen_cov(gvg)
        assert is_connected_by_voltage(gvg).connected == cover.graph.is_connected()
        assert has_semiedge_by_voltage(gvg).found == has_semi_edge(cover.graph)
        assert has_parallel_darts_by_voltage(gvg).found == has_parallel_darts(cover.graph)
        assert is_simple_by_voltage(gvg) == is_simple(cover.graph)


def test_simple_equals_no_parallel_no_semi():
    rng = random.Random(6)
    for _ in range(40):
        gvg = random_gvg(rng, group_pool(12))
        expected = not (has_parallel_darts_by_voltage(gvg).found
                        or has_semiedge_by_voltage(gvg).found)
        assert is_simple_by_voltage(gvg) == expected


def test_projection_is_morphism_onto_base():
    cover = gen_cov(PARALLEL_GVG)
    cover.projection.check()
    assert cover.projection.is_surjective()
    assert cover.projection.codomain == PARALLEL_GVG.base
