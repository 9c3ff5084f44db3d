"""Dart shifting and spanning-tree normalisation."""

from __future__ import annotations

import random

import pytest

from voltcov.acceptance import group_pool, random_gvg
from voltcov.cover import gen_cov, is_connected_by_voltage, is_simple_by_voltage
from voltcov.dartgraph import Graph, find_isomorphism
from voltcov.errors import LoopOrSemiEdge, NotASpanningTree
from voltcov.fixtures import build_graph, cyclic_group, k2_s6_pair, z6_bicoset
from voltcov.normalize import shift_dart, t_normalize
from voltcov.permgrp import Perm, conjugate, generate, trivial_group
from voltcov.voltage import make_gvg, validate_gvg

CYCLE_GVG, PARALLEL_GVG = k2_s6_pair()


def test_shift_dart_clears_voltage_and_witnesses():
    step = shift_dart(PARALLEL_GVG, 0)
    assert step.after.voltages[0].is_identity()
    assert step.conjugator == PARALLEL_GVG.voltages[0]
    validate_gvg(step.after)
    step.witness.verify(gen_cov(step.before), gen_cov(step.after))
    assert find_isomorphism(gen_cov(step.before).graph,
                            gen_cov(step.after).graph) is not None


def test_shift_dart_identity_voltage_keeps_everything():
    step = shift_dart(CYCLE_GVG, 0)
    assert step.after == CYCLE_GVG


def test_shift_dart_rejects_loops_and_semi_edges():
    g = cyclic_group(2)
    a = g.generators[0]
    loop = make_gvg(build_graph(1, [("loop", 0)]), g,
                    (trivial_group(2),), (trivial_group(2), trivial_group(2)),
                    (a, a.inverse()))
    with pytest.raises(LoopOrSemiEdge):
        shift_dart(loop, 0)
    semi = make_gvg(build_graph(1, [("semi", 0)]), g,
                    (trivial_group(2),), (trivial_group(2),), (a,))
    with pytest.raises(LoopOrSemiEdge):
        shift_dart(semi, 0)


def test_shift_dart_handles_loops_at_the_head():
    # a loop hanging at the far end of the shifted dart gets conjugated
    c4 = cyclic_group(4)
    c = c4.generators[0]
    base = build_graph(2, [("link", 0, 1), ("loop", 1)])
    triv = trivial_group(4)
    gvg = make_gvg(base, c4, (triv, triv), (triv,) * 4,
                   (c, c.inverse(), c * c, (c * c).inverse()))
    step = shift_dart(gvg, 0)
    validate_gvg(step.after)
    assert step.after.voltages[0].is_identity()
    step.witness.verify(gen_cov(gvg), gen_cov(step.after))


def test_t_normalize_fixture_weights_become_conjugates():
    res = t_normalize(PARALLEL_GVG, [0, 1])
    assert all(res.gvg.voltages[d].is_identity() for d in res.tree_darts)
    # the dart into the least leaf carries sigma^2, so the tail weight moves
    sigma2 = PARALLEL_GVG.voltages[1]
    assert res.gvg.vertex_weights[0] == conjugate(PARALLEL_GVG.vertex_weights[0], sigma2)
    assert res.gvg.vertex_weights[1] == PARALLEL_GVG.vertex_weights[1]
    # still three components after normalising
    assert len(gen_cov(res.gvg).graph.components()) == 3
    res.witness.verify(gen_cov(PARALLEL_GVG), gen_cov(res.gvg))


def test_t_normalize_already_normalised_is_identity():
    res = t_normalize(CYCLE_GVG)
    assert res.gvg == CYCLE_GVG
    res2 = t_normalize(z6_bicoset())
    assert res2.gvg == z6_bicoset()


def test_t_normalize_auto_tree_matches_bfs():
    res = t_normalize(PARALLEL_GVG)
    assert res.tree_darts == PARALLEL_GVG.base.spanning_tree().darts


def test_t_normalize_rejects_bad_trees():
    with pytest.raises(NotASpanningTree):
        t_normalize(PARALLEL_GVG, [])
    g = cyclic_group(2)
    a = g.generators[0]
    loop = make_gvg(build_graph(1, [("loop", 0)]), g,
                    (trivial_group(2),), (trivial_group(2), trivial_group(2)),
                    (a, a.inverse()))
    with pytest.raises(NotASpanningTree):
        t_normalize(loop, [0])


def test_t_normalize_on_random_instances():
    rng = random.Random(0)
    for _ in range(30):
        gvg = random_gvg(rng, group_pool(12))
        res = t_normalize(gvg)
        validate_gvg(res.gvg)
        assert all(res.gvg.voltages[d].is_identity() for d in res.tree_darts)
        res.witness.verify(gen_cov(gvg), gen_cov(res.gvg))


def test_normalisation_preserves_decisions():
    rng = random.Random(1)
    for _ in range(20):
        gvg = random_gvg(rng, group_pool(12))
        res = t_normalize(gvg)
        assert is_connected_by_voltage(gvg).connected == \
            is_connected_by_voltage(res.gvg).connected
        assert is_simple_by_voltage(gvg) == is_simple_by_voltage(res.gvg)


def test_different_trees_give_isomorphic_covers():
    # K2 with a parallel edge: two possible spanning trees
    c4 = cyclic_group(4)
    c = c4.generators[0]
    triv = trivial_group(4)
    base = build_graph(2, [("link", 0, 1), ("link", 0, 1)])
    gvg = make_gvg(base, c4, (triv, triv), (triv,) * 4,
                   (c, c.inverse(), Perm.identity(4), Perm.identity(4)))
    one = t_normalize(gvg, [0])
    two = t_normalize(gvg, [2])
    assert find_isomorphism(gen_cov(one.gvg).graph, gen_cov(two.gvg).graph) is not None


def test_steps_report_conjugators():
    res = t_normalize(PARALLEL_GVG, [0, 1])
    assert len(res.steps) == 1
    assert res.steps[0].dart == 1
    assert res.steps[0].conjugator == PARALLEL_GVG.voltages[1]
