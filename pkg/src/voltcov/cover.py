"""Building covers from voltage graphs, and deciding properties of the cover
straight from the voltage data.

The cover of (base, group, weights, voltages) has one vertex per pair
(base vertex v, right coset of weight(v)) and one dart per pair
(base dart x, right coset of weight(x)); its beg keeps the coset and its inv
multiplies by the voltage.  Cosets are keyed by their canonical (least)
representatives, so labels are reproducible across runs.

Each boolean decision procedure returns a witness alongside the verdict.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from .dartgraph import Graph, GraphMorphism, Walk
from .errors import SizeCapExceeded
from .normalize import t_normalize
from .permgrp import Group, Perm, generated_by
from .voltage import (
    GenVoltageGraph,
    dart_fibre_size,
    validate_gvg,
    vertex_fibre_size,
    walk_voltage,
    weight_index,
)

DEFAULT_SIZE_CAP = 1_000_000

Label = tuple[int, Perm]


class Cover(NamedTuple):
    """A built cover: the graph, its labels, and the projection to the base."""

    graph: Graph
    source: GenVoltageGraph
    vertex_labels: tuple[Label, ...]
    dart_labels: tuple[Label, ...]
    vertex_index: dict[Label, int]
    dart_index: dict[Label, int]
    projection: GraphMorphism

    def fibre_vertices(self, v: int) -> list[int]:
        return [i for i, lab in enumerate(self.vertex_labels) if lab[0] == v]

    def fibre_darts(self, x: int) -> list[int]:
        return [i for i, lab in enumerate(self.dart_labels) if lab[0] == x]


def gen_cov(gvg: GenVoltageGraph, *, cap: int = DEFAULT_SIZE_CAP) -> Cover:
    """Construct the cover of a validated voltage graph.

    While building, the label computations are re-run from every coset
    member, so an ill-defined beg or inv (impossible for validated input)
    would be caught rather than silently mangled.
    """
    validate_gvg(gvg)
    base, group = gvg.base, gvg.group
    total = sum(vertex_fibre_size(gvg, v) for v in base.vertices)
    total += sum(dart_fibre_size(gvg, x) for x in base.darts)
    if total > cap:
        raise SizeCapExceeded(f"cover would have {total} elements, cap is {cap}")

    vertex_labels: list[Label] = []
    for v in base.vertices:
        w = gvg.vertex_weights[v]
        for rep in sorted({w.coset_rep(g) for g in group}):
            vertex_labels.append((v, rep))
    dart_labels: list[Label] = []
    for x in base.darts:
        w = gvg.dart_weights[x]
        for rep in sorted({w.coset_rep(g) for g in group}):
            dart_labels.append((x, rep))
    vertex_index = {lab: i for i, lab in enumerate(vertex_labels)}
    dart_index = {lab: i for i, lab in enumerate(dart_labels)}

    beg = []
    inv = []
    for x, rep in dart_labels:
        wb = gvg.vertex_weights[base.beg[x]]
        wi = gvg.dart_weights[base.inv[x]]
        beg.append(vertex_index[(base.beg[x], wb.coset_rep(rep))])
        inv.append(dart_index[(base.inv[x], wi.coset_rep(gvg.voltages[x] * rep))])

    # representative independence: recompute from every coset member
    for x in base.darts:
        wx = gvg.dart_weights[x]
        wb = gvg.vertex_weights[base.beg[x]]
        wi = gvg.dart_weights[base.inv[x]]
        zx = gvg.voltages[x]
        for g in group:
            rep = wx.coset_rep(g)
            if wb.coset_rep(g) != wb.coset_rep(rep):
                raise AssertionError(f"beg not well defined over dart {x}")
            if wi.coset_rep(zx * g) != wi.coset_rep(zx * rep):
                raise AssertionError(f"inv not well defined over dart {x}")

    graph = Graph(len(vertex_labels), beg, inv).validate()
    projection = GraphMorphism(
        graph,
        base,
        tuple(lab[0] for lab in vertex_labels),
        tuple(lab[0] for lab in dart_labels),
    ).check()
    if not projection.is_surjective():
        raise AssertionError("covering projection failed to be onto")
    return Cover(graph, gvg, tuple(vertex_labels), tuple(dart_labels),
                 vertex_index, dart_index, projection)


def valence_check(cover: Cover) -> dict[int, int]:
    """Per base vertex, the common valence of its fibre.

    The valence of every cover vertex over u must equal the sum of the
    weight indices of the darts at u; any violation raises.
    """
    gvg = cover.source
    expected = {
        u: sum(weight_index(gvg, x) for x in gvg.base.darts_at(u))
        for u in gvg.base.vertices
    }
    for i, (u, _) in enumerate(cover.vertex_labels):
        got = cover.graph.valence(i)
        if got != expected[u]:
            raise AssertionError(
                f"cover vertex {cover.vertex_labels[i]} has valence {got}, "
                f"expected {expected[u]}")
    return expected


def neighbours(cover: Cover, label: Label) -> frozenset[Label]:
    """Neighbour labels of a cover vertex, computed from voltages.

    For (u, W g) these are (term x, weight(term x) z g) over darts x at u and
    z in volt(x) * weight(u); the result is checked against the adjacency of
    the built graph before being returned.
    """
    gvg = cover.source
    base = gvg.base
    u, rep = label
    out = set()
    wu = gvg.vertex_weights[u]
    for x in base.darts_at(u):
        t = base.term(x)
        wt = gvg.vertex_weights[t]
        for h in wu:
            z = gvg.voltages[x] * h
            out.add((t, wt.coset_rep(z * rep)))
    vi = cover.vertex_index[label]
    direct = {
        cover.vertex_labels[cover.graph.term(d)] for d in cover.graph.darts_at(vi)
    }
    if out != direct:
        raise AssertionError(f"voltage neighbours of {label} disagree with the graph")
    return frozenset(out)


def lifted_walk_endpoints(cover: Cover, walk: Walk, start: Label | None = None) -> frozenset[Label]:
    """Final vertices of all lifts of a base walk starting at ``start``.

    Defaults to the identity-coset vertex over the walk's initial vertex.
    Computed through the walk voltage; ``enumerate_lifted_walks`` provides
    the independent brute-force route.
    """
    gvg = cover.source
    u = walk.initial_vertex
    if start is None:
        start = (u, gvg.vertex_weights[u].coset_rep(gvg.group.identity))
    if start not in cover.vertex_index:
        raise ValueError(f"{start} is not a cover vertex")
    if start[0] != u:
        raise ValueError("start vertex does not sit over the walk's initial vertex")
    g = start[1]
    v = walk.final_vertex
    wv = gvg.vertex_weights[v]
    zw = walk_voltage(gvg, walk)
    return frozenset((v, wv.coset_rep(z * g)) for z in zw.elements)


def enumerate_lifted_walks(
    cover: Cover, walk: Walk, start: Label | None = None
) -> list[tuple[int, ...]]:
    """All walks in the cover that start at ``start`` and project to ``walk``.

    Pure graph search over the built cover; used as the oracle for the
    walk-voltage route.
    """
    gvg = cover.source
    u = walk.initial_vertex
    if start is None:
        start = (u, gvg.vertex_weights[u].coset_rep(gvg.group.identity))
    at = cover.vertex_index[start]
    partial: list[tuple[tuple[int, ...], int]] = [((), at)]
    for bx in walk.darts:
        nxt = []
        for seq, here in partial:
            for d in cover.graph.darts_at(here):
                if cover.projection.dart_map[d] == bx:
                    nxt.append((seq + (d,), cover.graph.term(d)))
        partial = nxt
    return [seq for seq, _ in partial]


def lifted_endpoints_by_enumeration(
    cover: Cover, walk: Walk, start: Label | None = None
) -> frozenset[Label]:
    gvg = cover.source
    u = walk.initial_vertex
    if start is None:
        start = (u, gvg.vertex_weights[u].coset_rep(gvg.group.identity))
    ends = set()
    for seq in enumerate_lifted_walks(cover, walk, start):
        if seq:
            ends.add(cover.vertex_labels[cover.graph.term(seq[-1])])
        else:
            ends.add(start)
    return frozenset(ends)


class ConnectivityVerdict(NamedTuple):
    connected: bool
    witness: Group


def is_connected_by_voltage(gvg: GenVoltageGraph) -> ConnectivityVerdict:
    """Decide connectivity of the cover without building it.

    The voltage graph is first tree-normalised; the cover is connected
    exactly when the cotree voltages together with all vertex weights
    generate the whole group.  The generated subgroup is returned as the
    witness either way.
    """
    res = t_normalize(gvg)
    g2 = res.gvg
    parts: list[Perm | Group] = [
        g2.voltages[x] for x in g2.base.darts if x not in res.tree_darts
    ]
    parts.extend(g2.vertex_weights)
    witness = generated_by(g2.group, parts)
    return ConnectivityVerdict(witness.order == g2.group.order, witness)


class ParallelVerdict(NamedTuple):
    found: bool
    witness: Optional[tuple[int, int, Perm]]


def has_parallel_darts_by_voltage(gvg: GenVoltageGraph) -> ParallelVerdict:
    """Does the cover contain two distinct darts with equal beg and term?

    True exactly when volt(y) h volt(x)^-1 lands in weight(term x) for some
    darts x, y with matching endpoints and h in weight(beg x), where either
    x != y, or x == y with h outside weight(x).  A witness triple (x, y, h)
    accompanies a positive verdict.
    """
    base = gvg.base
    for x in base.darts:
        zx_inv = gvg.voltages[x].inverse()
        target = gvg.vertex_weights[base.term(x)]
        for y in base.darts:
            if base.beg[y] != base.beg[x] or base.term(y) != base.term(x):
                continue
            zy = gvg.voltages[y]
            for h in gvg.vertex_weights[base.beg[x]]:
                if x == y and h in gvg.dart_weights[x]:
                    continue
                if zy * h * zx_inv in target:
                    return ParallelVerdict(True, (x, y, h))
    return ParallelVerdict(False, None)


class SemiEdgeVerdict(NamedTuple):
    found: bool
    witness: Optional[int]


def has_semiedge_by_voltage(gvg: GenVoltageGraph) -> SemiEdgeVerdict:
    """The cover has a semi-edge iff some self-inverse base dart's voltage
    lies in that dart's weight."""
    for x in gvg.base.darts:
        if gvg.base.inv[x] == x and gvg.voltages[x] in gvg.dart_weights[x]:
            return SemiEdgeVerdict(True, x)
    return SemiEdgeVerdict(False, None)


def is_simple_by_voltage(gvg: GenVoltageGraph) -> bool:
    """Simplicity of the cover from voltage data alone.

    Checks, for every base dart x: the loop condition (no h in
    weight(beg x) outside weight(x) with volt(x) h volt(x)^-1 in
    weight(term x)), the parallel condition against every other dart with
    the same endpoints, and the semi-edge condition on self-inverse darts.
    """
    base = gvg.base
    for x in base.darts:
        zx = gvg.voltages[x]
        zx_inv = zx.inverse()
        target = gvg.vertex_weights[base.term(x)]
        wx = gvg.dart_weights[x]
        for h in gvg.vertex_weights[base.beg[x]]:
            if h not in wx and zx * h * zx_inv in target:
                return False
        for y in base.darts:
            if y == x or base.beg[y] != base.beg[x] or base.term(y) != base.term(x):
                continue
            zy = gvg.voltages[y]
            for h in gvg.vertex_weights[base.beg[x]]:
                if zy * h * zx_inv in target:
                    return False
        if base.inv[x] == x and zx in wx:
            return False
    return True
