"""Voltage normalisation.

``shift_dart`` rewrites voltages and weights so that one chosen dart (with
distinct endpoints) carries the identity voltage, returning the isomorphism
between the two covers explicitly as a label map.  ``t_normalize`` iterates
this along a spanning tree by peeling leaves, so the final assignment is
trivial on every tree dart; the composed witness maps fibres to fibres.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .dartgraph import Graph, SpanningTree
from .errors import LoopOrSemiEdge, NotASpanningTree
from .permgrp import Perm, conjugate
from .voltage import GenVoltageGraph, validate_gvg

Label = tuple[int, Perm]


class CoverRelabelling:
    """A bijection between the labels of two covers over the same base.

    Keys and values are (base element, canonical coset representative)
    pairs; the base component is always preserved, so the map is fibre
    preserving by construction.
    """

    __slots__ = ("vertex_map", "dart_map")

    def __init__(self, vertex_map: dict[Label, Label], dart_map: dict[Label, Label]):
        self.vertex_map = vertex_map
        self.dart_map = dart_map

    @classmethod
    def identity_for(cls, gvg: GenVoltageGraph) -> "CoverRelabelling":
        vmap = {}
        for v, w in enumerate(gvg.vertex_weights):
            for g in gvg.group:
                lab = (v, w.coset_rep(g))
                vmap[lab] = lab
        dmap = {}
        for x, w in enumerate(gvg.dart_weights):
            for g in gvg.group:
                lab = (x, w.coset_rep(g))
                dmap[lab] = lab
        return cls(vmap, dmap)

    def compose(self, then: "CoverRelabelling") -> "CoverRelabelling":
        return CoverRelabelling(
            {k: then.vertex_map[v] for k, v in self.vertex_map.items()},
            {k: then.dart_map[v] for k, v in self.dart_map.items()},
        )

    def verify(self, before, after) -> None:
        """Check this is a fibre-preserving isomorphism between two built covers.

        ``before`` and ``after`` are Cover objects; raises ValueError with the
        first discrepancy found.
        """
        if set(self.vertex_map) != set(before.vertex_labels):
            raise ValueError("vertex map domain differs from source cover labels")
        if set(self.vertex_map.values()) != set(after.vertex_labels):
            raise ValueError("vertex map image differs from target cover labels")
        if set(self.dart_map) != set(before.dart_labels):
            raise ValueError("dart map domain differs from source cover labels")
        if set(self.dart_map.values()) != set(after.dart_labels):
            raise ValueError("dart map image differs from target cover labels")
        if len(set(self.vertex_map.values())) != len(self.vertex_map):
            raise ValueError("vertex map is not injective")
        if len(set(self.dart_map.values())) != len(self.dart_map):
            raise ValueError("dart map is not injective")
        for lab, out in self.vertex_map.items():
            if lab[0] != out[0]:
                raise ValueError(f"vertex {lab} leaves its fibre")
        for lab, out in self.dart_map.items():
            if lab[0] != out[0]:
                raise ValueError(f"dart {lab} leaves its fibre")
        for d in before.graph.darts:
            lab = before.dart_labels[d]
            d2 = after.dart_index[self.dart_map[lab]]
            lb = before.vertex_labels[before.graph.beg[d]]
            if after.vertex_labels[after.graph.beg[d2]] != self.vertex_map[lb]:
                raise ValueError(f"map breaks beg at cover dart {lab}")
            li = before.dart_labels[before.graph.inv[d]]
            if after.dart_labels[after.graph.inv[d2]] != self.dart_map[li]:
                raise ValueError(f"map breaks inv at cover dart {lab}")


@dataclass(frozen=True)
class NormalisationStep:
    """One dart shift: the conjugator, the rewritten voltage graph, and the
    label-level cover isomorphism."""

    dart: int
    conjugator: Perm
    before: GenVoltageGraph
    after: GenVoltageGraph
    witness: CoverRelabelling


@dataclass(frozen=True)
class NormalisationResult:
    gvg: GenVoltageGraph
    witness: CoverRelabelling
    steps: tuple[NormalisationStep, ...]
    tree_darts: frozenset[int]


def _shift_tables(gvg: GenVoltageGraph, x: int) -> GenVoltageGraph:
    """New weights and voltages after granting dart x the identity voltage.

    Voltages of darts beginning at the head get the conjugator appended,
    those ending there get its inverse prepended (a loop at the head gets
    both); weights of the head and of darts starting there are conjugated.
    """
    base = gvg.base
    head = base.term(x)
    a = gvg.voltages[x]
    ainv = a.inverse()
    voltages = []
    for y in base.darts:
        z = gvg.voltages[y]
        starts = base.beg[y] == head
        ends = base.term(y) == head
        if starts and ends:
            z = ainv * z * a
        elif starts:
            z = z * a
        elif ends:
            z = ainv * z
        voltages.append(z)
    vertex_weights = [
        conjugate(w, a) if v == head else w for v, w in enumerate(gvg.vertex_weights)
    ]
    dart_weights = [
        conjugate(w, a) if base.beg[y] == head else w
        for y, w in enumerate(gvg.dart_weights)
    ]
    return GenVoltageGraph(base, gvg.group, vertex_weights, dart_weights, voltages)


def _shift_witness(before: GenVoltageGraph, after: GenVoltageGraph,
                   head: int, a: Perm) -> CoverRelabelling:
    """Label map (z, W g) -> (z, W' a^-1 g) on fibres touched by the shift."""
    ainv = a.inverse()
    base = before.base
    vmap: dict[Label, Label] = {}
    for v in base.vertices:
        wb, wa = before.vertex_weights[v], after.vertex_weights[v]
        moved = v == head
        for g in before.group:
            key = (v, wb.coset_rep(g))
            val = (v, wa.coset_rep(ainv * g) if moved else wa.coset_rep(g))
            prior = vmap.get(key)
            if prior is not None and prior != val:
                raise AssertionError("shift witness is not well defined")
            vmap[key] = val
    dmap: dict[Label, Label] = {}
    for x in base.darts:
        wb, wa = before.dart_weights[x], after.dart_weights[x]
        moved = base.beg[x] == head
        for g in before.group:
            key = (x, wb.coset_rep(g))
            val = (x, wa.coset_rep(ainv * g) if moved else wa.coset_rep(g))
            prior = dmap.get(key)
            if prior is not None and prior != val:
                raise AssertionError("shift witness is not well defined")
            dmap[key] = val
    return CoverRelabelling(vmap, dmap)


def shift_dart(gvg: GenVoltageGraph, x: int) -> NormalisationStep:
    """Make dart x carry the identity voltage; covers stay isomorphic.

    Requires beg(x) != term(x); raises LoopOrSemiEdge otherwise.
    """
    base = gvg.base
    if base.beg[x] == base.term(x):
        raise LoopOrSemiEdge(f"dart {x} starts and ends at the same vertex")
    a = gvg.voltages[x]
    after = validate_gvg(_shift_tables(gvg, x))
    witness = _shift_witness(gvg, after, base.term(x), a)
    return NormalisationStep(dart=x, conjugator=a, before=gvg, after=after,
                             witness=witness)


def _rewrite_inverse(gvg: GenVoltageGraph, x: int) -> GenVoltageGraph:
    """Set volt(inv x) to volt(x)^-1; the cover is unchanged label for label."""
    y = gvg.base.inv[x]
    if y == x:
        return gvg
    voltages = list(gvg.voltages)
    voltages[y] = voltages[x].inverse()
    return validate_gvg(gvg.with_voltages(voltages))


def _tree_darts_of(base: Graph, tree: SpanningTree | Iterable[int]) -> frozenset[int]:
    if isinstance(tree, SpanningTree):
        if tree.graph != base:
            raise NotASpanningTree("tree belongs to a different graph")
        darts = set(tree.darts)
    else:
        darts = set()
        for d in tree:
            if not 0 <= d < base.n_darts:
                raise NotASpanningTree(f"dart {d} missing from the base graph")
            darts.add(d)
            darts.add(base.inv[d])
    for d in darts:
        if base.is_semi_edge_dart(d) or base.beg[d] == base.term(d):
            raise NotASpanningTree(f"dart {d} is not a link")
    edges = {(min(d, base.inv[d]), max(d, base.inv[d])) for d in darts}
    if len(edges) != base.n_vertices - 1:
        raise NotASpanningTree(
            f"{len(edges)} edges cannot span {base.n_vertices} vertices as a tree")
    # connectivity over all vertices using only tree edges
    parent = list(base.vertices)

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for d, _ in edges:
        a, b = find(base.beg[d]), find(base.term(d))
        if a == b:
            raise NotASpanningTree("tree edges contain a cycle")
        parent[a] = b
    roots = {find(v) for v in base.vertices}
    if len(roots) != 1:
        raise NotASpanningTree("tree edges do not reach every vertex")
    return frozenset(darts)


def _peel_order(base: Graph, tree_darts: frozenset[int]) -> list[int]:
    """Darts into successively removed least-index leaves, in removal order."""
    incidence: dict[int, list[tuple[int, int]]] = {v: [] for v in base.vertices}
    for d in tree_darts:
        if d < base.inv[d]:
            e = (d, base.inv[d])
            incidence[base.beg[d]].append(e)
            incidence[base.term(d)].append(e)
    alive = set(base.vertices)
    order = []
    while len(alive) > 1:
        leaf = min(v for v in alive if len(incidence[v]) == 1)
        e = incidence[leaf][0]
        into = e[0] if base.term(e[0]) == leaf else e[1]
        order.append(into)
        alive.remove(leaf)
        for end in (base.beg[into], leaf):
            incidence[end] = [f for f in incidence[end] if f != e]
    return order


def t_normalize(
    gvg: GenVoltageGraph, tree: SpanningTree | Iterable[int] | None = None
) -> NormalisationResult:
    """Clear the voltage on every dart of a spanning tree.

    ``tree`` may be a SpanningTree, an iterable of dart indices (one or both
    per tree edge), or None for the BFS tree from vertex 0.  Shifts follow
    least-leaf peeling in reverse, so each step leaves previously cleared
    tree darts untouched; every step's witness maps fibres to fibres and so
    does their composite.
    """
    validate_gvg(gvg)
    if tree is None:
        tree = gvg.base.spanning_tree()
    tree_darts = _tree_darts_of(gvg.base, tree)
    current = gvg
    witness = CoverRelabelling.identity_for(gvg)
    steps = []
    for dart in reversed(_peel_order(gvg.base, tree_darts)):
        shifted = shift_dart(current, dart)
        after = _rewrite_inverse(shifted.after, dart)
        step = NormalisationStep(dart=dart, conjugator=shifted.conjugator,
                                 before=current, after=after,
                                 witness=shifted.witness)
        steps.append(step)
        witness = witness.compose(step.witness)
        current = after
    for d in tree_darts:
        if not current.voltages[d].is_identity():
            raise AssertionError(f"tree dart {d} kept a nontrivial voltage")
    return NormalisationResult(gvg=current, witness=witness, steps=tuple(steps),
                               tree_darts=tree_darts)
