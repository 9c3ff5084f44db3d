"""Quotients of graphs by automorphism groups and the reverse construction.

An automorphism group acts on a single index space: vertex v is point v and
dart x is point n_vertices + x.  Quotienting collapses orbits; the reverse
direction picks a connected transversal of orbit representatives, reads
weights off stabilisers and voltages off elements carrying transversal darts
to the inverses of their partners, and certifies the round trip with an
explicit isomorphism onto the rebuilt cover.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from . import permgrp
from .cover import Cover, gen_cov
from .dartgraph import Graph, GraphMorphism
from .errors import BadTransversal, NotAnAction, NotConnected, SpecFormatError
from .permgrp import Group, Perm, generated_by
from .voltage import GenVoltageGraph, make_gvg


class ActionGroup:
    """A group acting on a graph by automorphisms, checked on construction.

    Every element must map vertices to vertices and darts to darts and
    commute with beg and inv; the action must also be faithful on darts,
    which the stabiliser-based reconstruction relies on.
    """

    __slots__ = ("graph", "group", "_vertex_orbit_id", "_dart_orbit_id",
                 "_vertex_orbits", "_dart_orbits")

    def __init__(self, graph: Graph, group: Group):
        nv, nd = graph.n_vertices, graph.n_darts
        if group.degree != nv + nd:
            raise NotAnAction(
                f"group degree {group.degree} != vertices+darts = {nv + nd}")
        for g in group:
            for v in graph.vertices:
                if not g[v] < nv:
                    raise NotAnAction(f"{g} sends vertex {v} to a dart")
            for x in graph.darts:
                if g[nv + x] < nv:
                    raise NotAnAction(f"{g} sends dart {x} to a vertex")
                xg = g[nv + x] - nv
                if graph.beg[xg] != g[graph.beg[x]]:
                    raise NotAnAction(f"{g} breaks beg at dart {x}")
                if graph.inv[xg] != g[nv + graph.inv[x]] - nv:
                    raise NotAnAction(f"{g} breaks inv at dart {x}")
        for g in group:
            if not g.is_identity() and all(g[nv + x] == nv + x for x in graph.darts):
                raise NotAnAction(f"{g} acts trivially on darts: not faithful there")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "_vertex_orbit_id", None)
        object.__setattr__(self, "_dart_orbit_id", None)
        object.__setattr__(self, "_vertex_orbits", None)
        object.__setattr__(self, "_dart_orbits", None)

    def __setattr__(self, name, value):
        raise AttributeError("ActionGroup is immutable")

    def vertex_image(self, g: Perm, v: int) -> int:
        return g[v]

    def dart_image(self, g: Perm, x: int) -> int:
        return g[self.graph.n_vertices + x] - self.graph.n_vertices

    def _compute_orbits(self) -> None:
        nv = self.graph.n_vertices
        n = nv + self.graph.n_darts
        seen = [False] * n
        orbits: list[list[int]] = []
        orbit_id = [0] * n
        for start in range(n):
            if seen[start]:
                continue
            orbit = [start]
            seen[start] = True
            frontier = [start]
            while frontier:
                p = frontier.pop()
                for g in self.group.generators:
                    q = g[p]
                    if not seen[q]:
                        seen[q] = True
                        orbit.append(q)
                        frontier.append(q)
            orbits.append(sorted(orbit))
        vertex_orbits = []
        dart_orbits = []
        for orbit in orbits:
            if orbit[0] < nv:
                for p in orbit:
                    orbit_id[p] = len(vertex_orbits)
                vertex_orbits.append(tuple(orbit))
            else:
                for p in orbit:
                    orbit_id[p] = len(dart_orbits)
                dart_orbits.append(tuple(q - nv for q in orbit))
        object.__setattr__(self, "_vertex_orbits", tuple(vertex_orbits))
        object.__setattr__(self, "_dart_orbits", tuple(dart_orbits))
        object.__setattr__(self, "_vertex_orbit_id",
                           tuple(orbit_id[v] for v in range(nv)))
        object.__setattr__(self, "_dart_orbit_id",
                           tuple(orbit_id[nv + x] for x in range(self.graph.n_darts)))

    @property
    def vertex_orbits(self) -> tuple[tuple[int, ...], ...]:
        if self._vertex_orbits is None:
            self._compute_orbits()
        return self._vertex_orbits

    @property
    def dart_orbits(self) -> tuple[tuple[int, ...], ...]:
        if self._dart_orbits is None:
            self._compute_orbits()
        return self._dart_orbits

    def vertex_orbit_id(self, v: int) -> int:
        if self._vertex_orbit_id is None:
            self._compute_orbits()
        return self._vertex_orbit_id[v]

    def dart_orbit_id(self, x: int) -> int:
        if self._dart_orbit_id is None:
            self._compute_orbits()
        return self._dart_orbit_id[x]

    def vertex_stabiliser(self, v: int) -> Group:
        return permgrp.from_elements(
            self.group.degree, (g for g in self.group if g[v] == v))

    def dart_stabiliser(self, x: int) -> Group:
        p = self.graph.n_vertices + x
        return permgrp.from_elements(
            self.group.degree, (g for g in self.group if g[p] == p))


def quotient_graph(action: ActionGroup) -> tuple[Graph, GraphMorphism]:
    """Collapse each orbit to a single vertex or dart.

    beg and inv descend to orbits because the group acts by automorphisms;
    the returned morphism is the quotient map.
    """
    graph = action.graph
    vo, do = action.vertex_orbits, action.dart_orbits
    beg = [action.vertex_orbit_id(graph.beg[orbit[0]]) for orbit in do]
    inv = [action.dart_orbit_id(graph.inv[orbit[0]]) for orbit in do]
    quotient = Graph(len(vo), beg, inv).validate()
    morphism = GraphMorphism(
        graph,
        quotient,
        tuple(action.vertex_orbit_id(v) for v in graph.vertices),
        tuple(action.dart_orbit_id(x) for x in graph.darts),
    ).check()
    return quotient, morphism


@dataclass(frozen=True)
class TransversalData:
    """Orbit representatives forming a connected transversal.

    ``vertex_reps[i]`` represents quotient vertex i and ``dart_reps[j]``
    quotient dart j; every dart rep begins at a vertex rep.  ``partner``
    sends a dart rep to the rep of its inverse's orbit, and
    ``zeta_choice[x]`` carries partner(x) to inv(x).
    """

    action: ActionGroup
    vertex_reps: tuple[int, ...]
    dart_reps: tuple[int, ...]
    partner: dict[int, int]
    zeta_choice: dict[int, Perm]

    def circ_reps(self) -> frozenset[int]:
        """Dart reps whose inverse is itself a rep."""
        reps = set(self.dart_reps)
        return frozenset(x for x in self.dart_reps
                         if self.action.graph.inv[x] in reps)


def choose_transversal(action: ActionGroup) -> TransversalData:
    """Grow a connected transversal by BFS from the least vertex.

    Works whenever the quotient graph is connected (the graph itself may be
    disconnected); raises BadTransversal otherwise.  Newly discovered vertex
    orbits enter through both darts of an edge, which keeps the chosen
    representatives connected; partner elements are the least group elements
    doing the job, and are the identity whenever both darts of an orbit pair
    are representatives.
    """
    graph, group = action.graph, action.group
    nv = graph.n_vertices
    vrep: dict[int, int] = {action.vertex_orbit_id(0): 0}
    drep: dict[int, int] = {}
    placed = {0}
    queue = [0]
    while queue:
        u = queue.pop(0)
        for d in graph.darts_at(u):
            od = action.dart_orbit_id(d)
            if od in drep:
                continue
            drep[od] = d
            oi = action.dart_orbit_id(graph.inv[d])
            if oi in drep:
                continue
            w = graph.term(d)
            ow = action.vertex_orbit_id(w)
            if ow not in vrep:
                vrep[ow] = w
                drep[oi] = graph.inv[d]
                placed.add(w)
                queue.append(w)
            else:
                pool = action.dart_orbits[oi]
                drep[oi] = min(e for e in pool if graph.beg[e] in placed)
    if len(vrep) != len(action.vertex_orbits):
        raise BadTransversal("quotient graph is disconnected")
    vertex_reps = tuple(vrep[i] for i in range(len(action.vertex_orbits)))
    dart_reps = tuple(drep[j] for j in range(len(action.dart_orbits)))
    partner = {}
    zeta = {}
    for x in dart_reps:
        iota = drep[action.dart_orbit_id(graph.inv[x])]
        partner[x] = iota
        target = nv + graph.inv[x]
        point = nv + iota
        zeta[x] = next(g for g in group if g[point] == target)
    return TransversalData(action, vertex_reps, dart_reps, partner, zeta)


@dataclass(frozen=True)
class ReconstructionResult:
    gvg: GenVoltageGraph
    cover: Cover
    isomorphism: GraphMorphism  # original graph -> cover.graph
    transversal: TransversalData


def reconstruct(action: ActionGroup) -> ReconstructionResult:
    """Express a connected graph with an automorphism group as a cover.

    The quotient becomes the base, stabilisers of the transversal
    representatives become the weights, and the transversal's partner
    elements become the voltages.  The returned morphism is a verified
    isomorphism onto the rebuilt cover sending each orbit onto the fibre
    over its quotient image.
    """
    graph, group = action.graph, action.group
    if not graph.is_connected():
        raise NotConnected("reconstruction requires a connected graph")
    td = choose_transversal(action)
    base, _ = quotient_graph(action)
    vertex_weights = [action.vertex_stabiliser(v) for v in td.vertex_reps]
    dart_weights = [action.dart_stabiliser(x) for x in td.dart_reps]
    voltages = [td.zeta_choice[x] for x in td.dart_reps]
    gvg = make_gvg(base, group, vertex_weights, dart_weights, voltages)
    cov = gen_cov(gvg)

    nv = graph.n_vertices
    vmap = []
    for v in graph.vertices:
        ov = action.vertex_orbit_id(v)
        rep = td.vertex_reps[ov]
        carry = next(g for g in group if g[rep] == v)
        vmap.append(cov.vertex_index[(ov, vertex_weights[ov].coset_rep(carry))])
    dmap = []
    for x in graph.darts:
        ox = action.dart_orbit_id(x)
        rep = td.dart_reps[ox]
        carry = next(g for g in group if g[nv + rep] == nv + x)
        dmap.append(cov.dart_index[(ox, dart_weights[ox].coset_rep(carry))])
    iso = GraphMorphism(graph, cov.graph, tuple(vmap), tuple(dmap)).check()
    if not iso.is_bijective():
        raise AssertionError("reconstruction map failed to be a bijection")
    return ReconstructionResult(gvg=gvg, cover=cov, isomorphism=iso, transversal=td)


def is_faithful_gvg(gvg: GenVoltageGraph) -> bool:
    """No nontrivial normal subgroup sits inside every dart weight.

    Equivalent to the natural action of the group on the cover being
    faithful.  With no darts at all the intersection is the whole group.
    """
    inter = gvg.group
    for w in gvg.dart_weights:
        inter = permgrp.intersection(inter, w)
        if inter.is_trivial():
            return True
    return permgrp.core(inter, gvg.group).is_trivial()


class GenerationVerdict(NamedTuple):
    connected: bool
    witness: Group


def generation_connectivity_test(action: ActionGroup,
                                 transversal: TransversalData) -> GenerationVerdict:
    """Decide connectivity from vertex stabilisers and edge-carrying elements.

    Given a connected transversal, the graph is connected exactly when the
    stabilisers of the vertex representatives together with, for each dart
    rep whose inverse is not a rep, an element carrying that inverse into
    the representative set, generate the whole group.
    """
    graph, group = action.graph, action.group
    nv = graph.n_vertices
    if transversal.action is not action and (
        transversal.action.graph != graph or transversal.action.group != group
    ):
        raise BadTransversal("transversal belongs to a different action")
    if sorted(action.vertex_orbit_id(v) for v in transversal.vertex_reps) != list(
        range(len(action.vertex_orbits))
    ):
        raise BadTransversal("vertex representatives miss or repeat an orbit")
    if sorted(action.dart_orbit_id(x) for x in transversal.dart_reps) != list(
        range(len(action.dart_orbits))
    ):
        raise BadTransversal("dart representatives miss or repeat an orbit")
    vset = set(transversal.vertex_reps)
    for x in transversal.dart_reps:
        if graph.beg[x] not in vset:
            raise BadTransversal(f"dart rep {x} does not begin at a vertex rep")
    circ = transversal.circ_reps()
    # connectivity of the subgraph on the representatives
    parent = {v: v for v in vset}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for x in circ:
        a, b = find(graph.beg[x]), find(graph.term(x))
        if a != b:
            parent[a] = b
    if len({find(v) for v in vset}) != 1:
        raise BadTransversal("representatives do not form a connected subgraph")

    parts: list[Perm | Group] = [action.vertex_stabiliser(v)
                                 for v in transversal.vertex_reps]
    reps = set(transversal.dart_reps)
    for x in transversal.dart_reps:
        if x in circ:
            continue
        a_x = transversal.zeta_choice[x].inverse()
        if action.dart_image(a_x, graph.inv[x]) not in reps:
            raise BadTransversal(
                f"element for dart rep {x} does not carry its inverse to a rep")
        parts.append(a_x)
    witness = generated_by(group, parts)
    return GenerationVerdict(witness.order == group.order, witness)


# ---------------------------------------------------------------------------
# action files: cycle notation over v/d-prefixed points

_POINT = re.compile(r"([vd])(\d+)")


def parse_action_perm(text: str, graph: Graph) -> Perm:
    """Parse one automorphism in cycle notation with v/d-prefixed 1-based
    points, e.g. ``(v1 v2)(d1 d2)``."""
    nv, nd = graph.n_vertices, graph.n_darts
    text = text.strip()
    if text in ("()", ""):
        return Perm.identity(nv + nd)
    if not re.fullmatch(r"(\([^()]*\))+", text):
        raise SpecFormatError(f"bad action cycle string: {text!r}")
    cycles = []
    for body in re.findall(r"\(([^()]*)\)", text):
        points = []
        for token in re.split(r"[,\s]+", body.strip()):
            if not token:
                continue
            m = _POINT.fullmatch(token)
            if not m:
                raise SpecFormatError(f"bad point {token!r}; expected v<k> or d<k>")
            kind, k = m.group(1), int(m.group(2))
            if k < 1:
                raise SpecFormatError(f"point {token!r} must be 1-based")
            if kind == "v":
                if k > nv:
                    raise SpecFormatError(f"vertex point {token!r} out of range")
                points.append(k - 1)
            else:
                if k > nd:
                    raise SpecFormatError(f"dart point {token!r} out of range")
                points.append(nv + k - 1)
        if points:
            cycles.append(points)
    try:
        return Perm.from_cycles(nv + nd, cycles)
    except ValueError as exc:
        raise SpecFormatError(f"bad action cycle string {text!r}: {exc}") from None


def format_action_perm(perm: Perm, graph: Graph) -> str:
    nv = graph.n_vertices
    cycs = perm.cycles()
    if not cycs:
        return "()"

    def show(p: int) -> str:
        return f"v{p + 1}" if p < nv else f"d{p - nv + 1}"

    return "".join("(" + " ".join(show(p) for p in cyc) + ")" for cyc in cycs)


def parse_action_text(text: str, graph: Graph) -> ActionGroup:
    """One generator per line; blank lines and # comments are skipped."""
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            gens.append(parse_action_perm(line, graph))
        except SpecFormatError as exc:
            raise SpecFormatError(f"line {lineno}: {exc}") from None
    group = permgrp.generate(graph.n_vertices + graph.n_darts, gens)
    return ActionGroup(graph, group)
