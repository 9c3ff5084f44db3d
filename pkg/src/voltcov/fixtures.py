"""Ready-made graphs, actions and voltage graphs.

These are used by the test suite and the self-test command, and double as
worked examples of the API.
"""

from __future__ import annotations

from typing import Sequence

from .dartgraph import Graph
from .errors import VoltcovError
from .permgrp import Group, Perm, generate, trivial_group
from .voltage import GenVoltageGraph, bicoset_spec, coset_graph_spec, make_gvg

EdgeSpec = tuple  # ("link", u, v) | ("loop", v) | ("semi", v)


def build_graph(n_vertices: int, edges: Sequence[EdgeSpec]) -> Graph:
    """Assemble a graph edge by edge.

    Each ("link", u, v) or ("loop", v) contributes a mutually inverse dart
    pair, appended in order; ("semi", v) contributes one self-inverse dart.
    """
    beg: list[int] = []
    inv: list[int] = []
    for spec in edges:
        kind = spec[0]
        if kind == "link":
            _, u, v = spec
            k = len(beg)
            beg += [u, v]
            inv += [k + 1, k]
        elif kind == "loop":
            _, v = spec
            k = len(beg)
            beg += [v, v]
            inv += [k + 1, k]
        elif kind == "semi":
            _, v = spec
            beg.append(v)
            inv.append(len(inv))
        else:
            raise ValueError(f"unknown edge kind {kind!r}")
    return Graph(n_vertices, beg, inv).validate()


def cycle_graph(n: int) -> Graph:
    """The cycle on n >= 3 vertices (simple)."""
    if n < 3:
        raise ValueError("cycles here need at least 3 vertices")
    return build_graph(n, [("link", i, (i + 1) % n) for i in range(n)])


def complete_bipartite(m: int, n: int) -> Graph:
    """K_{m,n}: left vertices 0..m-1, right vertices m..m+n-1."""
    return build_graph(m + n, [("link", i, m + j) for i in range(m) for j in range(n)])


def prism_graph(n: int) -> Graph:
    """The n-gonal prism: outer cycle 0..n-1, inner cycle n..2n-1, rungs."""
    if n < 3:
        raise ValueError("prisms here need at least 3 sides")
    edges = [("link", i, (i + 1) % n) for i in range(n)]
    edges += [("link", n + i, n + (i + 1) % n) for i in range(n)]
    edges += [("link", i, n + i) for i in range(n)]
    return build_graph(2 * n, edges)


def action_from_vertex_map(graph: Graph, images: Sequence[int]) -> Perm:
    """Extend a vertex permutation of a parallel-free graph to all of V+D.

    Each dart maps to the unique dart joining the images of its endpoints;
    raises if some image dart is missing or ambiguous.
    """
    lookup: dict[tuple[int, int], int] = {}
    for x in graph.darts:
        key = (graph.beg[x], graph.term(x))
        if key in lookup:
            raise VoltcovError("graph has parallel darts; vertex map does not "
                               "determine the dart map")
        lookup[key] = x
    n = graph.n_vertices
    points = list(images)
    if sorted(points) != list(range(n)):
        raise VoltcovError("vertex images are not a permutation")
    for x in graph.darts:
        key = (points[graph.beg[x]], points[graph.term(x)])
        if key not in lookup:
            raise VoltcovError(f"vertex map is not an automorphism at dart {x}")
        points.append(n + lookup[key])
    return Perm(points)


def cycle_rotation(n: int) -> Perm:
    return action_from_vertex_map(cycle_graph(n), [(i + 1) % n for i in range(n)])


def cycle_reflection(n: int) -> Perm:
    return action_from_vertex_map(cycle_graph(n), [(n - i) % n for i in range(n)])


def bipartite_rotations(m: int, n: int) -> tuple[Perm, Perm]:
    """Independent one-step rotations of the two sides of K_{m,n}."""
    graph = complete_bipartite(m, n)
    left = [(i + 1) % m for i in range(m)] + list(range(m, m + n))
    right = list(range(m)) + [m + (j + 1) % n for j in range(n)]
    return (action_from_vertex_map(graph, left), action_from_vertex_map(graph, right))


def bipartite_side_swap(n: int) -> Perm:
    """Exchange the two sides of K_{n,n}."""
    graph = complete_bipartite(n, n)
    return action_from_vertex_map(
        graph, [n + i for i in range(n)] + list(range(n)))


def prism_rotation(n: int) -> Perm:
    g = prism_graph(n)
    return action_from_vertex_map(
        g, [(i + 1) % n for i in range(n)] + [n + (i + 1) % n for i in range(n)])


def prism_reflection(n: int) -> Perm:
    g = prism_graph(n)
    return action_from_vertex_map(
        g, [(n - i) % n for i in range(n)] + [n + (n - i) % n for i in range(n)])


def prism_layer_swap(n: int) -> Perm:
    g = prism_graph(n)
    return action_from_vertex_map(
        g, [n + i for i in range(n)] + list(range(n)))


# ---------------------------------------------------------------------------
# small permutation groups

def cyclic_group(n: int) -> Group:
    """Rotations of n points (the trivial group for n = 1)."""
    if n == 1:
        return trivial_group(1)
    return generate(n, [Perm([(i + 1) % n for i in range(n)])])


def dihedral_group(n: int) -> Group:
    """Rotations and reflections of an n-gon on n points, order 2n."""
    rot = Perm([(i + 1) % n for i in range(n)])
    refl = Perm([(n - i) % n for i in range(n)])
    return generate(n, [rot, refl])


def symmetric_group(n: int) -> Group:
    if n == 1:
        return trivial_group(1)
    cycle = Perm([(i + 1) % n for i in range(n)])
    swap = Perm([1, 0] + list(range(2, n)))
    return generate(n, [swap, cycle])


def alternating_group_4() -> Group:
    return generate(4, [Perm.from_cycles(4, [(0, 1, 2)]), Perm.from_cycles(4, [(1, 2, 3)])])


def klein_four_group() -> Group:
    return generate(4, [Perm.from_cycles(4, [(0, 1), (2, 3)]),
                        Perm.from_cycles(4, [(0, 2), (1, 3)])])


def direct_product(a: Group, b: Group) -> Group:
    """The two groups acting side by side on disjoint points."""
    da, db = a.degree, b.degree
    gens = [Perm(tuple(g.images) + tuple(range(da, da + db))) for g in a.generators]
    gens += [Perm(tuple(range(da)) + tuple(da + i for i in g.images)) for g in b.generators]
    return generate(da + db, gens)


# ---------------------------------------------------------------------------
# named voltage-graph fixtures

def k2_s6_pair() -> tuple[GenVoltageGraph, GenVoltageGraph]:
    """Two voltage graphs on a single edge over a degree-6 group of order 6.

    Weights are <(2 3)(4 5)> and <(1 2)(5 6)> on the vertices and trivial on
    the darts.  With trivial voltages the cover is a 6-cycle; with voltages
    (sigma, sigma^2) for sigma = (1 2 3)(5 4 6) it is three pairs of
    parallel edges spread over three components.
    """
    sigma = Perm.parse("(1 2 3)(5 4 6)", 6)
    rho = Perm.parse("(2 3)(4 5)", 6)
    group = generate(6, [sigma, rho])
    h = generate(6, [rho])
    k = generate(6, [rho * sigma])
    base = Graph(2, (0, 1), (1, 0)).validate()
    triv = trivial_group(6)
    ident = Perm.identity(6)
    cycle = make_gvg(base, group, (h, k), (triv, triv), (ident, ident))
    parallel = make_gvg(base, group, (h, k), (triv, triv), (sigma, sigma * sigma))
    return cycle, parallel


def z6_bicoset() -> GenVoltageGraph:
    """Bicoset datum over the cyclic group of order 6 whose cover is K_{2,3}."""
    g = Perm.parse("(1 2 3 4 5 6)", 6)
    group = generate(6, [g])
    left = generate(6, [g * g])
    right = generate(6, [g * g * g])
    return bicoset_spec(group, left, right)


def z2_semi_edge(*, trivial_voltage: bool = False) -> GenVoltageGraph:
    """One vertex with one semi-edge over the group of order 2.

    With the swap voltage the cover is a single edge; with the trivial
    voltage it is two vertices each carrying a semi-edge.
    """
    a = Perm.parse("(1 2)", 2)
    group = generate(2, [a])
    triv = trivial_group(2)
    volt = Perm.identity(2) if trivial_voltage else a
    return coset_graph_spec(group, triv, triv, volt)
