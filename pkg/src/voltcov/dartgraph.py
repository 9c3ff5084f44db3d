"""Dart-based graphs: loops, semi-edges and parallel edges are first class.

A graph is (vertices, darts, beg, inv) where ``beg`` sends each dart to its
initial vertex and ``inv`` is an involution pairing each dart with its
reverse.  An edge is a pair {x, inv(x)}; a semi-edge has x == inv(x), a loop
has distinct darts with equal endpoints.  Vertices and darts are contiguous
0-based indices; labelled structures built on top (quotients, covers) keep
their own label tables.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .errors import (
    DanglingDart,
    InvNotInvolution,
    NotConnected,
    SpecFormatError,
    TooLarge,
)

DEFAULT_ISO_DART_CAP = 600


class Graph:
    """Immutable dart-based graph on index sets ``range(n_vertices)``, ``range(n_darts)``."""

    __slots__ = ("n_vertices", "beg", "inv", "_darts_at")

    def __init__(self, n_vertices: int, beg: Iterable[int], inv: Iterable[int]):
        object.__setattr__(self, "n_vertices", int(n_vertices))
        object.__setattr__(self, "beg", tuple(beg))
        object.__setattr__(self, "inv", tuple(inv))
        object.__setattr__(self, "_darts_at", None)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @property
    def n_darts(self) -> int:
        return len(self.beg)

    @property
    def vertices(self) -> range:
        return range(self.n_vertices)

    @property
    def darts(self) -> range:
        return range(self.n_darts)

    def validate(self) -> "Graph":
        """Check beg is total into the vertex set and inv is an involution."""
        if len(self.inv) != len(self.beg):
            raise DanglingDart("beg and inv must be defined on the same darts")
        for x, v in enumerate(self.beg):
            if not 0 <= v < self.n_vertices:
                raise DanglingDart(f"dart {x} begins at missing vertex {v}")
        for x, y in enumerate(self.inv):
            if not 0 <= y < self.n_darts:
                raise DanglingDart(f"dart {x} has missing inverse {y}")
            if self.inv[y] != x:
                raise InvNotInvolution(f"inv(inv({x})) == {self.inv[y]} != {x}")
        return self

    def term(self, x: int) -> int:
        """Final vertex of a dart: where its inverse begins."""
        return self.beg[self.inv[x]]

    def darts_at(self, v: int) -> tuple[int, ...]:
        cache = self._darts_at
        if cache is None:
            cache = [[] for _ in range(self.n_vertices)]
            for x, u in enumerate(self.beg):
                cache[u].append(x)
            cache = tuple(tuple(row) for row in cache)
            object.__setattr__(self, "_darts_at", cache)
        return cache[v]

    def valence(self, v: int) -> int:
        return len(self.darts_at(v))

    def edges(self) -> list[tuple[int, int]]:
        """Edges as dart pairs (x, inv x) with x <= inv x, in dart order."""
        return [(x, self.inv[x]) for x in self.darts if x <= self.inv[x]]

    def is_semi_edge_dart(self, x: int) -> bool:
        return self.inv[x] == x

    def components(self) -> list[list[int]]:
        """Vertex sets of the connected components, each sorted, ordered by least vertex."""
        seen = [False] * self.n_vertices
        comps = []
        for start in self.vertices:
            if seen[start]:
                continue
            comp = [start]
            seen[start] = True
            queue = deque([start])
            while queue:
                u = queue.popleft()
                for x in self.darts_at(u):
                    w = self.term(x)
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def spanning_tree(self, root: int | None = None) -> "SpanningTree":
        """Deterministic BFS spanning tree, scanning darts in index order."""
        if not self.is_connected():
            raise NotConnected("spanning tree requires a connected graph")
        if root is None:
            root = 0
        parent_dart: dict[int, int] = {}
        order = [root]
        seen = {root}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for x in self.darts_at(u):
                w = self.term(x)
                if w not in seen:
                    seen.add(w)
                    parent_dart[w] = x
                    order.append(w)
                    queue.append(w)
        darts = frozenset(d for x in parent_dart.values() for d in (x, self.inv[x]))
        return SpanningTree(graph=self, root=root, parent_dart=parent_dart,
                            darts=darts, vertex_order=tuple(order))

    def to_text(self) -> str:
        lines = [f"vertices {self.n_vertices}"]
        for x in self.darts:
            lines.append(f"dart {x} beg {self.beg[x]} inv {self.inv[x]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        n_vertices = None
        rows: dict[int, tuple[int, int]] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if parts[0] == "vertices":
                if n_vertices is not None:
                    raise SpecFormatError(f"line {lineno}: repeated vertices header")
                if len(parts) != 2 or not parts[1].isdigit():
                    raise SpecFormatError(f"line {lineno}: expected 'vertices <n>'")
                n_vertices = int(parts[1])
            elif parts[0] == "dart":
                if len(parts) != 6 or parts[2] != "beg" or parts[4] != "inv":
                    raise SpecFormatError(
                        f"line {lineno}: expected 'dart <id> beg <v> inv <id>'")
                try:
                    d, v, iv = int(parts[1]), int(parts[3]), int(parts[5])
                except ValueError:
                    raise SpecFormatError(f"line {lineno}: dart fields must be integers") from None
                if d in rows:
                    raise SpecFormatError(f"line {lineno}: dart {d} defined twice")
                rows[d] = (v, iv)
            else:
                raise SpecFormatError(f"line {lineno}: unknown directive {parts[0]!r}")
        if n_vertices is None:
            raise SpecFormatError("missing 'vertices <n>' header")
        if sorted(rows) != list(range(len(rows))):
            raise SpecFormatError("dart ids must be exactly 0..n-1")
        beg = [rows[d][0] for d in range(len(rows))]
        inv = [rows[d][1] for d in range(len(rows))]
        return cls(n_vertices, beg, inv).validate()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n_vertices == other.n_vertices
            and self.beg == other.beg
            and self.inv == other.inv
        )

    def __hash__(self) -> int:
        return hash((self.n_vertices, self.beg, self.inv))

    def __repr__(self) -> str:
        return f"Graph({self.n_vertices} vertices, {self.n_darts} darts)"


@dataclass(frozen=True)
class SpanningTree:
    """BFS spanning tree: per non-root vertex, the dart leading into it."""

    graph: Graph
    root: int
    parent_dart: dict[int, int]
    darts: frozenset[int]
    vertex_order: tuple[int, ...]

    def __contains__(self, dart: int) -> bool:
        return dart in self.darts

    def edge_count(self) -> int:
        return len(self.parent_dart)


class Walk:
    """A dart sequence with matching ends; an empty walk carries a base vertex."""

    __slots__ = ("graph", "darts", "_base")

    def __init__(self, graph: Graph, darts: Sequence[int], base: int | None = None):
        darts = tuple(darts)
        if not darts:
            if base is None:
                raise ValueError("an empty walk needs an explicit base vertex")
            if not 0 <= base < graph.n_vertices:
                raise ValueError(f"base vertex {base} missing from graph")
        else:
            for a, b in zip(darts, darts[1:]):
                if graph.term(a) != graph.beg[b]:
                    raise ValueError(f"darts {a},{b} do not chain: term != beg")
            if base is not None and base != graph.beg[darts[0]]:
                raise ValueError("base vertex disagrees with first dart")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "darts", darts)
        object.__setattr__(self, "_base", base)

    def __setattr__(self, name, value):
        raise AttributeError("Walk is immutable")

    def __len__(self) -> int:
        return len(self.darts)

    @property
    def initial_vertex(self) -> int:
        return self.graph.beg[self.darts[0]] if self.darts else self._base

    @property
    def final_vertex(self) -> int:
        return self.graph.term(self.darts[-1]) if self.darts else self._base

    def is_closed(self) -> bool:
        return self.initial_vertex == self.final_vertex

    def inverse(self) -> "Walk":
        inv = self.graph.inv
        return Walk(self.graph, tuple(inv[x] for x in reversed(self.darts)),
                    base=self.final_vertex if not self.darts else None)

    def __add__(self, other: "Walk") -> "Walk":
        if self.graph is not other.graph and self.graph != other.graph:
            raise ValueError("cannot concatenate walks in different graphs")
        if self.final_vertex != other.initial_vertex:
            raise ValueError("walks do not chain")
        if not self.darts and not other.darts:
            return Walk(self.graph, (), base=self._base)
        return Walk(self.graph, self.darts + other.darts)

    def __repr__(self) -> str:
        if not self.darts:
            return f"Walk(empty at {self._base})"
        return f"Walk({list(self.darts)})"


@dataclass(frozen=True)
class GraphMorphism:
    """A map of vertices and darts commuting with beg and inv."""

    domain: Graph
    codomain: Graph
    vertex_map: tuple[int, ...]
    dart_map: tuple[int, ...]

    def check(self) -> "GraphMorphism":
        if len(self.vertex_map) != self.domain.n_vertices:
            raise ValueError("vertex map has wrong length")
        if len(self.dart_map) != self.domain.n_darts:
            raise ValueError("dart map has wrong length")
        for v in self.vertex_map:
            if not 0 <= v < self.codomain.n_vertices:
                raise ValueError(f"vertex image {v} missing from codomain")
        for x in self.domain.darts:
            y = self.dart_map[x]
            if not 0 <= y < self.codomain.n_darts:
                raise ValueError(f"dart image {y} missing from codomain")
            if self.vertex_map[self.domain.beg[x]] != self.codomain.beg[y]:
                raise ValueError(f"morphism breaks beg at dart {x}")
            if self.dart_map[self.domain.inv[x]] != self.codomain.inv[y]:
                raise ValueError(f"morphism breaks inv at dart {x}")
        return self

    def is_bijective(self) -> bool:
        return (
            self.domain.n_vertices == self.codomain.n_vertices
            and self.domain.n_darts == self.codomain.n_darts
            and len(set(self.vertex_map)) == self.domain.n_vertices
            and len(set(self.dart_map)) == self.domain.n_darts
        )

    def is_surjective(self) -> bool:
        return (
            len(set(self.vertex_map)) == self.codomain.n_vertices
            and len(set(self.dart_map)) == self.codomain.n_darts
        )

    def inverse(self) -> "GraphMorphism":
        if not self.is_bijective():
            raise ValueError("only isomorphisms invert")
        vmap = [0] * self.codomain.n_vertices
        dmap = [0] * self.codomain.n_darts
        for v, w in enumerate(self.vertex_map):
            vmap[w] = v
        for x, y in enumerate(self.dart_map):
            dmap[y] = x
        return GraphMorphism(self.codomain, self.domain, tuple(vmap), tuple(dmap))

    def compose(self, then: "GraphMorphism") -> "GraphMorphism":
        """self followed by ``then``."""
        if then.domain != self.codomain:
            raise ValueError("morphisms do not compose")
        return GraphMorphism(
            self.domain,
            then.codomain,
            tuple(then.vertex_map[v] for v in self.vertex_map),
            tuple(then.dart_map[x] for x in self.dart_map),
        )

    @classmethod
    def identity(cls, graph: Graph) -> "GraphMorphism":
        return cls(graph, graph, tuple(graph.vertices), tuple(graph.darts))

    def apply_walk(self, walk: Walk) -> Walk:
        if not walk.darts:
            return Walk(self.codomain, (), base=self.vertex_map[walk.initial_vertex])
        return Walk(self.codomain, tuple(self.dart_map[x] for x in walk.darts))


@dataclass(frozen=True)
class EdgeClassification:
    """Per-edge tags plus the grouping of links by unordered endpoint pair."""

    semi_edges: tuple[tuple[int, int], ...]
    loops: tuple[tuple[int, int], ...]
    links: tuple[tuple[int, int], ...]
    parallel_classes: tuple[tuple[tuple[int, int], ...], ...]
    tags: dict[tuple[int, int], str] = field(compare=False)


def classify_edges(graph: Graph) -> EdgeClassification:
    """Tag every edge as semi-edge, loop or link; group parallel links."""
    semi, loops, links = [], [], []
    by_pair: dict[tuple[int, int], list[tuple[int, int]]] = {}
    tags = {}
    for e in graph.edges():
        x, y = e
        if x == y:
            semi.append(e)
            tags[e] = "semi-edge"
        elif graph.beg[x] == graph.term(x):
            loops.append(e)
            tags[e] = "loop"
        else:
            links.append(e)
            tags[e] = "link"
            pair = tuple(sorted((graph.beg[x], graph.term(x))))
            by_pair.setdefault(pair, []).append(e)
    classes = tuple(tuple(v) for _, v in sorted(by_pair.items()))
    return EdgeClassification(tuple(semi), tuple(loops), tuple(links), classes, tags)


def is_simple(graph: Graph) -> bool:
    """No semi-edges, no loops, and no two distinct edges with equal endpoints."""
    cls = classify_edges(graph)
    if cls.semi_edges or cls.loops:
        return False
    return all(len(c) == 1 for c in cls.parallel_classes)


def has_parallel_darts(graph: Graph) -> bool:
    """Two distinct darts with the same beg and the same term; direct scan."""
    seen = {}
    for x in graph.darts:
        key = (graph.beg[x], graph.term(x))
        if key in seen:
            return True
        seen[key] = x
    return False


def has_semi_edge(graph: Graph) -> bool:
    return any(graph.inv[x] == x for x in graph.darts)


def _static_colours(graph: Graph) -> list[int]:
    """Iterated neighbourhood refinement; isomorphism-invariant vertex colours.

    Colour values are ranks of sorted signature sets, so corresponding
    vertices of isomorphic graphs receive equal colours.
    """
    loops = [0] * graph.n_vertices
    semis = [0] * graph.n_vertices
    for x, y in graph.edges():
        if x == y:
            semis[graph.beg[x]] += 1
        elif graph.beg[x] == graph.term(x):
            loops[graph.beg[x]] += 1
    sigs: list[tuple] = [(graph.valence(v), loops[v], semis[v]) for v in graph.vertices]
    rank = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
    colours = [rank[sig] for sig in sigs]
    while True:
        sigs = [
            (colours[v], tuple(sorted(colours[graph.term(x)] for x in graph.darts_at(v))))
            for v in graph.vertices
        ]
        rank = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        fresh = [rank[sig] for sig in sigs]
        if len(set(fresh)) == len(set(colours)):
            return fresh
        colours = fresh


def _link_counts(graph: Graph) -> dict[tuple[int, int], int]:
    counts: dict[tuple[int, int], int] = {}
    for x, y in graph.edges():
        if x != y and graph.beg[x] != graph.term(x):
            pair = tuple(sorted((graph.beg[x], graph.term(x))))
            counts[pair] = counts.get(pair, 0) + 1
    return counts


def _loop_semi_counts(graph: Graph) -> tuple[list[int], list[int]]:
    loops = [0] * graph.n_vertices
    semis = [0] * graph.n_vertices
    for x, y in graph.edges():
        if x == y:
            semis[graph.beg[x]] += 1
        elif graph.beg[x] == graph.term(x):
            loops[graph.beg[x]] += 1
    return loops, semis


def _dart_map_from_vertex_bijection(
    g1: Graph, g2: Graph, sigma: Sequence[int]
) -> Optional[list[int]]:
    """Extend a count-compatible vertex bijection to darts, canonically."""
    dart_map = [-1] * g1.n_darts
    buckets2: dict[tuple, list[tuple[int, int]]] = {}
    for e in g2.edges():
        x, y = e
        u, w = g2.beg[x], g2.term(x)
        if x == y:
            key = ("semi", u)
        elif u == w:
            key = ("loop", u)
        else:
            key = ("link",) + tuple(sorted((u, w)))
        buckets2.setdefault(key, []).append(e)
    for v in buckets2.values():
        v.sort()
    for e in g1.edges():
        x, y = e
        u, w = g1.beg[x], g1.term(x)
        if x == y:
            key = ("semi", sigma[u])
        elif u == w:
            key = ("loop", sigma[u])
        else:
            key = ("link",) + tuple(sorted((sigma[u], sigma[w])))
        bucket = buckets2.get(key)
        if not bucket:
            return None
        x2, y2 = bucket.pop(0)
        if x == y:
            dart_map[x] = x2
        elif u == w:
            dart_map[x], dart_map[y] = x2, y2
        else:
            # orient the image edge to match beg of each dart
            if g2.beg[x2] == sigma[u]:
                dart_map[x], dart_map[y] = x2, y2
            else:
                dart_map[x], dart_map[y] = y2, x2
    return dart_map


def find_isomorphism(
    g1: Graph, g2: Graph, *, max_darts: int = DEFAULT_ISO_DART_CAP
) -> Optional[GraphMorphism]:
    """Exhaustive isomorphism search with colour refinement pruning.

    Intended for small instances; raises TooLarge beyond ``max_darts`` darts.
    """
    if max(g1.n_darts, g2.n_darts) > max_darts:
        raise TooLarge(f"isomorphism search capped at {max_darts} darts")
    if g1.n_vertices != g2.n_vertices or g1.n_darts != g2.n_darts:
        return None
    if sorted(map(len, g1.components())) != sorted(map(len, g2.components())):
        return None
    col1, col2 = _static_colours(g1), _static_colours(g2)
    if sorted(col1) != sorted(col2):
        return None
    links1, links2 = _link_counts(g1), _link_counts(g2)
    loops1, semis1 = _loop_semi_counts(g1)
    loops2, semis2 = _loop_semi_counts(g2)

    candidates = [
        [w for w in g2.vertices if col2[w] == col1[v]] for v in g1.vertices
    ]
    # most-constrained-first, but keep vertices adjacent to placed ones early
    order = sorted(g1.vertices, key=lambda v: (len(candidates[v]), v))
    sigma = [-1] * g1.n_vertices
    used = [False] * g2.n_vertices

    neighbours1: list[set[int]] = [set() for _ in g1.vertices]
    for (u, w) in links1:
        neighbours1[u].add(w)
        neighbours1[w].add(u)

    def consistent(v: int, w: int) -> bool:
        if loops1[v] != loops2[w] or semis1[v] != semis2[w]:
            return False
        for u in g1.vertices:
            if sigma[u] < 0:
                continue
            c1 = links1.get(tuple(sorted((v, u))), 0)
            c2 = links2.get(tuple(sorted((w, sigma[u]))), 0)
            if c1 != c2:
                return False
        return True

    def backtrack(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in candidates[v]:
            if used[w] or not consistent(v, w):
                continue
            sigma[v] = w
            used[w] = True
            if backtrack(i + 1):
                return True
            sigma[v] = -1
            used[w] = False
        return False

    if not backtrack(0):
        return None
    dart_map = _dart_map_from_vertex_bijection(g1, g2, sigma)
    if dart_map is None:
        return None
    return GraphMorphism(g1, g2, tuple(sigma), tuple(dart_map)).check()


def to_dot(
    graph: Graph,
    name: str = "G",
    vertex_label: Callable[[int], str] | None = None,
    edge_label: Callable[[tuple[int, int]], str] | None = None,
) -> str:
    """Render as an undirected DOT multigraph.

    Parallel edges become repeated edge lines; a semi-edge is drawn as an
    edge to an anonymous point node.
    """
    lines = [f"graph {name} {{"]
    for v in graph.vertices:
        label = vertex_label(v) if vertex_label else str(v)
        lines.append(f'  v{v} [label="{label}"];')
    stub = 0
    for e in graph.edges():
        x, y = e
        attr = f' [label="{edge_label(e)}"]' if edge_label else ""
        if x == y:
            lines.append(f"  s{stub} [shape=point, label=\"\"];")
            lines.append(f"  v{graph.beg[x]} -- s{stub}{attr};")
            stub += 1
        else:
            lines.append(f"  v{graph.beg[x]} -- v{graph.term(x)}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
