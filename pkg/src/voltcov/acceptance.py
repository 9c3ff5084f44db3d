"""Acceptance suite: theorem-level behaviour checked against brute force.

Every check pits a voltage-level computation against an independent oracle
on the built cover (breadth-first search, exhaustive lift enumeration,
direct dart scans, backtracking isomorphism search) over randomized
instances from a fixed seed.  ``run_all`` returns one result per criterion;
the ``selftest`` CLI command and the test suite both drive it.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Sequence

from . import permgrp
from .cover import (
    gen_cov,
    has_parallel_darts_by_voltage,
    has_semiedge_by_voltage,
    is_connected_by_voltage,
    is_simple_by_voltage,
    lifted_endpoints_by_enumeration,
    lifted_walk_endpoints,
)
from .dartgraph import (
    Graph,
    Walk,
    classify_edges,
    find_isomorphism,
    has_parallel_darts,
    has_semi_edge,
    is_simple,
)
from .errors import GvgInvalid
from .fixtures import (
    alternating_group_4,
    bipartite_rotations,
    bipartite_side_swap,
    build_graph,
    complete_bipartite,
    cycle_graph,
    cycle_reflection,
    cycle_rotation,
    cyclic_group,
    dihedral_group,
    direct_product,
    k2_s6_pair,
    klein_four_group,
    prism_graph,
    prism_layer_swap,
    prism_reflection,
    prism_rotation,
    symmetric_group,
    z6_bicoset,
)
from .normalize import t_normalize
from .permgrp import Group, Perm, generate
from .quotient import (
    ActionGroup,
    choose_transversal,
    generation_connectivity_test,
    is_faithful_gvg,
    reconstruct,
)
from .symmetry import action_hom, lift_translation
from .voltage import (
    GenVoltageGraph,
    bicoset_spec,
    dart_fibre_size,
    validate_gvg,
    vertex_fibre_size,
)

DEFAULT_SEED = 178


@dataclass(frozen=True)
class CriterionResult:
    name: str
    passed: bool
    detail: str
    seconds: float


# ---------------------------------------------------------------------------
# randomized instance generators

def group_pool(max_order: int) -> list[Group]:
    """A varied bag of small permutation groups up to the given order."""
    pool = [
        cyclic_group(1), cyclic_group(2), cyclic_group(3), cyclic_group(4),
        cyclic_group(5), cyclic_group(6), cyclic_group(8),
        dihedral_group(3), dihedral_group(4), dihedral_group(5), dihedral_group(6),
        symmetric_group(3), symmetric_group(4),
        alternating_group_4(), klein_four_group(),
        direct_product(cyclic_group(2), cyclic_group(4)),
        direct_product(cyclic_group(2), symmetric_group(3)),
        direct_product(cyclic_group(3), cyclic_group(3)),
    ]
    return [g for g in pool if g.order <= max_order]


def random_subgroup(rng: random.Random, group: Group, within: Group | None = None) -> Group:
    """A subgroup generated by a few random elements of ``within`` (or the group)."""
    source = within if within is not None else group
    k = rng.choice((0, 1, 1, 1, 2, 2, 3))
    gens = [rng.choice(source.elements) for _ in range(k)] if source.order > 1 else []
    return permgrp.generated_by(group, gens)


def random_connected_base(rng: random.Random, max_vertices: int = 4,
                          max_darts: int = 10) -> Graph:
    """A random connected graph allowing loops, semi-edges and parallels."""
    nv = rng.randint(1, max_vertices)
    edges = [("link", rng.randrange(v), v) for v in range(1, nv)]
    darts = 2 * (nv - 1)
    while darts < max_darts and rng.random() < 0.72:
        kind = rng.choice(("link", "link", "loop", "semi"))
        if kind == "semi":
            edges.append(("semi", rng.randrange(nv)))
            darts += 1
        elif darts + 2 <= max_darts:
            if kind == "loop":
                edges.append(("loop", rng.randrange(nv)))
            else:
                edges.append(("link", rng.randrange(nv), rng.randrange(nv)))
            darts += 2
        else:
            break
    if not edges:
        # keep at least one dart so every vertex weight sits above a dart weight
        edges.append(rng.choice((("loop", 0), ("semi", 0))))
    return build_graph(nv, edges)


def random_gvg(rng: random.Random, groups: Sequence[Group],
               max_vertices: int = 4, max_darts: int = 10) -> GenVoltageGraph:
    """A random valid voltage graph, built edge by edge.

    Link and loop voltages are arbitrary group elements with the inverse
    dart's weight drawn inside both constraints; semi-edge voltages are
    drawn among elements normalising the dart weight whose square falls
    into it.  Inverse voltages get a random weight-coset twist part of the
    time, so non-inverse-paired assignments are exercised too.
    """
    group = rng.choice(list(groups))
    base = random_connected_base(rng, max_vertices, max_darts)
    vertex_weights = [random_subgroup(rng, group) for _ in base.vertices]
    dart_weights: list[Group | None] = [None] * base.n_darts
    voltages: list[Perm | None] = [None] * base.n_darts
    for x in base.darts:
        y = base.inv[x]
        if x > y:
            continue
        u = base.beg[x]
        if x == y:
            # semi-edge: the voltage must normalise the weight and square into it
            s = random_subgroup(rng, group, within=vertex_weights[u])
            pool = [
                a for a in group
                if a * a in s
                and {a.inverse() * h * a for h in s} == set(s.elements)
            ]
            voltages[x] = rng.choice(pool)
            dart_weights[x] = s
            continue
        w = base.term(x)
        a = rng.choice(group.elements)
        bound = permgrp.intersection(
            vertex_weights[w], permgrp.conjugate(vertex_weights[u], a.inverse()))
        s = random_subgroup(rng, group, within=bound)
        dart_weights[y] = s
        dart_weights[x] = permgrp.conjugate(s, a)
        voltages[x] = a
        if rng.random() < 0.35 and dart_weights[x].order > 1:
            twist = rng.choice(dart_weights[x].elements)
        else:
            twist = group.identity
        voltages[y] = twist * a.inverse()
    return validate_gvg(GenVoltageGraph(base, group, vertex_weights,
                                        dart_weights, voltages))


def random_walk(rng: random.Random, graph: Graph, max_len: int = 6) -> Walk:
    v = rng.randrange(graph.n_vertices)
    darts = []
    want = rng.randint(0, max_len)
    here = v
    for _ in range(want):
        options = graph.darts_at(here)
        if not options:
            break
        d = rng.choice(options)
        darts.append(d)
        here = graph.term(d)
    return Walk(graph, darts, base=v if not darts else None)


def _translation_action(cover) -> ActionGroup:
    """The voltage group acting on its own cover by right translation."""
    gens = [lift_translation(cover, h).as_unified_perm()
            for h in cover.source.group.generators]
    n = cover.graph.n_vertices + cover.graph.n_darts
    return ActionGroup(cover.graph, generate(n, gens))


# ---------------------------------------------------------------------------
# an independent, literal validity checker (for the validator criterion)

def _literal_gvg_check(gvg: GenVoltageGraph) -> bool:
    """Re-check the defining conditions from raw image tuples and union-find.

    Deliberately shares no code with validate_gvg: composition, inversion
    and conjugation are re-derived on plain tuples.
    """

    def comp(p: tuple, q: tuple) -> tuple:
        return tuple(q[i] for i in p)

    def invert(p: tuple) -> tuple:
        out = [0] * len(p)
        for i, j in enumerate(p):
            out[j] = i
        return tuple(out)

    base = gvg.base
    vw = [frozenset(g.images for g in w) for w in gvg.vertex_weights]
    dw = [frozenset(g.images for g in w) for w in gvg.dart_weights]
    zz = [z.images for z in gvg.voltages]
    for x in base.darts:
        u = base.beg[x]
        y = base.inv[x]
        if not dw[x] <= vw[u]:
            return False
        conj = frozenset(comp(comp(invert(zz[x]), h), zz[x]) for h in dw[y])
        if conj != dw[x]:
            return False
        if comp(zz[y], zz[x]) not in dw[x]:
            return False
    # connectivity via union-find over edges
    parent = list(range(base.n_vertices))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for x in base.darts:
        a, b = find(base.beg[x]), find(base.term(x))
        if a != b:
            parent[a] = b
    return len({find(v) for v in base.vertices}) == 1


def random_weight_table(rng: random.Random, groups: Sequence[Group]) -> GenVoltageGraph:
    """A random, usually invalid, weight/voltage table over a random base."""
    group = rng.choice(list(groups))
    base = random_connected_base(rng, 3, 8)
    vertex_weights = [random_subgroup(rng, group) for _ in base.vertices]
    dart_weights = [random_subgroup(rng, group) for _ in base.darts]
    voltages = [rng.choice(group.elements) for _ in base.darts]
    return GenVoltageGraph(base, group, vertex_weights, dart_weights, voltages)


# ---------------------------------------------------------------------------
# criteria

def check_golden_pair(rng: random.Random) -> CriterionResult:
    """The two-vertex fixture: a 6-cycle, then three parallel pairs."""
    t0 = time.perf_counter()
    cycle_gvg, parallel_gvg = k2_s6_pair()
    ok = True
    notes = []

    cov1 = gen_cov(cycle_gvg)
    if find_isomorphism(cov1.graph, cycle_graph(6)) is None:
        ok = False
        notes.append("trivial voltages did not give a 6-cycle")

    cov2 = gen_cov(parallel_gvg)
    cls = classify_edges(cov2.graph)
    sizes = sorted(len(c) for c in cls.parallel_classes)
    if not (cov2.graph.n_vertices == 6 and len(cov2.graph.edges()) == 6
            and sizes == [2, 2, 2] and len(cov2.graph.components()) == 3):
        ok = False
        notes.append("voltage pair (sigma, sigma^2) did not give 3 parallel pairs")

    dt = time.perf_counter() - t0
    if dt >= 1.0:
        ok = False
        notes.append(f"took {dt:.2f}s, budget 1s")
    return CriterionResult("golden pair (two-vertex fixture)", ok,
                           "; ".join(notes) or "exact match", dt)


def _reconstruction_samples(rng: random.Random):
    """(graph, action generators) pairs: cycles, bipartite graphs, prisms."""
    samples = []
    for n in (3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 16, 18, 20):
        g = cycle_graph(n)
        rot, refl = cycle_rotation(n), cycle_reflection(n)
        samples.append((g, [rot]))
        samples.append((g, [rot, refl]))
        samples.append((g, [refl]))
        samples.append((g, [rot * refl]))
        if n % 2 == 0:
            samples.append((g, [rot * rot]))
            samples.append((g, [rot * rot, refl]))
    for m, n in ((2, 2), (2, 3), (3, 3), (2, 4), (2, 5), (2, 6), (2, 8),
                 (3, 4), (3, 5), (3, 6), (4, 4), (4, 5), (5, 5)):
        g = complete_bipartite(m, n)
        ra, rb = bipartite_rotations(m, n)
        samples.append((g, [ra]))
        samples.append((g, [rb]))
        samples.append((g, [ra, rb]))
        samples.append((g, [ra * rb]))
        if m == n:
            samples.append((g, [ra * rb, bipartite_side_swap(n)]))
            samples.append((g, [bipartite_side_swap(n)]))
    for n in (3, 4, 5, 6, 7):
        g = prism_graph(n)
        rot, refl, swap = prism_rotation(n), prism_reflection(n), prism_layer_swap(n)
        samples.append((g, [rot]))
        samples.append((g, [rot, swap]))
        samples.append((g, [rot, refl]))
        samples.append((g, [rot, refl, swap]))
        samples.append((g, [rot * swap]))
        samples.append((g, [refl, swap]))
        samples.append((g, [refl * swap]))
    # random cyclic subgroups of the full sampled actions for extra variety
    extras = []
    for g, gens in rng.sample(samples, 40):
        n = g.n_vertices + g.n_darts
        big = generate(n, gens)
        extras.append((g, [rng.choice(big.elements)]))
    samples.extend(extras)
    return [
        (g, gens) for g, gens in samples
        if g.n_vertices + g.n_darts <= 60
        and generate(g.n_vertices + g.n_darts, gens).order <= 48
    ]


def check_reconstruction_round_trip(rng: random.Random) -> CriterionResult:
    """Orbits become fibres and the rebuilt cover is isomorphic, by search."""
    t0 = time.perf_counter()
    samples = _reconstruction_samples(rng)
    count = 0
    failures = []
    for graph, gens in samples:
        action = ActionGroup(graph, generate(graph.n_vertices + graph.n_darts, gens))
        result = reconstruct(action)
        count += 1
        if find_isomorphism(graph, result.cover.graph) is None:
            failures.append(f"no isomorphism for sample {count}")
            continue
        gvg = result.gvg
        for i, orbit in enumerate(action.vertex_orbits):
            if len(orbit) != vertex_fibre_size(gvg, i):
                failures.append(f"vertex orbit/fibre mismatch in sample {count}")
        for j, orbit in enumerate(action.dart_orbits):
            if len(orbit) != dart_fibre_size(gvg, j):
                failures.append(f"dart orbit/fibre mismatch in sample {count}")
        if not is_faithful_gvg(gvg):
            failures.append(f"reconstruction not faithful in sample {count}")
    dt = time.perf_counter() - t0
    ok = not failures and count >= 200 and dt < 60.0
    detail = f"{count} pairs round-tripped in {dt:.1f}s"
    if failures:
        detail = failures[0] + f" ({len(failures)} failures)"
    elif count < 200:
        detail = f"only {count} samples"
    elif dt >= 60.0:
        detail += " (over budget)"
    return CriterionResult("reconstruction round trip", ok, detail, dt)


def check_connectivity_theorem(rng: random.Random) -> CriterionResult:
    """Voltage-level connectivity equals breadth-first search on the cover."""
    t0 = time.perf_counter()
    groups = group_pool(24)
    mismatches = 0
    seen_connected = seen_disconnected = 0
    n = 500
    for _ in range(n):
        gvg = random_gvg(rng, groups)
        verdict = is_connected_by_voltage(gvg)
        actual = gen_cov(gvg).graph.is_connected()
        if verdict.connected != actual:
            mismatches += 1
        if actual:
            seen_connected += 1
        else:
            seen_disconnected += 1
    dt = time.perf_counter() - t0
    ok = mismatches == 0 and seen_connected > 0 and seen_disconnected > 0
    return CriterionResult(
        "connectivity from voltages", ok,
        f"{n} instances, {mismatches} mismatches "
        f"({seen_connected} connected / {seen_disconnected} not)", dt)


def check_simplicity_theorem(rng: random.Random) -> CriterionResult:
    """Voltage-level semi-edge/parallel/simplicity verdicts match the cover."""
    t0 = time.perf_counter()
    groups = group_pool(24)
    mismatches = 0
    simple_seen = nonsimple_seen = 0
    n = 500
    for _ in range(n):
        gvg = random_gvg(rng, groups)
        cover = gen_cov(gvg)
        semi_ok = has_semiedge_by_voltage(gvg).found == has_semi_edge(cover.graph)
        par_ok = has_parallel_darts_by_voltage(gvg).found == has_parallel_darts(cover.graph)
        simple = is_simple_by_voltage(gvg)
        simple_ok = simple == is_simple(cover.graph)
        if not (semi_ok and par_ok and simple_ok):
            mismatches += 1
        if simple:
            simple_seen += 1
        else:
            nonsimple_seen += 1
    dt = time.perf_counter() - t0
    ok = mismatches == 0 and simple_seen > 0 and nonsimple_seen > 0
    return CriterionResult(
        "simplicity from voltages", ok,
        f"{n} instances, {mismatches} mismatches "
        f"({simple_seen} simple / {nonsimple_seen} not)", dt)


def check_normalisation(rng: random.Random) -> CriterionResult:
    """Tree voltages end up trivial and the witness is a genuine label iso."""
    t0 = time.perf_counter()
    groups = group_pool(24)
    failures = 0
    n = 200
    for _ in range(n):
        gvg = random_gvg(rng, groups)
        res = t_normalize(gvg)
        try:
            if any(not res.gvg.voltages[d].is_identity() for d in res.tree_darts):
                raise ValueError("tree dart kept a voltage")
            validate_gvg(res.gvg)
            res.witness.verify(gen_cov(gvg), gen_cov(res.gvg))
        except Exception:
            failures += 1
    dt = time.perf_counter() - t0
    return CriterionResult(
        "spanning-tree normalisation", failures == 0,
        f"{n} instances, {failures} failures", dt)


def check_translations_and_kernel(rng: random.Random) -> CriterionResult:
    """Generator lifts are automorphisms; kernel equals the weight core."""
    t0 = time.perf_counter()
    groups = group_pool(24)
    failures = 0
    n = 200
    for _ in range(n):
        gvg = random_gvg(rng, groups)
        cover = gen_cov(gvg)
        try:
            for h in gvg.group.generators:
                lift_translation(cover, h)  # verifies the automorphism internally
            report = action_hom(cover)     # asserts kernel == weight core
            if report.injective != is_faithful_gvg(gvg):
                raise ValueError("injectivity vs faithfulness")
        except Exception:
            failures += 1
    dt = time.perf_counter() - t0
    return CriterionResult(
        "lifted translations and kernel", failures == 0,
        f"{n} instances, {failures} failures", dt)


def check_walk_endpoints(rng: random.Random) -> CriterionResult:
    """Endpoint sets via walk voltages equal exhaustive lift enumeration."""
    t0 = time.perf_counter()
    groups = group_pool(24)
    mismatches = 0
    walks = 0
    while walks < 120:
        gvg = random_gvg(rng, groups)
        cover = gen_cov(gvg)
        for _ in range(3):
            walk = random_walk(rng, gvg.base)
            walks += 1
            law = lifted_walk_endpoints(cover, walk)
            brute = lifted_endpoints_by_enumeration(cover, walk)
            if law != brute:
                mismatches += 1
    dt = time.perf_counter() - t0
    return CriterionResult(
        "walk-voltage endpoint law", mismatches == 0,
        f"{walks} walks, {mismatches} mismatches", dt)


def check_generation_tests(rng: random.Random) -> CriterionResult:
    """Stabiliser-plus-carrier generation decides connectivity."""
    t0 = time.perf_counter()
    failures = 0
    connected_seen = disconnected_seen = 0
    count = 0

    def run(action: ActionGroup) -> None:
        nonlocal failures, connected_seen, disconnected_seen, count
        td = choose_transversal(action)
        verdict = generation_connectivity_test(action, td)
        actual = action.graph.is_connected()
        count += 1
        if verdict.connected != actual:
            failures += 1
        if actual:
            connected_seen += 1
        else:
            disconnected_seen += 1

    # connected graphs with their symmetry groups
    for graph, gens in rng.sample(_reconstruction_samples(rng), 40):
        run(ActionGroup(graph, generate(graph.n_vertices + graph.n_darts, gens)))
    # covers (connected or not) under right translation
    groups = group_pool(24)
    for _ in range(60):
        gvg = random_gvg(rng, groups)
        if gvg.base.n_darts == 0:
            continue
        run(_translation_action(gen_cov(gvg)))
    # bicoset trees: connected exactly when the two factors generate
    for _ in range(40):
        group = rng.choice(groups)
        left = random_subgroup(rng, group)
        right = random_subgroup(rng, group)
        run(_translation_action(gen_cov(bicoset_spec(group, left, right))))
    dt = time.perf_counter() - t0
    ok = failures == 0 and connected_seen > 0 and disconnected_seen > 0
    return CriterionResult(
        "generation connectivity tests", ok,
        f"{count} actions, {failures} mismatches "
        f"({connected_seen} connected / {disconnected_seen} not)", dt)


def check_validator_soundness(rng: random.Random) -> CriterionResult:
    """validate_gvg agrees with a literal elementwise checker."""
    t0 = time.perf_counter()
    groups = group_pool(12)
    mismatches = 0
    valid_seen = invalid_seen = 0
    n = 400
    for i in range(n):
        if i % 4 == 0:
            gvg = random_gvg(rng, groups, max_vertices=3, max_darts=8)
        else:
            gvg = random_weight_table(rng, groups)
        try:
            validate_gvg(gvg)
            verdict = True
        except GvgInvalid:
            verdict = False
        literal = _literal_gvg_check(gvg)
        if verdict != literal:
            mismatches += 1
        if literal:
            valid_seen += 1
        else:
            invalid_seen += 1
    dt = time.perf_counter() - t0
    ok = mismatches == 0 and valid_seen > 0 and invalid_seen > 0
    return CriterionResult(
        "validator soundness", ok,
        f"{n} tables, {mismatches} mismatches "
        f"({valid_seen} valid / {invalid_seen} invalid)", dt)


CRITERIA = (
    check_golden_pair,
    check_reconstruction_round_trip,
    check_connectivity_theorem,
    check_simplicity_theorem,
    check_normalisation,
    check_translations_and_kernel,
    check_walk_endpoints,
    check_generation_tests,
    check_validator_soundness,
)


def run_all(seed: int = DEFAULT_SEED) -> list[CriterionResult]:
    master = random.Random(seed)
    results = []
    for criterion in CRITERIA:
        rng = random.Random(master.randrange(2**63))
        results.append(criterion(rng))
    return results
