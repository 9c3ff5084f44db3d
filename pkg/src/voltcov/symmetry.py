"""Automorphisms of covers.

Right translation by a group element permutes each fibre of a cover and is
always a graph automorphism; the assignment h -> (translation by h) is a
homomorphism into the automorphism group whose kernel is the core of the
intersection of all dart weights.  Separately, a graph isomorphism of bases
paired with a group isomorphism matching weights and voltages induces an
isomorphism of the covers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from . import permgrp
from .cover import Cover, gen_cov
from .dartgraph import GraphMorphism
from .errors import IncompatiblePair, NotInGroup
from .permgrp import Group, Perm
from .quotient import is_faithful_gvg
from .voltage import GenVoltageGraph, make_gvg


class LiftedTranslation:
    """The automorphism (z, W g) -> (z, W g h) of a cover, for h in the group."""

    __slots__ = ("cover", "element", "vertex_perm", "dart_perm")

    def __init__(self, cover: Cover, element: Perm,
                 vertex_perm: tuple[int, ...], dart_perm: tuple[int, ...]):
        self.cover = cover
        self.element = element
        self.vertex_perm = vertex_perm
        self.dart_perm = dart_perm

    def as_morphism(self) -> GraphMorphism:
        return GraphMorphism(self.cover.graph, self.cover.graph,
                             self.vertex_perm, self.dart_perm)

    def as_unified_perm(self) -> Perm:
        """As one permutation of the cover's combined vertex+dart index space."""
        nv = self.cover.graph.n_vertices
        return Perm(tuple(self.vertex_perm) + tuple(nv + d for d in self.dart_perm))

    def is_identity(self) -> bool:
        return (
            all(i == j for i, j in enumerate(self.vertex_perm))
            and all(i == j for i, j in enumerate(self.dart_perm))
        )


def lift_translation(cover: Cover, h: Perm) -> LiftedTranslation:
    """Right translation of every label by h, verified to be an automorphism.

    Fixes every fibre setwise and commutes with the covering projection.
    """
    gvg = cover.source
    if h not in gvg.group:
        raise NotInGroup(f"{h} is not an element of the voltage group")
    vperm = []
    for v, rep in cover.vertex_labels:
        w = gvg.vertex_weights[v]
        vperm.append(cover.vertex_index[(v, w.coset_rep(rep * h))])
    dperm = []
    for x, rep in cover.dart_labels:
        w = gvg.dart_weights[x]
        dperm.append(cover.dart_index[(x, w.coset_rep(rep * h))])
    out = LiftedTranslation(cover, h, tuple(vperm), tuple(dperm))
    out.as_morphism().check()
    if not out.as_morphism().is_bijective():
        raise AssertionError("lifted translation failed to be a bijection")
    return out


class ActionHomReport(NamedTuple):
    kernel: Group
    injective: bool


def action_hom(cover: Cover) -> ActionHomReport:
    """Kernel and injectivity of h -> (translation by h).

    The kernel is found by direct fixed-point scan and then checked against
    the core of the intersection of all weights; when every base vertex
    carries a dart this equals the core over dart weights alone, and
    injectivity coincides with faithfulness of the voltage data.
    """
    gvg = cover.source
    group = gvg.group
    kernel_elements = []
    for h in group:
        fixes = all(
            gvg.vertex_weights[v].coset_rep(rep * h) == rep
            for v, rep in cover.vertex_labels
        ) and all(
            gvg.dart_weights[x].coset_rep(rep * h) == rep
            for x, rep in cover.dart_labels
        )
        if fixes:
            kernel_elements.append(h)
    kernel = permgrp.from_elements(group.degree, kernel_elements)

    everything = gvg.vertex_weights + gvg.dart_weights
    inter = group
    for w in everything:
        inter = permgrp.intersection(inter, w)
    if permgrp.core(inter, group) != kernel:
        raise AssertionError("kernel disagrees with the core of the weight intersection")
    base = gvg.base
    if all(base.valence(v) > 0 for v in base.vertices):
        dart_inter = group
        for w in gvg.dart_weights:
            dart_inter = permgrp.intersection(dart_inter, w)
        if permgrp.core(dart_inter, group) != kernel:
            raise AssertionError("kernel disagrees with the dart-weight core")
        if kernel.is_trivial() != is_faithful_gvg(gvg):
            raise AssertionError("injectivity disagrees with faithfulness")
    return ActionHomReport(kernel, kernel.is_trivial())


class GroupIso:
    """A group isomorphism given by generator images, verified exhaustively."""

    __slots__ = ("domain", "codomain", "table")

    def __init__(self, domain: Group, codomain: Group, gen_images: Sequence[Perm]):
        if len(gen_images) != len(domain.generators):
            raise IncompatiblePair("need one image per generator")
        if domain.order != codomain.order:
            raise IncompatiblePair("groups of different orders cannot be isomorphic")
        for img in gen_images:
            if img not in codomain:
                raise IncompatiblePair(f"generator image {img} is outside the codomain")
        table = {domain.identity: codomain.identity}
        frontier = [domain.identity]
        pairs = list(zip(domain.generators, gen_images))
        while frontier:
            nxt = []
            for g in frontier:
                for s, s_img in pairs:
                    prod = g * s
                    img = table[g] * s_img
                    if prod in table:
                        if table[prod] != img:
                            raise IncompatiblePair("generator images do not extend to "
                                                   "a homomorphism")
                    else:
                        table[prod] = img
                        nxt.append(prod)
            frontier = nxt
        if len(table) != domain.order:
            raise IncompatiblePair("generator images do not generate the domain")
        for g in domain:
            for s, s_img in pairs:
                if table[g * s] != table[g] * s_img:
                    raise IncompatiblePair("generator images do not extend to "
                                           "a homomorphism")
        if len(set(table.values())) != codomain.order:
            raise IncompatiblePair("generator images do not give a bijection")
        self.domain = domain
        self.codomain = codomain
        self.table = table

    def __call__(self, g: Perm) -> Perm:
        return self.table[g]

    def apply_group(self, subgroup: Group) -> Group:
        return permgrp.from_elements(
            self.codomain.degree, (self.table[h] for h in subgroup))

    @classmethod
    def automorphism(cls, group: Group, gen_images: Sequence[Perm]) -> "GroupIso":
        return cls(group, group, gen_images)

    @classmethod
    def conjugation(cls, group: Group, by: Perm) -> "GroupIso":
        """The inner automorphism g -> by^-1 g by."""
        return cls(group, group, [g.conj(by) for g in group.generators])


@dataclass(frozen=True)
class CompatiblePair:
    """A base-graph isomorphism and a group isomorphism that match weights
    and voltages; the data inducing an isomorphism of covers."""

    base_iso: GraphMorphism
    group_iso: GroupIso


def relabel_by_group_iso(gvg: GenVoltageGraph, f: GroupIso) -> GenVoltageGraph:
    """Push all weights and voltages through a group isomorphism."""
    if f.domain != gvg.group:
        raise IncompatiblePair("isomorphism domain differs from the voltage group")
    return make_gvg(
        gvg.base,
        f.codomain,
        [f.apply_group(w) for w in gvg.vertex_weights],
        [f.apply_group(w) for w in gvg.dart_weights],
        [f(z) for z in gvg.voltages],
    )


def cover_iso_from_pair(gvg: GenVoltageGraph, other: GenVoltageGraph,
                        pair: CompatiblePair) -> GraphMorphism:
    """The cover isomorphism (z, W g) -> (phi(z), W' f(g)) induced by a pair.

    Verifies the pair's matching conditions first and the resulting morphism
    afterwards; raises IncompatiblePair naming the first failing condition.
    """
    phi, f = pair.base_iso, pair.group_iso
    if phi.domain != gvg.base or phi.codomain != other.base:
        raise IncompatiblePair("base isomorphism does not join the two bases")
    phi.check()
    if not phi.is_bijective():
        raise IncompatiblePair("base map is not an isomorphism")
    if f.domain != gvg.group or f.codomain != other.group:
        raise IncompatiblePair("group isomorphism does not join the two groups")
    for v in gvg.base.vertices:
        if f.apply_group(gvg.vertex_weights[v]) != other.vertex_weights[phi.vertex_map[v]]:
            raise IncompatiblePair(f"weights do not match at vertex {v}")
    for x in gvg.base.darts:
        if f.apply_group(gvg.dart_weights[x]) != other.dart_weights[phi.dart_map[x]]:
            raise IncompatiblePair(f"weights do not match at dart {x}")
        if f(gvg.voltages[x]) != other.voltages[phi.dart_map[x]]:
            raise IncompatiblePair(f"voltages do not match at dart {x}")

    cov1 = gen_cov(gvg)
    cov2 = gen_cov(other)
    vmap = []
    for v, rep in cov1.vertex_labels:
        v2 = phi.vertex_map[v]
        w2 = other.vertex_weights[v2]
        vmap.append(cov2.vertex_index[(v2, w2.coset_rep(f(rep)))])
    dmap = []
    for x, rep in cov1.dart_labels:
        x2 = phi.dart_map[x]
        w2 = other.dart_weights[x2]
        dmap.append(cov2.dart_index[(x2, w2.coset_rep(f(rep)))])
    morphism = GraphMorphism(cov1.graph, cov2.graph, tuple(vmap), tuple(dmap)).check()
    if not morphism.is_bijective():
        raise AssertionError("induced cover map failed to be a bijection")
    return morphism
