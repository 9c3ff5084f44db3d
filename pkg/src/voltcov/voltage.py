"""Generalised voltage graphs: a connected base graph together with a group,
subgroup-valued weights on vertices and darts, and group-valued voltages on
darts.

A quadruple (base, group, weights, voltages) is valid when, for every dart x
with initial vertex u and inverse y:

* containment:   weight(x) <= weight(u);
* compatibility: weight(x) == weight(y) conjugated by volt(x);
* inverse product: volt(y) * volt(x) lies in weight(x);

and the base graph is connected.  Constructors here reject invalid data
rather than repairing it; the inverse-pair rewrite is offered as an explicit
operation instead.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import permgrp
from .dartgraph import Graph, Walk
from .errors import (
    BaseNotConnected,
    ConditionViolation,
    Eq1Violation,
    Eq2Violation,
    Eq3Violation,
    GvgInvalid,
    NotASubgroup,
    SpecFormatError,
)
from .permgrp import Group, Perm


class GenVoltageGraph:
    """Weighted, voltage-assigned base graph.  Use :func:`make_gvg` to build
    validated instances; the raw constructor performs no checks so that
    invalid quadruples can be constructed for testing the validator."""

    __slots__ = ("base", "group", "vertex_weights", "dart_weights", "voltages")

    def __init__(
        self,
        base: Graph,
        group: Group,
        vertex_weights: Sequence[Group],
        dart_weights: Sequence[Group],
        voltages: Sequence[Perm],
    ):
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "vertex_weights", tuple(vertex_weights))
        object.__setattr__(self, "dart_weights", tuple(dart_weights))
        object.__setattr__(self, "voltages", tuple(voltages))

    def __setattr__(self, name, value):
        raise AttributeError("GenVoltageGraph is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GenVoltageGraph)
            and self.base == other.base
            and self.group == other.group
            and self.vertex_weights == other.vertex_weights
            and self.dart_weights == other.dart_weights
            and self.voltages == other.voltages
        )

    def __hash__(self) -> int:
        return hash((self.base, self.group, self.vertex_weights,
                     self.dart_weights, self.voltages))

    def __repr__(self) -> str:
        return (f"GenVoltageGraph(base={self.base!r}, group order {self.group.order})")

    def with_voltages(self, voltages: Sequence[Perm]) -> "GenVoltageGraph":
        return GenVoltageGraph(self.base, self.group, self.vertex_weights,
                               self.dart_weights, voltages)


def make_gvg(
    base: Graph,
    group: Group,
    vertex_weights: Sequence[Group],
    dart_weights: Sequence[Group],
    voltages: Sequence[Perm],
) -> GenVoltageGraph:
    """Build and validate a generalised voltage graph."""
    return validate_gvg(GenVoltageGraph(base, group, vertex_weights, dart_weights, voltages))


def validate_gvg(gvg: GenVoltageGraph) -> GenVoltageGraph:
    """Check the three defining conditions on every dart plus base connectivity.

    Violations are reported per offending dart via Eq1Violation, Eq2Violation
    and Eq3Violation; a disconnected base raises BaseNotConnected.
    """
    base, group = gvg.base, gvg.group
    base.validate()
    if len(gvg.vertex_weights) != base.n_vertices:
        raise GvgInvalid("need one weight per vertex")
    if len(gvg.dart_weights) != base.n_darts or len(gvg.voltages) != base.n_darts:
        raise GvgInvalid("need one weight and one voltage per dart")
    for v, w in enumerate(gvg.vertex_weights):
        if not w.is_subgroup_of(group):
            raise GvgInvalid(f"weight at vertex {v} is not a subgroup of the group")
    for x, w in enumerate(gvg.dart_weights):
        if not w.is_subgroup_of(group):
            raise GvgInvalid(f"weight at dart {x} is not a subgroup of the group", dart=x)
        if gvg.voltages[x] not in group:
            raise GvgInvalid(f"voltage at dart {x} is not a group element", dart=x)
    if not base.is_connected():
        raise BaseNotConnected("base graph is not connected")
    for x in base.darts:
        u = base.beg[x]
        y = base.inv[x]
        wx, wy = gvg.dart_weights[x], gvg.dart_weights[y]
        zx = gvg.voltages[x]
        if not wx.is_subgroup_of(gvg.vertex_weights[u]):
            raise Eq1Violation(
                f"dart {x}: weight not contained in weight of vertex {u}", dart=x)
        conj = {zx.inverse() * h * zx for h in wy.elements}
        if conj != set(wx.elements):
            raise Eq2Violation(
                f"dart {x}: weight differs from voltage-conjugate of inverse dart's weight",
                dart=x)
        if gvg.voltages[y] * zx not in wx:
            raise Eq3Violation(
                f"dart {x}: volt(inv x) * volt(x) escapes the dart weight", dart=x)
    return gvg


def weight_index(gvg: GenVoltageGraph, x: int) -> int:
    """Index of the dart weight in its initial vertex's weight.

    This counts the darts above x at each vertex of the fibre over beg(x).
    """
    return gvg.vertex_weights[gvg.base.beg[x]].order // gvg.dart_weights[x].order


def vertex_fibre_size(gvg: GenVoltageGraph, v: int) -> int:
    return gvg.group.order // gvg.vertex_weights[v].order


def dart_fibre_size(gvg: GenVoltageGraph, x: int) -> int:
    return gvg.group.order // gvg.dart_weights[x].order


@dataclass(frozen=True)
class WalkVoltage:
    """The voltage of a walk: a subset of the group.

    The set is always a union of classes rep * W where W is the weight of the
    walk's initial vertex; ``class_reps`` holds the least element of each
    class, so ``len(elements)`` is a multiple of ``len(subgroup)``.
    """

    elements: frozenset[Perm]
    subgroup: Group
    class_reps: tuple[Perm, ...]

    def __contains__(self, p: Perm) -> bool:
        return p in self.elements

    def __len__(self) -> int:
        return len(self.elements)


def walk_voltage(gvg: GenVoltageGraph, walk: Walk) -> WalkVoltage:
    """Product of volt(x_i) * weight(beg x_i) factors, last dart first.

    The empty walk at v has voltage weight(v), which makes the length-0 case
    of the lifted-endpoint law come out right.
    """
    if walk.graph != gvg.base:
        raise ValueError("walk lives in a different graph")
    w0 = gvg.vertex_weights[walk.initial_vertex]
    if not walk.darts:
        elements = frozenset(w0.elements)
    else:
        acc = {gvg.group.identity}
        for x in reversed(walk.darts):
            zx = gvg.voltages[x]
            factor = [zx * h for h in gvg.vertex_weights[gvg.base.beg[x]]]
            acc = {a * b for a in acc for b in factor}
        elements = frozenset(acc)
    reps = sorted({min(s * h for h in w0) for s in elements})
    # the set must tile exactly into |reps| classes of the initial weight
    if len(reps) * w0.order != len(elements):
        raise AssertionError("walk voltage failed to tile into weight classes")
    return WalkVoltage(elements, w0, tuple(reps))


def normalize_inverse_pairs(gvg: GenVoltageGraph) -> GenVoltageGraph:
    """Rewrite voltages so volt(inv x) == volt(x)^-1 on every non-semi-edge.

    Per edge, the lower-indexed dart keeps its voltage and the partner is
    replaced by its inverse; the rewrite never changes the cover, label for
    label.  Semi-edge darts are never modified.
    """
    voltages = list(gvg.voltages)
    for x in gvg.base.darts:
        y = gvg.base.inv[x]
        if x < y:
            voltages[y] = voltages[x].inverse()
    out = GenVoltageGraph(gvg.base, gvg.group, gvg.vertex_weights,
                          gvg.dart_weights, voltages)
    return validate_gvg(out)


def coset_graph_spec(group: Group, vertex_group: Group, dart_group: Group,
                     swap: Perm) -> GenVoltageGraph:
    """One vertex with one semi-edge: the classical coset-graph datum.

    ``swap`` must normalise ``dart_group`` and square into it; its cover has
    vertex set the cosets of ``vertex_group`` with ``swap`` pairing darts.
    """
    if not dart_group.is_subgroup_of(vertex_group):
        raise NotASubgroup("dart group must sit inside the vertex group")
    if not vertex_group.is_subgroup_of(group):
        raise NotASubgroup("vertex group must sit inside the ambient group")
    if swap not in group:
        raise ConditionViolation("swap element must belong to the group")
    conj = {swap.inverse() * h * swap for h in dart_group.elements}
    if conj != set(dart_group.elements):
        raise ConditionViolation(
            "weight compatibility fails: swap does not normalise the dart group")
    if swap * swap not in dart_group:
        raise ConditionViolation(
            "inverse-product condition fails: swap^2 escapes the dart group")
    base = Graph(1, beg=(0,), inv=(0,))
    return make_gvg(base, group, (vertex_group,), (dart_group,), (swap,))


def bicoset_spec(group: Group, left: Group, right: Group) -> GenVoltageGraph:
    """Single edge joining two weighted vertices: the bicoset-graph datum.

    Both dart weights are the intersection of the two vertex groups and both
    voltages are trivial.
    """
    if not left.is_subgroup_of(group) or not right.is_subgroup_of(group):
        raise NotASubgroup("both factors must be subgroups of the ambient group")
    both = permgrp.intersection(left, right)
    base = Graph(2, beg=(0, 1), inv=(1, 0))
    ident = group.identity
    return make_gvg(base, group, (left, right), (both, both), (ident, ident))


# ---------------------------------------------------------------------------
# spec files (JSON shape)

SPEC_SCHEMA = 1


@dataclass(frozen=True)
class SpecFile:
    """Parsed contents of a voltage-graph spec file.

    ``action_generators`` carries the optional action block verbatim (cycle
    strings over v/d-prefixed points); it is interpreted by the quotient
    machinery, not here.
    """

    gvg: GenVoltageGraph
    action_generators: tuple[str, ...] | None = None


def _group_to_dict(group: Group) -> dict:
    return {"degree": group.degree, "generators": [str(g) for g in group.generators]}


def _group_from_dict(data, where: str, *, degree: int | None = None) -> Group:
    if not isinstance(data, dict) or "degree" not in data or "generators" not in data:
        raise SpecFormatError(f"{where}: expected {{degree, generators}}")
    d = data["degree"]
    if degree is not None and d != degree:
        raise SpecFormatError(f"{where}: degree {d} does not match group degree {degree}")
    gens = [Perm.parse(s, d) for s in data["generators"]]
    return permgrp.generate(d, gens)


def _subgroup_from_gens(strings, group: Group, where: str) -> Group:
    if not isinstance(strings, list):
        raise SpecFormatError(f"{where}: expected a list of cycle strings")
    gens = [Perm.parse(s, group.degree) for s in strings]
    return permgrp.generate(group.degree, gens, cap=group.order + 1)


def spec_to_dict(spec: SpecFile) -> dict:
    gvg = spec.gvg
    out = {
        "schema": SPEC_SCHEMA,
        "group": _group_to_dict(gvg.group),
        "base": gvg.base.to_text(),
        "weights": {
            "vertices": [[str(g) for g in w.generators] for w in gvg.vertex_weights],
            "darts": [[str(g) for g in w.generators] for w in gvg.dart_weights],
        },
        "voltages": [str(z) for z in gvg.voltages],
    }
    if spec.action_generators is not None:
        out["action"] = {"generators": list(spec.action_generators)}
    return out


def spec_from_dict(data: dict) -> SpecFile:
    if not isinstance(data, dict):
        raise SpecFormatError("spec: top level must be an object")
    for key in ("group", "base", "weights", "voltages"):
        if key not in data:
            raise SpecFormatError(f"spec: missing key {key!r}")
    if data.get("schema", SPEC_SCHEMA) != SPEC_SCHEMA:
        raise SpecFormatError(f"spec: unsupported schema {data.get('schema')!r}")
    group = _group_from_dict(data["group"], "spec.group")
    base = Graph.from_text(data["base"])
    weights = data["weights"]
    if not isinstance(weights, dict) or "vertices" not in weights or "darts" not in weights:
        raise SpecFormatError("spec.weights: expected {vertices, darts}")
    vws = weights["vertices"]
    dws = weights["darts"]
    volts = data["voltages"]
    if len(vws) != base.n_vertices:
        raise SpecFormatError("spec.weights.vertices: need one entry per vertex")
    if len(dws) != base.n_darts or len(volts) != base.n_darts:
        raise SpecFormatError("spec: need one dart weight and one voltage per dart")
    vertex_weights = [
        _subgroup_from_gens(g, group, f"spec.weights.vertices[{i}]") for i, g in enumerate(vws)
    ]
    dart_weights = [
        _subgroup_from_gens(g, group, f"spec.weights.darts[{i}]") for i, g in enumerate(dws)
    ]
    voltages = [Perm.parse(s, group.degree) for s in volts]
    gvg = make_gvg(base, group, vertex_weights, dart_weights, voltages)
    action = None
    if "action" in data:
        block = data["action"]
        if not isinstance(block, dict) or "generators" not in block:
            raise SpecFormatError("spec.action: expected {generators}")
        action = tuple(str(s) for s in block["generators"])
    return SpecFile(gvg, action)


def spec_to_json(spec: SpecFile) -> str:
    return json.dumps(spec_to_dict(spec), indent=2) + "\n"


def spec_from_json(text: str) -> SpecFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"spec: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return spec_from_dict(data)


def write_spec(path, spec: SpecFile) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(spec_to_json(spec))


def read_spec(path) -> SpecFile:
    with open(path, "r", encoding="utf-8") as fh:
        return spec_from_json(fh.read())
