"""Generalised voltage graphs, their covers, and quotient reconstruction.

The library revolves around four structures: permutation groups
(:mod:`voltcov.permgrp`), dart-based graphs (:mod:`voltcov.dartgraph`),
voltage graphs pairing the two (:mod:`voltcov.voltage`), and covers built
from them (:mod:`voltcov.cover`).  On top sit quotients and reconstruction
(:mod:`voltcov.quotient`), voltage normalisation (:mod:`voltcov.normalize`)
and cover automorphisms (:mod:`voltcov.symmetry`).
"""

from .dartgraph import (
    Graph,
    GraphMorphism,
    SpanningTree,
    Walk,
    classify_edges,
    find_isomorphism,
    has_parallel_darts,
    has_semi_edge,
    is_simple,
    to_dot,
)
from .cover import (
    Cover,
    gen_cov,
    has_parallel_darts_by_voltage,
    has_semiedge_by_voltage,
    is_connected_by_voltage,
    is_simple_by_voltage,
    lifted_walk_endpoints,
    neighbours,
    valence_check,
)
from .normalize import NormalisationResult, NormalisationStep, shift_dart, t_normalize
from .permgrp import (
    Group,
    Perm,
    RightCoset,
    conjugate,
    core,
    generate,
    generated_by,
    intersection,
    right_cosets,
    trivial_group,
)
from .quotient import (
    ActionGroup,
    TransversalData,
    choose_transversal,
    generation_connectivity_test,
    is_faithful_gvg,
    quotient_graph,
    reconstruct,
)
from .symmetry import (
    CompatiblePair,
    GroupIso,
    LiftedTranslation,
    action_hom,
    cover_iso_from_pair,
    lift_translation,
    relabel_by_group_iso,
)
from .voltage import (
    GenVoltageGraph,
    SpecFile,
    WalkVoltage,
    bicoset_spec,
    coset_graph_spec,
    dart_fibre_size,
    make_gvg,
    normalize_inverse_pairs,
    read_spec,
    spec_from_json,
    spec_to_json,
    validate_gvg,
    vertex_fibre_size,
    walk_voltage,
    weight_index,
    write_spec,
)

__version__ = "0.1.0"
