"""Exact length-weighted cycle spaces and integer homology of finite graphs."""

from __future__ import annotations

from .graph import (
    ClosedWalk,
    Edge,
    Exhaustion,
    ExhaustionError,
    GraphError,
    SpanningForest,
    WalkError,
    WeightedMultigraph,
    build_graph,
    exhaustion_step,
    normalize_by_fundamental_multiplicity,
    shortest_path_metric,
    spanning_forest,
    walk_length,
)
from .homology import (
    Circulation,
    ConservationError,
    CycleWithMultiplicity,
    HomologyClass,
    check_oplus,
    circulation_of,
    class_of,
    flow_decompose,
    is_primitive,
    is_subclass,
    is_subflow,
    length_of_class,
    min_length_representative,
    primitive_decompose,
    walk_to_circulation,
)
from .metric import (
    AreaBudget,
    GeometricTail,
    PiMultiple,
    SigmaRepresentative,
    SigmaTerm,
    SubdividedPath,
    cauchy_verify,
    circle_lower_bound,
    cylinder_delta,
    d1_upper_bound,
    delta_close_check,
    disc_area_budget,
    fragmentability_report,
    homotopy_width_bound,
    is_isometric_cycle,
    sigma_tail_bound,
    squares_threshold,
)
from .spaces import Space, SpaceError, make_comb, make_cycle, make_ladder, make_owl, make_sine_comb, make_space
from .z2 import (
    CycleSpaceError,
    EdgeSetZ2,
    TwoBasisVerdict,
    decompose_edge_disjoint_circuits,
    fundamental_cycle,
    in_cycle_space,
    is_circuit,
    verify_two_basis,
    z2_coordinates,
    z2_reconstruct,
    z2_sum,
)

__version__ = "0.1.0"
