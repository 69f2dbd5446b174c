"""Exact computations on bigraphical hyperplane arrangements."""

from .errors import (
    BigraphicalError,
    CapExceeded,
    DuplicateEdgeError,
    InputError,
    InvalidParameters,
    LoopError,
    PreconditionError,
    VerificationError,
    VertexRangeError,
)
from .graph import (
    Multigraph,
    SimpleGraph,
    SinkedGraph,
    build_graph,
    build_multigraph,
    complete_graph,
    cut_degree,
    cycle_graph,
    dipole,
    path_graph,
    simple_cycles,
    sink_extension,
    spanning_tree_count,
)
from .orientations import (
    AdmissibilityClass,
    ParameterList,
    PartialOrientation,
    RegionCensus,
    ScoreDigraph,
    census,
    classify,
    is_relatively_bounded,
    preset,
    realize_indegree,
    region_count_bounds,
    sample_generic,
    score_digraph,
    step_score,
    validate_parameters,
    zero_cycle_stats,
)
from .parking import (
    acyclic_indeg_set,
    bct_maximal,
    burning_check,
    enumerate_parking,
    h_vector,
    is_parking,
    pak_stanley_labels,
    parking_wrt_vertex,
)
from .polynomials import (
    BiPoly,
    UniPoly,
    char_poly_generic,
    cycle_closed_forms,
    dual_check,
    generic_region_counts,
    reliability,
    tutte,
)
from .geometry import (
    ConstraintSystem,
    LinearConstraint,
    facet_adjacent,
    pak_stanley_bfs,
    region_system,
    strict_feasible,
)

__version__ = "0.1.0"
