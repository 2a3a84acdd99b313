"""Combinatorial dynamics on the face poset of the real line.

The package models the line as an infinite fence of minimal and maximal
points, windows of it as finite posets, and studies continuous single-valued
and Vietoris-like multivalued dynamics on those windows: periodic structure,
interval images, homology, Lefschetz numbers, and invariant sets.
"""

__version__ = "0.1.0"

from .errors import (
    InconclusiveDynamicsError,
    InternalConsistencyError,
    InvalidMapError,
    InvalidMultiMapError,
    InvalidPosetError,
    InvalidRangeError,
    InvalidTailError,
    LineDynError,
    NoPeriodTwoError,
    NotContinuousError,
    NotFoundError,
    NotVietorisError,
    OutOfWindowError,
    SizeGuardError,
    SpecFormatError,
)
from .line import (
    MIRROR,
    NO_TAIL,
    Collapse,
    Direction,
    Interval,
    LineWindow,
    Mirror,
    NoTail,
    Shift,
    TailRule,
    build_line_window,
    interval_indices,
    is_maximal_index,
    is_minimal_index,
    line_leq,
    tail_from_json,
    tends_to,
)
from .posets import Poset, is_isomorphic
from .complexes import (
    SimplicialComplex,
    SimplicialMap,
    barycentric_subdivision,
    face_poset,
    induced_poset_map,
    induced_simplicial_map,
    interval_triangulation,
    order_complex,
)
from .homology import (
    ChainComplex,
    HomologyBasis,
    HomologyGroups,
    boundary_matrices,
    homology,
    integer_rank,
    is_acyclic,
    lefschetz_number_of_map,
    rational_homology_basis,
    rational_homology_map,
    reduced_homology,
    smith_normal_form,
    snf_diagonal,
)
from .singlemaps import (
    DynamicsClass,
    DynamicsTag,
    OrbitRecord,
    OrbitStatus,
    SelfMap,
    classify_dynamics,
    contains_interval_check,
    count_continuous_selfmaps,
    enumerate_continuous_selfmaps,
    image_of_interval,
    is_order_preserving_line,
    iterate,
    period_two_set,
    periodic_points,
    selfmap_lefschetz,
)
from .multimaps import (
    GraphPoset,
    InvariantSet,
    InvariantSetReport,
    LefschetzResult,
    MultiMap,
    TransitionGraph,
    as_multimap,
    classify_invariant_sets,
    fixed_points,
    graph_poset,
    is_vietoris_like_map,
    is_vietoris_like_multimap,
    lefschetz_number,
    orbit_stream,
    period_spectrum,
    periodic_orbits,
    transition_graph,
)
from .specio import index_expression, load_map, parse_map, save_map
from .verify import (
    VerifyResult,
    run_theorem_suite,
    verify_interval_lemma,
    verify_lefschetz_fixed_points,
    verify_no_high_periods,
    verify_period_two_structure,
)

__all__ = [name for name in dir() if not name.startswith("_")]
