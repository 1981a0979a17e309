"""Combinatorial maps on orientable surfaces: duals, cuts, bounds, surgery, search."""

from .bounds import (
    ExcessProfile,
    TableEntry,
    ThresholdVerdict,
    check_one_cut_guarantee,
    check_two_cut_guarantee,
    excess_profile,
    genus_lower_bound,
    min_genus,
    one_cut_genus_bounds,
    one_cut_size_threshold,
    two_cut_genus_bounds,
    two_cut_size_threshold,
)
from .connectivity import (
    CutInventory,
    cut_inventory,
    find_cutsets,
    is_separating_cycle,
    vertex_connectivity,
)
from .core import (
    Angle,
    Face,
    Map,
    RotParseError,
    ValidationError,
    ValidationReport,
    canonical_code,
    canonical_form,
    emit,
    euler_characteristic,
    face_size_multiset,
    facial_walks,
    from_rotations,
    genus,
    parse,
    validate,
)
from .dual import (
    CutDecomposition,
    DualReport,
    cut_to_edge_cut,
    doubly_intersecting,
    dual,
    is_dual_separating,
)
from .search import (
    CaseOutcome,
    EmptyCircuitSpec,
    EnumerationOutcome,
    NineCycleOutcome,
    Remark24Report,
    SearchBudget,
    SearchError,
    WitnessOutcome,
    WitnessSpec,
    empty_map_problems,
    enumerate_connected_maps,
    enumerate_empty,
    parse_empty_spec,
    parse_witness_spec,
    search_empty_9_cycle,
    search_witness,
    triangular_complete_map,
    verify_remark24,
)
from .surgery import (
    FillResult,
    GlueResult,
    GlueSpec,
    InsertResult,
    PipelineOutcome,
    PipelineReport,
    SurgeryError,
    build_one_cut_witness,
    check_fill_ingredient,
    cycle_square_gadget,
    delete_vertex,
    find_disjoint_triangles,
    glue_faces,
    glue_faces_self,
    insert_cycle_in_triangles,
    interior_fill,
    k4_wedge,
    one_cut_witness_from_triangulation,
    one_cut_witness_problems,
    stack_vertex,
    stacked_triangulation,
    subdivide_edge,
    subdivide_edges,
    wedge_at_vertex,
    wheel,
)

__all__ = [
    "Angle",
    "CaseOutcome",
    "CutDecomposition",
    "CutInventory",
    "DualReport",
    "EmptyCircuitSpec",
    "EnumerationOutcome",
    "ExcessProfile",
    "Face",
    "FillResult",
    "GlueResult",
    "GlueSpec",
    "InsertResult",
    "Map",
    "NineCycleOutcome",
    "PipelineOutcome",
    "PipelineReport",
    "Remark24Report",
    "RotParseError",
    "SearchBudget",
    "SearchError",
    "SurgeryError",
    "TableEntry",
    "ThresholdVerdict",
    "ValidationError",
    "ValidationReport",
    "WitnessOutcome",
    "WitnessSpec",
    "build_one_cut_witness",
    "canonical_code",
    "canonical_form",
    "check_fill_ingredient",
    "check_one_cut_guarantee",
    "check_two_cut_guarantee",
    "cut_inventory",
    "cut_to_edge_cut",
    "cycle_square_gadget",
    "delete_vertex",
    "doubly_intersecting",
    "dual",
    "emit",
    "empty_map_problems",
    "enumerate_connected_maps",
    "enumerate_empty",
    "euler_characteristic",
    "excess_profile",
    "face_size_multiset",
    "facial_walks",
    "find_cutsets",
    "find_disjoint_triangles",
    "from_rotations",
    "genus",
    "genus_lower_bound",
    "glue_faces",
    "glue_faces_self",
    "insert_cycle_in_triangles",
    "interior_fill",
    "is_dual_separating",
    "is_separating_cycle",
    "k4_wedge",
    "min_genus",
    "one_cut_genus_bounds",
    "one_cut_size_threshold",
    "one_cut_witness_from_triangulation",
    "one_cut_witness_problems",
    "parse",
    "parse_empty_spec",
    "parse_witness_spec",
    "search_empty_9_cycle",
    "search_witness",
    "stack_vertex",
    "stacked_triangulation",
    "subdivide_edge",
    "subdivide_edges",
    "triangular_complete_map",
    "two_cut_genus_bounds",
    "two_cut_size_threshold",
    "validate",
    "verify_remark24",
    "vertex_connectivity",
    "wedge_at_vertex",
    "wheel",
]
