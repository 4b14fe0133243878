"""Fulkerson coverings, FR-triples and F-families on bridgeless cubic graphs."""

from .budget import Budget, SearchResult
from .graph_core import (
    CubicGraph,
    Cycle,
    CycleSet,
    EdgeSet,
    GraphError,
    Matching,
    MultiGraph,
    cycle_decomposition,
    cyclic_edge_connectivity_at_least,
    degree,
    is_bipartite,
    is_bridgeless,
    is_connected,
)
from .generators import (
    DotProductResult,
    DotProductSpec,
    NamedVertexMap,
    cube_q3,
    dot_product,
    doubled_matching_cycle,
    flower_snark,
    flower_snark_names,
    goldberg,
    goldberg_names,
    k4,
    k33,
    petersen,
    ten_vertex_c5_example,
    ten_vertex_c5_names,
    theta,
)
from .matchcolor import (
    EdgeColoring,
    PerfectMatching,
    PMEnumeration,
    ShrinkResult,
    SuppressedGraph,
    color_classes_as_matchings,
    enumerate_perfect_matchings,
    enumerate_three_edge_colorings,
    find_c5_two_factor,
    find_perfect_matching,
    five_edge_coloring,
    is_m_balanced,
    kempe_exchange,
    phi_two_factor,
    shrink_to_gstar,
    split_and_suppress,
    three_edge_colorable,
    three_edge_coloring,
    two_factor_cycles,
)
from .fulkerson import (
    A1A2,
    AUTO,
    COLOR,
    EXACT2COVER,
    BiHamiltonianReport,
    CoverageReport,
    FRTriple,
    FulkersonCovering,
    LiftError,
    ProperCoveringWitness,
    TPartition,
    are_compatible,
    covering_from_compatible,
    enumerate_fulkerson_coverings,
    find_fr_triple,
    find_fulkerson_covering,
    fr_triple_from_matchings,
    is_bi_hamiltonian,
    is_proper,
    proper_covering_from_witness,
    t_partition,
    verify_covering,
)
from .ffamily import (
    C5StructureResult,
    DotStep,
    FFamily,
    FFamilyReport,
    PetersenExpansion,
    PipelineResult,
    TransportError,
    TransportResult,
    covering_from_c5_structure,
    covering_from_ffamily,
    derive_n,
    dot_preserve_type1,
    dot_preserve_type2,
    enumerate_ffamilies,
    find_ffamily,
    iterate_dot_sequence,
    petersen_expansion,
    verify_ffamily,
)

__all__ = [name for name in dir() if not name.startswith("_")]
