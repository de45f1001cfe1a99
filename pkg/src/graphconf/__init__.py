"""Configuration spaces of graphs: exact cube-complex homology, symmetric
group actions, and stabilization experiments for glued graph families."""

__version__ = "0.1.0"

from .graphs import (
    CIRCLE_LAMBDA,
    FamilyDescriptor,
    FamilyInstance,
    Graph,
    GraphError,
    INTERVAL_DELTA,
    Subgraph,
    SummandSpec,
    WEDGE_FI,
    circle_family,
    full_subgraph,
    glue,
    identify_vertices,
    interval_family,
    make_cycle_graph,
    make_h_graph,
    make_path_graph,
    make_spider,
    make_star,
    normalize_loops,
    realize_family,
    subdivide,
    support_embeddings,
    support_subgraphs,
    wedge,
    wedge_family,
)
from .complexes import (
    BudgetExceeded,
    CubeComplex,
    DEFAULT_CELL_BUDGET,
    MODEL_KIND,
    ModelCell,
    ModelError,
    ORACLE_KIND,
    build_abrams_oracle,
    build_model,
    euler_characteristic,
    f_vector,
    subcomplex_supported_in,
)
from .linalg import (
    LinAlgError,
    SparseIntMatrix,
    kernel_with_coords,
    rank,
    rank_of_columns,
    smith_normal_form,
)
from .homology import (
    ChainMap,
    GeneratedCheck,
    HomologyError,
    HomologyPresentation,
    betti_numbers,
    generated_check,
    homology,
    induced_inclusion_map,
    matrix_rank,
    oracle_betti_numbers,
    permutation_action_map,
    project_to_homology,
    push_cycle,
)
from .characters import (
    CharacterError,
    CharacterReport,
    CorruptedCharacterError,
    character_report,
    class_representative,
    class_size,
    decompose,
    homology_character,
    hook_length_dimension,
    mn_character,
    pad,
    pad_is_valid,
    partitions,
    stability_verdict,
    unpad,
)
from .stability import (
    BasicCycle,
    Chain,
    GenerationReport,
    StabilityError,
    canonical_parking,
    dimension_polynomial_check,
    generation_degree_check,
    h_cycle,
    product_cycle,
    pushed_cycle_space,
    star_cycle,
    verify_tree_generators,
)
