"""Weakly separated collections over positroids: mutation graphs and their classification."""

from .cyclic import (
    InvalidInputError,
    KSet,
    cyclic_sort,
    cyclically_ordered,
    kset_leq,
    pairwise_weakly_separated,
    quasi_adjacent,
    weakly_separated,
)
from .necklace import (
    DisconnectedPermutationError,
    GrassmannNecklace,
    Permutation,
    PositroidView,
    alignment_count,
    expected_collection_size,
    interior_size,
    necklace_from_permutation,
    permutation_from_necklace,
    positroid_contains,
    positroid_elements,
)
from .collection import (
    MutationSite,
    PurityError,
    Tiling,
    WSCollection,
    adjacency_graph,
    adjacency_grouping,
    adjacent,
    initial_maximal_collection,
    is_mutatable_by_faces,
    mutate,
    mutation_sites,
    tiling,
)
from .graphs import (
    BudgetExceededError,
    CanonicalCertificate,
    LabeledGraph,
    OracleUnavailableError,
    brute_force_maximal_collections,
    canonical_certificate,
    cartesian_product,
    cconstant_graph,
    exchange_graph,
    from_adjacency,
    isomorphic,
    shape,
)
from .symmetry import (
    Decomposition,
    EquivalenceClass,
    blr_op,
    decomposition_set,
    glue,
    interval_nonprime_heuristic,
    inverse_op,
    is_prime,
    lr_op,
    orbit,
    rot_op,
    unglue,
)
from .classify import (
    ClassificationRow,
    SearchBudgetError,
    classify_prime_vmf,
    compose_table,
    is_applicable,
    is_mutation_friendly,
    is_very_mutation_friendly,
    verify_catalan,
    verify_cconstant_tables,
    verify_tree_cycle_theorems,
)

__version__ = "0.1.0"
