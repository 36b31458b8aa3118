"""Side-information encoders for nonstationary pair sources, fractional
neighbourhood domination with a randomized constructor, and kNN-graph
undersampling built on top of it."""

from .graph_core import (
    UNREACHABLE,
    DirectedGraph,
    Graph,
    bfs_distance,
    degree_stats,
    gen_gnp,
    load_edge_list,
    save_edge_list,
    three_far_set,
)
from .neigh_dom import (
    ConcentrationReport,
    ConcentrationRow,
    DominationCertificate,
    LowerBound,
    NonterminationError,
    brute_force_min,
    check_sufficient_condition,
    concentration_experiment,
    greedy_shrink,
    is_theta_dominating,
    lll_construct,
    lower_bound_certificate,
    required_in_neighbourhood,
)
from .source_model import (
    DependencyGraph,
    EntropyProfile,
    JointDistribution,
    SourceFamily,
    build_dependency_graph,
    entropy,
    entropy_profile,
    family_from_dict,
    family_to_dict,
    load_family,
    load_numeric_csv,
    marginals_and_conditional,
    sample_sequence,
    save_family,
    sequence_log_prob,
    sequence_log_prob_x,
    sequence_log_prob_y,
    storage_savings,
)
from .sw_coding import (
    ENUMERATION_CAP,
    Codebook,
    DependentEncoder,
    EnumerationTooLargeError,
    ImpossibleInjectionError,
    MonteCarloError,
    SweepRow,
    TypicalSet,
    build_typical_set_xy,
    build_typical_set_y,
    construct_achievability_encoder,
    exact_error,
    heavy_slice_set,
    monte_carlo_error,
    optimal_error,
    slice_a_y,
    threshold_sweep,
)
from .undersample import (
    Dataset,
    EvaluationReport,
    KnnGraph,
    UndersampleResult,
    choose_k,
    distance_matrix,
    evaluate_knn_classifier,
    knn_graph,
    load_dataset,
    save_dataset,
    undersample_majority,
)

__version__ = "0.1.0"

__all__ = [
    "UNREACHABLE",
    "Graph",
    "DirectedGraph",
    "gen_gnp",
    "degree_stats",
    "bfs_distance",
    "three_far_set",
    "save_edge_list",
    "load_edge_list",
    "JointDistribution",
    "SourceFamily",
    "EntropyProfile",
    "DependencyGraph",
    "entropy",
    "entropy_profile",
    "marginals_and_conditional",
    "sample_sequence",
    "sequence_log_prob",
    "sequence_log_prob_x",
    "sequence_log_prob_y",
    "storage_savings",
    "build_dependency_graph",
    "family_to_dict",
    "family_from_dict",
    "save_family",
    "load_family",
    "load_numeric_csv",
    "ENUMERATION_CAP",
    "EnumerationTooLargeError",
    "ImpossibleInjectionError",
    "TypicalSet",
    "Codebook",
    "DependentEncoder",
    "MonteCarloError",
    "SweepRow",
    "build_typical_set_y",
    "build_typical_set_xy",
    "slice_a_y",
    "heavy_slice_set",
    "construct_achievability_encoder",
    "exact_error",
    "optimal_error",
    "monte_carlo_error",
    "threshold_sweep",
    "DominationCertificate",
    "NonterminationError",
    "LowerBound",
    "ConcentrationRow",
    "ConcentrationReport",
    "required_in_neighbourhood",
    "is_theta_dominating",
    "check_sufficient_condition",
    "lll_construct",
    "greedy_shrink",
    "brute_force_min",
    "lower_bound_certificate",
    "concentration_experiment",
    "Dataset",
    "KnnGraph",
    "EvaluationReport",
    "UndersampleResult",
    "load_dataset",
    "save_dataset",
    "distance_matrix",
    "knn_graph",
    "choose_k",
    "undersample_majority",
    "evaluate_knn_classifier",
    "__version__",
]
