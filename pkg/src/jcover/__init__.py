"""Clique covers of Johnson graphs: constructions, bounds, and exact search."""

from .bounds import (
    BoundsReport,
    bounds_report,
    catalan,
    catalan_tightness_test,
    clique_number,
    goodman_triangle_bound,
    johnson_alpha_upper,
    known_theta,
    known_theta_bounds,
    simple_lower_bound,
    theta_closed_form,
)
from .codes import (
    Lexicode,
    lexicode,
    pairwise_intersecting,
    theta_cover_from_lexicode,
)
from .constructions import (
    cliques_from_code,
    code_from_cover_simple,
    code_from_cover_two_element,
    cover_from_blocks,
    cover_k1,
    cover_k2,
    cover_k3,
    cover_recursive,
    find_conversion_element,
)
from .errors import (
    BudgetExceededError,
    FormatError,
    JCoverError,
    PreconditionError,
    VerificationError,
)
from .files import (
    load_blocks,
    load_cover,
    load_words,
    save_blocks,
    save_cover,
    save_words,
)
from .graph import (
    Clique,
    CliqueKind,
    Code,
    Cover,
    CoverCheck,
    CoverStats,
    GraphParams,
    KSubset,
    adjacent,
    clique_vertices,
    complement_cover,
    cover_stats,
    enumerate_maximal_cliques,
    is_code,
    is_maximal,
    verify_cover,
    vertices,
)
from .solver import (
    AnnealOutcome,
    AnnealSchedule,
    Budget,
    SetCoverInstance,
    SolveOutcome,
    SolveStatus,
    anneal_cover,
    covering_number_small,
    exact_max_independent_set,
    exact_set_cover,
    exact_theta,
    greedy_cover,
    outcome_cover,
    symmetric_cover_search,
)

__version__ = "0.1.0"

__all__ = [
    "AnnealOutcome",
    "AnnealSchedule",
    "BoundsReport",
    "Budget",
    "BudgetExceededError",
    "Clique",
    "CliqueKind",
    "Code",
    "Cover",
    "CoverCheck",
    "CoverStats",
    "FormatError",
    "GraphParams",
    "JCoverError",
    "KSubset",
    "Lexicode",
    "PreconditionError",
    "SetCoverInstance",
    "SolveOutcome",
    "SolveStatus",
    "VerificationError",
    "adjacent",
    "anneal_cover",
    "bounds_report",
    "catalan",
    "catalan_tightness_test",
    "clique_number",
    "clique_vertices",
    "cliques_from_code",
    "code_from_cover_simple",
    "code_from_cover_two_element",
    "complement_cover",
    "cover_from_blocks",
    "cover_k1",
    "cover_k2",
    "cover_k3",
    "cover_recursive",
    "cover_stats",
    "covering_number_small",
    "enumerate_maximal_cliques",
    "exact_max_independent_set",
    "exact_set_cover",
    "exact_theta",
    "find_conversion_element",
    "goodman_triangle_bound",
    "greedy_cover",
    "is_code",
    "is_maximal",
    "johnson_alpha_upper",
    "known_theta",
    "known_theta_bounds",
    "lexicode",
    "load_blocks",
    "load_cover",
    "load_words",
    "outcome_cover",
    "pairwise_intersecting",
    "save_blocks",
    "save_cover",
    "save_words",
    "simple_lower_bound",
    "symmetric_cover_search",
    "theta_closed_form",
    "theta_cover_from_lexicode",
    "verify_cover",
    "vertices",
]
