"""Greedy maximum-perimeter analysis of finite ultrametric point sets."""

from .bhargava import Valuation, check_equivalence, is_pm_ordering, is_prime, pm_ordering, vp
from .constructions import (
    EquivHierarchy,
    WeightedTree,
    constant_triple,
    eqrel_triple,
    extend_to_full,
    mod_triple,
    padic_log_triple,
    padic_triple,
    rseq_triple,
    shift_distances,
    tree_triple,
)
from .core import (
    FullUltraTriple,
    Rational,
    UltraTriple,
    ValidationReport,
    Violation,
    perimeter_set,
    perimeter_tuple,
    projections,
    rational,
    validate,
)
from .greedoid import (
    AxiomReport,
    SetSystem,
    bhargava_greedoid,
    check_axiom_i,
    check_axiom_ii,
    check_axiom_iii,
    check_axiom_iv,
    check_matroid_bases,
    exchange_element,
    level_sets,
    mask_from_points,
    points_from_mask,
    strong_exchange_pair,
)
from .greedy import (
    GreedyTrace,
    TieBreak,
    all_greedy_permutations,
    clone_triple,
    extend_greedy,
    greedy_permutation,
    greedy_subsequence,
    is_greedy_permutation,
    is_greedy_subsequence,
    nu,
    nu_bar,
    nu_bar_inequality_check,
)
from .oracle import (
    MaxResult,
    brute_all_greedy,
    brute_max_perimeter,
    brute_max_tuple_perimeter,
    random_ultra_triple,
)

__version__ = "0.1.0"

__all__ = [
    "AxiomReport",
    "EquivHierarchy",
    "FullUltraTriple",
    "GreedyTrace",
    "MaxResult",
    "Rational",
    "SetSystem",
    "TieBreak",
    "UltraTriple",
    "ValidationReport",
    "Violation",
    "Valuation",
    "WeightedTree",
    "all_greedy_permutations",
    "bhargava_greedoid",
    "brute_all_greedy",
    "brute_max_perimeter",
    "brute_max_tuple_perimeter",
    "check_axiom_i",
    "check_axiom_ii",
    "check_axiom_iii",
    "check_axiom_iv",
    "check_equivalence",
    "check_matroid_bases",
    "clone_triple",
    "constant_triple",
    "eqrel_triple",
    "exchange_element",
    "extend_greedy",
    "extend_to_full",
    "greedy_permutation",
    "greedy_subsequence",
    "is_greedy_permutation",
    "is_greedy_subsequence",
    "is_pm_ordering",
    "is_prime",
    "level_sets",
    "mask_from_points",
    "mod_triple",
    "nu",
    "nu_bar",
    "nu_bar_inequality_check",
    "padic_log_triple",
    "padic_triple",
    "perimeter_set",
    "perimeter_tuple",
    "pm_ordering",
    "points_from_mask",
    "projections",
    "random_ultra_triple",
    "rational",
    "rseq_triple",
    "shift_distances",
    "strong_exchange_pair",
    "tree_triple",
    "validate",
    "vp",
]
