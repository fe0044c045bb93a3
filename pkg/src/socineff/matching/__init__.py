"""One-sided matching: n individuals, n objects, strict preferences."""

from .graph import hopcroft_karp, max_weight_assignment
from .instances import lower_bound_instance, random_rankings, uniform_instance, ur_eps_instance
from .mechanisms import (
    fisher_yates,
    rsd_assignment_counts,
    rsd_assignment_matrix,
    rsd_counts,
    rsd_exact,
    rsd_sample,
    rsd_sample_counts,
    serial_dictatorship,
)
from .pareto import (
    dominates,
    find_envy_cycle,
    find_min_pareto_match,
    is_expost_pareto_efficient,
    min_pareto_objects_brute_force,
    min_pareto_witness,
    pareto_matchings_brute_force,
    test_min_pareto,
    top_trading_cycles,
)
from .problem import (
    AllocationProblem,
    Matching,
    MatchingLottery,
    all_matchings,
    check_matching,
    from_rankings,
    induced_context,
    make_problem,
    matching_name,
)
from .welfare import (
    AllocationRanges,
    allocation_frontier_ranges,
    allocation_inefficiency,
    allocation_ranges,
    assignment_inefficiency,
    infinite_witness,
    matching_value,
    max_value_matching,
    normalized_weights,
)
