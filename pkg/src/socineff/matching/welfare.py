"""Frontier-normalized welfare and inefficiency of allocation outcomes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..scalar import EXACT, FLOAT_TOL, ExtendedScalar, Scalar, ext_div, ext_mul, ext_sub, ext_sum, is_infinite, one
from .graph import max_weight_assignment
from .pareto import find_min_pareto_match
from .problem import AllocationProblem, Matching, MatchingLottery, check_matching


@dataclass(frozen=True)
class AllocationRanges:
    u_min: tuple[Scalar, ...]
    u_max: tuple[Scalar, ...]
    #: per individual, her least preferred object over ex-post PO matchings
    min_objects: tuple[int, ...]

    @property
    def frontier_indifferent(self) -> tuple[bool, ...]:
        return tuple(lo == hi for lo, hi in zip(self.u_min, self.u_max))


def _tol(p: AllocationProblem) -> float:
    return 0 if p.mode == EXACT else FLOAT_TOL


def allocation_ranges(p: AllocationProblem) -> AllocationRanges:
    """Frontier utility range of each individual without building the n!-alternative context.

    The top of the range is her favorite object (the matching where she picks
    first is ex-post PO); the bottom comes from the min-Pareto-object search.
    """
    mins = tuple(find_min_pareto_match(p, i) for i in range(p.n))
    u_min = tuple(p.utilities[i][o] for i, o in enumerate(mins))
    u_max = tuple(p.utilities[i][p.favorite(i)] for i in range(p.n))
    return AllocationRanges(u_min, u_max, mins)


def allocation_frontier_ranges(p: AllocationProblem) -> list[tuple[Scalar, Scalar]]:
    r = allocation_ranges(p)
    return list(zip(r.u_min, r.u_max))


def normalized_weights(p: AllocationProblem, ranges: AllocationRanges | None = None) -> list[list[ExtendedScalar]]:
    """``W[i][o] = (u_i(o) - u_min_i) / (u_max_i - u_min_i)`` with the extended conventions."""
    ranges = ranges or allocation_ranges(p)
    tol = _tol(p)
    return [
        [ext_div(u - ranges.u_min[i], ranges.u_max[i] - ranges.u_min[i], tol) for u in row]
        for i, row in enumerate(p.utilities)
    ]


def matching_value(p: AllocationProblem, m: Sequence[int], weights=None) -> ExtendedScalar:
    m = check_matching(p, m)
    weights = weights or normalized_weights(p)
    return ext_mul(one(p.mode) / p.n, ext_sum(weights[i][m[i]] for i in range(p.n)))


def max_value_matching(p: AllocationProblem, weights=None) -> tuple[Matching, Scalar]:
    """Best pure matching under V, by maximum-weight perfect assignment.

    Edges of weight -inf (a frontier-indifferent individual off her frontier
    object) are removed rather than penalized; a PO matching avoids them all.
    """
    weights = weights or normalized_weights(p)
    masked = [[None if is_infinite(w) else w for w in row] for row in weights]
    assignment, total = max_weight_assignment(masked)
    return tuple(assignment), ext_mul(one(p.mode) / p.n, total)


def _snap(p: AllocationProblem, value):
    if p.mode != EXACT and not is_infinite(value) and abs(value) <= FLOAT_TOL:
        return 0.0
    return value


def allocation_inefficiency(p: AllocationProblem, outcome: MatchingLottery) -> ExtendedScalar:
    """``v_max - sum_m prob(m) * V(m)``."""
    weights = normalized_weights(p)
    _, v_max = max_value_matching(p, weights)
    expected = ext_sum((ext_mul(q, matching_value(p, m, weights)) for m, q in outcome.outcomes), 0 * v_max)
    return _snap(p, ext_sub(v_max, expected))


def assignment_inefficiency(p: AllocationProblem, probabilities: Sequence[Sequence[Scalar]]) -> ExtendedScalar:
    """Inefficiency of any lottery with the given individual-object marginals.

    V is linear in the lottery and separable across individuals, so only the
    assignment probabilities matter.
    """
    weights = normalized_weights(p)
    _, v_max = max_value_matching(p, weights)
    total = ext_sum(
        (ext_mul(probabilities[i][o], weights[i][o]) for i in range(p.n) for o in range(p.n)),
        0 * v_max,
    )
    return _snap(p, ext_sub(v_max, ext_mul(one(p.mode) / p.n, total)))


def infinite_witness(p: AllocationProblem, outcome: MatchingLottery) -> int | None:
    """Frontier-indifferent individual who can land off her frontier object."""
    ranges = allocation_ranges(p)
    for i, flat in enumerate(ranges.frontier_indifferent):
        if flat and any(q > 0 and m[i] != ranges.min_objects[i] for m, q in outcome.outcomes):
            return i
    return None


