"""The frontier-normalized social value V and the inefficiency measure built on it.

Each individual's utility is rescaled so that her minimum and maximum over the
Pareto frontier become 0 and 1; V is the average rescaled utility, and the
inefficiency of a lottery is the shortfall of V from its best pure value.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .context import Context, Lottery, point, utility_profile
from .frontier import FrontierSummary, frontier_summary
from .scalar import EXACT, FLOAT_TOL, ExtendedScalar, Scalar, ext_div, ext_mul, ext_sub, ext_sum, is_infinite, one


@dataclass(frozen=True)
class InefficiencyResult:
    value: ExtendedScalar
    v_of_x: ExtendedScalar
    v_max: Scalar
    argmax_pure: int
    #: a frontier-indifferent individual who is strictly worse off than on the frontier
    witness: int | None = None

    @property
    def infinite(self) -> bool:
        return is_infinite(self.value)


def _tol(c: Context) -> float:
    return 0 if c.mode == EXACT else FLOAT_TOL


def _normalize(c: Context, summary: FrontierSummary, i: int, u: Scalar) -> ExtendedScalar:
    lo, hi = summary.u_min[i], summary.u_max[i]
    return ext_div(u - lo, hi - lo, _tol(c))


def normalized_utility(c: Context, summary: FrontierSummary, i: int, x: Lottery) -> ExtendedScalar:
    """``(EU_i(x) - u_min) / (u_max - u_min)``, with 0/0 = 0 and negative/0 = -inf."""
    return _normalize(c, summary, i, utility_profile(c, x)[i])


def normalized_profile(c: Context, x: Lottery, summary: FrontierSummary | None = None) -> tuple:
    summary = summary or frontier_summary(c)
    return tuple(_normalize(c, summary, i, u) for i, u in enumerate(utility_profile(c, x)))


def social_value(c: Context, x: Lottery, summary: FrontierSummary | None = None) -> ExtendedScalar:
    """Per-capita average of frontier-normalized utilities."""
    total = ext_sum(normalized_profile(c, x, summary))
    return ext_mul(one(c.mode) / c.n, total)


@lru_cache(maxsize=4096)
def pure_values(c: Context) -> tuple:
    summary = frontier_summary(c)
    return tuple(social_value(c, point(c, a), summary) for a in range(c.m))


def best_pure(c: Context) -> tuple[Scalar, int]:
    """``(max V over pure alternatives, first maximizing index)``.

    V is affine in the lottery, so no lottery beats the best pure alternative.
    """
    values = pure_values(c)
    best = max(values)
    return best, values.index(best)


def infinity_witness(c: Context, x: Lottery) -> int | None:
    """First frontier-indifferent individual who strictly prefers the frontier to ``x``."""
    summary = frontier_summary(c)
    tol = _tol(c)
    for i, u in enumerate(utility_profile(c, x)):
        if summary.frontier_indifferent[i] and u < summary.u_min[i] - tol:
            return i
    return None


def is_infinite_inefficiency(c: Context, x: Lottery) -> bool:
    return infinity_witness(c, x) is not None


def ihat(c: Context, x: Lottery) -> InefficiencyResult:
    v_max, arg = best_pure(c)
    assert not is_infinite(v_max)
    v = social_value(c, x)
    value = ext_sub(v_max, v)
    if c.mode != EXACT and abs(value) <= FLOAT_TOL:
        value = 0.0
    return InefficiencyResult(value, v, v_max, arg, infinity_witness(c, x))
