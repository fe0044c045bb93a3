"""Pareto efficiency against lotteries, and per-individual frontier ranges."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .context import Context, Lottery, check_lottery, point, utility_profile
from .errors import GuardrailExceeded
from .lp import EQ, Constraint, LinearProgram, Status, solve_lp
from .scalar import EXACT, FLOAT_TOL, Scalar

ORACLE_MAX_ALTERNATIVES = 8
ORACLE_MAX_INDIVIDUALS = 5


@dataclass(frozen=True)
class FrontierSummary:
    efficient_pure: frozenset[int]
    u_min: tuple[Scalar, ...]
    u_max: tuple[Scalar, ...]
    frontier_indifferent: tuple[bool, ...]

    @property
    def frontier_dimension(self) -> int:
        return sum(1 for flag in self.frontier_indifferent if not flag)


def _efficiency_lp(c: Context, x: Lottery) -> LinearProgram:
    # variables: lambda_a (one per alternative), then slack d_i (one per individual)
    m, n = c.m, c.n
    target = utility_profile(c, x)
    cons = []
    for i, row in enumerate(c.utilities):
        d = [0] * n
        d[i] = -1
        cons.append(Constraint(tuple(row) + tuple(d), EQ, target[i]))
    cons.append(Constraint((1,) * m + (0,) * n, EQ, 1))
    return LinearProgram((0,) * m + (1,) * n, tuple(cons))


def _threshold(c: Context) -> float:
    if c.mode == EXACT:
        return 0
    return FLOAT_TOL * (1 + max(abs(v) for row in c.utilities for v in row))


def _solve_efficiency(c: Context, x: Lottery):
    check_lottery(c, x)
    out = solve_lp(_efficiency_lp(c, x), c.mode)
    # (x itself, d = 0) is feasible and the utility polytope is bounded
    assert out.status is Status.OPTIMAL, out.status
    return out


def is_efficient(c: Context, x: Lottery) -> bool:
    """True iff no lottery is weakly better for all and strictly better for someone."""
    out = _solve_efficiency(c, x)
    return out.value <= _threshold(c)


def dominating_efficient_lottery(c: Context, x: Lottery) -> Lottery:
    """An efficient lottery that every individual weakly prefers to ``x``.

    Maximizing total surplus over the lotteries that dominate ``x`` lands on
    the frontier: any strict improvement of the optimum would raise the total.
    """
    out = _solve_efficiency(c, x)
    lam = out.solution[: c.m]
    if c.mode == EXACT:
        return Lottery(tuple(lam), c.mode)
    lam = [max(0.0, v) for v in lam]
    total = sum(lam)
    return Lottery(tuple(v / total for v in lam), c.mode)


def _pure_dominated(c: Context, a: int) -> bool:
    col = c.column(a)
    for b in range(c.m):
        if b == a:
            continue
        other = c.column(b)
        if all(o >= v for o, v in zip(other, col)) and any(o > v for o, v in zip(other, col)):
            return True
    return False


@lru_cache(maxsize=4096)
def frontier_summary(c: Context) -> FrontierSummary:
    """Efficient pure alternatives and the frontier range of every individual.

    The minimum over the frontier is taken over efficient pure alternatives
    only. The efficient set of a polytope in utility space is a union of faces,
    the vertices of an efficient face are efficient, and every vertex of the
    utility polytope is the image of a pure alternative.
    """
    efficient = frozenset(
        a for a in range(c.m) if not _pure_dominated(c, a) and is_efficient(c, point(c, a))
    )
    assert efficient, "some alternative must be efficient"
    u_max = tuple(max(row) for row in c.utilities)
    u_min = tuple(min(row[a] for a in efficient) for row in c.utilities)
    tol = 0 if c.mode == EXACT else FLOAT_TOL
    for i, row in enumerate(c.utilities):
        # a global maximizer that is lexicographically best for the others is efficient
        assert abs(max(row[a] for a in efficient) - u_max[i]) <= tol
    flags = tuple(hi - lo <= tol for lo, hi in zip(u_min, u_max))
    summary = FrontierSummary(efficient, u_min, u_max, flags)
    # one frontier-concerned individual would Pareto-rank the whole frontier
    assert summary.frontier_dimension != 1
    return summary


def ideal_point_profile(c: Context) -> tuple[Scalar, ...]:
    return tuple(max(row) for row in c.utilities)


def minimal_expectations_profile(c: Context) -> tuple[Scalar, ...]:
    return frontier_summary(c).u_min


def _solve_exact(a: list[list[Fraction]], b: list[Fraction]):
    """Gauss-Jordan on a square system; None when singular."""
    k = len(a)
    m = [list(r) + [v] for r, v in zip(a, b)]
    for col in range(k):
        piv = next((r for r in range(col, k) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [v / p for v in m[col]]
        for r in range(k):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [v - f * w for v, w in zip(m[r], m[col])]
    return [m[r][k] for r in range(k)]


def brute_force_is_efficient(c: Context, x: Lottery) -> bool:
    """Efficiency by vertex enumeration, independent of the LP solver.

    The lotteries that weakly dominate ``x`` form a polytope; ``x`` is
    dominated iff some vertex of it has a utility vector different from
    ``x``'s. A vertex is pinned down by the simplex equation plus tight
    inequalities, so it has at most n + 1 positive weights. For each exact
    support S we pick |S| - 1 tight utility constraints and solve.
    """
    check_lottery(c, x)
    if c.m > ORACLE_MAX_ALTERNATIVES or c.n > ORACLE_MAX_INDIVIDUALS:
        raise GuardrailExceeded(
            f"oracle limited to {ORACLE_MAX_ALTERNATIVES} alternatives and {ORACLE_MAX_INDIVIDUALS} individuals"
        )
    u = [[Fraction(v) for v in row] for row in c.utilities]
    w = [Fraction(p) for p in x.weights]
    target = [sum(wa * row[a] for a, wa in enumerate(w)) for row in u]
    for size in range(1, min(c.m, c.n + 1) + 1):
        for support in itertools.combinations(range(c.m), size):
            for tight in itertools.combinations(range(c.n), size - 1):
                a = [[Fraction(1)] * size] + [[u[i][s] for s in support] for i in tight]
                b = [Fraction(1)] + [target[i] for i in tight]
                lam = _solve_exact(a, b)
                if lam is None or any(v <= 0 for v in lam):
                    continue
                util = [sum(v * u[i][s] for v, s in zip(lam, support)) for i in range(c.n)]
                if all(p >= t for p, t in zip(util, target)) and util != target:
                    return False
    return True
