"""Dense tableau simplex for small linear programs, in exact or float arithmetic.

Two-phase method with Bland's rule throughout, so exact mode always terminates.
Problems here have at most a few hundred columns; no sparse machinery.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, NumericalBreakdown
from .scalar import EXACT, FLOAT, Scalar, check_mode, to_scalar

PIVOT_TOL = 1e-9
RESIDUAL_TOL = 1e-9
MAX_PIVOTS = 100_000

LE, EQ, GE = "<=", "==", ">="


class Status(enum.Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple
    relation: str
    rhs: object

    def __post_init__(self):
        if self.relation not in (LE, EQ, GE):
            raise DimensionMismatch(f"unknown relation {self.relation!r}")


@dataclass(frozen=True)
class LinearProgram:
    """Maximize ``objective . x`` subject to ``constraints``.

    Variables are nonnegative unless their index is listed in ``free``.
    """

    objective: tuple
    constraints: tuple[Constraint, ...] = ()
    free: frozenset[int] = field(default_factory=frozenset)

    @property
    def dim(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class LpOutcome:
    status: Status
    value: Scalar | None = None
    solution: tuple | None = None


def _validate(lp: LinearProgram) -> None:
    if lp.dim == 0:
        raise DimensionMismatch("a linear program needs at least one variable")
    for k, con in enumerate(lp.constraints):
        if len(con.coeffs) != lp.dim:
            raise DimensionMismatch(f"constraint {k} has {len(con.coeffs)} coefficients, expected {lp.dim}")
    if any(not 0 <= j < lp.dim for j in lp.free):
        raise DimensionMismatch("free-variable index out of range")


class _Tableau:
    def __init__(self, rows, rhs, basis, tol):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.tol = tol

    def pivot(self, r: int, j: int, zrow: list, zval: list) -> None:
        rows, rhs = self.rows, self.rhs
        piv = rows[r][j]
        prow = [v / piv for v in rows[r]]
        rows[r] = prow
        rhs[r] = rhs[r] / piv
        nz = [k for k, v in enumerate(prow) if v != 0]
        for i in range(len(rows)):
            if i == r:
                continue
            f = rows[i][j]
            if f != 0:
                row = rows[i]
                for k in nz:
                    row[k] -= f * prow[k]
                rhs[i] -= f * rhs[r]
        f = zrow[j]
        if f != 0:
            for k in nz:
                zrow[k] -= f * prow[k]
            zval[0] -= f * rhs[r]
        self.basis[r] = j

    def run(self, zrow: list, zval: list, allowed: int) -> bool:
        """Maximize with reduced costs in ``zrow``; return False when unbounded."""
        tol = self.tol
        for _ in range(MAX_PIVOTS):
            entering = next((j for j in range(allowed) if zrow[j] > tol), None)
            if entering is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > tol:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], entering, zrow, zval)
        raise NumericalBreakdown("simplex exceeded the pivot limit")


def solve_lp(lp: LinearProgram, mode: str = EXACT) -> LpOutcome:
    """Solve ``lp`` by two-phase simplex with Bland's rule.

    Exact mode works over Fractions and is authoritative. Float mode uses a
    pivot tolerance of 1e-9 and raises NumericalBreakdown if the returned point
    fails an independent feasibility check.
    """
    check_mode(mode)
    _validate(lp)
    tol = 0 if mode == EXACT else PIVOT_TOL
    conv = (lambda v: to_scalar(v, EXACT)) if mode == EXACT else (lambda v: to_scalar(v, FLOAT, coerce=True))
    zero = conv(0)

    # column map: original var j -> list of (column, sign)
    cols: list[list[tuple[int, int]]] = []
    ncol = 0
    for j in range(lp.dim):
        if j in lp.free:
            cols.append([(ncol, 1), (ncol + 1, -1)])
            ncol += 2
        else:
            cols.append([(ncol, 1)])
            ncol += 1
    n_struct = ncol
    n_slack = sum(1 for con in lp.constraints if con.relation != EQ)
    m = len(lp.constraints)
    width = n_struct + n_slack + m

    rows, rhs = [], []
    slack = n_struct
    for k, con in enumerate(lp.constraints):
        row = [zero] * width
        for j, a in enumerate(con.coeffs):
            a = conv(a)
            for col, sign in cols[j]:
                row[col] = a * sign
        if con.relation == LE:
            row[slack] = conv(1)
            slack += 1
        elif con.relation == GE:
            row[slack] = conv(-1)
            slack += 1
        b = conv(con.rhs)
        if b < 0:
            row = [-v for v in row]
            b = -b
        row[n_struct + n_slack + k] = conv(1)
        rows.append(row)
        rhs.append(b)
    n_real = n_struct + n_slack
    tab = _Tableau(rows, rhs, [n_real + k for k in range(m)], tol)

    # phase 1: maximize -(sum of artificials); zval holds minus the objective value
    zrow = [zero] * width
    zval = [zero]
    for i in range(m):
        for k in range(n_real):
            zrow[k] += rows[i][k]
        zval[0] += rhs[i]
    threshold = tol * (1 + max((abs(b) for b in rhs), default=0)) if tol else 0
    tab.run(zrow, zval, n_real)
    if zval[0] > threshold:
        return LpOutcome(Status.INFEASIBLE)

    # drive artificials out of the basis; drop redundant rows
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= n_real:
            j = next((k for k in range(n_real) if abs(tab.rows[i][k]) > tol), None)
            if j is None:
                del tab.rows[i], tab.rhs[i], tab.basis[i]
                continue
            tab.pivot(i, j, zrow, zval)
        i += 1
    for i, row in enumerate(tab.rows):
        tab.rows[i] = row[:n_real]

    # phase 2
    cost = [zero] * n_real
    for j, c in enumerate(lp.objective):
        c = conv(c)
        for col, sign in cols[j]:
            cost[col] = c * sign
    zrow = list(cost)
    zval = [zero]
    for i, b in enumerate(tab.basis):
        cb = cost[b]
        if cb != 0:
            row = tab.rows[i]
            for k in range(n_real):
                zrow[k] -= cb * row[k]
            zval[0] -= cb * tab.rhs[i]
    if not tab.run(zrow, zval, n_real):
        return LpOutcome(Status.UNBOUNDED)

    values = [zero] * n_real
    for i, b in enumerate(tab.basis):
        values[b] = tab.rhs[i]
    x = tuple(sum((values[col] * sign for col, sign in cols[j]), zero) for j in range(lp.dim))
    value = sum((conv(c) * v for c, v in zip(lp.objective, x)), zero)
    if mode == FLOAT and max_residual(lp, x) > RESIDUAL_TOL:
        raise NumericalBreakdown("float simplex returned an infeasible point; retry in exact mode")
    return LpOutcome(Status.OPTIMAL, value, x)


def max_residual(lp: LinearProgram, x: Sequence) -> float:
    """Largest constraint violation of ``x``, computed by direct substitution."""
    worst = 0.0
    for j, v in enumerate(x):
        if j not in lp.free and v < 0:
            worst = max(worst, float(-v))
    for con in lp.constraints:
        lhs = sum(to_scalar(a, EXACT) * Fraction(v) for a, v in zip(con.coeffs, x))
        b = to_scalar(con.rhs, EXACT)
        if con.relation == LE:
            gap = lhs - b
        elif con.relation == GE:
            gap = b - lhs
        else:
            gap = abs(lhs - b)
        worst = max(worst, float(gap))
    return worst


def is_feasible_point(lp: LinearProgram, x: Sequence, tol: float = 0.0) -> bool:
    return max_residual(lp, x) <= tol
