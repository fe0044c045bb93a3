"""Reproduction harness for the RSD inefficiency bounds, with CSV output."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, TextIO

import numpy as np

from .errors import BoundViolation, InputError
from .matching import (
    AllocationProblem,
    allocation_inefficiency,
    assignment_inefficiency,
    lower_bound_instance,
    max_value_matching,
    matching_value,
    normalized_weights,
    rsd_assignment_matrix,
    rsd_exact,
    rsd_sample_counts,
    uniform_instance,
    ur_eps_instance,
)
from .scalar import ExtendedScalar, format_scalar, is_infinite, to_scalar

EXACT_KIND = "exact"
MC_KIND = "monte_carlo"
CSV_COLUMNS = ("n", "eps", "trials", "seed", "kind", "value", "se")

LN2 = math.log(2)
#: rational just below ln 2 (ln 2 = 0.69314718055994530941...), so
#: ``value <= LN2_LOWER`` certifies ``value <= ln 2`` for exact values
LN2_LOWER = Fraction(6931471805599453, 10**16)
OPTIMALITY_RATIO = 1 / (2 * LN2)

FAMILIES = ("ur-eps", "uniform", "both")


@dataclass(frozen=True)
class SweepRow:
    n: int
    eps: Fraction
    trials: int
    seed: int
    value: ExtendedScalar
    kind: str = EXACT_KIND
    se: float | None = None
    #: how many instances the row's value is the maximum over
    instances: int = 1

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("measured inefficiency is never negative")
        if self.kind == EXACT_KIND and self.se is not None:
            raise ValueError("exact rows carry no standard error")

    def csv_fields(self) -> list[str]:
        se = "" if self.se is None else repr(self.se)
        return [str(self.n), format_scalar(self.eps), str(self.trials), str(self.seed), self.kind, format_scalar(self.value), se]


def _exact_value_ok(value) -> bool:
    return not is_infinite(value) and value <= LN2_LOWER


def lower_bound_curve(ns: Sequence[int], eps) -> list[SweepRow]:
    """Exact inefficiency of RSD on the common-ranking lower-bound family, per n."""
    e = to_scalar(eps)
    rows = []
    for n in ns:
        p = lower_bound_instance(n, e)
        value = allocation_inefficiency(p, rsd_exact(p))
        rows.append(SweepRow(n, e, math.factorial(n), 0, value))
    return rows


def instance_seed(seed: int, n: int, k: int) -> int:
    """Independent per-instance seed derived from (seed, n, instance index)."""
    return int(np.random.SeedSequence([seed, n, k]).generate_state(1)[0])


def generate_instances(n: int, eps, count: int, seed: int, family: str = "both") -> Iterator[tuple[int, AllocationProblem]]:
    """``count`` seeded instances of size ``n``; "both" alternates ur-eps and uniform.

    ur-eps instances need n >= 2, so n = 1 falls back to the uniform family.
    """
    if family not in FAMILIES:
        raise InputError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    for k in range(count):
        s = instance_seed(seed, n, k)
        use_ur = n >= 2 and (family == "ur-eps" or (family == "both" and k % 2 == 0))
        yield s, (ur_eps_instance(n, eps, s) if use_ur else uniform_instance(n, s))


def monte_carlo_estimate(p: AllocationProblem, trials: int, seed: int) -> tuple[float, float]:
    """Sample mean and standard error of the per-trial inefficiency of RSD."""
    counts = rsd_sample_counts(p, trials, seed)
    weights = normalized_weights(p)
    _, v_max = max_value_matching(p, weights)
    losses = {m: v_max - matching_value(p, m, weights) for m in counts}
    assert not any(is_infinite(v) for v in losses.values()), "RSD outputs ex-post efficient matchings"
    mean = sum(c * losses[m] for m, c in counts.items()) / trials
    if trials < 2:
        return float(mean), 0.0
    var = sum(c * (losses[m] - mean) ** 2 for m, c in counts.items()) / (trials - 1)
    return float(mean), math.sqrt(var / trials)


def exact_rsd_inefficiency(p: AllocationProblem) -> ExtendedScalar:
    return assignment_inefficiency(p, rsd_assignment_matrix(p))


def upper_bound_sweep(
    ns: Sequence[int],
    eps,
    trials: int,
    seed: int,
    *,
    instances: int = 10,
    exact: bool = False,
    family: str = "both",
) -> list[SweepRow]:
    """Worst measured inefficiency of RSD per n, each instance checked against ln 2.

    Exact rows use the order-counting dynamic program; Monte Carlo rows use
    ``trials`` seeded orders per instance and must stay within ln 2 + 3 SE.
    Raises BoundViolation on the first instance over the bound.
    """
    if trials < 1:
        raise InputError("trials must be at least 1")
    e = to_scalar(eps)
    rows = []
    for n in sorted(ns):
        worst = None
        for s, p in generate_instances(n, e, instances, seed, family):
            if exact:
                value, se = exact_rsd_inefficiency(p), None
                ok = _exact_value_ok(value)
            else:
                value, se = monte_carlo_estimate(p, trials, s)
                ok = value <= LN2 + 3 * se
            if not ok:
                raise BoundViolation(f"RSD inefficiency {format_scalar(value)} exceeds ln 2 at n={n}, instance seed {s}")
            if worst is None or value > worst[0]:
                worst = (value, se)
        if worst is not None:
            kind = EXACT_KIND if exact else MC_KIND
            rows.append(SweepRow(n, e, math.factorial(n) if exact else trials, seed, worst[0], kind, worst[1], instances))
    return rows


@dataclass
class OptimalityReport:
    lower_rows: list[SweepRow] = field(default_factory=list)
    upper_rows: list[SweepRow] = field(default_factory=list)

    @property
    def ln2(self) -> float:
        return LN2

    @property
    def ratio(self) -> float:
        return OPTIMALITY_RATIO

    @property
    def max_measured(self) -> ExtendedScalar | None:
        values = [r.value for r in self.lower_rows + self.upper_rows]
        return max(values) if values else None

    def render(self) -> str:
        lines = [f"ln 2 ceiling: {LN2:.6f}", f"1/(2 ln 2): {OPTIMALITY_RATIO:.6f}"]
        if self.lower_rows:
            lines.append("lower-bound family:")
            lines += [f"  n={r.n} value={format_scalar(r.value)} ({float(r.value):.6f})" for r in self.lower_rows]
        if self.upper_rows:
            lines.append("upper-bound sweep:")
            lines += [f"  n={r.n} kind={r.kind} worst={float(r.value):.6f}" for r in self.upper_rows]
        best = self.max_measured
        lines.append("max measured: " + ("none" if best is None else f"{float(best):.6f}"))
        return "\n".join(lines) + "\n"


def optimality_report(ns: Sequence[int], eps, trials: int, seed: int, *, instances: int = 10, exact: bool = True) -> OptimalityReport:
    """Descriptive summary: measured values next to ln 2 and 1/(2 ln 2)."""
    e = to_scalar(eps)
    lower_ns = [n for n in ns if n <= 8 and e < Fraction(1, n)]
    return OptimalityReport(
        lower_bound_curve(lower_ns, e),
        upper_bound_sweep(ns, e, trials, seed, instances=instances, exact=exact),
    )


def write_csv(rows: Iterable[SweepRow], out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in sorted(rows, key=lambda r: (r.n, r.eps)):
        writer.writerow(r.csv_fields())


def rows_to_csv(rows: Iterable[SweepRow]) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()
