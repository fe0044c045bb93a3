"""Executable axiom checks, counterexample variants and fixture generators.

Every check runs in exact arithmetic over a finite battery of prepared
instances. A failing check carries the offending instance, so the violation
can be replayed by re-evaluating it.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .context import (
    Context,
    Lottery,
    compose,
    diagonal_lottery,
    embed_lottery,
    make_context,
    permute_individuals,
    point,
    product_lottery,
    restrict_indices,
    self_compose,
    utility_profile,
)
from .errors import DegenerateDimension, InvalidFixture, PreconditionViolated, UnknownVariant
from .frontier import dominating_efficient_lottery, frontier_summary, ideal_point_profile, minimal_expectations_profile
from .inefficiency import ihat, normalized_profile
from .scalar import EXACT, FLOAT, FLOAT_TOL, ext_add, ext_div, ext_mul, ext_sub, ext_sum, is_infinite, one, zero


class Variant(enum.Enum):
    IHAT = "ihat"
    ZERO = "zero"
    WEIGHTED = "weighted"
    SQUARED = "squared"
    RADICAL = "radical"
    DIMENSION = "dimension"
    EXPONENTIAL = "exponential"
    SHIFTED = "shifted"

    @classmethod
    def parse(cls, text: str) -> "Variant":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise UnknownVariant(f"unknown variant {text!r}; choose from {[v.value for v in cls]}") from None


class Axiom(enum.Enum):
    PARETO_MONOTONICITY = "ParetoMonotonicity"
    ANONYMITY = "Anonymity"
    EXPECTED_INEFFICIENCY = "ExpectedInefficiency"
    IIA = "IIA"
    IIP = "IIP"
    POPULATION_SIZE_STABILITY = "PopulationSizeStability"
    FEASIBILITY = "Feasibility"


PASS = "Pass"
FAIL = "Fail"

#: the one axiom each counterexample variant is built to break
DESIGNATED_FAILURE = {
    Variant.ZERO: Axiom.PARETO_MONOTONICITY,
    Variant.WEIGHTED: Axiom.ANONYMITY,
    Variant.SQUARED: Axiom.EXPECTED_INEFFICIENCY,
    Variant.RADICAL: Axiom.IIA,
    Variant.DIMENSION: Axiom.IIP,
    Variant.EXPONENTIAL: Axiom.POPULATION_SIZE_STABILITY,
    Variant.SHIFTED: Axiom.FEASIBILITY,
}


def expected_row(variant: Variant) -> dict[Axiom, str]:
    bad = DESIGNATED_FAILURE.get(variant)
    return {ax: (FAIL if ax is bad else PASS) for ax in Axiom}


# ---------------------------------------------------------------------------
# variants


def rad(m: int) -> int:
    """Product of the distinct primes dividing ``m``."""
    if m < 1:
        raise ValueError(f"rad needs a positive integer, got {m}")
    out, p = 1, 2
    while p * p <= m:
        if m % p == 0:
            out *= p
            while m % p == 0:
                m //= p
        p += 1
    return out * m if m > 1 else out


def _tol(c: Context) -> float:
    return 0 if c.mode == EXACT else FLOAT_TOL


def _weights(n: int, mode: str) -> list:
    # 2^-i normalized by 1/(1 - 2^-n) so the weights sum to one
    if mode == EXACT:
        scale = 1 / (1 - Fraction(1, 2 ** n))
        return [Fraction(1, 2 ** (i + 1)) * scale for i in range(n)]
    scale = 1 / (1 - 2.0 ** -n)
    return [2.0 ** -(i + 1) * scale for i in range(n)]


def _weighted_value(c: Context, x: Lottery):
    return ext_sum(ext_mul(w, v) for w, v in zip(_weights(c.n, c.mode), normalized_profile(c, x)))


def _dimension_value(c: Context, x: Lottery):
    d = frontier_summary(c).frontier_dimension
    if d == 0:
        raise DegenerateDimension("frontier dimension is 0; the dimension-scaled variant is undefined")
    return ext_mul(one(c.mode) / d, ext_sum(normalized_profile(c, x)))


def _squared_value(c: Context, x: Lottery):
    s = frontier_summary(c)
    tol = _tol(c)
    terms = []
    for i, u in enumerate(utility_profile(c, x)):
        short = ext_div(s.u_max[i] - u, s.u_max[i] - s.u_min[i], tol)
        terms.append(ext_mul(short, short))
    return ext_mul(one(c.mode) / c.n, ext_sum(terms))


@lru_cache(maxsize=4096)
def _pure_extremum(kind: str, c: Context):
    fn = {"weighted": _weighted_value, "dimension": _dimension_value, "squared": _squared_value}[kind]
    values = [fn(c, point(c, a)) for a in range(c.m)]
    return min(values) if kind == "squared" else max(values)


def eval_variant(variant: Variant, c: Context, x: Lottery):
    """Evaluate one of the eight inefficiency functions at ``x``."""
    if variant is Variant.IHAT:
        return ihat(c, x).value
    if variant is Variant.ZERO:
        return zero(c.mode)
    if variant is Variant.WEIGHTED:
        return ext_sub(_pure_extremum("weighted", c), _weighted_value(c, x))
    if variant is Variant.SQUARED:
        return ext_sub(_squared_value(c, x), _pure_extremum("squared", c))
    if variant is Variant.DIMENSION:
        best = _pure_extremum("dimension", c)
        return ext_sub(best, _dimension_value(c, x))
    base = ihat(c, x).value
    if variant is Variant.RADICAL:
        return ext_mul(rad(c.m), base)
    if variant is Variant.EXPONENTIAL:
        return ext_mul(2 ** c.n, base)
    if variant is Variant.SHIFTED:
        return ext_add(one(c.mode), base)
    raise UnknownVariant(str(variant))


# ---------------------------------------------------------------------------
# instances


def _diff(a, b):
    """``a - b``, or None when both are infinite (the undefined case)."""
    if is_infinite(a) and is_infinite(b):
        return None
    return ext_sub(a, b)


@dataclass(frozen=True)
class Outcome:
    ok: bool
    values: dict
    vacuous: bool = False


@dataclass(frozen=True)
class ParetoInstance:
    """``x`` weakly Pareto-dominates ``y``."""

    context: Context
    x: Lottery
    y: Lottery

    def check(self, variant: Variant) -> Outcome:
        c = self.context
        ux, uy = utility_profile(c, self.x), utility_profile(c, self.y)
        if any(a < b for a, b in zip(ux, uy)):
            raise PreconditionViolated("x does not weakly dominate y")
        ix, iy = eval_variant(variant, c, self.x), eval_variant(variant, c, self.y)
        values = {"I(x)": ix, "I(y)": iy}
        if ix > iy:
            return Outcome(False, values)
        if ux == uy or ix < iy:
            return Outcome(True, values)
        if is_infinite(ix) and is_infinite(iy):
            w = dominating_efficient_lottery(c, self.x)
            iw = eval_variant(variant, c, w)
            values["I(w)"] = iw
            return Outcome(not is_infinite(iw), values)
        return Outcome(False, values)


@dataclass(frozen=True)
class AnonymityInstance:
    context: Context
    perm: tuple[int, ...]
    x: Lottery

    def check(self, variant: Variant) -> Outcome:
        lhs = eval_variant(variant, permute_individuals(self.context, self.perm), self.x)
        rhs = eval_variant(variant, self.context, self.x)
        return Outcome(lhs == rhs, {"I(C_pi,x)": lhs, "I(C,x)": rhs})


@dataclass(frozen=True)
class ExpectedInstance:
    context: Context
    x: Lottery
    y: Lottery
    alpha: Fraction

    def check(self, variant: Variant) -> Outcome:
        c, a = self.context, self.alpha
        lhs = eval_variant(variant, c, self.x.mix(a, self.y))
        rhs = ext_add(ext_mul(a, eval_variant(variant, c, self.x)), ext_mul(1 - a, eval_variant(variant, c, self.y)))
        return Outcome(lhs == rhs, {"I(mix)": lhs, "mix of I": rhs})


@dataclass(frozen=True)
class IIAInstance:
    """``context`` restricted to ``keep``; lotteries live on the restriction."""

    context: Context
    keep: tuple[int, ...]
    x: Lottery
    y: Lottery

    @property
    def restricted(self) -> Context:
        return restrict_indices(self.context, self.keep)

    def check(self, variant: Variant) -> Outcome:
        c, sub = self.context, self.restricted
        if ideal_point_profile(c) != ideal_point_profile(sub):
            raise PreconditionViolated("restriction changes the ideal point")
        if minimal_expectations_profile(c) != minimal_expectations_profile(sub):
            raise PreconditionViolated("restriction changes the point of minimal expectations")
        bx, by = embed_lottery(c, sub, self.x), embed_lottery(c, sub, self.y)
        lhs = _diff(eval_variant(variant, sub, self.x), eval_variant(variant, sub, self.y))
        rhs = _diff(eval_variant(variant, c, bx), eval_variant(variant, c, by))
        values = {"restricted diff": lhs, "full diff": rhs}
        if lhs is None or rhs is None:
            return Outcome(True, values, vacuous=True)
        return Outcome(lhs == rhs, values)


@dataclass(frozen=True)
class IIPInstance:
    base: Context
    other: Context
    other_alt: Context
    x: Lottery
    x_alt: Lottery
    y: Lottery

    def check(self, variant: Variant) -> Outcome:
        if (self.other.m, self.other.n) != (self.other_alt.m, self.other_alt.n):
            raise PreconditionViolated("the two second factors must share alternatives and population size")
        sides = []
        for d in (self.other, self.other_alt):
            cd = compose(self.base, d)
            a = eval_variant(variant, cd, product_lottery([self.x, self.y], cd))
            b = eval_variant(variant, cd, product_lottery([self.x_alt, self.y], cd))
            sides.append(_diff(a, b))
        values = {"diff with D": sides[0], "diff with D'": sides[1]}
        if None in sides:
            return Outcome(True, values, vacuous=True)
        return Outcome(sides[0] == sides[1], values)


@dataclass(frozen=True)
class PopulationInstance:
    context: Context
    k: int
    x: Lottery
    x_alt: Lottery

    def check(self, variant: Variant) -> Outcome:
        big = self_compose(self.context, self.k)
        lhs = _diff(
            eval_variant(variant, big, diagonal_lottery(self.x, self.k)),
            eval_variant(variant, big, diagonal_lottery(self.x_alt, self.k)),
        )
        rhs = _diff(eval_variant(variant, self.context, self.x), eval_variant(variant, self.context, self.x_alt))
        values = {"composed diff": lhs, "base diff": rhs}
        if lhs is None or rhs is None:
            return Outcome(True, values, vacuous=True)
        return Outcome(lhs == rhs, values)


@dataclass(frozen=True)
class FeasibilityInstance:
    context: Context

    def check(self, variant: Variant) -> Outcome:
        # every variant's defining extremum is attained at a pure alternative
        c = self.context
        best = min(eval_variant(variant, c, point(c, a)) for a in range(c.m))
        return Outcome(best == 0, {"min over pure": best})


@dataclass(frozen=True)
class Violation:
    axiom: Axiom
    variant: Variant
    instance: object
    values: dict


@dataclass(frozen=True)
class AxiomReport:
    axiom: Axiom
    variant: Variant
    verdict: str
    counterexample: Violation | None = None
    checked: int = 0
    skipped: int = 0


def replay(report: AxiomReport) -> bool:
    """Re-evaluate a failing report's payload; True iff the violation reproduces."""
    if report.counterexample is None:
        return False
    v = report.counterexample
    return not v.instance.check(v.variant).ok


# ---------------------------------------------------------------------------
# fixtures


def make_chat(n: int, group: Sequence[int]) -> Context:
    """Indicator context on alternatives ``group + {0}``.

    Individual ``i`` (counted from 1) gets utility 1 at alternative ``i`` and 0
    elsewhere, so exactly the members of ``group`` are frontier-concerned.
    """
    group = sorted(set(group))
    if len(group) == 1:
        raise InvalidFixture("the indicator fixture excludes groups of size 1")
    if n < 1 or any(not 1 <= g <= n for g in group):
        raise InvalidFixture(f"group {group} must be a subset of 1..{n}")
    alts = [0] + group
    rows = [[1 if a == i else 0 for a in alts] for i in range(1, n + 1)]
    return make_context([str(a) for a in alts], rows)


def arrow_context() -> Context:
    """Three voters, where z is the worst alternative for everyone."""
    return make_context(["x", "y", "z"], [[1, "9/10", 0], [1, "9/10", 0], ["1/2", 1, 0]])


def random_context(n: int, m: int, seed: int, mode: str = EXACT, max_denominator: int = 1000) -> Context:
    """Utilities in [0, 1]; exact mode draws rationals with bounded denominators."""
    rng = random.Random(seed)
    rows = []
    for _ in range(n):
        if mode == EXACT:
            row = []
            for _ in range(m):
                den = rng.randint(1, max_denominator)
                row.append(Fraction(rng.randint(0, den), den))
        else:
            row = [rng.random() for _ in range(m)]
        rows.append(row)
    return make_context([f"a{k}" for k in range(m)], rows, mode)


def random_lottery(m: int, rng: random.Random, mode: str = EXACT, max_weight: int = 6) -> Lottery:
    size = rng.randint(1, m)
    support = rng.sample(range(m), size)
    raw = [rng.randint(1, max_weight) for _ in support]
    total = sum(raw)
    if mode == EXACT:
        weights = {a: Fraction(r, total) for a, r in zip(support, raw)}
    else:
        weights = {a: r / total for a, r in zip(support, raw)}
    return Lottery.from_mapping(m, weights, mode)


# ---------------------------------------------------------------------------
# battery


@dataclass
class Battery:
    contexts: list[Context] = field(default_factory=list)
    pareto: list[ParetoInstance] = field(default_factory=list)
    anonymity: list[AnonymityInstance] = field(default_factory=list)
    expected: list[ExpectedInstance] = field(default_factory=list)
    iia: list[IIAInstance] = field(default_factory=list)
    iip: list[IIPInstance] = field(default_factory=list)
    population: list[PopulationInstance] = field(default_factory=list)
    feasibility: list[FeasibilityInstance] = field(default_factory=list)

    def instances(self, axiom: Axiom) -> list:
        return {
            Axiom.PARETO_MONOTONICITY: self.pareto,
            Axiom.ANONYMITY: self.anonymity,
            Axiom.EXPECTED_INEFFICIENCY: self.expected,
            Axiom.IIA: self.iia,
            Axiom.IIP: self.iip,
            Axiom.POPULATION_SIZE_STABILITY: self.population,
            Axiom.FEASIBILITY: self.feasibility,
        }[axiom]

    def lotteries(self):
        """Every (context, lottery) pair evaluated by the within-context checks."""
        for inst in self.pareto:
            yield inst.context, inst.x
            yield inst.context, inst.y
        for inst in self.expected:
            yield inst.context, inst.x.mix(inst.alpha, inst.y)


def _opposed_context() -> Context:
    # two individuals with opposite rankings over two objects; M1 gives both their favorite
    return make_context(["M1", "M2"], [[1, 0], [1, 0]])


def _chain_context() -> Context:
    # frontier is the single alternative a; b and c are both infinitely inefficient
    return make_context(["a", "b", "c"], [[1, 1, 0], [1, "1/2", 0]])


def _sample_lotteries(c: Context, rng: random.Random, extra: int) -> list[Lottery]:
    out = [point(c, a) for a in range(c.m)]
    out += [random_lottery(c.m, rng) for _ in range(extra)]
    return out


def _extend_context(base: Context, rng: random.Random, dominated: bool) -> Context:
    """Add one alternative to ``base``: a dominated one, or one inside the frontier box."""
    s = frontier_summary(base)
    if dominated:
        lam = random_lottery(base.m, rng)
        col = [u - Fraction(rng.randint(0, 3), 10) for u in utility_profile(base, lam)]
    else:
        col = [lo + (hi - lo) * Fraction(rng.randint(1, 9), 10) for lo, hi in zip(s.u_min, s.u_max)]
    rows = [list(r) + [v] for r, v in zip(base.utilities, col)]
    return make_context(list(base.names) + ["new"], rows)


def _same_reference_points(big: Context, keep: Sequence[int]) -> bool:
    sub = restrict_indices(big, keep)
    return ideal_point_profile(big) == ideal_point_profile(sub) and minimal_expectations_profile(
        big
    ) == minimal_expectations_profile(sub)


def default_battery(seed: int = 0) -> Battery:
    """Deterministic battery of exact-mode instances for every axiom."""
    rng = random.Random(seed)
    arrow = arrow_context()
    chat2 = make_chat(2, [1, 2])
    named = [
        arrow,
        chat2,
        make_chat(3, [1, 2, 3]),
        make_chat(3, [1, 2]),
        make_chat(3, []),
        _opposed_context(),
        _chain_context(),
    ]
    shapes = [(1, 1), (1, 3), (2, 2), (2, 3), (2, 4), (3, 3), (3, 4)]
    randoms = [random_context(n, m, rng.randrange(10**9)) for n, m in shapes]
    coarse = [random_context(n, m, rng.randrange(10**9), max_denominator=2) for n, m in [(2, 3), (3, 3), (3, 4), (2, 4)]]
    contexts = named + randoms + coarse
    b = Battery(contexts=contexts)

    samples = {c: _sample_lotteries(c, rng, 3) for c in contexts}

    for c in contexts:
        for y in samples[c]:
            x = dominating_efficient_lottery(c, y)
            mid = x.mix(Fraction(1, 2), y)
            b.pareto += [ParetoInstance(c, x, y), ParetoInstance(c, mid, y), ParetoInstance(c, x, mid), ParetoInstance(c, y, y)]
    b.pareto.append(ParetoInstance(chat2, Lottery.uniform(3, [1, 2]), point(chat2, 0)))
    b.pareto.append(ParetoInstance(named[-1], point(named[-1], 1), point(named[-1], 2)))

    for c in contexts:
        perms = list(itertools.permutations(range(c.n)))
        for pi in perms:
            for x in samples[c][: c.m + 1]:
                b.anonymity.append(AnonymityInstance(c, pi, x))

    alphas = [Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1)]
    for c in contexts:
        lot = samples[c]
        pairs = [(lot[i], lot[j]) for i in range(len(lot)) for j in range(i + 1, len(lot))]
        rng.shuffle(pairs)
        for x, y in pairs[:4]:
            for a in alphas:
                b.expected.append(ExpectedInstance(c, x, y, a))
    b.expected.append(ExpectedInstance(chat2, point(chat2, 1), point(chat2, 2), Fraction(1, 2)))

    # IIA: restrict away a dominated alternative, or one inside the frontier box
    iia_cases = [(arrow, (0, 1)), (chat2, (1, 2)), (named[-1], (0, 1))]
    for base in [random_context(n, m, rng.randrange(10**9)) for n, m in [(2, 2), (2, 3), (3, 3), (3, 2)]] + [chat2, make_chat(3, [1, 2])]:
        for dominated in (True, False):
            big = _extend_context(base, rng, dominated)
            keep = tuple(range(base.m))
            if _same_reference_points(big, keep):
                iia_cases.append((big, keep))
    for big, keep in iia_cases:
        sub = restrict_indices(big, keep)
        lot = _sample_lotteries(sub, rng, 2)
        for x, y in itertools.combinations(lot, 2):
            b.iia.append(IIAInstance(big, keep, x, y))

    zeros = make_context(chat2.names, [[0, 0, 0], [0, 0, 0]])
    seconds = [
        (chat2, zeros),
        (random_context(1, 2, rng.randrange(10**9)), random_context(1, 2, rng.randrange(10**9))),
        (random_context(2, 2, rng.randrange(10**9)), random_context(2, 2, rng.randrange(10**9), max_denominator=2)),
        (_opposed_context(), make_context(["M1", "M2"], [[0, 1], [1, 0]])),
    ]
    firsts = [arrow, chat2, random_context(1, 2, rng.randrange(10**9)), random_context(2, 2, rng.randrange(10**9)), _chain_context()]
    for c in firsts:
        for d, d_alt in seconds:
            lc, ld = _sample_lotteries(c, rng, 1), _sample_lotteries(d, rng, 1)
            for _ in range(3):
                x, x_alt = rng.sample(lc, 2)
                b.iip.append(IIPInstance(c, d, d_alt, x, x_alt, rng.choice(ld)))

    for c, ks in [(arrow, (1, 2, 3)), (chat2, (1, 2, 3)), (random_context(2, 2, rng.randrange(10**9)), (1, 2, 3)), (_opposed_context(), (1, 2, 3)), (_chain_context(), (1, 2))]:
        lot = _sample_lotteries(c, rng, 1)
        for k in ks:
            for x, x_alt in itertools.combinations(lot, 2):
                b.population.append(PopulationInstance(c, k, x, x_alt))

    feas = list(contexts) + [compose(arrow, chat2), self_compose(chat2, 2), compose(_chain_context(), zeros)]
    b.feasibility = [FeasibilityInstance(c) for c in feas]
    return b


def check_axiom(variant: Variant, axiom: Axiom, battery: Battery) -> AxiomReport:
    """Pass iff every applicable instance satisfies the axiom exactly."""
    checked = skipped = 0
    for inst in battery.instances(axiom):
        try:
            out = inst.check(variant)
        except DegenerateDimension:
            skipped += 1
            continue
        if out.vacuous:
            skipped += 1
            continue
        checked += 1
        if not out.ok:
            return AxiomReport(axiom, variant, FAIL, Violation(axiom, variant, inst, out.values), checked, skipped)
    return AxiomReport(axiom, variant, PASS, None, checked, skipped)


def independence_row(variant: Variant, battery: Battery) -> dict[Axiom, AxiomReport]:
    return {ax: check_axiom(variant, ax, battery) for ax in Axiom}


def independence_matrix(battery: Battery) -> dict[Variant, dict[Axiom, AxiomReport]]:
    return {v: independence_row(v, battery) for v in Variant}


def nonnegativity_violations(variant: Variant, battery: Battery) -> list[tuple[Context, Lottery, object]]:
    """Lotteries in the battery where the variant goes negative."""
    seen, out = set(), []
    for c, x in battery.lotteries():
        if (c, x) in seen:
            continue
        seen.add((c, x))
        try:
            v = eval_variant(variant, c, x)
        except DegenerateDimension:
            continue
        if v < 0:
            out.append((c, x, v))
    return out
