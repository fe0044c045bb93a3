"""Contexts, lotteries and the structural operators on them.

A context is a finite list of named alternatives together with one vNM utility
row per individual. Alternatives are addressed by index; names only matter for
input and output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    DuplicateName,
    EmptyAlternatives,
    EmptySubset,
    FactorMismatch,
    IndexOutOfRange,
    InvalidLottery,
    MissingName,
    ModeMismatch,
    NotAPermutation,
    NotInjective,
    RaggedMatrix,
    SizeLimitExceeded,
    UnknownAlternative,
)
from .scalar import EXACT, LOTTERY_SUM_TOL, Scalar, check_mode, one, to_scalar, zero

#: default cap on the number of alternatives a composition may produce
DEFAULT_CAP = 4096
PAIR_SEP = "⊗"


@dataclass(frozen=True)
class Context:
    names: tuple[str, ...]
    utilities: tuple[tuple[Scalar, ...], ...]
    mode: str = EXACT

    @property
    def n(self) -> int:
        """Number of individuals."""
        return len(self.utilities)

    @property
    def m(self) -> int:
        """Number of alternatives."""
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._positions[name]
        except KeyError:
            raise UnknownAlternative(f"unknown alternative {name!r}") from None

    def column(self, a: int) -> tuple[Scalar, ...]:
        return tuple(row[a] for row in self.utilities)

    @cached_property
    def _positions(self) -> dict[str, int]:
        return {name: k for k, name in enumerate(self.names)}

    @cached_property
    def _hash(self) -> int:
        return hash((self.names, self.utilities, self.mode))

    def __hash__(self) -> int:
        return self._hash


@dataclass(frozen=True)
class Lottery:
    """Probability weights over the alternatives of a context, stored densely."""

    weights: tuple[Scalar, ...]
    mode: str = EXACT

    def __post_init__(self):
        check_mode(self.mode)
        if not self.weights:
            raise InvalidLottery("a lottery needs at least one alternative")
        if any(w < 0 for w in self.weights):
            raise InvalidLottery("lottery weights must be nonnegative")
        total = sum(self.weights)
        if self.mode == EXACT:
            if total != 1:
                raise InvalidLottery(f"lottery weights sum to {total}, not 1")
        elif abs(total - 1.0) > LOTTERY_SUM_TOL:
            raise InvalidLottery(f"lottery weights sum to {total!r}, not 1")

    @classmethod
    def point(cls, m: int, a: int, mode: str = EXACT) -> "Lottery":
        if not 0 <= a < m:
            raise IndexOutOfRange(f"alternative {a} out of range for {m} alternatives")
        w = [zero(mode)] * m
        w[a] = one(mode)
        return cls(tuple(w), mode)

    @classmethod
    def from_mapping(cls, m: int, weights: Mapping[int, object], mode: str = EXACT) -> "Lottery":
        w = [zero(mode)] * m
        for a, p in weights.items():
            if not 0 <= a < m:
                raise IndexOutOfRange(f"alternative {a} out of range for {m} alternatives")
            w[a] = w[a] + to_scalar(p, mode)
        return cls(tuple(w), mode)

    @classmethod
    def uniform(cls, m: int, support: Iterable[int] | None = None, mode: str = EXACT) -> "Lottery":
        support = list(range(m)) if support is None else list(support)
        p = one(mode) / len(support)
        return cls.from_mapping(m, {a: p for a in support}, mode)

    @property
    def size(self) -> int:
        return len(self.weights)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(a for a, w in enumerate(self.weights) if w != 0)

    def as_dict(self) -> dict[int, Scalar]:
        return {a: w for a, w in enumerate(self.weights) if w != 0}

    def mix(self, alpha, other: "Lottery") -> "Lottery":
        """Return ``alpha * self + (1 - alpha) * other``."""
        if other.size != self.size:
            raise InvalidLottery("cannot mix lotteries over different alternative sets")
        if other.mode != self.mode:
            raise ModeMismatch("cannot mix lotteries of different modes")
        alpha = to_scalar(alpha, self.mode)
        if not 0 <= alpha <= 1:
            raise InvalidLottery(f"mixing weight {alpha} outside [0, 1]")
        beta = 1 - alpha
        return Lottery(tuple(alpha * p + beta * q for p, q in zip(self.weights, other.weights)), self.mode)


def make_context(names: Sequence[str], utilities: Sequence[Sequence[object]], mode: str = EXACT) -> Context:
    """Validate and build a context; row ``i`` of ``utilities`` is individual ``i``."""
    check_mode(mode)
    names = tuple(str(x) for x in names)
    if not names:
        raise EmptyAlternatives("a context needs at least one alternative")
    if len(set(names)) != len(names):
        dupes = sorted({x for x in names if names.count(x) > 1})
        raise DuplicateName(f"duplicate alternative names: {dupes}")
    rows = [list(r) for r in utilities]
    if not rows:
        raise RaggedMatrix("a context needs at least one individual")
    for i, r in enumerate(rows):
        if len(r) != len(names):
            raise RaggedMatrix(f"row {i} has {len(r)} entries, expected {len(names)}")
    matrix = tuple(tuple(to_scalar(v, mode) for v in r) for r in rows)
    return Context(names, matrix, mode)


def check_lottery(c: Context, x: Lottery) -> None:
    if x.size != c.m:
        raise InvalidLottery(f"lottery over {x.size} alternatives used with a {c.m}-alternative context")
    if x.mode != c.mode:
        raise ModeMismatch(f"{x.mode} lottery used with a {c.mode} context")


def point(c: Context, a: int | str) -> Lottery:
    """Degenerate lottery on alternative ``a`` (index or name)."""
    if isinstance(a, str):
        a = c.index(a)
    return Lottery.point(c.m, a, c.mode)


def lottery_from_names(c: Context, weights: Mapping[str, object]) -> Lottery:
    return Lottery.from_mapping(c.m, {c.index(k): v for k, v in weights.items()}, c.mode)


def expected_utility(c: Context, i: int, x: Lottery) -> Scalar:
    if not 0 <= i < c.n:
        raise IndexOutOfRange(f"individual {i} out of range for {c.n} individuals")
    check_lottery(c, x)
    row = c.utilities[i]
    return sum((w * row[a] for a, w in enumerate(x.weights) if w != 0), zero(c.mode))


def utility_profile(c: Context, x: Lottery) -> tuple[Scalar, ...]:
    """Expected utility of ``x`` for every individual."""
    check_lottery(c, x)
    support = [(a, w) for a, w in enumerate(x.weights) if w != 0]
    z = zero(c.mode)
    return tuple(sum((w * row[a] for a, w in support), z) for row in c.utilities)


def compose(c1: Context, c2: Context, cap: int = DEFAULT_CAP) -> Context:
    """Side-by-side composition: alternatives are pairs, populations are disjoint.

    Alternative ``(a1, a2)`` sits at index ``a1 * c2.m + a2``.
    """
    if c1.mode != c2.mode:
        raise ModeMismatch("cannot compose contexts of different modes")
    size = c1.m * c2.m
    if size > cap:
        raise SizeLimitExceeded(f"composition has {size} alternatives, cap is {cap}")
    names = tuple(f"{a}{PAIR_SEP}{b}" for a in c1.names for b in c2.names)
    if len(set(names)) != size:
        raise DuplicateName("composed alternative names collide; rename alternatives first")
    rows = [tuple(r[a] for a in range(c1.m) for _ in range(c2.m)) for r in c1.utilities]
    rows += [tuple(r[b] for _ in range(c1.m) for b in range(c2.m)) for r in c2.utilities]
    return Context(names, tuple(rows), c1.mode)


def self_compose(c: Context, k: int, cap: int = DEFAULT_CAP) -> Context:
    """Left-associated ``k``-fold composition of ``c`` with itself."""
    if k < 1:
        raise InvalidLottery(f"self-composition needs k >= 1, got {k}")
    if c.m ** k > cap:
        raise SizeLimitExceeded(f"{k}-fold composition has {c.m ** k} alternatives, cap is {cap}")
    out = c
    for _ in range(k - 1):
        out = compose(out, c, cap)
    return out


def product_lottery(parts: Sequence[Lottery], c: Context | None = None) -> Lottery:
    """Independent product of factor lotteries, indexed like a left-associated composition."""
    if not parts:
        raise FactorMismatch("product of zero lotteries")
    mode = parts[0].mode
    if any(p.mode != mode for p in parts):
        raise FactorMismatch("factor lotteries have different modes")
    size = math.prod(p.size for p in parts)
    if c is not None and (c.m != size or c.mode != mode):
        raise FactorMismatch(f"factors span {size} alternatives but the context has {c.m}")
    weights = (one(mode),)
    for p in parts:
        weights = tuple(w * q for w in weights for q in p.weights)
    return Lottery(weights, mode)


def diagonal_lottery(x: Lottery, k: int, *, correlated: bool = False) -> Lottery:
    """The lottery ``(x, ..., x)`` on a ``k``-fold self-composition.

    By default this is the independent product. With ``correlated`` all factors
    share a single draw, so only the diagonal pairs ``(a, ..., a)`` get weight.
    Each individual only sees her own factor's marginal, which is ``x`` either way.
    """
    if not correlated:
        return product_lottery([x] * k)
    m = x.size
    w = [zero(x.mode)] * (m ** k)
    for a, p in enumerate(x.weights):
        idx = sum(a * m ** j for j in range(k))
        w[idx] = p
    return Lottery(tuple(w), x.mode)


def permute_individuals(c: Context, pi: Sequence[int]) -> Context:
    """Row ``i`` of the result is row ``pi[i]`` of ``c``."""
    pi = list(pi)
    if sorted(pi) != list(range(c.n)):
        raise NotAPermutation(f"{pi} is not a permutation of 0..{c.n - 1}")
    return Context(c.names, tuple(c.utilities[p] for p in pi), c.mode)


def restrict_indices(c: Context, keep: Iterable[int]) -> Context:
    keep = sorted(set(keep))
    if not keep:
        raise EmptySubset("cannot restrict a context to no alternatives")
    if keep[0] < 0 or keep[-1] >= c.m:
        raise IndexOutOfRange("alternative index out of range")
    return Context(tuple(c.names[a] for a in keep), tuple(tuple(r[a] for a in keep) for r in c.utilities), c.mode)


def restrict(c: Context, keep: Iterable[str]) -> Context:
    """Keep only the named alternatives, in their original order."""
    return restrict_indices(c, [c.index(name) for name in keep])


def embed_lottery(c: Context, sub: Context, x: Lottery) -> Lottery:
    """Map a lottery over a restriction ``sub`` of ``c`` back onto ``c``."""
    check_lottery(sub, x)
    w = [zero(c.mode)] * c.m
    for a, p in enumerate(x.weights):
        w[c.index(sub.names[a])] = p
    return Lottery(tuple(w), c.mode)


def rename_alternatives(c: Context, mapping: Mapping[str, str]) -> Context:
    missing = [x for x in c.names if x not in mapping]
    if missing:
        raise MissingName(f"no new name given for {missing}")
    new = tuple(str(mapping[x]) for x in c.names)
    if len(set(new)) != len(new):
        raise NotInjective("renaming maps two alternatives to the same name")
    return Context(new, c.utilities, c.mode)


def to_float(c: Context) -> Context:
    """Explicit exact-to-float conversion."""
    return Context(c.names, tuple(tuple(float(v) for v in r) for r in c.utilities), "float")


def lottery_to_float(x: Lottery) -> Lottery:
    return Lottery(tuple(float(w) for w in x.weights), "float")
