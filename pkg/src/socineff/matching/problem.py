"""Object allocation problems: n individuals, n objects, strict preferences."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from ..context import Context
from ..errors import DuplicateName, GuardrailExceeded, InvalidLottery, NotAPermutation, RaggedMatrix, TiedPreferences
from ..scalar import EXACT, Scalar, check_mode, to_scalar

INDUCED_CONTEXT_MAX_N = 7

#: ``matching[i]`` is the object assigned to individual ``i``
Matching = tuple[int, ...]


@dataclass(frozen=True)
class AllocationProblem:
    objects: tuple[str, ...]
    utilities: tuple[tuple[Scalar, ...], ...]
    mode: str = EXACT

    @property
    def n(self) -> int:
        return len(self.objects)

    @cached_property
    def rankings(self) -> tuple[tuple[int, ...], ...]:
        """Objects in decreasing order of preference, per individual."""
        return tuple(tuple(sorted(range(self.n), key=lambda o: row[o], reverse=True)) for row in self.utilities)

    @cached_property
    def rank(self) -> tuple[tuple[int, ...], ...]:
        """``rank[i][o]`` is the position of ``o`` in ``i``'s ranking (0 = favorite)."""
        out = []
        for order in self.rankings:
            pos = [0] * self.n
            for k, o in enumerate(order):
                pos[o] = k
            out.append(tuple(pos))
        return tuple(out)

    def prefers(self, i: int, o1: int, o2: int) -> bool:
        return self.utilities[i][o1] > self.utilities[i][o2]

    def favorite(self, i: int) -> int:
        return self.rankings[i][0]

    def object_index(self, name: str) -> int:
        return self.objects.index(name)


def make_problem(objects: Sequence[str], utilities: Sequence[Sequence[object]], mode: str = EXACT) -> AllocationProblem:
    """Validate a square utility matrix with strict preferences in every row."""
    check_mode(mode)
    objects = tuple(str(o) for o in objects)
    n = len(objects)
    if n == 0:
        raise RaggedMatrix("an allocation problem needs at least one object")
    if len(set(objects)) != n:
        raise DuplicateName("object names must be distinct")
    rows = [list(r) for r in utilities]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise RaggedMatrix(f"utilities must be a {n}x{n} matrix")
    matrix = tuple(tuple(to_scalar(v, mode) for v in r) for r in rows)
    for i, row in enumerate(matrix):
        if len(set(row)) != n:
            raise TiedPreferences(f"individual {i} has tied utilities; preferences must be strict")
    return AllocationProblem(objects, matrix, mode)


def from_rankings(rankings: Sequence[Sequence[int]], objects: Sequence[str] | None = None) -> AllocationProblem:
    """Problem whose utilities are Borda-style scores of the given rankings (best first)."""
    n = len(rankings)
    objects = objects or default_object_names(n)
    rows = []
    for order in rankings:
        if sorted(order) != list(range(n)):
            raise NotAPermutation(f"{list(order)} is not a ranking of {n} objects")
        row = [0] * n
        for k, o in enumerate(order):
            row[o] = n - 1 - k
        rows.append(row)
    return make_problem(objects, rows)


def default_object_names(n: int) -> list[str]:
    if n <= 26:
        return [chr(ord("a") + k) for k in range(n)]
    return [f"o{k + 1}" for k in range(n)]


def check_matching(p: AllocationProblem, m: Sequence[int]) -> Matching:
    m = tuple(m)
    if sorted(m) != list(range(p.n)):
        raise NotAPermutation(f"{list(m)} is not a perfect matching of {p.n} objects")
    return m


def all_matchings(n: int) -> list[Matching]:
    """Every perfect matching, in lexicographic order."""
    return list(itertools.permutations(range(n)))


def matching_name(p: AllocationProblem, m: Matching) -> str:
    return "|".join(p.objects[o] for o in m)


def induced_context(p: AllocationProblem) -> Context:
    """Context with one alternative per perfect matching."""
    if p.n > INDUCED_CONTEXT_MAX_N:
        raise GuardrailExceeded(f"induced context limited to n <= {INDUCED_CONTEXT_MAX_N} ({p.n}! alternatives)")
    ms = all_matchings(p.n)
    names = tuple(matching_name(p, m) for m in ms)
    rows = tuple(tuple(row[m[i]] for m in ms) for i, row in enumerate(p.utilities))
    return Context(names, rows, p.mode)


@dataclass(frozen=True)
class MatchingLottery:
    """Distribution over distinct matchings, sorted by matching."""

    outcomes: tuple[tuple[Matching, Scalar], ...]

    def __post_init__(self):
        ms = [m for m, _ in self.outcomes]
        if len(set(ms)) != len(ms):
            raise InvalidLottery("matchings in a lottery must be distinct")
        if any(q < 0 for _, q in self.outcomes):
            raise InvalidLottery("probabilities must be nonnegative")
        total = sum(q for _, q in self.outcomes)
        if abs(total - 1) > 1e-12:
            raise InvalidLottery(f"probabilities sum to {total}")

    @classmethod
    def from_counts(cls, counts: dict, total: int, mode: str = EXACT) -> "MatchingLottery":
        from fractions import Fraction

        conv = (lambda c: Fraction(c, total)) if mode == EXACT else (lambda c: c / total)
        return cls(tuple((m, conv(c)) for m, c in sorted(counts.items()) if c))

    @classmethod
    def point(cls, m: Matching, mode: str = EXACT) -> "MatchingLottery":
        return cls(((tuple(m), to_scalar(1, mode)),))

    def as_dict(self) -> dict[Matching, Scalar]:
        return dict(self.outcomes)

    def probability(self, m: Matching) -> Scalar:
        return self.as_dict().get(tuple(m), 0)
