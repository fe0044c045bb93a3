"""Instance generators for the RSD bound experiments."""

from __future__ import annotations

import random
from fractions import Fraction

from ..errors import InputError, InvalidEpsilon
from ..scalar import EXACT, FLOAT, check_mode, to_scalar
from .problem import AllocationProblem, make_problem

# denominators used when drawing exact rationals
_GRID = 10_000


def generated_object_names(n: int) -> list[str]:
    return [f"o{k + 1}" for k in range(n)]


def lower_bound_instance(n: int, eps, mode: str = EXACT) -> AllocationProblem:
    """Common-ranking profile: ``u_i(j) = 1 - (j-1) eps`` for ``j <= i``, ``(n-j)/n * eps`` otherwise.

    Indices are 1-based in the formula. Everyone ranks object 1 first, object
    n last, and individual i is nearly indifferent among her first i objects.
    """
    check_mode(mode)
    if n < 1:
        raise InputError("n must be positive")
    e = to_scalar(eps, EXACT)
    if not 0 < e < Fraction(1, n):
        raise InvalidEpsilon(f"eps must satisfy 0 < eps < 1/n = 1/{n}, got {eps}")
    rows = []
    for i in range(1, n + 1):
        rows.append([1 - (j - 1) * e if j <= i else Fraction(n - j, n) * e for j in range(1, n + 1)])
    if mode == FLOAT:
        rows = [[float(v) for v in r] for r in rows]
    p = make_problem(generated_object_names(n), rows, mode)
    assert all(order == tuple(range(n)) for order in p.rankings)
    return p


def _distinct_ticks(rng: random.Random, k: int) -> list[int]:
    return rng.sample(range(1, _GRID), k)


def ur_eps_instance(n: int, eps, seed: int, mode: str = EXACT) -> AllocationProblem:
    """Random unit-range profile with every value within ``eps`` of 0 or 1.

    Each row puts a random nonempty proper subset of objects near 1 (one of
    them exactly 1) and the rest near 0 (one of them exactly 0).
    """
    check_mode(mode)
    if n < 2:
        raise InputError("ur_eps instances need n >= 2")
    e = to_scalar(eps, EXACT)
    if not 0 < e < Fraction(1, 2):
        raise InvalidEpsilon(f"eps must satisfy 0 < eps < 1/2, got {eps}")
    rng = random.Random(seed)
    rows = []
    for _ in range(n):
        objs = list(range(n))
        rng.shuffle(objs)
        h = rng.randint(1, n - 1)
        high, low = objs[:h], objs[h:]
        row = [Fraction(0)] * n
        for o, t in zip(high, [0] + _distinct_ticks(rng, h - 1)):
            row[o] = 1 - e * Fraction(t, _GRID)
        for o, t in zip(low, [0] + _distinct_ticks(rng, len(low) - 1)):
            row[o] = e * Fraction(t, _GRID)
        rows.append(row)
    if mode == FLOAT:
        rows = [[float(v) for v in r] for r in rows]
    return make_problem(generated_object_names(n), rows, mode)


def uniform_instance(n: int, seed: int, mode: str = EXACT) -> AllocationProblem:
    """Unit-range profile: per row one object at 1, one at 0, the rest uniform in between."""
    check_mode(mode)
    if n < 1:
        raise InputError("n must be positive")
    rng = random.Random(seed)
    rows = []
    for _ in range(n):
        objs = list(range(n))
        rng.shuffle(objs)
        row = [Fraction(0)] * n
        if n > 1:
            row[objs[0]] = Fraction(1)
            for o, t in zip(objs[2:], _distinct_ticks(rng, n - 2)):
                row[o] = Fraction(t, _GRID)
        else:
            row[0] = Fraction(1)
        rows.append(row)
    if mode == FLOAT:
        rows = [[float(v) for v in r] for r in rows]
    return make_problem(generated_object_names(n), rows, mode)


def random_rankings(n: int, rng: random.Random) -> list[list[int]]:
    out = []
    for _ in range(n):
        order = list(range(n))
        rng.shuffle(order)
        out.append(order)
    return out
