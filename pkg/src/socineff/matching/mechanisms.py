"""Serial dictatorship and random serial dictatorship (RSD)."""

from __future__ import annotations

import math
import random
from collections import Counter
from fractions import Fraction
from typing import Sequence

from ..errors import GuardrailExceeded, InputError, NotAPermutation
from ..scalar import EXACT
from .problem import AllocationProblem, Matching, MatchingLottery

RSD_EXACT_MAX_N = 8


def serial_dictatorship(p: AllocationProblem, order: Sequence[int]) -> Matching:
    """Each individual in turn takes her favorite object still available."""
    order = list(order)
    if sorted(order) != list(range(p.n)):
        raise NotAPermutation(f"{order} is not an ordering of {p.n} individuals")
    taken = [False] * p.n
    out = [0] * p.n
    for i in order:
        for o in p.rankings[i]:
            if not taken[o]:
                taken[o] = True
                out[i] = o
                break
    return tuple(out)


def _orders(n: int):
    from itertools import permutations

    return permutations(range(n))


def rsd_counts(p: AllocationProblem) -> Counter:
    """Number of the n! orders producing each matching."""
    if p.n > RSD_EXACT_MAX_N:
        raise GuardrailExceeded(f"exact RSD enumerates n! orders; limited to n <= {RSD_EXACT_MAX_N}, use sampling")
    return Counter(serial_dictatorship(p, order) for order in _orders(p.n))


def rsd_exact(p: AllocationProblem) -> MatchingLottery:
    return MatchingLottery.from_counts(rsd_counts(p), math.factorial(p.n), EXACT)


def fisher_yates(rng: random.Random, n: int) -> list[int]:
    order = list(range(n))
    for k in range(n - 1, 0, -1):
        j = rng.randrange(k + 1)
        order[k], order[j] = order[j], order[k]
    return order


def rsd_sample_counts(p: AllocationProblem, trials: int, seed: int) -> Counter:
    if trials < 1:
        raise InputError("trials must be at least 1")
    rng = random.Random(seed)
    return Counter(serial_dictatorship(p, fisher_yates(rng, p.n)) for _ in range(trials))


def rsd_sample(p: AllocationProblem, trials: int, seed: int) -> MatchingLottery:
    """Empirical RSD distribution over ``trials`` seeded random orders."""
    return MatchingLottery.from_counts(rsd_sample_counts(p, trials, seed), trials, EXACT)


def rsd_assignment_counts(p: AllocationProblem) -> list[list[int]]:
    """``counts[i][o]`` = number of orders under which RSD gives ``o`` to ``i``.

    Forward dynamic program over (individuals already served, objects taken)
    states, so identical partial histories are merged instead of enumerating
    all n! orders. Divide by n! for the RSD assignment probabilities.
    """
    n = p.n
    fact = [math.factorial(k) for k in range(n + 1)]
    prefs = [[1 << o for o in p.rankings[i]] for i in range(n)]
    counts = [[0] * n for _ in range(n)]
    layer = {(0, 0): 1}
    for served in range(n):
        completions = fact[n - served - 1]
        nxt: dict[tuple[int, int], int] = {}
        for (s, taken), c in layer.items():
            for i in range(n):
                bit = 1 << i
                if s & bit:
                    continue
                for ob in prefs[i]:
                    if not taken & ob:
                        break
                o = ob.bit_length() - 1
                counts[i][o] += c * completions
                key = (s | bit, taken | ob)
                nxt[key] = nxt.get(key, 0) + c
        layer = nxt
    return counts


def rsd_assignment_matrix(p: AllocationProblem) -> list[list[Fraction]]:
    total = math.factorial(p.n)
    return [[Fraction(c, total) for c in row] for row in rsd_assignment_counts(p)]
