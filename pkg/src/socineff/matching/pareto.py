"""Ex-post Pareto efficiency of matchings and the min-Pareto-object search."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..errors import GuardrailExceeded, IndexOutOfRange
from .graph import hopcroft_karp
from .problem import AllocationProblem, Matching, all_matchings, check_matching

BRUTE_FORCE_MAX_N = 8


def envy_arcs(p: AllocationProblem, m: Matching) -> list[list[int]]:
    """Arc i -> k when i strictly prefers k's object to her own."""
    return [[k for k in range(p.n) if k != i and p.rank[i][m[k]] < p.rank[i][m[i]]] for i in range(p.n)]


def find_envy_cycle(p: AllocationProblem, m: Matching) -> list[int] | None:
    arcs = envy_arcs(p, m)
    state = [0] * p.n  # 0 new, 1 on stack, 2 done
    parent = [-1] * p.n
    for root in range(p.n):
        if state[root]:
            continue
        stack = [(root, iter(arcs[root]))]
        state[root] = 1
        while stack:
            u, it = stack[-1]
            for w in it:
                if state[w] == 1:
                    cycle = [u]
                    while cycle[-1] != w:
                        cycle.append(parent[cycle[-1]])
                    return cycle[::-1]
                if state[w] == 0:
                    state[w] = 1
                    parent[w] = u
                    stack.append((w, iter(arcs[w])))
                    break
            else:
                state[u] = 2
                stack.pop()
    return None


def is_expost_pareto_efficient(p: AllocationProblem, m: Sequence[int]) -> bool:
    """A matching is ex-post PO iff its strict-envy digraph has no cycle.

    With strict preferences any Pareto improvement moves some individuals to
    objects held by others and every mover strictly gains, so it decomposes
    into envy cycles.
    """
    return find_envy_cycle(p, check_matching(p, m)) is None


def top_trading_cycles(p: AllocationProblem, endowment: Sequence[int]) -> Matching:
    """Trade from ``endowment`` to an ex-post PO matching nobody likes less."""
    n = p.n
    owner = {o: i for i, o in enumerate(endowment)}
    active = set(range(n))
    out = list(endowment)
    while active:
        remaining = {endowment[i] for i in active}
        point = {}
        for i in active:
            best = next(o for o in p.rankings[i] if o in remaining)
            point[i] = owner[best]
        # walk the pointer graph until a node repeats; that closes a cycle
        u = min(active)
        seen = []
        while u not in seen:
            seen.append(u)
            u = point[u]
        cycle = seen[seen.index(u):]
        for i in cycle:
            out[i] = endowment[point[i]]
        active.difference_update(cycle)
    return tuple(out)


def _check_index(p: AllocationProblem, i: int, what: str) -> None:
    if not 0 <= i < p.n:
        raise IndexOutOfRange(f"{what} {i} out of range for n={p.n}")


def _test_graph(p: AllocationProblem, i_hat: int, o: int):
    rest = [i for i in range(p.n) if i != i_hat]
    objs = [k for k in range(p.n) if k != o]
    col = {k: j for j, k in enumerate(objs)}
    edges = [(a, col[k]) for a, i in enumerate(rest) for k in objs if p.rank[i][k] < p.rank[i][o]]
    return rest, objs, hopcroft_karp(len(rest), len(objs), edges)


def test_min_pareto(p: AllocationProblem, i_hat: int, o: int) -> bool:
    """Can everyone but ``i_hat`` get something strictly better than ``o``
    from the objects other than ``o``?"""
    _check_index(p, i_hat, "individual")
    _check_index(p, o, "object")
    _, _, matched = _test_graph(p, i_hat, o)
    return len(matched) == p.n - 1


test_min_pareto.__test__ = False  # not a pytest test despite the name


def min_pareto_witness(p: AllocationProblem, i_hat: int, o: int) -> Matching | None:
    """An ex-post PO matching giving ``i_hat`` exactly ``o``, or None when the test fails.

    Built from the perfect matching found by the test by trading cycles.
    Everyone else already holds something she prefers to ``o``, so nobody
    trades for it and ``i_hat`` keeps ``o``.
    """
    rest, objs, matched = _test_graph(p, i_hat, o)
    if len(matched) != p.n - 1:
        return None
    m = [0] * p.n
    m[i_hat] = o
    for a, j in matched:
        m[rest[a]] = objs[j]
    return top_trading_cycles(p, m)


def find_min_pareto_match(p: AllocationProblem, i_hat: int) -> int:
    """Object least preferred by ``i_hat`` among her objects in ex-post PO matchings."""
    _check_index(p, i_hat, "individual")
    for o in reversed(p.rankings[i_hat]):
        if test_min_pareto(p, i_hat, o):
            return o
    raise AssertionError("the favorite object always passes the test")


# brute force oracles


def _packed_ranks(p: AllocationProblem, ms: np.ndarray) -> np.ndarray:
    rank = np.array(p.rank, dtype=np.int64)
    r = rank[np.arange(p.n)[None, :], ms]  # (N, n)
    shifts = 4 * np.arange(p.n, dtype=np.int64)
    return (r << shifts).sum(axis=1)


def pareto_matchings_brute_force(p: AllocationProblem, chunk: int = 256) -> list[Matching]:
    """Ex-post PO matchings by direct domination tests over all n! matchings.

    Ranks are packed into 4-bit fields with a guard bit so one subtraction
    compares all coordinates at once: the guard bit of field i survives
    ``(b | G) - a`` exactly when ``a_i <= b_i``.
    """
    if p.n > BRUTE_FORCE_MAX_N:
        raise GuardrailExceeded(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}")
    ms_list = all_matchings(p.n)
    ms = np.array(ms_list, dtype=np.int64).reshape(len(ms_list), p.n)
    packed = _packed_ranks(p, ms)
    guard = sum(1 << (4 * i + 3) for i in range(p.n))
    dominated = np.zeros(len(ms_list), dtype=bool)
    for start in range(0, len(ms_list), chunk):
        b = packed[start:start + chunk, None]
        weakly_better = (((b | guard) - packed[None, :]) & guard) == guard
        dominated[start:start + chunk] = (weakly_better & (packed[None, :] != b)).any(axis=1)
    return [m for m, d in zip(ms_list, dominated) if not d]


def dominates(p: AllocationProblem, m1: Matching, m2: Matching) -> bool:
    """Pareto domination of pure matchings, checked coordinate by coordinate."""
    ge = all(p.rank[i][m1[i]] <= p.rank[i][m2[i]] for i in range(p.n))
    return ge and tuple(m1) != tuple(m2)


def min_pareto_objects_brute_force(p: AllocationProblem) -> list[int]:
    """Per individual, her least preferred object over all ex-post PO matchings."""
    po = pareto_matchings_brute_force(p)
    return [max((m[i] for m in po), key=lambda o: p.rank[i][o]) for i in range(p.n)]
