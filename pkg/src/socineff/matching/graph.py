"""Bipartite matching primitives: Hopcroft-Karp and the Hungarian method."""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence


def hopcroft_karp(n_left: int, n_right: int, edges: Iterable[tuple[int, int]]) -> set[tuple[int, int]]:
    """Maximum-cardinality matching of a bipartite graph in O(E sqrt(V)).

    Returns the matched ``(left, right)`` pairs. Adjacency is sorted so the
    result is deterministic.
    """
    adj: list[list[int]] = [[] for _ in range(n_left)]
    for u, v in edges:
        if not (0 <= u < n_left and 0 <= v < n_right):
            raise IndexError(f"edge ({u}, {v}) out of range")
        adj[u].append(v)
    for nbrs in adj:
        nbrs.sort()
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    dist = [0] * n_left
    unreached = n_left + n_right + 1

    def bfs() -> bool:
        queue = deque()
        for u in range(n_left):
            if match_l[u] < 0:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = unreached
        found = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                w = match_r[v]
                if w < 0:
                    found = True
                elif dist[w] == unreached:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(u: int) -> bool:
        for v in adj[u]:
            w = match_r[v]
            if w < 0 or (dist[w] == dist[u] + 1 and dfs(w)):
                match_l[u] = v
                match_r[v] = u
                return True
        dist[u] = unreached
        return False

    while bfs():
        for u in range(n_left):
            if match_l[u] < 0:
                dfs(u)
    return {(u, v) for u, v in enumerate(match_l) if v >= 0}


def max_weight_assignment(weights: Sequence[Sequence[object]]) -> tuple[list[int], object]:
    """Maximum-weight perfect assignment on a square matrix (Hungarian method).

    ``None`` entries are forbidden edges: they are left out of the search
    rather than given a large penalty. Works on any ordered field, so exact
    Fractions stay exact. Raises ValueError when no perfect assignment avoids
    the forbidden edges.
    """
    n = len(weights)
    if any(len(r) != n for r in weights):
        raise ValueError("weight matrix must be square")
    cost = [[None if w is None else -w for w in row] for row in weights]
    zero = next((c * 0 for row in cost for c in row if c is not None), 0)
    u = [zero] * (n + 1)
    v = [zero] * (n + 1)
    p = [0] * (n + 1)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [None] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = j1 = None
            for j in range(1, n + 1):
                if used[j]:
                    continue
                c = cost[i0 - 1][j - 1]
                if c is not None:
                    cur = c - u[i0] - v[j]
                    if minv[j] is None or cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                if minv[j] is not None and (delta is None or minv[j] < delta):
                    delta, j1 = minv[j], j
            if j1 is None:
                raise ValueError("no perfect assignment avoids the forbidden edges")
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                elif minv[j] is not None:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    assignment = [0] * n
    for j in range(1, n + 1):
        assignment[p[j] - 1] = j - 1
    total = sum((weights[i][assignment[i]] for i in range(n)), zero)
    return assignment, total
