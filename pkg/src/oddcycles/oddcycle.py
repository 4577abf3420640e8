"""Odd girth, shortest odd cycles, and exhaustive oracles for tiny graphs.

The odd girth is computed on the bipartite double cover: vertex ``(v, p)``
records reaching ``v`` by a walk of parity ``p``, and an original edge
``uv`` joins ``(u, p)`` to ``(v, 1 - p)``. The distance from ``(v, 0)`` to
``(v, 1)`` is the length of the shortest odd closed walk through ``v``; the
shortest odd closed walk in the graph is always a simple cycle, so the
minimum over ``v`` is the odd girth.
"""

from __future__ import annotations

import math
from collections import deque
from typing import Optional

import numpy as np

from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import GraphError, TooLarge
from .graph import Graph

INF = math.inf

_WORD = 64


def odd_girth(g: Graph) -> int | float:
    """Exact length of the shortest odd cycle, ``math.inf`` for bipartite graphs."""
    return _odd_girth_with_source(g)[0]


def odd_component_mask(g: Graph) -> np.ndarray:
    """Vertices whose connected component contains an odd cycle.

    ``(v, 0)`` and ``(v, 1)`` share a component of the double cover exactly
    when some odd closed walk passes through ``v``'s component.
    """
    u, v = g.edges[:, 0], g.edges[:, 1]
    rows = np.concatenate([2 * u, 2 * u + 1])
    cols = np.concatenate([2 * v + 1, 2 * v])
    cover = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(2 * g.n, 2 * g.n))
    _, labels = connected_components(cover, directed=False)
    return labels[0::2] == labels[1::2]


def _odd_girth_with_source(g: Graph) -> tuple[int | float, int]:
    # 64 sources per pass, one bit each, propagated level by level
    n = g.n
    if g.m == 0:
        return INF, -1
    candidates = np.flatnonzero(odd_component_mask(g))
    deg = g.degrees
    starts = g.indptr[:-1][deg > 0]
    has_nbrs = deg > 0
    best, best_src = INF, -1
    bits_all = np.left_shift(np.uint64(1), np.arange(_WORD, dtype=np.uint64))
    for lo in range(0, len(candidates), _WORD):
        srcs = candidates[lo:lo + _WORD]
        bits = bits_all[:len(srcs)]
        frontier = np.zeros(n, dtype=np.uint64)
        frontier[srcs] = bits
        seen = [frontier.copy(), np.zeros(n, dtype=np.uint64)]
        resolved = np.zeros(len(srcs), dtype=bool)
        level = 0
        while level + 1 < best:
            level += 1
            reach = np.zeros(n, dtype=np.uint64)
            reach[has_nbrs] = np.bitwise_or.reduceat(frontier[g.indices], starts)
            parity = level & 1
            frontier = reach & ~seen[parity]
            if not frontier.any():
                break
            seen[parity] |= frontier
            if parity:
                hit = ((frontier[srcs] & bits) != 0) & ~resolved
                if hit.any():
                    resolved |= hit
                    if level < best:
                        best, best_src = level, int(srcs[np.flatnonzero(hit)[0]])
                    break  # later sources in this batch cannot beat this level
    return best, best_src


def _double_cover_walk(g: Graph, source: int) -> list[int]:
    """Shortest odd closed walk through ``source`` as a vertex list."""
    adj = g.adjacency
    start, goal = 2 * source, 2 * source + 1
    parent = {start: -1}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        if state == goal:
            break
        v, p = divmod(state, 2)
        for w in adj[v]:
            nxt = 2 * w + (1 - p)
            if nxt not in parent:
                parent[nxt] = state
                queue.append(nxt)
    if goal not in parent:
        raise GraphError(f"no odd closed walk through vertex {source}")
    walk = []
    state = goal
    while state != -1:
        walk.append(state // 2)
        state = parent[state]
    return walk[::-1]


def reduce_odd_walk(g: Graph, walk: list[int], chords: bool = True) -> list[int]:
    """Shrink an odd closed walk to a simple odd cycle it contains.

    A repeated vertex splits the walk into two closed walks, one of them odd;
    with ``chords`` set, an edge between non-consecutive cycle vertices splits
    it the same way. The odd part is kept until neither applies.
    """
    if len(walk) < 2 or walk[0] != walk[-1]:
        raise GraphError("walk must be closed: first and last vertex equal")
    cyc = list(walk[:-1])
    if len(cyc) % 2 == 0:
        raise GraphError(f"walk has even length {len(cyc)}")
    while True:
        split = _repeat_split(cyc)
        if split is None and chords:
            split = _chord_split(g, cyc)
        if split is None:
            return cyc + [cyc[0]]
        cyc = split


def _repeat_split(cyc: list[int]) -> Optional[list[int]]:
    first: dict[int, int] = {}
    for j, v in enumerate(cyc):
        i = first.setdefault(v, j)
        if i != j:
            inner = cyc[i:j]
            outer = cyc[:i] + cyc[j:]
            return inner if len(inner) % 2 else outer
    return None


def _chord_split(g: Graph, cyc: list[int]) -> Optional[list[int]]:
    pos = {v: i for i, v in enumerate(cyc)}
    length = len(cyc)
    adj = g.adjacency
    for i, v in enumerate(cyc):
        for w in adj[v]:
            j = pos.get(w)
            if j is None or j <= i + 1 or (i == 0 and j == length - 1):
                continue
            inner = cyc[i:j + 1]
            outer = cyc[:i + 1] + cyc[j:]
            return inner if len(inner) % 2 else outer
    return None


def shortest_odd_cycle(g: Graph) -> Optional[list[int]]:
    """A simple odd cycle ``[v0, ..., v0]`` of length ``odd_girth(g)``, or None."""
    girth, src = _odd_girth_with_source(g)
    if girth == INF:
        return None
    cycle = reduce_odd_walk(g, _double_cover_walk(g, src))
    assert len(cycle) - 1 == girth
    return cycle


def is_valid_cycle(g: Graph, cycle: list[int]) -> bool:
    """Closed, simple, and every consecutive pair adjacent."""
    if len(cycle) < 4 or cycle[0] != cycle[-1]:
        return False
    body = cycle[:-1]
    if len(set(body)) != len(body):
        return False
    return all(g.has_edge(a, b) for a, b in zip(cycle, cycle[1:]))


# ---------------------------------------------------------------------------
# Exhaustive oracles


def brute_force_odd_girth(g: Graph, max_n: int = 12) -> int | float:
    """Odd girth by enumerating simple cycles from their smallest vertex.

    Extensions that cannot close a cycle shorter than the best odd one found
    so far are skipped.
    """
    if g.n > max_n:
        raise TooLarge(f"brute-force odd girth is capped at n={max_n}, got {g.n}")
    adj = g.adjacency
    best = INF
    on_path = [False] * g.n

    def extend(start, u, count):
        nonlocal best
        for w in adj[u]:
            if w == start:
                if count >= 3 and count % 2 == 1 and count < best:
                    best = count
            elif w > start and not on_path[w] and count + 1 < best:
                on_path[w] = True
                extend(start, w, count + 1)
                on_path[w] = False

    for s in range(g.n):
        on_path[s] = True
        extend(s, s, 1)
        on_path[s] = False
    return best


def brute_force_max_independent_set(g: Graph, max_n: int = 24) -> list[int]:
    """A maximum independent set by branching on a maximum-degree vertex."""
    if g.n > max_n:
        raise TooLarge(f"brute-force independent set is capped at n={max_n}, got {g.n}")
    nbr = [sum(1 << w for w in row) for row in g.adjacency]
    memo: dict[int, int] = {}

    def solve(mask: int) -> int:
        if mask in memo:
            return memo[mask]
        pick, pick_deg = -1, -1
        rest = mask
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            d = bin(nbr[v] & mask).count("1")
            if d > pick_deg:
                pick, pick_deg = v, d
            rest ^= low
        if pick_deg <= 0:
            result = mask
        else:
            without = solve(mask & ~(1 << pick))
            with_ = solve(mask & ~(1 << pick) & ~nbr[pick]) | (1 << pick)
            result = with_ if bin(with_).count("1") >= bin(without).count("1") else without
        memo[mask] = result
        return result

    best = solve((1 << g.n) - 1) if g.n else 0
    return [v for v in range(g.n) if best >> v & 1]
