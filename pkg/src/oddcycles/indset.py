"""Linear-time independent sets by harvesting BFS layers.

Repeatedly take the smallest remaining vertex ``v`` and grow BFS layers
``L_0 = {v}, L_1, ...`` in the remaining graph. At the first ``j`` with
``|L_j| <= K |L_{j-1}|`` the layer ``L_{j-1}`` joins the output and
``L_0 .. L_j`` are deleted. With ``K = ceil(n ** (1 / (k + 1)))`` the
harvested layer has index at most ``k``, so if every odd cycle is longer
than ``2k + 1`` it contains no edge. Each output vertex pays for at most
``K + 2`` deleted vertices, giving at least ``n / (K + 2)`` output vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import GirthViolation, GraphError, IndependenceViolation
from .graph import Graph, gc_paused
from .oddcycle import INF, reduce_odd_walk, shortest_odd_cycle


def k_root_ceil(n: int, k: int) -> int:
    """Smallest integer ``K`` with ``K ** (k + 1) >= n``, in exact integer arithmetic."""
    if n < 1 or k < 1:
        raise GraphError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    e = k + 1

    def reaches(base):
        acc = 1
        for _ in range(e):
            acc *= base
            if acc >= n:
                return True
        return False

    lo, hi = 1, n
    while lo < hi:
        mid = (lo + hi) // 2
        if reaches(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def size_guarantee(n: int, k: int) -> int:
    """``ceil(n / (K + 2))`` for ``K = k_root_ceil(n, k)``."""
    return -(-n // (k_root_ceil(n, k) + 2))


@dataclass(frozen=True)
class HarvestRound:
    root: int
    layer: int  # index of the harvested layer, j - 1
    sizes: list[int]  # d_0, ..., d_j
    harvested: list[int]
    deleted: int


@dataclass
class HarvestTrace:
    K: int
    k: int
    rounds: list[HarvestRound] = field(default_factory=list)


@dataclass(frozen=True)
class HarvestResult:
    independent_set: list[int]
    K: int
    guarantee: int
    trace: Optional[HarvestTrace] = None

    @property
    def size(self) -> int:
        return len(self.independent_set)


def layered_greedy_independent_set(g: Graph, k: int, *, trace: bool = False,
                                   verify_girth: bool = False) -> HarvestResult:
    """Harvest an independent set of size at least ``ceil(n / (K + 2))``.

    Raises IndependenceViolation if a harvested layer contains an edge,
    which can only happen when some odd cycle has length ``<= 2k + 1``.
    """
    if k < 1:
        raise GraphError(f"k must be at least 1, got {k}")
    n = g.n
    if n == 0:
        return HarvestResult([], 1, 0, HarvestTrace(1, k) if trace else None)
    if verify_girth:
        cycle = shortest_odd_cycle(g)
        if cycle is not None and len(cycle) - 1 <= 2 * k + 1:
            raise GirthViolation(
                f"odd cycle of length {len(cycle) - 1} <= 2k+1 = {2 * k + 1}", cycle)
    K = k_root_ceil(n, k)
    log = HarvestTrace(K, k) if trace else None
    with gc_paused():
        out = _harvest(g, K, log)
    out.sort()
    return HarvestResult(out, K, -(-n // (K + 2)), log)


_DEAD = 4


def _harvest(g: Graph, K: int, log: Optional[HarvestTrace]) -> list[int]:
    # state: 0 unseen, 1 + (layer mod 3) while explored this round, _DEAD once deleted.
    # Everything explored in a round is deleted when the round ends, and a
    # neighbour of layer j lies in layer j-1, j or j+1, so mod 3 tells them apart.
    # reading the CSR buffers directly avoids building n small Python lists
    n = g.n
    flat = memoryview(g.indices)
    ptr = memoryview(g.indptr)
    state = bytearray(n)
    out = []
    root = 0
    while True:
        while root < n and state[root]:
            root += 1
        if root == n:
            return out
        state[root] = 1
        layers = [[root]]
        prev = layers[0]
        depth = 0
        while True:
            cur = depth % 3 + 1
            code = (depth + 1) % 3 + 1
            nxt = []
            clash = None
            for u in prev:
                for w in flat[ptr[u]:ptr[u + 1]]:
                    s = state[w]
                    if not s:
                        state[w] = code
                        nxt.append(w)
                    elif s == cur and clash is None:
                        clash = (u, w)
            if len(nxt) <= K * len(prev):
                if clash is not None:
                    _raise_violation(g, state, root, depth, clash)
                out.extend(prev)
                for layer in layers:
                    for x in layer:
                        state[x] = _DEAD
                for x in nxt:
                    state[x] = _DEAD
                if log is not None:
                    log.rounds.append(HarvestRound(
                        root, depth, [len(layer) for layer in layers] + [len(nxt)],
                        sorted(prev), sum(map(len, layers)) + len(nxt)))
                break
            layers.append(nxt)
            prev = nxt
            depth += 1


def _raise_violation(g: Graph, state: bytearray, root: int, depth: int, edge: tuple[int, int]):
    # rebuild BFS parents in the current remaining graph to recover the odd walk
    adj = g.adjacency
    parent = {root: -1}
    frontier = [root]
    for _ in range(depth):
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if state[w] != _DEAD and w not in parent:
                    parent[w] = u
                    nxt.append(w)
        frontier = nxt

    def climb(v):
        path = [v]
        while parent[path[-1]] != -1:
            path.append(parent[path[-1]])
        return path

    x, y = edge
    walk = climb(x)[::-1] + climb(y)
    cycle = reduce_odd_walk(g, walk)
    raise IndependenceViolation(
        f"harvested layer {depth} from root {root} contains edge {(min(edge), max(edge))}; "
        f"odd closed walk of length {len(walk) - 1}",
        (min(edge), max(edge)), cycle)


def exceeds_comparison_bound(size: int, n: int, k: int) -> bool:
    """Exactly decide ``size >= n ** (k / (k + 1)) / 3``, i.e. ``(3 size) ** (k+1) >= n ** k``."""
    return (3 * size) ** (k + 1) >= n ** k


def girth_certified(girth, k: int) -> bool:
    return girth == INF or girth > 2 * k + 1
