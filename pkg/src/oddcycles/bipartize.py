"""Make a graph with no short odd cycles bipartite by deleting partition guards.

With ``gamma = k // 2`` and ``delta = 4 * gamma`` every cluster of a random
partition has radius at most ``2 * gamma``. If all odd cycles are longer than
``2k + 1``, no edge inside a cluster joins two vertices at the same distance
from the center, so the parity of that distance two-colours each cluster.
Deleting the guards removes every edge between clusters, which leaves a
bipartite graph. The guard count is only bounded in expectation, so sampling
is repeated until it meets the bound.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import AttemptCapExceeded, EpsTooSmall, GirthViolation, GraphError, KTooSmall
from .graph import Graph
from .oddcycle import INF, odd_girth, reduce_odd_walk, shortest_odd_cycle
from .partition import Partition, PartitionParams, sample_partition
from .rng import check_seed, mix

DEFAULT_MAX_ATTEMPTS = 64


@dataclass(frozen=True)
class RemovalBounds:
    n: int
    k: int
    gamma: int
    delta: int
    bound: float

    @property
    def target(self) -> int:
        """Largest acceptable removal count when resampling."""
        return max(math.ceil(self.bound), 0)


def removal_bound(n: int, k: int) -> RemovalBounds:
    """``(n / (k//2)) ln(n / (k//2))`` together with the partition scale it implies."""
    if k < 2:
        raise KTooSmall(f"k must be at least 2, got {k}")
    if n < 1:
        raise GraphError(f"n must be positive, got {n}")
    gamma = k // 2
    x = n / gamma
    return RemovalBounds(n, k, gamma, 4 * gamma, x * math.log(x))


@dataclass(frozen=True)
class BipartizationResult:
    removed: list[int]
    coloring: list[int]  # side 0/1 for kept vertices, -1 for removed ones
    partition_used: Optional[Partition]
    attempts: int
    bounds: RemovalBounds
    cap_exceeded: bool = False
    eps_bound: Optional[float] = None

    @property
    def bound(self) -> float:
        return self.bounds.bound


def _parents_from(g: Graph, src: int, depth: int) -> dict[int, int]:
    adj = g.adjacency
    parent = {src: -1}
    frontier = [src]
    for _ in range(depth):
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w not in parent:
                    parent[w] = u
                    nxt.append(w)
        frontier = nxt
    return parent


def _climb(parent: dict[int, int], v: int) -> list[int]:
    path = [v]
    while parent[path[-1]] != -1:
        path.append(parent[path[-1]])
    return path


def _in_cluster_cycle(g: Graph, p: Partition, x: int, y: int) -> list[int]:
    """Odd closed walk center -> x -> y -> center, reduced to a simple cycle."""
    c = p.center_of(x)
    parent = _parents_from(g, c, p.radius)
    walk = _climb(parent, x)[::-1] + _climb(parent, y)
    return reduce_odd_walk(g, walk)


def _certify(g: Graph, p: Partition) -> tuple[list[int], list[int]]:
    keep = ~p.guard_mask()
    color = np.where(keep, p.dist_to_center & 1, -1)
    if g.m:
        u, v = g.edges[:, 0], g.edges[:, 1]
        live = keep[u] & keep[v]
        clash = live & (color[u] == color[v])
        if clash.any():
            x, y = g.edges[np.flatnonzero(clash)[0]].tolist()
            if p.assignment[x] != p.assignment[y]:
                raise AssertionError(f"cross edge {(x, y)} survived guard removal")
            cycle = _in_cluster_cycle(g, p, x, y)
            raise GirthViolation(
                f"edge {(x, y)} joins two vertices at distance {p.dist_to_center[x]} "
                f"from center {p.center_of(x)}; odd cycle of length {len(cycle) - 1}",
                cycle,
            )
    return np.flatnonzero(~keep).tolist(), color.tolist()


def bipartize(g: Graph, k: int, seed: int = 0, *, verify_girth: bool = False,
              max_attempts: int = DEFAULT_MAX_ATTEMPTS) -> BipartizationResult:
    """Delete guards of a ``delta = 4 * (k // 2)`` partition until the graph is bipartite.

    Attempt ``i + 1`` reseeds with ``mix(seed_i, 0)``. If no attempt meets
    the bound target within ``max_attempts``, the smallest removal set seen
    is returned with ``cap_exceeded`` set and an AttemptCapExceeded warning.
    """
    check_seed(seed)
    if k < 2:
        raise KTooSmall(f"k must be at least 2, got {k}")
    if max_attempts < 1:
        raise GraphError(f"max_attempts must be positive, got {max_attempts}")
    if verify_girth:
        cycle = shortest_odd_cycle(g)
        if cycle is not None and len(cycle) - 1 <= 2 * k + 1:
            raise GirthViolation(
                f"odd cycle of length {len(cycle) - 1} <= 2k+1 = {2 * k + 1}", cycle)
    bounds = removal_bound(max(g.n, 1), k)
    if g.n == 0:
        return BipartizationResult([], [], None, 0, bounds)

    best = None
    cur_seed = seed
    for attempt in range(1, max_attempts + 1):
        p = sample_partition(g, PartitionParams(bounds.delta, cur_seed))
        removed, coloring = _certify(g, p)
        if best is None or len(removed) < len(best[0]):
            best = (removed, coloring, p)
        if len(removed) <= bounds.target:
            return BipartizationResult(removed, coloring, p, attempt, bounds)
        cur_seed = mix(cur_seed, 0)
    warnings.warn(
        f"no sample met |X| <= {bounds.target} in {max_attempts} attempts; "
        f"returning the best ({len(best[0])} vertices)",
        AttemptCapExceeded, stacklevel=2)
    return BipartizationResult(best[0], best[1], best[2], max_attempts, bounds, cap_exceeded=True)


def _as_fraction(eps) -> Fraction:
    return Fraction(repr(eps)) if isinstance(eps, float) else Fraction(eps)


def fraction_to_k(n: int, eps) -> int:
    """``floor((eps n - 1) / 2)``, rejecting ``eps n < 40``."""
    eps_n = _as_fraction(eps) * n
    if eps_n < 40:
        raise EpsTooSmall(f"eps * n = {float(eps_n):g} is below 40")
    return math.floor((eps_n - 1) / 2)


def fraction_bound(eps) -> float:
    """``(5/eps) ln(5/eps)``."""
    x = 5 / float(_as_fraction(eps))
    return x * math.log(x)


def bipartize_by_fraction(g: Graph, eps, seed: int = 0, *, verify_girth: bool = False,
                          max_attempts: int = DEFAULT_MAX_ATTEMPTS) -> BipartizationResult:
    """Bipartize a graph whose odd cycles are all longer than ``eps * n``."""
    k = fraction_to_k(g.n, eps)
    if verify_girth:
        girth = odd_girth(g)
        if girth != INF and girth <= _as_fraction(eps) * g.n:
            raise GirthViolation(
                f"odd girth {girth} does not exceed eps*n = {float(_as_fraction(eps) * g.n):g}",
                shortest_odd_cycle(g))
    result = bipartize(g, k, seed, max_attempts=max_attempts)
    return BipartizationResult(result.removed, result.coloring, result.partition_used,
                               result.attempts, result.bounds, result.cap_exceeded,
                               eps_bound=fraction_bound(eps))


def remaining_graph(g: Graph, removed) -> tuple[Graph, np.ndarray]:
    """Graph induced on the vertices not in ``removed``, plus their original ids."""
    keep = np.ones(g.n, dtype=bool)
    keep[np.asarray(list(removed), dtype=np.int64)] = False
    return g.induced_subgraph(keep)
