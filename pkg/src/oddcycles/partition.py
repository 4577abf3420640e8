"""Random low-diameter partitions with a small vertex separator.

A partition is driven by a uniformly random ordering of the vertices and a
radius ``R`` drawn uniformly from ``{delta/4, ..., delta/2}``. Every vertex
joins the cluster of the earliest vertex in the ordering whose radius-``R``
ball contains it. Vertices lying at distance exactly ``R`` from their
cluster's center are the *guards*; every edge between two clusters has a
guard endpoint, so deleting the guards disconnects the clusters.

The clusters are computed by growing all balls at once: each vertex holds the
smallest ordering rank seen so far, and ``R`` rounds of taking the minimum
over closed neighbourhoods leave each vertex with the rank of the earliest
vertex within distance ``R``. The round at which that final label first
arrives is the distance to the center. Cost is ``O(R (n + m))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

import numpy as np

from .errors import GraphError, InvalidDelta, TooLarge
from .graph import Graph, bfs_layers, distance_matrix
from .rng import check_seed, make_rng


@dataclass(frozen=True)
class PartitionParams:
    delta: int
    seed: int = 0

    def __post_init__(self):
        validate_delta(self.delta)
        check_seed(self.seed)

    @property
    def radius_range(self) -> range:
        return range(self.delta // 4, self.delta // 2 + 1)


def validate_delta(delta) -> int:
    if not isinstance(delta, (int, np.integer)) or delta < 4 or delta % 4:
        raise InvalidDelta(f"delta must be a positive multiple of 4, got {delta!r}")
    return int(delta)


@dataclass(frozen=True, eq=False)
class Partition:
    params: PartitionParams
    radius: int
    assignment: np.ndarray  # cluster index per vertex
    centers: np.ndarray  # center vertex per cluster, in ordering of the permutation
    dist_to_center: np.ndarray
    permutation: np.ndarray  # permutation[i] is the i-th vertex of the ordering

    @property
    def n(self) -> int:
        return len(self.assignment)

    @property
    def cluster_count(self) -> int:
        return len(self.centers)

    def clusters(self) -> list[list[int]]:
        order = np.argsort(self.assignment, kind="stable")
        cuts = np.cumsum(np.bincount(self.assignment, minlength=self.cluster_count))[:-1]
        return [part.tolist() for part in np.split(order, cuts)]

    def center_of(self, v: int) -> int:
        return int(self.centers[self.assignment[v]])

    def guard_mask(self) -> np.ndarray:
        return self.dist_to_center == self.radius

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return (self.params == other.params and self.radius == other.radius
                and np.array_equal(self.assignment, other.assignment)
                and np.array_equal(self.centers, other.centers)
                and np.array_equal(self.dist_to_center, other.dist_to_center)
                and np.array_equal(self.permutation, other.permutation))


def _spread_min(g: Graph, labels: np.ndarray, starts: np.ndarray, has_nbrs: np.ndarray) -> np.ndarray:
    out = labels.copy()
    if len(starts):
        nbr_min = np.minimum.reduceat(labels[g.indices], starts)
        np.minimum(out[has_nbrs], nbr_min, out=nbr_min)
        out[has_nbrs] = nbr_min
    return out


def partition_from(g: Graph, permutation, radius: int, params: PartitionParams | None = None) -> Partition:
    """Deterministic part of the construction for a given ordering and radius."""
    n = g.n
    perm = np.asarray(permutation, dtype=np.int64)
    if sorted(perm.tolist()) != list(range(n)):
        raise GraphError("permutation must list every vertex exactly once")
    if radius < 0:
        raise GraphError(f"radius must be nonnegative, got {radius}")
    rank = np.empty(n, dtype=np.int64)
    rank[perm] = np.arange(n)
    has_nbrs = g.degrees > 0
    starts = g.indptr[:-1][has_nbrs]

    final = rank
    rounds = 0
    for _ in range(radius):
        nxt = _spread_min(g, final, starts, has_nbrs)
        if np.array_equal(nxt, final):
            break
        final = nxt
        rounds += 1

    # replay to find when each vertex first carried its final label
    dist = np.zeros(n, dtype=np.int64)
    cur = rank
    for t in range(rounds):
        dist += cur != final
        cur = _spread_min(g, cur, starts, has_nbrs)

    center_ranks, assignment = np.unique(final, return_inverse=True)
    centers = perm[center_ranks]
    for arr in (assignment, centers, dist, perm):
        arr.setflags(write=False)
    return Partition(params, int(radius), assignment.astype(np.int64), centers, dist, perm)


def sample_partition(g: Graph, params: PartitionParams) -> Partition:
    """Draw the ordering (first) and radius (second) from ``params.seed``."""
    if g.n == 0:
        raise GraphError("cannot partition an empty graph")
    rng = make_rng(params.seed)
    perm = rng.permutation(g.n)
    radius = int(rng.integers(params.delta // 4, params.delta // 2, endpoint=True))
    return partition_from(g, perm, radius, params)


def guards(p: Partition) -> list[int]:
    return np.flatnonzero(p.guard_mask()).tolist()


def cross_edge_mask(g: Graph, p: Partition) -> np.ndarray:
    """Boolean mask over ``g.edges`` marking edges between different clusters."""
    if g.n != p.n:
        raise GraphError("partition does not belong to this graph")
    a = p.assignment
    return a[g.edges[:, 0]] != a[g.edges[:, 1]]


def cross_edges(g: Graph, p: Partition) -> list[tuple[int, int]]:
    return [tuple(e) for e in g.edges[cross_edge_mask(g, p)].tolist()]


def guard_bound(n: int, delta: int) -> float:
    """``(4n/delta) ln(4n/delta)``; negative when ``4n < delta``."""
    x = 4 * n / delta
    return x * math.log(x) if x > 0 else 0.0


# ---------------------------------------------------------------------------
# Oracles


def definitional_assignment(dist, permutation, radius: int) -> tuple[list[int], list[int]]:
    """Per vertex: first vertex of the ordering within ``radius``, and its distance.

    ``dist`` is an all-pairs distance matrix with None for unreachable pairs.
    """
    n = len(dist)
    center = [-1] * n
    at = [-1] * n
    for x in range(n):
        for y in permutation:
            d = dist[y][x]
            if d is not None and d <= radius:
                center[x], at[x] = int(y), d
                break
    return center, at


def guard_probability_oracle(g: Graph, delta: int, max_n: int = 8) -> list[Fraction]:
    """Exact guard probability of every vertex, averaged over all orderings and radii."""
    delta = validate_delta(delta)
    if g.n > max_n:
        raise TooLarge(f"guard probability enumeration is capped at n={max_n}, got {g.n}")
    dist = distance_matrix(g)
    radii = range(delta // 4, delta // 2 + 1)
    hits = [0] * g.n
    total = 0
    for perm in permutations(range(g.n)):
        for r in radii:
            _, at = definitional_assignment(dist, perm, r)
            for x in range(g.n):
                if at[x] == r:
                    hits[x] += 1
            total += 1
    return [Fraction(h, total) for h in hits]


def ball_sizes(g: Graph, x: int, radii) -> list[int]:
    dist = bfs_layers(g, x).dist
    return [sum(1 for d in dist if d is not None and d <= r) for r in radii]


def guard_probability_bound(g: Graph, x: int, delta: int) -> tuple[int, int]:
    """``(|B(x, delta/2)|, |B(x, delta/4 - 1)|)``; the bound is ``(4/delta) ln`` of their ratio."""
    outer, inner = ball_sizes(g, x, [delta // 2, delta // 4 - 1])
    return outer, inner


def _exp_bracket(x: Fraction, terms: int) -> tuple[Fraction, Fraction]:
    """Rational ``lo <= e**x <= hi`` for ``x >= 0`` from a truncated Taylor series."""
    term = Fraction(1)
    lo = Fraction(0)
    for i in range(terms):
        lo += term
        term = term * x / (i + 1)
    # tail <= x**terms/terms! * e**x, and e**x <= 3**ceil(x)
    return lo, lo + term * 3 ** math.ceil(x)


def le_log(a: Fraction, q: Fraction) -> bool:
    """Exactly decide ``a <= ln(q)`` for rationals ``a >= 0``, ``q > 0``."""
    a, q = Fraction(a), Fraction(q)
    if a < 0:
        raise ValueError("a must be nonnegative")
    if a == 0:
        return q >= 1
    terms = 8
    while True:
        lo, hi = _exp_bracket(a, terms)
        if hi <= q:
            return True
        if lo > q:
            return False
        terms *= 2
