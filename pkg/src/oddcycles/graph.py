"""Immutable undirected simple graphs over vertices ``0..n-1``.

Adjacency is stored CSR-style (``indptr``/``indices``) with every neighbour
list sorted ascending, so iteration order, and therefore every tie-break in
the package, is by vertex id.
"""

from __future__ import annotations

import gc
from collections import deque
from contextlib import contextmanager
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _cc

from .errors import DuplicateEdge, EndpointOutOfRange, FormatError, GraphError, SelfLoop


@contextmanager
def gc_paused():
    """Suspend the cyclic collector; building and walking millions of small lists
    otherwise triggers repeated full-heap scans."""
    enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if enabled:
            gc.enable()


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    edges: np.ndarray  # (m, 2) int64, rows (u, v) with u < v, lexicographically sorted
    indptr: np.ndarray = field(repr=False)
    indices: np.ndarray = field(repr=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    @cached_property
    def adjacency(self) -> list[list[int]]:
        """Neighbour lists as plain Python lists, for the pure-Python traversals."""
        with gc_paused():
            flat = self.indices.tolist()
            bounds = self.indptr.tolist()
            return [flat[bounds[v]:bounds[v + 1]] for v in range(self.n)]

    def edge_list(self) -> list[tuple[int, int]]:
        return [tuple(e) for e in self.edges.tolist()]

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self.neighbors(u)
        i = np.searchsorted(nbrs, v)
        return bool(i < len(nbrs) and nbrs[i] == v)

    def induced_subgraph(self, keep) -> tuple["Graph", np.ndarray]:
        """Subgraph induced by a boolean mask; returns it with the kept original ids."""
        keep = np.asarray(keep, dtype=bool)
        old_ids = np.flatnonzero(keep)
        new_id = np.full(self.n, -1, dtype=np.int64)
        new_id[old_ids] = np.arange(len(old_ids))
        e = self.edges
        sel = keep[e[:, 0]] & keep[e[:, 1]] if len(e) else np.zeros(0, dtype=bool)
        return _from_canonical(len(old_ids), new_id[e[sel]]), old_ids

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.edges, other.edges)

    def __hash__(self):
        return hash((self.n, self.edges.tobytes()))


def _from_canonical(n: int, edges: np.ndarray) -> Graph:
    """Build from edges already validated, oriented u < v and free of duplicates."""
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if len(edges):
        order = np.lexsort((edges[:, 1], edges[:, 0]))
        edges = edges[order]
    heads = np.concatenate([edges[:, 0], edges[:, 1]])
    tails = np.concatenate([edges[:, 1], edges[:, 0]])
    order = np.lexsort((tails, heads))
    indices = tails[order]
    counts = np.bincount(heads, minlength=n) if n else np.zeros(0, dtype=np.int64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    edges.setflags(write=False)
    indices.setflags(write=False)
    indptr.setflags(write=False)
    return Graph(n, edges, indptr, indices)


def _first(mask: np.ndarray) -> int:
    return int(np.flatnonzero(mask)[0])


def from_edge_list(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Validate and build a graph; either endpoint order is accepted.

    Raises EndpointOutOfRange, SelfLoop or DuplicateEdge naming the first
    offending edge (by input position).
    """
    if n < 0:
        raise GraphError(f"vertex count must be nonnegative, got {n}")
    arr = np.asarray(edges if isinstance(edges, np.ndarray) else list(edges), dtype=np.int64)
    arr = arr.reshape(-1, 2)
    if len(arr) == 0:
        return _from_canonical(n, arr)
    bad = (arr < 0) | (arr >= n)
    if bad.any():
        i = _first(bad.any(axis=1))
        raise EndpointOutOfRange(f"edge #{i} {tuple(arr[i].tolist())} has an endpoint outside [0, {n})")
    loops = arr[:, 0] == arr[:, 1]
    if loops.any():
        i = _first(loops)
        raise SelfLoop(f"edge #{i} is a self-loop at vertex {arr[i, 0]}")
    canon = np.sort(arr, axis=1)
    keys = canon[:, 0] * n + canon[:, 1]
    order = np.argsort(keys, kind="stable")
    dup = keys[order][1:] == keys[order][:-1]
    if dup.any():
        i = int(order[1:][dup].min())
        raise DuplicateEdge(f"edge #{i} {tuple(arr[i].tolist())} appears more than once")
    return _from_canonical(n, canon)


# ---------------------------------------------------------------------------
# BFS


@dataclass(frozen=True)
class LayerDecomposition:
    source: int
    dist: list[Optional[int]]  # None marks an unreachable vertex
    layers: list[list[int]]

    def ball(self, radius: int) -> list[int]:
        return sorted(v for layer in self.layers[:radius + 1] for v in layer)


def bfs_layers(g: Graph, source: int) -> LayerDecomposition:
    if not 0 <= source < g.n:
        raise EndpointOutOfRange(f"source {source} outside [0, {g.n})")
    adj = g.adjacency
    dist: list[Optional[int]] = [None] * g.n
    dist[source] = 0
    layers = [[source]]
    frontier = [source]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if dist[w] is None:
                    dist[w] = d
                    nxt.append(w)
        if nxt:
            nxt.sort()
            layers.append(nxt)
        frontier = nxt
    return LayerDecomposition(source, dist, layers)


def distance_matrix(g: Graph) -> list[list[Optional[int]]]:
    """All-pairs hop distances by repeated BFS; meant for small graphs."""
    return [bfs_layers(g, v).dist for v in range(g.n)]


# ---------------------------------------------------------------------------
# Bipartiteness, components, independence


@dataclass(frozen=True)
class Bipartition:
    """Outcome of :func:`is_bipartite`; truthy iff the graph is bipartite."""

    coloring: Optional[list[int]]
    odd_cycle: Optional[list[int]]

    def __bool__(self):
        return self.coloring is not None


def is_bipartite(g: Graph) -> Bipartition:
    """Two-colour by BFS; on failure return a simple odd cycle ``[v0, ..., v0]``."""
    adj = g.adjacency
    color = [-1] * g.n
    parent = [-1] * g.n
    for root in range(g.n):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if color[w] == -1:
                    color[w] = color[u] ^ 1
                    parent[w] = u
                    queue.append(w)
                elif color[w] == color[u]:
                    return Bipartition(None, _tree_cycle(parent, u, w))
    return Bipartition(color, None)


def _tree_cycle(parent: list[int], x: int, y: int) -> list[int]:
    # x, y sit on the same BFS level (equal colour), so both climbs stay in lockstep
    left, right = [x], [y]
    while left[-1] != right[-1]:
        left.append(parent[left[-1]])
        right.append(parent[right[-1]])
    # left = x..lca, right = y..lca
    return left[::-1] + right


def connected_components(g: Graph) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by their smallest vertex."""
    if g.n == 0:
        return []
    mat = csr_matrix((np.ones(len(g.indices), dtype=np.int8), g.indices, g.indptr), shape=(g.n, g.n))
    count, labels = _cc(mat, directed=False)
    # relabel so component ids follow first appearance by vertex id
    _, first = np.unique(labels, return_index=True)
    rank = np.empty(count, dtype=np.int64)
    rank[np.argsort(first)] = np.arange(count)
    labels = rank[labels]
    order = np.argsort(labels, kind="stable")
    cuts = np.cumsum(np.bincount(labels, minlength=count))[:-1]
    return [part.tolist() for part in np.split(order, cuts)]


def _membership(n: int, s) -> np.ndarray:
    ids = np.fromiter(s, dtype=np.int64) if not isinstance(s, np.ndarray) else s.astype(np.int64)
    if len(ids) and (ids.min() < 0 or ids.max() >= n):
        raise EndpointOutOfRange(f"vertex set has members outside [0, {n})")
    mask = np.zeros(n, dtype=bool)
    mask[ids] = True
    return mask


def independence_violation(g: Graph, s) -> Optional[tuple[int, int]]:
    """The lexicographically first edge with both endpoints in ``s``, or None."""
    mask = _membership(g.n, s)
    if g.m == 0:
        return None
    inside = mask[g.edges[:, 0]] & mask[g.edges[:, 1]]
    if not inside.any():
        return None
    u, v = g.edges[_first(inside)].tolist()
    return (u, v)


def is_independent_set(g: Graph, s) -> bool:
    return independence_violation(g, s) is None


# ---------------------------------------------------------------------------
# Text format: optional '#' comments, header "n m", then m lines "u v".


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges.tolist())
    return "\n".join(lines) + "\n"


def parse_graph_text(text: str) -> Graph:
    header = None
    n = m = 0
    pairs: list[tuple[int, int]] = []
    lines: list[int] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(lineno, f"expected two integers, got {line!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(lineno, f"expected two integers, got {line!r}") from None
        if header is None:
            if a < 0 or b < 0:
                raise FormatError(lineno, "vertex and edge counts must be nonnegative")
            header, n, m = lineno, a, b
            continue
        if len(pairs) == m:
            raise FormatError(lineno, f"more than the declared {m} edges")
        if not (0 <= a < n and 0 <= b < n):
            raise FormatError(lineno, f"endpoint out of range [0, {n})")
        if a == b:
            raise FormatError(lineno, f"self-loop at vertex {a}")
        pairs.append((a, b))
        lines.append(lineno)
    if header is None:
        raise FormatError(1, "missing 'n m' header")
    if len(pairs) != m:
        raise FormatError(header, f"header declares {m} edges, found {len(pairs)}")
    try:
        return from_edge_list(n, pairs)
    except DuplicateEdge:
        seen = set()
        for (a, b), lineno in zip(pairs, lines):
            key = (min(a, b), max(a, b))
            if key in seen:
                raise FormatError(lineno, f"duplicate edge {key}") from None
            seen.add(key)
        raise


def parse_graph(path) -> Graph:
    return parse_graph_text(Path(path).read_text(encoding="utf-8"))


def write_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_graph(g))
