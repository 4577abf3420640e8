"""Graph families with known odd girth."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BadParam
from .graph import Graph, _from_canonical
from .rng import make_rng

FAMILIES = ("cycle", "path", "complete-bipartite", "random-bipartite", "gnp",
            "cycle-blowup", "subdivision")


def gen_cycle(length: int) -> Graph:
    if length < 3:
        raise BadParam(f"cycle length must be at least 3, got {length}")
    u = np.arange(length)
    e = np.stack([u, (u + 1) % length], axis=1)
    return _from_canonical(length, np.sort(e, axis=1))


def gen_path(n: int) -> Graph:
    if n < 1:
        raise BadParam(f"path needs at least one vertex, got {n}")
    u = np.arange(n - 1)
    return _from_canonical(n, np.stack([u, u + 1], axis=1))


def gen_complete_bipartite(n1: int, n2: int) -> Graph:
    if n1 < 0 or n2 < 0:
        raise BadParam(f"side sizes must be nonnegative, got {n1}, {n2}")
    a, b = np.meshgrid(np.arange(n1), np.arange(n1, n1 + n2), indexing="ij")
    return _from_canonical(n1 + n2, np.stack([a.ravel(), b.ravel()], axis=1))


def gen_cycle_blowup(length: int, class_size: int) -> Graph:
    """Odd cycle whose vertices become independent classes and edges complete bundles.

    Cycle vertex ``v`` maps to ids ``v*class_size .. (v+1)*class_size - 1``.
    """
    if length < 3 or length % 2 == 0:
        raise BadParam(f"blow-up needs an odd cycle length >= 3, got {length}")
    if class_size < 1:
        raise BadParam(f"class size must be positive, got {class_size}")
    s = class_size
    parts = []
    i, j = np.meshgrid(np.arange(s), np.arange(s), indexing="ij")
    for v in range(length):
        w = (v + 1) % length
        parts.append(np.stack([v * s + i.ravel(), w * s + j.ravel()], axis=1))
    return _from_canonical(length * s, np.sort(np.concatenate(parts), axis=1))


def gen_subdivision(g: Graph, t: int) -> Graph:
    """Replace every edge by a path with ``2t + 1`` edges.

    Original vertices keep their ids; the ``2t`` inner vertices of edge number
    ``e`` (in sorted edge order) are ``n + 2te .. n + 2te + 2t - 1``, from the
    smaller endpoint towards the larger.
    """
    if t < 0:
        raise BadParam(f"t must be nonnegative, got {t}")
    if t == 0:
        return g
    inner = 2 * t
    m = g.m
    total = g.n + inner * m
    chains = g.n + np.arange(m * inner).reshape(m, inner)
    path = np.concatenate([g.edges[:, :1], chains, g.edges[:, 1:]], axis=1)
    e = np.stack([path[:, :-1].ravel(), path[:, 1:].ravel()], axis=1)
    return _from_canonical(total, np.sort(e, axis=1))


def _skip_sample(rng: np.random.Generator, total: int, p: float) -> np.ndarray:
    """Positions in ``[0, total)`` kept independently with probability ``p``.

    Geometric gaps between kept positions, so the cost is proportional to the
    number kept rather than to ``total``.
    """
    if total == 0 or p == 0.0:
        return np.zeros(0, dtype=np.int64)
    if p == 1.0:
        return np.arange(total, dtype=np.int64)
    chunks = []
    pos = -1
    batch = max(int(total * p * 1.1) + 16, 1024)
    while True:
        gaps = rng.geometric(p, size=batch)
        picks = pos + np.cumsum(gaps)
        done = picks[-1] >= total
        picks = picks[picks < total]
        chunks.append(picks)
        if done:
            break
        pos = int(picks[-1])
    return np.concatenate(chunks)


def _check_p(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise BadParam(f"p must lie in [0, 1], got {p}")
    return float(p)


def gen_random_bipartite(n1: int, n2: int, p: float, seed: int = 0) -> Graph:
    """Each of the ``n1 * n2`` cross pairs independently with probability ``p``."""
    if n1 < 0 or n2 < 0:
        raise BadParam(f"side sizes must be nonnegative, got {n1}, {n2}")
    p = _check_p(p)
    picks = _skip_sample(make_rng(seed), n1 * n2, p)
    left, right = np.divmod(picks, n2) if n2 else (picks, picks)
    return _from_canonical(n1 + n2, np.stack([left, n1 + right], axis=1))


def gen_gnp(n: int, p: float, seed: int = 0) -> Graph:
    """Erdos-Renyi ``G(n, p)``: each pair ``u < v`` independently with probability ``p``."""
    if n < 0:
        raise BadParam(f"n must be nonnegative, got {n}")
    p = _check_p(p)
    picks = _skip_sample(make_rng(seed), n * n, p)
    u, v = np.divmod(picks, n) if n else (picks, picks)
    keep = u < v
    return _from_canonical(n, np.stack([u[keep], v[keep]], axis=1))


@dataclass(frozen=True)
class GenSpec:
    family: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def build(self, base: Graph | None = None) -> Graph:
        return generate(self.family, seed=self.seed, base=base, **self.params)


def generate(family: str, *, seed: int = 0, base: Graph | None = None, **params) -> Graph:
    """Dispatch on a family name; ``subdivision`` subdivides ``base``."""
    try:
        if family == "cycle":
            return gen_cycle(int(params["len"]))
        if family == "path":
            return gen_path(int(params["n"]))
        if family == "complete-bipartite":
            return gen_complete_bipartite(int(params["n1"]), int(params["n2"]))
        if family == "random-bipartite":
            return gen_random_bipartite(int(params["n1"]), int(params["n2"]), float(params["p"]), seed)
        if family == "gnp":
            return gen_gnp(int(params["n"]), float(params["p"]), seed)
        if family == "cycle-blowup":
            return gen_cycle_blowup(int(params["len"]), int(params["class_size"]))
        if family == "subdivision":
            if base is None:
                raise BadParam("subdivision needs a base graph")
            return gen_subdivision(base, int(params["t"]))
    except KeyError as exc:
        raise BadParam(f"family {family!r} needs parameter {exc.args[0]!r}") from None
    raise BadParam(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
