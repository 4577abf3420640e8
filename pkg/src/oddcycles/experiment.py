"""Repeated-trial experiments that compare measured sizes against the analytic bounds.

Trial ``i`` runs with seed ``mix(master_seed, i)``, so any row can be replayed
alone. Rows hold only seed-determined values; wall-clock times are kept in a
separate ``timings`` list so that reruns reproduce ``rows`` exactly.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .bipartize import DEFAULT_MAX_ATTEMPTS, bipartize, removal_bound
from .errors import BadParam, GraphError
from .generators import GenSpec
from .graph import Graph, connected_components, parse_graph
from .indset import layered_greedy_independent_set, size_guarantee
from .partition import PartitionParams, cross_edge_mask, guard_bound, sample_partition, validate_delta
from .rng import PRNG_ID, check_seed, mix

SCHEMA = 1
MODES = ("partition", "bipartize", "indep-set")
FORMATS = ("json", "csv", "text")

# measured column and whether the analytic bound caps it from above
_METRIC = {"partition": ("guards", "upper"), "bipartize": ("removed", "upper"),
           "indep-set": ("size", "lower")}


@dataclass(frozen=True)
class ExperimentConfig:
    mode: str
    trials: int = 1
    seed: int = 0
    delta: Optional[int] = None
    k: Optional[int] = None
    input: Optional[str] = None
    gen: Optional[GenSpec] = None
    max_attempts: int = DEFAULT_MAX_ATTEMPTS
    jobs: int = 1

    def __post_init__(self):
        if self.mode not in MODES:
            raise BadParam(f"mode must be one of {MODES}, got {self.mode!r}")
        if not isinstance(self.trials, int) or self.trials < 1:
            raise BadParam(f"trials must be a positive integer, got {self.trials!r}")
        check_seed(self.seed)
        if self.mode == "partition":
            if self.delta is None:
                raise BadParam("partition mode needs delta")
            validate_delta(self.delta)
        elif self.k is None:
            raise BadParam(f"{self.mode} mode needs k")
        if (self.input is None) == (self.gen is None):
            raise BadParam("give exactly one graph source: an input file or a generator spec")
        if self.jobs < 1:
            raise BadParam(f"jobs must be positive, got {self.jobs}")

    def load_graph(self) -> Graph:
        return parse_graph(self.input) if self.input is not None else self.gen.build()

    def echo(self) -> dict:
        out = {"mode": self.mode, "trials": self.trials, "seed": self.seed}
        if self.delta is not None:
            out["delta"] = self.delta
        if self.k is not None:
            out["k"] = self.k
        if self.mode == "bipartize":
            out["max_attempts"] = self.max_attempts
        if self.input is not None:
            out["input"] = self.input
        else:
            out["gen"] = {"family": self.gen.family, "params": dict(self.gen.params), "seed": self.gen.seed}
        return out


@dataclass
class ExperimentReport:
    config: dict
    graph: dict
    rows: list[dict]
    aggregates: dict
    bound: dict
    prng: str = PRNG_ID
    timings: list[float] = field(default_factory=list)
    schema: int = SCHEMA

    @property
    def bound_satisfied(self) -> bool:
        return bool(self.bound["satisfied"])

    def to_dict(self) -> dict:
        d = asdict(self)
        return {"schema": d.pop("schema"), **d}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(self.rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(self.rows)
        return buf.getvalue()

    def to_text(self) -> str:
        b = self.bound
        lines = [f"mode={self.config['mode']} n={self.graph['n']} m={self.graph['m']} "
                 f"trials={len(self.rows)} prng={self.prng}"]
        for name, agg in self.aggregates.items():
            lines.append(f"  {name:<12} mean={agg['mean']:.4f} std={agg['std']:.4f} "
                         f"min={agg['min']} max={agg['max']}")
        op = "<=" if b["kind"] == "upper" else ">="
        lines.append(f"  bound: {b['metric']} {op} {b['value']:.4f} (margin {b['margin']:.4f}) "
                     f"-> {'satisfied' if b['satisfied'] else 'VIOLATED'}"
                     + ("" if b["meaningful"] else " [bound not meaningful for this input]"))
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json() + "\n"
        if fmt == "csv":
            return self.to_csv()
        if fmt == "text":
            return self.to_text()
        raise BadParam(f"format must be one of {FORMATS}, got {fmt!r}")


def run_trial(g: Graph, config: ExperimentConfig, index: int) -> dict:
    seed = mix(config.seed, index)
    row = {"trial": index, "seed": seed}
    try:
        if config.mode == "partition":
            p = sample_partition(g, PartitionParams(config.delta, seed))
            row.update(radius=p.radius, clusters=p.cluster_count,
                       guards=int(p.guard_mask().sum()), cross_edges=int(cross_edge_mask(g, p).sum()))
        elif config.mode == "bipartize":
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                res = bipartize(g, config.k, seed, max_attempts=config.max_attempts)
            row.update(removed=len(res.removed), attempts=res.attempts,
                       cap_exceeded=int(res.cap_exceeded))
        else:
            res = layered_greedy_independent_set(g, config.k)
            row.update(size=res.size, guarantee=res.guarantee, K=res.K)
    except GraphError as exc:
        exc.trial = index
        if exc.args:
            exc.args = (f"trial {index}: {exc.args[0]}",) + exc.args[1:]
        raise
    return row


_worker_state: dict = {}


def _init_worker(g: Graph, config: ExperimentConfig):
    _worker_state["g"] = g
    _worker_state["config"] = config


def _timed_trial(index: int) -> tuple[dict, float]:
    start = time.perf_counter()
    row = run_trial(_worker_state["g"], _worker_state["config"], index)
    return row, time.perf_counter() - start


def _aggregate(rows: list[dict]) -> dict:
    out = {}
    for name in rows[0]:
        if name in ("trial", "seed"):
            continue
        vals = np.array([r[name] for r in rows], dtype=float)
        out[name] = {
            "mean": float(vals.mean()),
            "std": float(vals.std(ddof=1)) if len(vals) > 1 else 0.0,
            "min": int(vals.min()) if vals.min().is_integer() else float(vals.min()),
            "max": int(vals.max()) if vals.max().is_integer() else float(vals.max()),
        }
    return out


def _bound(config: ExperimentConfig, g: Graph, connected: bool, aggregates: dict) -> dict:
    metric, kind = _METRIC[config.mode]
    agg = aggregates[metric]
    if config.mode == "partition":
        value = max(guard_bound(g.n, config.delta), 0.0)
        meaningful = connected and 4 * g.n > config.delta
    elif config.mode == "bipartize":
        rb = removal_bound(max(g.n, 1), config.k)
        value = max(rb.bound, 0.0)
        meaningful = connected and g.n > rb.gamma
    else:
        value = float(size_guarantee(g.n, config.k))
        meaningful = True
    if kind == "upper":
        margin = 3 * agg["std"] / math.sqrt(config.trials)
        satisfied = agg["mean"] <= value + margin
    else:
        margin = 0.0
        satisfied = agg["min"] >= value
    return {"metric": metric, "kind": kind, "value": value, "margin": margin,
            "satisfied": bool(satisfied), "meaningful": bool(meaningful)}


def run_experiment(config: ExperimentConfig, graph: Graph | None = None) -> ExperimentReport:
    g = graph if graph is not None else config.load_graph()
    if g.n == 0:
        raise BadParam("experiments need a nonempty graph")
    indices = range(config.trials)
    if config.jobs > 1 and config.trials > 1:
        with ProcessPoolExecutor(config.jobs, initializer=_init_worker, initargs=(g, config)) as pool:
            results = list(pool.map(_timed_trial, indices, chunksize=max(1, config.trials // (4 * config.jobs))))
    else:
        _init_worker(g, config)
        results = [_timed_trial(i) for i in indices]
    rows = [r for r, _ in results]
    timings = [t for _, t in results]
    connected = len(connected_components(g)) == 1
    aggregates = _aggregate(rows)
    return ExperimentReport(
        config=config.echo(),
        graph={"n": g.n, "m": g.m, "connected": connected},
        rows=rows,
        aggregates=aggregates,
        bound=_bound(config, g, connected, aggregates),
        timings=timings,
    )
