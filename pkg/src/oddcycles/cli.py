"""Command-line entry point: ``oddcycles <subcommand> ...``.

Exit codes: 0 success, 1 bad input, 2 usage error, 3 an experiment's bound
check failed, 4 a girth/independence violation or a failed verification.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from .bipartize import DEFAULT_MAX_ATTEMPTS, bipartize, bipartize_by_fraction, remaining_graph
from .errors import GirthViolation, GraphError
from .experiment import FORMATS, MODES, ExperimentConfig, run_experiment
from .generators import FAMILIES, GenSpec
from .graph import format_graph, independence_violation, is_bipartite, parse_graph
from .indset import layered_greedy_independent_set
from .oddcycle import INF, odd_girth, shortest_odd_cycle
from .partition import PartitionParams, cross_edge_mask, guard_bound, sample_partition
from .rng import PRNG_ID, check_seed, mix

EXIT_BAD_INPUT = 1
EXIT_BOUND = 3
EXIT_VIOLATION = 4

_GEN_PARAMS = {"len": int, "class_size": int, "n": int, "n1": int, "n2": int, "p": float, "t": int}


def _seed(text: str) -> int:
    try:
        return check_seed(int(text, 0))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(text: str, output: str | None):
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _gen_spec(args) -> GenSpec:
    params = {k: getattr(args, k) for k in _GEN_PARAMS if getattr(args, k, None) is not None}
    return GenSpec(args.family, params, args.seed)


def _add_gen_params(p):
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--len", type=int)
    p.add_argument("--class-size", dest="class_size", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--n1", type=int)
    p.add_argument("--n2", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--t", type=int)


def cmd_gen(args):
    if args.family is None:
        raise GraphError("gen needs --family")
    base = parse_graph(args.input) if args.input else None
    g = _gen_spec(args).build(base)
    _emit(format_graph(g), args.output)
    return 0


def cmd_odd_girth(args):
    g = parse_graph(args.input)
    girth = odd_girth(g)
    cycle = shortest_odd_cycle(g) if args.witness else None
    if args.format == "json":
        out = {"odd_girth": None if girth == INF else girth}
        if args.witness:
            out["witness"] = cycle
        _emit(json.dumps(out) + "\n", args.output)
    else:
        text = ("inf" if girth == INF else str(girth)) + "\n"
        if args.witness and cycle is not None:
            text += " ".join(map(str, cycle)) + "\n"
        _emit(text, args.output)
    return 0


def cmd_partition(args):
    g = parse_graph(args.input)
    bound = guard_bound(g.n, args.delta)
    rows = []
    for i in range(args.trials):
        seed = mix(args.seed, i)
        p = sample_partition(g, PartitionParams(args.delta, seed))
        rows.append({"trial": i, "seed": seed, "radius": p.radius, "clusters": p.cluster_count,
                     "guards": int(p.guard_mask().sum()), "cross_edges": int(cross_edge_mask(g, p).sum()),
                     "bound": max(bound, 0.0), "bound_meaningful": int(4 * g.n > args.delta)})
    if args.format == "csv":
        lines = [",".join(rows[0])] + [",".join(str(v) for v in r.values()) for r in rows]
        _emit("\n".join(lines) + "\n", args.output)
    else:
        _emit("".join(json.dumps(r) + "\n" for r in rows), args.output)
    return 0


def _violation(exc: GirthViolation) -> int:
    sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc),
                                 "cycle": exc.cycle, "length": exc.length}) + "\n")
    return EXIT_VIOLATION


def cmd_bipartize(args):
    g = parse_graph(args.input)
    try:
        with warnings.catch_warnings(record=True):
            warnings.simplefilter("always")
            if args.eps is not None:
                res = bipartize_by_fraction(g, args.eps, args.seed, verify_girth=args.verify_girth,
                                            max_attempts=args.max_attempts)
            else:
                if args.k is None:
                    raise GraphError("bipartize needs --k or --eps")
                res = bipartize(g, args.k, args.seed, verify_girth=args.verify_girth,
                                max_attempts=args.max_attempts)
    except GirthViolation as exc:
        return _violation(exc)
    out = {"removed": res.removed, "attempts": res.attempts, "bound": res.bound,
           "k": res.bounds.k, "delta": res.bounds.delta, "cap_exceeded": res.cap_exceeded,
           "prng": PRNG_ID}
    if res.eps_bound is not None:
        out["eps_bound"] = res.eps_bound
    if args.coloring:
        out["coloring"] = res.coloring
    _emit(json.dumps(out) + "\n", args.output)
    return 0


def cmd_indep_set(args):
    g = parse_graph(args.input)
    try:
        res = layered_greedy_independent_set(g, args.k, trace=args.trace, verify_girth=args.verify_girth)
    except GirthViolation as exc:
        return _violation(exc)
    out = {"size": res.size, "guarantee": res.guarantee, "K": res.K, "set": res.independent_set}
    if args.trace:
        out["rounds"] = [{"root": r.root, "layer": r.layer, "sizes": r.sizes,
                          "harvested": r.harvested, "deleted": r.deleted} for r in res.trace.rounds]
    _emit(json.dumps(out) + "\n", args.output)
    return 0


def cmd_experiment(args):
    if args.input is None and args.family is None:
        raise GraphError("experiment needs --input or --family")
    config = ExperimentConfig(
        mode=args.mode, trials=args.trials, seed=args.seed, delta=args.delta, k=args.k,
        input=args.input if args.family is None else None,
        gen=_gen_spec(args) if args.family is not None else None,
        max_attempts=args.max_attempts, jobs=args.jobs)
    base = parse_graph(args.input) if args.family is not None and args.input else None
    graph = config.gen.build(base) if config.gen is not None else None
    report = run_experiment(config, graph)
    _emit(report.render(args.format), args.output)
    return 0 if report.bound_satisfied else EXIT_BOUND


def cmd_verify(args):
    g = parse_graph(args.input)
    out = {"n": g.n, "m": g.m, "ok": True}
    if args.girth:
        girth = odd_girth(g)
        out["odd_girth"] = None if girth == INF else girth
        if args.k is not None:
            out["girth_exceeds_2k_plus_1"] = girth > 2 * args.k + 1
            out["ok"] &= out["girth_exceeds_2k_plus_1"]
    if args.result:
        with open(args.result, encoding="utf-8") as fh:
            result = json.load(fh)
        if "set" in result:
            edge = independence_violation(g, result["set"])
            out["independent"] = edge is None
            if edge is not None:
                out["violating_edge"] = list(edge)
            out["ok"] &= edge is None
        if "removed" in result:
            rest, old_ids = remaining_graph(g, result["removed"])
            check = is_bipartite(rest)
            out["bipartite_after_removal"] = bool(check)
            if not check:
                out["odd_cycle"] = [int(old_ids[v]) for v in check.odd_cycle]
            out["ok"] &= bool(check)
    _emit(json.dumps(out) + "\n", args.output)
    return 0 if out["ok"] else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oddcycles", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--output", "-o", help="write here instead of stdout")
        return p

    p = command("gen", cmd_gen, "generate a graph family")
    _add_gen_params(p)
    p.add_argument("--input", help="base graph for --family subdivision")
    p.add_argument("--seed", type=_seed, default=0)

    p = command("odd-girth", cmd_odd_girth, "shortest odd cycle length")
    p.add_argument("--input", required=True)
    p.add_argument("--witness", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = command("partition", cmd_partition, "sample random partitions")
    p.add_argument("--input", required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = command("bipartize", cmd_bipartize, "delete vertices to make the graph bipartite")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--eps", type=float)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--verify-girth", action="store_true")
    p.add_argument("--max-attempts", type=int, default=DEFAULT_MAX_ATTEMPTS)
    p.add_argument("--coloring", action="store_true", help="include the two-colouring")

    p = command("indep-set", cmd_indep_set, "layered greedy independent set")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--verify-girth", action="store_true")
    p.add_argument("--trace", action="store_true")

    p = command("experiment", cmd_experiment, "repeated trials against the analytic bound")
    p.add_argument("--mode", choices=MODES, required=True)
    p.add_argument("--input", help="graph file (or the base graph for --family subdivision)")
    _add_gen_params(p)
    p.add_argument("--delta", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--max-attempts", type=int, default=DEFAULT_MAX_ATTEMPTS)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=FORMATS, default="json")

    p = command("verify", cmd_verify, "check a graph and optionally a result file")
    p.add_argument("--input", required=True)
    p.add_argument("--result", help="JSON from indep-set or bipartize")
    p.add_argument("--girth", action="store_true", help="also compute the odd girth")
    p.add_argument("--k", type=int, help="with --girth, require odd girth > 2k+1")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
