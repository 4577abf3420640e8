import csv
import io
import json
import math

import pytest

from oddcycles import BadParam, GirthViolation, GraphError, gen_path, is_independent_set
from oddcycles.experiment import ExperimentConfig, run_experiment, run_trial
from oddcycles.generators import GenSpec
from oddcycles.graph import write_graph
from oddcycles.indset import layered_greedy_independent_set
from oddcycles.rng import mix

P9 = GenSpec("path", {"n": 9})


def test_trials_must_be_positive():
    with pytest.raises(BadParam):
        ExperimentConfig("partition", trials=0, delta=4, gen=P9)


@pytest.mark.parametrize("kwargs", [
    dict(mode="partition", gen=P9),                     # no delta
    dict(mode="partition", delta=6, gen=P9),            # delta not a multiple of 4
    dict(mode="indep-set", gen=P9),                     # no k
    dict(mode="colouring", k=1, gen=P9),
    dict(mode="indep-set", k=1),                        # no graph
    dict(mode="indep-set", k=1, gen=P9, input="x"),     # two graphs
    dict(mode="indep-set", k=1, gen=P9, jobs=0),
])
def test_bad_configs(kwargs):
    with pytest.raises(GraphError):
        ExperimentConfig(**kwargs)


def test_partition_on_p9():
    report = run_experiment(ExperimentConfig("partition", trials=1000, seed=7, delta=4, gen=P9))
    assert len(report.rows) == 1000
    assert report.bound["value"] == pytest.approx(9 * math.log(9))
    agg = report.aggregates["guards"]
    assert agg["mean"] <= report.bound["value"] + 3 * agg["std"] / math.sqrt(1000)
    assert report.bound_satisfied and report.bound["meaningful"]
    assert [r["seed"] for r in report.rows[:3]] == [mix(7, 0), mix(7, 1), mix(7, 2)]


def test_indep_set_on_blowup():
    cfg = ExperimentConfig("indep-set", trials=1, k=1, gen=GenSpec("cycle-blowup", {"len": 5, "class_size": 200}))
    report = run_experiment(cfg)
    assert report.bound["value"] == 30
    assert report.rows[0]["size"] >= 30 and report.bound_satisfied
    res = layered_greedy_independent_set(cfg.load_graph(), 1)
    assert is_independent_set(cfg.load_graph(), res.independent_set)


def test_bipartize_mode():
    cfg = ExperimentConfig("bipartize", trials=20, k=2, gen=GenSpec("cycle", {"len": 31}), seed=5)
    report = run_experiment(cfg)
    assert all(r["removed"] >= 1 for r in report.rows)
    assert report.bound_satisfied


def test_rows_reproducible_and_replayable():
    cfg = ExperimentConfig("partition", trials=50, seed=99, delta=8,
                           gen=GenSpec("cycle-blowup", {"len": 5, "class_size": 3}))
    a, b = run_experiment(cfg), run_experiment(cfg)
    assert a.rows == b.rows
    assert a.aggregates == b.aggregates
    g = cfg.load_graph()
    assert run_trial(g, cfg, 37) == a.rows[37]


def test_parallel_rows_match_serial():
    spec = GenSpec("cycle-blowup", {"len": 9, "class_size": 10})
    serial = run_experiment(ExperimentConfig("partition", trials=40, seed=3, delta=8, gen=spec))
    parallel = run_experiment(ExperimentConfig("partition", trials=40, seed=3, delta=8, gen=spec, jobs=2))
    assert serial.rows == parallel.rows


def test_csv_and_json_agree():
    report = run_experiment(ExperimentConfig("partition", trials=30, seed=1, delta=4, gen=P9))
    from_json = json.loads(report.to_json())["rows"]
    from_csv = [{k: int(v) for k, v in row.items()} for row in csv.DictReader(io.StringIO(report.to_csv()))]
    assert from_json == from_csv == report.rows


def test_report_shape(tmp_path):
    path = tmp_path / "p9.txt"
    write_graph(gen_path(9), path)
    report = run_experiment(ExperimentConfig("partition", trials=5, delta=4, input=str(path)))
    d = report.to_dict()
    assert set(d) == {"schema", "config", "graph", "rows", "aggregates", "bound", "prng", "timings"}
    assert d["config"]["input"] == str(path)
    assert len(d["timings"]) == 5
    # aggregates are recomputable from rows
    guards = [r["guards"] for r in report.rows]
    assert d["aggregates"]["guards"]["min"] == min(guards)
    assert d["aggregates"]["guards"]["mean"] == pytest.approx(sum(guards) / 5)
    assert "bound" in report.render("text")


def test_errors_name_the_trial():
    cfg = ExperimentConfig("indep-set", trials=3, k=1, gen=GenSpec("cycle-blowup", {"len": 3, "class_size": 10}))
    with pytest.raises(GirthViolation) as info:
        run_experiment(cfg)
    assert info.value.trial == 0
    assert "trial 0" in str(info.value)
