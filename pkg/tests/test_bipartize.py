import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oddcycles import (AttemptCapExceeded, EpsTooSmall, GirthViolation, KTooSmall, bipartize,
                       bipartize_by_fraction, connected_components, from_edge_list, gen_cycle,
                       gen_gnp, gen_path, gen_random_bipartite, gen_subdivision, is_bipartite,
                       odd_girth)
from oddcycles.bipartize import fraction_bound, fraction_to_k, remaining_graph, removal_bound
from oddcycles.partition import PartitionParams, guards, sample_partition
from oddcycles.rng import mix

from conftest import triangle


@pytest.mark.parametrize("n, k, expected", [
    (100, 2, 100 * math.log(100)),        # 460.517...
    (100, 5, 50 * math.log(50)),          # 195.60...
    (10**6, 100, 2 * 10**4 * math.log(2 * 10**4)),  # 198070.7...
])
def test_removal_bound_values(n, k, expected):
    rb = removal_bound(n, k)
    assert rb.bound == pytest.approx(expected, rel=1e-12)
    assert rb.delta == 4 * (k // 2)


def test_removal_bound_literals():
    assert removal_bound(100, 2).bound == pytest.approx(460.517, abs=1e-3)
    assert removal_bound(100, 5).bound == pytest.approx(195.601, abs=1e-3)
    # 20000 ln 20000 = 198069.75...
    assert removal_bound(10**6, 100).bound == pytest.approx(198069.751, abs=1e-3)


@pytest.mark.parametrize("k", [0, 1, -3])
def test_k_too_small(k):
    with pytest.raises(KTooSmall):
        bipartize(gen_cycle(9), k)


def test_even_cycle_needs_nothing_beyond_guards():
    g = gen_cycle(4)
    for seed in range(50):
        res = bipartize(g, 2, seed)
        rest, _ = remaining_graph(g, res.removed)
        assert is_bipartite(rest)


def test_long_odd_cycle_always_loses_a_vertex():
    g = gen_cycle(7)
    for seed in range(200):
        res = bipartize(g, 2, seed)
        assert len(res.removed) >= 1
        assert is_bipartite(remaining_graph(g, res.removed)[0])
        assert len(res.removed) <= res.bounds.target


def test_triangle_with_verification():
    with pytest.raises(GirthViolation) as info:
        bipartize(triangle(), 2, verify_girth=True)
    assert info.value.length == 3


def test_triangle_without_verification_reports_in_cluster_cycle():
    # radius 2 puts the whole triangle in one cluster with two vertices on layer 1
    raised = 0
    for seed in range(40):
        try:
            bipartize(triangle(), 2, seed)
        except GirthViolation as exc:
            raised += 1
            assert exc.length == 3
            assert sorted(exc.cycle[:-1]) == [0, 1, 2]
    assert raised > 0


def test_empty_graph():
    res = bipartize(from_edge_list(0, []), 4)
    assert res.removed == [] and res.attempts == 0


def test_fraction_variant():
    assert fraction_to_k(100, 0.4) == 19
    with pytest.raises(EpsTooSmall):
        fraction_to_k(100, 0.1)
    assert fraction_bound(0.5) == pytest.approx(10 * math.log(10))
    assert fraction_bound(0.5) == pytest.approx(23.0259, abs=1e-4)
    g = gen_cycle(101)
    res = bipartize_by_fraction(g, 0.4, seed=3, verify_girth=True)
    assert res.bounds.k == 19
    assert res.eps_bound == pytest.approx(12.5 * math.log(12.5))
    assert is_bipartite(remaining_graph(g, res.removed)[0])


def test_fraction_variant_checks_girth():
    g = from_edge_list(100, [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(GirthViolation):
        bipartize_by_fraction(g, 0.5, verify_girth=True)


def _spider(legs=12, length=3):
    edges = []
    nxt = 1
    for _ in range(legs):
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev, nxt = nxt, nxt + 1
    return from_edge_list(nxt, edges)


def test_attempt_cap_warning():
    g = _spider()
    target = removal_bound(g.n, 6).target
    seed = next(s for s in range(5000)
                if len(guards(sample_partition(g, PartitionParams(12, s)))) > target)
    with pytest.warns(AttemptCapExceeded):
        res = bipartize(g, 6, seed, max_attempts=1)
    assert res.cap_exceeded and res.attempts == 1
    assert len(res.removed) > target
    # the returned set is still a valid bipartization
    assert is_bipartite(remaining_graph(g, res.removed)[0])
    # with more attempts the chain moves on to an acceptable sample
    res = bipartize(g, 6, seed)
    assert not res.cap_exceeded and res.attempts >= 2
    assert len(res.removed) <= target


def test_reseed_chain():
    g = _spider()
    target = removal_bound(g.n, 6).target
    seed = next(s for s in range(5000)
                if len(guards(sample_partition(g, PartitionParams(12, s)))) > target)
    res = bipartize(g, 6, seed)
    expected = seed
    for _ in range(res.attempts - 1):
        expected = mix(expected, 0)
    assert res.partition_used == sample_partition(g, PartitionParams(12, expected))


def _certified_graph(draw):
    base = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(3, 14))
    t = draw(st.integers(1, 3))
    g = gen_subdivision(gen_gnp(n, 0.35, base), t)
    return g, t


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_subdivided_graphs_bipartize(data):
    g, t = _certified_graph(data.draw)
    # a subdivided odd cycle of length L has length L(2t+1) >= 3(2t+1) = 6t + 3
    k = 3 * t
    girth = odd_girth(g)
    assert girth == math.inf or girth > 2 * k + 1
    seed = data.draw(st.integers(0, 2**64 - 1))
    res = bipartize(g, k, seed)
    rest, old_ids = remaining_graph(g, res.removed)
    assert is_bipartite(rest)
    p = res.partition_used
    assert set(res.removed) == set(guards(p))
    # the returned colouring is proper on G - X and follows distance parity in each cluster
    col = np.array(res.coloring)
    assert np.all(col[res.removed] == -1) if res.removed else True
    kept = col >= 0
    for u, v in g.edge_list():
        if kept[u] and kept[v]:
            assert col[u] != col[v]
            assert p.assignment[u] == p.assignment[v]
    assert np.array_equal(col[kept], p.dist_to_center[kept] & 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.floats(0.05, 0.6), st.integers(0, 2**32))
def test_bipartite_inputs_coloring_consistent_per_component(n1, n2, p, seed):
    g = gen_random_bipartite(n1, n2, p, seed)
    res = bipartize(g, 2, seed)
    rest, old_ids = remaining_graph(g, res.removed)
    col = np.array(res.coloring)
    for comp in connected_components(rest):
        ids = old_ids[comp]
        # within one surviving component the colouring agrees with the side, up to a swap
        side = (ids >= n1).astype(int)
        flips = col[ids] ^ side
        assert len(set(flips.tolist())) == 1


def test_path_is_left_alone_when_short():
    g = gen_path(3)
    res = bipartize(g, 8, 0)
    # delta = 16, radius >= 4 covers the whole path in one cluster
    assert res.removed == []
    assert res.attempts == 1
