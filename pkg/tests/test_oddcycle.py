import itertools
import random

import pytest
from hypothesis import given, settings

from oddcycles import (INF, TooLarge, brute_force_max_independent_set, brute_force_odd_girth,
                       from_edge_list, gen_complete_bipartite, gen_cycle, is_independent_set,
                       odd_girth, reduce_odd_walk, shortest_odd_cycle)
from oddcycles.errors import GraphError
from oddcycles.oddcycle import is_valid_cycle

from conftest import small_graphs, triangle


def c5_with_chord():
    return from_edge_list(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])


def test_odd_girth_examples():
    assert odd_girth(triangle()) == 3
    assert odd_girth(gen_cycle(9)) == 9
    assert odd_girth(gen_complete_bipartite(3, 3)) == INF
    assert odd_girth(from_edge_list(4, [])) == INF


def test_odd_girth_petersen(petersen):
    assert odd_girth(petersen) == 5
    assert brute_force_odd_girth(petersen) == 5


def test_odd_girth_beyond_one_word():
    # more than 64 vertices forces several source batches
    g = gen_cycle(131)
    assert odd_girth(g) == 131
    two = from_edge_list(140, [(i, (i + 1) % 70) for i in range(70)]
                         + [(70 + i, 70 + (i + 1) % 69) for i in range(69)])
    assert odd_girth(two) == 69


def test_shortest_odd_cycle_examples():
    assert shortest_odd_cycle(triangle()) == [0, 1, 2, 0]
    assert shortest_odd_cycle(gen_cycle(4)) is None
    cyc = shortest_odd_cycle(c5_with_chord())
    assert len(cyc) - 1 == 3
    assert is_valid_cycle(c5_with_chord(), cyc)


def test_chord_example_against_enumeration():
    # every simple cycle of C5 + chord (0,2): lengths 3, 4, 5 -> odd minimum 3
    assert brute_force_odd_girth(c5_with_chord()) == 3


def test_brute_force_odd_girth_examples():
    assert brute_force_odd_girth(gen_cycle(7)) == 7
    assert brute_force_odd_girth(gen_cycle(6)) == INF
    with pytest.raises(TooLarge):
        brute_force_odd_girth(gen_cycle(13))


def test_reduce_splits_repeated_vertex():
    # triangle 0-1-2 glued at 0 to square 0-3-4-5: walk of length 7 through 0 twice
    g = from_edge_list(6, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 0)])
    walk = [0, 1, 2, 0, 3, 4, 5, 0]
    assert reduce_odd_walk(g, walk) == [0, 1, 2, 0]


def test_reduce_splits_chord():
    g = c5_with_chord()
    walk = [0, 1, 2, 3, 4, 0]
    out = reduce_odd_walk(g, walk)
    assert len(out) - 1 == 3 and is_valid_cycle(g, out)
    assert reduce_odd_walk(g, walk, chords=False) == walk


def test_reduce_repeated_edge():
    # 0-1 traversed twice then the triangle: 0,1,0,1,2,0 has length 5
    g = triangle()
    out = reduce_odd_walk(g, [0, 1, 0, 1, 2, 0])
    assert out == [1, 2, 0, 1] or (len(out) == 4 and is_valid_cycle(g, out))


def test_reduce_rejects_bad_walks():
    with pytest.raises(GraphError):
        reduce_odd_walk(gen_cycle(4), [0, 1, 2, 3, 0])
    with pytest.raises(GraphError):
        reduce_odd_walk(triangle(), [0, 1, 2])


def test_mis_examples():
    assert len(brute_force_max_independent_set(gen_cycle(5))) == 2
    assert len(brute_force_max_independent_set(gen_complete_bipartite(3, 3))) == 3
    assert brute_force_max_independent_set(from_edge_list(6, [])) == list(range(6))
    with pytest.raises(TooLarge):
        brute_force_max_independent_set(gen_cycle(25))


@pytest.mark.parametrize("n", range(3, 12))
def test_mis_cycles(n):
    assert len(brute_force_max_independent_set(gen_cycle(n))) == n // 2


def _alpha_by_subsets(g):
    for size in range(g.n, -1, -1):
        for s in itertools.combinations(range(g.n), size):
            if is_independent_set(g, s):
                return size
    return 0


@settings(max_examples=150, deadline=None)
@given(small_graphs(max_n=9))
def test_mis_matches_subset_enumeration(g):
    s = brute_force_max_independent_set(g)
    assert is_independent_set(g, s)
    assert len(s) == _alpha_by_subsets(g)


@settings(max_examples=300, deadline=None)
@given(small_graphs(max_n=9))
def test_odd_girth_matches_enumeration(g):
    assert odd_girth(g) == brute_force_odd_girth(g)


@settings(max_examples=200, deadline=None)
@given(small_graphs(max_n=10))
def test_witness_is_simple_odd_and_shortest(g):
    girth = odd_girth(g)
    cyc = shortest_odd_cycle(g)
    if girth == INF:
        assert cyc is None
    else:
        assert is_valid_cycle(g, cyc)
        assert len(cyc) - 1 == girth and girth % 2 == 1


def test_odd_girth_monotone_under_edge_deletion():
    rng = random.Random(7)
    for _ in range(150):
        n = rng.randint(3, 10)
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.4]
        if not edges:
            continue
        g = from_edge_list(n, edges)
        before = odd_girth(g)
        drop = rng.randrange(len(edges))
        after = odd_girth(from_edge_list(n, edges[:drop] + edges[drop + 1:]))
        assert after >= before
