import random
from itertools import combinations

import pytest

from helly import geometry
from helly.errors import ValidationError
from helly.graphs import (Graph, ball, ball_star, distances, interval,
                          is_convex, is_gated, is_isometric_embedding,
                          is_metric_triangle, is_pseudo_modular, quasi_median,
                          weak_modularity)

from conftest import random_graphs


def test_distances_examples():
    p3 = geometry.path_graph(3)
    assert p3.dist(0, 2) == 2
    k4 = geometry.complete_graph(4)
    assert all(k4.dist(u, v) == 1 for u in range(4) for v in range(4) if u != v)
    c6 = geometry.cycle_graph(6)
    assert all(c6.dist(i, (i + 3) % 6) == 3 for i in range(6))


def test_distance_matrix_invariants(corpus):
    for name, g in corpus.items():
        if g.n <= 30:
            distances(g).validate(g)


def test_constructor_rejects_bad_input():
    with pytest.raises(ValidationError):
        Graph(4, [(0, 1), (2, 3)])  # disconnected
    with pytest.raises(ValidationError):
        Graph(2, [(0, 0)])  # loop
    with pytest.raises(ValidationError):
        Graph(2, [(0, 5)])  # out of range


def test_interval_examples():
    assert interval(geometry.cycle_graph(4), 0, 2) == (0, 1, 2, 3)
    assert interval(geometry.path_graph(5), 0, 4) == (0, 1, 2, 3, 4)
    assert interval(geometry.cycle_graph(5), 0, 2) == (0, 1, 2)


def test_interval_endpoints_and_edges(corpus):
    rng = random.Random(5)
    for g in [corpus["king4x4"], corpus["c7"], corpus["rand9b"], corpus["sun3"]]:
        for _ in range(30):
            u, v = rng.randrange(g.n), rng.randrange(g.n)
            iv = interval(g, u, v)
            assert u in iv and v in iv
            if g.dist(u, v) == 1:
                assert len(iv) == 2


def test_ball_examples():
    c6 = geometry.cycle_graph(6)
    assert ball(c6, [0], 1) == (0, 1, 5)
    assert ball_star(c6, [0, 3], 2) == (1, 2, 4, 5)
    assert ball(c6, [2], c6.diameter()) == tuple(range(6))
    assert ball_star(c6, [0], 0) == (0,)
    assert ball_star(c6, [0, 1], 0) == ()


def test_gated_examples():
    # a multi-vertex proper subset of a complete graph is never gated: an
    # outside vertex would need its gate on the geodesic to every target
    k4 = geometry.complete_graph(4)
    ok, witness = is_gated(k4, [0, 1, 2])
    assert not ok and witness == 3
    assert is_gated(k4, [0])[0] and is_gated(k4, list(range(4)))[0]
    c4 = geometry.cycle_graph(4)
    ok, gates = is_gated(c4, [0, 1])
    assert ok and gates == {2: 1, 3: 0}
    ok, witness = is_gated(geometry.cycle_graph(6), [0, 3])
    assert not ok and witness == 1
    # subtrees of trees are gated
    tree = Graph(6, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)])
    assert is_gated(tree, [1, 3, 4])[0]


def test_gated_implies_convex(corpus):
    rng = random.Random(11)
    for g in [corpus["king4x4"], corpus["c6"], corpus["tree20"], corpus["rand10c"]]:
        for _ in range(25):
            size = rng.randint(1, max(2, g.n // 3))
            subset = rng.sample(range(g.n), size)
            ok, _ = is_gated(g, subset)
            if ok:
                assert is_convex(g, subset)


def test_convexity_examples():
    assert is_convex(geometry.cycle_graph(5), [3])
    assert not is_convex(geometry.cycle_graph(4), [0, 2])


def test_balls_around_convex_sets_convex_in_systolic_graphs():
    # systolic members of the corpus: triangular-grid patches and trees
    for g in [geometry.t3_patch(2)[0], geometry.random_tree(14, 3), geometry.complete_graph(5)]:
        for v in range(g.n):
            for r in range(g.diameter() + 1):
                assert is_convex(g, ball(g, [v], r))


def test_weak_modularity_examples():
    rep = weak_modularity(geometry.cycle_graph(5))
    assert not rep.tc_holds and rep.tc_witness == (0, 2, 3)
    assert weak_modularity(geometry.cycle_graph(4)).holds
    assert weak_modularity(geometry.sun3()).holds


def test_pseudo_modular_examples():
    assert is_pseudo_modular(geometry.random_tree(12, 9))
    assert not is_pseudo_modular(geometry.cycle_graph(6))
    assert is_pseudo_modular(geometry.king_graph(3, 3))


def test_quasi_median_examples():
    tree = geometry.random_tree(12, 2)
    rng = random.Random(0)
    for _ in range(10):
        x, y, z = (rng.randrange(12) for _ in range(3))
        assert quasi_median(tree, x, y, z).size == 0
    qm = quasi_median(geometry.cycle_graph(6), 0, 2, 4)
    assert (qm.v1, qm.v2, qm.v3, qm.size) == (0, 2, 4, 2)
    q3 = geometry.hypercube_graph(3)
    for x, y, z in combinations(range(8), 3):
        assert quasi_median(q3, x, y, z).size == 0


def test_quasi_median_is_metric_triangle_and_equilateral_when_weakly_modular(corpus):
    rng = random.Random(3)
    for g in [corpus["sun3"], corpus["king4x4"], corpus["c5"], corpus["house"]]:
        wm = weak_modularity(g).holds
        for _ in range(40):
            x, y, z = (rng.randrange(g.n) for _ in range(3))
            qm = quasi_median(g, x, y, z)
            v1, v2, v3 = qm.vertices()
            assert is_metric_triangle(g, v1, v2, v3)
            # the defining metric equalities of a quasi-median
            assert g.dist(x, y) == g.dist(x, v1) + g.dist(v1, v2) + g.dist(v2, y)
            assert g.dist(y, z) == g.dist(y, v2) + g.dist(v2, v3) + g.dist(v3, z)
            assert g.dist(z, x) == g.dist(z, v3) + g.dist(v3, v1) + g.dist(v1, x)
            if wm:
                assert g.dist(v1, v2) == g.dist(v2, v3) == g.dist(v3, v1) == qm.size


def test_isometric_embedding():
    c6 = geometry.cycle_graph(6)
    assert is_isometric_embedding(c6, c6, list(range(6)))
    q3 = geometry.hypercube_graph(3)
    # walk around a 6-cycle of the cube: 000,100,110,111,011,001
    assert is_isometric_embedding(c6, q3, [0, 1, 3, 7, 6, 4])
    # no injection embeds C5 isometrically into C6 (parity obstruction)
    from itertools import permutations
    c5 = geometry.cycle_graph(5)
    c6_target = geometry.cycle_graph(6)
    assert not any(is_isometric_embedding(c5, c6_target, mapping)
                   for mapping in permutations(range(6), 5))


def test_json_round_trip_and_dot(corpus):
    g = corpus["sun3"]
    text = g.to_json()
    assert Graph.from_json(text) == g
    assert text == Graph.from_json(text).to_json()
    dot = g.to_dot()
    assert dot.startswith("graph G {") and "0 -- 1" in dot


def test_random_graph_interval_properties():
    for g in random_graphs(25, 9, seed=77):
        for u in range(g.n):
            for v in range(g.n):
                iv = interval(g, u, v)
                assert u in iv and v in iv
