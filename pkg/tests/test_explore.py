from __future__ import annotations

from itertools import permutations

import pytest

from bistellar.exactgeom import GeometryError, PointConfiguration
from bistellar.explore import all_triangulations_bruteforce, component_of, enumerate_flip_graph, export_graph
from bistellar.orientation import FaceComplex, triangulation_to_orientation
from bistellar.triangulation import Triangulation, prism_config, pulling_triangulation, simplex_config, staircase

HEXAGON = PointConfiguration(2, ((2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)))


def test_hexagon_fourteen():
    g = enumerate_flip_graph(pulling_triangulation(HEXAGON))
    assert len(g.nodes) == 14 and len(g.components()) == 1 and g.complete
    assert set(g.nodes) == all_triangulations_bruteforce(HEXAGON)


def test_small_brute_force_counts():
    four = PointConfiguration(2, ((0, 0), (1, 0), (0, 1), (1, 1)))
    assert len(all_triangulations_bruteforce(four)) == 2
    inner = PointConfiguration(2, ((0, 0), (3, 0), (0, 3), (1, 1)))
    assert len(all_triangulations_bruteforce(inner)) == 2
    sq = PointConfiguration(2, ((0, 0), (2, 0), (0, 2), (2, 2), (1, 1)))
    g = enumerate_flip_graph(pulling_triangulation(sq))
    assert set(g.nodes) == all_triangulations_bruteforce(sq) and len(g.nodes) == 3


def test_single_simplex():
    t = Triangulation(simplex_config(2), [(0, 1, 2)])
    g = enumerate_flip_graph(t)
    assert len(g.nodes) == 1 and not g.edges


@pytest.mark.parametrize("d", [1, 2, 3])
def test_prism_graph_is_permutohedron(d):
    g = enumerate_flip_graph(staircase(d, list(range(d + 1))))
    assert len(g.nodes) == len(list(permutations(range(d + 1))))
    cx = FaceComplex([tuple(range(d + 1))])
    perm = [triangulation_to_orientation(t, cx).order_on(tuple(range(d + 1))) for t in g.nodes]
    got = {frozenset((perm[i], perm[j])) for i, j, _ in g.edges}
    want = set()
    for p in perm:
        for k in range(d):
            q = list(p)
            q[k], q[k + 1] = q[k + 1], q[k]
            want.add(frozenset((p, tuple(q))))
    assert got == want


def test_brute_force_matches_prism2():
    assert len(all_triangulations_bruteforce(prism_config(2))) == 6


def test_limits_mark_partial():
    g = enumerate_flip_graph(pulling_triangulation(HEXAGON), node_limit=5)
    assert not g.complete and len(g.nodes) == 5


def test_threads_do_not_change_output():
    a = enumerate_flip_graph(staircase(3, [0, 1, 2, 3]))
    b = enumerate_flip_graph(staircase(3, [0, 1, 2, 3]), threads=4)
    assert export_graph(a) == export_graph(b)


def test_component_of_staircase():
    s = component_of(staircase(2, [0, 1, 2]), budget=100)
    assert s.nodes == 6 and s.complete


def test_brute_force_size_guard():
    pts = tuple((i, i * i) for i in range(12))
    with pytest.raises(GeometryError):
        all_triangulations_bruteforce(PointConfiguration(2, pts))
