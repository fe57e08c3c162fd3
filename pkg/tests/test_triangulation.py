from __future__ import annotations

from itertools import permutations

from bistellar.exactgeom import PointConfiguration
from bistellar.triangulation import (
    Triangulation,
    prism_config,
    pulling_triangulation,
    restrict_to_face,
    staircase,
    validate,
)

SQUARE = PointConfiguration(2, ((0, 0), (1, 0), (0, 1), (1, 1)))


def test_square_triangulations():
    assert validate(Triangulation(SQUARE, [(0, 1, 3), (0, 2, 3)])).ok
    r = validate(Triangulation(SQUARE, [(0, 1, 3)]))
    assert not r.ok and r.check == "volume"
    r = validate(Triangulation(SQUARE, [(0, 1, 3), (0, 1, 2)]))
    assert not r.ok and r.check == "intersection"


def test_overlap_detected_when_volumes_match():
    c = PointConfiguration(2, ((0, 0), (2, 0), (0, 2), (2, 2), (1, 1)))
    # covers the right volume twice over one half and never the other
    bad = Triangulation(c, [(0, 1, 4), (1, 3, 4), (0, 1, 3)])
    assert not validate(bad).ok


def test_staircases_are_valid_and_distinct():
    for d in (1, 2, 3):
        tris = {staircase(d, p) for p in permutations(range(d + 1))}
        assert all(validate(t).ok for t in tris)
        assert len(tris) == len(list(permutations(range(d + 1))))


def test_pulling_square_depends_on_order():
    assert pulling_triangulation(SQUARE).simplices == ((0, 1, 3), (0, 2, 3))
    assert pulling_triangulation(SQUARE, [1, 0, 2, 3]).simplices == ((0, 1, 2), (1, 2, 3))


def test_pulling_uses_interior_point_first():
    c = PointConfiguration(2, ((0, 0), (2, 0), (0, 2), (2, 2), (1, 1)))
    t = pulling_triangulation(c, [4, 0, 1, 2, 3])
    assert len(t) == 4 and validate(t).ok


def test_restrict_to_bottom_face_of_prism():
    t = staircase(2, [2, 0, 1])
    bottom = restrict_to_face(t, [0, 1, 2])
    assert len(bottom) == 1
    assert prism_config(2).dim == 3
