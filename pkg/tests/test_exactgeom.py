from __future__ import annotations

from fractions import Fraction

import pytest

from bistellar.exactgeom import (
    GeometryError,
    PointConfiguration,
    affine_kernel,
    affine_rank,
    det,
    det_int,
    facets,
    homogenize,
    hull_volume,
    improper_intersection,
    is_face,
    lattice_determinant,
    lattice_spanned_by,
    lies_beyond,
    maximizers,
    simplex_volume,
)

SQUARE = PointConfiguration(2, ((0, 0), (1, 0), (0, 1), (1, 1)))
CUBE = PointConfiguration(3, tuple((a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)))


def test_fractions_parsed_exactly():
    c = PointConfiguration(1, (("1/3",), ("2/3",)))
    assert c.points[0][0] == Fraction(1, 3)
    assert c.int_points == ((1,), (2,))


def test_duplicate_points_rejected():
    with pytest.raises(GeometryError):
        PointConfiguration(2, ((0, 0), (0, 0)))


def test_determinants_agree():
    m = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    assert det_int(m) == det(m) == 18


def test_affine_rank_and_kernel():
    assert affine_rank(SQUARE, range(4)) == 2
    (lam,) = affine_kernel(SQUARE, [0, 1, 2, 3])
    assert sum(lam) == 0
    assert sorted(x > 0 for x in lam) == [False, False, True, True]


def test_square_facets_and_faces():
    assert sorted(sorted(f.points) for f in facets(SQUARE)) == [[0, 1], [0, 2], [1, 3], [2, 3]]
    assert is_face(SQUARE, [0, 1])[0]
    assert not is_face(SQUARE, [0, 3])[0]


def test_cube_facets_and_volume():
    assert len(facets(CUBE)) == 6
    assert hull_volume(CUBE) == 1


def test_face_with_point_on_edge_is_not_its_endpoints():
    c = PointConfiguration(2, ((0, 0), (2, 0), (1, 0), (0, 1)))
    assert not is_face(c, [0, 1])[0]
    assert is_face(c, [0, 1, 2])[0]


def test_simplex_volume():
    assert simplex_volume(SQUARE, (0, 1, 2)) == Fraction(1, 2)


def test_improper_intersection_of_crossing_diagonals():
    assert improper_intersection(SQUARE, (0, 1, 3), (0, 2, 1))
    assert not improper_intersection(SQUARE, (0, 1, 3), (0, 2, 3))


def test_maximizers_and_beyond():
    assert maximizers(SQUARE, (1, 1)) == frozenset({3})
    assert lies_beyond(SQUARE, (2, Fraction(1, 2)), [1, 3])
    assert not lies_beyond(SQUARE, (2, 2), [1, 3])


def test_lattice_index():
    c = PointConfiguration(2, ((0, 0), (2, 0), (0, 2), (2, 2)))
    assert lattice_determinant(lattice_spanned_by(c)) == 4


def test_homogenize_requires_integrality():
    c = PointConfiguration(1, (("1/2",), (1,)))
    with pytest.raises(GeometryError):
        homogenize(c)
    assert homogenize(c, [2, 1]).vectors == ((1, 2), (1, 1))
