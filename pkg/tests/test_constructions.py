from __future__ import annotations

from fractions import Fraction

import pytest

from bistellar.constructions import (
    a26_config,
    build,
    build_24cell,
    build_A26,
    build_A50,
    build_crosspoly_complex,
    build_perturbed,
    build_repaired_A26,
    build_T0,
    cell24_full_group,
    cross_f_vector,
    cross_Gtilde,
    seed_simplices,
)
from bistellar.exactgeom import GeometryError, lattice_determinant, vector_det_index, vector_lattice
from bistellar.orientation import is_locally_acyclic, reversible_edges
from bistellar.triangulation import Triangulation, validate


def test_24cell_counts():
    c = build_24cell()
    assert len(c.config) == 24
    assert len(c.complex.edges()) == 96 and len(c.complex.top_faces) == 96
    assert len(c.extras["octahedra"]) == 24
    assert c.extras["G"].order == 32


def test_full_group_order():
    from bistellar.constructions import cell24_config
    assert cell24_full_group(cell24_config()).order == 1152


def test_T0_shape():
    t0 = build_T0()
    assert len(t0.triangulation) == 96
    assert len(t0.extras["axes"]) == 24


def test_A50_shape():
    c = build_A50()
    assert len(c.config) == 50 and len(c.triangulation) == 480


def test_cross_polytope():
    x = build_crosspoly_complex()
    assert cross_f_vector(x.config) == (8, 24, 32, 16)
    assert len(x.complex.top_faces) == 24 and len(x.extras["missing"]) == 8
    ok, _ = is_locally_acyclic(x.orientation)
    assert ok and reversible_edges(x.orientation).count == 0


def test_table_rows_and_orbit():
    cfg = a26_config()
    rows = seed_simplices(cfg)
    assert len(rows) == 28 and all(len(r) == 6 for r in rows)
    assert len(build_A26().triangulation) == 224
    assert cross_Gtilde(cfg).order == 24


def test_alternative_table_reading_is_invalid():
    cfg = a26_config()
    Gt = cross_Gtilde(cfg)
    rows = seed_simplices(cfg, c_in_last_block=False)
    t = Triangulation(cfg, {tuple(sorted(p[v] for v in s)) for p in Gt.permutations for s in rows})
    assert not validate(t).ok


def test_displayed_vectors():
    vc = build_A26().vectors
    assert vc.vectors[vc.index("c+++0")] == (1, 1, 1, 0, 1, 2)
    assert vc.vectors[vc.index("a0")] == (0, 0, 0, 0, 0, 1)
    assert vc.vectors[vc.index("b0")] == (0, 0, 0, 0, 1, 1)


def test_repaired_points_are_not_integral_under_unit_scaling():
    c = build_repaired_A26()
    assert c.vectors is None
    assert c.config.points[c.config.index("c+++0")][:4] == (Fraction(2, 5),) * 3 + (0,)
    with pytest.raises(GeometryError):
        build_repaired_A26(Fraction(1, 2))


def test_repaired_is_not_unimodular():
    from bistellar.exactgeom import homogenize
    c = build_repaired_A26()
    vc = homogenize(c.config, (1,) * 18 + (10,) * 8)
    lat = vector_lattice(vc)
    assert lattice_determinant(lat) >= 1
    assert {vector_det_index(vc, s, lat) for s in c.triangulation} != {1}


def test_perturbation_ranges():
    with pytest.raises(GeometryError):
        build_perturbed("A50", 0, 2)
    with pytest.raises(GeometryError):
        build_perturbed("A26", -5, 2)
    p = build_perturbed("A50")
    assert p.config.points[24][-1] == -1 and p.config.points[49][-1] == 2


def test_builder_lookup():
    assert build("CROSS4").id == "CROSS4"
    with pytest.raises(KeyError):
        build("NOPE")
