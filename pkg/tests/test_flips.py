from __future__ import annotations

import pytest

from bistellar.exactgeom import GeometryError, PointConfiguration
from bistellar.flips import Circuit, apply_flip, circuit_of, find_flips, format_flip, is_applicable
from bistellar.triangulation import Triangulation, staircase, validate

SQUARE = PointConfiguration(2, ((0, 0), (1, 0), (0, 1), (1, 1)))
SQUARE_C = PointConfiguration(2, ((0, 0), (2, 0), (0, 2), (2, 2), (1, 1)))


def test_circuit_of_square():
    c = circuit_of(SQUARE, [0, 1, 2, 3])
    assert {c.positive, c.negative} == {(0, 3), (1, 2)}
    with pytest.raises(GeometryError):
        circuit_of(SQUARE, [0, 1, 2])


def test_square_has_one_flip_and_it_is_an_involution():
    t = Triangulation(SQUARE, [(0, 1, 3), (0, 2, 3)])
    (f,) = find_flips(t)
    t2 = apply_flip(t, f)
    assert t2.simplices == ((0, 1, 2), (1, 2, 3))
    assert validate(t2).ok
    assert apply_flip(t2, f.reverse()) == t
    assert not is_applicable(t, f.reverse())


def test_insertion_flip_found():
    t = Triangulation(SQUARE_C, [(0, 1, 3), (0, 2, 3)])
    flips = find_flips(t)
    assert len(flips) == 2
    ins = [f for f in flips if f.circuit.positive == (4,)]
    assert len(ins) == 1
    t2 = apply_flip(t, ins[0])
    assert len(t2) == 4 and validate(t2).ok


def test_staircase_flips():
    t = staircase(3, [0, 1, 2, 3])
    flips = find_flips(t)
    assert len(flips) == 3
    assert all(validate(apply_flip(t, f)).ok for f in flips)


def test_stale_flip_rejected():
    t = Triangulation(SQUARE, [(0, 1, 3), (0, 2, 3)])
    (f,) = find_flips(t)
    with pytest.raises(GeometryError):
        apply_flip(apply_flip(t, f), f)


def test_format_flip():
    f = find_flips(Triangulation(SQUARE, [(0, 1, 3), (0, 2, 3)]))[0]
    assert format_flip(f) == f"{' '.join(map(str, f.circuit.positive))} | " \
                             f"{' '.join(map(str, f.circuit.negative))} | forward"


def test_circuit_parts_disjoint():
    with pytest.raises(GeometryError):
        Circuit((0, 1), (1, 2))
