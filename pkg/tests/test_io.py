from __future__ import annotations

import pytest

from bistellar.constructions import build_A26
from bistellar.exactgeom import GeometryError
from bistellar.io import (
    format_config,
    format_orientation,
    format_simplices,
    parse_complex,
    parse_config,
    parse_orientation,
    parse_triangulation,
)


def test_config_round_trip():
    c = build_A26().config
    c2 = parse_config(format_config(c))
    assert c2.points == c.points and c2.labels == c.labels


def test_triangulation_and_orientation_round_trip():
    c = build_A26()
    t = parse_triangulation(format_simplices(c.triangulation.simplices), c.config)
    assert t == c.triangulation
    cx = parse_complex(format_simplices(c.complex.top_faces))
    assert parse_orientation(format_orientation(c.orientation), cx).arcs == c.orientation.arcs


def test_bad_inputs():
    with pytest.raises(GeometryError):
        parse_config("2 3\n0 0\n1 0\n")
    with pytest.raises(GeometryError):
        parse_config("2 1\n0 x\n")
    with pytest.raises(GeometryError):
        parse_triangulation("0 1 9\n", parse_config("2 3\n0 0\n1 0\n0 1\n"))
