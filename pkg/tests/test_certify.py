from __future__ import annotations

import json

from bistellar.certify import FAIL, PASS, SKIP


def test_a50_certificate(a50_report):
    r = a50_report
    assert r.passed
    assert r.component_lower_bound == 13
    assert r.check("symmetry-orbit").detail["stabilizer_order"] == 96
    assert r.check("flip-invariance").detail["flips"] == 96
    assert r.unimodular_witness_count == 12
    assert r.notes["reversed_orientation_in_orbit"] is True


def test_a50_report_formats_are_deterministic(a50_report):
    assert a50_report.to_json() == a50_report.to_json()
    data = json.loads(a50_report.to_json())
    assert data["status"] == PASS and data["component_lower_bound"] == 13
    assert "component lower bound: 13 (certified)" in a50_report.to_text()


def test_a26_literal_fails_only_on_faces(a26_report):
    r = a26_report
    assert not r.passed
    assert r.failing() == ["prism-faces", "witness-functional"]
    assert r.check("prism-faces").detail["failures"] == 24
    assert r.check("witness-functional").detail["maximizers"] == ["c+0-+"]
    assert r.component_lower_bound == 17
    assert r.unimodular_witness_count == 0


def test_a26_literal_passes_everything_else(a26_report):
    for name in ("orbit-data", "symmetry-group", "orientation", "beyond", "validity",
                 "restriction", "flip-invariance", "unimodular", "regular-witness", "symmetry-orbit"):
        assert a26_report.check(name).status == PASS, name


def test_a26_repaired_certifies_17(a26_repaired_report):
    r = a26_repaired_report
    assert r.passed and r.component_lower_bound == 17
    assert r.check("unimodular").status == SKIP
    assert r.notes["copies_on_same_point_set"] == 2


def test_perturbed(perturbed_reports):
    assert perturbed_reports["A50"].passed
    assert perturbed_reports["A50"].check("unimodular").status == SKIP
    assert perturbed_reports["A26_REPAIRED"].passed
    assert perturbed_reports["A26"].check("prism-faces").status == FAIL
    for r in perturbed_reports.values():
        assert r.check("convex-position").status == PASS


def test_local_product(local_product):
    r = local_product
    assert r.passed
    assert r.level_octahedra == 48 and r.octahedron_flips == 96 == r.total_flips
    assert r.derived_bound == "3^48"
