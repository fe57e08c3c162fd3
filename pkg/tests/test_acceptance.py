"""Acceptance suite: one PASS/FAIL line per criterion, printed in the terminal summary.

Criteria 7, 8 and 9 contain claims about the literal 26-point coordinates that
do not hold (each prism over a triangle of K lies in a larger facet).  Those
parts are strict xfail tests; the criterion lines report FAIL with the reason,
and the repaired configuration is checked alongside.
"""
from __future__ import annotations

import random
import time

import pytest

from bistellar.certify import PASS, SKIP
from bistellar.constructions import (
    build_24cell,
    build_crosspoly_complex,
    build_T0,
    cell24_config,
    cross_config,
    cross_f_vector,
    cross_Gtilde,
)
from bistellar.exactgeom import PointConfiguration, det_lattice_index, lattice_determinant, lattice_spanned_by
from bistellar.explore import all_triangulations_bruteforce, enumerate_flip_graph
from bistellar.orientation import (
    FaceComplex,
    SkeletonOrientation,
    is_locally_acyclic,
    orientation_to_triangulation,
    reversible_edges,
    triangulation_to_orientation,
)
from bistellar.triangulation import lift_config, pulling_triangulation, simplex_config, staircase, validate

from conftest import record_criterion


def _timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def test_criterion_01_24cell_generator():
    c, secs = _timed(build_24cell.__wrapped__)
    counts = (len(c.config), len(c.complex.edges()), len(c.complex.top_faces), len(c.extras["octahedra"]))
    ok = counts == (24, 96, 96, 24) and secs < 1
    record_criterion(1, ok, f"24-cell points/edges/triangles/octahedra = {counts} in {secs:.2f}s")
    assert ok


def test_criterion_02_24cell_orientation():
    c, secs = _timed(build_24cell.__wrapped__)
    acyclic, _ = is_locally_acyclic(c.orientation)
    rev = reversible_edges(c.orientation).count
    fig = reversible_edges(c.extras["octahedron_example"]).count
    ok = acyclic and rev == 0 and fig == 4 and secs < 1
    record_criterion(2, ok, f"locally acyclic={acyclic}, reversible edges={rev}, octahedron example={fig}")
    assert ok


def test_criterion_03_extension_validity(a50_report):
    t0 = build_T0()
    r0 = validate(t0.triangulation)
    base = cell24_config(with_center=True)
    lat = lattice_spanned_by(base)
    t0_idx = {det_lattice_index(base, s, lat) for s in t0.triangulation}
    v = a50_report.check("validity")
    u = a50_report.check("unimodular").detail
    ok = (r0.ok and len(t0.triangulation) == 96 and t0_idx == {1} and lattice_determinant(lat) == 8
          and v.status == PASS and v.detail["simplices"] == 480 and v.detail["pairs_checked"] <= 480 * 480
          and v.seconds < 60 and a50_report.check("unimodular").status == PASS
          and abs(u["displayed_determinant"]) == 8)
    record_criterion(3, ok, f"T0 96 valid={r0.ok}, T' 480 valid in {v.seconds:.1f}s "
                            f"({v.detail['pairs_checked']} pairs), unimodular in index-8 lattice, "
                            f"|displayed det|={abs(u['displayed_determinant'])}")
    assert ok


def test_criterion_04_certificate_A50(a50_report):
    r = a50_report
    orbit = r.check("symmetry-orbit").detail
    secs = sum(c.seconds for c in r.checks)
    ok = (r.passed and r.component_lower_bound == 13 and orbit["orbit_size"] == 12
          and orbit["group_order"] == 1152 and orbit["stabilizer_order"] == 96
          and r.check("regular-witness").detail["differs_from_certified"] and secs < 300)
    record_criterion(4, ok, f"{r.check('flip-invariance').detail['flips']} flips keep the restriction, pulling "
                            f"witness differs, bound {r.component_lower_bound} = 1152/96 + 1 in {secs:.0f}s")
    assert ok


def test_criterion_05_local_product(local_product):
    r = local_product
    ok = r.passed and r.pairs_checked >= 20 and r.derived_bound == "3^48"
    record_criterion(5, ok, f"{r.level_octahedra} level octahedra x 2 flips = {r.octahedron_flips} flips, "
                            f"3 states each, independent on {r.pairs_checked} pairs, bound {r.derived_bound}")
    assert ok


def test_criterion_06_cross_polytope():
    t = time.perf_counter()
    x = build_crosspoly_complex.__wrapped__()
    cfg = cross_config()
    fv = cross_f_vector(cfg)
    rev = reversible_edges(x.orientation).count
    perms = cross_Gtilde(cfg).permutations
    edges = {tuple(sorted((p[u], p[v]))) for p in perms for u, v in [x.complex.edges()[0]]}
    ktri = {tuple(sorted(p[v] for v in x.complex.top_faces[0])) for p in perms}
    miss = {tuple(sorted(p[v] for v in x.extras["missing"][0])) for p in perms}
    secs = time.perf_counter() - t
    ok = (fv == (8, 24, 32, 16) and rev == 0 and len(perms) == 24 and len(edges) == 24
          and len(ktri) == 24 and len(miss) == 8 and secs < 1)
    record_criterion(6, ok, f"f-vector {fv}, reversible edges {rev}, |G~|={len(perms)} transitive on "
                            f"{len(edges)} edges / {len(ktri)} K-triangles / {len(miss)} others")
    assert ok


def test_criterion_07_beyond_and_faces(a26_report, a26_repaired_report):
    lit = a26_report
    beyond = lit.check("beyond").status == PASS
    faces = lit.check("prism-faces")
    wit = lit.check("witness-functional")
    ok = beyond and faces.status == PASS and wit.status == PASS
    record_criterion(7, ok, f"beyond tests 8/8 pass; face tests {24 - faces.detail['failures']}/24 on the "
                            f"literal coordinates; functional maximized on {wit.detail['maximizers']} "
                            f"(repaired c points: faces "
                            f"{a26_repaired_report.check('prism-faces').status})")
    assert beyond
    assert a26_repaired_report.check("prism-faces").status == PASS


@pytest.mark.xfail(strict=True, reason="with c points at 1/2 each prism over a K triangle lies in a larger facet")
def test_criterion_07_literal_faces(a26_report):
    assert a26_report.check("prism-faces").status == PASS
    assert a26_report.check("witness-functional").status == PASS


def test_criterion_08_A26_triangulation(a26_report, a26_repaired_report):
    lit = a26_report
    valid = lit.check("validity").status == PASS
    unimod = lit.check("unimodular")
    secs = sum(c.seconds for c in lit.checks)
    ok = valid and unimod.status == PASS and lit.passed and lit.component_lower_bound == 17 and secs < 120
    record_criterion(8, ok, f"validity {lit.check('validity').status}, unimodular {unimod.status} "
                            f"(|displayed det|={abs(unimod.detail['displayed_determinant'])}); bound "
                            f"{lit.component_lower_bound} computed but the literal certificate fails "
                            f"{lit.failing()}; repaired variant certifies "
                            f"{a26_repaired_report.component_lower_bound}")
    assert valid and unimod.status == PASS and abs(unimod.detail["displayed_determinant"]) == 1
    assert lit.component_lower_bound == 17
    assert a26_repaired_report.passed and a26_repaired_report.component_lower_bound == 17


@pytest.mark.xfail(strict=True, reason="certificate on literal coordinates fails the prism-face precondition")
def test_criterion_08_literal_certificate(a26_report):
    assert a26_report.passed


def test_criterion_09_perturbed(perturbed_reports):
    p50, p26, p26r = perturbed_reports["A50"], perturbed_reports["A26"], perturbed_reports["A26_REPAIRED"]
    secs = sum(c.seconds for r in perturbed_reports.values() for c in r.checks)
    ok = (p50.passed and p26.passed and p50.component_lower_bound == 13 and p26.component_lower_bound == 17
          and p50.check("unimodular").status == SKIP and secs < 300)
    record_criterion(9, ok, f"A'50 convex, valid, bound {p50.component_lower_bound}, unimodular SKIP; A'26 "
                            f"convex={p26.check('convex-position').status}, valid={p26.check('validity').status}, "
                            f"certificate fails {p26.failing()}; repaired A'26 certifies "
                            f"{p26r.component_lower_bound}")
    assert p50.passed and p50.component_lower_bound == 13 and p50.check("unimodular").status == SKIP
    assert p26.check("convex-position").status == PASS and p26.check("validity").status == PASS
    assert p26r.passed and p26r.component_lower_bound == 17


@pytest.mark.xfail(strict=True, reason="perturbing the two centre points does not create the missing prism faces")
def test_criterion_09_literal_perturbed(perturbed_reports):
    assert perturbed_reports["A26"].passed


def _random_round_trips(count: int, seed: int = 0) -> int:
    rng = random.Random(seed)
    done = 0
    while done < count:
        n = rng.randint(3, 6)
        k = rng.randint(3, min(4, n))
        pool = [tuple(sorted(rng.sample(range(n), k))) for _ in range(rng.randint(1, 5))]
        cx = FaceComplex(pool)
        order = list(range(n))
        rng.shuffle(order)
        rank = {v: i for i, v in enumerate(order)}
        arcs = set()
        for u, v in cx.edges():
            # flip some arcs away from the global order and keep only locally acyclic results
            fwd = rank[u] < rank[v]
            arcs.add((u, v) if fwd != (rng.random() < 0.2) else (v, u))
        o = SkeletonOrientation(cx, frozenset(arcs))
        if not is_locally_acyclic(o)[0]:
            continue
        pt = orientation_to_triangulation(o, lift_config(simplex_config(n - 1)))
        if triangulation_to_orientation(pt, cx) != o:
            return done
        done += 1
    return done


def test_criterion_10_oracles():
    t = time.perf_counter()
    hexagon = PointConfiguration(2, ((2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)))
    g = enumerate_flip_graph(pulling_triangulation(hexagon))
    hex_ok = len(g.nodes) == 14 and len(g.components()) == 1 and set(g.nodes) == all_triangulations_bruteforce(hexagon)
    prism_ok = True
    for d in (1, 2, 3):
        gd = enumerate_flip_graph(staircase(d, list(range(d + 1))))
        cx = FaceComplex([tuple(range(d + 1))])
        perm = [triangulation_to_orientation(x, cx).order_on(tuple(range(d + 1))) for x in gd.nodes]
        got = {frozenset((perm[i], perm[j])) for i, j, _ in gd.edges}
        want = {frozenset((p, p[:k] + (p[k + 1], p[k]) + p[k + 2:])) for p in perm for k in range(d)}
        fact = 1
        for m in range(2, d + 2):
            fact *= m
        prism_ok &= len(gd.nodes) == fact and got == want
    trips = _random_round_trips(100)
    secs = time.perf_counter() - t
    ok = hex_ok and prism_ok and trips == 100 and secs < 60
    record_criterion(10, ok, f"hexagon 14 triangulations, 1 component, brute force agrees={hex_ok}; "
                             f"prism flip graphs are permutohedra for d<=3: {prism_ok}; "
                             f"{trips}/100 round trips in {secs:.1f}s")
    assert ok
