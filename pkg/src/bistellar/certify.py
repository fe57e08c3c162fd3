"""Certificates that the flip graphs of the two constructions are disconnected.

Each certificate runs its checks in a fixed order and records a status and
witness data for every one of them.  The component bound is computed from
enumerated group orders, never hard-coded.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Optional

from .constructions import (
    C_POINTS,
    Construction,
    act_on_sets,
    build_A26,
    build_A50,
    build_24cell,
    build_crosspoly_complex,
    build_perturbed,
    build_repaired_A26,
    beyond_face_of,
    cell24_config,
    cell24_full_group,
    cross_config,
    cross_full_group,
    cross_G,
    cross_Gtilde,
    extend24_matrix,
    stabilizer,
    seed_simplices,
)
from .exactgeom import (
    GeometryError,
    PointConfiguration,
    det,
    det_int,
    det_lattice_index,
    is_face,
    lattice_determinant,
    lattice_spanned_by,
    lies_beyond,
    maximizers,
    vector_det_index,
    vector_lattice,
)
from .flips import apply_flip, find_flips
from .orientation import (
    FaceComplex,
    SkeletonOrientation,
    check_restriction_preconditions,
    is_locally_acyclic,
    non_reversible_edge_of,
    orientation_to_triangulation,
    reversible_edges,
    triangulation_to_orientation,
)
from .triangulation import (
    Triangulation,
    lift_config,
    pulling_triangulation,
    restricted_simplices,
    validate,
)

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in x]
        return sorted(items, key=repr) if isinstance(x, (set, frozenset)) else items
    return x


@dataclass
class Check:
    name: str
    claim: str
    status: str
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0


@dataclass
class CertificateReport:
    construction: str
    checks: list = field(default_factory=list)
    component_lower_bound: Optional[int] = None
    unimodular_witness_count: int = 0
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def failing(self) -> list[str]:
        return [c.name for c in self.checks if c.status == FAIL]

    def to_dict(self, timings: bool = False) -> dict:
        return {
            "construction": self.construction,
            "status": PASS if self.passed else FAIL,
            "component_lower_bound": self.component_lower_bound,
            "bound_certified": self.passed,
            "unimodular_witness_count": self.unimodular_witness_count,
            "checks": [dict({"name": c.name, "claim": c.claim, "status": c.status,
                             "detail": _jsonable(c.detail)},
                            **({"seconds": round(c.seconds, 2)} if timings else {}))
                       for c in self.checks],
            "notes": _jsonable(self.notes),
        }

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [f"certificate {self.construction}: {PASS if self.passed else FAIL}"]
        for c in self.checks:
            lines.append(f"  [{c.status}] {c.name}: {c.claim}")
            for k, v in sorted(c.detail.items()):
                lines.append(f"      {k} = {_short(_jsonable(v))}")
        cert = "certified" if self.passed else "NOT certified, failing: " + ", ".join(self.failing())
        lines.append(f"  component lower bound: {self.component_lower_bound} ({cert})")
        lines.append(f"  components with a unimodular witness: {self.unimodular_witness_count}")
        for k, v in sorted(self.notes.items()):
            lines.append(f"  note {k}: {_short(_jsonable(v))}")
        return "\n".join(lines) + "\n"


def _short(v, limit: int = 160) -> str:
    s = json.dumps(v) if not isinstance(v, str) else v
    return s if len(s) <= limit else s[: limit - 3] + "..."


class _Runner:
    """Collects checks; a check body returns ``(ok, detail)`` or ``(status, detail)``."""

    def __init__(self, report: CertificateReport, log: Optional[Callable[[str], None]] = None):
        self.report = report
        self.log = log

    def run(self, name: str, claim: str, body: Callable[[], tuple]) -> Check:
        t = time.perf_counter()
        try:
            ok, detail = body()
            status = ok if isinstance(ok, str) else (PASS if ok else FAIL)
        except GeometryError as e:
            status, detail = FAIL, {"error": str(e)}
        c = Check(name, claim, status, detail, time.perf_counter() - t)
        self.report.checks.append(c)
        if self.log:
            self.log(f"[{status}] {name} ({c.seconds:.1f}s)")
        return c


# ---------------------------------------------------------------------------
# shared check bodies
# ---------------------------------------------------------------------------

def _orientation_check(o: SkeletonOrientation):
    ok, cyc = is_locally_acyclic(o)
    if not ok:
        return False, {"cyclic_triangle": cyc}
    rep = reversible_edges(o)
    return rep.count == 0, {"edges": len(o.complex.edges()), "triangles": len(o.complex.top_faces),
                            "reversible_edges": rep.reversible_edges}


def _face_check(c: Construction):
    pre = check_restriction_preconditions(c.config, c.complex, c.bottom, c.top)
    return pre.ok, {"faces_checked": len(c.complex.top_faces), "failures": len(pre.failures),
                    "first_failures": [(list(f), why, extra) for f, why, extra in pre.failures[:3]]}


def _validity_check(tri: Triangulation):
    r = validate(tri)
    return r.ok, {"simplices": len(tri), "check": r.check, "message": r.message,
                  "pairs_checked": r.pairs_checked, "witness": r.witness}


def _restriction_check(c: Construction):
    o = triangulation_to_orientation(c.triangulation, c.complex, c.bottom, c.top)
    pt = orientation_to_triangulation(c.orientation, c.config, c.bottom, c.top)
    mismatched = [prism for prism in pt.region
                  if set(restricted_simplices(c.triangulation, prism))
                  != {s for s in pt.simplices if set(s) <= set(prism)}]
    return o == c.orientation and not mismatched, {"orientation_equal": o == c.orientation,
                                                   "prisms": len(pt.region),
                                                   "mismatched_prisms": mismatched[:3]}


def _flip_invariance_check(c: Construction):
    flips = find_flips(c.triangulation)
    changed = []
    for f in flips:
        t2 = apply_flip(c.triangulation, f)
        try:
            same = triangulation_to_orientation(t2, c.complex, c.bottom, c.top) == c.orientation
        except GeometryError:
            same = False
        if not same:
            changed.append((f.circuit.positive, f.circuit.negative))
    return not changed, {"flips": len(flips), "restriction_changing": changed[:3]}


def _regular_witness_check(c: Construction):
    pull = pulling_triangulation(c.config)
    r = validate(pull)
    o = triangulation_to_orientation(pull, c.complex, c.bottom, c.top)
    rev = reversible_edges(o).count
    acyclic = _globally_acyclic(o)
    return (r.ok and o != c.orientation and acyclic), {
        "simplices": len(pull), "valid": r.ok, "restriction_globally_acyclic": acyclic,
        "restriction_reversible_edges": rev, "differs_from_certified": o != c.orientation}


def _globally_acyclic(o: SkeletonOrientation) -> bool:
    indeg = {v: 0 for v in o.complex.vertices()}
    for _, w in o.arcs:
        indeg[w] += 1
    out = {v: [w for u, w in o.arcs if u == v] for v in indeg}
    queue = [v for v, d in indeg.items() if d == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen == len(indeg)


def _orbit_check(o: SkeletonOrientation, full_perms):
    stab = stabilizer(full_perms, o)
    images = {}
    for p in full_perms:
        key = (act_on_sets(p, o.complex.top_faces), frozenset((p[u], p[v]) for u, v in o.arcs))
        if key not in images:
            images[key] = o.mapped(p)
    orbit_size = len(full_perms) // len(stab)
    isolated = all(reversible_edges(img).count == 0 for img in images.values())
    ok = orbit_size == len(images) and isolated
    detail = {"group_order": len(full_perms), "stabilizer_order": len(stab), "orbit_size": orbit_size,
              "distinct_images": len(images), "all_images_without_reversible_edges": isolated}
    return ok, detail, orbit_size


def _convex_position_check(config: PointConfiguration):
    bad = [i for i in range(len(config)) if not is_face(config, [i])[0]]
    return not bad, {"points": len(config), "non_vertices": bad}


def _time_reversal_note(c: Construction, perms) -> dict:
    """Whether the reversed orientation (the image under t -> 1 - t) lies in the symmetry orbit."""
    rev = c.orientation.reversed()
    in_orbit = any(c.orientation.mapped(p) == rev for p in perms)
    return {"reversed_orientation_in_orbit": in_orbit}


# ---------------------------------------------------------------------------
# A50
# ---------------------------------------------------------------------------

def certify_A50(construction: Optional[Construction] = None, log=None, perturbed: bool = False) -> CertificateReport:
    c = construction or build_A50()
    rep = CertificateReport(c.id)
    run = _Runner(rep, log).run
    if perturbed:
        run("convex-position", "every point of the perturbed configuration is a vertex",
            lambda: _convex_position_check(c.config))
    run("orientation", "the 2-skeleton orientation is locally acyclic without reversible edges",
        lambda: _orientation_check(c.orientation))
    run("prism-faces", "each F x I (F a triangle of K) is a face of the hull containing no other point",
        lambda: _face_check(c))
    run("validity", "the extended triangulation is a triangulation of the configuration",
        lambda: _validity_check(c.triangulation))
    run("restriction", "its restriction to K x I is the staircase triangulation of the orientation",
        lambda: _restriction_check(c))
    run("flip-invariance", "no flip of the extended triangulation changes the restriction to K x I",
        lambda: _flip_invariance_check(c))
    if perturbed:
        run("unimodular", "every maximal simplex is unimodular",
            lambda: (SKIP, {"reason": "the perturbed points leave the lattice; no unimodularity claim"}))
    else:
        run("unimodular", "every maximal simplex is unimodular in the lattice spanned by the points",
            lambda: _unimodular_a50(c))
    run("regular-witness", "a pulling triangulation restricts to a different, globally acyclic orientation",
        lambda: _regular_witness_check(c))

    base = cell24_config()
    full = cell24_full_group(base)
    holder = {}

    def orbit_body():
        ok, detail, size = _orbit_check(c.orientation, full.permutations)
        holder["size"] = size
        fixed = set(stabilizer(full.permutations, c.orientation))
        stab = [m for m, p in full.elements if tuple(p) in fixed]
        detail["stabilizer_orientation_preserving"] = all(det(m) > 0 for m in stab)
        return ok, detail

    run("symmetry-orbit", "the orientation has a symmetry orbit of isolated copies",
        orbit_body)
    size = holder.get("size")
    rep.component_lower_bound = size + 1 if size else None
    if rep.passed and rep.check("unimodular").status == PASS and size:
        rep.unimodular_witness_count = size
    rep.notes.update(_time_reversal_note(c, full.permutations))
    return rep


def _unimodular_a50(c: Construction):
    L = lattice_spanned_by(c.config)
    idx = {det_lattice_index(c.config, s, L) for s in c.triangulation}
    base = cell24_config(with_center=True)
    L4 = lattice_spanned_by(base)
    shown = det_int(extend24_matrix())
    return idx == {1} and abs(shown) == 8 and lattice_determinant(L4) == 8, {
        "indices": sorted(idx), "lattice_determinant": lattice_determinant(L),
        "base_lattice_index": lattice_determinant(L4), "displayed_determinant": shown}


# ---------------------------------------------------------------------------
# A26
# ---------------------------------------------------------------------------

def _cross_transcription_check():
    x = build_crosspoly_complex()
    full = x.extras["full_orientation"]
    cyclic = sorted(t for t in full.complex.top_faces if full.order_on(t) is None)
    missing = sorted(x.extras["missing"])
    ok_k, _ = is_locally_acyclic(x.orientation)
    nonrev = [non_reversible_edge_of(x.orientation, t) for t in x.complex.top_faces]
    unique = len(set(nonrev)) == len(nonrev) == len(x.complex.edges())
    return ok_k and cyclic == missing and unique, {
        "cyclic_triangles": len(cyclic), "cyclic_equals_missing": cyclic == missing,
        "each_edge_non_reversible_in_exactly_one_triangle": unique}


def _cross_group_check():
    x = build_crosspoly_complex()
    cfg = x.config
    G, Gt = cross_G(cfg), cross_Gtilde(cfg)
    perms = Gt.permutations
    edge_orbit = {tuple(sorted((p[u], p[v]))) for p in perms for (u, v) in [x.complex.edges()[0]]}
    k_orbit = {tuple(sorted(p[v] for v in x.complex.top_faces[0])) for p in perms}
    miss = x.extras["missing"]
    m_orbit = {tuple(sorted(p[v] for v in miss[0])) for p in perms}
    preserves = all(x.orientation.mapped(p) == x.orientation for p in perms)
    ok = (G.order == 6 and Gt.order == 24 and len(edge_orbit) == 24 and len(k_orbit) == 24
          and len(m_orbit) == 8 and preserves and Gt.orientation_preserving())
    return ok, {"G_order": G.order, "G~_order": Gt.order, "edge_orbit": len(edge_orbit),
                "K_triangle_orbit": len(k_orbit), "missing_triangle_orbit": len(m_orbit),
                "G~_preserves_orientation": preserves, "G~_orientation_preserving": Gt.orientation_preserving()}


def _beyond_check(c: Construction):
    prism = lift_config(cross_config(with_center=True))
    n = 9
    missing = build_crosspoly_complex().extras["missing"]
    results = {}
    for k, (lab, _) in enumerate(C_POINTS):
        p = c.config.points[18 + k]
        sigma = beyond_face_of(c.config, lab, missing)
        face = list(sigma) + [v + n for v in sigma]
        results[lab] = lies_beyond(prism, p, face)
    return all(results.values()), {"beyond": results}


def _witness_functional_check(c: Construction):
    w = (1, 1, Fraction(-1, 2), 1, 0)
    got = sorted(c.config.label(i) for i in maximizers(c.config, w))
    want = sorted(["a4", "a1", "a2", "b4", "b1", "b2"])
    return got == want, {"functional": w, "maximizers": got, "expected": want}


def _unimodular_a26(c: Construction):
    vc = c.vectors
    L = vector_lattice(vc)
    idx = {vector_det_index(vc, s, L) for s in c.triangulation}
    cfg = c.config
    first = [cfg.index(l) for l in ("a0", "a4", "a1", "a2", "b2", "c+++0")]
    shown = det_int([[vc.vectors[j][r] for j in first] for r in range(6)])
    # (x5 -> x6 - x5) sends the two bottom seed rows onto the two top rows
    rows = seed_simplices(cfg)
    img = lambda v: v[:4] + (v[5] - v[4], v[5])
    where = {v: i for i, v in enumerate(vc.vectors)}
    mapped = [tuple(sorted(where[img(vc.vectors[i])] for i in s)) for s in rows[24:26]]
    transform_ok = mapped == rows[26:28]
    return idx == {1} and abs(shown) == 1 and transform_ok, {
        "indices": sorted(idx), "lattice_determinant": lattice_determinant(L),
        "displayed_determinant": shown, "unimodular_transform_maps_rows": transform_ok}


def certify_A26(construction: Optional[Construction] = None, log=None, perturbed: bool = False) -> CertificateReport:
    c = construction or build_A26()
    repaired = c.extras.get("repaired", False)
    rep = CertificateReport(c.id)
    run = _Runner(rep, log).run
    if perturbed:
        run("convex-position", "every point of the perturbed configuration is a vertex",
            lambda: _convex_position_check(c.config))
    run("orbit-data", "exactly the 8 missing triangles are cyclic; each edge is the "
        "non-reversible edge of exactly one triangle of K", _cross_transcription_check)
    run("symmetry-group", "G has order 6; G~ has order 24, preserves the orientation and is transitive "
        "on the 24 edges, the 24 triangles of K and the 8 missing triangles", _cross_group_check)
    run("orientation", "the orientation of K is locally acyclic without reversible edges",
        lambda: _orientation_check(c.orientation))
    run("beyond", "each c point lies beyond sigma x I for its missing triangle sigma",
        lambda: _beyond_check(c))
    run("prism-faces", "each F x I (F a triangle of K) is a face of the hull containing no other point",
        lambda: _face_check(c))
    if not repaired:
        run("witness-functional", "x1 + x2 - x3/2 + x4 is maximized exactly on {e4, e1, e2} x {0, 1}",
            lambda: _witness_functional_check(c))
    run("validity", "the orbit of the seed simplices is a triangulation of the configuration",
        lambda: _validity_check(c.triangulation))
    run("restriction", "its restriction to K x I is the staircase triangulation of the orientation",
        lambda: _restriction_check(c))
    run("flip-invariance", "no flip of the extended triangulation changes the restriction to K x I",
        lambda: _flip_invariance_check(c))
    if perturbed or repaired:
        run("unimodular", "every maximal simplex is unimodular",
            lambda: (SKIP, {"reason": "points moved off the original lattice; no unimodularity claim"}))
    else:
        run("unimodular", "every maximal simplex is unimodular in the vector configuration",
            lambda: _unimodular_a26(c))
    run("regular-witness", "a pulling triangulation restricts to a different, globally acyclic orientation",
        lambda: _regular_witness_check(c))

    x = build_crosspoly_complex()
    full = cross_full_group(x.config)
    holder = {}

    def orbit_body():
        ok, detail, size = _orbit_check(x.orientation, full.permutations)
        holder["size"] = size
        return ok, detail

    run("symmetry-orbit", "the orientation has a symmetry orbit of isolated copies", orbit_body)
    size = holder.get("size")
    rep.component_lower_bound = size + 1 if size else None
    if rep.passed and rep.check("unimodular").status == PASS and size:
        rep.unimodular_witness_count = size
    rep.notes.update(_same_point_set_note(c, full))
    return rep


def _same_point_set_note(c: Construction, full) -> dict:
    """Orbit copies realised on this very point set (symmetries fixing it, with or without t -> 1 - t)."""
    x = build_crosspoly_complex()
    miss = {tuple(sorted(t)) for t in x.extras["missing"]}
    keep = [p for p in full.permutations
            if {tuple(sorted(p[v] for v in t)) for t in miss} == miss]
    images = {x.orientation.mapped(p).arcs for p in keep}
    with_reversal = images | {x.orientation.mapped(p).reversed().arcs for p in keep}
    return {"symmetries_fixing_point_set": len(keep), "copies_on_same_point_set": len(images),
            "copies_including_time_reversal": len(with_reversal)}


# ---------------------------------------------------------------------------
# perturbed variants
# ---------------------------------------------------------------------------

def certify_perturbed(cid: str, alpha=None, beta=None, log=None) -> CertificateReport:
    """Convex-position variant; ``cid`` is ``A50``, ``A26`` or ``A26_REPAIRED``."""
    if cid == "A26_REPAIRED":
        c = build_perturbed("A26", alpha, beta, base=build_repaired_A26())
    else:
        c = build_perturbed(cid, alpha, beta)
    if cid == "A50":
        rep = certify_A50(c, log, perturbed=True)
    else:
        rep = certify_A26(c, log, perturbed=True)
    rep.notes["alpha"] = c.extras["alpha"]
    rep.notes["beta"] = c.extras["beta"]
    return rep


# ---------------------------------------------------------------------------
# local product structure of T'
# ---------------------------------------------------------------------------

@dataclass
class LocalProductReport:
    level_octahedra: int
    flips_per_octahedron: dict
    total_flips: int
    octahedron_flips: int
    states_per_octahedron: set
    pairs_checked: int
    independent: bool
    derived_bound: str

    @property
    def passed(self) -> bool:
        return (set(self.flips_per_octahedron.values()) == {2} and self.states_per_octahedron == {3}
                and self.independent and self.pairs_checked >= 20)


def local_product_structure(tri: Optional[Triangulation] = None, max_pairs: Optional[int] = None) -> LocalProductReport:
    """Flips of T' supported in the 48 octahedra F x {0}, F x {1} and their independence."""
    c = build_A50()
    tri = tri or c.triangulation
    n = len(c.config) // 2
    octa = [tuple(sorted(f)) for f in build_24cell().extras["octahedra"]]
    levels = [tuple(v + h * n for v in f) for h in (0, 1) for f in octa]
    per = {}
    local = {}
    for lv in levels:
        fl = find_flips(tri, within=lv)
        per[lv] = len(fl)
        local[lv] = fl
    states = set()
    for lv in levels:
        seen = {tri}
        frontier = [tri]
        while frontier:
            t = frontier.pop()
            for f in find_flips(t, within=lv):
                t2 = apply_flip(t, f)
                if t2 not in seen:
                    seen.add(t2)
                    frontier.append(t2)
        states.add(len(seen))
    all_flips = find_flips(tri)
    in_octa = sum(per.values())
    pairs = [(a, b) for a, b in combinations(levels, 2) if set(a) & set(b)]
    pairs += [(a, b) for a, b in combinations(levels, 2) if not set(a) & set(b)][: 20]
    if max_pairs is not None:
        pairs = pairs[:max_pairs]
    independent = True
    for a, b in pairs:
        fa = local[a][0]
        t1 = apply_flip(tri, fa)
        if [f.circuit for f in find_flips(t1, within=b)] != [f.circuit for f in local[b]]:
            independent = False
            break
        fb = local[b][0]
        if apply_flip(apply_flip(tri, fb), fa) != apply_flip(t1, fb):
            independent = False
            break
    return LocalProductReport(len(levels), {k: v for k, v in per.items()}, len(all_flips), in_octa,
                              states, len(pairs), independent, f"3^{len(levels)}")


def certify_local_product(log=None) -> CertificateReport:
    """The local product check of T' wrapped as a certificate report."""
    rep = CertificateReport("A50_LOCAL")
    run = _Runner(rep, log).run
    holder = {}

    def body():
        r = local_product_structure()
        holder["r"] = r
        return r.passed, {"level_octahedra": r.level_octahedra,
                          "flips_per_octahedron": sorted(set(r.flips_per_octahedron.values())),
                          "octahedron_flips": r.octahedron_flips, "total_flips": r.total_flips,
                          "states_per_octahedron": sorted(r.states_per_octahedron),
                          "pairs_checked": r.pairs_checked, "independent": r.independent}

    run("local-product", "each level octahedron supports exactly 2 flips with 3 reachable states, "
        "independently of the other octahedra", body)
    if "r" in holder:
        rep.notes["component_size_lower_bound"] = holder["r"].derived_bound
    return rep


def certify_files(config: PointConfiguration, complex: FaceComplex, orientation: SkeletonOrientation,
                  tri: Triangulation, bottom=None, top=None, log=None) -> CertificateReport:
    """Certificate for user-supplied data.  Without a symmetry group the bound is 2."""
    if bottom is None:
        n = len(config) // 2
        bottom, top = {v: v for v in range(n)}, {v: v + n for v in range(n)}
    c = Construction("files", config, complex, orientation, tri, bottom, top)
    rep = CertificateReport("files")
    run = _Runner(rep, log).run
    run("orientation", "the orientation is locally acyclic without reversible edges",
        lambda: _orientation_check(orientation))
    run("prism-faces", "each F x I is a face of the hull containing no other point", lambda: _face_check(c))
    run("validity", "the triangulation is a triangulation of the configuration", lambda: _validity_check(tri))
    if rep.passed:
        run("restriction", "its restriction to K x I is the staircase triangulation of the orientation",
            lambda: _restriction_check(c))
        run("flip-invariance", "no flip changes the restriction to K x I", lambda: _flip_invariance_check(c))
        run("regular-witness", "a pulling triangulation restricts to a different, globally acyclic orientation",
            lambda: _regular_witness_check(c))
    rep.component_lower_bound = 2
    return rep
