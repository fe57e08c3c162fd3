"""Exact generators for the 24-cell and cross-polytope constructions.

Builders are pure and cached.  Indices are fixed:

* 24-cell: ``+2e1, -2e1, ..., +2e4, -2e4`` (0..7), then the 16 points
  ``(+-1, +-1, +-1, +-1)`` with ``+`` before ``-`` in lexicographic order
  (8..23), then the centroid ``O`` (24).  ``A50`` is that list at height 0
  followed by the same list at height 1.
* cross-polytope: ``e1, -e1, ..., e4, -e4`` (0..7), ``O`` (8).  ``A26`` is
  ``a1, -a1, ..., -a4, a0`` (0..8), ``b1, ..., -b4, b0`` (9..17), then the eight
  ``c`` points in the order they are listed below (18..25).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Callable, Iterable, Optional, Sequence

from .exactgeom import (
    GeometryError,
    PointConfiguration,
    VectorConfiguration,
    as_fraction,
    facets,
    homogenize,
    is_face,
)
from .orientation import FaceComplex, SkeletonOrientation, orientation_to_triangulation
from .triangulation import Triangulation, lift_config

Matrix = tuple  # tuple of rows of Fractions


# ---------------------------------------------------------------------------
# symmetry groups as permutation groups on point indices
# ---------------------------------------------------------------------------

def matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(as_fraction(x) for x in r) for r in rows)


def extend_matrix(m: Matrix, extra: int) -> Matrix:
    """Block-diagonal ``m`` plus an identity on ``extra`` trailing coordinates."""
    n = len(m)
    return tuple(tuple(m[i][j] if (i < n and j < n) else Fraction(int(i == j)) for j in range(n + extra))
                 for i in range(n + extra))


def _apply(m: Matrix, p: Sequence) -> tuple:
    return tuple(sum((a * b for a, b in zip(row, p)), Fraction(0)) for row in m)


def point_permutation(config: PointConfiguration, m: Matrix) -> tuple[int, ...]:
    """Permutation induced on the points by the linear map ``m``; raises if ``m`` is not a symmetry."""
    where = {p: i for i, p in enumerate(config.points)}
    perm = []
    for p in config.points:
        q = _apply(m, p)
        if q not in where:
            raise GeometryError(f"map sends {p} outside the configuration")
        perm.append(where[q])
    return tuple(perm)


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n))
                 for i in range(n))


def _mat_det(m: Matrix) -> Fraction:
    from .exactgeom import det
    return det(m)


@dataclass(frozen=True)
class SymmetryGroup:
    """Finite linear group given by generators, enumerated as ``(matrix, permutation)`` pairs."""

    generators: tuple
    elements: tuple = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def permutations(self) -> list[tuple[int, ...]]:
        return [p for _, p in self.elements]

    def orientation_preserving(self) -> bool:
        return all(_mat_det(m) > 0 for m, _ in self.elements)


def enumerate_group(config: PointConfiguration, gens: Sequence[Matrix], limit: int = 100000) -> SymmetryGroup:
    """Closure of ``gens``; each generator must permute the points of ``config``."""
    gens = [tuple(tuple(as_fraction(x) for x in r) for r in g) for g in gens]
    gperms = [point_permutation(config, g) for g in gens]
    d = len(gens[0])
    ident = tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))
    start = tuple(range(len(config)))
    seen = {start: ident}
    queue = [start]
    while queue:
        p = queue.pop()
        m = seen[p]
        for g, gp in zip(gens, gperms):
            q = tuple(gp[i] for i in p)  # apply p then g
            if q not in seen:
                seen[q] = _mat_mul(g, m)
                queue.append(q)
                if len(seen) > limit:
                    raise GeometryError("group enumeration exceeded its limit")
    elements = tuple(sorted(((m, p) for p, m in seen.items()), key=lambda e: e[1]))
    return SymmetryGroup(tuple(gens), elements)


def orbit(perms: Iterable[Sequence[int]], obj, act: Callable) -> set:
    return {act(p, obj) for p in perms}


def act_on_sets(p: Sequence[int], sets) -> tuple:
    return tuple(sorted(tuple(sorted(p[v] for v in s)) for s in sets))


def stabilizer(perms: Iterable[Sequence[int]], o: SkeletonOrientation) -> list[tuple[int, ...]]:
    out = []
    for p in perms:
        if frozenset((p[u], p[v]) for u, v in o.arcs) == o.arcs:
            out.append(tuple(p))
    return out


def signed_permutation_matrices(d: int) -> list[Matrix]:
    """Generators of the hyperoctahedral group: a transposition, a d-cycle, one sign change."""
    swap = [[int((i, j) in ((0, 1), (1, 0)) or (i == j and i > 1)) for j in range(d)] for i in range(d)]
    cyc = [[int(j == (i + 1) % d) for j in range(d)] for i in range(d)]
    neg = [[(-1 if i == 0 else 1) * int(i == j) for j in range(d)] for i in range(d)]
    return [matrix(swap), matrix(cyc), matrix(neg)]


# ---------------------------------------------------------------------------
# named construction record
# ---------------------------------------------------------------------------

@dataclass
class Construction:
    """A named object with its configuration and the data that certify it."""

    id: str
    config: PointConfiguration
    complex: Optional[FaceComplex] = None
    orientation: Optional[SkeletonOrientation] = None
    triangulation: Optional[Triangulation] = None
    bottom: Optional[dict] = None
    top: Optional[dict] = None
    vectors: Optional[VectorConfiguration] = None
    extras: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# the 24-cell
# ---------------------------------------------------------------------------

def _sign(x) -> str:
    return "+" if x > 0 else "-"


@lru_cache(maxsize=None)
def cell24_config(with_center: bool = False) -> PointConfiguration:
    pts, labels = [], []
    for i in range(4):
        for s in (2, -2):
            pts.append(tuple(s if j == i else 0 for j in range(4)))
            labels.append(f"{'+' if s > 0 else '-'}2e{i + 1}")
    for signs in product((1, -1), repeat=4):
        pts.append(signs)
        labels.append("".join(_sign(x) for x in signs))
    if with_center:
        pts.append((0, 0, 0, 0))
        labels.append("O")
    return PointConfiguration(4, tuple(pts), tuple(labels))


def _square_norm(p, q) -> Fraction:
    return sum(((a - b) ** 2 for a, b in zip(p, q)), Fraction(0))


def _edge_graph(config: PointConfiguration, length2) -> set:
    n = len(config)
    return {(i, j) for i in range(n) for j in range(i + 1, n)
            if _square_norm(config.points[i], config.points[j]) == length2}


def _two_skeleton(config: PointConfiguration, length2) -> FaceComplex:
    """Triangles of a regular polytope: 3-cliques of the edge graph, each verified to be a face."""
    edges = _edge_graph(config, length2)
    tris = [t for t in combinations(range(len(config)), 3)
            if all(e in edges for e in combinations(t, 2))]
    for t in tris:
        if not is_face(config, t)[0]:
            raise GeometryError(f"triangle {t} is not a face")
    return FaceComplex(tris, config)


def cell24_G(config: PointConfiguration) -> SymmetryGroup:
    """Order-32 group: swap of coordinate pairs and the quarter turns in each pair."""
    extra = config.dim - 4
    gens = [matrix([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]),
            matrix([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
            matrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])]
    return enumerate_group(config, [extend_matrix(g, extra) for g in gens])


CELL24_EXTRA = matrix([[Fraction(1, 2), Fraction(-1, 2), Fraction(1, 2), Fraction(1, 2)],
                       [Fraction(1, 2), Fraction(1, 2), Fraction(-1, 2), Fraction(1, 2)],
                       [Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(-1, 2)],
                       [Fraction(-1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)]])


def cell24_orientation_group(config: PointConfiguration) -> SymmetryGroup:
    """G together with the orthogonal map CELL24_EXTRA."""
    extra = config.dim - 4
    return enumerate_group(config, list(cell24_G(config).generators) + [extend_matrix(CELL24_EXTRA, extra)])


def cell24_full_group(config: PointConfiguration) -> SymmetryGroup:
    """All 1152 symmetries: signed permutations together with CELL24_EXTRA."""
    extra = config.dim - 4
    gens = signed_permutation_matrices(4) + [CELL24_EXTRA]
    return enumerate_group(config, [extend_matrix(g, extra) for g in gens])


def octahedron_1100(config: PointConfiguration) -> tuple[int, ...]:
    labs = ["+2e1", "+2e2", "++++", "++--", "+++-", "++-+"]
    return tuple(sorted(config.indices(labs)))


def octahedron_example_arcs(config: PointConfiguration) -> list[tuple[int, int]]:
    """Source +2e1, sink +2e2 and the cycle ++++ -> ++-+ -> ++-- -> +++- -> ++++."""
    src, snk = config.index("+2e1"), config.index("+2e2")
    cyc = [config.index(l) for l in ("++++", "++-+", "++--", "+++-")]
    arcs = [(src, v) for v in cyc] + [(v, snk) for v in cyc]
    arcs += [(cyc[k], cyc[(k + 1) % 4]) for k in range(4)]
    return arcs


def transport_orientation(seed_arcs: Iterable[tuple[int, int]], perms: Iterable[Sequence[int]],
                          complex: FaceComplex) -> SkeletonOrientation:
    """Orbit of a partial orientation; raises if two images disagree on an edge."""
    arcs = {}
    for p in perms:
        for u, v in seed_arcs:
            a = (p[u], p[v])
            key = tuple(sorted(a))
            if arcs.setdefault(key, a) != a:
                raise GeometryError(f"orientation is not consistent with the group on edge {key}")
    return SkeletonOrientation(complex, frozenset(arcs.values()))


@lru_cache(maxsize=None)
def build_24cell() -> Construction:
    config = cell24_config()
    complex = _two_skeleton(config, 4)
    G = cell24_G(config)
    o = transport_orientation(octahedron_example_arcs(config), G.permutations, complex)
    octahedra = [f.points for f in facets(config)]
    example_cx = FaceComplex([t for t in complex.top_faces if set(t) <= set(octahedron_1100(config))], config)
    example = SkeletonOrientation(example_cx, frozenset(octahedron_example_arcs(config)))
    return Construction("CELL24", config, complex, o,
                        extras={"G": G, "octahedra": octahedra, "octahedron_example": example})


def _octahedron_axis(o: SkeletonOrientation, octa: Iterable[int]) -> tuple[int, int, list]:
    """Source, sink and equatorial 4-cycle of ``o`` restricted to an octahedron."""
    octa = list(octa)
    out = {v: sum(o.points_to(v, w) for w in octa) for v in octa}
    inn = {v: sum(o.points_to(w, v) for w in octa) for v in octa}
    src = [v for v in octa if out[v] == 4]
    snk = [v for v in octa if inn[v] == 4]
    if len(src) != 1 or len(snk) != 1:
        raise GeometryError(f"octahedron {octa} has no unique source and sink")
    equator = [v for v in octa if v not in (src[0], snk[0])]
    cycle = [(u, v) for u in equator for v in equator if o.points_to(u, v)]
    return src[0], snk[0], cycle


@lru_cache(maxsize=None)
def build_T0() -> Construction:
    """Each octahedron split along its source-sink axis, coned to O."""
    c24 = build_24cell()
    config = cell24_config(with_center=True)
    O = config.index("O")
    simplices = []
    axes = []
    for octa in c24.extras["octahedra"]:
        v, w, cycle = _octahedron_axis(c24.orientation, octa)
        axes.append((v, w))
        simplices += [(O, v, w, x, y) for x, y in cycle]
    tri = Triangulation(config, simplices)
    return Construction("T0", config, c24.complex, c24.orientation, tri, extras={"axes": axes})


def extended_orientation() -> SkeletonOrientation:
    """Orientation of the 1-skeleton of T_0: K's arcs, each axis source -> sink, O a global source."""
    t0 = build_T0()
    config = t0.config
    O = config.index("O")
    arcs = set(t0.orientation.arcs) | set(t0.extras["axes"]) | {(O, v) for v in range(len(config)) if v != O}
    cx = FaceComplex(t0.triangulation.simplices, config)
    return SkeletonOrientation(cx, frozenset(arcs))


@lru_cache(maxsize=None)
def build_A50() -> Construction:
    base = cell24_config(with_center=True)
    config = lift_config(base)
    n = len(base)
    c24 = build_24cell()
    ext = extended_orientation()
    pt = orientation_to_triangulation(ext, config)
    tri = Triangulation(config, pt.simplices)
    return Construction("A50", config, c24.complex, c24.orientation, tri,
                        bottom={v: v for v in range(n)}, top={v: v + n for v in range(n)},
                        vectors=homogenize(config),
                        extras={"T0": build_T0().triangulation, "extended_orientation": ext,
                                "center": (base.index("O"), base.index("O") + n)})


def build_Tprime() -> Triangulation:
    return build_A50().triangulation


def build_M50() -> VectorConfiguration:
    return build_A50().vectors


def extend24_matrix() -> list[list[int]]:
    """The 5x5 matrix of the simplex 0, 2e1, 2e2, (1,1,1,1), (1,1,1,-1) with a row of ones."""
    return [[0, 2, 0, 1, 1], [0, 0, 2, 1, 1], [0, 0, 0, 1, 1], [0, 0, 0, 1, -1], [1, 1, 1, 1, 1]]


# ---------------------------------------------------------------------------
# the cross-polytope
# ---------------------------------------------------------------------------

CROSS_LABELS = ("e1", "-e1", "e2", "-e2", "e3", "-e3", "e4", "-e4")

# edges oriented first -> second, grouped into the four G-orbits
EDGE_ORBITS = (
    (("e1", "e2"), ("e2", "e3"), ("e3", "e1"), ("-e1", "-e2"), ("-e2", "-e3"), ("-e3", "-e1")),
    (("-e2", "e1"), ("-e3", "e2"), ("-e1", "e3"), ("e2", "-e1"), ("e3", "-e2"), ("e1", "-e3")),
    (("e4", "e1"), ("e4", "e2"), ("e4", "e3"), ("-e4", "-e1"), ("-e4", "-e2"), ("-e4", "-e3")),
    (("-e1", "e4"), ("-e2", "e4"), ("-e3", "e4"), ("e1", "-e4"), ("e2", "-e4"), ("e3", "-e4")),
)

# the six G-orbits of triangles; orbits 2..5 (0-based) form K, listed in their acyclic order
TRIANGLE_ORBITS = (
    (("e1", "e2", "e3"), ("-e1", "-e2", "-e3")),
    (("e1", "-e4", "-e2"), ("e2", "-e4", "-e3"), ("e3", "-e4", "-e1"),
     ("-e1", "e4", "e2"), ("-e2", "e4", "e3"), ("-e3", "e4", "e1")),
    (("e1", "-e3", "e2"), ("e2", "-e1", "e3"), ("e3", "-e2", "e1"),
     ("-e1", "e3", "-e2"), ("-e2", "e1", "-e3"), ("-e3", "e2", "-e1")),
    (("-e3", "e4", "e2"), ("-e1", "e4", "e3"), ("-e2", "e4", "e1"),
     ("e3", "-e4", "-e2"), ("e1", "-e4", "-e3"), ("e2", "-e4", "-e1")),
    (("e4", "e1", "e2"), ("e4", "e2", "e3"), ("e4", "e3", "e1"),
     ("-e4", "-e1", "-e2"), ("-e4", "-e2", "-e3"), ("-e4", "-e3", "-e1")),
    (("e1", "e2", "-e4"), ("e2", "e3", "-e4"), ("e3", "e1", "-e4"),
     ("-e1", "-e2", "e4"), ("-e2", "-e3", "e4"), ("-e3", "-e1", "e4")),
)


@lru_cache(maxsize=None)
def cross_config(with_center: bool = False) -> PointConfiguration:
    pts = []
    for i in range(4):
        for s in (1, -1):
            pts.append(tuple(s if j == i else 0 for j in range(4)))
    labels = CROSS_LABELS
    if with_center:
        pts.append((0, 0, 0, 0))
        labels = labels + ("O",)
    return PointConfiguration(4, tuple(pts), labels)


def cross_G_generators() -> list[Matrix]:
    """Central symmetry and the cyclic shift of the first three coordinates."""
    return [matrix([[-int(i == j) for j in range(4)] for i in range(4)]),
            matrix([[0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0], [0, 0, 0, 1]])]


RHO = matrix([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])


def _ext(config: PointConfiguration, ms: Sequence[Matrix]) -> list[Matrix]:
    return [extend_matrix(m, config.dim - 4) for m in ms]


def cross_G(config: PointConfiguration) -> SymmetryGroup:
    return enumerate_group(config, _ext(config, cross_G_generators()))


def cross_Gtilde(config: PointConfiguration) -> SymmetryGroup:
    """G together with RHO (extra trailing coordinates fixed)."""
    return enumerate_group(config, _ext(config, cross_G_generators() + [RHO]))


def cross_full_group(config: PointConfiguration) -> SymmetryGroup:
    """All signed permutations; only defined on configurations they preserve."""
    return enumerate_group(config, _ext(config, signed_permutation_matrices(4)))


def cross_f_vector(config: PointConfiguration) -> tuple[int, int, int, int]:
    """Numbers of vertices, edges, triangles and facets of the boundary (simplicial)."""
    fac = [tuple(sorted(f.points)) for f in facets(config)]
    faces = [{s for f in fac for s in combinations(f, k)} for k in (1, 2, 3)]
    return len(faces[0]), len(faces[1]), len(faces[2]), len(fac)


@lru_cache(maxsize=None)
def build_crosspoly_complex() -> Construction:
    config = cross_config()
    idx = config.index
    arcs = frozenset((idx(u), idx(v)) for orb in EDGE_ORBITS for u, v in orb)
    K = FaceComplex([tuple(idx(l) for l in t) for orb in TRIANGLE_ORBITS[2:] for t in orb], config)
    o = SkeletonOrientation(K, arcs)
    # the listed vertex order of every K-triangle must be its acyclic order
    for orb in TRIANGLE_ORBITS[2:]:
        for t in orb:
            if o.order_on([idx(l) for l in t]) != tuple(idx(l) for l in t):
                raise GeometryError(f"orbit data: {t} is not ordered acyclically")
    all_tris = FaceComplex([tuple(idx(l) for l in t) for orb in TRIANGLE_ORBITS for t in orb], config)
    missing = [tuple(sorted(idx(l) for l in t)) for orb in TRIANGLE_ORBITS[:2] for t in orb]
    return Construction("CROSS4", config, K, o,
                        extras={"all_triangles": all_tris, "missing": missing,
                                "full_orientation": SkeletonOrientation(all_tris, arcs)})


# ---------------------------------------------------------------------------
# the 26-point configuration
# ---------------------------------------------------------------------------

H = Fraction(1, 2)
C_POINTS = (
    ("c+++0", (H, H, H, 0)), ("c---0", (-H, -H, -H, 0)),
    ("c+-0-", (H, -H, 0, -H)), ("c-+0+", (-H, H, 0, H)),
    ("c-0+-", (-H, 0, H, -H)), ("c+0-+", (H, 0, -H, H)),
    ("c0+--", (0, H, -H, -H)), ("c0-++", (0, -H, H, H)),
)

# seed 5-simplices, one G~-orbit representative per row; each is completed with c+++0
SEED_ROWS = (
    ("a0", "a4", "a1", "a2", "b2"), ("a0", "a4", "a2", "a3", "b3"), ("a0", "a4", "a3", "a1", "b1"),
    ("a0", "a4", "a1", "b1", "b2"), ("a0", "a4", "a2", "b2", "b3"), ("a0", "a4", "a3", "b3", "b1"),
    ("a0", "a4", "b4", "b1", "b2"), ("a0", "a4", "b4", "b2", "b3"), ("a0", "a4", "b4", "b3", "b1"),
    ("a0", "b0", "b4", "b1", "b2"), ("a0", "b0", "b4", "b2", "b3"), ("a0", "b0", "b4", "b3", "b1"),
    ("a0", "a1", "a2", "-a4", "-b4"), ("a0", "a2", "a3", "-a4", "-b4"), ("a0", "a3", "a1", "-a4", "-b4"),
    ("a0", "a1", "a2", "b2", "-b4"), ("a0", "a2", "a3", "b3", "-b4"), ("a0", "a3", "a1", "b1", "-b4"),
    ("a0", "a1", "b1", "b2", "-b4"), ("a0", "a2", "b2", "b3", "-b4"), ("a0", "a3", "b3", "b1", "-b4"),
    ("a0", "b0", "b1", "b2", "-b4"), ("a0", "b0", "b2", "b3", "-b4"), ("a0", "b0", "b3", "b1", "-b4"),
    ("a0", "a1", "a2", "a3", "a4"), ("a0", "a1", "a2", "a3", "-a4"),
    ("b0", "b1", "b2", "b3", "b4"), ("b0", "b1", "b2", "b3", "-b4"),
)


@lru_cache(maxsize=None)
def a26_config(shrink: Fraction = H) -> PointConfiguration:
    """The 26 points; the ``c`` points are ``shrink`` times their sign pattern, at height 1/2."""
    shrink = as_fraction(shrink)
    pts, labels = [], []
    for lev, name in ((0, "a"), (1, "b")):
        for i in range(4):
            for s in (1, -1):
                pts.append(tuple(s if j == i else 0 for j in range(4)) + (lev,))
                labels.append(f"{'' if s > 0 else '-'}{name}{i + 1}")
        pts.append((0, 0, 0, 0, lev))
        labels.append(f"{name}0")
    for lab, p in C_POINTS:
        pts.append(tuple(x / H * shrink for x in p) + (H,))
        labels.append(lab)
    return PointConfiguration(5, tuple(pts), tuple(labels))


A26_SCALINGS = (1,) * 18 + (2,) * 8


def seed_simplices(config: PointConfiguration, c_in_last_block: bool = True) -> list[tuple[int, ...]]:
    """The 28 seed rows as index sets.

    The bottom block of four rows gets ``c+++0`` only when ``c_in_last_block``.
    """
    c = config.index("c+++0")
    out = []
    for k, row in enumerate(SEED_ROWS):
        s = list(config.indices(row))
        if k < 24 or c_in_last_block:
            s.append(c)
        out.append(tuple(sorted(s)))
    return out


REPAIRED_SHRINK = Fraction(2, 5)


@lru_cache(maxsize=None)
def build_A26() -> Construction:
    return _build_a26(a26_config(), "A26", A26_SCALINGS)


@lru_cache(maxsize=None)
def build_repaired_A26(shrink: Fraction = REPAIRED_SHRINK) -> Construction:
    """Same combinatorial data with the ``c`` points pulled strictly inside the valid range.

    With ``shrink = 1/2`` each prism over a triangle of K lies in a larger facet;
    any ``1/3 < shrink < 1/2`` makes it a face.  The triangulation is no longer
    unimodular, so no vector configuration is attached.
    """
    shrink = as_fraction(shrink)
    if not Fraction(1, 3) < shrink < H:
        raise GeometryError(f"shrink must lie strictly between 1/3 and 1/2, got {shrink}")
    c = _build_a26(a26_config(shrink), "A26_REPAIRED", None)
    c.extras["repaired"] = True
    c.extras["shrink"] = shrink
    return c


def _build_a26(config: PointConfiguration, cid: str, scalings) -> Construction:
    cross = build_crosspoly_complex()
    Gt = cross_Gtilde(config)
    simplices = {tuple(sorted(p[v] for v in s)) for p in Gt.permutations for s in seed_simplices(config)}
    tri = Triangulation(config, simplices)
    bottom = {v: v for v in range(8)}
    top = {v: v + 9 for v in range(8)}
    return Construction(cid, config, cross.complex, cross.orientation, tri, bottom, top,
                        vectors=homogenize(config, scalings) if scalings else None,
                        extras={"G~": Gt, "center": (config.index("a0"), config.index("b0"))})


def build_T26() -> Triangulation:
    return build_A26().triangulation


def build_M26() -> VectorConfiguration:
    return build_A26().vectors


def beyond_face_of(config: PointConfiguration, c_label: str, missing: Sequence[tuple]) -> tuple[int, ...]:
    """The missing triangle sigma whose centroid direction matches the point ``c_label``."""
    p = dict(C_POINTS)[c_label]
    cross = cross_config()
    for t in missing:
        cen = [sum(cross.points[v][k] for v in t) for k in range(4)]
        if all((x > 0) == (y > 0) and (x < 0) == (y < 0) for x, y in zip(cen, p)):
            return t
    raise GeometryError(f"no missing triangle matches {c_label}")


# ---------------------------------------------------------------------------
# perturbations
# ---------------------------------------------------------------------------

def a26_epsilon(config: Optional[PointConfiguration] = None) -> tuple[Fraction, Fraction]:
    """Largest ``(eps_alpha, eps_beta)`` with ``(O, alpha)``, ``(O, beta)`` beyond only the bottom/top facet.

    ``(O, alpha)`` must stay strictly beneath every facet with a negative last
    normal entry other than the bottom one; similarly for ``(O, beta)`` upward.
    """
    config = config or a26_config()
    lo, hi = [], []
    for f in facets(config):
        n5, off = f.normal[-1], f.offset
        if all(x == 0 for x in f.normal[:-1]):
            continue  # the bottom and top facets themselves
        if n5 < 0:
            lo.append(off / -n5)
        elif n5 > 0:
            hi.append(off / n5 - 1)
    return min(lo), min(hi)


def default_perturbation(cid: str, config: Optional[PointConfiguration] = None) -> tuple[Fraction, Fraction]:
    if cid == "A50":
        return Fraction(-1), Fraction(2)
    ea, eb = a26_epsilon(config)
    return -ea / 2, 1 + eb / 2


def check_perturbation(cid: str, alpha, beta, config: Optional[PointConfiguration] = None) -> None:
    alpha, beta = as_fraction(alpha), as_fraction(beta)
    if cid == "A50":
        if not (alpha < 0 and beta > 1):
            raise GeometryError(f"A50 perturbation needs alpha < 0 < 1 < beta, got {alpha}, {beta}")
    elif cid == "A26":
        ea, eb = a26_epsilon(config)
        if not (-ea < alpha < 0 and 1 < beta < 1 + eb):
            raise GeometryError(f"A26 perturbation needs alpha in ({-ea}, 0) and beta in (1, {1 + eb}),"
                                f" got {alpha}, {beta}")
    else:
        raise GeometryError(f"no perturbation defined for {cid}")


def build_perturbed(cid: str, alpha=None, beta=None, base: Optional[Construction] = None) -> Construction:
    """Move the two non-vertices ``(O, 0)``, ``(O, 1)`` to ``(O, alpha)``, ``(O, beta)``."""
    if base is None:
        base = build_A50() if cid == "A50" else build_A26()
    if alpha is None or beta is None:
        da, db = default_perturbation(cid, base.config)
        alpha = da if alpha is None else alpha
        beta = db if beta is None else beta
    alpha, beta = as_fraction(alpha), as_fraction(beta)
    check_perturbation(cid, alpha, beta, base.config)
    lo, hi = base.extras["center"]
    config = base.config.replace_points({lo: (0, 0, 0, 0, alpha), hi: (0, 0, 0, 0, beta)})
    return Construction(f"{base.id}_PERTURBED", config, base.complex, base.orientation,
                        base.triangulation.with_config(config), base.bottom, base.top,
                        extras={"alpha": alpha, "beta": beta, "base": base.id,
                                "repaired": base.extras.get("repaired", False)})


def build(cid: str) -> Construction:
    """Builder lookup by identifier."""
    table = {"CELL24": build_24cell, "CROSS4": build_crosspoly_complex, "T0": build_T0,
             "A50": build_A50, "A26": build_A26, "A26_REPAIRED": build_repaired_A26, "M50": build_A50, "M26": build_A26,
             "A50_PERTURBED": lambda: build_perturbed("A50"), "A26_PERTURBED": lambda: build_perturbed("A26"),
             "A26_REPAIRED_PERTURBED": lambda: build_perturbed("A26", base=build_repaired_A26())}
    if cid not in table:
        raise KeyError(f"unknown construction {cid!r}; choose from {', '.join(sorted(table))}")
    return table[cid]()


CONSTRUCTION_IDS = ("CELL24", "CROSS4", "T0", "A50", "A26", "A26_REPAIRED", "M50", "M26",
                    "A50_PERTURBED", "A26_PERTURBED", "A26_REPAIRED_PERTURBED")
