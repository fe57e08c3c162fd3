"""Locally acyclic orientations of 1-skeleta and triangulations of K x I.

An orientation ``v -> w`` of an edge corresponds to the diagonal
``{(v, 0), (w, 1)}`` of the square ``{v, w} x I``.  On each face the induced
linear order (sources first) picks the staircase triangulation of the prism.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Optional, Sequence

from .exactgeom import GeometryError, PointConfiguration, affine_rank, facets, is_face
from .triangulation import (
    PartialTriangulation,
    Triangulation,
    canonical_simplices,
    staircase_simplices,
)


@dataclass(frozen=True)
class FaceComplex:
    """Simplicial complex given by its top faces; lower faces are implied."""

    top_faces: tuple[tuple[int, ...], ...]
    config: Optional[PointConfiguration] = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "top_faces", canonical_simplices(self.top_faces))

    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for f in self.top_faces for v in f}))

    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted({e for f in self.top_faces for e in combinations(f, 2)}))

    def faces(self, k: Optional[int] = None) -> tuple[tuple[int, ...], ...]:
        """All faces, or only those with ``k`` vertices."""
        sizes = range(1, max(map(len, self.top_faces)) + 1) if k is None else [k]
        return tuple(sorted({s for f in self.top_faces for m in sizes for s in combinations(f, m)}))

    def f_vector(self) -> tuple[int, ...]:
        top = max(map(len, self.top_faces))
        return tuple(len(self.faces(m)) for m in range(1, top + 1))

    def tops_containing(self, edge: Sequence[int]) -> list[tuple[int, ...]]:
        es = set(edge)
        return [f for f in self.top_faces if es <= set(f)]

    def check_faces(self) -> Optional[str]:
        """None if every top face is an affinely independent face of conv(config)."""
        if self.config is None:
            raise GeometryError("complex has no configuration attached")
        for f in self.top_faces:
            if affine_rank(self.config, f) != len(f) - 1:
                return f"{f} is not affinely independent"
            if not is_face(self.config, f)[0]:
                return f"{f} is not a face of the hull"
        return None


@dataclass(frozen=True)
class SkeletonOrientation:
    """Every edge of ``complex`` oriented exactly once, as arcs ``(tail, head)``."""

    complex: FaceComplex
    arcs: frozenset

    def __post_init__(self):
        arcs = frozenset(tuple(a) for a in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        undirected = {tuple(sorted(a)) for a in arcs}
        if len(undirected) != len(arcs) or undirected != set(self.complex.edges()):
            raise GeometryError("orientation must direct every edge of the complex exactly once")

    def points_to(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def reversed_edge(self, edge: Sequence[int]) -> "SkeletonOrientation":
        u, v = edge
        a = (u, v) if (u, v) in self.arcs else (v, u)
        return SkeletonOrientation(self.complex, (self.arcs - {a}) | {(a[1], a[0])})

    def reversed(self) -> "SkeletonOrientation":
        return SkeletonOrientation(self.complex, frozenset((v, u) for u, v in self.arcs))

    def order_on(self, face: Sequence[int]) -> Optional[tuple[int, ...]]:
        """Linear order (sources first) induced on ``face``, or None if cyclic."""
        outdeg = {v: sum((v, w) in self.arcs for w in face if w != v) for v in face}
        order = tuple(sorted(face, key=lambda v: -outdeg[v]))
        if sorted(outdeg.values()) != list(range(len(face))):
            return None
        return order

    def mapped(self, perm: Mapping[int, int] | Sequence[int]) -> "SkeletonOrientation":
        """Image under a vertex permutation (complex mapped along)."""
        cx = FaceComplex([tuple(perm[v] for v in f) for f in self.complex.top_faces], self.complex.config)
        return SkeletonOrientation(cx, frozenset((perm[u], perm[v]) for u, v in self.arcs))


def orientation_from_order(complex: FaceComplex, order: Sequence[int]) -> SkeletonOrientation:
    """Globally acyclic orientation: earlier vertices point to later ones."""
    rank = {v: i for i, v in enumerate(order)}
    return SkeletonOrientation(complex, frozenset((u, v) if rank[u] < rank[v] else (v, u)
                                                  for u, v in complex.edges()))


def _cyclic_triangle(o: SkeletonOrientation, face: Sequence[int]) -> Optional[tuple[int, ...]]:
    for t in combinations(face, 3):
        if o.order_on(t) is None:
            return t
    return None


def is_locally_acyclic(o: SkeletonOrientation) -> tuple[bool, Optional[tuple[int, ...]]]:
    """``(True, None)`` or ``(False, t)`` with ``t`` a cyclically oriented triangle of the complex.

    A tournament is acyclic iff it has no directed triangle, so top faces suffice.
    """
    for f in o.complex.top_faces:
        t = _cyclic_triangle(o, f)
        if t is not None:
            return False, t
    return True, None


@dataclass
class ReversibilityReport:
    """Per-edge reversibility; irreversible edges carry the triangle their reversal makes cyclic."""

    reversible: dict
    witnesses: dict

    @property
    def reversible_edges(self) -> list[tuple[int, int]]:
        return sorted(e for e, r in self.reversible.items() if r)

    @property
    def count(self) -> int:
        return len(self.reversible_edges)


def reversible_edges(o: SkeletonOrientation) -> ReversibilityReport:
    ok, t = is_locally_acyclic(o)
    if not ok:
        raise GeometryError(f"orientation is cyclic on {t}")
    rev, wit = {}, {}
    for e in o.complex.edges():
        r = o.reversed_edge(e)
        bad = None
        for f in o.complex.tops_containing(e):
            bad = _cyclic_triangle(r, f)
            if bad is not None:
                break
        rev[e] = bad is None
        if bad is not None:
            wit[e] = bad
    return ReversibilityReport(rev, wit)


def non_reversible_edge_of(o: SkeletonOrientation, triangle: Sequence[int]) -> tuple[int, int]:
    """For an acyclic triangle ``u -> v -> w``, the arc ``(u, w)`` whose reversal creates a cycle."""
    order = o.order_on(triangle)
    if order is None or len(order) != 3:
        raise GeometryError(f"{triangle} is not an acyclic triangle")
    return order[0], order[2]


# ---------------------------------------------------------------------------
# the bijection with triangulations of K x I
# ---------------------------------------------------------------------------

def _levels(n: int, bottom, top):
    if bottom is None:
        bottom = {v: v for v in range(n)}
    if top is None:
        top = {v: v + n for v in range(n)}
    return bottom, top


def prism_region(complex: FaceComplex, bottom: Mapping[int, int], top: Mapping[int, int]):
    return tuple(tuple(sorted([bottom[v] for v in f] + [top[v] for v in f])) for f in complex.top_faces)


def orientation_to_triangulation(o: SkeletonOrientation, config: PointConfiguration,
                                 bottom: Optional[Mapping[int, int]] = None,
                                 top: Optional[Mapping[int, int]] = None) -> PartialTriangulation:
    """Staircase triangulation of every prism F x I, glued along common faces.

    ``config`` is the lifted configuration; by default ``(v, 0)`` has index ``v``
    and ``(v, 1)`` has index ``v + n`` with ``n = len(config) // 2``.
    """
    ok, t = is_locally_acyclic(o)
    if not ok:
        raise GeometryError(f"orientation is cyclic on {t}")
    bottom, top = _levels(len(config) // 2, bottom, top)
    simplices = set()
    for f in o.complex.top_faces:
        simplices.update(staircase_simplices(o.order_on(f), bottom, top))
    return PartialTriangulation(config, simplices, prism_region(o.complex, bottom, top))


def triangulation_to_orientation(tri, complex: FaceComplex,
                                 bottom: Optional[Mapping[int, int]] = None,
                                 top: Optional[Mapping[int, int]] = None) -> SkeletonOrientation:
    """Read ``v -> w`` off the diagonal ``{(v, 0), (w, 1)}`` used in each square ``{v, w} x I``."""
    bottom, top = _levels(len(tri.config) // 2, bottom, top)
    if isinstance(tri, PartialTriangulation):
        edge_set = {e for s in tri.simplices for e in combinations(s, 2)}
        has = lambda a, b: tuple(sorted((a, b))) in edge_set
    else:
        has = lambda a, b: tri.has_face((a, b))
    arcs = set()
    for v, w in complex.edges():
        fwd = has(bottom[v], top[w])
        bwd = has(bottom[w], top[v])
        if fwd == bwd:
            raise GeometryError(f"square over edge {(v, w)} is not triangulated by exactly one diagonal")
        arcs.add((v, w) if fwd else (w, v))
    return SkeletonOrientation(complex, frozenset(arcs))


@dataclass
class RestrictionPrecondition:
    """Outcome of the two conditions on ``F x I`` for every top face ``F``."""

    ok: bool
    failures: list = field(default_factory=list)


def check_restriction_preconditions(config: PointConfiguration, complex: FaceComplex,
                                    bottom: Optional[Mapping[int, int]] = None,
                                    top: Optional[Mapping[int, int]] = None) -> RestrictionPrecondition:
    """Each ``F x I`` must be a face of conv(config) containing no other configuration points."""
    bottom, top = _levels(len(config) // 2, bottom, top)
    failures = []
    fac = facets(config)
    for f, prism in zip(complex.top_faces, prism_region(complex, bottom, top)):
        ps = frozenset(prism)
        containing = [g.points for g in fac if ps <= g.points]
        inter = frozenset.intersection(*containing) if containing else frozenset(range(len(config)))
        if inter == ps:
            continue
        if containing and affine_rank(config, inter) == affine_rank(config, ps):
            failures.append((f, "extra points", tuple(sorted(inter - ps))))
        else:
            failures.append((f, "not a face", None))
    return RestrictionPrecondition(not failures, failures)


def restrict_to_complex(tri: Triangulation, complex: FaceComplex,
                        bottom: Optional[Mapping[int, int]] = None,
                        top: Optional[Mapping[int, int]] = None,
                        check: bool = True) -> SkeletonOrientation:
    """Orientation of ``complex`` induced by the restriction of ``tri`` to ``K x I``."""
    if check:
        pre = check_restriction_preconditions(tri.config, complex, bottom, top)
        if not pre.ok:
            raise GeometryError(f"restriction preconditions fail: {pre.failures[:3]}")
    return triangulation_to_orientation(tri, complex, bottom, top)
