"""Triangulations of point configurations and their validity checks."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .exactgeom import (
    GeometryError,
    PointConfiguration,
    affine_rank,
    barycentric_frame,
    face_facets,
    full_dim_pair_improper,
    hull_volume,
    improper_intersection,
    is_face,
    simplex_volume,
)

Simplex = tuple  # sorted tuple of point indices


def canonical_simplices(simplices: Iterable[Iterable[int]]) -> tuple[Simplex, ...]:
    return tuple(sorted({tuple(sorted(s)) for s in simplices}))


@dataclass(frozen=True)
class Triangulation:
    """A set of maximal simplices over a configuration, kept in canonical order.

    Construction does not validate; call :func:`validate`.  Equality and hashing
    use the canonical simplex list.
    """

    config: PointConfiguration = field(compare=False, hash=False, repr=False)
    simplices: tuple[Simplex, ...]

    def __post_init__(self):
        object.__setattr__(self, "simplices", canonical_simplices(self.simplices))

    def __len__(self) -> int:
        return len(self.simplices)

    def __iter__(self):
        return iter(self.simplices)

    def __contains__(self, s) -> bool:
        return tuple(sorted(s)) in self._simplex_set

    @property
    def _simplex_set(self) -> frozenset:
        d = self.__dict__
        if "_sset" not in d:
            object.__setattr__(self, "_sset", frozenset(self.simplices))
        return d["_sset"]

    @property
    def vertex_index(self) -> dict[int, frozenset]:
        """Map vertex -> set of positions (in ``simplices``) of simplices using it."""
        d = self.__dict__
        if "_vindex" not in d:
            idx = defaultdict(set)
            for k, s in enumerate(self.simplices):
                for v in s:
                    idx[v].add(k)
            object.__setattr__(self, "_vindex", {v: frozenset(ks) for v, ks in idx.items()})
        return d["_vindex"]

    def vertices(self) -> frozenset:
        return frozenset(self.vertex_index)

    def containing(self, face: Iterable[int]) -> list[Simplex]:
        """Maximal simplices containing every vertex of ``face``."""
        face = list(face)
        if not face:
            return list(self.simplices)
        vi = self.vertex_index
        if any(v not in vi for v in face):
            return []
        ks = frozenset.intersection(*(vi[v] for v in face))
        return [self.simplices[k] for k in sorted(ks)]

    def has_face(self, face: Iterable[int]) -> bool:
        return bool(self.containing(face))

    def edges(self) -> frozenset:
        return frozenset(e for s in self.simplices for e in combinations(s, 2))

    def volume(self) -> Fraction:
        return sum((simplex_volume(self.config, s) for s in self.simplices), Fraction(0))

    def with_config(self, config: PointConfiguration) -> "Triangulation":
        """Same simplices over another configuration with the same number of points."""
        if len(config) != len(self.config):
            raise GeometryError("configurations differ in size")
        return Triangulation(config, self.simplices)


@dataclass
class ValidationReport:
    ok: bool
    check: str = ""
    message: str = ""
    witness: Optional[tuple] = None
    pairs_checked: int = 0

    def __bool__(self) -> bool:
        return self.ok


def _pairwise(config: PointConfiguration, simplices: Sequence[Simplex], full_dim: bool):
    checked = 0
    for a in range(len(simplices)):
        s1 = simplices[a]
        for b in range(a + 1, len(simplices)):
            s2 = simplices[b]
            checked += 1
            if full_dim:
                bad = full_dim_pair_improper(config, s1, s2)
            else:
                bad = improper_intersection(config, s1, s2)
            if bad:
                return (s1, s2), checked
    return None, checked


def validate(tri: Triangulation) -> ValidationReport:
    """Check that ``tri`` is a triangulation of its configuration.

    (a) every simplex has dim + 1 affinely independent vertices, (b) the simplex
    volumes add up exactly to the volume of the convex hull, (c) every pair of
    simplices meets in a common face.
    """
    config = tri.config
    d = config.dim
    if not config.is_full_dimensional:
        raise GeometryError("validate expects a full-dimensional configuration")
    if not tri.simplices:
        return ValidationReport(False, "nonempty", "no simplices")
    for s in tri.simplices:
        if len(s) != d + 1 or any(not (0 <= i < len(config)) for i in s):
            return ValidationReport(False, "full-dimensional", f"simplex {s} does not have {d + 1} valid vertices", (s,))
        try:
            barycentric_frame(config, s)
        except GeometryError:
            return ValidationReport(False, "full-dimensional", f"simplex {s} is degenerate", (s,))
    total = tri.volume()
    target = hull_volume(config)
    if total != target:
        return ValidationReport(False, "volume", f"simplex volumes sum to {total}, hull volume is {target}",
                                (total, target))
    bad, checked = _pairwise(config, tri.simplices, True)
    if bad is not None:
        return ValidationReport(False, "intersection", f"simplices {bad[0]} and {bad[1]} intersect improperly",
                                bad, checked)
    return ValidationReport(True, "ok", f"{len(tri)} simplices", None, checked)


def link(tri: Triangulation, face: Iterable[int]) -> frozenset:
    """Maximal faces of the link of ``face``: ``{S - face : S maximal, S >= face}``."""
    face = frozenset(face)
    cont = tri.containing(face)
    if not cont:
        raise GeometryError(f"{sorted(face)} is not a simplex of the triangulation")
    return frozenset(tuple(v for v in s if v not in face) for s in cont)


def restricted_simplices(tri: Triangulation, face_pts: Iterable[int]) -> tuple[Simplex, ...]:
    """Maximal simplices of ``tri`` restricted to ``face_pts`` (global indices)."""
    fp = frozenset(face_pts)
    k = affine_rank(tri.config, fp)
    out = set()
    for s in tri.simplices:
        t = tuple(v for v in s if v in fp)
        if len(t) == k + 1:
            out.add(t)
    return tuple(sorted(out))


def restrict_to_face(tri: Triangulation, face_pts: Iterable[int]) -> Triangulation:
    """Induced triangulation of a face of conv(config).

    The result lives on ``config.subconfiguration(face_pts)``: points renumbered
    0..m-1 in increasing order of their original index.
    """
    fp = sorted(set(face_pts))
    ok, _ = is_face(tri.config, fp)
    if not ok:
        raise GeometryError(f"{fp} is not a face of the configuration")
    pos = {g: i for i, g in enumerate(fp)}
    sub_config = tri.config.subconfiguration(fp)
    simplices = [tuple(pos[v] for v in s) for s in restricted_simplices(tri, fp)]
    if not sub_config.dim:
        return Triangulation(sub_config, [(0,)])
    return Triangulation(sub_config, simplices)


# ---------------------------------------------------------------------------
# prisms
# ---------------------------------------------------------------------------

def lift_config(config: PointConfiguration, levels: Sequence = (0, 1), suffixes=("0", "1")) -> PointConfiguration:
    """The configuration ``config x levels``; the copy at ``levels[k]`` occupies block k."""
    pts = [tuple(p) + (Fraction(h),) for h in levels for p in config.points]
    labels = None
    if config.labels is not None:
        labels = tuple(f"({lab},{sfx})" for sfx in suffixes for lab in config.labels)
    return PointConfiguration(config.dim + 1, tuple(pts), labels)


def simplex_config(d: int) -> PointConfiguration:
    """Vertices 0, e_1, ..., e_d of the standard d-simplex."""
    pts = [tuple(0 for _ in range(d))] + [tuple(int(i == j) for j in range(d)) for i in range(d)]
    return PointConfiguration(d, tuple(pts))


def prism_config(d: int) -> PointConfiguration:
    """Delta^d x {0, 1}: ``a_i`` is index i, ``b_i`` is index d + 1 + i."""
    base = simplex_config(d)
    labels = tuple(f"a{i + 1}" for i in range(d + 1)) + tuple(f"b{i + 1}" for i in range(d + 1))
    pts = [p + (0,) for p in base.points] + [p + (1,) for p in base.points]
    return PointConfiguration(d + 1, tuple(pts), labels)


def staircase_simplices(order: Sequence[int], bottom, top) -> list[Simplex]:
    """``{a_s1..a_si, b_si..b_sk}`` for i = 1..k, with ``a = bottom[v]``, ``b = top[v]``."""
    k = len(order)
    return [tuple(sorted([bottom[v] for v in order[: i + 1]] + [top[v] for v in order[i:]]))
            for i in range(k)]


def staircase(d: int, perm: Sequence[int]) -> Triangulation:
    """Staircase triangulation of Delta^d x I for a permutation of 0..d."""
    if sorted(perm) != list(range(d + 1)):
        raise ValueError(f"{perm!r} is not a permutation of 0..{d}")
    config = prism_config(d)
    bottom = list(range(d + 1))
    top = [d + 1 + i for i in range(d + 1)]
    return Triangulation(config, staircase_simplices(perm, bottom, top))


@dataclass(frozen=True)
class PrismSubdivision:
    """Polyhedral subdivision ``T x I`` of ``config x {0, 1}`` into prisms."""

    config: PointConfiguration
    cells: tuple[tuple[int, ...], ...]


def product_with_segment(tri: Triangulation) -> PrismSubdivision:
    n = len(tri.config)
    lifted = lift_config(tri.config)
    cells = sorted(tuple(sorted(list(s) + [v + n for v in s])) for s in tri.simplices)
    return PrismSubdivision(lifted, tuple(cells))


@dataclass(frozen=True)
class PartialTriangulation:
    """Simplices covering a declared union of polytopes (``region``) inside a configuration."""

    config: PointConfiguration = field(compare=False, hash=False, repr=False)
    simplices: tuple[Simplex, ...]
    region: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "simplices", canonical_simplices(self.simplices))
        object.__setattr__(self, "region", canonical_simplices(self.region))


def validate_partial(pt: PartialTriangulation) -> ValidationReport:
    """Per region cell volume bookkeeping plus pairwise common-face test."""
    config = pt.config
    by_cell: dict = {}
    for s in pt.simplices:
        cell = next((c for c in pt.region if set(s) <= set(c)), None)
        if cell is None:
            return ValidationReport(False, "region", f"simplex {s} is not inside any region cell", (s,))
        by_cell.setdefault(cell, []).append(s)
    for cell in pt.region:
        sub_config = config.subconfiguration(cell)
        pos = {g: i for i, g in enumerate(sorted(cell))}
        inside = [s for s in pt.simplices if set(s) <= set(cell)]
        vol = Fraction(0)
        for s in inside:
            if len(s) == sub_config.dim + 1:
                vol += simplex_volume(sub_config, [pos[v] for v in s])
        target = hull_volume(sub_config)
        if vol != target:
            return ValidationReport(False, "volume", f"cell {cell}: simplices cover volume {vol} of {target}",
                                    (cell,))
    for s in pt.simplices:
        if affine_rank(config, s) != len(s) - 1:
            return ValidationReport(False, "independent", f"simplex {s} is degenerate", (s,))
    cells_are_faces = config.is_full_dimensional and all(is_face(config, c)[0] for c in pt.region)
    home = {s: frozenset(next(c for c in pt.region if set(s) <= set(c))) for s in pt.simplices}
    checked = 0
    simplices = pt.simplices
    for a in range(len(simplices)):
        s1 = simplices[a]
        for b in range(a + 1, len(simplices)):
            s2 = simplices[b]
            checked += 1
            c1, c2 = home[s1], home[s2]
            if c1 == c2 or not cells_are_faces:
                bad = improper_intersection(config, s1, s2)
            else:
                # two faces of the hull meet in the face spanned by their common points
                common = c1 & c2
                t1 = tuple(v for v in s1 if v in common)
                t2 = tuple(v for v in s2 if v in common)
                bad = bool(t1) and bool(t2) and improper_intersection(config, t1, t2)
            if bad:
                return ValidationReport(False, "intersection",
                                        f"simplices {s1} and {s2} intersect improperly", (s1, s2), checked)
    return ValidationReport(True, "ok", f"{len(pt.simplices)} simplices", None, checked)


# ---------------------------------------------------------------------------
# pulling triangulations
# ---------------------------------------------------------------------------

def pulling_triangulation(config: PointConfiguration, order: Optional[Sequence[int]] = None) -> Triangulation:
    """Pulling (lexicographic) triangulation: cone the first point of each face over its far facets.

    The first point of ``order`` (default: increasing index) present in a face is
    joined to the pulling triangulations of the facets of that face not containing it.
    """
    if not config.is_full_dimensional:
        raise GeometryError("pulling needs a full-dimensional configuration")
    rank_of = {p: i for i, p in enumerate(order if order is not None else range(len(config)))}
    memo: dict = {}

    def pull(face: frozenset, k: int) -> list:
        if face in memo:
            return memo[face]
        if len(face) == k + 1:
            res = [tuple(sorted(face))]
        else:
            p = min(face, key=rank_of.__getitem__)
            res = [tuple(sorted(s + (p,))) for g in face_facets(config, face) if p not in g
                   for s in pull(frozenset(g), k - 1)]
        memo[face] = res
        return res

    return Triangulation(config, pull(frozenset(range(len(config))), config.dim))
