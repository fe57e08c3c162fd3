"""Exact rational geometry for small point configurations.

Everything here works over :class:`fractions.Fraction` (or plain ``int`` when the
input allows it).  No floating point value is ever used to take a decision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form

Rational = Fraction
Vector = tuple  # tuple of Fraction / int


class GeometryError(ValueError):
    """Raised when a geometric precondition does not hold."""


# ---------------------------------------------------------------------------
# linear algebra over Q
# ---------------------------------------------------------------------------

def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {x!r} to an exact rational")


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[as_fraction(x) for x in row] for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    if all(isinstance(x, int) for row in rows for x in row):
        return _rank_int(rows)
    return len(rref(rows)[1])


def _rank_int(rows: Sequence[Sequence[int]]) -> int:
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    r = 0
    for c in range(len(m[0])):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r]
        for i in range(r + 1, len(m)):
            f = m[i][c]
            if f:
                row = [a * piv[c] - b * f for a, b in zip(m[i], piv)]
                g = math.gcd(*row)
                m[i] = [x // g for x in row] if g > 1 else row
        r += 1
        if r == len(m):
            break
    return r


def nullspace(rows: Sequence[Sequence], ncols: Optional[int] = None) -> list[list[Fraction]]:
    """Basis of {x : rows @ x = 0}, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    m, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][f]
        basis.append(v)
    return basis


def det(rows: Sequence[Sequence]) -> Fraction:
    """Determinant of a square rational matrix (fraction-free Bareiss on ints)."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    m = []
    for row in rows:
        row = [as_fraction(x) for x in row]
        den = math.lcm(*(x.denominator for x in row))
        scale /= den
        m.append([int(x * den) for x in row])
    return scale * det_int(m)


def det_int(m: Sequence[Sequence[int]]) -> int:
    a = [list(r) for r in m]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def inverse(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(rows)
    aug = [[as_fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(rows)]
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise GeometryError("singular matrix")
    return [row[n:] for row in m]


def primitive(vec: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to a primitive integer vector (same direction)."""
    fr = [as_fraction(x) for x in vec]
    den = math.lcm(*(x.denominator for x in fr))
    ints = [int(x * den) for x in fr]
    g = math.gcd(*ints)
    if g == 0:
        raise GeometryError("zero vector has no primitive form")
    return tuple(x // g for x in ints)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


# ---------------------------------------------------------------------------
# configurations
# ---------------------------------------------------------------------------

def _parse_point(p: Iterable) -> tuple[Fraction, ...]:
    return tuple(as_fraction(x) for x in p)


@dataclass(frozen=True)
class PointConfiguration:
    """Ordered list of points with exact rational coordinates.

    Points are addressed by their 0-based index everywhere in the package.
    """

    dim: int
    points: tuple[tuple[Fraction, ...], ...]
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        pts = tuple(_parse_point(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if any(len(p) != self.dim for p in pts):
            raise GeometryError(f"every point needs exactly {self.dim} coordinates")
        if len(set(pts)) != len(pts):
            raise GeometryError("duplicate points in configuration")
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != len(pts):
                raise GeometryError("one label per point required")
            if len(set(labels)) != len(labels):
                raise GeometryError("labels must be unique")
            object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.points)

    def index(self, label: str) -> int:
        if self.labels is None:
            raise KeyError(label)
        return self.labels.index(label)

    def indices(self, labels: Iterable[str]) -> tuple[int, ...]:
        return tuple(sorted(self.index(x) for x in labels))

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)

    @cached_property
    def scale(self) -> int:
        return math.lcm(*(x.denominator for p in self.points for x in p)) if self.points else 1

    @cached_property
    def int_points(self) -> tuple[tuple[int, ...], ...]:
        """Coordinates multiplied by :attr:`scale`; affine combinatorics unchanged."""
        s = self.scale
        return tuple(tuple(int(x * s) for x in p) for p in self.points)

    @cached_property
    def rank(self) -> int:
        return affine_rank(self, range(len(self)))

    @property
    def is_full_dimensional(self) -> bool:
        return self.rank == self.dim

    @cached_property
    def _cache(self) -> dict:
        return {}

    def replace_points(self, updates: dict[int, Sequence]) -> "PointConfiguration":
        pts = list(self.points)
        for i, p in updates.items():
            pts[i] = _parse_point(p)
        return PointConfiguration(self.dim, tuple(pts), self.labels)

    def subconfiguration(self, subset: Iterable[int]) -> "PointConfiguration":
        """The points of ``subset`` (in sorted order) in affine coordinates of their hull."""
        idx = sorted(set(subset))
        coords = affine_coordinates([self.points[i] for i in idx])
        labels = tuple(self.label(i) for i in idx) if self.labels else None
        dim = len(coords[0]) if coords else 0
        return PointConfiguration(dim, tuple(coords), labels)


@dataclass(frozen=True)
class VectorConfiguration:
    dim: int
    vectors: tuple[tuple[int, ...], ...]
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        vecs = tuple(tuple(int(x) for x in v) for v in self.vectors)
        for v, orig in zip(vecs, self.vectors):
            if any(Fraction(a) != as_fraction(b) for a, b in zip(v, orig)):
                raise GeometryError("vector configurations have integer entries")
        if any(len(v) != self.dim for v in vecs):
            raise GeometryError(f"every vector needs exactly {self.dim} entries")
        object.__setattr__(self, "vectors", vecs)
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))

    def __len__(self) -> int:
        return len(self.vectors)

    def index(self, label: str) -> int:
        return self.labels.index(label)


def homogenize(config: PointConfiguration, scalings: Optional[Sequence[int]] = None) -> VectorConfiguration:
    """Vectors (l_i * a_i, l_i); the default scaling is homogeneous (all ones)."""
    if scalings is None:
        scalings = [1] * len(config)
    if any(l <= 0 for l in scalings):
        raise GeometryError("scaling factors must be positive")
    vecs = []
    for p, l in zip(config.points, scalings):
        v = tuple(x * l for x in p) + (Fraction(l),)
        if any(x.denominator != 1 for x in v):
            raise GeometryError("scaled point is not integral; choose larger scaling factors")
        vecs.append(tuple(int(x) for x in v))
    return VectorConfiguration(config.dim + 1, tuple(vecs), config.labels)


def _check_indices(config: PointConfiguration, subset: Iterable[int]) -> list[int]:
    idx = list(subset)
    for i in idx:
        if not (0 <= i < len(config)):
            raise IndexError(f"point index {i} out of range for {len(config)} points")
    return idx


def affine_rank(config: PointConfiguration, subset: Iterable[int]) -> int:
    idx = _check_indices(config, subset)
    if not idx:
        raise GeometryError("affine rank of an empty set is undefined")
    p0 = config.int_points[idx[0]]
    return rank([sub(config.int_points[i], p0) for i in idx[1:]]) if len(idx) > 1 else 0


def _int_affine_rank(pts: Sequence[Sequence[int]]) -> int:
    if len(pts) <= 1:
        return 0
    return rank([sub(q, pts[0]) for q in pts[1:]])


def affine_kernel(config: PointConfiguration, subset: Sequence[int]) -> list[list[Fraction]]:
    """Basis of affine dependences among the points of ``subset``.

    Each returned vector ``c`` (aligned with ``subset``) satisfies
    ``sum(c) == 0`` and ``sum(c_i * p_i) == 0``; both are re-checked before returning.
    """
    idx = _check_indices(config, subset)
    if not idx:
        return []
    cols = [tuple(config.points[i]) + (Fraction(1),) for i in idx]
    rows = [[c[r] for c in cols] for r in range(config.dim + 1)]
    basis = nullspace(rows, len(idx))
    for v in basis:
        for r in rows:
            if dot(r, v) != 0:
                raise AssertionError("affine kernel self-check failed")
    return basis


def simplex_volume(config: PointConfiguration, simplex: Sequence[int]) -> Fraction:
    """Euclidean volume of a full-dimensional simplex, |det| / d!."""
    d = config.dim
    if len(simplex) != d + 1:
        raise GeometryError(f"a {d}-simplex needs {d + 1} vertices")
    pts = config.int_points
    p0 = pts[simplex[0]]
    m = [sub(pts[i], p0) for i in simplex[1:]]
    return Fraction(abs(det_int(m)), math.factorial(d) * config.scale ** d)


def lattice_spanned_by(config: PointConfiguration, subset: Optional[Iterable[int]] = None) -> list[tuple[int, ...]]:
    """Hermite-normal-form basis of the lattice generated by differences of the points."""
    idx = _check_indices(config, range(len(config)) if subset is None else subset)
    for i in idx:
        if any(x.denominator != 1 for x in config.points[i]):
            raise GeometryError(f"point {i} is not integral")
    p0 = config.points[idx[0]]
    gens = [[int(x) for x in sub(config.points[i], p0)] for i in idx[1:]]
    return _hnf_basis(gens, config.dim)


def vector_lattice(vc: VectorConfiguration) -> list[tuple[int, ...]]:
    return _hnf_basis([list(v) for v in vc.vectors], vc.dim)


def _hnf_basis(gens: list[list[int]], dim: int) -> list[tuple[int, ...]]:
    gens = [g for g in gens if any(g)]
    if not gens:
        return []
    h = hermite_normal_form(Matrix(gens).T)
    return [tuple(int(h[r, c]) for r in range(dim)) for c in range(h.shape[1])]


def lattice_determinant(basis: Sequence[Sequence[int]]) -> int:
    """Covolume of a full-rank lattice given by a basis."""
    if len(basis) != len(basis[0]):
        raise GeometryError("lattice is not full rank")
    return abs(det_int([list(b) for b in basis]))


def det_lattice_index(config: PointConfiguration, simplex: Sequence[int],
                      lattice_basis: Sequence[Sequence[int]]) -> Fraction:
    """|det(edge vectors)| / covolume(lattice); 1 exactly for unimodular simplices."""
    idx = _check_indices(config, simplex)
    if len(idx) != config.dim + 1:
        raise GeometryError("simplex must have dim + 1 vertices")
    p0 = config.points[idx[0]]
    d = abs(det([sub(config.points[i], p0) for i in idx[1:]]))
    if d == 0:
        raise GeometryError(f"degenerate simplex {tuple(idx)}")
    return d / lattice_determinant(lattice_basis)


def vector_det_index(vc: VectorConfiguration, cone: Sequence[int],
                     lattice_basis: Optional[Sequence[Sequence[int]]] = None) -> Fraction:
    if lattice_basis is None:
        lattice_basis = vector_lattice(vc)
    d = abs(det_int([list(vc.vectors[i]) for i in cone]))
    if d == 0:
        raise GeometryError(f"degenerate cone {tuple(cone)}")
    return Fraction(d, lattice_determinant(lattice_basis))


# ---------------------------------------------------------------------------
# hyperplanes and facets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Hyperplane:
    """The hyperplane ``normal . x = offset``.

    ``normal`` is a primitive integer vector.  Facets keep their outward normal
    (so ``normal . x <= offset`` on the polytope); :meth:`canonical` flips the
    sign so that the leading nonzero entry is positive, for set-based dedup.
    """

    normal: tuple[int, ...]
    offset: Fraction

    def __post_init__(self):
        if not any(self.normal):
            raise GeometryError("hyperplane normal must be nonzero")

    def value(self, point: Sequence) -> Fraction:
        return dot(self.normal, point) - self.offset

    def canonical(self) -> "Hyperplane":
        lead = next(x for x in self.normal if x != 0)
        if lead > 0:
            return self
        return Hyperplane(tuple(-x for x in self.normal), -self.offset)


@dataclass(frozen=True)
class Facet:
    hyperplane: Hyperplane
    points: frozenset

    @property
    def normal(self) -> tuple[int, ...]:
        return self.hyperplane.normal

    @property
    def offset(self) -> Fraction:
        return self.hyperplane.offset


def _independent_directions(vectors: Sequence[Sequence]) -> list:
    chosen: list = []
    for v in vectors:
        if rank(chosen + [list(v)]) > len(chosen):
            chosen.append(list(v))
    return chosen


def affine_coordinates(points: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """Coordinates of ``points`` w.r.t. an affine basis chosen greedily among them."""
    pts = [tuple(as_fraction(x) for x in p) for p in points]
    if not pts:
        return []
    p0 = pts[0]
    basis_dirs: list = []
    for q in pts[1:]:
        v = list(sub(q, p0))
        if rank(basis_dirs + [v]) > len(basis_dirs):
            basis_dirs.append(v)
    k = len(basis_dirs)
    if k == 0:
        return [() for _ in pts]
    # pick k coordinate rows where the direction matrix is invertible
    rows_t = [[basis_dirs[j][r] for r in range(len(p0))] for j in range(k)]
    piv = rref(rows_t)[1]
    square = [[basis_dirs[j][r] for j in range(k)] for r in piv]
    inv = inverse(square)
    out = []
    for q in pts:
        diff = sub(q, p0)
        rhs = [diff[r] for r in piv]
        out.append(tuple(sum(inv[i][j] * rhs[j] for j in range(k)) for i in range(k)))
    return out


def _to_ints(coords: Sequence[Sequence]) -> list[tuple[int, ...]]:
    den = math.lcm(*(as_fraction(x).denominator for p in coords for x in p)) if coords and coords[0] else 1
    return [tuple(int(as_fraction(x) * den) for x in p) for p in coords]


def _hyperplane_through(pts: Sequence[Sequence[int]], subset: Sequence[int], dim: int):
    p0 = pts[subset[0]]
    ns = nullspace([sub(pts[i], p0) for i in subset[1:]], dim)
    if len(ns) != 1:
        raise GeometryError("point set does not span a hyperplane")
    n = primitive(ns[0])
    return n, dot(n, p0)


def _rotate(pts, w0, dirs, n, ref=None):
    """Rotate the supporting hyperplane ``n`` about the codim-2 flat ``w0 + span(dirs)``.

    Returns ``(normal, face)`` of the supporting hyperplane reached first when
    turning away from ``ref`` (a point of the current face off the flat).
    """
    dim = len(w0)
    normals = nullspace(dirs, dim) if dirs else [[Fraction(int(i == j)) for i in range(dim)] for j in range(dim)]
    m = None
    for b in normals:
        if rank([list(n), b]) == 2:
            m = primitive(b)
            break
    assert m is not None
    proj = [(dot(n, sub(q, w0)), dot(m, sub(q, w0))) for q in pts]
    if ref is not None and proj[ref][1] > 0:
        m = tuple(-x for x in m)
        proj = [(u, -v) for u, v in proj]
    r = None
    for u, v in proj:
        if u < 0 and (r is None or r[0] * v - r[1] * u < 0):
            r = (u, v)
    if r is None:
        raise GeometryError("configuration is not full-dimensional")
    face = frozenset(i for i, (u, v) in enumerate(proj) if r[0] * v - r[1] * u == 0)
    new_n = primitive([r[1] * a - r[0] * b for a, b in zip(n, m)])
    return new_n, face


def _facet_sets(pts: Sequence[Sequence[int]]) -> list[frozenset]:
    """Facets (as index sets) of an integer point set inside its affine hull."""
    return _subset_facets(pts, frozenset(range(len(pts))), {})


def _subset_facets(pts, subset: frozenset, memo: dict) -> list[frozenset]:
    """Gift wrapping on the sub-configuration ``subset``; ridges recurse through ``memo``."""
    if subset in memo:
        return memo[subset]
    idx = sorted(subset)
    local = _to_ints(affine_coordinates([pts[i] for i in idx]))
    dim = len(local[0])
    if dim == 0:
        memo[subset] = []
        return []
    if dim == 1:
        vals = [p[0] for p in local]
        lo, hi = min(vals), max(vals)
        res = [frozenset(idx[i] for i, x in enumerate(vals) if x == lo),
               frozenset(idx[i] for i, x in enumerate(vals) if x == hi)]
        memo[subset] = res
        return res
    pos = {g: i for i, g in enumerate(idx)}
    # initial facet: start from a coordinate-minimal face and rotate until rank d-1
    lo = min(p[0] for p in local)
    n = tuple(-int(i == 0) for i in range(dim))
    face = frozenset(i for i, p in enumerate(local) if p[0] == lo)
    while _int_affine_rank([local[i] for i in sorted(face)]) < dim - 1:
        fl = sorted(face)
        w0 = local[fl[0]]
        dirs = _independent_directions([sub(local[i], w0) for i in fl[1:]])
        for b in nullspace([list(n)], dim):
            if len(dirs) == dim - 2:
                break
            if rank(dirs + [b]) > len(dirs):
                dirs.append(b)
        n, face = _rotate(local, w0, dirs, n)
    found = {face: n}
    queue = [face]
    while queue:
        f = queue.pop()
        n = found[f]
        fl = sorted(f)
        for ridge_global in _subset_facets(pts, frozenset(idx[i] for i in fl), memo):
            ridge = sorted(pos[g] for g in ridge_global)
            w0 = local[ridge[0]]
            dirs = _independent_directions([sub(local[i], w0) for i in ridge[1:]])
            rset = set(ridge)
            ref = next(i for i in fl if i not in rset)
            n2, f2 = _rotate(local, w0, dirs, n, ref)
            if f2 not in found:
                found[f2] = n2
                queue.append(f2)
    res = sorted((frozenset(idx[i] for i in f) for f in found), key=sorted)
    memo[subset] = res
    return res


def facets(config: PointConfiguration) -> list[Facet]:
    """Facets of conv(config) with outward primitive normals and incident points."""
    cache = config._cache
    if "facets" in cache:
        return cache["facets"]
    if not config.is_full_dimensional:
        raise GeometryError(f"configuration has affine rank {config.rank} < dim {config.dim}")
    pts = config.int_points
    out = []
    memo = config._cache.setdefault("face_facets", {})
    for fs in _subset_facets(pts, frozenset(range(len(pts))), memo):
        fl = sorted(fs)
        n, off = _hyperplane_through(pts, fl, config.dim)
        outside = next(i for i in range(len(pts)) if i not in fs)
        if dot(n, pts[outside]) > off:
            n, off = tuple(-x for x in n), -off
        for q in pts:
            if dot(n, q) > off:
                raise AssertionError("facet enumeration produced a non-supporting hyperplane")
        out.append(Facet(Hyperplane(n, Fraction(off, config.scale)), fs))
    cache["facets"] = out
    return out


def face_facets(config: PointConfiguration, subset: Iterable[int]) -> list[frozenset]:
    """Facets of the sub-configuration ``subset`` inside its own affine hull (global indices)."""
    key = frozenset(subset)
    cache = config._cache.setdefault("face_facets", {})
    if key in cache:
        return cache[key]
    if len(key) < 2:
        cache[key] = []
        return []
    return _subset_facets(config.int_points, key, cache)


def is_face(config: PointConfiguration, subset: Iterable[int]):
    """Whether ``subset`` is exactly the set of points on some face of conv(config).

    Returns ``(True, Hyperplane)`` with a witness functional maximized exactly on
    ``subset`` (value ``offset`` there), or ``(False, None)``.
    """
    s = frozenset(_check_indices(config, subset))
    if not s:
        raise GeometryError("subset must be nonempty")
    if len(s) == len(config):
        return True, None
    containing = [f for f in facets(config) if s <= f.points]
    if not containing:
        return False, None
    inter = frozenset.intersection(*(f.points for f in containing))
    if inter != s:
        return False, None
    normal = tuple(sum(f.normal[k] for f in containing) for k in range(config.dim))
    offset = sum((f.offset for f in containing), Fraction(0))
    return True, Hyperplane(normal, offset)


def maximizers(config: PointConfiguration, functional: Sequence) -> frozenset:
    """Indices of the points where the linear functional attains its maximum."""
    vals = [dot(functional, p) for p in config.points]
    top = max(vals)
    return frozenset(i for i, v in enumerate(vals) if v == top)


def lies_beyond(config: PointConfiguration, point: Sequence, face: Iterable[int]) -> bool:
    """True iff the facets visible from ``point`` are exactly those containing ``face``."""
    face = frozenset(face)
    ok, _ = is_face(config, face)
    if not ok:
        raise GeometryError(f"{sorted(face)} is not a face of the configuration")
    p = _parse_point(point)
    visible = set()
    containing = set()
    for k, f in enumerate(facets(config)):
        v = f.hyperplane.value(p)
        if v == 0:
            raise GeometryError("point lies on a facet-defining hyperplane")
        if v > 0:
            visible.add(k)
        if face <= f.points:
            containing.add(k)
    return visible == containing


def hull_volume(config: PointConfiguration) -> Fraction:
    """Volume of conv(config), via cones from face centroids down to simplicial faces.

    Independent of any triangulation that uses configuration points only.
    """
    if "hull_volume" in config._cache:
        return config._cache["hull_volume"]
    if not config.is_full_dimensional:
        raise GeometryError("hull volume needs a full-dimensional configuration")
    d = config.dim
    pts = config.points

    def centroid(face):
        return tuple(sum(pts[i][k] for i in face) / len(face) for k in range(d))

    def cone_volume(apexes: list, face: frozenset) -> Fraction:
        k = d - len(apexes)  # dimension of face
        if len(face) == k + 1:
            rows = [sub(a, pts[min(face)]) for a in apexes]
            rows += [sub(pts[i], pts[min(face)]) for i in sorted(face)[1:]]
            return abs(det(rows))
        c = centroid(face)
        return sum((cone_volume(apexes + [c], g) for g in face_facets(config, face)), Fraction(0))

    full = frozenset(range(len(config)))
    vol = cone_volume([], full) / math.factorial(d)
    config._cache["hull_volume"] = vol
    return vol


# ---------------------------------------------------------------------------
# barycentric coordinates and proper intersection of simplices
# ---------------------------------------------------------------------------

def barycentric_frame(config: PointConfiguration, simplex: tuple[int, ...]):
    """``(adj, D)`` with ``D > 0`` so that barycentric coords of q are ``adj @ (q, 1) / D``.

    Only defined for full-dimensional simplices; cached per configuration.
    """
    cache = config._cache.setdefault("frames", {})
    fr = cache.get(simplex)
    if fr is not None:
        return fr
    pts = config.int_points
    cols = [tuple(pts[i]) + (1,) for i in simplex]
    mat = [[c[r] for c in cols] for r in range(config.dim + 1)]
    D = det_int(mat)
    if D == 0:
        raise GeometryError(f"degenerate simplex {simplex}")
    inv = inverse(mat)
    adj = [[int(x * D) for x in row] for row in inv]
    if D < 0:
        D = -D
        adj = [[-x for x in row] for row in adj]
    fr = (tuple(tuple(r) for r in adj), D)
    if len(cache) > 200_000:
        cache.clear()
    cache[simplex] = fr
    return fr


def barycentric_numerators(config: PointConfiguration, simplex: tuple[int, ...], q: int) -> tuple[int, ...]:
    adj, _ = barycentric_frame(config, simplex)
    v = config.int_points[q] + (1,)
    return tuple(sum(a * b for a, b in zip(row, v)) for row in adj)


def _fm_feasible(cons: list[tuple[tuple, Fraction]], nvars: int) -> bool:
    """Fourier-Motzkin: is {x : a . x >= b for (a, b) in cons} nonempty?"""

    def norm(a, b):
        fr = [as_fraction(x) for x in a] + [as_fraction(b)]
        den = math.lcm(*(x.denominator for x in fr))
        ints = [int(x * den) for x in fr]
        g = math.gcd(*ints) or 1
        ints = [x // g for x in ints]
        return tuple(ints[:-1]), ints[-1]

    system = {norm(a, b) for a, b in cons}
    for k in range(nvars):
        pos, neg, rest = [], [], set()
        for a, b in system:
            if a[k] > 0:
                pos.append((a, b))
            elif a[k] < 0:
                neg.append((a, b))
            else:
                rest.add((a, b))
        for ap, bp in pos:
            for an, bn in neg:
                cp, cn = -an[k], ap[k]
                a = tuple(cp * x + cn * y for x, y in zip(ap, an))
                rest.add(norm(a, cp * bp + cn * bn))
        system = set()
        for a, b in rest:
            if not any(a):
                if b > 0:
                    return False
            else:
                system.add((a, b))
    return all(b <= 0 for a, b in system)


def improper_intersection(config: PointConfiguration, s1: Sequence[int], s2: Sequence[int]) -> bool:
    """True iff conv(s1) and conv(s2) meet outside conv(s1 & s2).

    Exact test for two affinely independent sets of any dimension: search for an
    affine dependence with nonnegative weights on s1 - s2 and nonpositive on s2 - s1.
    """
    common = set(s1) & set(s2)
    only1 = [i for i in s1 if i not in common]
    only2 = [i for i in s2 if i not in common]
    if not only1 or not only2:
        return False
    u = sorted(set(s1) | set(s2))
    pts = config.int_points
    rows = [[pts[i][r] for i in u] for r in range(config.dim)] + [[1] * len(u)]
    ker = nullspace(rows, len(u))
    if not ker:
        return False
    pos = {i: k for k, i in enumerate(u)}
    cons = []
    total = [Fraction(0)] * len(ker)
    for i in only1:
        a = tuple(v[pos[i]] for v in ker)
        cons.append((a, Fraction(0)))
        total = [t + x for t, x in zip(total, a)]
    for j in only2:
        a = tuple(-v[pos[j]] for v in ker)
        cons.append((a, Fraction(0)))
        total = [t + x for t, x in zip(total, a)]
    cons.append((tuple(total), Fraction(1)))
    return _fm_feasible(cons, len(ker))


def full_dim_pair_improper(config: PointConfiguration, s1: tuple, s2: tuple) -> bool:
    """Fast path of :func:`improper_intersection` for two full-dimensional simplices."""
    set1, set2 = set(s1), set(s2)
    only1 = [k for k, i in enumerate(s1) if i not in set2]
    only2 = [j for j in s2 if j not in set1]
    if not only2:
        return s1 != s2
    # facet of s1 through the common face separating all of s2 - s1: proper
    bary = [barycentric_numerators(config, s1, j) for j in only2]
    for k in only1:
        if all(b[k] < 0 for b in bary):
            return False
    # a vertex of s2 inside the cone spanned at the common face: improper
    for b in bary:
        if all(b[k] >= 0 for k in only1):
            return True
    only1_b = [k for k, j in enumerate(s2) if j not in set1]
    bary2 = [barycentric_numerators(config, s2, i) for i in s1 if i not in set2]
    for k in only1_b:
        if all(b[k] < 0 for b in bary2):
            return False
    if _centroid_separates(config.int_points, [s1[k] for k in only1], only2, sorted(set1 & set2)):
        return False
    return improper_intersection(config, s1, s2)


def _project_off(v: list, b: list) -> list:
    """Integer multiple of ``v`` minus its component along ``b``, reduced by the gcd."""
    bb, vb = dot(b, b), dot(v, b)
    out = [bb * x - vb * y for x, y in zip(v, b)]
    g = math.gcd(*out)
    return [x // g for x in out] if g > 1 else out


def _centroid_separates(pts, only1, only2, common) -> bool:
    """Sufficient test for a proper intersection.

    Take the hyperplane through the common face whose normal is the difference
    of the two centroids projected off that face.  The pair is proper if one side
    lies strictly on its side and the other weakly on the opposite one.
    """
    d = len(pts[0])
    m1, m2 = len(only1), len(only2)
    w = [m1 * sum(pts[j][r] for j in only2) - m2 * sum(pts[i][r] for i in only1) for r in range(d)]
    if common:
        base = pts[common[0]]
        basis = []
        for c in common[1:]:
            v = list(sub(pts[c], base))
            for b in basis:
                v = _project_off(v, b)
            basis.append(v)
        for b in basis:
            w = _project_off(w, b)
        off = dot(w, base)
    v1 = [dot(w, pts[i]) for i in only1]
    v2 = [dot(w, pts[j]) for j in only2]
    if not common:
        return max(v1) < min(v2)
    return (max(v1) < off <= min(v2)) or (max(v1) <= off < min(v2))


def general_position_subsets(config: PointConfiguration, size: int):
    """All affinely independent subsets of the given size (small configurations only)."""
    for c in combinations(range(len(config)), size):
        if affine_rank(config, c) == size - 1:
            yield c
