"""Flip-graph enumeration by breadth-first search, and a brute-force oracle.

Nodes are triangulations in canonical form (sorted tuple of sorted simplices);
equality is full comparison of that tuple, so hash collisions never merge
distinct nodes.  Node ids are assigned in BFS order with each frontier level
sorted by canonical key, which makes the output independent of the thread count.
"""
from __future__ import annotations

import hashlib
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Optional

from .exactgeom import (
    GeometryError,
    PointConfiguration,
    affine_rank,
    barycentric_numerators,
    facets,
    full_dim_pair_improper,
    hull_volume,
    rank,
    simplex_volume,
)
from .flips import apply_flip, find_flips
from .triangulation import Triangulation, validate


def canonical_key(tri: Triangulation) -> tuple:
    return tri.simplices


def triangulation_digest(tri: Triangulation) -> str:
    """Short content hash of the canonical form (for display only, never for equality)."""
    text = ";".join(" ".join(map(str, s)) for s in tri.simplices)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass
class FlipGraph:
    """Undirected flip graph; ``edges`` holds ``(i, j, flip)`` with ``i < j`` and the flip taking i to j."""

    nodes: list = field(default_factory=list)
    edges: list = field(default_factory=list)
    complete: bool = True
    reason: str = ""

    def components(self) -> list[list[int]]:
        parent = list(range(len(self.nodes)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j, _ in self.edges:
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
        groups: dict[int, list[int]] = {}
        for v in range(len(self.nodes)):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    def adjacency(self) -> dict[int, list[int]]:
        adj = {v: [] for v in range(len(self.nodes))}
        for i, j, _ in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return {v: sorted(ns) for v, ns in adj.items()}

    def summary(self) -> str:
        state = "complete" if self.complete else f"partial ({self.reason})"
        return f"{len(self.nodes)} nodes, {len(self.edges)} edges, {len(self.components())} component(s), {state}"


def enumerate_flip_graph(seed: Triangulation, node_limit: Optional[int] = None,
                         time_limit: Optional[float] = None, threads: int = 1,
                         check_seed: bool = True,
                         node_filter: Optional[Callable[[Triangulation], bool]] = None) -> FlipGraph:
    """BFS closure of ``seed`` under flips, up to the given limits.

    ``node_filter`` (optional) stops expansion at nodes for which it returns False;
    such nodes are still recorded.
    """
    if check_seed:
        r = validate(seed)
        if not r.ok:
            raise GeometryError(f"seed is not a triangulation: {r.message}")
    start = time.monotonic()
    g = FlipGraph()
    ids: dict[tuple, int] = {}

    def add(t: Triangulation) -> int:
        key = canonical_key(t)
        if key not in ids:
            ids[key] = len(g.nodes)
            g.nodes.append(t)
        return ids[key]

    add(seed)
    frontier = [seed]
    seen_edges = set()
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        while frontier:
            if pool is None:
                expanded = [find_flips(t) for t in frontier]
            else:
                expanded = list(pool.map(find_flips, frontier))
            nxt = []
            for t, flips in zip(frontier, expanded):
                i = ids[canonical_key(t)]
                for f in flips:
                    t2 = apply_flip(t, f)
                    key = canonical_key(t2)
                    new = key not in ids
                    if new and node_limit is not None and len(g.nodes) >= node_limit:
                        g.complete, g.reason = False, f"node limit {node_limit}"
                        continue
                    j = add(t2)
                    e = (min(i, j), max(i, j))
                    if e not in seen_edges:
                        seen_edges.add(e)
                        g.edges.append((i, j, f) if i < j else (j, i, f.reverse()))
                    if new and (node_filter is None or node_filter(t2)):
                        nxt.append(t2)
                if time_limit is not None and time.monotonic() - start > time_limit:
                    g.complete, g.reason = False, f"time limit {time_limit}s"
                    return g
            frontier = sorted(nxt, key=canonical_key)
    finally:
        if pool is not None:
            pool.shutdown()
    g.edges.sort(key=lambda e: (e[0], e[1]))
    return g


@dataclass
class ComponentStats:
    nodes: int
    complete: bool
    all_satisfy: Optional[bool]
    violations: list


def component_of(seed: Triangulation, budget: int,
                 predicate: Optional[Callable[[Triangulation], bool]] = None,
                 threads: int = 1, check_seed: bool = False) -> ComponentStats:
    """Nodes reachable from ``seed`` within ``budget`` nodes, optionally testing ``predicate`` on each."""
    g = enumerate_flip_graph(seed, node_limit=budget, threads=threads, check_seed=check_seed)
    viol = []
    if predicate is not None:
        viol = [k for k, t in enumerate(g.nodes) if not predicate(t)]
    return ComponentStats(len(g.nodes), g.complete, None if predicate is None else not viol, viol[:5])


# ---------------------------------------------------------------------------
# brute force
# ---------------------------------------------------------------------------

BRUTE_FORCE_MAX_POINTS = 10
BRUTE_FORCE_MAX_DIM = 3


def _generic_point(config: PointConfiguration) -> tuple:
    """A point of the interior lying on no hyperplane spanned by configuration points."""
    d = config.dim
    n = len(config)
    cen = [sum(p[k] for p in config.points) / n for k in range(d)]
    hyper = []
    for sub in combinations(range(n), d):
        if affine_rank(config, sub) == d - 1:
            hyper.append(sub)
    for t in range(1, 200):
        q = tuple(cen[k] + Fraction(1, 97 * t) * Fraction(1, 3 + k * k * 7) for k in range(d))
        pts = config.points
        ok = True
        for sub in hyper:
            m = [[pts[i][k] - q[k] for k in range(d)] for i in sub]
            if rank(m) < d:
                ok = False
                break
        if ok:
            return q
    raise GeometryError("no generic interior point found")


def _contains_point(config: PointConfiguration, s: tuple, q: tuple) -> bool:
    ext = PointConfiguration(config.dim, tuple(config.points[i] for i in s) + (q,))
    bary = barycentric_numerators(ext, tuple(range(len(s))), len(s))
    return all(b > 0 for b in bary) or all(b < 0 for b in bary)


def all_triangulations_bruteforce(config: PointConfiguration) -> set:
    """Every triangulation of ``config`` (unused points allowed), by exhaustive search.

    The first simplex is the one containing a generic interior point; afterwards
    the search repeatedly takes an interior codimension-one face with a single
    incident simplex and branches over the compatible simplices on its other side.
    Each triangulation is produced exactly once.  Independent of :mod:`.flips`.
    """
    d, n = config.dim, len(config)
    if n > BRUTE_FORCE_MAX_POINTS or d > BRUTE_FORCE_MAX_DIM:
        raise GeometryError(f"brute force limited to {BRUTE_FORCE_MAX_POINTS} points in dimension "
                            f"<= {BRUTE_FORCE_MAX_DIM}")
    if not config.is_full_dimensional:
        raise GeometryError("configuration must be full-dimensional")
    simplices = [s for s in combinations(range(n), d + 1) if simplex_volume(config, s) > 0]
    hull_facets = [f.points for f in facets(config)]
    boundary = {r for s in simplices for r in combinations(s, d) if any(set(r) <= f for f in hull_facets)}
    by_ridge: dict[tuple, list] = {}
    for s in simplices:
        for r in combinations(s, d):
            by_ridge.setdefault(r, []).append(s)
    compat_cache: dict = {}

    def compatible(a, b) -> bool:
        key = (a, b) if a < b else (b, a)
        if key not in compat_cache:
            compat_cache[key] = not full_dim_pair_improper(config, a, b)
        return compat_cache[key]

    total = hull_volume(config)
    q = _generic_point(config)
    out = set()

    def extend(chosen: list, count: dict):
        open_ridge = next((r for r, c in sorted(count.items()) if c == 1 and r not in boundary), None)
        if open_ridge is None:
            vol = sum((simplex_volume(config, s) for s in chosen), Fraction(0))
            if vol == total:
                out.add(Triangulation(config, chosen))
            return
        for s in by_ridge[open_ridge]:
            if s in chosen or not all(compatible(s, c) for c in chosen):
                continue
            for r in combinations(s, d):
                count[r] = count.get(r, 0) + 1
            chosen.append(s)
            extend(chosen, count)
            chosen.pop()
            for r in combinations(s, d):
                count[r] -= 1
                if count[r] == 0:
                    del count[r]

    for s in simplices:
        if _contains_point(config, s, q):
            extend([s], {r: 1 for r in combinations(s, d)})
    return out


def export_graph(g: FlipGraph) -> tuple[str, str]:
    """Adjacency list text and id -> simplices dictionary text."""
    adj = g.adjacency()
    adj_lines = [f"{v}: " + " ".join(map(str, ns)) for v, ns in sorted(adj.items())]
    dict_lines = [f"{v} " + ";".join(" ".join(map(str, s)) for s in t.simplices)
                  for v, t in enumerate(g.nodes)]
    return "\n".join(adj_lines) + "\n", "\n".join(dict_lines) + "\n"
