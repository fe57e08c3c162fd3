"""Circuits and geometric bistellar flips.

Flip search (:func:`find_flips`) and why it is complete
-------------------------------------------------------
Let a flip on the circuit ``(Z+, Z-)`` with link ``L`` apply to ``T``.  The
maximal simplices it removes are ``(Z - z) + l`` for ``z`` in ``Z+`` and ``l``
maximal in ``L``; all of them are full-dimensional simplices of ``T``.

* ``|Z+| >= 2``: pick ``z != z'`` in ``Z+`` and one ``l``.  The simplices
  ``S = (Z - z) + l`` and ``S' = (Z - z') + l`` share the ``d`` points
  ``(Z - {z, z'}) + l``, so they are adjacent, and ``S | S'`` has ``d + 2``
  points whose unique affine dependence is supported on ``Z``.  Scanning every
  pair of adjacent maximal simplices therefore meets every such circuit; its
  sign is fixed because the two non-shared vertices always lie in ``Z+``.
* ``|Z+| = 1``: ``Z+ = {z}`` with ``z`` in the relative interior of the simplex
  ``Z-`` of ``T``; ``z`` is then not a vertex of ``T``.  For each unused point
  the carrier face is unique, giving exactly one candidate.

Each candidate is then tested against conditions (i) and (ii) directly.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .exactgeom import (
    GeometryError,
    PointConfiguration,
    affine_kernel,
    barycentric_numerators,
)
from .triangulation import Triangulation


@dataclass(frozen=True, order=True)
class Circuit:
    """Ordered pair ``(Z+, Z-)``; swapping the parts gives the opposite circuit."""

    positive: tuple[int, ...]
    negative: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "positive", tuple(sorted(self.positive)))
        object.__setattr__(self, "negative", tuple(sorted(self.negative)))
        if set(self.positive) & set(self.negative):
            raise GeometryError("circuit parts must be disjoint")

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.positive + self.negative))

    def opposite(self) -> "Circuit":
        return Circuit(self.negative, self.positive)


def circuit_of(config: PointConfiguration, dependent_set: Sequence[int]) -> Circuit:
    idx = list(dependent_set)
    ker = affine_kernel(config, idx)
    if not ker:
        raise GeometryError(f"{sorted(idx)} is affinely independent")
    if len(ker) > 1 or any(c == 0 for c in ker[0]):
        raise GeometryError(f"{sorted(idx)} is not minimally dependent")
    lam = ker[0]
    return Circuit(tuple(i for i, c in zip(idx, lam) if c > 0),
                   tuple(i for i, c in zip(idx, lam) if c < 0))


def triangulations_of_circuit(c: Circuit) -> tuple[list[tuple], list[tuple]]:
    """Maximal simplices of ``T+(Z)`` and ``T-(Z)``."""
    z = c.support
    plus = [tuple(v for v in z if v != w) for w in c.positive]
    minus = [tuple(v for v in z if v != w) for w in c.negative]
    return sorted(plus), sorted(minus)


@dataclass(frozen=True, order=True)
class FlipDescriptor:
    """A flip that replaces ``T+(Z) * L`` by ``T-(Z) * L``.

    ``link`` holds the maximal faces of ``L``.  The removed side is always the
    one whose simplices contain ``Z-``.
    """

    circuit: Circuit
    link: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "link", tuple(sorted(tuple(sorted(l)) for l in self.link)))

    def removed(self) -> list[tuple]:
        plus, _ = triangulations_of_circuit(self.circuit)
        return sorted({tuple(sorted(s + l)) for s in plus for l in self.link})

    def added(self) -> list[tuple]:
        _, minus = triangulations_of_circuit(self.circuit)
        return sorted({tuple(sorted(s + l)) for s in minus for l in self.link})

    def reverse(self) -> "FlipDescriptor":
        return FlipDescriptor(self.circuit.opposite(), self.link)


def _maximal_link(tri: Triangulation, face: tuple) -> Optional[frozenset]:
    fs = set(face)
    cont = tri.containing(face)
    if not cont:
        return None
    return frozenset(tuple(v for v in s if v not in fs) for s in cont)


def _check_circuit(tri: Triangulation, circuit: Circuit) -> Optional[FlipDescriptor]:
    plus, _ = triangulations_of_circuit(circuit)
    common = None
    for face in plus:
        lk = _maximal_link(tri, face)
        if lk is None:
            return None
        if common is None:
            common = lk
        elif lk != common:
            return None
    return FlipDescriptor(circuit, tuple(common))


def _adjacent_pairs(tri: Triangulation):
    by_facet = defaultdict(list)
    for s in tri.simplices:
        for k in range(len(s)):
            by_facet[s[:k] + s[k + 1:]].append(s)
    for facet in sorted(by_facet):
        pair = by_facet[facet]
        if len(pair) == 2:
            yield pair[0], pair[1]


def _circuit_of_pair(config: PointConfiguration, s: tuple, s2: tuple) -> Circuit:
    """Circuit supported in ``s | s2`` for adjacent full-dimensional simplices."""
    (extra,) = set(s2) - set(s)
    bary = barycentric_numerators(config, s, extra)
    pos = [extra] + [v for v, b in zip(s, bary) if b < 0]
    neg = [v for v, b in zip(s, bary) if b > 0]
    return Circuit(tuple(pos), tuple(neg))


def find_flips(tri: Triangulation, within: Optional[Iterable[int]] = None) -> list[FlipDescriptor]:
    """All flips applicable to ``tri``, sorted.

    ``within`` optionally restricts the search to circuits contained in a point set.
    """
    config = tri.config
    allowed = None if within is None else frozenset(within)
    seen: set = set()
    out = []
    for s, s2 in _adjacent_pairs(tri):
        if allowed is not None:
            if (set(s) ^ set(s2)) - allowed:
                continue
        circ = _circuit_of_pair(config, s, s2)
        if circ in seen:
            continue
        seen.add(circ)
        if allowed is not None and not set(circ.support) <= allowed:
            continue
        f = _check_circuit(tri, circ)
        if f is not None:
            out.append(f)
    used = tri.vertices()
    for z in range(len(config)):
        if z in used or (allowed is not None and z not in allowed):
            continue
        circ = _insertion_circuit(tri, z)
        if circ is None or circ in seen:
            continue
        if allowed is not None and not set(circ.support) <= allowed:
            continue
        seen.add(circ)
        f = _check_circuit(tri, circ)
        if f is not None:
            out.append(f)
    return sorted(out)


def _insertion_circuit(tri: Triangulation, z: int) -> Optional[Circuit]:
    for s in tri.simplices:
        bary = barycentric_numerators(tri.config, s, z)
        if all(b >= 0 for b in bary):
            carrier = tuple(v for v, b in zip(s, bary) if b > 0)
            return Circuit((z,), carrier)
    return None


def is_applicable(tri: Triangulation, f: FlipDescriptor) -> bool:
    return all(s in tri for s in f.removed())


def apply_flip(tri: Triangulation, f: FlipDescriptor) -> Triangulation:
    removed = f.removed()
    if not all(s in tri for s in removed):
        raise GeometryError("flip descriptor does not apply to this triangulation")
    gone = set(removed)
    keep = [s for s in tri.simplices if s not in gone]
    return Triangulation(tri.config, keep + f.added())


def format_flip(f: FlipDescriptor, direction: str = "forward") -> str:
    """One line of the flip log: ``Z+ | Z- | direction``."""
    pos = " ".join(map(str, f.circuit.positive))
    neg = " ".join(map(str, f.circuit.negative))
    return f"{pos} | {neg} | {direction}"
