"""Plain-text file formats and the build manifest.

All formats are line based; ``#`` starts a comment except in configuration
rows, where the text after ``#`` is the point label.

* configuration: header ``dim n`` then ``n`` rows of ``dim`` rationals (``p/q``)
* triangulation / complex: one simplex per line, 0-based point indices
* orientation: one arc ``u v`` per line (edge oriented ``u -> v``)
* manifest: JSON mapping file names to SHA-256 digests
"""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .exactgeom import GeometryError, PointConfiguration
from .orientation import FaceComplex, SkeletonOrientation
from .triangulation import Triangulation


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _data_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def format_config(config: PointConfiguration) -> str:
    lines = [f"{config.dim} {len(config)}"]
    for i, p in enumerate(config.points):
        row = " ".join(_fmt(x) for x in p)
        lines.append(f"{row}  # {config.labels[i]}" if config.labels else row)
    return "\n".join(lines) + "\n"


def parse_config(text: str) -> PointConfiguration:
    rows = []
    labels = []
    for raw in text.splitlines():
        body, _, comment = raw.partition("#")
        body = body.strip()
        if not body:
            continue
        rows.append((body, comment.strip()))
    if not rows:
        raise GeometryError("empty configuration file")
    try:
        dim, n = (int(x) for x in rows[0][0].split())
    except ValueError:
        raise GeometryError("configuration header must be 'dim n'") from None
    if len(rows) - 1 != n:
        raise GeometryError(f"header announces {n} points, found {len(rows) - 1}")
    pts = []
    for body, label in rows[1:]:
        try:
            pts.append(tuple(Fraction(x) for x in body.split()))
        except (ValueError, ZeroDivisionError):
            raise GeometryError(f"bad coordinate in row {body!r}") from None
        labels.append(label)
    use_labels = all(labels) and len(set(labels)) == len(labels)
    return PointConfiguration(dim, tuple(pts), tuple(labels) if use_labels else None)


def format_simplices(simplices: Iterable[Sequence[int]]) -> str:
    return "".join(" ".join(map(str, s)) + "\n" for s in simplices)


def parse_simplices(text: str) -> list[tuple[int, ...]]:
    try:
        return [tuple(int(x) for x in line.split()) for line in _data_lines(text)]
    except ValueError:
        raise GeometryError("simplex lines must hold integer point indices") from None


def parse_triangulation(text: str, config: PointConfiguration) -> Triangulation:
    simplices = parse_simplices(text)
    bad = [s for s in simplices if any(not 0 <= v < len(config) for v in s)]
    if bad:
        raise GeometryError(f"simplex {bad[0]} uses an index outside the configuration")
    return Triangulation(config, simplices)


def format_orientation(o: SkeletonOrientation) -> str:
    return "".join(f"{u} {v}\n" for u, v in o.sorted_arcs())


def parse_orientation(text: str, complex: FaceComplex) -> SkeletonOrientation:
    arcs = parse_simplices(text)
    if any(len(a) != 2 for a in arcs):
        raise GeometryError("orientation lines must be 'u v'")
    return SkeletonOrientation(complex, frozenset(arcs))


def parse_complex(text: str, config: Optional[PointConfiguration] = None) -> FaceComplex:
    return FaceComplex(parse_simplices(text), config)


def parse_levels(text: str) -> tuple[dict, dict]:
    """Lines ``v bottom top``: the indices of ``(v, 0)`` and ``(v, 1)`` in the lifted configuration."""
    bottom, top = {}, {}
    for line in parse_simplices(text):
        if len(line) != 3:
            raise GeometryError("level lines must be 'v bottom top'")
        v, b, t = line
        bottom[v], top[v] = b, t
    return bottom, top


def format_levels(bottom: dict, top: dict) -> str:
    return "".join(f"{v} {bottom[v]} {top[v]}\n" for v in sorted(bottom))


def sha256_file(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def write_files(out_dir: Path, files: dict[str, str], meta: Optional[dict] = None) -> Path:
    """Write ``files`` and a ``manifest.json`` with their digests; returns the manifest path."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        (out_dir / name).write_text(text)
    manifest = {"files": {name: sha256_file(out_dir / name) for name in sorted(files)}}
    if meta:
        manifest.update(meta)
    path = out_dir / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


def read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise GeometryError(f"cannot read {path}: {e.strerror}") from None
