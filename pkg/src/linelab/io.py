"""Deterministic JSON serialization of scenes.

The on-disk schema is strict: unknown keys are rejected so that typos in
hand-written scene files fail loudly instead of silently changing meaning.
Writing the same scene twice produces byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .geom import ConvexPolygon, Disc, Line, Margins, Point, Scene

_LINE_KEYS = {"id", "a", "b", "c"}
_DISC_KEYS = {"id", "cx", "cy", "r", "tangentTo"}
_POLY_KEYS = {"id", "vertices"}
_MARGIN_KEYS = {"minAngle", "minSeparation", "tangencyTolerance"}
_TOP_KEYS = {"lines", "discs", "polygons", "margins"}


def _check_keys(obj: dict, allowed: set[str], where: str) -> None:
    extra = set(obj) - allowed
    if extra:
        raise ValueError(f"unknown keys {sorted(extra)} in {where}")


def scene_to_dict(s: Scene) -> dict[str, Any]:
    discs = []
    for d in sorted(s.discs, key=lambda d: d.id):
        # float() so integer-valued inputs serialize the same as reloads
        entry: dict[str, Any] = {
            "id": d.id,
            "cx": float(d.center.x),
            "cy": float(d.center.y),
            "r": float(d.radius),
        }
        if d.tangent_to:
            entry["tangentTo"] = list(d.tangent_to)
        discs.append(entry)
    polys = [
        {"id": p.id, "vertices": [[float(v.x), float(v.y)] for v in p.vertices]}
        for p in sorted(s.polygons, key=lambda p: p.id)
    ]
    return {
        "lines": [
            {"id": l.id, "a": float(l.a), "b": float(l.b), "c": float(l.c)}
            for l in sorted(s.lines, key=lambda l: l.id)
        ],
        "discs": discs,
        "polygons": polys,
        "margins": {
            "minAngle": s.margins.min_angle,
            "minSeparation": s.margins.min_separation,
            "tangencyTolerance": s.margins.tangency_tolerance,
        },
    }


def scene_from_dict(data: dict[str, Any]) -> Scene:
    if not isinstance(data, dict):
        raise ValueError("scene document must be a JSON object")
    _check_keys(data, _TOP_KEYS, "scene")
    lines = []
    for entry in data.get("lines", []):
        _check_keys(entry, _LINE_KEYS, "line")
        lines.append(Line(int(entry["id"]), entry["a"], entry["b"], entry["c"]))
    pds: list = []
    for entry in data.get("discs", []):
        _check_keys(entry, _DISC_KEYS, "disc")
        pds.append(
            Disc(
                int(entry["id"]),
                Point(float(entry["cx"]), float(entry["cy"])),
                float(entry["r"]),
                tangent_to=tuple(int(t) for t in entry.get("tangentTo", [])),
            )
        )
    for entry in data.get("polygons", []):
        _check_keys(entry, _POLY_KEYS, "polygon")
        pds.append(
            ConvexPolygon(
                int(entry["id"]),
                tuple(Point(float(x), float(y)) for x, y in entry["vertices"]),
            )
        )
    margins = Margins()
    if "margins" in data:
        _check_keys(data["margins"], _MARGIN_KEYS, "margins")
        md = data["margins"]
        margins = Margins(
            min_angle=float(md.get("minAngle", margins.min_angle)),
            min_separation=float(md.get("minSeparation", margins.min_separation)),
            tangency_tolerance=float(
                md.get("tangencyTolerance", margins.tangency_tolerance)
            ),
        )
    return Scene(tuple(lines), tuple(pds), margins)


def dumps(data: Any) -> str:
    """Canonical JSON text used for every file and stdout report."""
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def save_scene(s: Scene, path: str | Path) -> None:
    Path(path).write_text(dumps(scene_to_dict(s)))


def load_scene(path: str | Path) -> Scene:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON ({exc})") from exc
    return scene_from_dict(data)
