"""JSON encodings for drawings, rotation systems, witnesses and templates.

Every writer emits sorted keys so that identical objects serialize to
identical bytes.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .combinatorics import CyclicOrder, Permutation
from .drawing import AbstractDrawing, CrossingRecord, OnePageDrawing, validate
from .errors import InvalidDrawingError, InvalidTemplateError
from .realizer import PlanarizedWitness, RotationSystem
from .templates import Template


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write through a temporary file in the same directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_json(path: str | os.PathLike):
    with open(path) as fh:
        return json.load(fh)


# -- drawings ------------------------------------------------------------------


def drawing_to_json(d: AbstractDrawing) -> dict:
    return {
        "classes": [list(c) for c in d.classes],
        "edges": sorted(list(e) for e in d.edges),
        "vertex_rotations": {v: list(r.items) for v, r in d.vertex_rotations.items()},
        "crossings": [
            {"e": list(c.edge_e), "f": list(c.edge_f), "rotation": list(c.rotation.items)}
            for c in d.crossings
        ],
    }


def drawing_from_json(data: dict, allow_invalid: bool = False) -> AbstractDrawing:
    d = AbstractDrawing(
        tuple(Permutation(c) for c in data["classes"]),
        frozenset(tuple(e) for e in data["edges"]),
        {v: CyclicOrder(r) for v, r in data.get("vertex_rotations", {}).items()},
        tuple(
            CrossingRecord(tuple(c["e"]), tuple(c["f"]), CyclicOrder(c["rotation"]))
            for c in data.get("crossings", [])
        ),
    )
    if not allow_invalid:
        problems = validate(d)
        if problems:
            raise InvalidDrawingError(problems)
    return d


def onepage_from_json(data: dict) -> OnePageDrawing:
    return OnePageDrawing(CyclicOrder(data["bounding_order"]), frozenset(tuple(e) for e in data["edges"]))


def onepage_to_json(p: OnePageDrawing) -> dict:
    return {"bounding_order": list(p.bounding_order.items), "edges": sorted(list(e) for e in p.edges)}


# -- rotation systems and witnesses ----------------------------------------------


def rotation_system_to_json(rs: RotationSystem) -> dict:
    return {
        "vertices": list(rs.vertices),
        "edges": sorted(list(e) for e in rs.edges),
        "rotation": {v: list(rs.rotation[v].items) for v in rs.vertices},
    }


def rotation_system_from_json(data: dict) -> RotationSystem:
    return RotationSystem(
        tuple(data["vertices"]),
        frozenset(tuple(e) for e in data["edges"]),
        {v: CyclicOrder(r) for v, r in data["rotation"].items()},
    )


def witness_to_json(w: PlanarizedWitness) -> dict:
    return {
        "vertices": list(w.vertices),
        "nodes": list(w.nodes),
        "rotation": {v: list(w.rotation[v].items) for v in w.nodes},
        "segment_map": [
            {"edge": list(e), "path": list(p)} for e, p in sorted(w.segment_map.items())
        ],
    }


def witness_from_json(data: dict) -> PlanarizedWitness:
    return PlanarizedWitness(
        tuple(data["vertices"]),
        tuple(data["nodes"]),
        {v: CyclicOrder(r) for v, r in data["rotation"].items()},
        {tuple(s["edge"]): tuple(s["path"]) for s in data["segment_map"]},
    )


# -- templates -------------------------------------------------------------------


def template_to_json(t: Template) -> dict:
    return {
        "m": t.m,
        "classes": [
            {"plus": list(t.plus[i]), "minus": list(t.minus[i])} for i in range(t.m)
        ],
    }


def template_from_json(data: dict) -> Template:
    classes = data["classes"]
    if "m" in data and data["m"] != len(classes):
        raise InvalidTemplateError(f"m = {data['m']} but {len(classes)} classes listed")
    return Template(
        tuple(tuple(c.get("plus", [])) for c in classes),
        tuple(tuple(c.get("minus", [])) for c in classes),
    )
