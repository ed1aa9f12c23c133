"""JSON reading and writing for presentations, dissections, words and curves."""
from __future__ import annotations

import json
from pathlib import Path

from .algebra import AdmissiblePresentation, AlgebraPresentation, Quiver, StructuralError
from .surface import RibbonComplex, algebra_of_dissection, from_json


class SchemaError(ValueError):
    """Input that cannot be read or does not follow the expected schema."""


def load_json(path: str | Path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc


def _strings(x, what: str) -> list[str]:
    if not isinstance(x, list) or not all(isinstance(v, (str, int)) for v in x):
        raise SchemaError(f"'{what}' must be a list of identifiers")
    return [str(v) for v in x]


def algebra_from_dict(d) -> AlgebraPresentation:
    """Parse ``{"vertices", "arrows", "relations", "special"}``; special loops are implicit."""
    if not isinstance(d, dict):
        raise SchemaError("presentation must be a JSON object")
    unknown = set(d) - {"vertices", "arrows", "relations", "special", "name"}
    if unknown:
        raise SchemaError(f"unknown keys {sorted(unknown)}")
    if "vertices" not in d:
        raise SchemaError("missing key 'vertices'")
    vertices = _strings(d["vertices"], "vertices")
    arrows = []
    raw = d.get("arrows", [])
    if not isinstance(raw, list):
        raise SchemaError("'arrows' must be a list")
    for a in raw:
        if not isinstance(a, dict) or not {"name", "source", "target"} <= set(a):
            raise SchemaError(f"arrow {a!r} needs name, source and target")
        arrows.append((str(a["name"]), str(a["source"]), str(a["target"])))
    rels = d.get("relations", [])
    if not isinstance(rels, list) or not all(isinstance(r, list) and len(r) == 2 for r in rels):
        raise SchemaError("'relations' must be a list of arrow pairs")
    special = _strings(d.get("special", []), "special")
    try:
        q = Quiver.build(vertices, arrows)
        return AlgebraPresentation(q, tuple((str(a), str(b)) for a, b in rels), frozenset(special))
    except StructuralError as exc:
        raise SchemaError(str(exc)) from exc


def algebra_to_dict(p: AlgebraPresentation) -> dict:
    return {
        "vertices": list(p.quiver.vertices),
        "arrows": [{"name": a.name, "source": a.source, "target": a.target} for a in p.quiver.arrows],
        "relations": [list(r) for r in p.relations],
        "special": [v for v in p.quiver.vertices if v in p.special],
    }


def admissible_to_dict(ap: AdmissiblePresentation) -> dict:
    return {
        "vertices": list(ap.quiver.vertices),
        "arrows": [{"name": a.name, "source": a.source, "target": a.target} for a in ap.quiver.arrows],
        "relations": [{"text": r.format(),
                       "terms": [{"coefficient": str(c), "path": list(path)} for c, path in r.terms]}
                      for r in ap.relations],
    }


def is_dissection(d) -> bool:
    return (isinstance(d, dict) and isinstance(d.get("vertices"), list) and bool(d["vertices"])
            and isinstance(d["vertices"][0], dict))


def dissection_from_dict(d) -> RibbonComplex:
    try:
        return from_json(d)
    except StructuralError as exc:
        raise SchemaError(str(exc)) from exc


def load_algebra(path: str | Path) -> AlgebraPresentation:
    """A presentation file, or a dissection file read back through its algebra."""
    d = load_json(path)
    if isinstance(d, dict) and is_dissection(d.get("dissection")):
        d = d["dissection"]
    if is_dissection(d):
        r = dissection_from_dict(d)
        try:
            return algebra_of_dissection(r)
        except (StructuralError, ValueError) as exc:
            raise SchemaError(f"{path}: {exc}") from exc
    return algebra_from_dict(d)
