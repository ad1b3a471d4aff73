"""JSON input parsing and deterministic output."""

import json
from dataclasses import dataclass

from .errors import HibiError, ParseError
from .poset import poset_from_covers


@dataclass(frozen=True)
class Input:
    kind: str  # "poset", "lattice" or "planar_lattice"
    obj: object  # Poset or PlanarLattice
    as_ideal_lattice: bool = True
    raw: dict = None


def label_str(label):
    if isinstance(label, tuple):
        return "(" + ",".join(label_str(x) for x in label) + ")"
    return str(label)


def parse_text(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return parse_object(data)


def parse_object(data):
    if not isinstance(data, dict):
        raise ParseError("top-level value must be an object")
    kind = data.get("type")
    if kind in ("poset", "lattice"):
        elements = data.get("elements")
        covers = data.get("covers", [])
        if not isinstance(elements, list):
            raise ParseError("'elements' must be a list")
        if not isinstance(covers, list) or any(not isinstance(c, list) or len(c) != 2 for c in covers):
            raise ParseError("'covers' must be a list of [lower, upper] pairs")
        try:
            P = poset_from_covers([str(e) for e in elements], [(str(a), str(b)) for a, b in covers])
        except HibiError as exc:
            raise ParseError(f"invalid {kind}: {exc}") from exc
        flag = data.get("as_ideal_lattice", kind == "poset")
        if not isinstance(flag, bool):
            raise ParseError("'as_ideal_lattice' must be a boolean")
        return Input("lattice" if (kind == "lattice" or not flag) else "poset", P, flag, data)
    if kind == "planar_lattice":
        from .planar import planar_from_points

        pts = data.get("points")
        if not isinstance(pts, list) or any(not isinstance(p, list) or len(p) != 2 or not all(isinstance(c, int) for c in p) for p in pts):
            raise ParseError("'points' must be a list of [i, j] integer pairs")
        try:
            return Input("planar_lattice", planar_from_points(pts), True, data)
        except HibiError as exc:
            raise ParseError(f"invalid planar lattice: {exc}") from exc
    raise ParseError(f"unknown input type {kind!r}")


def load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_text(text)


def poset_json(P, kind="poset"):
    return {
        "type": kind,
        "elements": [label_str(x) for x in P.labels],
        "covers": [[label_str(P.labels[a]), label_str(P.labels[b])] for a, b in P.covers],
    }


def planar_json(L):
    return {"type": "planar_lattice", "points": [list(p) for p in L.sorted_points()]}


def to_jsonable(obj):
    if isinstance(obj, dict):
        return {label_str(k) if not isinstance(k, str) else k: to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [to_jsonable(x) for x in obj]
        return sorted(items, key=json.dumps) if isinstance(obj, (set, frozenset)) else items
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    if hasattr(obj, "as_dict"):
        return to_jsonable(obj.as_dict())
    return str(obj)


def dumps(obj, indent=None):
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=indent, ensure_ascii=False)
