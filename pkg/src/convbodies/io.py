"""JSON documents for families, point sets and results.

Coordinates are integers or "p/q" strings; floats are rejected so that every
round trip is exact.
"""
from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .geom import ConvexBody, GeometryError, Line, Point

FAMILY_SCHEMA = "convbodies.family/1"
POINTS_SCHEMA = "convbodies.points/1"
RESULT_SCHEMA = "convbodies.result/1"


class DocumentError(ValueError):
    """Malformed input document."""


def parse_scalar(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise DocumentError(f"bad coordinate {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError:
            raise DocumentError(f"bad coordinate {value!r}") from None
    raise DocumentError(f"coordinate {value!r} must be an integer or a 'p/q' string")


def format_scalar(value: Fraction) -> int | str:
    value = Fraction(value)
    return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def parse_point(raw: Any) -> Point:
    if not isinstance(raw, (list, tuple)) or len(raw) != 2:
        raise DocumentError(f"point {raw!r} must be a pair")
    return Point(parse_scalar(raw[0]), parse_scalar(raw[1]))


def format_point(p: Point) -> list:
    return [format_scalar(p.x), format_scalar(p.y)]


def parse_family(doc: Any) -> list[ConvexBody]:
    if not isinstance(doc, dict) or not isinstance(doc.get("bodies"), list):
        raise DocumentError("family document needs a 'bodies' list")
    schema = doc.get("schema", FAMILY_SCHEMA)
    if schema != FAMILY_SCHEMA:
        raise DocumentError(f"unsupported schema {schema!r}")
    bodies = []
    for raw in doc["bodies"]:
        if not isinstance(raw, dict) or "id" not in raw or "vertices" not in raw:
            raise DocumentError("each body needs 'id' and 'vertices'")
        try:
            bodies.append(ConvexBody(str(raw["id"]), tuple(parse_point(v) for v in raw["vertices"])))
        except GeometryError as exc:
            raise DocumentError(str(exc)) from None
    ids = [b.id for b in bodies]
    if len(set(ids)) != len(ids):
        raise DocumentError("body ids must be unique")
    return bodies


def family_document(bodies: Sequence[ConvexBody]) -> dict:
    return {
        "schema": FAMILY_SCHEMA,
        "bodies": [{"id": b.id, "vertices": [format_point(v) for v in b.vertices]} for b in bodies],
    }


def parse_points(doc: Any) -> tuple[list[Point], dict[str, int]]:
    """A points document: {"points": [[x, y], ...], "bijection": {body id: index}}."""
    if not isinstance(doc, dict) or not isinstance(doc.get("points"), list):
        raise DocumentError("points document needs a 'points' list")
    points = [parse_point(p) for p in doc["points"]]
    raw = doc.get("bijection")
    if not isinstance(raw, dict):
        raise DocumentError("points document needs a 'bijection' object")
    try:
        bijection = {str(k): int(v) for k, v in raw.items()}
    except (TypeError, ValueError):
        raise DocumentError("bijection values must be point indices") from None
    return points, bijection


def points_document(points: Sequence[Point], bijection: dict[str, int]) -> dict:
    return {
        "schema": POINTS_SCHEMA,
        "points": [format_point(p) for p in points],
        "bijection": dict(bijection),
    }


def format_line(line: Line) -> dict:
    return {"a": line.a, "b": line.b, "c": line.c}


def parse_line(raw: Any) -> Line:
    try:
        return Line.from_normal((parse_scalar(raw["a"]), parse_scalar(raw["b"])), parse_scalar(raw["c"]))
    except (KeyError, TypeError, GeometryError):
        raise DocumentError(f"bad line {raw!r}") from None


def load_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text() if str(path) != "-" else sys.stdin.read()
        return json.loads(text)
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc.msg})") from None


def load_family(path: str | Path) -> list[ConvexBody]:
    return parse_family(load_json(path))


def _is_pair(obj: Any) -> bool:
    return (isinstance(obj, list) and len(obj) == 2
            and all(isinstance(v, (int, str)) and not isinstance(v, bool) for v in obj))


def _encode(obj: Any, depth: int) -> str:
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(obj, dict) and obj:
        items = [f"{inner}{json.dumps(str(k), ensure_ascii=False)}: {_encode(v, depth + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list) and obj and not _is_pair(obj):
        items = [inner + _encode(v, depth + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(obj, ensure_ascii=False)


def dump(doc: Any) -> str:
    """Indented JSON with coordinate pairs kept on one line."""
    return _encode(doc, 0)
