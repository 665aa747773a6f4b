"""Deterministic family generators and the named fixtures.

Generators draw integers only (numpy's Philox stream), so a given spec yields
the same rational coordinates on every platform. Coordinates live on the
1/64 grid. Every family is rejection-sampled and re-validated by the
predicates before it is returned.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from itertools import combinations
from math import isqrt

import numpy as np

from .geom import ConvexBody, GeometryError, Line, Point, intersects, orient3, touching
from .predicates import check_assumptions, has_transversal, is_noncrossing, line_meets
from .position import convex_position_fast, is_case2, tangent_rotation_order

KINDS = (
    "disjoint-on-circle",
    "disjoint-random",
    "noncrossing-nested",
    "stabbed-by-line",
    "case2-tangent-rotation",
    "points",
)
FIXTURES = ("tri3", "bar", "hidden4", "nested", "crossing-bar", "stabbed7")

UNIT = 64
BODY_ATTEMPTS = 400
FAMILY_ATTEMPTS = 60


class GenerationError(RuntimeError):
    """Rejection sampling ran out of attempts."""


@dataclass(frozen=True)
class GenSpec:
    seed: int
    count: int
    kind: str
    max_vertices: int = 6
    scale: int = 20
    general_position: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}; expected one of {KINDS}")
        if not 1 <= self.count <= 40:
            raise ValueError("count must be in 1..40")
        if not 3 <= self.max_vertices <= 12:
            raise ValueError("max_vertices must be in 3..12")
        if not 4 <= self.scale <= 200:
            raise ValueError("scale must be in 4..200")


def _q(v: int) -> Fraction:
    return Fraction(int(v), UNIT)


class _Draw:
    def __init__(self, seed: int):
        self.rng = np.random.Generator(np.random.Philox(seed))

    def int(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        return int(self.rng.integers(lo, hi + 1))

    def chance(self, num: int, den: int) -> bool:
        return self.int(0, den - 1) < num

    def vector(self, r: int) -> tuple[int, int]:
        while True:
            v = (self.int(-r, r), self.int(-r, r))
            if v != (0, 0):
                return v


def _blob(d: _Draw, cx: int, cy: int, r: int, max_vertices: int) -> list[Point]:
    """Random convex polygon within distance r (grid units) of (cx, cy)."""
    while True:
        k = d.int(3, max_vertices)
        pts = []
        while len(pts) < k:
            x, y = d.int(-r, r), d.int(-r, r)
            if x * x + y * y <= r * r:
                pts.append(Point(_q(cx + x), _q(cy + y)))
        body = ConvexBody.from_points("tmp", pts)
        if len(body) >= 3:
            return list(body.vertices)


def _sliver(d: _Draw, cx: int, cy: int, length: int, axis: tuple[int, int] | None = None) -> list[Point]:
    """Long thin triangle or segment centered near (cx, cy)."""
    ax, ay = axis if axis is not None else d.vector(64)
    norm = isqrt(ax * ax + ay * ay) or 1
    hx, hy = ax * length // (2 * norm), ay * length // (2 * norm)
    if (hx, hy) == (0, 0):
        hx = 1
    p, q = Point(_q(cx - hx), _q(cy - hy)), Point(_q(cx + hx), _q(cy + hy))
    if d.chance(1, 3):
        return [p, q]
    w = d.int(2, max(3, length // 12))
    ox, oy = -ay * w // norm, ax * w // norm
    if (ox, oy) == (0, 0):
        ox = 1
    third = Point(_q(cx + ox), _q(cy + oy))
    return list(ConvexBody.from_points("tmp", [p, q, third]).vertices)


def _pairwise_ok(kind: str, body: ConvexBody, family: list[ConvexBody]) -> bool:
    for other in family:
        if kind == "noncrossing-nested":
            if touching(body, other):
                return False
            if not is_noncrossing(body, other):
                return False
        elif intersects(body, other):
            return False
    return True


def _gp_ok(body: ConvexBody, family: list[ConvexBody]) -> bool:
    return all(convex_position_fast([a, b, body]) for a, b in combinations(family, 2))


def _points_ok(body: ConvexBody, family: list[ConvexBody]) -> bool:
    p = body.vertices[0]
    if any(o.vertices[0] == p for o in family):
        return False
    return all(orient3(a.vertices[0], b.vertices[0], p) != 0 for a, b in combinations(family, 2))


class _Sampler:
    def __init__(self, spec: GenSpec, d: _Draw):
        self.spec = spec
        self.d = d
        self.S = spec.scale * UNIT
        if spec.kind == "stabbed-by-line":
            c = self.S // 2
            self.origin = (c, c)
            self.axis = d.vector(64)
        if spec.kind == "case2-tangent-rotation":
            self.c0 = ConvexBody("0", _blob(d, 0, 0, d.int(12, 32), spec.max_vertices))

    def body(self, i: int) -> list[Point]:
        d, S, mv = self.d, self.S, self.spec.max_vertices
        kind = self.spec.kind
        if kind == "points":
            return [Point(_q(d.int(0, S)), _q(d.int(0, S)))]
        if kind == "disjoint-on-circle":
            # body i gets its own sector of the rational parametrization t in [-2, 2]
            R = S // 2
            n = self.spec.count
            width = 4 * UNIT * 8 // n
            centre = -2 * UNIT * 8 + (2 * i + 1) * width // 2
            t = Fraction(centre + d.int(-width // 6, width // 6), 8 * UNIT)
            cx = R * (1 - t * t) / (1 + t * t) + R
            cy = R * 2 * t / (1 + t * t) + R
            return _blob(d, round(cx), round(cy), d.int(16, 48), mv)
        if kind == "disjoint-random":
            cx, cy = d.int(0, S), d.int(0, S)
            if d.chance(3, 10):
                return _sliver(d, cx, cy, d.int(UNIT, 6 * UNIT))
            return _blob(d, cx, cy, d.int(20, 96), mv)
        if kind == "noncrossing-nested":
            cx, cy = d.int(0, S), d.int(0, S)
            return _blob(d, cx, cy, d.int(UNIT, 4 * UNIT), mv)
        if kind == "stabbed-by-line":
            ox, oy = self.origin
            ax, ay = self.axis
            norm = isqrt(ax * ax + ay * ay) or 1
            s = d.int(-S // 2, S // 2)
            px, py = ox + ax * s // norm, oy + ay * s // norm
            if d.chance(1, 2):
                return _sliver(d, px + d.int(-16, 16), py + d.int(-16, 16), d.int(UNIT, 5 * UNIT))
            r = d.int(20, 96)
            return _blob(d, px + d.int(-r // 3, r // 3), py + d.int(-r // 3, r // 3), r, mv)
        if kind == "case2-tangent-rotation":
            while True:
                ax, ay = d.int(-64, 64), d.int(1, 64)
                if 4 * ay >= abs(ax):
                    break
            norm = isqrt(ax * ax + ay * ay) or 1
            dist = d.int(4 * UNIT, 14 * UNIT)
            cx, cy = ax * dist // norm, ay * dist // norm
            if d.chance(1, 3):
                return _sliver(d, cx, cy, d.int(UNIT // 2, 3 * UNIT), axis=(ax, ay))
            return _blob(d, cx, cy, d.int(12, 40), mv)
        raise AssertionError(kind)

    def accept(self, body: ConvexBody, family: list[ConvexBody]) -> bool:
        kind = self.spec.kind
        if kind == "points":
            return _points_ok(body, family)
        if not _pairwise_ok(kind, body, family):
            return False
        if kind == "stabbed-by-line":
            ox, oy = self.origin
            ax, ay = self.axis
            line = Line.through(Point(_q(ox), _q(oy)), Point(_q(ox + ax), _q(oy + ay)))
            if not line_meets(line, body):
                return False
        if kind == "case2-tangent-rotation":
            if intersects(body, self.c0):
                return False
            try:
                if not is_case2(self.c0, family + [body]):
                    return False
            except GeometryError:
                return False
        if self.spec.general_position and not _gp_ok(body, family):
            return False
        return True

    def valid(self, family: list[ConvexBody]) -> bool:
        kind = self.spec.kind
        scope = family + [self.c0] if kind == "case2-tangent-rotation" else family
        if check_assumptions(scope):
            return False
        if kind == "stabbed-by-line" and has_transversal(family) is None:
            return False
        if kind == "case2-tangent-rotation":
            try:
                tangent_rotation_order(self.c0, family)
            except GeometryError:
                return False
        return True


def _sample(spec: GenSpec) -> tuple[list[ConvexBody], ConvexBody | None]:
    d = _Draw(spec.seed)
    sampler = _Sampler(spec, d)
    for _ in range(FAMILY_ATTEMPTS):
        family: list[ConvexBody] = []
        for i in range(spec.count):
            for _ in range(BODY_ATTEMPTS):
                body = ConvexBody(str(i + 1), sampler.body(i))
                if sampler.accept(body, family):
                    family.append(body)
                    break
            else:
                break
        if len(family) == spec.count and sampler.valid(family):
            return family, getattr(sampler, "c0", None)
    raise GenerationError(f"could not generate {spec}")


def generate(spec: GenSpec) -> list[ConvexBody]:
    """A family of the requested kind, validated by the predicates."""
    return _sample(spec)[0]


def generate_case2(spec: GenSpec) -> tuple[ConvexBody, list[ConvexBody]]:
    """A case-2 family together with its pivot body (id "0")."""
    if spec.kind != "case2-tangent-rotation":
        raise ValueError("generate_case2 needs kind 'case2-tangent-rotation'")
    family, c0 = _sample(spec)
    return c0, family


def fixture(name: str) -> list[ConvexBody]:
    """One of the frozen fixture families shipped with the package."""
    from .io import parse_family

    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; expected one of {FIXTURES}")
    text = resources.files("convbodies").joinpath("fixtures", f"{name}.json").read_text()
    return parse_family(json.loads(text))
