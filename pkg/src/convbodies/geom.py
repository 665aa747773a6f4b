"""Exact rational geometry for convex polygonal bodies.

Every predicate here works on :class:`fractions.Fraction` coordinates, so
orientation signs are decided without rounding. Bodies are convex polygons
given counterclockwise; a single vertex is a point body and two vertices a
segment body.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, NamedTuple, Sequence


class GeometryError(ValueError):
    """Raised when an input violates a geometric precondition."""


class SharedBoundaryError(GeometryError):
    """Two bodies meet on the hull boundary, so the contributor labeling is ambiguous."""


def to_scalar(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; use int, Fraction or 'p/q' strings")
    return Fraction(value)


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    def __sub__(self, other):  # type: ignore[override]
        return Point(self.x - other.x, self.y - other.y)

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other.x, self.y + other.y)

    def dot(self, other) -> Fraction:
        return self.x * other[0] + self.y * other[1]

    def __repr__(self):
        return f"Point({self.x}, {self.y})"


def pt(x, y) -> Point:
    return Point(to_scalar(x), to_scalar(y))


def cross(ox, oy, ax, ay, bx, by):
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


def orient3(p: Point, q: Point, r: Point) -> int:
    """Sign of det(q - p, r - p): +1 counterclockwise, -1 clockwise, 0 collinear."""
    d = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    return (d > 0) - (d < 0)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _primitive(*values: Fraction) -> tuple[int, ...]:
    """Scale rationals to coprime integers, keeping their signs."""
    den = 1
    for v in values:
        den = _lcm(den, v.denominator)
    ints = [int(v * den) for v in values]
    g = 0
    for i in ints:
        g = gcd(g, i)
    if g == 0:
        raise GeometryError("zero vector")
    return tuple(i // g for i in ints)


def _primitive_nonneg(*values: Fraction) -> tuple[int, ...]:
    """Positive rescaling to integers (not reduced by gcd, sign kept)."""
    den = 1
    for v in values:
        den = _lcm(den, v.denominator)
    return tuple(int(v * den) for v in values)


class Direction(NamedTuple):
    """Undirected primitive integer direction; first nonzero component positive."""

    dx: int
    dy: int


def direction(dx, dy) -> Direction:
    a, b = _primitive(to_scalar(dx), to_scalar(dy))
    if a < 0 or (a == 0 and b < 0):
        a, b = -a, -b
    return Direction(a, b)


class Line(NamedTuple):
    """The line a*x + b*y = c with coprime integer coefficients."""

    a: int
    b: int
    c: int

    @classmethod
    def from_normal(cls, normal, c) -> "Line":
        a, b, cc = _primitive(to_scalar(normal[0]), to_scalar(normal[1]), to_scalar(c))
        if a == 0 and b == 0:
            raise GeometryError("degenerate line normal")
        if a < 0 or (a == 0 and b < 0):
            a, b, cc = -a, -b, -cc
        return cls(a, b, cc)

    @classmethod
    def through(cls, p: Point, q: Point) -> "Line":
        if p == q:
            raise GeometryError("line through coincident points")
        n = (q.y - p.y, p.x - q.x)
        return cls.from_normal(n, n[0] * p.x + n[1] * p.y)

    def value(self, p: Point) -> Fraction:
        return self.a * p.x + self.b * p.y - self.c

    def side(self, p: Point) -> int:
        xn, xd = p.x.numerator, p.x.denominator
        yn, yd = p.y.numerator, p.y.denominator
        v = self.a * xn * yd + self.b * yn * xd - self.c * xd * yd
        return (v > 0) - (v < 0)

    def __str__(self):
        return f"{self.a}*x + {self.b}*y = {self.c}"


def _common_den(points) -> int:
    den = 1
    for p in points:
        den = _lcm(_lcm(den, p.x.denominator), p.y.denominator)
    return den


def convex_hull(points: Iterable[Point]) -> list[Point]:
    """Strict convex hull (no collinear vertices), counterclockwise.

    Starts at the lowest-leftmost point. One or two distinct input points give
    a hull of that many vertices.
    """
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    # integer coordinates on a common denominator keep the turn tests cheap
    den = _common_den(pts)
    scaled = [(int(p.x * den), int(p.y * den), p) for p in pts]

    def half(seq):
        out: list = []
        for p in seq:
            while len(out) >= 2:
                (ox, oy, _), (ax, ay, _) = out[-2], out[-1]
                if (ax - ox) * (p[1] - oy) - (ay - oy) * (p[0] - ox) > 0:
                    break
                out.pop()
            out.append(p)
        return out

    lower = half(scaled)
    upper = half(reversed(scaled))
    hull = [s[2] for s in lower[:-1] + upper[:-1]]
    if len(hull) == 2 and hull[0] == hull[1]:
        return hull[:1]
    return hull


# An affine functional a*x + b*y + c, tagged as an equality or a >= 0 constraint.
_Constraint = tuple[bool, int, int, int]


@dataclass(frozen=True)
class ConvexBody:
    id: str
    vertices: tuple[Point, ...]

    def __post_init__(self):
        verts = tuple(pt(*v) for v in self.vertices)
        object.__setattr__(self, "id", str(self.id))
        object.__setattr__(self, "vertices", verts)
        if not verts:
            raise GeometryError(f"body {self.id}: no vertices")
        if len(set(verts)) != len(verts):
            raise GeometryError(f"body {self.id}: repeated vertex")
        n = len(verts)
        if n >= 3:
            for i in range(n):
                if orient3(verts[i], verts[(i + 1) % n], verts[(i + 2) % n]) <= 0:
                    raise GeometryError(
                        f"body {self.id}: vertices are not strictly convex counterclockwise"
                    )
            # a positive turn at every vertex still allows a winding number > 1
            if len(convex_hull(verts)) != n:
                raise GeometryError(f"body {self.id}: polygon is not simple")

    @classmethod
    def from_points(cls, id, points: Iterable) -> "ConvexBody":
        """Body equal to the convex hull of arbitrary points."""
        return cls(id, tuple(convex_hull(pt(*p) for p in points)))

    def __len__(self):
        return len(self.vertices)

    @property
    def is_point(self) -> bool:
        return len(self.vertices) == 1

    @property
    def is_segment(self) -> bool:
        return len(self.vertices) == 2

    def edges(self) -> list[tuple[Point, Point]]:
        v = self.vertices
        if len(v) == 1:
            return [(v[0], v[0])]
        if len(v) == 2:
            return [(v[0], v[1])]
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    @property
    def constraints(self) -> tuple[_Constraint, ...]:
        """Integer affine constraints (is_equality, a, b, c) meaning a*x + b*y + c (= or >=) 0."""
        cached = self.__dict__.get("_constraints")
        if cached is not None:
            return cached
        v = self.vertices
        if len(v) == 1:
            p = v[0]
            cons = [(True, 1, 0, -p.x), (True, 0, 1, -p.y)]
        elif len(v) == 2:
            u, w = v
            ex, ey = w.x - u.x, w.y - u.y
            cons = [
                (True, -ey, ex, ey * u.x - ex * u.y),
                (False, ex, ey, -(ex * u.x + ey * u.y)),
                (False, -ex, -ey, ex * w.x + ey * w.y),
            ]
        else:
            cons = []
            for p, q in self.edges():
                ex, ey = q.x - p.x, q.y - p.y
                cons.append((False, -ey, ex, ey * p.x - ex * p.y))
        result = tuple((eq,) + _primitive_nonneg(Fraction(a), Fraction(b), Fraction(c))
                       for eq, a, b, c in cons)
        object.__setattr__(self, "_constraints", result)
        return result

    def contains(self, p: Point) -> bool:
        xn, xd = p.x.numerator, p.x.denominator
        yn, yd = p.y.numerator, p.y.denominator
        for eq, a, b, c in self.constraints:
            v = a * xn * yd + b * yn * xd + c * xd * yd
            if (eq and v != 0) or (not eq and v < 0):
                return False
        return True

    def clip(self, p: Point, q: Point) -> tuple[Fraction, Fraction] | None:
        """Parameter interval [t0, t1] of segment p + t(q - p), t in [0, 1], inside the body."""
        den = _common_den((p, q))
        px, py = int(p.x * den), int(p.y * den)
        qx, qy = int(q.x * den), int(q.y * den)
        lo, hi = Fraction(0), Fraction(1)
        for eq, a, b, c in self.constraints:
            alpha = a * px + b * py + c * den
            beta = a * qx + b * qy + c * den - alpha
            if beta == 0:
                if (eq and alpha != 0) or (not eq and alpha < 0):
                    return None
                continue
            t = Fraction(-alpha, beta)
            if eq:
                lo, hi = max(lo, t), min(hi, t)
            elif beta > 0:
                lo = max(lo, t)
            else:
                hi = min(hi, t)
            if lo > hi:
                return None
        if p == q:
            return (Fraction(0), Fraction(0))
        return (lo, hi)

    def centroid(self) -> Point:
        """Vertex average; lies in the relative interior."""
        n = len(self.vertices)
        return Point(sum((v.x for v in self.vertices), Fraction(0)) / n,
                     sum((v.y for v in self.vertices), Fraction(0)) / n)

    def translated(self, dx, dy, id=None) -> "ConvexBody":
        d = pt(dx, dy)
        return ConvexBody(self.id if id is None else id, tuple(v + d for v in self.vertices))


def _at(p: Point, q: Point, t: Fraction) -> Point:
    return Point(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y))


def hull_body(bodies: Sequence[ConvexBody], id: str = "hull") -> ConvexBody:
    return ConvexBody(id, tuple(convex_hull(v for b in bodies for v in b.vertices)))


def boundary_loop(body: ConvexBody) -> list[tuple[Point, Point]]:
    """Boundary as a closed walk; a segment is walked out and back."""
    v = body.vertices
    if len(v) == 2:
        return [(v[0], v[1]), (v[1], v[0])]
    return body.edges()


@dataclass(frozen=True)
class LabeledHull:
    hull: ConvexBody
    arcs: tuple[tuple[str, tuple[Point, Point]], ...]
    word: tuple[str, ...]

    def arc_count(self, body_id: str) -> int:
        return sum(1 for w in self.word if w == body_id)


def hull_of_bodies(bodies: Sequence[ConvexBody]) -> LabeledHull:
    """Convex hull of a union of bodies, with its boundary labeled by contributor.

    The word lists the bodies met along the boundary counterclockwise, with
    consecutive repeats collapsed cyclically. Bridge edges carry no label.
    """
    if not bodies:
        raise GeometryError("hull of an empty family")
    hull = hull_body(bodies)
    if len(hull) == 1:
        owners = [b.id for b in bodies]
        if len(owners) > 1:
            raise SharedBoundaryError(f"bodies {owners} share the hull point {hull.vertices[0]}")
        return LabeledHull(hull, ((owners[0], (hull.vertices[0], hull.vertices[0])),), tuple(owners))

    pieces: list[tuple[str, Point, Point]] = []
    for p, q in boundary_loop(hull):
        on_edge = []
        for b in bodies:
            iv = b.clip(p, q)
            if iv is not None:
                on_edge.append((iv[0], iv[1], b.id))
        on_edge.sort()
        for (t0, t1, i), (s0, _, j) in zip(on_edge, on_edge[1:]):
            if s0 <= t1:
                raise SharedBoundaryError(f"bodies {i} and {j} share a hull boundary point")
        pieces.extend((i, _at(p, q, t0), _at(p, q, t1)) for t0, t1, i in on_edge)

    # merge pieces of one body that continue through a hull vertex
    arcs: list[list] = []
    for bid, s, e in pieces:
        if arcs and arcs[-1][0] == bid:
            arcs[-1][2] = e
            continue
        if arcs and arcs[-1][2] == s:
            raise SharedBoundaryError(f"bodies {arcs[-1][0]} and {bid} share the hull point {s}")
        arcs.append([bid, s, e])
    if len(arcs) > 1:
        if arcs[0][0] == arcs[-1][0]:
            first = arcs.pop(0)
            arcs[-1][2] = first[2]
        elif arcs[-1][2] == arcs[0][1]:
            raise SharedBoundaryError(
                f"bodies {arcs[-1][0]} and {arcs[0][0]} share the hull point {arcs[0][1]}"
            )
    # start the cyclic word at the earliest-listed contributing body
    rank = {b.id: i for i, b in enumerate(bodies)}
    lead = min(range(len(arcs)), key=lambda k: rank[arcs[k][0]])
    arcs = arcs[lead:] + arcs[:lead]
    return LabeledHull(
        hull,
        tuple((a[0], (a[1], a[2])) for a in arcs),
        tuple(a[0] for a in arcs),
    )


class _All:
    """Marker: the whole boundary lies inside the other body."""

    def __repr__(self):
        return "ALL"


ALL = _All()


def boundary_arc_components(a: ConvexBody, b: ConvexBody):
    """Number of connected components of bd(a) ∩ b, or ``ALL`` when bd(a) ⊆ b.

    A segment body is its own boundary; a point body likewise.
    """
    if a.is_point:
        return ALL if b.contains(a.vertices[0]) else 0
    if a.is_segment:
        iv = b.clip(*a.vertices)
        if iv is None:
            return 0
        return ALL if iv == (0, 1) else 1
    ivs = [b.clip(p, q) for p, q in a.edges()]
    if all(iv == (0, 1) for iv in ivs):
        return ALL
    count = 0
    prev_end_at_vertex = False
    first_starts_at_vertex = ivs[0] is not None and ivs[0][0] == 0
    for iv in ivs:
        if iv is None:
            prev_end_at_vertex = False
            continue
        if not (prev_end_at_vertex and iv[0] == 0):
            count += 1
        prev_end_at_vertex = iv[1] == 1
    if count > 1 and prev_end_at_vertex and first_starts_at_vertex:
        count -= 1
    return count


def splits(a: ConvexBody, x: ConvexBody) -> bool:
    """True when a \\ x is disconnected (x convex)."""
    if a.is_point:
        return False
    if a.is_segment:
        iv = x.clip(*a.vertices)
        return iv is not None and iv[0] > 0 and iv[1] < 1
    n = boundary_arc_components(a, x)
    return n is not ALL and n >= 2


def projection_interval(a: ConvexBody, d) -> tuple[Fraction, Fraction]:
    vals = [v.x * d[0] + v.y * d[1] for v in a.vertices]
    return min(vals), max(vals)


def intersects(a: ConvexBody, b: ConvexBody) -> bool:
    """Closed-set intersection test."""
    if any(b.clip(p, q) is not None for p, q in a.edges()):
        return True
    return any(a.contains(v) for v in b.vertices)


def _candidate_normals(points: Sequence[Point]) -> set[Direction]:
    out = set()
    pts = list(set(points))
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d = pts[j] - pts[i]
            out.add(direction(d.x, d.y))
            out.add(direction(-d.y, d.x))
    if not out:
        out = {Direction(1, 0), Direction(0, 1)}
    return out


def weakly_separable(a: ConvexBody, b: ConvexBody) -> bool:
    """Is there a line with a on one closed side and b on the other?"""
    for d in _candidate_normals(a.vertices + b.vertices):
        alo, ahi = projection_interval(a, d)
        blo, bhi = projection_interval(b, d)
        if ahi <= blo or bhi <= alo:
            return True
    return False


def touching(a: ConvexBody, b: ConvexBody) -> bool:
    """Bodies meet but only along their boundaries."""
    return intersects(a, b) and weakly_separable(a, b)


def supports(line: Line, body: ConvexBody) -> bool:
    sides = {line.side(v) for v in body.vertices}
    return 0 in sides and not (1 in sides and -1 in sides)


def common_tangent_lines(a: ConvexBody, b: ConvexBody) -> list[Line]:
    """Distinct lines supporting both bodies, each through a vertex of each."""
    if not weakly_separable(a, b):
        raise GeometryError(f"bodies {a.id} and {b.id} overlap; common tangents undefined")
    lines: list[Line] = []
    for p in a.vertices:
        for q in b.vertices:
            if p == q:
                continue
            line = Line.through(p, q)
            if line not in lines and supports(line, a) and supports(line, b):
                lines.append(line)
    return lines


def common_tangent_directions(a: ConvexBody, b: ConvexBody) -> list[Direction]:
    """One direction per common tangent line (parallel tangents repeat)."""
    return [direction(line.b, -line.a) for line in common_tangent_lines(a, b)]
