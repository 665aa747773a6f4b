"""Combinatorial predicates on families of convex bodies.

Orientation of an ordered triple is read off the cyclic boundary word of the
triple's hull: the triple is counterclockwise oriented exactly when its labels
occur in that cyclic order somewhere along the boundary.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .geom import (
    ConvexBody,
    Direction,
    GeometryError,
    Line,
    direction,
    hull_body,
    hull_of_bodies,
    intersects,
    projection_interval,
    splits,
    supports,
    touching,
)

Family = Sequence[ConvexBody]


class TangencyError(GeometryError):
    """Two bodies touch along their boundaries."""


@dataclass(frozen=True)
class OrientationSet:
    contains_ccw: bool
    contains_cw: bool

    @property
    def signs(self) -> tuple[str, ...]:
        return tuple(s for s, on in (("+", self.contains_ccw), ("-", self.contains_cw)) if on)

    @property
    def both(self) -> bool:
        return self.contains_ccw and self.contains_cw

    @property
    def empty(self) -> bool:
        return not (self.contains_ccw or self.contains_cw)

    def __contains__(self, sign) -> bool:
        if sign in ("+", 1):
            return self.contains_ccw
        if sign in ("-", -1):
            return self.contains_cw
        return False

    def reversed(self) -> "OrientationSet":
        return OrientationSet(self.contains_cw, self.contains_ccw)

    def __repr__(self):
        return "{" + ",".join(self.signs) + "}"


@dataclass(frozen=True)
class TransversalCertificate:
    line: Line
    member_ids: tuple[str, ...]


def is_disjoint(a: ConvexBody, b: ConvexBody) -> bool:
    return not intersects(a, b)


def is_noncrossing(a: ConvexBody, b: ConvexBody) -> bool:
    """Both a \\ b and b \\ a are connected (empty counts as connected)."""
    if touching(a, b):
        raise TangencyError(f"bodies {a.id} and {b.id} are tangent")
    return not splits(a, b) and not splits(b, a)


def cyclic_subsequence(word: Sequence[str], pattern: Sequence[str]) -> bool:
    n = len(word)
    for start in range(n):
        k = 0
        for i in range(n):
            if word[(start + i) % n] == pattern[k]:
                k += 1
                if k == len(pattern):
                    return True
    return False


def orientations_from_word(word: Sequence[str], a: str, b: str, c: str) -> OrientationSet:
    return OrientationSet(cyclic_subsequence(word, (a, b, c)), cyclic_subsequence(word, (a, c, b)))


def orientations(a1: ConvexBody, a2: ConvexBody, a3: ConvexBody) -> OrientationSet:
    """Orientations of the ordered triple (a1, a2, a3); + is counterclockwise.

    Bodies are assumed pairwise noncrossing and free of tangencies; a shared
    hull boundary point raises :class:`~convbodies.geom.SharedBoundaryError`.
    """
    word = hull_of_bodies([a1, a2, a3]).word
    return orientations_from_word(word, a1.id, a2.id, a3.id)


def disconnects(x: ConvexBody, family: Family) -> bool:
    """conv(family) \\ x is disconnected."""
    return splits(hull_body(family), x)


def is_disconnectable(family: Family) -> bool:
    if len(family) < 2:
        return False
    hull = hull_body(family)
    return any(splits(hull, x) for x in family)


def _triple_in_convex_position(triple: Family) -> bool:
    from .position import in_convex_position_direct

    return in_convex_position_direct(triple)


def is_general_position(family: Family) -> bool:
    """Every 3-subfamily is in convex position."""
    return all(_triple_in_convex_position(t) for t in combinations(family, 3))


def all_triples_oriented(family: Family) -> bool:
    """Every triple has at least one orientation (checked on sorted triples; the
    remaining orderings follow by the permutation law)."""
    return all(not orientations(*t).empty for t in combinations(family, 3))


def _critical_normals(family: Family) -> list[Direction]:
    """Normals of lines through vertex pairs of distinct bodies."""
    out: set[Direction] = set()
    for a, b in combinations(family, 2):
        for p in a.vertices:
            for q in b.vertices:
                if p != q:
                    out.add(direction(q.y - p.y, p.x - q.x))
    return sorted(out, key=_half_turn_key)


def _half_turn_key(d):
    # order normalized directions by angle in (-pi/2, pi/2]
    dx, dy = d
    if dx == 0:
        return (1, Fraction(0))
    return (0, Fraction(dy, dx) if isinstance(dx, int) else dy / dx)


def candidate_normals(family: Family) -> list[tuple[Fraction, Fraction]]:
    """Critical normals plus one representative strictly between each adjacent pair."""
    crit = _critical_normals(family)
    if not crit:
        return [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]
    out = [tuple(map(Fraction, d)) for d in crit]
    for d, e in zip(crit, crit[1:]):
        out.append((Fraction(d[0] + e[0]), Fraction(d[1] + e[1])))
    first, last = crit[0], crit[-1]
    out.append((Fraction(last[0] - first[0]), Fraction(last[1] - first[1])))
    if len(crit) == 1:
        out.append((Fraction(-crit[0][1]), Fraction(crit[0][0])))
    return [d for d in out if d != (0, 0)]


def _line_certificate(family: Family, normal, members: Sequence[str], c: Fraction) -> TransversalCertificate:
    return TransversalCertificate(Line.from_normal(normal, c), tuple(members))


def has_transversal(family: Family) -> TransversalCertificate | None:
    """A line meeting every member, or None when no such line exists."""
    if not family:
        raise GeometryError("empty family")
    for d in candidate_normals(family):
        ivs = [projection_interval(b, d) for b in family]
        lo = max(i[0] for i in ivs)
        hi = min(i[1] for i in ivs)
        if lo <= hi:
            return _line_certificate(family, d, [b.id for b in family], (lo + hi) / 2)
    return None


def best_stabbing_line(family: Family) -> TransversalCertificate:
    """A line meeting as many members as possible."""
    best: tuple[int, object, Fraction, list[str]] | None = None
    for d in candidate_normals(family):
        events = []
        for b in family:
            lo, hi = projection_interval(b, d)
            events.append((lo, 0, b.id))
            events.append((hi, 1, b.id))
        events.sort(key=lambda e: (e[0], e[1]))
        open_ids: list[str] = []
        for value, kind, bid in events:
            if kind == 0:
                open_ids.append(bid)
                if best is None or len(open_ids) > best[0]:
                    best = (len(open_ids), d, value, list(open_ids))
            else:
                open_ids.remove(bid)
    assert best is not None
    order = {b.id: i for i, b in enumerate(family)}
    members = sorted(best[3], key=order.__getitem__)
    return _line_certificate(family, best[1], members, best[2])


def line_meets(line: Line, body: ConvexBody) -> bool:
    sides = {line.side(v) for v in body.vertices}
    return 0 in sides or (1 in sides and -1 in sides)


@dataclass(frozen=True)
class Violation:
    kind: str  # "tangency" or "common-tangent"
    ids: tuple[str, ...]
    line: Line | None = None

    def __str__(self):
        if self.kind == "tangency":
            return f"tangency({','.join(self.ids)})"
        return f"common tangent({','.join(self.ids)}): {self.line}"


def check_assumptions(family: Family) -> list[Violation]:
    """Tangent pairs, and lines supporting three or more bodies at once."""
    out: list[Violation] = []
    for a, b in combinations(family, 2):
        if touching(a, b):
            out.append(Violation("tangency", (a.id, b.id)))
    seen: set[Line] = set()
    for a, b in combinations(family, 2):
        for p in a.vertices:
            for q in b.vertices:
                if p == q:
                    continue
                line = Line.through(p, q)
                if line in seen:
                    continue
                seen.add(line)
                ids = tuple(c.id for c in family if supports(line, c))
                if len(ids) >= 3:
                    out.append(Violation("common-tangent", ids, line))
    return out


def crossing_pairs(family: Family) -> list[tuple[str, str]]:
    return [(a.id, b.id) for a, b in combinations(family, 2) if not is_noncrossing(a, b)]

