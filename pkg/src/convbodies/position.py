"""Convex position of body families: decisions, orderings and certificates."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from math import comb
from typing import Sequence

from .geom import (
    ConvexBody,
    GeometryError,
    Line,
    Point,
    convex_hull,
    hull_body,
    hull_of_bodies,
    orient3,
)
from .predicates import (
    OrientationSet,
    TransversalCertificate,
    best_stabbing_line,
    line_meets,
    orientations_from_word,
)

Family = Sequence[ConvexBody]

SUBSET_LIMIT = 15
PERMUTATION_LIMIT = 10


class SizeLimitError(GeometryError):
    """The family is too large for an exact search."""


class NoOutcome(Exception):
    """Neither branch of the dichotomy was found."""


@dataclass(frozen=True)
class ConvexPositionCertificate:
    ordering: tuple[str, ...]


def _contains_all(hull: ConvexBody | None, points) -> bool:
    return hull is not None and all(hull.contains(p) for p in points)


def in_convex_position_direct(family: Family) -> bool:
    """No member can be dropped without changing the convex hull."""
    if not family:
        raise GeometryError("empty family")
    full = hull_body(family)
    for i in range(len(family)):
        rest = [b for j, b in enumerate(family) if j != i]
        sub = hull_body(rest) if rest else None
        # sub ⊆ full always holds; compare both ways anyway
        if _contains_all(sub, full.vertices) and _contains_all(full, sub.vertices):
            return False
    return True


def convex_position_fast(family: Family) -> bool:
    """Same verdict as :func:`in_convex_position_direct` from a single hull.

    A member is essential iff it owns a hull vertex that no other member covers.
    """
    hull = convex_hull(v for b in family for v in b.vertices)
    for i, body in enumerate(family):
        own = set(body.vertices)
        if not any(
            v in own and not any(o.contains(v) for j, o in enumerate(family) if j != i)
            for v in hull
        ):
            return False
    return True


class OrientationTable:
    """Orientation sets of every triple of a fixed family, computed once per triple."""

    def __init__(self, family: Family):
        self.family = list(family)
        self.index = {b.id: i for i, b in enumerate(self.family)}
        if len(self.index) != len(self.family):
            raise GeometryError("duplicate body ids")
        self._words: dict[tuple[int, int, int], tuple[str, ...]] = {}

    def word(self, i: int, j: int, k: int) -> tuple[str, ...]:
        key = tuple(sorted((i, j, k)))
        w = self._words.get(key)
        if w is None:
            w = hull_of_bodies([self.family[x] for x in key]).word
            self._words[key] = w
        return w

    def __call__(self, i: int, j: int, k: int) -> OrientationSet:
        f = self.family
        return orientations_from_word(self.word(i, j, k), f[i].id, f[j].id, f[k].id)

    def by_id(self, a: str, b: str, c: str) -> OrientationSet:
        return self(self.index[a], self.index[b], self.index[c])


def canonical_order(family: Family, orientation_convention: str = "+") -> tuple[str, ...]:
    """Members in order of first appearance along the hull boundary.

    The boundary is walked counterclockwise for convention "+", clockwise for
    "-", starting at the first arc of the family's first member.
    """
    if orientation_convention not in ("+", "-"):
        raise ValueError("orientation_convention must be '+' or '-'")
    word = list(hull_of_bodies(family).word)
    if orientation_convention == "-":
        word.reverse()
    missing = [b.id for b in family if b.id not in word]
    if missing:
        raise GeometryError(f"bodies {missing} do not appear on the hull boundary")
    start = word.index(family[0].id)
    seen: list[str] = []
    for k in range(len(word)):
        w = word[(start + k) % len(word)]
        if w not in seen:
            seen.append(w)
    return tuple(seen)


def verify_certificate(family: Family, cert: ConvexPositionCertificate, sign: str = "+",
                       table: OrientationTable | None = None) -> bool:
    """Every ordered triple under the ordering contains ``sign``."""
    table = table or OrientationTable(family)
    if sorted(cert.ordering) != sorted(table.index):
        return False
    idx = [table.index[i] for i in cert.ordering]
    return all(sign in table(a, b, c) for a, b, c in combinations(idx, 3))


def _search_orderings(table: OrientationTable) -> tuple[int, ...] | None:
    n = len(table.family)
    if n == 0:
        return ()
    # cyclic shifts of a valid ordering stay valid, so member 0 may lead
    order = [0]
    used = [False] * n
    used[0] = True

    def extend() -> bool:
        if len(order) == n:
            return True
        for x in range(1, n):
            if used[x]:
                continue
            if all("+" in table(order[a], order[b], x)
                   for a in range(len(order)) for b in range(a + 1, len(order))):
                order.append(x)
                used[x] = True
                if extend():
                    return True
                order.pop()
                used[x] = False
        return False

    return tuple(order) if extend() else None


def exists_consistent_order(family: Family, exhaustive: bool = False,
                            table: OrientationTable | None = None) -> ConvexPositionCertificate | None:
    """An ordering under which every triple is counterclockwise oriented, if any.

    The boundary ordering is tried first when the family is in convex position;
    otherwise (or with ``exhaustive=True``) all orderings are searched with
    pruning, which is limited to families of at most 10 members.
    """
    table = table or OrientationTable(family)
    if len(family) <= 2:
        return ConvexPositionCertificate(tuple(b.id for b in family))
    if not exhaustive and in_convex_position_direct(family):
        cert = ConvexPositionCertificate(canonical_order(family, "+"))
        if verify_certificate(family, cert, table=table):
            return cert
    if len(family) > PERMUTATION_LIMIT:
        raise SizeLimitError(f"ordering search is limited to {PERMUTATION_LIMIT} members")
    found = _search_orderings(table)
    if found is None:
        return None
    return ConvexPositionCertificate(tuple(family[i].id for i in found))


def largest_convex_subfamily(family: Family) -> tuple[tuple[str, ...], ConvexPositionCertificate]:
    """A maximum subfamily in convex position (lexicographically first by index).

    Convex position is hereditary, so only convex subsets are extended.
    """
    n = len(family)
    if n > SUBSET_LIMIT:
        raise SizeLimitError(f"subset enumeration is limited to {SUBSET_LIMIT} members")
    if n == 0:
        return (), ConvexPositionCertificate(())
    if convex_position_fast(family):
        best = list(range(n))
    else:
        best: list[int] = []
        current: list[int] = []

        def dfs(start: int):
            nonlocal best
            for x in range(start, n):
                if len(current) + (n - x) <= len(best):
                    return
                current.append(x)
                if convex_position_fast([family[i] for i in current]):
                    if len(current) > len(best):
                        best = list(current)
                    dfs(x + 1)
                current.pop()

        dfs(0)
    sub = [family[i] for i in best]
    order = canonical_order(sub, "+") if len(sub) >= 1 else ()
    return tuple(b.id for b in sub), ConvexPositionCertificate(order)


# --- tangent rotation ---------------------------------------------------------

def _angle_cmp(ref: Point):
    def half(v: Point) -> int:
        c = ref.x * v.y - ref.y * v.x
        d = ref.x * v.x + ref.y * v.y
        return 0 if c > 0 or (c == 0 and d > 0) else 1

    def cmp(u: Point, v: Point) -> int:
        hu, hv = half(u), half(v)
        if hu != hv:
            return hu - hv
        c = u.x * v.y - u.y * v.x
        return -1 if c > 0 else (1 if c < 0 else 0)

    return cmp


def _start_direction(c0: ConvexBody, family: Family) -> tuple[Point, Point]:
    """A vertex of c0 and a direction whose line touches the whole hull only there."""
    everyone = [c0, *family]
    hull = hull_body(everyone).vertices
    m = len(hull)
    for k, v in enumerate(hull):
        if v not in c0.vertices or any(o.contains(v) for o in family):
            continue
        if m == 1:
            return v, Point(Fraction(1), Fraction(0))
        if m == 2:
            w = hull[1 - k]
            d = w - v
            return v, Point(d.y, -d.x)
        e_in = v - hull[k - 1]
        e_out = hull[(k + 1) % m] - v
        return v, e_in + e_out
    raise GeometryError(f"body {c0.id} owns no hull vertex; no starting tangent exists")


def first_contact_tangent(c0: ConvexBody, body: ConvexBody) -> tuple[Point, Line]:
    """Direction and line of the tangent through c0 and body with both on its left.

    Oriented from c0 towards body; this is where a tangent of c0 rotating
    counterclockwise first meets the body.
    """
    for p in c0.vertices:
        for q in body.vertices:
            if p == q:
                continue
            if all(orient3(p, q, x) >= 0 for x in c0.vertices + body.vertices):
                return q - p, Line.through(p, q)
    raise GeometryError(f"bodies {c0.id} and {body.id} have no outer common tangent")


@dataclass(frozen=True)
class RotationOrder:
    ordering: tuple[str, ...]
    tangents: tuple[Line, ...]
    start: Line


def tangent_rotation_order(c0: ConvexBody, family: Family) -> RotationOrder:
    """Order members by first contact with a tangent line rolling counterclockwise on c0."""
    v, u0 = _start_direction(c0, family)
    start = Line.through(v, v + u0)
    contacts = []
    for body in family:
        d, line = first_contact_tangent(c0, body)
        contacts.append((d, line, body.id))
    cmp = _angle_cmp(u0)
    contacts.sort(key=cmp_to_key(lambda a, b: cmp(a[0], b[0])))
    return RotationOrder(tuple(c[2] for c in contacts), tuple(c[1] for c in contacts), start)


def meets_interior(line: Line, body: ConvexBody) -> bool:
    sides = {line.side(v) for v in body.vertices}
    return 1 in sides and -1 in sides


def is_case2(c0: ConvexBody, family: Family, rotation: RotationOrder | None = None) -> bool:
    """No member's interior meets any of the recorded tangent lines."""
    rotation = rotation or tangent_rotation_order(c0, family)
    return not any(meets_interior(l, b) for l in rotation.tangents for b in family)


def orientation_transitivity_check(family_ordered: Family,
                                   table: OrientationTable | None = None) -> bool:
    """For i<j<k<l: equal unique orientations of (i,j,k) and (j,k,l) propagate to
    (i,j,l) and (i,k,l)."""
    return not transitivity_failures(family_ordered, table, first_only=True)


def transitivity_failures(family_ordered: Family, table: OrientationTable | None = None,
                          first_only: bool = False) -> list[tuple[int, int, int, int]]:
    table = table or OrientationTable(family_ordered)
    bad = []
    for i, j, k, l in combinations(range(len(family_ordered)), 4):
        a, b = table(i, j, k), table(j, k, l)
        if a.both or b.both or a.empty or b.empty or a != b:
            continue
        s = a.signs[0]
        if s not in table(i, j, l) or s not in table(i, k, l):
            bad.append((i, j, k, l))
            if first_only:
                break
    return bad


# --- dichotomy ------------------------------------------------------------------

@dataclass(frozen=True)
class DichotomyOutcome:
    transversal: TransversalCertificate | None = None
    convex: tuple[str, ...] | None = None
    certificate: ConvexPositionCertificate | None = None

    @property
    def branch(self) -> str:
        return "transversal" if self.transversal is not None else "convex"

    def verify(self, family: Family, t: int, n: int) -> bool:
        byid = {b.id: b for b in family}
        if (self.transversal is None) == (self.convex is None):
            return False
        if self.transversal is not None:
            ids = self.transversal.member_ids
            return (len(set(ids)) >= t
                    and all(line_meets(self.transversal.line, byid[i]) for i in ids))
        sub = [byid[i] for i in self.convex]
        return (len(sub) >= n and in_convex_position_direct(sub)
                and self.certificate is not None
                and verify_certificate(sub, self.certificate))


def dichotomy(family: Family, t: int, n: int) -> DichotomyOutcome:
    """A line meeting t members, else n members in convex position.

    Raises :class:`NoOutcome` if the family has neither.
    """
    if not family:
        raise GeometryError("empty family")
    line = best_stabbing_line(family)
    if len(line.member_ids) >= t:
        return DichotomyOutcome(transversal=line)
    ids, cert = largest_convex_subfamily(family)
    if len(ids) >= n:
        return DichotomyOutcome(convex=ids, certificate=cert)
    raise NoOutcome(
        f"largest stabbed subfamily has {len(line.member_ids)} < {t} members and "
        f"largest convex subfamily has {len(ids)} < {n}"
    )


# --- bounds ---------------------------------------------------------------------

def bound_pach_toth(n: int) -> int:
    """C(2n-4, n-2)^2 + 1."""
    if n < 3:
        raise ValueError("n must be at least 3")
    return comb(2 * n - 4, n - 2) ** 2 + 1


def bound_M(n: int) -> int:
    """(C(2n-5, n-2) + 1) * C(2n-4, n-2) + 1."""
    if n < 3:
        raise ValueError("n must be at least 3")
    return (comb(2 * n - 5, n - 2) + 1) * comb(2 * n - 4, n - 2) + 1


def bound_lemma1(k: int, l: int) -> int:
    """C(k+l+4, l+2) + 1 vertices, as printed for the ordered hypergraph lemma."""
    if k < 1 or l < 1:
        raise ValueError("k and l must be at least 1")
    return comb(k + l + 4, l + 2) + 1
