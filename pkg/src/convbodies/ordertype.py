"""Order types of body families: chirotopes and representations by points."""
from __future__ import annotations

import logging
from functools import lru_cache
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Mapping, Sequence

import numpy as np

from .geom import ConvexBody, GeometryError, Point, orient3, pt
from .position import OrientationTable

log = logging.getLogger(__name__)

Family = Sequence[ConvexBody]

GRID_SIZE = 8
GRID_NODE_LIMIT = 2_000_000


class ChirotopeError(GeometryError):
    pass


def _perm_sign(idx: Sequence[int]) -> int:
    s = 1
    idx = list(idx)
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                s = -s
    return s


@dataclass(frozen=True)
class Chirotope:
    """Alternating sign map on triples; ``signs`` is keyed by increasing index triples."""

    ground: tuple[str, ...]
    signs: Mapping[tuple[int, int, int], int]

    def index(self, element: str) -> int:
        return self.ground.index(element)

    def sign_at(self, i: int, j: int, k: int) -> int:
        if len({i, j, k}) < 3:
            return 0
        key = tuple(sorted((i, j, k)))
        return _perm_sign((i, j, k)) * self.signs[key]

    def __call__(self, a: str, b: str, c: str) -> int:
        return self.sign_at(self.index(a), self.index(b), self.index(c))

    @classmethod
    def from_points(cls, ground: Sequence[str], points: Sequence[Point]) -> "Chirotope":
        signs = {}
        for t in combinations(range(len(points)), 3):
            s = orient3(*(points[i] for i in t))
            if s == 0:
                raise ChirotopeError(f"collinear points at {t}")
            signs[t] = s
        return cls(tuple(ground), signs)


def is_3_nondisconnectable(family: Family, table: OrientationTable | None = None) -> bool:
    """No triple has both orientations (equivalently, no triple is disconnectable)."""
    table = table or OrientationTable(family)
    return not any(table(*t).both for t in combinations(range(len(family)), 3))


def chirotope(family: Family, table: OrientationTable | None = None) -> Chirotope:
    table = table or OrientationTable(family)
    signs = {}
    for t in combinations(range(len(family)), 3):
        o = table(*t)
        if o.both or o.empty:
            names = tuple(family[i].id for i in t)
            what = "both orientations" if o.both else "no orientation"
            raise ChirotopeError(f"triple {names} has {what}")
        signs[t] = 1 if o.contains_ccw else -1
    return Chirotope(tuple(b.id for b in family), signs)


def gp3_violations(chi: Chirotope, first_only: bool = False) -> list[tuple[int, ...]]:
    """Labelings (a, b, x, y, z) breaking the 3-term Grassmann-Pluecker sign condition."""
    n = len(chi.ground)
    s = chi.sign_at
    bad = []
    for five in combinations(range(n), 5):
        for a, b, x, y, z in permutations(five):
            terms = (
                s(a, b, x) * s(a, y, z),
                -s(a, b, y) * s(a, x, z),
                s(a, b, z) * s(a, x, y),
            )
            if 0 in terms:
                continue
            if terms[0] == terms[1] == terms[2]:
                bad.append((a, b, x, y, z))
                if first_only:
                    return bad
    return bad


def gp3_check(chi: Chirotope) -> bool:
    return not gp3_violations(chi, first_only=True)


def is_alternating(chi: Chirotope) -> bool:
    n = len(chi.ground)
    for t in combinations(range(n), 3):
        base = chi.sign_at(*t)
        for p in permutations(range(3)):
            if chi.sign_at(*(t[i] for i in p)) != _perm_sign(p) * base:
                return False
    return True


@dataclass(frozen=True)
class RepresentationCertificate:
    points: tuple[Point, ...]
    bijection: Mapping[str, int]


def verify_representation(family: Family, points: Sequence, bijection: Mapping[str, int],
                          table: OrientationTable | None = None) -> bool:
    """Every positively oriented point triple pulls back to a triple containing +."""
    if len(points) != len(family):
        raise GeometryError("need exactly one point per body")
    if sorted(bijection.values()) != list(range(len(points))):
        raise GeometryError("bijection must map bodies onto point indices")
    pts = [pt(*p) for p in points]
    table = table or OrientationTable(family)
    where = [bijection[b.id] for b in family]
    for i, j, k in combinations(range(len(family)), 3):
        s = orient3(pts[where[i]], pts[where[j]], pts[where[k]])
        if s == 0:
            raise GeometryError(f"points for {family[i].id}, {family[j].id}, {family[k].id} are collinear")
        if s not in table(i, j, k):
            return False
    return True


def _constraints(table: OrientationTable, n: int):
    """Per triple: required point sign, or None when any non-collinear sign will do."""
    need = {}
    for t in combinations(range(n), 3):
        o = table(*t)
        if o.empty:
            return None
        need[t] = None if o.both else (1 if o.contains_ccw else -1)
    return need


def _rotation_domain(size: int) -> list[tuple[int, int]]:
    """One grid point per orbit of the quarter-turn about the grid center (size even)."""
    half = size // 2
    return [(x, y) for x in range(half) for y in range(half + 1)] + [(half, half)]


@lru_cache(maxsize=4)
def _side_masks(size: int):
    """Grid points and, per ordered pair (a, b), bitmasks of points strictly left / right of ab."""
    pts = [(x, y) for x in range(size + 1) for y in range(size + 1)]
    m = len(pts)
    left = [[0] * m for _ in range(m)]
    right = [[0] * m for _ in range(m)]
    for a, (ax, ay) in enumerate(pts):
        for b, (bx, by) in enumerate(pts):
            if a == b:
                continue
            lm = rm = 0
            for c, (cx, cy) in enumerate(pts):
                d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
                if d > 0:
                    lm |= 1 << c
                elif d < 0:
                    rm |= 1 << c
            left[a][b], right[a][b] = lm, rm
    return pts, left, right


class _Budget(Exception):
    pass


def _grid_search(need, n: int, size: int, node_limit: int):
    """Backtracking over the grid; candidate sets are intersections of half-plane masks."""
    pts, left, right = _side_masks(size)
    index = {p: i for i, p in enumerate(pts)}
    full = (1 << len(pts)) - 1
    by_last: dict[int, list] = {m: [] for m in range(n)}
    for t, s in need.items():
        by_last[t[2]].append((t[0], t[1], s))
    chosen: list[int] = []
    nodes = 0

    def candidates(m: int):
        if m == 0:
            for p in _rotation_domain(size):
                yield index[p]
            return
        mask = full & ~(1 << chosen[0]) if m == 1 else full
        for i, j, s in by_last[m]:
            a, b = chosen[i], chosen[j]
            if s == 1:
                mask &= left[a][b]
            elif s == -1:
                mask &= right[a][b]
            else:
                mask &= left[a][b] | right[a][b]
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def place(m: int) -> bool:
        nonlocal nodes
        if m == n:
            return True
        for c in candidates(m):
            nodes += 1
            if nodes > node_limit:
                raise _Budget
            chosen.append(c)
            if place(m + 1):
                return True
            chosen.pop()
        return False

    try:
        return [pt(*pts[c]) for c in chosen] if place(0) else None
    except _Budget:
        log.info("grid search stopped after %d nodes", node_limit)
        return None


def _random_point_in(body: ConvexBody, rng: np.random.Generator) -> Point:
    w = [int(x) + 1 for x in rng.integers(0, 16, size=len(body.vertices))]
    tot = sum(w)
    return Point(sum((Fraction(wi) * v.x for wi, v in zip(w, body.vertices)), Fraction(0)) / tot,
                 sum((Fraction(wi) * v.y for wi, v in zip(w, body.vertices)), Fraction(0)) / tot)


def search_representation(family: Family, budget: int = 200, seed: int = 0,
                          grid_size: int = GRID_SIZE,
                          grid_node_limit: int = GRID_NODE_LIMIT) -> RepresentationCertificate | None:
    """Look for points representing the family.

    Tries body centroids, then ``budget`` random interior points per body
    (seeded Philox stream), then for at most five bodies a backtracking search
    over the integer grid [0, grid_size]^2 with the first point restricted to
    one orbit representative per quarter-turn. None is not a proof of
    non-representability unless the grid search ran to completion.
    """
    if grid_size % 2:
        raise ValueError("grid_size must be even")
    n = len(family)
    table = OrientationTable(family)
    ids = {b.id: i for i, b in enumerate(family)}
    need = _constraints(table, n)
    if need is None:
        return None

    def fits(points) -> bool:
        for t, s in need.items():
            o = orient3(*(points[i] for i in t))
            if o == 0 or (s is not None and o != s):
                return False
        return True

    candidates = [b.centroid() for b in family]
    if fits(candidates):
        return RepresentationCertificate(tuple(candidates), ids)
    rng = np.random.Generator(np.random.Philox(seed))
    for _ in range(budget):
        candidates = [_random_point_in(b, rng) for b in family]
        if fits(candidates):
            return RepresentationCertificate(tuple(candidates), ids)
    if n <= 5:
        found = _grid_search(need, n, grid_size, grid_node_limit)
        if found is not None:
            return RepresentationCertificate(tuple(found), ids)
    return None
