import math
from fractions import Fraction
from itertools import combinations, permutations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from convbodies import GenSpec, fixture, generate
from convbodies.famgen import GenerationError, generate_case2
from convbodies.geom import ConvexBody, GeometryError, pt
from convbodies.position import (
    ConvexPositionCertificate,
    NoOutcome,
    SizeLimitError,
    bound_lemma1,
    bound_M,
    bound_pach_toth,
    canonical_order,
    dichotomy,
    exists_consistent_order,
    in_convex_position_direct,
    is_case2,
    largest_convex_subfamily,
    orientation_transitivity_check,
    tangent_rotation_order,
    verify_certificate,
)
from convbodies.predicates import check_assumptions, is_disconnectable, is_general_position, orientations

import oracles


def tri(id, x, y, s=Fraction(1, 2)):
    return ConvexBody(id, (pt(x, y), pt(x + s, y), pt(x, y + s)))


def box(id, x0, y0, x1, y1):
    return ConvexBody(id, (pt(x0, y0), pt(x1, y0), pt(x1, y1), pt(x0, y1)))


def plus_everywhere(family, ordering) -> bool:
    by = {b.id: b for b in family}
    return all("+" in orientations(*(by[i] for i in t)) for t in combinations(ordering, 3))


def gen_or_skip(spec):
    try:
        return generate(spec)
    except GenerationError:
        assume(False)


def test_direct_examples():
    tri3 = fixture("tri3")
    assert in_convex_position_direct(tri3)
    centroid = tri("c", Fraction(7, 3), Fraction(4, 3), Fraction(1, 4))
    assert not in_convex_position_direct(tri3 + [centroid])
    assert not oracles.convex_position(tri3 + [centroid])


def test_hidden4():
    fam = fixture("hidden4")
    assert not in_convex_position_direct(fam)
    assert not oracles.convex_position(fam)
    for t in combinations(fam, 3):
        assert in_convex_position_direct(list(t))
        assert oracles.convex_position(list(t))


def test_canonical_order_examples():
    one, two, three = fixture("tri3")
    assert canonical_order([one, two, three]) == ("1", "2", "3")
    assert canonical_order([two, one, three]) == ("2", "3", "1")
    assert canonical_order([one, two, three], "-") == ("1", "3", "2")
    with pytest.raises(GeometryError):
        canonical_order(fixture("hidden4"))


def test_canonical_order_six_on_circle():
    for seed in range(20):
        fam = generate(GenSpec(seed, 6, "disjoint-on-circle"))
        if in_convex_position_direct(fam):
            break
    else:
        pytest.fail("no convex 6-family among the first seeds")
    order = canonical_order(fam)
    assert sorted(order) == sorted(b.id for b in fam)
    assert plus_everywhere(fam, order)


def test_exists_consistent_order_examples():
    assert exists_consistent_order(fixture("tri3")).ordering == ("1", "2", "3")
    fam = fixture("hidden4")
    assert exists_consistent_order(fam) is None
    assert exists_consistent_order(fam, exhaustive=True) is None
    by = {b.id: b for b in fam}
    # every one of the 24 orderings has a triple without +
    assert not any(plus_everywhere(fam, p) for p in permutations(by))
    single = [tri("a", 0, 0)]
    assert exists_consistent_order(single).ordering == ("a",)
    pair = [tri("a", 0, 0), tri("b", 3, 0)]
    assert set(exists_consistent_order(pair).ordering) == {"a", "b"}


def test_size_limits():
    many = [ConvexBody(str(i), (pt(i, i * i),)) for i in range(16)]
    with pytest.raises(SizeLimitError):
        largest_convex_subfamily(many)
    with pytest.raises(SizeLimitError):
        exists_consistent_order(many[:11], exhaustive=True)


def oracle_largest(fam):
    for k in range(len(fam), 0, -1):
        for sub in combinations(fam, k):
            if oracles.convex_position(list(sub)):
                return tuple(b.id for b in sub)
    return ()


def test_largest_subfamily_examples():
    ids, cert = largest_convex_subfamily(fixture("tri3"))
    assert ids == ("1", "2", "3")
    ids, cert = largest_convex_subfamily(fixture("hidden4"))
    assert len(ids) == 3 and ids == oracle_largest(fixture("hidden4"))
    assert plus_everywhere(fixture("hidden4"), cert.ordering)


def test_lemma2_example_fixture():
    fam = fixture("stabbed7")
    assert oracles.transversal_exists(fam)
    ids, _ = largest_convex_subfamily(fam)
    assert len(ids) >= 4
    assert len(ids) == len(oracle_largest(fam))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.integers(3, 7), st.sampled_from(["disjoint-random", "stabbed-by-line"]))
def test_largest_subfamily_against_enumeration(seed, count, kind):
    fam = gen_or_skip(GenSpec(seed, count, kind, general_position=True))
    ids, cert = largest_convex_subfamily(fam)
    expected = oracle_largest(fam)
    assert len(ids) == len(expected)
    assert oracles.convex_position([b for b in fam if b.id in ids])
    assert plus_everywhere(fam, cert.ordering)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(3, 6), st.sampled_from(["disjoint-random", "disjoint-on-circle", "points"]))
def test_theorem5_equivalence_small(seed, count, kind):
    fam = gen_or_skip(GenSpec(seed, count, kind, general_position=True))
    direct = in_convex_position_direct(fam)
    assert direct == oracles.convex_position(fam)
    assert direct == (exists_consistent_order(fam, exhaustive=True) is not None)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.integers(3, 6))
def test_duality_and_monotonicity(seed, count):
    fam = gen_or_skip(GenSpec(seed, count, "disjoint-on-circle", general_position=True))
    cert = exists_consistent_order(fam)
    assume(cert is not None)
    assert verify_certificate(fam, cert)
    by = {b.id: b for b in fam}
    rev = cert.ordering[::-1]
    assert all("-" in orientations(*(by[i] for i in t)) for t in combinations(rev, 3))
    assert verify_certificate(fam, ConvexPositionCertificate(rev), sign="-")
    for k in range(1, len(fam)):
        for sub in combinations(fam, k):
            assert in_convex_position_direct(list(sub))


def minimal_enclosing(others, body):
    """Inclusion-minimal subfamilies whose hull covers body."""
    target = oracles.verts(body)
    found = []
    for k in range(1, len(others) + 1):
        for sub in combinations(others, k):
            if any(set(m) <= set(sub) for m in found):
                continue
            cloud = oracles.all_verts(sub)
            if all(oracles._in_hull_of(p, cloud) for p in target):
                found.append(sub)
    return found


def check_consecutive_pairs(fam, body):
    others = [b for b in fam if b is not body]
    checked = 0
    for f0 in minimal_enclosing(others, body):
        if len(f0) < 3:
            continue
        order = canonical_order(list(f0))
        by = {b.id: b for b in f0}
        for a, b in zip(order, order[1:] + order[:1]):
            assert not is_disconnectable([by[a], by[b], body])
            checked += 1
    return checked


def test_hull_order_pairs_with_central_body():
    fam = generate(GenSpec(3, 6, "disjoint-on-circle"))
    centre = tri("z", 10, 10, Fraction(1, 4))
    assert check_assumptions(fam + [centre]) == []
    assert check_consecutive_pairs(fam, centre) > 0


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_hull_order_pairs_property(seed):
    fam = gen_or_skip(GenSpec(seed, 6, "disjoint-random", general_position=True))
    inner = [b for b in fam
             if all(oracles._in_hull_of(p, oracles.all_verts([o for o in fam if o is not b]))
                    for p in oracles.verts(b))]
    assume(inner)
    for body in inner:
        check_consecutive_pairs(fam, body)


def test_rotation_points_by_angle():
    c0 = ConvexBody("0", (pt(0, 0),))
    rays = {"a": 10, "b": 50, "c": 170}
    members = []
    for name, deg in rays.items():
        # rational point within a hair of the ray at 100 units
        x = Fraction(round(100 * math.cos(math.radians(deg)) * 64), 64)
        y = Fraction(round(100 * math.sin(math.radians(deg)) * 64), 64)
        members.append(ConvexBody(name, (pt(x, y),)))
    rot = tangent_rotation_order(c0, members[::-1])
    assert rot.ordering == ("a", "b", "c")


def disk(id, r, cx=0, cy=0, k=12):
    pts = [pt(cx + Fraction(round(r * math.cos(2 * math.pi * i / k) * 64), 64),
              cy + Fraction(round(r * math.sin(2 * math.pi * i / k) * 64), 64)) for i in range(k)]
    return ConvexBody.from_points(id, pts)


def compare_with_sweep(c0, fam, rot, min_gap=0.01):
    start = rot.start
    u = (start.b, -start.a)  # direction of a*x + b*y = c
    order, angles = oracles.rotation_order(c0, fam, u)
    pos = {bid: i for i, bid in enumerate(rot.ordering)}
    for x, y in combinations(angles, 2):
        if abs(angles[x] - angles[y]) > min_gap:
            assert (angles[x] < angles[y]) == (pos[x] < pos[y]), (x, y, angles)


def test_rotation_disk_two_far_bodies():
    c0 = disk("0", 1)
    fam = [tri("A", 8, 5, 1), tri("B", -7, 6, 1)]
    rot = tangent_rotation_order(c0, fam)
    assert rot.ordering == ("A", "B")
    compare_with_sweep(c0, fam, rot)


def test_rotation_single_member():
    c0 = disk("0", 1)
    body = tri("A", 8, 5, 1)
    rot = tangent_rotation_order(c0, [body])
    assert rot.ordering == ("A",)
    line = rot.tangents[0]
    # exterior common tangent: touches both, and both lie on one closed side
    for b in (c0, body):
        assert 0 in {line.side(v) for v in b.vertices}
    sides = {line.side(v) for v in c0.vertices + body.vertices}
    assert not (1 in sides and -1 in sides)


def test_rotation_needs_hull_vertex():
    fam = [tri("A", 0, 0), tri("B", 10, 0), tri("C", 5, 10)]
    with pytest.raises(GeometryError):
        tangent_rotation_order(tri("0", 5, 3), fam)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 6))
def test_rotation_against_sweep(seed, count):
    try:
        c0, fam = generate_case2(GenSpec(seed, count, "case2-tangent-rotation"))
    except GenerationError:
        assume(False)
    compare_with_sweep(c0, fam, tangent_rotation_order(c0, fam))


def transitivity_oracle(fam) -> bool:
    """Direct 4-subset check with orientations from the sampling oracle."""
    o = lambda i, j, k: oracles.sampled_orientations(fam[i], fam[j], fam[k])
    for i, j, k, l in combinations(range(len(fam)), 4):
        a, b = o(i, j, k), o(j, k, l)
        if len(a) == 1 and a == b:
            s = next(iter(a))
            if s not in o(i, j, l) or s not in o(i, k, l):
                return False
    return True


def test_transitivity_tri3_around_c0():
    fam = fixture("tri3") + [tri("4", -1, 3)]
    c0 = tri("0", 3, -2)
    assert in_convex_position_direct(fam)
    assert check_assumptions(fam + [c0]) == []
    rot = tangent_rotation_order(c0, fam)
    assert is_case2(c0, fam, rot)
    assert rot.ordering == ("2", "3", "4", "1")
    compare_with_sweep(c0, fam, rot)
    by = {b.id: b for b in fam}
    ordered = [by[i] for i in rot.ordering]
    assert orientation_transitivity_check(ordered)
    assert transitivity_oracle(ordered)


def test_transitivity_vacuous():
    assert orientation_transitivity_check(fixture("tri3"))
    assert orientation_transitivity_check(fixture("bar"))


def test_transitivity_eight_case2_families():
    for seed in range(8):
        c0, fam = generate_case2(GenSpec(seed, 5, "case2-tangent-rotation"))
        by = {b.id: b for b in fam}
        ordered = [by[i] for i in tangent_rotation_order(c0, fam).ordering]
        assert orientation_transitivity_check(ordered)
        assert transitivity_oracle(ordered)


def test_transitivity_detects_a_violation():
    # hidden4 read in a bad order: a direct counterexample to the implication
    fam = fixture("hidden4")
    found = False
    for perm in permutations(fam):
        got = orientation_transitivity_check(list(perm))
        assert got == transitivity_oracle(list(perm))
        found |= not got
    assert found


def test_dichotomy_examples():
    squares = [box(str(i), 3 * i, 0, 3 * i + 1, 1) for i in range(5)]
    out = dichotomy(squares, 5, 3)
    assert out.branch == "transversal" and out.verify(squares, 5, 3)
    tri3 = fixture("tri3")
    out = dichotomy(tri3, 2, 3)
    assert out.verify(tri3, 2, 3)
    with pytest.raises(NoOutcome):
        dichotomy(tri3, 4, 4)


def test_dichotomy_random_twelve():
    fam = generate(GenSpec(5, 12, "disjoint-random", general_position=True))
    out = dichotomy(fam, 4, 4)
    assert out.verify(fam, 4, 4)
    by = {b.id: b for b in fam}
    if out.transversal is not None:
        assert all(oracles.line_meets_body(out.transversal.line, by[i]) for i in out.transversal.member_ids)
    else:
        assert oracles.convex_position([by[i] for i in out.convex])


def test_bounds():
    assert bound_pach_toth(3) == 5
    assert bound_pach_toth(4) == 37
    assert bound_M(3) == 5
    assert bound_M(4) == 25
    assert bound_lemma1(1, 1) == math.comb(6, 3) + 1
    assert all(bound_M(n) < bound_pach_toth(n) for n in range(4, 41))
    for bad in (lambda: bound_M(2), lambda: bound_pach_toth(0), lambda: bound_lemma1(0, 2)):
        with pytest.raises(ValueError):
            bad()


def test_general_position_precondition_of_generated_families():
    fam = generate(GenSpec(1, 5, "disjoint-on-circle"))
    assert is_general_position(fam)
