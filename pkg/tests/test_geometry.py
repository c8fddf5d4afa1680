import itertools
import random
from fractions import Fraction

import pytest

from maxips.canon import ORTHO_MATRICES, apply_matrix

from maxips.constructions import known
from maxips.errors import DomainError
from maxips.geometry import (
    GridPoint,
    PointSet,
    PositionClass,
    RatPoint,
    characteristic,
    collinear,
    concyclic,
    diameter,
    dist2,
    distance_multiset,
    integral_distance,
    is_integral_set,
    position_class,
    scale,
    side_characteristic,
)

RECT = PointSet.of([(0, 0), (3, 0), (0, 4), (3, 4)])


def g(x, y):
    return GridPoint(x, y)


def test_dist2_large_values():
    assert dist2(g(-5940, 4455), g(9112, -6834)) == 354004225
    assert integral_distance(g(-5940, 4455), g(9112, -6834)) == 18815


def test_integral_distance():
    assert integral_distance(g(0, 0), g(3, 4)) == 5
    assert integral_distance(g(0, 0), g(1, 1)) is None
    half = RatPoint(Fraction(3, 2), Fraction(2))
    assert integral_distance(half, RatPoint.of(0, 0)) is None
    assert integral_distance(RatPoint.of(Fraction(9, 5), Fraction(12, 5)), RatPoint.of(0, 0)) == 3


def test_collinear_and_concyclic():
    assert not collinear(g(0, 12), g(9, 0), g(16, 0))
    assert collinear(g(-3, 0), g(0, 0), g(3, 0))
    assert concyclic(g(0, 0), g(3, 0), g(0, 4), g(3, 4))
    assert not concyclic(g(0, 0), g(3, 0), g(0, 4), g(1, 1))
    # three collinear points never lie on a genuine circle
    assert not concyclic(g(0, 0), g(1, 0), g(2, 0), g(0, 5))


def test_point_set_is_ordered_and_rejects_duplicates():
    P = PointSet.of([(4, 0), (0, 3), (-4, 0), (0, -3)])
    assert P.coords() == [(0, -3), (0, 3), (-4, 0), (4, 0)]
    assert g(0, 3) in P
    with pytest.raises(DomainError):
        PointSet.of([(0, 0), (0, 0)])
    assert P.union([g(0, 0)]).coords()[0] == (0, 0)


def test_is_integral_set():
    assert is_integral_set(RECT)
    assert not is_integral_set(PointSet.of([(0, 0), (1, 1), (2, 0)]))
    assert not is_integral_set(PointSet.of([(0, 0), (1, 0), (2, 0)]))
    assert not is_integral_set(PointSet([]))


def test_diameter():
    assert diameter(RECT) == 5
    assert diameter(known("m5")) == 224
    with pytest.raises(DomainError):
        diameter(PointSet.of([(0, 0), (1, 1)]))
    with pytest.raises(DomainError):
        diameter(PointSet.of([(0, 0)]))


def test_position_class():
    assert position_class(PointSet.of([(0, 0), (3, 0), (-3, 0), (0, 4), (0, -4)])) == (
        PositionClass.ARBITRARY
    )
    assert position_class(RECT) == PositionClass.SEMI_GENERAL
    assert position_class(known("general-4")) == PositionClass.GENERAL
    assert PositionClass.SEMI_GENERAL.admits(PositionClass.GENERAL)
    assert not PositionClass.GENERAL.admits(PositionClass.SEMI_GENERAL)
    assert PositionClass.ARBITRARY.admits(PositionClass.ARBITRARY)


def test_characteristic():
    assert side_characteristic(2, 2, 3) == 7
    assert side_characteristic(5, 4, 3) == 1
    assert characteristic(RECT) == 1
    assert characteristic(known("m4"), cross_check=True) == 1
    with pytest.raises(DomainError):
        side_characteristic(1, 2, 3)
    with pytest.raises(DomainError):
        characteristic(PointSet.of([(0, 0), (1, 0), (2, 0)]))


def test_scale_and_distance_multiset():
    doubled = scale(RECT, 2)
    assert doubled.coords() == [(0, 0), (6, 0), (0, 8), (6, 8)]
    assert distance_multiset(doubled) == [4 * d for d in distance_multiset(RECT)]
    assert distance_multiset(RECT) == [9, 9, 16, 16, 25, 25]
    with pytest.raises(DomainError):
        scale(RECT, 0)


def _on_common_circle(p, q, r, s):
    """Circumcenter of p, q, r by Cramer's rule, then compare squared radii."""
    ax, ay = 2 * (q.x - p.x), 2 * (q.y - p.y)
    bx, by = 2 * (r.x - p.x), 2 * (r.y - p.y)
    u = q.x**2 + q.y**2 - p.x**2 - p.y**2
    v = r.x**2 + r.y**2 - p.x**2 - p.y**2
    det = ax * by - ay * bx
    cx, cy = Fraction(u * by - ay * v, det), Fraction(ax * v - u * bx, det)
    return (s.x - cx) ** 2 + (s.y - cy) ** 2 == (p.x - cx) ** 2 + (p.y - cy) ** 2


def _random_quadruples(rng, count, width):
    for _ in range(count):
        pts = {g(rng.randint(-width, width), rng.randint(-width, width)) for _ in range(4)}
        if len(pts) == 4:
            yield tuple(pts)


def test_concyclic_matches_circumcenter():
    rng = random.Random(7)
    hits = 0
    for quad in _random_quadruples(rng, 4000, 4):
        if any(collinear(*t) for t in itertools.combinations(quad, 3)):
            assert not concyclic(*quad)
            continue
        expected = _on_common_circle(*quad)
        assert concyclic(*quad) == expected, quad
        hits += expected
    assert hits > 0


def test_predicates_are_invariant_under_lattice_isometries():
    rng = random.Random(11)
    for quad in _random_quadruples(rng, 500, 5):
        m = rng.choice(ORTHO_MATRICES)
        shift = g(rng.randint(-50, 50), rng.randint(-50, 50))
        moved = [apply_matrix(m, p) + shift for p in quad]
        assert concyclic(*moved) == concyclic(*quad)
        for i, j, k in itertools.combinations(range(4), 3):
            assert collinear(moved[i], moved[j], moved[k]) == collinear(quad[i], quad[j], quad[k])


def test_characteristic_is_scale_invariant():
    for name in ("min-4", "min-6", "m3", "general-4", "semi-general-5"):
        P = known(name)
        k = characteristic(P)
        for factor in (2, 3, 5, 7):
            assert characteristic(scale(P, factor)) == k, (name, factor)
    assert characteristic(known("m4"), cross_check=True) == characteristic(scale(known("m4"), 4))
