import math
from fractions import Fraction

import pytest

from maxips.canon import normal_form
from maxips.errors import DomainError, EmbeddingError
from maxips.geometry import GridPoint, PointSet, RatPoint, dist2
from maxips.heronian import (
    EmbeddedTriangle,
    HeronTriangle,
    embeddings,
    heronian_triangles,
    is_heronian,
    is_right_triangle,
    minimal_realization,
    realize_on_grid,
    triangle_area,
)

E1 = PointSet.of([(0, 0), (0, 25), (12, 16)])
E2 = PointSet.of([(0, 0), (15, 20), (0, 20)])
E3 = PointSet.of([(0, 0), (7, 24), (16, 12)])


def test_small_triangles():
    assert heronian_triangles(4) == []
    assert heronian_triangles(5) == [HeronTriangle(5, 4, 3)]
    assert heronian_triangles(6) == [HeronTriangle(6, 5, 5)]
    found = heronian_triangles(25)
    assert HeronTriangle(25, 20, 15) in found
    assert HeronTriangle(25, 24, 7) in found
    assert found == sorted(found)


def test_triangles_have_integral_area():
    for d in range(1, 61):
        for t in heronian_triangles(d):
            assert t.a == d
            assert is_heronian(*t.sides)
            assert 16 * triangle_area(t) ** 2 == (
                (t.a + t.b + t.c) * (t.a + t.b - t.c) * (t.a - t.b + t.c) * (-t.a + t.b + t.c)
            )


def _brute_force_triangles(d):
    found = []
    for b in range(1, d + 1):
        for c in range(1, b + 1):
            if b + c <= d:
                continue
            product = (d + b + c) * (d + b - c) * (d - b + c) * (-d + b + c)
            root = math.isqrt(product)
            if root * root == product and root % 4 == 0:
                found.append((d, b, c))
    return sorted(found)


def test_triangle_lists_match_brute_force():
    total = 0
    for d in range(1, 201):
        found = [t.sides for t in heronian_triangles(d)]
        assert sorted(found) == _brute_force_triangles(d), d
        total += len(found)
    assert total > 0

def test_heron_triangle_validation():
    assert HeronTriangle.from_sides(3, 5, 4) == HeronTriangle(5, 4, 3)
    assert str(HeronTriangle(5, 4, 3)) == "5,4,3"
    for bad in ((3, 2, 2), (5, 3, 2), (3, 4, 5)):
        with pytest.raises(DomainError):
            HeronTriangle(*bad)
    with pytest.raises(DomainError):
        heronian_triangles(0)


def test_right_triangles_and_area():
    assert is_right_triangle(HeronTriangle(5, 4, 3))
    assert not is_right_triangle(HeronTriangle(6, 5, 5))
    assert triangle_area(HeronTriangle(5, 4, 3)) == 6
    assert triangle_area(HeronTriangle(6, 5, 5)) == 12


def test_embeddings_keep_side_labels():
    t = HeronTriangle(25, 20, 15)
    placed = embeddings(t)
    assert placed
    for emb in placed:
        assert emb.B == GridPoint(0, 0)
        assert dist2(emb.B, emb.C) == t.a**2
        assert dist2(emb.A, emb.C) == t.b**2
        assert dist2(emb.A, emb.B) == t.c**2


def test_embedding_classes_of_the_25_20_15_triangle():
    classes = {normal_form(e.vertices) for e in embeddings(HeronTriangle(25, 20, 15), dedup=True)}
    assert classes == {normal_form(E1), normal_form(E2), normal_form(E3)}
    assert len(embeddings(HeronTriangle(5, 4, 3), dedup=True)) == 1


def test_embedded_triangle_from_points():
    emb = EmbeddedTriangle.from_points(list(E2))
    assert dist2(emb.B, emb.C) == 25**2
    assert dist2(emb.A, emb.C) == 20**2
    assert dist2(emb.A, emb.B) == 15**2
    with pytest.raises(DomainError):
        EmbeddedTriangle.from_points([GridPoint(0, 0), GridPoint(1, 0), GridPoint(2, 0)])


def test_realize_rational_triangle_on_grid():
    pts = [RatPoint.of(0, 0), RatPoint.of(5, 0), RatPoint.of(Fraction(9, 5), Fraction(12, 5))]
    realizations = realize_on_grid(pts)
    assert realizations
    expected = normal_form(PointSet.of([(0, 0), (3, 0), (0, 4)]))
    assert all(normal_form(R) == expected for R in realizations)
    assert minimal_realization(pts) == expected


def test_realization_failures():
    with pytest.raises(DomainError):
        realize_on_grid([RatPoint.of(0, 0), RatPoint.of(1, 0), RatPoint.of(2, 0)])
    pts = [RatPoint.of(0, 0), RatPoint.of(3, 0), RatPoint.of(0, 4),
           RatPoint(Fraction(3, 2), Fraction(2))]
    with pytest.raises(EmbeddingError) as excinfo:
        minimal_realization(pts)
    assert len(excinfo.value.details["points"]) == 4
