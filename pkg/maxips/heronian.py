"""Heronian triangles, their grid embeddings, and grid realizations of rational sets."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .canon import CanonicalForm, normal_form
from .errors import DomainError, EmbeddingError
from .exactmath import perfect_sqrt, sum_of_two_squares
from .geometry import (
    GridPoint,
    PointSet,
    RatPoint,
    collinear,
    dist2,
    first_noncollinear_triple,
    heron_product,
    integral_distance,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class HeronTriangle:
    """Integer sides ``a >= b >= c`` with integral area."""

    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        if not (self.a >= self.b >= self.c >= 1):
            raise DomainError(f"sides must satisfy a >= b >= c >= 1, got {self.sides}")
        if self.b + self.c <= self.a:
            raise DomainError(f"{self.sides} violates the triangle inequality")
        root = perfect_sqrt(heron_product(self.a, self.b, self.c))
        if root is None or root % 4:
            raise DomainError(f"{self.sides} does not have integral area")

    @classmethod
    def from_sides(cls, *sides: int) -> "HeronTriangle":
        a, b, c = sorted(sides, reverse=True)
        return cls(a, b, c)

    @property
    def sides(self) -> Tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __str__(self) -> str:
        return f"{self.a},{self.b},{self.c}"


def is_heronian(a: int, b: int, c: int) -> bool:
    product = heron_product(a, b, c)
    if product <= 0:
        return False
    root = perfect_sqrt(product)
    return root is not None and root % 4 == 0


def triangle_area(t: HeronTriangle) -> int:
    root = perfect_sqrt(heron_product(t.a, t.b, t.c))
    assert root is not None
    return root // 4


def is_right_triangle(t: HeronTriangle) -> bool:
    return t.a * t.a == t.b * t.b + t.c * t.c


def heronian_triangles(d: int) -> List[HeronTriangle]:
    """All Heronian triangles whose longest side is exactly ``d``."""
    if d < 1:
        raise DomainError(f"diameter must be >= 1, got {d}")
    a = d
    found = []
    for b in range((a + 2) // 2, a + 1):
        for c in range(a + 1 - b, b + 1):
            if is_heronian(a, b, c):
                found.append(HeronTriangle(a, b, c))
    return found


@dataclass(frozen=True)
class EmbeddedTriangle:
    """A grid triangle with ``|BC| = a``, ``|AC| = b``, ``|AB| = c``.

    Triangles produced by :func:`embeddings` have B at the origin.
    """

    A: GridPoint
    B: GridPoint
    C: GridPoint

    @property
    def vertices(self) -> Tuple[GridPoint, GridPoint, GridPoint]:
        return (self.A, self.B, self.C)

    def to_pointset(self) -> PointSet:
        return PointSet(self.vertices)

    @classmethod
    def from_points(cls, points: Sequence[GridPoint]) -> "EmbeddedTriangle":
        """Label three grid points so that the side lengths follow ``a >= b >= c``."""
        if len(points) != 3 or len(set(points)) != 3:
            raise DomainError("a triangle needs three distinct points")
        p, q, r = points
        if collinear(p, q, r):
            raise DomainError(f"points {p}, {q}, {r} are collinear")
        opposite = sorted(
            ((dist2(q, r), p), (dist2(p, r), q), (dist2(p, q), r)),
            key=lambda item: (item[0], item[1].key()),
        )
        return cls(A=opposite[2][1], B=opposite[1][1], C=opposite[0][1])


def embeddings(t: HeronTriangle, dedup: bool = False) -> List[EmbeddedTriangle]:
    """Every grid placement of ``t`` with B at the origin, optionally one per isomorphism class."""
    a2 = t.a * t.a
    k2 = t.c * t.c + a2 - t.b * t.b
    if k2 % 2:
        return []
    k = k2 // 2
    twice_area = 2 * triangle_area(t)
    origin = GridPoint(0, 0)

    result = []
    seen = set()
    for xc, yc in sum_of_two_squares(a2):
        for sign in (1, -1):
            nx = k * xc - sign * twice_area * yc
            ny = k * yc + sign * twice_area * xc
            if nx % a2 or ny % a2:
                continue
            emb = EmbeddedTriangle(A=GridPoint(nx // a2, ny // a2), B=origin, C=GridPoint(xc, yc))
            if dedup:
                key = normal_form(emb.vertices)
                if key in seen:
                    continue
                seen.add(key)
            result.append(emb)
    return result


def _sides_of(points: Sequence[RatPoint]) -> Optional[Tuple[int, int, int]]:
    sides = []
    for p, q in itertools.combinations(points, 2):
        d = integral_distance(p, q)
        if d is None:
            return None
        sides.append(d)
    return sides[0], sides[1], sides[2]


def _as_rat(p) -> RatPoint:
    return p if isinstance(p, RatPoint) else RatPoint.of(p.x, p.y)


def realize_on_grid(points: Sequence[RatPoint]) -> List[PointSet]:
    """All grid realizations, up to the automorphism group, of a rational integral set.

    Anchors on the first non-collinear triple, places that triangle in every grid
    embedding and carries the remaining points along with the induced isometry.
    """
    rat = [_as_rat(p) for p in points]
    anchor = first_noncollinear_triple(rat)
    if anchor is None:
        raise DomainError("cannot realize a collinear set")
    sides = _sides_of(anchor)
    if sides is None:
        raise DomainError("anchor triangle has a non-integral side")
    P0, P1, P2 = anchor
    target = {frozenset((0, 1)): dist2(P0, P1), frozenset((0, 2)): dist2(P0, P2),
              frozenset((1, 2)): dist2(P1, P2)}

    u = (P1.x - P0.x, P1.y - P0.y)
    v = (P2.x - P0.x, P2.y - P0.y)
    det = u[0] * v[1] - u[1] * v[0]
    inv = ((v[1] / det, -v[0] / det), (-u[1] / det, u[0] / det))

    try:
        tri = HeronTriangle.from_sides(*sides)
    except DomainError:
        return []

    found: Dict[CanonicalForm, PointSet] = {}
    for emb in embeddings(tri):
        for Q0, Q1, Q2 in itertools.permutations(emb.vertices):
            images = (Q0, Q1, Q2)
            if any(dist2(images[i], images[j]) != target[frozenset((i, j))]
                   for i, j in ((0, 1), (0, 2), (1, 2))):
                continue
            U = (Q1.x - Q0.x, Q1.y - Q0.y)
            V = (Q2.x - Q0.x, Q2.y - Q0.y)
            m = (
                (U[0] * inv[0][0] + V[0] * inv[1][0], U[0] * inv[0][1] + V[0] * inv[1][1]),
                (U[1] * inv[0][0] + V[1] * inv[1][0], U[1] * inv[0][1] + V[1] * inv[1][1]),
            )
            mapped = []
            for p in rat:
                dx, dy = p.x - P0.x, p.y - P0.y
                x = Q0.x + m[0][0] * dx + m[0][1] * dy
                y = Q0.y + m[1][0] * dx + m[1][1] * dy
                if Fraction(x).denominator != 1 or Fraction(y).denominator != 1:
                    break
                mapped.append(GridPoint(int(x), int(y)))
            else:
                ps = PointSet(mapped)
                found.setdefault(normal_form(ps), ps)
    return [found[key] for key in sorted(found, key=CanonicalForm.sort_key)]


def minimal_realization(points: Sequence[RatPoint]) -> CanonicalForm:
    """The least canonical form among all grid realizations."""
    realizations = realize_on_grid(points)
    if not realizations:
        raise EmbeddingError(
            "no isometry puts the point set on the integer grid",
            {"points": [(str(p.x), str(p.y)) for p in map(_as_rat, points)]},
        )
    logger.debug("%d grid realizations found", len(realizations))
    return normal_form(realizations[0])
