"""Grid points, exact distances and the set-level predicates."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .errors import DomainError
from .exactmath import lattice_order_key, perfect_sqrt, rational_sqrt, squarefree_part

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class GridPoint:
    x: int
    y: int

    def __sub__(self, other: "GridPoint") -> "GridPoint":
        return GridPoint(self.x - other.x, self.y - other.y)

    def __add__(self, other: "GridPoint") -> "GridPoint":
        return GridPoint(self.x + other.x, self.y + other.y)

    def key(self) -> tuple:
        return lattice_order_key(self.x, self.y)

    def __str__(self) -> str:
        return f"({self.x},{self.y})"


@dataclass(frozen=True, slots=True)
class RatPoint:
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x: Union[int, Fraction], y: Union[int, Fraction]) -> "RatPoint":
        return cls(Fraction(x), Fraction(y))

    def key(self) -> tuple:
        return lattice_order_key(self.x, self.y)

    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def to_grid(self) -> GridPoint:
        if not self.is_integral():
            raise DomainError(f"{self} is not a grid point")
        return GridPoint(int(self.x), int(self.y))

    def __str__(self) -> str:
        return f"({self.x},{self.y})"


AnyPoint = Union[GridPoint, RatPoint]


class PositionClass(str, Enum):
    ARBITRARY = "arbitrary"
    SEMI_GENERAL = "semi_general"
    GENERAL = "general"

    def admits(self, other: "PositionClass") -> bool:
        """Whether a set of class ``other`` satisfies this class as a filter."""
        rank = {PositionClass.ARBITRARY: 0, PositionClass.SEMI_GENERAL: 1, PositionClass.GENERAL: 2}
        return rank[other] >= rank[self]


class PointSet:
    """A finite set of distinct grid points, stored in lattice order."""

    __slots__ = ("_points",)

    def __init__(self, points: Iterable[GridPoint]):
        pts = list(points)
        if len(set(pts)) != len(pts):
            raise DomainError("point set contains duplicate points")
        self._points: Tuple[GridPoint, ...] = tuple(sorted(pts, key=GridPoint.key))

    @classmethod
    def of(cls, coords: Iterable[Tuple[int, int]]) -> "PointSet":
        return cls(GridPoint(x, y) for x, y in coords)

    @property
    def points(self) -> Tuple[GridPoint, ...]:
        return self._points

    def coords(self) -> List[Tuple[int, int]]:
        return [(p.x, p.y) for p in self._points]

    def __iter__(self) -> Iterator[GridPoint]:
        return iter(self._points)

    def __len__(self) -> int:
        return len(self._points)

    def __contains__(self, p: object) -> bool:
        return p in self._points

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PointSet) and self._points == other._points

    def __hash__(self) -> int:
        return hash(self._points)

    def __repr__(self) -> str:
        return "PointSet([" + ", ".join(str(p) for p in self._points) + "])"

    def union(self, extra: Iterable[GridPoint]) -> "PointSet":
        return PointSet(list(self._points) + list(extra))


def dist2(p: AnyPoint, q: AnyPoint):
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


def integral_distance(p: AnyPoint, q: AnyPoint) -> Optional[int]:
    """The distance between two points when it is an integer."""
    d = dist2(p, q)
    if isinstance(d, Fraction):
        if d.denominator != 1:
            root = rational_sqrt(d)
            return None if root is None or root.denominator != 1 else int(root)
        d = int(d)
    return perfect_sqrt(d)


def collinear(p: AnyPoint, q: AnyPoint, r: AnyPoint) -> bool:
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x) == 0


def incircle(p: AnyPoint, q: AnyPoint, r: AnyPoint, s: AnyPoint):
    rows = []
    for t in (q, r, s):
        dx, dy = t.x - p.x, t.y - p.y
        rows.append((dx, dy, dx * dx + dy * dy))
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def concyclic(p: AnyPoint, q: AnyPoint, r: AnyPoint, s: AnyPoint) -> bool:
    """Four points on a genuine circle; any collinear triple rules it out."""
    for a, b, c in itertools.combinations((p, q, r, s), 3):
        if collinear(a, b, c):
            return False
    return incircle(p, q, r, s) == 0


def all_collinear(points: Sequence[AnyPoint]) -> bool:
    return first_noncollinear_triple(points) is None


def first_noncollinear_triple(
    points: Sequence[AnyPoint],
) -> Optional[Tuple[AnyPoint, AnyPoint, AnyPoint]]:
    for a, b, c in itertools.combinations(points, 3):
        if not collinear(a, b, c):
            return a, b, c
    return None


def is_integral_set(P: PointSet) -> bool:
    pts = P.points
    if not pts:
        return False
    for p, q in itertools.combinations(pts, 2):
        if integral_distance(p, q) is None:
            return False
    if len(pts) >= 3 and all_collinear(pts):
        return False
    return True


def diameter(P: Union[PointSet, Sequence[AnyPoint]]) -> int:
    pts = list(P)
    if len(pts) < 2:
        raise DomainError("diameter needs at least two points")
    best = 0
    for p, q in itertools.combinations(pts, 2):
        d = integral_distance(p, q)
        if d is None:
            raise DomainError(f"distance between {p} and {q} is not integral")
        best = max(best, d)
    return best


def distance_multiset(points: Iterable[AnyPoint]) -> List:
    """Sorted squared distances; invariant under every isometry."""
    return sorted(dist2(p, q) for p, q in itertools.combinations(list(points), 2))


def position_class(P: Union[PointSet, Sequence[AnyPoint]]) -> PositionClass:
    pts = list(P)
    if len(pts) < 3:
        raise DomainError("position class needs at least three points")
    for a, b, c in itertools.combinations(pts, 3):
        if collinear(a, b, c):
            return PositionClass.ARBITRARY
    for quad in itertools.combinations(pts, 4):
        if incircle(*quad) == 0:
            return PositionClass.SEMI_GENERAL
    return PositionClass.GENERAL


def heron_product(a: int, b: int, c: int) -> int:
    return (a + b + c) * (a + b - c) * (a - b + c) * (-a + b + c)


def side_characteristic(a: int, b: int, c: int) -> int:
    product = heron_product(a, b, c)
    if product <= 0:
        raise DomainError(f"({a},{b},{c}) is not a proper triangle")
    return squarefree_part(product)


def _triangle_sides(tri: Sequence[AnyPoint]) -> Tuple[int, int, int]:
    sides = []
    for p, q in itertools.combinations(tri, 2):
        d = integral_distance(p, q)
        if d is None:
            raise DomainError(f"distance between {p} and {q} is not integral")
        sides.append(d)
    return sides[0], sides[1], sides[2]


def characteristic(P: Union[PointSet, Sequence[AnyPoint]], cross_check: bool = False) -> int:
    """Characteristic of the first non-collinear triple of ``P`` in iteration order.

    With ``cross_check`` the last non-collinear triple is evaluated too and must agree.
    """
    pts = list(P)
    triples = [t for t in itertools.combinations(pts, 3) if not collinear(*t)]
    if not triples:
        raise DomainError("characteristic needs a non-collinear triple")
    k = side_characteristic(*_triangle_sides(triples[0]))
    if cross_check and len(triples) > 1:
        other = side_characteristic(*_triangle_sides(triples[-1]))
        if other != k:
            raise DomainError(f"characteristic mismatch {k} != {other}")
        logger.debug("characteristic %d confirmed on a second triangle", k)
    return k


def scale(P: PointSet, factor: int) -> PointSet:
    if factor < 1:
        raise DomainError(f"scale factor must be >= 1, got {factor}")
    return PointSet(GridPoint(p.x * factor, p.y * factor) for p in P)
