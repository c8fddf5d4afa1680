"""Total order on grid points and normal forms under the grid automorphism group.

The group is generated by integer translations and the eight orthogonal integer matrices.
Two point sets are isomorphic exactly when their normal forms agree, which makes the
serialized normal form the dedup key of the search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .errors import DomainError
from .geometry import GridPoint, PointSet

Matrix = Tuple[Tuple[int, int], Tuple[int, int]]

ORTHO_MATRICES: Tuple[Matrix, ...] = (
    ((1, 0), (0, 1)),
    ((1, 0), (0, -1)),
    ((-1, 0), (0, 1)),
    ((-1, 0), (0, -1)),
    ((0, 1), (1, 0)),
    ((0, 1), (-1, 0)),
    ((0, -1), (1, 0)),
    ((0, -1), (-1, 0)),
)


def point_less(p: GridPoint, q: GridPoint) -> bool:
    return p.key() < q.key()


def list_repr(points: Iterable[GridPoint]) -> List[GridPoint]:
    return sorted(points, key=GridPoint.key)


def apply_matrix(m: Matrix, p: GridPoint) -> GridPoint:
    (a, b), (c, d) = m
    return GridPoint(a * p.x + b * p.y, c * p.x + d * p.y)


def apply_isometry(P: PointSet, m: Matrix, shift: Tuple[int, int] = (0, 0)) -> PointSet:
    t = GridPoint(*shift)
    return PointSet(apply_matrix(m, p) + t for p in P)


@dataclass(frozen=True)
class CanonicalForm:
    """Minimum list representation; always starts at the origin."""

    points: Tuple[GridPoint, ...]

    def serialize(self) -> str:
        return ";".join(f"{p.x},{p.y}" for p in self.points)

    @classmethod
    def parse(cls, text: str) -> "CanonicalForm":
        pts = []
        for chunk in text.strip().split(";"):
            try:
                x, y = chunk.split(",")
                pts.append(GridPoint(int(x), int(y)))
            except ValueError as e:
                raise DomainError(f"malformed canonical form chunk {chunk!r}") from e
        return cls(tuple(pts))

    def to_pointset(self) -> PointSet:
        return PointSet(self.points)

    def coords(self) -> List[Tuple[int, int]]:
        return [(p.x, p.y) for p in self.points]

    def sort_key(self) -> tuple:
        return tuple(p.key() for p in self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __str__(self) -> str:
        return self.serialize()


def _decode(key: tuple) -> GridPoint:
    ax, xpos, ay, ypos = key
    return GridPoint(ax if xpos else -ax, ay if ypos else -ay)


def normal_form(P: Sequence[GridPoint] | PointSet) -> CanonicalForm:
    pts = list(P)
    if not pts:
        raise DomainError("normal form of an empty set")

    best = None
    for origin in pts:
        shifted = [p - origin for p in pts]
        for m in ORTHO_MATRICES:
            keys = tuple(sorted(apply_matrix(m, p).key() for p in shifted))
            if best is None or keys < best:
                best = keys
    assert best is not None
    return CanonicalForm(tuple(_decode(k) for k in best))


def isomorphic(P: Sequence[GridPoint] | PointSet, Q: Sequence[GridPoint] | PointSet) -> bool:
    if len(P) != len(Q):
        return False
    return normal_form(P) == normal_form(Q)
