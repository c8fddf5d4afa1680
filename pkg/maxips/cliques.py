"""Extension graphs and maximal clique enumeration.

Every maximal integral point set that contains a seed triangle is the seed together with a
maximal clique of the graph on the seed's extension points, where two points are adjacent
when their distance is a positive integer.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Iterator, List, Sequence, Set, Tuple

from .canon import CanonicalForm, normal_form
from .errors import DomainError
from .extension import Mode, extension_points, is_maximal
from .geometry import (
    GridPoint,
    PointSet,
    PositionClass,
    collinear,
    diameter,
    incircle,
    integral_distance,
    position_class,
)
from .heronian import EmbeddedTriangle

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExtensionGraph:
    seed: Tuple[GridPoint, GridPoint, GridPoint]
    vertices: Tuple[GridPoint, ...]
    adjacency: Tuple[frozenset, ...]

    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in sorted(nbrs) if u < v]


@dataclass(frozen=True)
class MaximalSet:
    points: PointSet
    cardinality: int
    diameter: int
    canonical: CanonicalForm
    maximal_within_filter: bool = True
    unconditionally_maximal: bool = True

    @classmethod
    def from_points(cls, points: PointSet, **flags: bool) -> "MaximalSet":
        return cls(
            points=points,
            cardinality=len(points),
            diameter=diameter(points),
            canonical=normal_form(points),
            **flags,
        )

    def sort_key(self) -> tuple:
        return (self.cardinality, self.diameter, self.canonical.sort_key())


def _seed_points(E) -> Tuple[GridPoint, GridPoint, GridPoint]:
    pts = tuple(E.vertices) if isinstance(E, EmbeddedTriangle) else tuple(E)
    if len(pts) != 3:
        raise DomainError("a seed is three points")
    return pts  # type: ignore[return-value]


def adjacency_of(
    points: Sequence, adjacent: Callable[[object, object], bool]
) -> Tuple[frozenset, ...]:
    nbrs: List[Set[int]] = [set() for _ in points]
    for i, j in itertools.combinations(range(len(points)), 2):
        if adjacent(points[i], points[j]):
            nbrs[i].add(j)
            nbrs[j].add(i)
    return tuple(frozenset(n) for n in nbrs)


def build_graph(E, workers: int = 1) -> ExtensionGraph:
    seed = _seed_points(E)
    vertices = tuple(extension_points(seed, Mode.INTEGRAL, workers=workers))
    adjacency = adjacency_of(
        vertices, lambda p, q: p != q and integral_distance(p, q) is not None
    )
    logger.debug("extension graph: %d vertices, %d edges",
                 len(vertices), sum(len(n) for n in adjacency) // 2)
    return ExtensionGraph(seed=seed, vertices=vertices, adjacency=adjacency)


def bron_kerbosch(adjacency: Sequence[frozenset]) -> Iterator[List[int]]:
    """Maximal cliques of a graph given by index adjacency, pivoting on the best-connected vertex.

    Vertices are visited in index order and pivot ties go to the lowest index, so the output
    order is reproducible.
    """

    def expand(R: List[int], P: List[int], X: List[int]) -> Iterator[List[int]]:
        if not P and not X:
            yield list(R)
            return
        pivot = max(P + X, key=lambda u: (len(adjacency[u].intersection(P)), -u))
        for v in [v for v in P if v not in adjacency[pivot]]:
            nbrs = adjacency[v]
            yield from expand(R + [v], [u for u in P if u in nbrs], [u for u in X if u in nbrs])
            P.remove(v)
            X.append(v)

    yield from expand([], list(range(len(adjacency))), [])


def maximal_cliques(G: ExtensionGraph, verify: bool = False) -> List[MaximalSet]:
    """All maximal point sets containing the seed, smallest first."""
    results = []
    for clique in bron_kerbosch(G.adjacency):
        points = PointSet(list(G.seed) + [G.vertices[i] for i in clique])
        if verify and not is_maximal(points):
            raise DomainError(f"clique {points} is not maximal")
        results.append(MaximalSet.from_points(points))
    results.sort(key=MaximalSet.sort_key)
    return results


def _violates(filter_: PositionClass, members: Sequence[GridPoint], v: GridPoint) -> bool:
    for p, q in itertools.combinations(members, 2):
        if collinear(p, q, v):
            return True
    if filter_ is PositionClass.GENERAL:
        for p, q, r in itertools.combinations(members, 3):
            if incircle(p, q, r, v) == 0:
                return True
    return False


def constrained_maximal_cliques(
    G: ExtensionGraph, filter_: PositionClass, verify: bool = False
) -> List[MaximalSet]:
    """Cliques that are maximal among those keeping the seed-plus-clique in the filter class."""
    filter_ = PositionClass(filter_)
    if filter_ is PositionClass.ARBITRARY:
        return maximal_cliques(G, verify=verify)
    if not filter_.admits(position_class(G.seed)):
        raise DomainError(f"seed is not in {filter_.value} position")

    adjacency = G.adjacency
    found: List[List[int]] = []

    def compatible(R: List[int], u: int) -> bool:
        if any(u not in adjacency[r] for r in R):
            return False
        members = list(G.seed) + [G.vertices[r] for r in R]
        return not _violates(filter_, members, G.vertices[u])

    def expand(R: List[int], P: List[int], X: List[int]) -> None:
        if not P and not X:
            found.append(list(R))
            return
        for v in list(P):
            R2 = R + [v]
            expand(R2, [u for u in P if u != v and compatible(R2, u)],
                   [u for u in X if compatible(R2, u)])
            P.remove(v)
            X.append(v)

    start = [u for u in range(len(G.vertices)) if compatible([], u)]
    expand([], start, [])

    results = []
    for clique in found:
        chosen = set(clique)
        unconditional = not any(
            chosen <= adjacency[u] for u in range(len(G.vertices)) if u not in chosen
        )
        points = PointSet(list(G.seed) + [G.vertices[i] for i in clique])
        if verify and unconditional != is_maximal(points):
            raise DomainError(f"maximality flag disagrees for {points}")
        results.append(
            MaximalSet.from_points(
                points, maximal_within_filter=True, unconditionally_maximal=unconditional
            )
        )
    results.sort(key=MaximalSet.sort_key)
    return results


def is_crab(P: PointSet) -> bool:
    """A crab up to isometry: two points mirrored on one axis, the rest mirrored on a
    perpendicular axis through the same center, the center itself included."""
    pts = list(P)
    n = len(pts)
    if n < 5 or n % 2 == 0:
        return False
    for center in pts:
        others = [p for p in pts if p != center]
        rel = [p - center for p in others]
        if any(GridPoint(-r.x, -r.y) not in rel for r in rel):
            continue
        for apex in rel:
            line = [r for r in rel if r != apex and r != GridPoint(-apex.x, -apex.y)]
            if all(r.x * apex.x + r.y * apex.y == 0 for r in line):
                return True
    return False
