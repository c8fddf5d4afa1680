"""Extension points of a grid triangle and the maximality tests built on them.

A point P at integral distance to A, B and C satisfies

    |PA| - |PC| = d1,    |PB| - |PC| = d2

for integers |d1| <= |AC| and |d2| <= |BC|. Each (d1, d2) cell is solved exactly: a linear
combination of the two equations gives a line, substituting the line into one squared
equation gives a quadratic, and every root is checked against the original system.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Set, Tuple, Union

from .errors import DomainError
from .exactmath import perfect_sqrt
from .geometry import (
    GridPoint,
    PointSet,
    RatPoint,
    collinear,
    dist2,
    integral_distance,
    scale,
)
from .heronian import EmbeddedTriangle

logger = logging.getLogger(__name__)

Point = Union[GridPoint, RatPoint]
Triangle = Union[EmbeddedTriangle, Sequence[GridPoint]]


class Mode(str, Enum):
    INTEGRAL = "integral"
    RATIONAL = "rational"


@dataclass(frozen=True)
class LinearForm:
    c1: int
    c2: int
    c3: int

    def __post_init__(self) -> None:
        if self.c1 == 0 and self.c2 == 0:
            raise DomainError("linear form degenerated; the triangle must be collinear")


@dataclass(frozen=True)
class HyperbolaSystem:
    A: GridPoint
    B: GridPoint
    C: GridPoint
    d1: int
    d2: int

    def __post_init__(self) -> None:
        if len({self.A, self.B, self.C}) != 3 or collinear(self.A, self.B, self.C):
            raise DomainError(f"{self.A}, {self.B}, {self.C} do not form a triangle")
        ac = integral_distance(self.A, self.C)
        bc = integral_distance(self.B, self.C)
        if ac is None or bc is None:
            raise DomainError("sides AC and BC must have integral length")
        if abs(self.d1) > ac or abs(self.d2) > bc:
            raise DomainError(f"({self.d1},{self.d2}) exceeds the triangle bounds ({ac},{bc})")


def _focal_terms(F: GridPoint, C: GridPoint, d: int) -> Tuple[int, int, int]:
    """Coefficients of ``|PF|^2 - |PC|^2 - d^2`` as ``alpha + beta*x + gamma*y``."""
    return (
        F.x * F.x + F.y * F.y - C.x * C.x - C.y * C.y - d * d,
        2 * (C.x - F.x),
        2 * (C.y - F.y),
    )


def linear_form(s: HyperbolaSystem) -> LinearForm:
    a1, b1, g1 = _focal_terms(s.A, s.C, s.d1)
    a2, b2, g2 = _focal_terms(s.B, s.C, s.d2)
    if s.d1 == 0:
        return LinearForm(b1, g1, a1)
    if s.d2 == 0:
        return LinearForm(b2, g2, a2)
    return LinearForm(s.d2 * b1 - s.d1 * b2, s.d2 * g1 - s.d1 * g2, s.d2 * a1 - s.d1 * a2)


def _line_roots(
    c1: int, c2: int, c3: int, alpha: int, beta: int, gamma: int, k: int, xc: int, yc: int
) -> Optional[List[Tuple[Fraction, Fraction]]]:
    """Rational points of ``c1 x + c2 y + c3 = 0`` on
    ``(alpha + beta x + gamma y)^2 = k |P - C|^2``.

    Needs ``c2 != 0``. Returns None when the quadric vanishes on the whole line.
    """
    u = beta * c2 - gamma * c1
    v = alpha * c2 - gamma * c3
    w = c3 + c2 * yc
    qa = u * u - k * (c1 * c1 + c2 * c2)
    qb = 2 * u * v - k * (2 * c1 * w - 2 * c2 * c2 * xc)
    qc = v * v - k * (c2 * c2 * xc * xc + w * w)

    if qa == 0:
        if qb == 0:
            return None if qc == 0 else []
        xs = [Fraction(-qc, qb)]
    else:
        s = perfect_sqrt(qb * qb - 4 * qa * qc)
        if s is None:
            return []
        xs = [Fraction(-qb + s, 2 * qa)]
        if s:
            xs.append(Fraction(-qb - s, 2 * qa))
    return [(x, (-c1 * x - c3) / Fraction(c2)) for x in xs]


def _points_on_line(
    lin: LinearForm, sq: Tuple[int, int, int, int], C: GridPoint
) -> Optional[List[Tuple[Fraction, Fraction]]]:
    alpha, beta, gamma, k = sq
    if lin.c2 != 0:
        return _line_roots(lin.c1, lin.c2, lin.c3, alpha, beta, gamma, k, C.x, C.y)
    swapped = _line_roots(lin.c2, lin.c1, lin.c3, alpha, gamma, beta, k, C.y, C.x)
    return None if swapped is None else [(x, y) for y, x in swapped]


def _int_distance(x: Fraction, y: Fraction, p: GridPoint) -> Optional[int]:
    dx, dy = x - p.x, y - p.y
    d = dx * dx + dy * dy
    if d.denominator != 1:
        return None
    return perfect_sqrt(d.numerator)


def _solve(
    A: GridPoint, B: GridPoint, C: GridPoint, d1: int, d2: int, integral: bool
) -> List[Tuple[Fraction, Fraction]]:
    a1, b1, g1 = _focal_terms(A, C, d1)
    a2, b2, g2 = _focal_terms(B, C, d2)
    if d1 == 0:
        lin = LinearForm(b1, g1, a1)
        squared = [(a2, b2, g2, 4 * d2 * d2)]
    elif d2 == 0:
        lin = LinearForm(b2, g2, a2)
        squared = [(a1, b1, g1, 4 * d1 * d1)]
    else:
        lin = LinearForm(d2 * b1 - d1 * b2, d2 * g1 - d1 * g2, d2 * a1 - d1 * a2)
        squared = [(a1, b1, g1, 4 * d1 * d1), (a2, b2, g2, 4 * d2 * d2)]

    candidates = None
    for sq in squared:
        candidates = _points_on_line(lin, sq, C)
        if candidates is not None:
            break
    if candidates is None:
        raise DomainError(f"cell ({d1},{d2}) has a continuum of candidates")

    solutions = []
    for x, y in candidates:
        if integral and (x.denominator != 1 or y.denominator != 1):
            continue
        rc = _int_distance(x, y, C)
        if rc is None:
            continue
        ra = _int_distance(x, y, A)
        if ra is None or ra - rc != d1:
            continue
        rb = _int_distance(x, y, B)
        if rb is None or rb - rc != d2:
            continue
        solutions.append((x, y))
    return solutions


def _to_point(x: Fraction, y: Fraction, mode: Mode) -> Point:
    if mode is Mode.INTEGRAL:
        return GridPoint(int(x), int(y))
    return RatPoint(x, y)


def solve_system(s: HyperbolaSystem, mode: Mode = Mode.INTEGRAL) -> List[Point]:
    """All integral (or rational) solutions of one (d1, d2) cell."""
    mode = Mode(mode)
    points = [
        _to_point(x, y, mode)
        for x, y in _solve(s.A, s.B, s.C, s.d1, s.d2, mode is Mode.INTEGRAL)
    ]
    return sorted(set(points), key=lambda p: p.key())


def _sweep_labels(E: Triangle) -> Tuple[GridPoint, GridPoint, GridPoint, int, int]:
    """Label the triangle so that C sits between the two shorter sides."""
    pts = list(E.vertices) if isinstance(E, EmbeddedTriangle) else list(E)
    if len(pts) != 3 or len(set(pts)) != 3 or collinear(*pts):
        raise DomainError("extension needs three non-collinear points")
    ordered = sorted(
        pts,
        key=lambda p: (-dist2(*[q for q in pts if q != p]), p.key()),
    )
    C, A, B = ordered[0], ordered[1], ordered[2]
    ac = integral_distance(A, C)
    bc = integral_distance(B, C)
    if ac is None or bc is None or integral_distance(A, B) is None:
        raise DomainError("extension needs a triangle with integral sides")
    if ac < bc:
        A, B, ac, bc = B, A, bc, ac
    return A, B, C, ac, bc


def _cell_range(bound: int, mode: Mode) -> range:
    # A grid point P has |PA| - |PC| = |AC| (mod 2).
    step = 2 if mode is Mode.INTEGRAL else 1
    return range(-bound, bound + 1, step)


def _sweep_rows(
    A: GridPoint, B: GridPoint, C: GridPoint, d1_values: Sequence[int], bc: int, mode: Mode
) -> Iterator[Point]:
    integral = mode is Mode.INTEGRAL
    for d1 in d1_values:
        for d2 in _cell_range(bc, mode):
            for x, y in _solve(A, B, C, d1, d2, integral):
                yield _to_point(x, y, mode)


def _sweep_chunk(args: Tuple[GridPoint, GridPoint, GridPoint, List[int], int, str]) -> List[Point]:
    A, B, C, d1_values, bc, mode = args
    return list(set(_sweep_rows(A, B, C, d1_values, bc, Mode(mode))))


def iter_extension_points(E: Triangle, mode: Mode = Mode.INTEGRAL) -> Iterator[Point]:
    """Lazily yield extension points, each once, in sweep order."""
    mode = Mode(mode)
    A, B, C, ac, bc = _sweep_labels(E)
    own = {RatPoint.of(p.x, p.y) for p in (A, B, C)} if mode is Mode.RATIONAL else {A, B, C}
    seen: Set[Point] = set()
    for p in _sweep_rows(A, B, C, _cell_range(ac, mode), bc, mode):
        if p in own or p in seen:
            continue
        seen.add(p)
        yield p


def extension_points(E: Triangle, mode: Mode = Mode.INTEGRAL, workers: int = 1) -> List[Point]:
    """Every point outside ``E`` at integral distance to its three vertices, in lattice order."""
    mode = Mode(mode)
    if workers <= 1:
        found = set(iter_extension_points(E, mode))
    else:
        A, B, C, ac, bc = _sweep_labels(E)
        rows = list(_cell_range(ac, mode))
        chunks = [rows[i::workers] for i in range(workers) if rows[i::workers]]
        found = set()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_sweep_chunk, [(A, B, C, c, bc, mode.value) for c in chunks]):
                found.update(part)
        own = {A, B, C} if mode is Mode.INTEGRAL else {RatPoint.of(p.x, p.y) for p in (A, B, C)}
        found -= own
    result = sorted(found, key=lambda p: p.key())
    logger.debug("%d %s extension points", len(result), mode.value)
    return result


def has_extension(E: Triangle, mode: Mode = Mode.INTEGRAL) -> bool:
    return next(iter_extension_points(E, mode), None) is not None


def anning_erdos_bound(k: int) -> int:
    """Upper bound on the number of extension points of a triangle with the two sweep sides <= k."""
    return 4 * (k + 1) ** 2


def best_seed(P: Union[PointSet, Sequence[GridPoint]]) -> Tuple[GridPoint, GridPoint, GridPoint]:
    """The non-collinear triple with the smallest longest side, ties in lattice order."""
    pts = sorted(P, key=GridPoint.key)
    best = None
    best_key = None
    for tri in itertools.combinations(pts, 3):
        if collinear(*tri):
            continue
        key = (max(dist2(p, q) for p, q in itertools.combinations(tri, 2)),
               tuple(p.key() for p in tri))
        if best_key is None or key < best_key:
            best, best_key = tri, key
    if best is None:
        raise DomainError("all points are collinear")
    return best


def _extends(candidate: Point, others: Sequence[GridPoint]) -> bool:
    for q in others:
        if integral_distance(candidate, q) is None:
            return False
    return True


def _iter_set_extensions(
    P: Union[PointSet, Sequence[GridPoint]],
    mode: Mode,
    seed: Optional[Sequence[GridPoint]],
) -> Iterator[Point]:
    pts = list(P)
    if len(pts) < 3:
        raise DomainError("maximality needs at least three points")
    tri = tuple(seed) if seed is not None else best_seed(pts)
    if any(p not in pts for p in tri):
        raise DomainError("seed must be a subset of the point set")
    rest = [p for p in pts if p not in tri]
    members = set(pts)
    for candidate in iter_extension_points(tri, mode):
        if mode is Mode.RATIONAL and candidate.is_integral():
            if candidate.to_grid() in members:
                continue
        elif candidate in members:
            continue
        if _extends(candidate, rest):
            yield candidate


def extensions_of(
    P: Union[PointSet, Sequence[GridPoint]],
    mode: Mode = Mode.INTEGRAL,
    seed: Optional[Sequence[GridPoint]] = None,
) -> List[Point]:
    """Points outside ``P`` at integral distance to every point of ``P``."""
    return sorted(_iter_set_extensions(P, Mode(mode), seed), key=lambda p: p.key())


def is_maximal(
    P: Union[PointSet, Sequence[GridPoint]], seed: Optional[Sequence[GridPoint]] = None
) -> bool:
    return next(_iter_set_extensions(P, Mode.INTEGRAL, seed), None) is None


def is_strongly_maximal(
    P: Union[PointSet, Sequence[GridPoint]], seed: Optional[Sequence[GridPoint]] = None
) -> bool:
    return next(_iter_set_extensions(P, Mode.RATIONAL, seed), None) is None


def scaling_extendable(P: PointSet, max_factor: int) -> Optional[int]:
    """The least ``l`` in ``2..max_factor`` for which ``l * P`` is no longer maximal."""
    for factor in range(2, max_factor + 1):
        if not is_maximal(scale(P, factor)):
            return factor
    return None
