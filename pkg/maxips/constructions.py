"""Direct constructions of integral point sets.

Rectangles, rhombi and crabs come from Pythagorean pairs. Decomposition crabs and
semi-crabs split ``(gh)^2`` into factor pairs whose half sums and half differences give
the apex distances and base positions. Circle sets come from Gaussian integers of norm R.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .canon import CanonicalForm
from .cliques import adjacency_of, bron_kerbosch
from .errors import DomainError
from .exactmath import (
    GaussInt,
    divisors,
    factorize,
    gaussian_prime_factor,
    perfect_sqrt,
)
from .geometry import GridPoint, PointSet, RatPoint, heron_product, integral_distance
from .heronian import minimal_realization

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PythagoreanPair:
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a < 1 or self.b < 1:
            raise DomainError(f"legs must be positive, got ({self.a},{self.b})")
        if perfect_sqrt(self.a * self.a + self.b * self.b) is None:
            raise DomainError(f"({self.a},{self.b}) is not a Pythagorean pair")

    @property
    def c(self) -> int:
        root = perfect_sqrt(self.a * self.a + self.b * self.b)
        assert root is not None
        return root

    @property
    def primitive(self) -> bool:
        return math.gcd(self.a, self.b) == 1


@dataclass(frozen=True)
class CrabSpec:
    a: int
    arms: Tuple[int, ...]

    def __post_init__(self) -> None:
        arms = tuple(sorted(self.arms))
        if not arms:
            raise DomainError("a crab needs at least one arm")
        if len(set(arms)) != len(arms):
            raise DomainError(f"crab arms must be distinct, got {arms}")
        for b in arms:
            PythagoreanPair(self.a, b)
        object.__setattr__(self, "arms", arms)

    @property
    def order(self) -> int:
        return len(self.arms)


def rectangle(p: PythagoreanPair) -> PointSet:
    return PointSet.of([(0, 0), (p.a, 0), (0, p.b), (p.a, p.b)])


def rhombus(p: PythagoreanPair) -> PointSet:
    return PointSet.of([(0, 0), (p.a, 0), (-p.a, 0), (0, p.b), (0, -p.b)])


def crab(spec: CrabSpec) -> PointSet:
    coords = [(0, 0), (0, spec.a), (0, -spec.a)]
    for b in spec.arms:
        coords += [(b, 0), (-b, 0)]
    return PointSet.of(coords)


def decomposition_number(a: int, b: int, c: int) -> int:
    """``heron_product / gcd(b^2 - c^2 + a^2, 2a)^2`` for the triangle with base ``a``."""
    product = heron_product(a, b, c)
    if product <= 0:
        raise DomainError(f"({a},{b},{c}) is degenerate")
    g = math.gcd(b * b - c * c + a * a, 2 * a)
    return product // (g * g)


def decomposition_g(a: int, b: int, c: int) -> int:
    if heron_product(a, b, c) <= 0:
        raise DomainError(f"({a},{b},{c}) is degenerate")
    return 2 * a // math.gcd(b * b - c * c + a * a, 2 * a)


def factor_pairs(D: int) -> Iterator[Tuple[int, int]]:
    """Pairs ``f1 > f2`` with ``f1 * f2 = D`` and ``f1 = f2 (mod 2)``, ``f1`` ascending."""
    for f2 in reversed(divisors(D)):
        f1 = D // f2
        if f1 <= f2:
            continue
        if (f1 - f2) % 2 == 0:
            yield f1, f2


def decompose_arms(h: int) -> List[int]:
    if h < 1:
        raise DomainError(f"h must be >= 1, got {h}")
    return sorted((f1 - f2) // 2 for f1, f2 in factor_pairs(h * h))


def decompose_crab(h: int) -> PointSet:
    arms = decompose_arms(h)
    if not arms:
        raise DomainError(f"h={h} admits no factor pair; decompose({h}) is empty")
    return crab(CrabSpec(h, tuple(arms)))


def crab_order(h: int) -> int:
    if h < 1:
        raise DomainError(f"h must be >= 1, got {h}")
    product = 1
    for p, e in factorize(h):
        if p == 2:
            e = max(e - 1, 0)
        product *= 2 * e + 1
    return (product - 1) // 2


@dataclass(frozen=True)
class SemiCrabLayout:
    """Apex height ``gh/g`` over a base line carrying positions ``+-gc_i/g``."""

    gh: int
    g: int
    m: int
    left: Tuple[int, ...]
    right: Tuple[int, ...]
    apex_distances: Tuple[int, ...]

    @property
    def cardinality(self) -> int:
        return 1 + len(self.left) + len(self.right)

    def rational_points(self) -> List[RatPoint]:
        """Apex, leftmost and rightmost base point first, then the rest of the base."""
        apex = RatPoint(Fraction(0), Fraction(self.gh, self.g))
        left = [RatPoint(Fraction(-gc, self.g), Fraction(0)) for gc in self.left]
        right = [RatPoint(Fraction(gc, self.g), Fraction(0)) for gc in self.right]
        base = sorted(left + right, key=lambda p: p.x)
        ordered = [apex]
        if base:
            ordered += [base[0], base[-1]] + base[1:-1]
        return ordered


def semi_crab_layout(gh: int, g: int, m: Optional[int] = None) -> SemiCrabLayout:
    if g < 2:
        raise DomainError(f"g must be >= 2, got {g}")
    if gh < 1:
        raise DomainError(f"gh must be >= 1, got {gh}")
    if gh % g == 0:
        raise DomainError(f"height {gh}/{g} is integral; use decompose_crab({gh // g})")
    denominator = g // math.gcd(gh, g)
    blocked = [p for p, _ in factorize(denominator) if p % 4 == 3]
    if blocked:
        # x^2 + y^2 = b^2 has no rational solution with such a prime in a reduced denominator
        raise DomainError(
            f"g={g} has the prime factor {blocked[0]} = 3 (mod 4) in the apex height "
            f"{gh}/{g}; no base point lies at integral distance",
            {"g": g, "prime": blocked[0]},
        )

    pairs = []
    for f1, f2 in factor_pairs(gh * gh):
        half = (f1 + f2) // 2
        if half % g == 0:
            pairs.append((half // g, (f1 - f2) // 2))

    def layout(residue: int) -> SemiCrabLayout:
        chosen = [(b, gc) for b, gc in pairs if gc % g in (residue % g, -residue % g)]
        left = tuple(sorted(gc for b, gc in chosen if gc % g == residue % g))
        right = tuple(sorted(gc for b, gc in chosen if gc % g == -residue % g))
        return SemiCrabLayout(gh, g, residue, left, right, tuple(sorted(b for b, _ in chosen)))

    if m is not None:
        if not 1 <= m < g:
            raise DomainError(f"residue m must lie in [1, {g - 1}], got {m}")
        best = layout(m)
    else:
        best = max((layout(r) for r in range(1, g)), key=lambda s: (s.cardinality, -s.m))
    if best.cardinality < 3:
        raise DomainError(f"no factor pair of {gh}^2 survives the conditions for g={g}")
    logger.debug("semi-crab gh=%d g=%d m=%d: %d points", gh, g, best.m, best.cardinality)
    return best


def semi_crab(gh: int, g: int, m: Optional[int] = None) -> PointSet:
    layout = semi_crab_layout(gh, g, m)
    return minimal_realization(layout.rational_points()).to_pointset()


def _circle_primes(R: int) -> List[Tuple[int, int]]:
    if R < 2:
        raise DomainError(f"circle radius must be >= 2, got {R}")
    factors = factorize(R)
    for p, _ in factors:
        if p % 4 != 1:
            raise DomainError(f"prime factor {p} of {R} is not 1 mod 4")
    return factors


def circle_gaussians(R: int) -> List[GaussInt]:
    """The Gaussian integers eta_1, eta_2, ... of norm R^2, two per divisor of R."""
    factors = _circle_primes(R)
    omegas = [gaussian_prime_factor(p) for p, _ in factors]
    exponents = [e for _, e in factors]

    by_divisor = {}
    for us in itertools.product(*(range(e + 1) for e in exponents)):
        d = math.prod(p**u for (p, _), u in zip(factors, us))
        by_divisor[d] = us

    etas = []
    for d in divisors(R):
        us = by_divisor[d]
        eta = GaussInt(1, 0)
        for w, v, u in zip(omegas, exponents, us):
            eta = eta * w ** (v + u) * w.conjugate() ** (v - u)
        etas += [eta.times_i(), eta]
    return etas


def circle_points(R: int, divide: int = 1) -> List[RatPoint]:
    """``eta^2 / (R * divide)`` for every eta: 2 tau(R) points on a circle of radius R/divide."""
    pts = []
    for eta in circle_gaussians(R):
        sq = eta * eta
        pts.append(RatPoint(Fraction(sq.re, R * divide), Fraction(sq.im, R * divide)))
    return pts


def circle_set(R: int) -> PointSet:
    center = RatPoint(Fraction(0), Fraction(0))
    return minimal_realization([center] + circle_points(R)).to_pointset()


def circle_tilde(R: int) -> PointSet:
    return minimal_realization(circle_points(R, divide=2)).to_pointset()


def circle_scaled(R: int, t: int) -> List[PointSet]:
    """Maximal cliques of integral distance among the circle points scaled by ``1/t``."""
    if t < 1:
        raise DomainError(f"t must be >= 1, got {t}")
    pts = circle_points(R, divide=t)
    adjacency = adjacency_of(pts, lambda p, q: integral_distance(p, q) is not None)
    found: Dict[CanonicalForm, PointSet] = {}
    for clique in bron_kerbosch(adjacency):
        if len(clique) < 3:
            logger.debug("skipping clique of size %d", len(clique))
            continue
        form = minimal_realization([pts[i] for i in clique])
        found.setdefault(form, form.to_pointset())
    keys = sorted(found, key=lambda f: (-len(f), f.sort_key()))
    return [found[k] for k in keys]


def _ps(coords: Sequence[Tuple[int, int]]) -> PointSet:
    return PointSet.of(coords)


_E2 = [(0, 0), (15, 20), (0, 20)]

KNOWN_SETS: Dict[str, List[Tuple[int, int]]] = {
    "fig1-left": [(0, -4), (-3, 0), (0, 0), (3, 0), (0, 4)],
    "fig1-right": [(0, 12), (9, 0), (16, 0), (9, 24), (16, 24), (25, 12)],
    "e1": [(0, 0), (0, 25), (12, 16)],
    "e2": _E2,
    "e3": [(0, 0), (7, 24), (16, 12)],
    "m1": _E2 + [(15, 0)],
    "m2": _E2 + [(0, -92), (105, -36)],
    "m3": _E2 + [(0, 40), (0, 56), (0, -16), (-15, 20), (-48, 20), (48, 20)],
    "m4": _E2 + [(0, 40), (-15, 20), (-21, 20), (21, 20), (-48, 20), (48, 20), (-99, 20),
                 (99, 20)],
    "m5": _E2 + [(0, 28), (0, 40), (0, 56), (0, 132), (0, -92), (0, -16), (0, 12), (-15, 20)],
    "min-4": [(0, 0), (3, 4), (0, 4), (3, 0)],
    "min-5": [(0, 0), (3, 4), (0, 4), (0, 8), (-3, 4)],
    "min-6": [(0, 0), (12, 16), (12, 9), (-12, 9), (-12, 16), (0, 25)],
    "min-7": [(0, 0), (6, 8), (0, 8), (0, 16), (-6, 8), (-15, 8), (15, 8)],
    "min-8": [(0, 0), (15, 36), (0, 16), (15, -20), (48, -20), (48, 36), (63, 0), (63, 16)],
    "min-10": [(0, 0), (22, 120), (0, 120), (-27, 120), (160, 120), (182, 0), (182, 120),
               (-209, 120), (209, 120), (391, 120)],
    "min-11": [(0, 0), (5, 12), (0, 12), (0, 24), (-5, 12), (-9, 12), (9, 12), (-16, 12),
               (16, 12), (-35, 12), (35, 12)],
    "min-12": [(0, 0), (35, 120), (35, 84), (-64, -48), (0, 204), (-189, -48), (-64, 252),
               (-253, 0), (-189, 252), (-288, 84), (-288, 120), (-253, 204)],
    "min-13": [(0, 0), (48, 64), (0, 64), (0, 128), (-48, 64), (-120, 64), (120, 64),
               (-252, 64), (252, 64), (-510, 64), (510, 64), (-1023, 64), (1023, 64)],
    "semi-general-5": [(0, 0), (0, -78), (-20, 21), (-20, -99), (-52, -39)],
    "semi-general-5b": [(0, 0), (0, -80), (-45, 28), (-45, -108), (-96, -40)],
    "semi-general-7": [(0, 0), (0, -285), (-180, 240), (-440, -384), (-700, 240), (-880, 0),
                       (-880, -285)],
    "semi-general-9": [(0, 0), (0, -504), (-64, -252), (612, 255), (612, -759), (720, 210),
                       (720, -714), (836, 123), (836, -627)],
    "general-4": [(0, 0), (0, -33), (-16, 30), (44, -33)],
    "general-4b": [(0, 0), (0, -69), (-20, -21), (-92, 0)],
    "general-5": [(0, 0), (0, -72), (-35, 12), (64, -120), (-90, -120)],
    "general-5b": [(0, 0), (0, -153), (-60, 144), (-140, -48), (-176, 57)],
    "general-6": [(0, 0), (0, -828), (-448, -414), (-720, 132), (-1260, -1023), (-1840, -414)],
}
KNOWN_SETS["min-9"] = KNOWN_SETS["m3"]

# The ten smallest maximal triangles by diameter, with their least grid coordinates.
SMALLEST_MAXIMAL_TRIANGLES: List[Tuple[Tuple[int, int, int], List[Tuple[int, int]]]] = [
    ((2066, 1803, 505), [(0, 0), (-336, -377), (384, -2030)]),
    ((2549, 2307, 1492), [(0, 0), (-700, -2451), (1100, -1008)]),
    ((3796, 2787, 2165), [(0, 0), (-387, -2760), (1680, -3404)]),
    ((4083, 2425, 1706), [(0, 0), (-410, -1656), (1273, 2064)]),
    ((4426, 2807, 1745), [(0, 0), (-280, -2793), (376, -4410)]),
    ((4801, 2593, 2210), [(0, 0), (-1488, -1634), (1632, 2015)]),
    ((4920, 4177, 985), [(0, 0), (-473, -864), (4015, 1152)]),
    ((5044, 4443, 2045), [(0, 0), (-1204, -1653), (2156, -4560)]),
    ((5045, 4803, 244), [(0, 0), (-44, -240), (240, 4797)]),
    ((5186, 5163, 745), [(0, 0), (-407, -624), (4030, -3264)]),
]
for _sides, _coords in SMALLEST_MAXIMAL_TRIANGLES:
    KNOWN_SETS[f"triangle-{_sides[0]}"] = _coords


def catalog() -> Dict[str, PointSet]:
    """Named point sets from the literature, for the command line and for checks."""
    return {name: _ps(coords) for name, coords in sorted(KNOWN_SETS.items())}


def known(name: str) -> PointSet:
    try:
        return _ps(KNOWN_SETS[name])
    except KeyError:
        raise DomainError(f"unknown set {name!r}; choose from {', '.join(sorted(KNOWN_SETS))}")
