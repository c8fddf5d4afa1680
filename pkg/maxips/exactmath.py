"""Exact integer and Gaussian-integer kernels.

Every distance and area test in maxips reduces to these functions, so nothing here ever
touches floating point. Rationals are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, List, Optional, Tuple, Union

from sympy import divisors as _sympy_divisors
from sympy import factorint, isprime

from .errors import DomainError

Rat = Fraction
Number = Union[int, Fraction]

DEFAULT_TWO_SQUARES_THRESHOLD = 10**8

_two_squares_threshold = DEFAULT_TWO_SQUARES_THRESHOLD


def set_two_squares_threshold(value: int) -> None:
    """Switch point between the brute-force scan and Gaussian composition."""
    global _two_squares_threshold
    if value < 0:
        raise DomainError(f"two-squares threshold must be non-negative, got {value}")
    _two_squares_threshold = value


def get_two_squares_threshold() -> int:
    return _two_squares_threshold


def lattice_order_key(x: Number, y: Number) -> Tuple[Any, bool, Any, bool]:
    """Sort key of the total order on the plane: |x|, negative x first, |y|, negative y first."""
    return (abs(x), x > 0, abs(y), y > 0)


def isqrt(n: int) -> int:
    """Floor of the square root of ``n``."""
    if n < 0:
        raise DomainError(f"isqrt of negative number {n}")
    return math.isqrt(n)


def perfect_sqrt(n: int) -> Optional[int]:
    """Return ``s`` with ``s*s == n`` or None."""
    if n < 0:
        return None
    s = math.isqrt(n)
    return s if s * s == n else None


def is_perfect_square(n: int) -> bool:
    return perfect_sqrt(n) is not None


def rational_sqrt(q: Fraction) -> Optional[Fraction]:
    """Exact square root of a non-negative rational, or None when it is irrational."""
    if q < 0:
        return None
    num = perfect_sqrt(q.numerator)
    if num is None:
        return None
    den = perfect_sqrt(q.denominator)
    if den is None:
        return None
    return Fraction(num, den)


def factorize(n: int) -> List[Tuple[int, int]]:
    """Prime factorization of ``n`` as ``(prime, exponent)`` pairs, primes ascending."""
    if n < 1:
        raise DomainError(f"factorize needs n >= 1, got {n}")
    return sorted(factorint(n).items())


def squarefree_part(n: int) -> int:
    if n == 0:
        raise DomainError("squarefree part of 0 is undefined")
    k = 1
    for p, e in factorize(abs(n)):
        if e % 2:
            k *= p
    return k


def divisors(n: int) -> List[int]:
    if n < 1:
        raise DomainError(f"divisors needs n >= 1, got {n}")
    return [int(d) for d in _sympy_divisors(n)]


@dataclass(frozen=True)
class GaussInt:
    """A Gaussian integer ``re + im*i``."""

    re: int
    im: int

    def __mul__(self, other: "GaussInt") -> "GaussInt":
        return GaussInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __pow__(self, exponent: int) -> "GaussInt":
        if exponent < 0:
            raise DomainError("negative powers leave the Gaussian integers")
        result = GaussInt(1, 0)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> "GaussInt":
        return GaussInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def times_i(self) -> "GaussInt":
        return GaussInt(-self.im, self.re)

    def __str__(self) -> str:
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


GAUSS_ONE = GaussInt(1, 0)
_UNITS = (GaussInt(1, 0), GaussInt(0, 1), GaussInt(-1, 0), GaussInt(0, -1))


def gaussian_prime_factor(p: int) -> GaussInt:
    """Split a prime ``p = 1 (mod 4)`` as ``a^2 + b^2`` with ``a >= b >= 1``.

    A square root of -1 modulo ``p`` comes from ``x^((p-1)/4)`` for the first small ``x``
    that works; the Euclidean remainder sequence of ``(p, r)`` then stops at ``b`` with
    ``p - b^2`` a perfect square.
    """
    if p % 4 != 1 or not isprime(p):
        raise DomainError(f"{p} is not a prime congruent to 1 mod 4")

    r = 0
    for x in itertools.count(2):
        r = pow(x, (p - 1) // 4, p)
        if r * r % p == p - 1:
            break

    a, b = p, r
    while b * b > p:
        a, b = b, a % b
    c = perfect_sqrt(p - b * b)
    if c is None:  # pragma: no cover - impossible for primes 1 mod 4
        raise DomainError(f"reduction failed for {p}")
    hi, lo = max(b, c), min(b, c)
    return GaussInt(hi, lo)


def _scan_two_squares(n: int) -> List[Tuple[int, int]]:
    pairs = []
    for x in range(isqrt(n) + 1):
        y = perfect_sqrt(n - x * x)
        if y is not None:
            pairs.append((x, y))
    return pairs


def _compose_two_squares(n: int) -> List[Tuple[int, int]]:
    base = GAUSS_ONE
    choices: List[List[GaussInt]] = []
    for p, e in factorize(n):
        if p == 2:
            base = base * GaussInt(1, 1) ** e
        elif p % 4 == 3:
            if e % 2:
                return []
            base = base * GaussInt(p**(e // 2), 0)
        else:
            w = gaussian_prime_factor(p)
            wc = w.conjugate()
            choices.append([w**k * wc ** (e - k) for k in range(e + 1)])

    found = set()
    for combo in itertools.product(*choices):
        z = base
        for factor in combo:
            z = z * factor
        for unit in _UNITS:
            u = z * unit
            found.add((u.re, u.im))
    return [(x, y) for x, y in found if x >= 0 and y >= 0]


@lru_cache(maxsize=4096)
def _two_squares_cached(n: int, threshold: int) -> Tuple[Tuple[int, int], ...]:
    if n == 0:
        return ((0, 0),)
    quadrant = _scan_two_squares(n) if n < threshold else _compose_two_squares(n)
    full = set()
    for x, y in quadrant:
        for sx in (1, -1):
            for sy in (1, -1):
                full.add((sx * x, sy * y))
    return tuple(sorted(full, key=lambda xy: lattice_order_key(*xy)))


def sum_of_two_squares(n: int, threshold: Optional[int] = None) -> List[Tuple[int, int]]:
    """All integer pairs ``(x, y)`` with ``x^2 + y^2 = n`` in lattice order."""
    if n < 0:
        raise DomainError(f"sum of two squares needs n >= 0, got {n}")
    limit = _two_squares_threshold if threshold is None else threshold
    return list(_two_squares_cached(n, limit))
