from fractions import Fraction

import pytest

from maxips import exactmath
from maxips.errors import DomainError
from maxips.exactmath import (
    GaussInt,
    divisors,
    factorize,
    gaussian_prime_factor,
    isqrt,
    lattice_order_key,
    perfect_sqrt,
    rational_sqrt,
    squarefree_part,
    sum_of_two_squares,
)


def test_isqrt_floors_and_rejects_negatives():
    assert isqrt(0) == 0
    assert isqrt(15) == 3
    assert isqrt(16) == 4
    assert isqrt(10**40 + 1) == 10**20
    with pytest.raises(DomainError):
        isqrt(-1)


def test_perfect_sqrt():
    assert perfect_sqrt(625) == 25
    assert perfect_sqrt(624) is None
    assert perfect_sqrt(-4) is None
    assert perfect_sqrt(354004225) == 18815


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(-1, 4)) is None


def test_factorize_matches_known_values():
    assert factorize(672) == [(2, 5), (3, 1), (7, 1)]
    assert factorize(672 * 672) == [(2, 10), (3, 2), (7, 2)]
    with pytest.raises(DomainError):
        factorize(0)


def test_squarefree_part_and_divisors():
    assert squarefree_part(63) == 7
    assert squarefree_part(1) == 1
    assert squarefree_part(4 * 9 * 5) == 5
    assert len(divisors(900)) == 27
    assert divisors(12) == [1, 2, 3, 4, 6, 12]


def test_gaussian_prime_factor():
    assert gaussian_prime_factor(5) == GaussInt(2, 1)
    assert gaussian_prime_factor(13) == GaussInt(3, 2)
    assert gaussian_prime_factor(17) == GaussInt(4, 1)
    for p in (29, 37, 41, 53, 61, 73, 89, 97, 10009):
        assert gaussian_prime_factor(p).norm() == p
    for bad in (3, 7, 15, 21):
        with pytest.raises(DomainError):
            gaussian_prime_factor(bad)


def test_gauss_int_arithmetic():
    w = GaussInt(2, 1)
    assert w * w.conjugate() == GaussInt(5, 0)
    assert w**3 == w * w * w
    assert w.times_i() == GaussInt(-1, 2)
    assert str(GaussInt(3, -2)) == "3-2i"


def test_sum_of_two_squares_of_25():
    pairs = sum_of_two_squares(25)
    assert len(pairs) == 12
    assert set(pairs) == {
        (0, 5), (0, -5), (5, 0), (-5, 0),
        (3, 4), (3, -4), (-3, 4), (-3, -4),
        (4, 3), (4, -3), (-4, 3), (-4, -3),
    }
    assert pairs == sorted(pairs, key=lambda xy: lattice_order_key(*xy))
    assert pairs[0] == (0, -5)


def test_sum_of_two_squares_matches_brute_force():
    limit = 2000
    expected = {n: set() for n in range(limit + 1)}
    r = isqrt(limit)
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            if x * x + y * y <= limit:
                expected[x * x + y * y].add((x, y))
    for n in range(limit + 1):
        assert set(sum_of_two_squares(n)) == expected[n], n


@pytest.mark.slow
def test_gaussian_composition_matches_brute_force_up_to_a_million():
    limit = 10**6
    counts = [0] * (limit + 1)
    r = isqrt(limit)
    for x in range(-r, r + 1):
        ry = isqrt(limit - x * x)
        for y in range(-ry, ry + 1):
            counts[x * x + y * y] += 1
    for n in range(limit + 1):
        pairs = sum_of_two_squares(n, threshold=0)
        assert len(pairs) == counts[n], n
        assert len(set(pairs)) == len(pairs), n
        assert all(x * x + y * y == n for x, y in pairs), n


def test_scan_and_gaussian_composition_agree():
    for n in list(range(1, 600)) + [5**4 * 13**2, 2**7 * 3**2 * 17, 65**2, 451584]:
        scanned = sum_of_two_squares(n, threshold=n + 1)
        composed = sum_of_two_squares(n, threshold=0)
        assert scanned == composed, n


def test_threshold_setting(monkeypatch):
    monkeypatch.setattr(
        exactmath, "_two_squares_threshold", exactmath.DEFAULT_TWO_SQUARES_THRESHOLD
    )
    exactmath.set_two_squares_threshold(10)
    assert exactmath.get_two_squares_threshold() == 10
    assert len(sum_of_two_squares(25)) == 12
    with pytest.raises(DomainError):
        exactmath.set_two_squares_threshold(-1)
