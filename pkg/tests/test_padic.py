import random
from fractions import Fraction as F

import pytest

from period_lab.padic import (
    INF,
    PadicScalar,
    PolyValuationProfile,
    Prime,
    factorial_valuation,
    nu,
    poly_newton_polygon,
    valuation,
)


def brute_factorial_valuation(i, p):
    # count factors of p in i! one factor at a time
    count = 0
    for j in range(2, i + 1):
        while j % p == 0:
            j //= p
            count += 1
    return count


def legendre_sum(n, p):
    # independent closed form: sum of floor(n / p^k)
    total, q = 0, p
    while q <= n:
        total += n // q
        q *= p
    return total


def brute_nu(i, p):
    if i >= 0:
        return 0
    n = 0
    while legendre_sum(n, p) < -i:
        n += 1
    return n


def test_prime_validation():
    Prime(2)
    Prime(97)
    with pytest.raises(ValueError):
        Prime(1)
    with pytest.raises(ValueError):
        Prime(91)  # 7 * 13


def test_valuation_examples():
    assert valuation(PadicScalar(12, 2)) == 2
    assert valuation(PadicScalar(0, 5)) is INF
    assert valuation(PadicScalar(F(10, 9), 3)) == -2


def test_valuation_arithmetic_properties():
    rng = random.Random(1)
    for p in (2, 3, 5):
        for _ in range(200):
            x = PadicScalar(F(rng.randrange(-50, 51) or 1, rng.randrange(1, 40)), p)
            y = PadicScalar(F(rng.randrange(-50, 51) or 1, rng.randrange(1, 40)), p)
            assert valuation(x * y) == valuation(x) + valuation(y)
            s = x + y
            vm = min(valuation(x), valuation(y))
            assert valuation(s) >= vm
            if valuation(x) != valuation(y):
                assert valuation(s) == vm


def test_scalar_serialization_roundtrip():
    x = PadicScalar(F(-22, 7), 3)
    assert x.serialize() == "-22/7"
    assert PadicScalar.parse(x.serialize(), 3) == x
    assert PadicScalar(5, 2).serialize() == "5"


def test_factorial_valuation_examples():
    assert factorial_valuation(10, 3) == 4
    assert factorial_valuation(0, 7) == 0
    for p in (2, 3, 5, 7):
        assert factorial_valuation(p, p) == 1


def test_factorial_valuation_against_brute_force():
    for p in (2, 3, 5, 7):
        for i in range(0, 2001, 7):
            assert factorial_valuation(i, p) == brute_factorial_valuation(i, p)
        # and densely on a small prefix
        for i in range(120):
            assert factorial_valuation(i, p) == brute_factorial_valuation(i, p)


def test_nu_examples():
    assert nu(3, 5) == 0
    assert nu(-1, 2) == 2
    assert nu(-2, 3) == 6


def test_nu_against_scan():
    for p in (2, 3, 5):
        for i in range(0, -60, -1):
            assert nu(i, p) == brute_nu(i, p)


def test_nu_bracket():
    # -i (p-1) <= nu(i), with overshoot at most logarithmic
    import math

    for p in (2, 3, 5):
        for i in range(-1, -10_001, -97):
            n = nu(i, p)
            lower = -i * (p - 1)
            assert lower <= n
            slack = (p - 1) * (math.ceil(math.log(-i * (p - 1) + 1, p)) + 1)
            assert n <= lower + slack, (p, i, n)


def test_poly_newton_polygon_examples():
    prof = PolyValuationProfile(2, [(0, 3), (1, 1), (2, 0)])
    assert poly_newton_polygon(prof) == [(F(-2), 1), (F(-1), 1)]
    assert poly_newton_polygon(PolyValuationProfile(1, [(0, 0), (1, 0)])) == [
        (F(0), 1)
    ]


def test_poly_newton_polygon_normal_form_slope():
    # char poly of the two-by-two normal form with v(b) < 0 has a slope
    # strictly below r (an eigenvalue of small valuation)
    r, s, vb = 1, 3, -2
    prof = PolyValuationProfile(2, [(0, r + s), (1, r + vb), (2, 0)])
    slopes = [slope for slope, _ in poly_newton_polygon(prof)]
    assert min(-slope for slope in slopes) < r


def test_poly_newton_polygon_monomial_shift_invariance():
    rng = random.Random(5)
    for _ in range(50):
        deg = rng.randrange(1, 6)
        vals = [(i, F(rng.randrange(0, 12))) for i in range(deg + 1)]
        base = poly_newton_polygon(PolyValuationProfile(deg, vals))
        shift = rng.randrange(1, 4)
        shifted = poly_newton_polygon(
            PolyValuationProfile(deg + shift, [(i + shift, v) for i, v in vals])
        )
        assert base == shifted


def test_poly_profile_rejects_bad_input():
    with pytest.raises(ValueError):
        PolyValuationProfile(2, [])
    with pytest.raises(ValueError):
        PolyValuationProfile(2, [(0, 1), (1, 0)])  # missing finite leading
    with pytest.raises(ValueError):
        PolyValuationProfile(1, [(0, 0), (0, 1), (1, 0)])  # duplicate index
