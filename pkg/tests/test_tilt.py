import random
from fractions import Fraction as F

import pytest

from period_lab.padic import INF
from period_lab.tilt import (
    ExponentTooFineError,
    FqElement,
    GaloisElement,
    InexactTeichmullerError,
    TiltExpr,
    TiltMonomial,
    field_modulus,
    generator_condition_check,
    ker_theta_orbit_probe,
    rational_unit_mod,
    theta,
    vflat_monomial,
    vflat_sum,
)


def random_unit(rng, p):
    while True:
        num, den = rng.randrange(1, 60), rng.randrange(1, 25)
        if num % p and den % p:
            return F(rng.choice([-1, 1]) * num, den)


def random_cocycle_value(rng, p):
    den = rng.choice([d for d in range(1, 12) if d % p])
    return F(rng.randrange(-20, 21), den)


def random_galois(rng, p):
    return GaloisElement(random_unit(rng, p), random_cocycle_value(rng, p))


def random_expr(rng, p, allow_p_powers=False):
    terms = []
    for _ in range(rng.randrange(1, 4)):
        a = F(rng.randrange(-6, 7), p ** rng.randrange(0, 2))
        c = F(rng.randrange(0, 6), p ** rng.randrange(0, 2))
        i = rng.randrange(0, 3) if allow_p_powers else 0
        terms.append((rng.choice([-2, -1, 1, 2, 3]), TiltMonomial(a, c, FqElement.one(p)), i))
    return TiltExpr(p, terms)


# -- ring structure ----------------------------------------------------------


def test_omega_times_shifted_generator_telescopes():
    for p in (2, 3, 5):
        w = TiltExpr.omega(p)
        shifted = TiltExpr.epsilon_power(p, F(1, p)) - TiltExpr.one(p)
        assert w * shifted == TiltExpr.epsilon_minus_one(p)


def test_multiplicative_identity():
    p = 5
    x = TiltExpr.omega(p) * TiltExpr.p_flat_power(p, F(2, 5))
    assert x * TiltExpr.one(p) == x


def test_generator_square_has_three_terms():
    sq = TiltExpr.p_flat_minus_p(3) * TiltExpr.p_flat_minus_p(3)
    assert len(sq.terms) == 3
    coeffs = sorted(c for c, _, _ in sq.terms)
    assert coeffs == [-2, 1, 1]


# -- Frobenius ----------------------------------------------------------------


def test_frobenius_of_omega():
    p = 3
    w = TiltExpr.omega(p)
    fw = w.frobenius(1)
    # sum of [eps]^j for j < p
    assert fw == sum(
        (TiltExpr.epsilon_power(p, j) for j in range(1, p)), TiltExpr.one(p)
    )
    assert theta(fw, 3).equals_rational(p)


def test_frobenius_identity_and_inverse():
    p = 5
    x = TiltExpr.omega(p) * TiltExpr.p_flat_power(p, F(3, 5))
    assert x.frobenius(0) == x
    assert x.frobenius(1).frobenius(-1) == x
    assert TiltExpr.epsilon_power(p, 1).frobenius(1) == TiltExpr.epsilon_power(p, p)


# -- Galois action -------------------------------------------------------------


def test_galois_on_generators():
    p = 5
    g = GaloisElement(F(7), F(2))
    assert TiltExpr.epsilon_power(p, 1).galois_act(g) == TiltExpr.epsilon_power(p, 7)
    pf = TiltExpr.p_flat_power(p, 1).galois_act(g)
    expected = TiltExpr(
        p, [(1, TiltMonomial(F(2), F(1), FqElement.one(p)), 0)]
    )
    assert pf == expected
    assert pf.galois_act(GaloisElement.identity()) == pf


def test_galois_group_law():
    rng = random.Random(43)
    for p in (2, 3, 5):
        for _ in range(30):
            g, h = random_galois(rng, p), random_galois(rng, p)
            x = random_expr(rng, p)
            assert x.galois_act(h).galois_act(g) == x.galois_act(g.compose(h))


def test_theta_galois_compatibility_on_epsilon_sums():
    # theta(g x) is theta(x) with the root sent to its chi-power
    rng = random.Random(47)
    N = 3
    for p in (3, 5):
        for _ in range(25):
            terms = []
            for _ in range(rng.randrange(1, 4)):
                a = F(rng.randrange(-8, 9), p ** rng.randrange(0, N))
                terms.append((rng.choice([-1, 1, 2]), TiltMonomial(a, 0, FqElement.one(p)), 0))
            x = TiltExpr(p, terms)
            chi = random_unit(rng, p)
            g = GaloisElement(chi, 0)
            lhs = theta(x.galois_act(g), N)
            rhs = theta(x, N).substitute_root(rational_unit_mod(chi, p, N))
            keys = set(lhs.pieces) | set(rhs.pieces)
            for k in keys:
                a_piece = lhs.pieces.get(k, lhs.context.zero())
                b_piece = rhs.pieces.get(k, rhs.context.zero())
                assert (a_piece - b_piece).is_zero()


# -- v_flat ---------------------------------------------------------------------


def test_vflat_monomial():
    p = 5
    assert vflat_monomial(TiltMonomial(F(1, p), 0, FqElement.one(p))) == 0
    assert vflat_monomial(TiltMonomial(0, 1, FqElement.one(p))) == 1
    u = FqElement(p, 1, (2,))
    assert vflat_monomial(TiltMonomial(0, F(3, p), u)) == F(3, p)


def test_vflat_sum_epsilon_minus_one():
    for p in (2, 3, 5, 7):
        res = vflat_sum(TiltExpr.epsilon_minus_one(p), 3)
        assert res.values[0] is INF  # depth-0 component vanishes
        assert res.stabilized and res.value == F(p, p - 1)


def test_vflat_sum_omega_mod_p():
    for p in (2, 3, 5, 7):
        res = vflat_sum(TiltExpr.omega(p), 3)
        assert res.stabilized and res.value == 1
        assert res.values[1] == 1  # stabilizes from depth 1 on


def test_vflat_single_monomial_reads_off_exponent():
    p = 3
    mono = TiltExpr.p_flat_power(p, F(2, 3))
    res = vflat_sum(mono, 2)
    assert res.values == [F(2, 3), F(2, 3), F(2, 3)]
    assert res.stabilized and res.value == F(2, 3)


def test_vflat_multiplicativity():
    rng = random.Random(53)
    for p in (3, 5):
        for _ in range(20):
            x = TiltExpr.omega(p)
            c = F(rng.randrange(0, 8), p ** rng.randrange(0, 2))
            y = TiltExpr.p_flat_power(p, c)
            vx = vflat_sum(x, 4)
            vy = vflat_sum(y, 4)
            vxy = vflat_sum(x * y, 4)
            if vx.stabilized and vy.stabilized and vxy.stabilized:
                assert vxy.value == vx.value + vy.value


def test_vflat_rejects_p_powers():
    with pytest.raises(ValueError):
        vflat_sum(TiltExpr.p_flat_minus_p(3), 2)


def test_integer_coefficients_divisible_by_p_vanish_mod_p():
    # p * [1] reduces to zero in the residue ring: valuation infinity
    p = 3
    x = TiltExpr(p, [(p, TiltMonomial(0, 0, FqElement.one(p)), 0)])
    res = vflat_sum(x, 2)
    assert res.values == [INF, INF, INF]


# -- theta ------------------------------------------------------------------------


def test_theta_identities():
    for p in (2, 3, 5, 7):
        assert theta(TiltExpr.omega(p), 3).is_zero()
        assert theta(TiltExpr.p_flat_minus_p(p), 3).is_zero()
        assert theta(TiltExpr.epsilon_power(p, 1), 3).equals_rational(1)
        assert theta(TiltExpr.omega(p).frobenius(1), 3).equals_rational(p)


def test_theta_rejects_too_fine_exponents():
    p = 3
    x = TiltExpr.epsilon_power(p, F(1, p**4))
    with pytest.raises(ExponentTooFineError):
        theta(x, 3)
    theta(x, 4)  # fine at the matching level


def test_theta_prime_to_p_denominators_are_exact():
    p, N = 5, 2
    # a p-adic-unit exponent contributes nothing: the evaluation only sees
    # the p-power-denominator part
    assert theta(TiltExpr.epsilon_power(p, F(1, 3)), N).equals_rational(1)
    # mixed denominator 3p: the prime-to-p part is inverted mod p^N
    val = theta(TiltExpr.epsilon_power(p, F(1, 3 * p)), N)
    expected_exponent = p ** (N - 1) * pow(3, -1, p**N) % p**N
    assert val.single_cyclotomic() == val.context.root_power(expected_exponent)


def test_theta_kummer_grading():
    p = 3
    x = TiltExpr.p_flat_power(p, F(1, 3)) + TiltExpr.p_flat_power(p, F(4, 3))
    val = theta(x, 2)
    assert not val.is_zero()
    keys = sorted(k for k, v in val.pieces.items() if not v.is_zero())
    assert [k[0] for k in keys] == [F(1, 3)]
    # the two terms share the fractional class and merge: 1 + p times z^0
    piece = val.pieces[(F(1, 3), None)]
    assert piece == val.context.rational(1 + p)


def test_theta_inexact_teichmuller_flagged():
    p = 5
    u = FqElement(p, 1, (2,))  # Teichmueller of 2: a 4th root of unity
    x = TiltExpr.teichmuller(u)
    val = theta(x, 1)
    assert not val.exact
    with pytest.raises(InexactTeichmullerError):
        val.is_zero()
    # minus one is exact for odd p
    y = TiltExpr.teichmuller(FqElement(p, 1, (p - 1,))) + TiltExpr.one(p)
    assert theta(y, 1).is_zero()


# -- kernel orbits and the generator criterion ------------------------------------


def test_kernel_orbit_probe():
    for p in (2, 3, 5):
        assert ker_theta_orbit_probe(TiltExpr.epsilon_minus_one(p), 4, 4) == [True] * 5
        assert ker_theta_orbit_probe(TiltExpr.omega(p), 4, 1) == [True, False]
    assert ker_theta_orbit_probe(TiltExpr.zero(3), 3, 3) == [True] * 4


def test_generator_condition():
    for p in (2, 3, 5):
        assert generator_condition_check(TiltExpr.p_flat_minus_p(p), 3, 3).passes
        assert generator_condition_check(TiltExpr.omega(p), 3, 3).passes
        rep = generator_condition_check(TiltExpr.epsilon_minus_one(p), 3, 3)
        assert rep.theta_is_zero and rep.vflat_is_one is False
        assert rep.passes is False


def test_generator_pass_implies_kernel_membership():
    for p in (2, 3, 5):
        for expr in (TiltExpr.p_flat_minus_p(p), TiltExpr.omega(p)):
            if generator_condition_check(expr, 3, 3).passes:
                assert ker_theta_orbit_probe(expr, 3, 0) == [True]


# -- finite fields -----------------------------------------------------------------


def test_field_modulus_is_cached_and_irreducible():
    assert field_modulus(2, 1) == (0, 1)
    m = field_modulus(2, 3)
    assert len(m) == 4 and m[-1] == 1
    assert field_modulus(3, 2) == field_modulus(3, 2)


def test_fq_arithmetic():
    u = FqElement(3, 2, (1, 1))
    v = u * u
    assert not v.is_zero()
    assert u.frobenius(2) == u  # Frobenius has order f
    assert u.frobenius(1).frobenius(-1) == u
    assert FqElement.one(7).is_one()
    w = FqElement(7, 1, (3,))
    assert w.power(6).is_one()  # group order p - 1


def test_galois_frobenius_part_acts_on_teichmuller():
    u = FqElement(3, 2, (1, 1))
    x = TiltExpr.teichmuller(u)
    g = GaloisElement(1, 0, frob=1)
    assert x.galois_act(g) == TiltExpr.teichmuller(u.frobenius(1))


# -- serialization ------------------------------------------------------------------


def test_tilt_expr_json_roundtrip():
    p = 3
    x = TiltExpr.omega(p) * TiltExpr.p_flat_power(p, F(2, 3)) - TiltExpr.p_scalar(p, 2)
    assert TiltExpr.from_json(p, x.to_json()) == x


def test_monomial_validation():
    with pytest.raises(ValueError):
        TiltMonomial(0, F(1, 6), FqElement.one(3))  # denominator not a 3-power
    with pytest.raises(ValueError):
        TiltMonomial(0, -1, FqElement.one(3))
    with pytest.raises(ValueError):
        TiltMonomial(0, 0, FqElement(3, 1, (0,)))  # zero Teichmueller part
