"""Polynomial arithmetic: canonical forms, gcd, exact division, remainders."""

from fractions import Fraction

import pytest
from util import rng, rand_x_poly

from twistcalc.errors import DivisionByZero, NotDivisible
from twistcalc.fields import QQ, QQ_Q, q
from twistcalc.poly import NEG_INF, UniPoly, poly_div_exact, poly_gcd, poly_rem


def P(*coeffs):
    return UniPoly(QQ, [Fraction(c) for c in coeffs])


def PQ(*coeffs):
    return UniPoly(QQ_Q, list(coeffs))


class TestCanonicalForm:
    def test_trailing_zeros_trimmed(self):
        assert P(1, 2, 0, 0).coeffs == (Fraction(1), Fraction(2))

    def test_zero_degree_is_sentinel(self):
        assert P().degree is NEG_INF
        assert NEG_INF < 0
        assert not (NEG_INF > -100)
        assert P(1).degree == 0

    def test_sentinel_rejects_arithmetic(self):
        with pytest.raises(TypeError):
            NEG_INF + 1

    def test_normalization_idempotent_on_random_inputs(self):
        r = rng(11)
        for _ in range(1000):
            p = rand_x_poly(r, QQ)
            again = UniPoly(QQ, p.coeffs)
            assert again == p
            assert again.coeffs == p.coeffs

    def test_equality_is_structural(self):
        assert P(1, 1) == P(1, 1)
        assert P(1, 1) != P(1, 1, 1)
        assert hash(P(1, 2)) == hash(P(1, 2))


class TestArithmetic:
    def test_ring_identities_random(self):
        r = rng(5)
        for _ in range(200):
            a = rand_x_poly(r, QQ)
            b = rand_x_poly(r, QQ)
            c = rand_x_poly(r, QQ)
            assert (a + b) * c == a * c + b * c
            assert a * b == b * a
            assert (a - a).is_zero()

    def test_compose(self):
        # (x^2 + 1) o (x - 1) = x^2 - 2x + 2
        outer = P(1, 0, 1)
        inner = P(-1, 1)
        assert outer.compose(inner) == P(2, -2, 1)

    def test_power(self):
        assert P(1, 1) ** 2 == P(1, 2, 1)
        assert P(2) ** 0 == P(1)


class TestGcd:
    def test_q_twist_pair(self):
        # gcd((1-q)x, (1-q^2)x^2) is the monic associate x
        a = PQ(0, 1 - q)
        b = PQ(0, 0, 1 - q ** 2)
        assert poly_gcd(a, b) == PQ(0, 1)

    def test_gcd_with_zero_is_monic_associate(self):
        p = P(2, 4)
        assert poly_gcd(p, P()) == P(1, 2)
        assert poly_gcd(P(), P()).is_zero()

    def test_hand_euclid(self):
        # gcd(x^2 - 1, x^2 - 2x + 1) = x - 1
        assert poly_gcd(P(-1, 0, 1), P(1, -2, 1)) == P(-1, 1)

    def test_gcd_divides_and_is_greatest(self):
        r = rng(7)
        for _ in range(100):
            common = rand_x_poly(r, QQ, 3, nonzero=True)
            a = common * rand_x_poly(r, QQ, 3, nonzero=True)
            b = common * rand_x_poly(r, QQ, 3, nonzero=True)
            g = poly_gcd(a, b)
            poly_div_exact(a, g)
            poly_div_exact(b, g)
            # the constructed common factor divides the gcd
            assert poly_rem(g, common).is_zero()


class TestExactDivision:
    def test_q_twist_quotient(self):
        # (1-q^2)x^2 / ((1-q)x) = (1+q)x
        num = PQ(0, 0, 1 - q ** 2)
        den = PQ(0, 1 - q)
        assert poly_div_exact(num, den) == PQ(0, 1 + q)

    def test_divide_by_one(self):
        p = P(3, 0, 2)
        assert poly_div_exact(p, P(1)) == p

    def test_not_divisible_carries_remainder(self):
        with pytest.raises(NotDivisible) as exc:
            poly_div_exact(P(1, 0, 1), P(-1, 1))   # (x^2+1)/(x-1), remainder 2
        assert exc.value.remainder == P(2)

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            poly_div_exact(P(1), P())
        with pytest.raises(DivisionByZero):
            poly_rem(P(1), P())

    def test_product_roundtrip_random(self):
        r = rng(3)
        for _ in range(100):
            a = rand_x_poly(r, QQ, 4)
            b = rand_x_poly(r, QQ, 4, nonzero=True)
            assert poly_div_exact(a * b, b) == a
            assert poly_rem(a * b, b).is_zero()


class TestRemainder:
    def test_constant_mod_q_twist(self):
        assert poly_rem(PQ(1), PQ(0, 1 - q)) == PQ(1)

    def test_multiple_reduces_to_zero(self):
        p = P(1, 2)
        m = P(3, 0, 1)
        assert poly_rem(p * m, m).is_zero()

    def test_long_division(self):
        # x^3 + x + 1 mod x^2 = x + 1
        assert poly_rem(P(1, 1, 0, 1), P(0, 0, 1)) == P(1, 1)

    def test_degree_shrinks(self):
        r = rng(13)
        for _ in range(100):
            a = rand_x_poly(r, QQ, 6)
            m = rand_x_poly(r, QQ, 3, nonzero=True)
            rem = poly_rem(a, m)
            assert rem.is_zero() or rem.degree < m.degree


class TestPrinting:
    def test_descending_powers(self):
        assert str(P(1, -2, 1)) == "x^2 - 2*x + 1"
        assert str(P()) == "0"
        assert str(P(0, 1)) == "x"

    def test_compound_coefficients_parenthesized(self):
        p = PQ(0, 0, 1 - q ** 2)
        assert str(p) == "(-q^2 + 1)*x^2"
