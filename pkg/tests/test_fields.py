"""The exact scalar fields Q and Q(q)."""

from fractions import Fraction

import pytest
from util import rng, rand_ratfunc

from twistcalc.errors import DivisionByZero
from twistcalc.fields import QQ, QQ_Q, RatFuncQ, q
from twistcalc.poly import UniPoly


class TestCanonicalForm:
    def test_reduction(self):
        # (1 - q^2)/(1 - q) reduces to q + 1
        val = (1 - q ** 2) / (1 - q)
        assert val == 1 + q
        assert val.den.is_one()

    def test_monic_denominator(self):
        num = UniPoly(QQ, [Fraction(1)], "q")
        den = UniPoly(QQ, [Fraction(2), Fraction(2)], "q")   # 2q + 2
        val = RatFuncQ(num, den)
        assert val.den.leading_coefficient() == 1
        assert val == RatFuncQ(UniPoly(QQ, [Fraction(1, 2)], "q"),
                               UniPoly(QQ, [1, 1], "q"))

    def test_zero_normalizes_denominator(self):
        val = RatFuncQ(UniPoly(QQ, [], "q"), UniPoly(QQ, [3, 1], "q"))
        assert val.is_zero()
        assert val.den.is_one()

    def test_zero_denominator_rejected(self):
        with pytest.raises(DivisionByZero):
            RatFuncQ(UniPoly(QQ, [1], "q"), UniPoly(QQ, [], "q"))

    def test_canonicalization_idempotent_random(self):
        r = rng(2)
        for _ in range(1000):
            v = rand_ratfunc(r, max_degree=3)
            again = RatFuncQ(v.num, v.den)
            assert again.num == v.num and again.den == v.den


class TestFieldAxioms:
    def test_random_identities(self):
        r = rng(4)
        for _ in range(300):
            a = rand_ratfunc(r)
            b = rand_ratfunc(r)
            c = rand_ratfunc(r)
            assert (a + b) * c == a * c + b * c
            assert a * b == b * a
            assert a + (b + c) == (a + b) + c
            assert (a - a).is_zero()

    def test_multiplicative_inverse(self):
        r = rng(6)
        for _ in range(200):
            a = rand_ratfunc(r, nonzero=True)
            assert (a * a.inverse()).is_one()
            assert (a / a).is_one()

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            q / QQ_Q.zero
        with pytest.raises(DivisionByZero):
            QQ_Q.zero.inverse()

    def test_integer_interop(self):
        assert 1 - q == -(q - 1)
        assert 2 * q == q + q
        assert (q + 1) - 1 == q
        assert 6 / (2 + QQ_Q.zero + 1) == 2

    def test_powers(self):
        assert q ** 0 == QQ_Q.one
        assert q ** 3 == q * q * q
        assert q ** -2 == (q * q).inverse()


class TestCoercion:
    def test_qq_coerce(self):
        assert QQ.coerce(3) == Fraction(3)
        with pytest.raises(TypeError):
            QQ.coerce(0.5)

    def test_qq_q_coerce(self):
        assert QQ_Q.coerce(Fraction(1, 2)) == RatFuncQ(Fraction(1, 2))
        with pytest.raises(TypeError):
            QQ_Q.coerce(0.5)

    def test_hashable(self):
        assert len({q, q, 1 + q}) == 2


class TestPrinting:
    def test_polynomial_case(self):
        assert str(1 + q) == "q + 1"

    def test_fraction_case(self):
        val = 1 / (1 - q)
        assert str(val) == "(-1)/(q - 1)"
        # reparse sanity: numerator and denominator carry exact content
        assert val * (1 - q) == QQ_Q.one
