"""Exact scalar fields: Q (arbitrary-precision rationals) and Q(q).

The parameter q is kept formal, so quantities like (1-q^n)/(1-q) are exact
rational functions, never floats.  Field singletons QQ and QQ_Q expose a
tiny common surface (zero, one, coerce) that UniPoly and the linear algebra
helpers rely on.
"""

from fractions import Fraction

from .errors import DivisionByZero
from .poly import UniPoly

Rational = Fraction


class RatFuncQ:
    """Element of Q(q): a reduced fraction of polynomials in q.

    Canonical form: gcd(num, den) = 1 and den monic; zero is 0/1.  With that
    normalization equality is structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _q_poly(num)
        den = UniPoly.one(QQ, "q") if den is None else _q_poly(den)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if num.is_zero():
            den = UniPoly.one(QQ, "q")
        else:
            from .poly import poly_gcd, poly_div_exact
            g = poly_gcd(num, den)
            if not g.is_one():
                num = poly_div_exact(num, g)
                den = poly_div_exact(den, g)
            lead = den.leading_coefficient()
            if lead != QQ.one:
                num = num.scale(QQ.one / lead)
                den = den.scale(QQ.one / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFuncQ is immutable")

    def is_polynomial(self):
        return self.den.is_one()

    def __add__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RatFuncQ(self.num + other.num, self.den)
        return RatFuncQ(self.num * other.den + other.num * self.den,
                        self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return RatFuncQ(-self.num, self.den)

    def __mul__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return QQ_Q.zero
        return RatFuncQ(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by zero in Q(q)")
        return RatFuncQ(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero in Q(q)")
        return RatFuncQ(self.den, self.num)

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("exponent must be an integer")
        if n < 0:
            return self.inverse() ** (-n)
        return RatFuncQ(self.num ** n, self.den ** n)

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den.is_one():
            return _flat_poly_str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return str(self)


def _flat_poly_str(p):
    s = str(p)
    # a bare constant needs no parentheses even if negative
    return s


def _q_poly(v):
    if isinstance(v, UniPoly):
        if v.var != "q":
            raise TypeError("RatFuncQ parts must be polynomials in q")
        return v
    if isinstance(v, (int, Fraction)):
        return UniPoly.const(QQ, Fraction(v), "q")
    raise TypeError(f"cannot build a q-polynomial from {type(v).__name__}")


def _as_ratfunc(v):
    if isinstance(v, RatFuncQ):
        return v
    if isinstance(v, (int, Fraction, UniPoly)):
        try:
            return RatFuncQ(_q_poly(v))
        except TypeError:
            return NotImplemented
    return NotImplemented


class _RationalField:
    """The field Q, realized by fractions.Fraction."""

    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, v):
        if isinstance(v, Fraction):
            return v
        if isinstance(v, int):
            return Fraction(v)
        raise TypeError(f"cannot coerce {type(v).__name__} into Q")

    def __repr__(self):
        return "Q"


class _RationalFunctionField:
    """The field Q(q)."""

    name = "Q(q)"

    def coerce(self, v):
        if isinstance(v, RatFuncQ):
            return v
        if isinstance(v, (int, Fraction, UniPoly)):
            return RatFuncQ(_q_poly(v))
        raise TypeError(f"cannot coerce {type(v).__name__} into Q(q)")

    def __repr__(self):
        return "Q(q)"


QQ = _RationalField()
QQ_Q = _RationalFunctionField()
# class attributes cannot call the constructor before the class exists
QQ_Q.zero = RatFuncQ(0)
QQ_Q.one = RatFuncQ(1)

#: the generator q of Q(q)
q = RatFuncQ(UniPoly.monomial(QQ, 1, var="q"))


def field_by_name(name):
    if name == "Q":
        return QQ
    if name in ("Q(q)", "Qq", "Q_q"):
        return QQ_Q
    raise ValueError(f"unknown field {name!r} (expected 'Q' or 'Q(q)')")


def scalar_str(s):
    """Canonical text form of a field scalar."""
    if isinstance(s, Fraction):
        return str(s)
    return str(s)
