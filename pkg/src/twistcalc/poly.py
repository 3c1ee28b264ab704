"""Dense univariate polynomials over an exact field.

Coefficients live in a field object (see :mod:`twistcalc.fields`); index i
holds the coefficient of ``var**i`` and trailing zeros are trimmed, so equal
polynomials compare equal structurally.  The degree of the zero polynomial
is the sentinel :data:`NEG_INF`, which orders below every integer but
supports no arithmetic.
"""

from .errors import DivisionByZero, NotDivisible


class _NegInfDegree:
    """Degree of the zero polynomial: comparable, never usable in arithmetic."""

    __slots__ = ()

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("twistcalc.NEG_INF")

    def __repr__(self):
        return "-inf(deg)"


NEG_INF = _NegInfDegree()


class UniPoly:
    """Immutable dense polynomial in one variable over an exact field."""

    __slots__ = ("field", "var", "coeffs")

    def __init__(self, field, coeffs, var="x"):
        cs = [field.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, field, var="x"):
        return cls(field, (), var)

    @classmethod
    def one(cls, field, var="x"):
        return cls(field, (field.one,), var)

    @classmethod
    def const(cls, field, c, var="x"):
        return cls(field, (c,), var)

    @classmethod
    def monomial(cls, field, k, c=1, var="x"):
        return cls(field, (field.zero,) * k + (field.coerce(c),), var)

    # -- queries ------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return len(self.coeffs) == 1 and self.coeffs[0] == self.field.one

    def is_constant(self):
        return len(self.coeffs) <= 1

    def constant_value(self):
        """Coefficient of var**0 (the field zero for the zero polynomial)."""
        return self.coeffs[0] if self.coeffs else self.field.zero

    def leading_coefficient(self):
        if not self.coeffs:
            raise DivisionByZero("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero

    # -- arithmetic ---------------------------------------------------

    def _check(self, other):
        if not isinstance(other, UniPoly):
            raise TypeError(f"expected UniPoly, got {type(other).__name__}")
        if other.field is not self.field or other.var != self.var:
            raise TypeError("polynomials over different fields or variables")

    def __add__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.field,
                       [self.coeff(i) + other.coeff(i) for i in range(n)],
                       self.var)

    def __sub__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.field,
                       [self.coeff(i) - other.coeff(i) for i in range(n)],
                       self.var)

    def __neg__(self):
        return UniPoly(self.field, [-c for c in self.coeffs], self.var)

    def __mul__(self, other):
        self._check(other)
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.field, self.var)
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return UniPoly(self.field, out, self.var)

    def scale(self, c):
        c = self.field.coerce(c)
        return UniPoly(self.field, [a * c for a in self.coeffs], self.var)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = UniPoly.one(self.field, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def compose(self, inner):
        """Substitute ``inner`` for the variable (Horner scheme)."""
        self._check(inner)
        result = UniPoly.zero(self.field, self.var)
        for c in reversed(self.coeffs):
            result = result * inner + UniPoly.const(self.field, c, self.var)
        return result

    def eval_at(self, point):
        """Evaluate at a field element."""
        point = self.field.coerce(point)
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def divmod(self, other):
        self._check(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        if self.degree < other.degree:
            return UniPoly.zero(self.field, self.var), self
        rem = list(self.coeffs)
        dq = len(self.coeffs) - len(other.coeffs)
        quot = [self.field.zero] * (dq + 1)
        lead = other.coeffs[-1]
        for shift in range(dq, -1, -1):
            c = rem[shift + len(other.coeffs) - 1]
            if not c:
                continue
            q = c / lead
            quot[shift] = q
            for j, b in enumerate(other.coeffs):
                rem[shift + j] = rem[shift + j] - q * b
        return (UniPoly(self.field, quot, self.var),
                UniPoly(self.field, rem, self.var))

    def monic(self):
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        if lead == self.field.one:
            return self
        return UniPoly(self.field, [c / lead for c in self.coeffs], self.var)

    def derivative(self):
        return UniPoly(self.field,
                       [self.coeffs[i] * self.field.coerce(i)
                        for i in range(1, len(self.coeffs))],
                       self.var)

    def shift_up(self, k):
        """Multiply by var**k."""
        if self.is_zero():
            return self
        return UniPoly(self.field, (self.field.zero,) * k + self.coeffs, self.var)

    # -- comparisons / hashing ----------------------------------------

    def __eq__(self, other):
        return (isinstance(other, UniPoly) and self.field is other.field
                and self.var == other.var and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __str__(self):
        from .fields import scalar_str
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            cs = scalar_str(c)
            # a coefficient is "simple" when it is a single atom, possibly
            # with one leading minus; anything else is parenthesized whole
            body = cs[1:] if cs.startswith("-") else cs
            simple = body and not any(ch in body for ch in "+-/ ")
            if simple:
                neg = cs.startswith("-")
                mag = body
            else:
                neg = False
                mag = f"({cs})"
            if k == 0:
                term = mag
            else:
                xpow = self.var if k == 1 else f"{self.var}^{k}"
                term = xpow if mag == "1" else f"{mag}*{xpow}"
            if not parts:
                parts.append(f"-{term}" if neg else term)
            else:
                parts.append(f"- {term}" if neg else f"+ {term}")
        return " ".join(parts)

    def __repr__(self):
        return str(self)


def poly_gcd(a, b):
    """Monic greatest common divisor; gcd(0, 0) = 0."""
    a._check(b)
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


def poly_div_exact(a, b):
    """Quotient a/b when the division is exact, else :class:`NotDivisible`."""
    q, r = a.divmod(b)
    if not r.is_zero():
        raise NotDivisible(f"({a}) is not divisible by ({b})", remainder=r)
    return q


def poly_rem(a, m):
    """Canonical representative of a modulo m: the remainder, degree < deg m."""
    return a.divmod(m)[1]
