"""The two concrete algebras and maps on them.

An :class:`AlgebraHandle` names either K[x] (dense polynomials in x) or the
matrix algebra M_N, over K = Q or Q(q).  Elements, endomorphisms and
K-linear maps all carry their handle and refuse to mix algebras.

Endomorphisms of K[x] are substitutions x -> u(x) (every unital algebra
endomorphism of K[x] is of this form); endomorphisms of M_N are the
identity or a conjugation A -> U A U^{-1} with U invertible, which by
Skolem-Noether exhausts the automorphisms.
"""

from .errors import (DegreeBoundExceeded, HandleMismatch, NotInvertible,
                     TwistcalcError)
from .fields import QQ, QQ_Q, scalar_str
from .linalg import (mat_add, mat_eye, mat_from_rows, mat_inv, mat_is_zero,
                     mat_mul, mat_neg, mat_scale, mat_sub, mat_zero)
from .poly import UniPoly

DEFAULT_MAX_MATRIX_SIZE = 4

#: default degree bound for monomial tables and "for all f" sweeps
DEFAULT_DEGREE_BOUND = 16


class AlgebraHandle:
    """Identity of one concrete algebra: K[x] or M_N over Q or Q(q)."""

    __slots__ = ("kind", "field", "size")

    def __init__(self, kind, field, size=None, max_size=DEFAULT_MAX_MATRIX_SIZE):
        if kind not in ("poly", "mat"):
            raise ValueError("kind must be 'poly' or 'mat'")
        if kind == "mat":
            if not isinstance(size, int) or size < 1:
                raise ValueError("matrix algebra needs a size N >= 1")
            if size > max_size:
                raise ValueError(
                    f"matrix size {size} exceeds configured maximum {max_size}")
        else:
            size = None
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "size", size)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraHandle is immutable")

    def __eq__(self, other):
        return (isinstance(other, AlgebraHandle) and self.kind == other.kind
                and self.field is other.field and self.size == other.size)

    def __hash__(self):
        return hash((self.kind, self.field.name, self.size))

    def __repr__(self):
        if self.kind == "poly":
            return f"{self.field.name}[x]"
        return f"M_{self.size}({self.field.name})"

    @property
    def is_commutative(self):
        return self.kind == "poly" or self.size == 1

    # -- element constructors ------------------------------------------

    def element(self, payload):
        if self.kind == "poly":
            if not isinstance(payload, UniPoly):
                raise TypeError("poly algebra elements are built from UniPoly")
            if payload.field is not self.field or payload.var != "x":
                raise TypeError("payload must be a polynomial in x over the handle's field")
            return AlgebraElement(self, payload)
        return AlgebraElement(self, mat_from_rows(self.field, payload))

    def zero(self):
        if self.kind == "poly":
            return AlgebraElement(self, UniPoly.zero(self.field))
        return AlgebraElement(self, mat_zero(self.field, self.size))

    def one(self):
        if self.kind == "poly":
            return AlgebraElement(self, UniPoly.one(self.field))
        return AlgebraElement(self, mat_eye(self.field, self.size))

    def scalar(self, c):
        return self.one().scale(c)

    def x(self):
        if self.kind != "poly":
            raise TwistcalcError("x lives in the polynomial algebra")
        return AlgebraElement(self, UniPoly.monomial(self.field, 1))

    def monomial(self, k, c=1):
        if self.kind != "poly":
            raise TwistcalcError("monomials live in the polynomial algebra")
        return AlgebraElement(self, UniPoly.monomial(self.field, k, c))

    def unit(self, i, j):
        """Matrix unit E_ij."""
        if self.kind != "mat":
            raise TwistcalcError("matrix units live in a matrix algebra")
        n = self.size
        rows = [[self.field.one if (r, c) == (i, j) else self.field.zero
                 for c in range(n)] for r in range(n)]
        return AlgebraElement(self, tuple(tuple(r) for r in rows))

    def units(self):
        n = self.size
        return [self.unit(i, j) for i in range(n) for j in range(n)]

    def basis(self, degree_bound=8):
        """Verification basis: monomials up to a degree, or all matrix units."""
        if self.kind == "poly":
            return [self.monomial(k) for k in range(degree_bound + 1)]
        return self.units()

    def dim(self):
        if self.kind == "mat":
            return self.size * self.size
        raise TwistcalcError("K[x] is infinite dimensional")


class AlgebraElement:
    """Element of a registered algebra; payload is a UniPoly or an N x N grid."""

    __slots__ = ("handle", "payload")

    def __init__(self, handle, payload):
        object.__setattr__(self, "handle", handle)
        object.__setattr__(self, "payload", payload)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraElement is immutable")

    def _check(self, other):
        if not isinstance(other, AlgebraElement):
            raise TypeError(f"expected AlgebraElement, got {type(other).__name__}")
        if other.handle != self.handle:
            raise HandleMismatch(f"{self.handle} vs {other.handle}")

    @property
    def poly(self):
        return self.payload

    @property
    def mat(self):
        return self.payload

    def __add__(self, other):
        self._check(other)
        if self.handle.kind == "poly":
            return AlgebraElement(self.handle, self.payload + other.payload)
        return AlgebraElement(self.handle, mat_add(self.payload, other.payload))

    def __sub__(self, other):
        self._check(other)
        if self.handle.kind == "poly":
            return AlgebraElement(self.handle, self.payload - other.payload)
        return AlgebraElement(self.handle, mat_sub(self.payload, other.payload))

    def __neg__(self):
        if self.handle.kind == "poly":
            return AlgebraElement(self.handle, -self.payload)
        return AlgebraElement(self.handle, mat_neg(self.payload))

    def __mul__(self, other):
        self._check(other)
        if self.handle.kind == "poly":
            return AlgebraElement(self.handle, self.payload * other.payload)
        return AlgebraElement(self.handle, mat_mul(self.payload, other.payload))

    def scale(self, c):
        c = self.handle.field.coerce(c)
        if self.handle.kind == "poly":
            return AlgebraElement(self.handle, self.payload.scale(c))
        return AlgebraElement(self.handle, mat_scale(self.payload, c))

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("element powers must be nonnegative integers")
        result = self.handle.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self):
        if self.handle.kind == "poly":
            return self.payload.is_zero()
        return mat_is_zero(self.payload)

    def is_one(self):
        return self == self.handle.one()

    def is_central(self):
        """True iff the element commutes with every algebra generator."""
        if self.handle.is_commutative:
            return True
        return all((self * e - e * self).is_zero() for e in self.handle.units())

    def scalar_part(self):
        """If the element is c * 1 return c, else None."""
        if (self - self.handle.one().scale(self._corner())).is_zero():
            return self._corner()
        return None

    def _corner(self):
        if self.handle.kind == "poly":
            return self.payload.constant_value()
        return self.payload[0][0]

    def vec(self):
        """Row-major coordinate vector of a matrix element."""
        if self.handle.kind != "mat":
            raise TwistcalcError("vec() is for matrix elements")
        return tuple(c for row in self.payload for c in row)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement) or other.handle != self.handle:
            return NotImplemented
        return self.payload == other.payload

    def __hash__(self):
        return hash((self.handle, self.payload))

    def __str__(self):
        if self.handle.kind == "poly":
            return str(self.payload)
        rows = ", ".join(
            "[" + ", ".join(scalar_str(c) for c in row) + "]"
            for row in self.payload)
        return f"[{rows}]"

    def __repr__(self):
        return str(self)


def element_from_vec(handle, v):
    n = handle.size
    rows = tuple(tuple(v[i * n + j] for j in range(n)) for i in range(n))
    return AlgebraElement(handle, rows)


class Endo:
    """Unital algebra endomorphism: substitution on K[x], Id/conjugation on M_N."""

    __slots__ = ("handle", "kind", "image", "u", "u_inv")

    def __init__(self, handle, kind, image=None, u=None):
        object.__setattr__(self, "handle", handle)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "image", image)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "u_inv",
                           mat_inv(handle.field, u) if kind == "conj" else None)

    def __setattr__(self, name, value):
        raise AttributeError("Endo is immutable")

    @classmethod
    def subst(cls, handle, image):
        """The endomorphism of K[x] with x -> image(x)."""
        if handle.kind != "poly":
            raise TwistcalcError("substitution endomorphisms act on K[x]")
        if isinstance(image, AlgebraElement):
            image = image.payload
        if not isinstance(image, UniPoly) or image.var != "x":
            raise TypeError("substitution image must be a polynomial in x")
        return cls(handle, "subst", image=image)

    @classmethod
    def identity(cls, handle):
        return cls(handle, "id")

    @classmethod
    def conj(cls, handle, u):
        """A -> U A U^{-1}; U must be invertible (checked here)."""
        if handle.kind != "mat":
            raise TwistcalcError("conjugation endomorphisms act on M_N")
        if isinstance(u, AlgebraElement):
            u = u.payload
        u = mat_from_rows(handle.field, u)
        try:
            return cls(handle, "conj", u=u)
        except NotInvertible:
            raise NotInvertible("conjugation needs det(U) != 0")

    def apply(self, a):
        if not isinstance(a, AlgebraElement) or a.handle != self.handle:
            raise HandleMismatch("endomorphism applied to a foreign element")
        if self.kind == "id":
            return a
        if self.kind == "subst":
            return AlgebraElement(self.handle, a.payload.compose(self.image))
        return AlgebraElement(
            self.handle, mat_mul(mat_mul(self.u, a.payload), self.u_inv))

    def compose(self, other):
        """self o other: apply ``other`` first, then ``self``."""
        if other.handle != self.handle:
            raise HandleMismatch("composing endomorphisms of different algebras")
        if self.kind == "id":
            return other
        if other.kind == "id":
            return self
        if self.kind == "subst":
            # image of the composite is other's image with self substituted in
            return Endo.subst(self.handle, other.image.compose(self.image))
        return Endo.conj(self.handle, mat_mul(self.u, other.u))

    def inverse(self):
        if self.kind == "id":
            return self
        if self.kind == "conj":
            return Endo.conj(self.handle, self.u_inv)
        if self.image.degree != 1:
            raise NotInvertible(
                "only affine substitutions x -> a*x + b (a != 0) are invertible")
        a = self.image.coeff(1)
        b = self.image.coeff(0)
        field = self.handle.field
        inv_a = field.one / a
        back = UniPoly(field, (-b * inv_a, inv_a))
        return Endo.subst(self.handle, back)

    def is_identity(self):
        if self.kind == "id":
            return True
        if self.kind == "subst":
            return self.image == UniPoly.monomial(self.handle.field, 1)
        return all(self.apply(e) == e for e in self.handle.units())

    def __eq__(self, other):
        if not isinstance(other, Endo) or other.handle != self.handle:
            return NotImplemented
        if self.handle.kind == "poly":
            mine = self.image if self.kind == "subst" else UniPoly.monomial(
                self.handle.field, 1)
            theirs = other.image if other.kind == "subst" else UniPoly.monomial(
                other.handle.field, 1)
            return mine == theirs
        return all(self.apply(e) == other.apply(e) for e in self.handle.units())

    def __hash__(self):
        return hash((self.handle, self.kind))

    def __repr__(self):
        if self.kind == "id":
            return "Id"
        if self.kind == "subst":
            return f"(x -> {self.image})"
        return f"Conj({AlgebraElement(self.handle, self.u)})"


class LinearMapOnAlgebra:
    """K-linear map on an algebra, in one of three concrete shapes.

    * monomial table: images of x^0..x^D; applying beyond D is an error,
      never a silent truncation;
    * dense matrix acting on vectorized M_N;
    * an existing derivation reused as a plain linear map (no bound).
    """

    __slots__ = ("handle", "kind", "images", "degree_bound", "rows", "derivation")

    def __init__(self, handle, kind, images=None, degree_bound=None, rows=None,
                 derivation=None):
        object.__setattr__(self, "handle", handle)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "degree_bound", degree_bound)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "derivation", derivation)

    def __setattr__(self, name, value):
        raise AttributeError("LinearMapOnAlgebra is immutable")

    @classmethod
    def monomial_table(cls, handle, images, degree_bound=DEFAULT_DEGREE_BOUND):
        if handle.kind != "poly":
            raise TwistcalcError("monomial tables act on K[x]")
        images = tuple(images)
        if len(images) != degree_bound + 1:
            raise ValueError("need one image per monomial x^0..x^D")
        for im in images:
            if im.handle != handle:
                raise HandleMismatch("image in a foreign algebra")
        return cls(handle, "table", images=images, degree_bound=degree_bound)

    @classmethod
    def from_function(cls, handle, fn, degree_bound=DEFAULT_DEGREE_BOUND):
        """Tabulate fn on x^0..x^D."""
        return cls.monomial_table(
            handle, [fn(handle.monomial(k)) for k in range(degree_bound + 1)],
            degree_bound)

    @classmethod
    def matrix_map(cls, handle, rows):
        if handle.kind != "mat":
            raise TwistcalcError("matrix linear maps act on M_N")
        d = handle.dim()
        rows = tuple(tuple(handle.field.coerce(c) for c in row) for row in rows)
        if len(rows) != d or any(len(r) != d for r in rows):
            raise ValueError(f"need a dense {d}x{d} coefficient grid")
        return cls(handle, "matrix", rows=rows)

    @classmethod
    def from_derivation(cls, derivation):
        return cls(derivation.handle, "derivation", derivation=derivation)

    def apply(self, a):
        if a.handle != self.handle:
            raise HandleMismatch("linear map applied to a foreign element")
        if self.kind == "table":
            p = a.payload
            if not p.is_zero() and p.degree > self.degree_bound:
                raise DegreeBoundExceeded(
                    f"degree {p.degree} exceeds table bound {self.degree_bound}")
            out = self.handle.zero()
            for k, c in enumerate(p.coeffs):
                if c:
                    out = out + self.images[k].scale(c)
            return out
        if self.kind == "matrix":
            v = a.vec()
            out = [sum((c * x for c, x in zip(row, v) if c and x),
                       start=self.handle.field.zero) for row in self.rows]
            return element_from_vec(self.handle, out)
        return self.derivation.apply(a)
