"""Twisted derivations: construction, verification and classification.

A twisted derivation for an endomorphism pair (sigma, tau) is a K-linear
map X with X(fg) = sigma(f)X(g) + X(f)tau(g).  It is *symmetric* when the
rule with sigma and tau exchanged holds as well, *inner* when
X(f) = m0 tau(f) - sigma(f) m0 for a fixed m0.  On K[x] a derivation is
completely determined by X(x); on M_N we also allow a general linear map,
validated against the Leibniz rule at construction.
"""

from dataclasses import dataclass

from .algebra import AlgebraElement, LinearMapOnAlgebra
from .errors import (HandleMismatch, NotADerivation, NotInner, NotSymmetric,
                     SigmaEqualsTau, TwistcalcError)
from .linalg import mat_det, nullspace_basis, rank, solve_particular
from .poly import poly_div_exact, poly_rem


class TwistPair:
    """An ordered pair of endomorphisms of one algebra, with delta = tau - sigma."""

    __slots__ = ("sigma", "tau")

    def __init__(self, sigma, tau):
        if sigma.handle != tau.handle:
            raise HandleMismatch("twist pair endomorphisms live on different algebras")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "tau", tau)

    def __setattr__(self, name, value):
        raise AttributeError("TwistPair is immutable")

    @property
    def handle(self):
        return self.sigma.handle

    def delta(self, a):
        """tau(a) - sigma(a)."""
        return self.tau.apply(a) - self.sigma.apply(a)

    def delta_x(self):
        return self.delta(self.handle.x())

    def is_trivial(self):
        return self.sigma == self.tau

    def swapped(self):
        return TwistPair(self.tau, self.sigma)

    def __eq__(self, other):
        return (isinstance(other, TwistPair) and self.sigma == other.sigma
                and self.tau == other.tau)

    def __hash__(self):
        return hash((self.handle,))

    def __repr__(self):
        return f"(sigma={self.sigma}, tau={self.tau})"


class TwistedDerivation:
    """A (sigma, tau)-derivation of K[x] or M_N."""

    __slots__ = ("pair", "kind", "f0", "m0", "lmap", "_images")

    def __init__(self, pair, kind, f0=None, m0=None, lmap=None):
        object.__setattr__(self, "pair", pair)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "f0", f0)
        object.__setattr__(self, "m0", m0)
        object.__setattr__(self, "lmap", lmap)
        object.__setattr__(self, "_images", {})

    def __setattr__(self, name, value):
        raise AttributeError("TwistedDerivation is immutable")

    @property
    def handle(self):
        return self.pair.handle

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_generator_image(cls, pair, f0):
        """The derivation on K[x] determined by X(x) = f0 (twisted Leibniz
        recursion fixes everything else)."""
        if pair.handle.kind != "poly":
            raise TwistcalcError("generator-image derivations live on K[x]")
        if not isinstance(f0, AlgebraElement):
            f0 = pair.handle.element(f0)
        if f0.handle != pair.handle:
            raise HandleMismatch("X(x) must live in the same algebra")
        return cls(pair, "poly_gen", f0=f0)

    @classmethod
    def inner(cls, pair, m0):
        """X(f) = m0 tau(f) - sigma(f) m0."""
        if m0.handle != pair.handle:
            raise HandleMismatch("m0 must live in the same algebra")
        return cls(pair, "inner", m0=m0)

    @classmethod
    def symmetric_inner(cls, pair, m0):
        """Inner derivation from an m0 commuting with both twists' images.

        The commutation [m0, sigma(f)] = [m0, tau(f)] = 0 (checked on the
        generating matrix units / automatic on K[x]) makes the result
        symmetric.
        """
        x = cls.inner(pair, m0)
        if pair.handle.kind == "mat":
            for e in pair.handle.units():
                for im in (pair.sigma.apply(e), pair.tau.apply(e)):
                    if not (m0 * im - im * m0).is_zero():
                        raise NotSymmetric(
                            "m0 does not commute with the twist images",
                            counterexample=e)
        return x

    @classmethod
    def from_linear_map(cls, pair, lmap):
        """Wrap a general linear map on M_N; rejects maps that break the
        twisted Leibniz rule on matrix-unit pairs."""
        if pair.handle.kind != "mat":
            raise TwistcalcError("general linear derivations are for M_N")
        if isinstance(lmap, TwistedDerivation):
            lmap = LinearMapOnAlgebra.from_derivation(lmap)
        cand = cls(pair, "linear", lmap=lmap)
        ok, witness = verify_twisted_leibniz(cand, "sigma_tau")
        if not ok:
            raise NotADerivation("linear map violates the twisted Leibniz rule",
                                 counterexample=witness)
        one = pair.handle.one()
        if not cand.apply(one).is_zero():
            raise NotADerivation("derivations must kill 1", counterexample=one)
        return cand

    @classmethod
    def twist_difference(cls, pair):
        """X = tau - sigma, the canonical symmetric inner derivation (m0 = 1)."""
        return cls.inner(pair, pair.handle.one())

    # -- evaluation -------------------------------------------------------

    def _image_of_power(self, n):
        cached = self._images.get(n)
        if cached is not None:
            return cached
        if n == 0:
            out = self.handle.zero()
        elif n == 1:
            out = self.f0
        else:
            sx = self.pair.sigma.apply(self.handle.x())
            tprev = self.pair.tau.apply(self.handle.monomial(n - 1))
            out = sx * self._image_of_power(n - 1) + self.f0 * tprev
        self._images[n] = out
        return out

    def apply(self, a):
        if not isinstance(a, AlgebraElement) or a.handle != self.handle:
            raise HandleMismatch("derivation applied to a foreign element")
        if self.kind == "inner":
            return self.m0 * self.pair.tau.apply(a) - self.pair.sigma.apply(a) * self.m0
        if self.kind == "linear":
            return self.lmap.apply(a)
        out = self.handle.zero()
        for k, c in enumerate(a.payload.coeffs):
            if c:
                out = out + self._image_of_power(k).scale(c)
        return out

    def generator_image(self):
        """X(x) for polynomial-algebra derivations."""
        if self.handle.kind != "poly":
            raise TwistcalcError("generator image only exists on K[x]")
        return self.apply(self.handle.x())

    def scale(self, c):
        if self.kind == "poly_gen":
            return TwistedDerivation.from_generator_image(self.pair, self.f0.scale(c))
        if self.kind == "inner":
            return TwistedDerivation.inner(self.pair, self.m0.scale(c))
        raise TwistcalcError("scaling is supported for generator/inner rules")

    def is_zero_map(self, bound=8):
        return all(self.apply(b).is_zero() for b in self.handle.basis(bound))

    def __repr__(self):
        if self.kind == "poly_gen":
            return f"X[x -> {self.f0}]"
        if self.kind == "inner":
            return f"X[inner m0 = {self.m0}]"
        return "X[linear map]"


# -- verification sweeps ------------------------------------------------


def _leibniz_witness(pair, apply_fn, style, basis):
    """First (f, g) in basis x basis violating the chosen Leibniz rule."""
    first, second = (pair.sigma, pair.tau) if style == "sigma_tau" else (pair.tau, pair.sigma)
    images = {b: apply_fn(b) for b in basis}
    for f in basis:
        for g in basis:
            lhs = apply_fn(f * g)
            rhs = first.apply(f) * images[g] + images[f] * second.apply(g)
            if not (lhs - rhs).is_zero():
                return (f, g)
    return None


def verify_twisted_leibniz(x, style="sigma_tau", bound=8):
    """Exhaustive Leibniz check over monomial pairs (degrees <= bound) or all
    matrix-unit pairs.  Returns (ok, counterexample_or_None)."""
    if style not in ("sigma_tau", "tau_sigma"):
        raise ValueError("style must be 'sigma_tau' or 'tau_sigma'")
    basis = x.handle.basis(bound)
    witness = _leibniz_witness(x.pair, x.apply, style, basis)
    return witness is None, witness


def is_symmetric(x, bound=8):
    """Both Leibniz styles hold on the verification basis."""
    ok1, _ = verify_twisted_leibniz(x, "sigma_tau", bound)
    if not ok1:
        return False
    ok2, _ = verify_twisted_leibniz(x, "tau_sigma", bound)
    return ok2


# -- regularity ----------------------------------------------------------


VERDICT_STRONGLY_REGULAR = "strongly_regular"
VERDICT_REGULAR_NOT_STRONG = "regular_not_strong"
VERDICT_NOT_REGULAR = "not_regular"
VERDICT_UNKNOWN = "unknown"


@dataclass(frozen=True)
class RegularityReport:
    verdict: str
    witness: object = None
    search_bound: int = None

    @property
    def is_regular(self):
        return self.verdict in (VERDICT_STRONGLY_REGULAR, VERDICT_REGULAR_NOT_STRONG)

    @property
    def is_strongly_regular(self):
        return self.verdict == VERDICT_STRONGLY_REGULAR


def classify_regularity(pair, search_bound=32, seed=0):
    """Decide (strong) regularity of a twist pair.

    On K[x] the decision is exact for every substitution pair: delta(x)
    divides delta(f) for all f, so some delta(f) is invertible iff delta(x)
    is a nonzero constant, and K[x] has no zero divisors so sigma != tau
    already gives regularity.  On M_N a non-zero-divisor is invertible, so
    regular and strongly regular coincide; we search for a witness with
    det(delta(f)) != 0 and report unknown if the seeded search fails.
    """
    handle = pair.handle
    if pair.is_trivial():
        return RegularityReport(VERDICT_NOT_REGULAR)
    if handle.kind == "poly":
        x = handle.x()
        dx = pair.delta(x)
        if dx.payload.is_constant() and not dx.is_zero():
            return RegularityReport(VERDICT_STRONGLY_REGULAR, witness=x)
        if dx.is_zero():
            # substitutions agree on x, hence everywhere
            return RegularityReport(VERDICT_NOT_REGULAR)
        return RegularityReport(VERDICT_REGULAR_NOT_STRONG, witness=x)
    field = handle.field
    for f in _matrix_witness_candidates(handle, search_bound, seed):
        if mat_det(field, pair.delta(f).payload):
            return RegularityReport(VERDICT_STRONGLY_REGULAR, witness=f)
    return RegularityReport(VERDICT_UNKNOWN, search_bound=search_bound)


def _matrix_witness_candidates(handle, search_bound, seed):
    import random
    units = handle.units()
    for u in units:
        yield u
    # sums of distinct units reach witnesses that single units miss
    for i in range(len(units)):
        for j in range(i + 1, len(units)):
            yield units[i] + units[j]
    rng = random.Random(seed)
    n = handle.size
    for _ in range(search_bound):
        rows = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        yield handle.element(rows)


# -- the exchange identity X(f) delta(g) = delta(f) X(g) -----------------


def _delta_exchange_witness(x, bound=8):
    basis = x.handle.basis(bound)
    images = {b: x.apply(b) for b in basis}
    deltas = {b: x.pair.delta(b) for b in basis}
    for f in basis:
        for g in basis:
            if not (images[f] * deltas[g] - deltas[f] * images[g]).is_zero():
                return (f, g)
    return None


def delta_exchange_check(x, bound=8):
    """Verify X(f) delta(g) = delta(f) X(g) over the verification basis.

    Only meaningful for symmetric derivations; raises NotSymmetric when the
    precondition fails."""
    if not is_symmetric(x, bound):
        raise NotSymmetric("the exchange identity presumes a symmetric derivation")
    witness = _delta_exchange_witness(x, bound)
    return witness is None, witness


# -- inner decomposition --------------------------------------------------


@dataclass(frozen=True)
class InnerDecomposition:
    m0: AlgebraElement
    solution_space_dim: int
    commutes_with_twists: bool


def _matrix_inner_rows(pair, with_commutation):
    """Linear system rows for m0 (unknowns = vec(m0), row-major)."""
    handle = pair.handle
    n = handle.size
    d = n * n
    rows = []
    slots = []
    for e in handle.units():
        b = pair.tau.apply(e).payload
        c = pair.sigma.apply(e).payload
        for i in range(n):
            for j in range(n):
                row = [handle.field.zero] * d
                for t in range(n):
                    row[i * n + t] += b[t][j]       # (m0 B)_{ij}
                    row[t * n + j] -= c[i][t]       # (C m0)_{ij}
                rows.append(row)
                slots.append((e, i, j))
        if with_commutation:
            for twisted in (c, b):
                for i in range(n):
                    for j in range(n):
                        row = [handle.field.zero] * d
                        for t in range(n):
                            row[i * n + t] += twisted[t][j]
                            row[t * n + j] -= twisted[i][t]
                        rows.append(row)
                        slots.append(None)
    return rows, slots


def inner_decompose(x, bound=8, regularity=None):
    """Find m0 with X(f) = m0 tau(f) - sigma(f) m0, or raise NotInner.

    On K[x] innerness is equivalent to delta(x) | X(x) and m0 is the exact
    quotient.  On M_N we solve the linear system over the field exactly;
    under the strongly-regular + symmetric hypotheses the commutation
    equations are added and the solution is certified unique (solution
    space of dimension zero).
    """
    handle = x.handle
    pair = x.pair
    if handle.kind == "poly":
        fx = x.generator_image()
        if pair.is_trivial():
            if fx.is_zero():
                return handle.zero()
            raise NotInner("sigma = tau admits only the zero inner derivation")
        dx = pair.delta_x()
        if not poly_rem(fx.payload, dx.payload).is_zero():
            raise NotInner(f"delta(x) = {dx} does not divide X(x) = {fx}")
        m0 = handle.element(poly_div_exact(fx.payload, dx.payload))
        for b in handle.basis(bound):
            if not (x.apply(b) - m0 * pair.delta(b)).is_zero():
                raise TwistcalcError("inner decomposition failed verification")
        return m0

    if regularity is None:
        regularity = classify_regularity(pair)
    certify = regularity.is_strongly_regular and is_symmetric(x, bound)
    rows, _ = _matrix_inner_rows(pair, with_commutation=certify)
    rhs = []
    for e in handle.units():
        img = x.apply(e).payload
        for i in range(handle.size):
            for j in range(handle.size):
                rhs.append(img[i][j])
        if certify:
            rhs.extend([handle.field.zero] * (2 * handle.dim()))
    sol = solve_particular(handle.field, rows, rhs)
    if sol is None:
        raise NotInner("the inner-decomposition system is inconsistent")
    m0 = _element_from_flat(handle, sol)
    if certify:
        nullity = handle.dim() - rank(handle.field, rows)
        if nullity != 0:
            raise TwistcalcError(
                "uniqueness certification failed: solution space has dim "
                f"{nullity}")
    return m0


def inner_decomposition_report(x, bound=8):
    """Inner decomposition plus uniqueness data, for audit-style callers."""
    handle = x.handle
    pair = x.pair
    m0 = inner_decompose(x, bound)
    if handle.kind == "poly":
        # annihilator of delta is zero once sigma != tau, so dim 0; for
        # sigma = tau every m0 works and the dimension is infinite-like,
        # reported as -1
        dim = 0 if not pair.is_trivial() else -1
        commutes = True
    else:
        rows, _ = _matrix_inner_rows(pair, with_commutation=True)
        dim = handle.dim() - rank(handle.field, rows)
        commutes = all(
            (m0 * t - t * m0).is_zero()
            for e in handle.units()
            for t in (pair.sigma.apply(e), pair.tau.apply(e)))
    return InnerDecomposition(m0=m0, solution_space_dim=dim,
                              commutes_with_twists=commutes)


def _element_from_flat(handle, flat):
    n = handle.size
    rows = tuple(tuple(flat[i * n + j] for j in range(n)) for i in range(n))
    return AlgebraElement(handle, rows)


# -- rank-one structure on K[x] -------------------------------------------


@dataclass(frozen=True)
class RankOneGenerator:
    """Monic common divisor ghat of the image of delta, and the generator
    Delta = delta / ghat of the module of twisted derivations."""
    ghat: AlgebraElement
    generator: TwistedDerivation


def rank_one_generator(pair):
    """The free rank-one structure of the derivation module on K[x].

    delta(x) divides delta(f) for every f (inductively from the twisted
    Leibniz expansion of delta(x^n)), and delta(x) itself is attained, so
    the gcd of the image of delta is the monic associate ghat of delta(x).
    The generator Delta acts by Delta(f) = delta(f) / ghat, i.e. it is the
    derivation with Delta(x) = leading-coefficient(delta(x)).
    """
    handle = pair.handle
    if handle.kind != "poly":
        raise TwistcalcError("the rank-one structure lives on K[x]")
    if pair.is_trivial():
        raise SigmaEqualsTau("sigma = tau has zero delta; no generator exists")
    dx = pair.delta_x().payload
    ghat = handle.element(dx.monic())
    lead = handle.scalar(dx.leading_coefficient())
    generator = TwistedDerivation.from_generator_image(pair, lead)
    return RankOneGenerator(ghat=ghat, generator=generator)


def factor_through_generator(x):
    """Write X = p . Delta and return p (exact division of X(x) by Delta(x))."""
    data = rank_one_generator(x.pair)
    p = poly_div_exact(x.generator_image().payload,
                       data.generator.generator_image().payload)
    return x.handle.element(p)
