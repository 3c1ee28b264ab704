"""Named example configurations used by the CLI, demos and the test suite.

* jackson: K = Q(q), sigma(x) = q x, tau = Id, X(x) = 1 -- the q-difference
  quotient (f(qx) - f(x))/((q - 1)x) on monomials;
* translation: K = Q, sigma(x) = x - h, tau = Id -- a strongly regular pair;
* matrix-example: M_N with commuting diagonal conjugations U_a, derivations
  X_a = Id - sigma_a, the module twisted by right multipliers Gamma_a and
  the connection nabla_a(A) = A - U_a A U_a^{-1} Gamma_a;
* commutative-canonical: the rank-one tangent module of the jackson pair
  with its flat symmetric connection.
"""

import random

from .algebra import AlgebraHandle, Endo
from .derivations import TwistPair, TwistedDerivation
from .fields import QQ, QQ_Q, q
from .geometry import (CommutativeConnection, CommutativeFlip, Connection,
                       GhatTangentModule, LieStructure, SigmaAlgebra,
                       SigmaModule)
from .poly import UniPoly


def jackson_pair():
    handle = AlgebraHandle("poly", QQ_Q)
    sigma = Endo.subst(handle, UniPoly(QQ_Q, [0, q], "x"))
    return TwistPair(sigma, Endo.identity(handle))


def jackson_derivation():
    pair = jackson_pair()
    return TwistedDerivation.from_generator_image(pair, pair.handle.one())


def translation_pair(h=1, field=QQ):
    handle = AlgebraHandle("poly", field)
    sigma = Endo.subst(handle, UniPoly(field, [field.coerce(-h), field.one], "x"))
    return TwistPair(sigma, Endo.identity(handle))


def translation_derivation(h=1, fx=None, field=QQ):
    pair = translation_pair(h, field)
    f0 = pair.handle.one() if fx is None else fx
    return TwistedDerivation.from_generator_image(pair, f0)


def _random_matrix(handle, rng, lo=-3, hi=3):
    n = handle.size
    return handle.element([[rng.randint(lo, hi) for _ in range(n)]
                           for _ in range(n)])


def _random_invertible_diagonal(handle, rng):
    n = handle.size
    diag = []
    while len(diag) < n:
        v = rng.randint(-4, 4)
        if v:
            diag.append(v)
    rows = [[diag[i] if i == j else 0 for j in range(n)] for i in range(n)]
    return handle.element(rows)


class MatrixExample:
    """The commuting-conjugations setup on M_N with its symmetric connection."""

    def __init__(self, n=2, seed=0, us=None, gammas=None):
        handle = AlgebraHandle("mat", QQ, n)
        rng = random.Random(seed)
        if us is None:
            us = [_random_invertible_diagonal(handle, rng) for _ in range(2)]
        else:
            us = [handle.element(u) if not hasattr(u, "handle") else u for u in us]
        if gammas is None:
            gammas = [_random_matrix(handle, rng) for _ in range(len(us))]
        else:
            gammas = [handle.element(g) if not hasattr(g, "handle") else g
                      for g in gammas]
        self.handle = handle
        self.us = us
        self.gammas = gammas
        self.rng = rng
        one = handle.one()
        derivs = []
        for u in us:
            pair = TwistPair(Endo.conj(handle, u), Endo.identity(handle))
            derivs.append(TwistedDerivation.inner(pair, one))  # A - U A U^{-1}
        self.algebra = SigmaAlgebra(derivs)
        # sigma_hat_a(A) = U_a A U_a^{-1} Gamma_a, tau_hat_a = Id
        self.module = SigmaModule(self.algebra, 1,
                                  sigma_mults=tuple(gammas))
        # nabla_a(A) = A - U_a A U_a^{-1} Gamma_a = 1 tau_hat(A) - sigma_hat(A) 1
        self.connection = Connection.inner(self.algebra, self.module,
                                           (one,) * len(us))
        self.lie = LieStructure.flip(len(us))

    def curvature_closed_form(self, a, b, elem):
        """U_a U_b A [U_b^{-1} Gamma_b, U_a^{-1} Gamma_a]."""
        ua, ub = self.us[a], self.us[b]
        ua_inv = Endo.conj(self.handle, ua).u_inv
        ub_inv = Endo.conj(self.handle, ub).u_inv
        from .algebra import AlgebraElement
        ua_inv = AlgebraElement(self.handle, ua_inv)
        ub_inv = AlgebraElement(self.handle, ub_inv)
        p = ub_inv * self.gammas[b]
        r = ua_inv * self.gammas[a]
        return ua * ub * elem * (p * r - r * p)

    def random_element(self, lo=-3, hi=3):
        return _random_matrix(self.handle, self.rng, lo, hi)


class CommutativeCanonicalExample:
    """Rank-one tangent module of a (sigma, Id) pair with the flat
    symmetric connection and the twisted flip structure."""

    def __init__(self, pair=None):
        self.pair = pair if pair is not None else jackson_pair()
        self.module = GhatTangentModule(self.pair)
        self.connection = CommutativeConnection.canonical(self.module)
        self.flip = CommutativeFlip(self.module)
