"""twistcalc: exact calculus of twisted derivations.

Everything is computed over Q or the rational-function field Q(q) with
arbitrary-precision arithmetic; there are no floats and no tolerances.
The layers, bottom up:

* :mod:`twistcalc.poly`, :mod:`twistcalc.fields` -- exact scalars and
  dense univariate polynomials (gcd, exact division, remainders);
* :mod:`twistcalc.algebra` -- the algebras K[x] and M_N, their
  endomorphisms and K-linear maps;
* :mod:`twistcalc.derivations` -- twisted derivations: Leibniz checks,
  symmetry, regularity of twist pairs, inner decomposition, the rank-one
  generator of the derivation module on K[x];
* :mod:`twistcalc.hochschild` -- cohomology of the twisted bimodule:
  closed forms on K[x], exact cochain differentials on M_N;
* :mod:`twistcalc.geometry` -- derivation families, modules, connections,
  the exchange structure and curvature;
* :mod:`twistcalc.cli` -- the ``twistcalc`` command.
"""

from .algebra import (AlgebraElement, AlgebraHandle, Endo,
                      LinearMapOnAlgebra)
from .derivations import (RankOneGenerator, RegularityReport, TwistPair,
                          TwistedDerivation, classify_regularity,
                          delta_exchange_check, factor_through_generator,
                          inner_decompose, inner_decomposition_report,
                          is_symmetric, rank_one_generator,
                          verify_twisted_leibniz)
from .fields import QQ, QQ_Q, RatFuncQ, Rational, q
from .geometry import (CommutativeConnection, CommutativeFlip, Connection,
                       GhatTangentModule, LieStructure, SigmaAlgebra,
                       SigmaModule, canonical_free_module,
                       check_connection_axioms, curvature,
                       gamma_connection_curvature, is_symmetric_connection,
                       projective_module, twisted_linearity_check,
                       unique_symmetric_connection)
from .hochschild import (CohomologyReport, QuotientDescription,
                         TwistedBimodule, classify_cocycle, cohomology_dim,
                         composition_is_zero, h0_poly, h1_poly)
from .poly import NEG_INF, UniPoly, poly_div_exact, poly_gcd, poly_rem

__version__ = "0.1.0"
