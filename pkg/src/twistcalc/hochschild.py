"""Cohomology of the twisted bimodule, exactly.

The coefficients are the algebra itself with actions f.m = sigma(f) m and
m.f = m tau(f).  Degree-1 cocycles are then precisely the twisted
derivations and degree-1 coboundaries the inner ones, so H^1 enumerates
the outer derivations.

For M_N every cochain space is finite dimensional and the differentials
are assembled as exact sparse matrices in the matrix-unit basis; ranks and
kernels come from exact elimination.  For K[x] the answers are closed
forms (a quotient by the principal ideal (delta(x))) and are computed as
such, never by truncated linear algebra.
"""

import itertools
import os
from dataclasses import dataclass, field as dc_field

from .algebra import LinearMapOnAlgebra, element_from_vec
from .derivations import classify_regularity, inner_decompose
from .errors import DimensionBudgetExceeded, NotInner, TwistcalcError
from .linalg import extend_independent, nullspace_basis, rank
from .poly import poly_div_exact, poly_rem

DEFAULT_MAX_DIM = 4096


def _max_dim():
    raw = os.environ.get("TWISTCALC_MAX_DIM")
    return int(raw) if raw else DEFAULT_MAX_DIM


class TwistedBimodule:
    """The algebra as a bimodule over itself, with twisted actions."""

    __slots__ = ("pair",)

    def __init__(self, pair):
        object.__setattr__(self, "pair", pair)

    def __setattr__(self, name, value):
        raise AttributeError("TwistedBimodule is immutable")

    @property
    def handle(self):
        return self.pair.handle

    def left(self, f, m):
        return self.pair.sigma.apply(f) * m

    def right(self, m, f):
        return m * self.pair.tau.apply(f)

    def axioms_hold(self, bound=4):
        """Bimodule axioms on generators: associativity of both actions,
        their compatibility, and the unit acting as identity."""
        handle = self.handle
        one = handle.one()
        gens = handle.basis(bound)
        for m in gens:
            if self.left(one, m) != m or self.right(m, one) != m:
                return False
        for f in gens:
            for g in gens:
                for m in gens:
                    if self.left(f * g, m) != self.left(f, self.left(g, m)):
                        return False
                    if self.right(m, f * g) != self.right(self.right(m, f), g):
                        return False
                    if self.right(self.left(f, m), g) != self.left(f, self.right(m, g)):
                        return False
        return True


# -- cochains on M_N -------------------------------------------------------
#
# An n-cochain is stored sparsely as {unit-index tuple: matrix value}; its
# coordinates live in a space of dimension d^(n+1) with d = N^2, flattened
# as (input tuple, output coordinate).


def _unit_product_table(handle):
    """unit_prod[u][w] = index of e_u e_w, or None when the product is 0."""
    n = handle.size
    table = []
    for i in range(n):
        for j in range(n):
            row = []
            for k in range(n):
                for l in range(n):
                    row.append(i * n + l if j == k else None)
            table.append(row)
    return table


def _cochain_differential(mod, n, cochain):
    """Apply the degree-n differential to a sparse cochain table."""
    handle = mod.handle
    d = handle.dim()
    units = handle.units()
    sigma_u = [mod.pair.sigma.apply(e) for e in units]
    tau_u = [mod.pair.tau.apply(e) for e in units]
    prod = _unit_product_table(handle)
    out = {}
    if n == 0:
        m = cochain.get((), handle.zero())
        for a in range(d):
            val = m * tau_u[a] - sigma_u[a] * m
            if not val.is_zero():
                out[(a,)] = val
        return out
    for s in itertools.product(range(d), repeat=n + 1):
        acc = handle.zero()
        hit = False
        w = cochain.get(s[1:])
        if w is not None:
            acc = acc + sigma_u[s[0]] * w
            hit = True
        sign = -1
        for j in range(1, n + 1):
            merged = prod[s[j - 1]][s[j]]
            if merged is not None:
                w = cochain.get(s[:j - 1] + (merged,) + s[j + 1:])
                if w is not None:
                    acc = acc + (w if sign > 0 else -w)
                    hit = True
            sign = -sign
        w = cochain.get(s[:-1])
        if w is not None:
            tail = w * tau_u[s[-1]]
            acc = acc + (tail if sign > 0 else -tail)
            hit = True
        if hit and not acc.is_zero():
            out[s] = acc
    return out


def _basis_cochain(handle, t, v):
    return {t: handle.unit(v // handle.size, v % handle.size)}


def _cochain_coords(handle, n, cochain):
    """Flatten a sparse cochain into coordinates (dense tuple)."""
    d = handle.dim()
    out = [handle.field.zero] * (d ** (n + 1))
    for t, val in cochain.items():
        base = 0
        for u in t:
            base = base * d + u
        base *= d
        flat = val.vec()
        for p in range(d):
            out[base + p] = flat[p]
    return tuple(out)


class CochainComplexSlice:
    """The degree-n differential as an exact sparse matrix."""

    __slots__ = ("n", "dims", "cols")

    def __init__(self, n, dims, cols):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "cols", cols)

    def __setattr__(self, name, value):
        raise AttributeError("CochainComplexSlice is immutable")

    def dense_rows(self, field):
        nrows = self.dims[1]
        ncols = self.dims[0]
        rows = [[field.zero] * ncols for _ in range(nrows)]
        for c, col in enumerate(self.cols):
            for r, val in col.items():
                rows[r][c] = val
        return rows

    def dense_cols(self, field):
        """Columns as vectors; rank of the matrix = rank of these."""
        nrows = self.dims[1]
        out = []
        for col in self.cols:
            v = [field.zero] * nrows
            for r, val in col.items():
                v[r] = val
            out.append(v)
        return out

    def apply_to_coords(self, field, coords):
        nrows = self.dims[1]
        out = [field.zero] * nrows
        for c, x in enumerate(coords):
            if x:
                for r, val in self.cols[c].items():
                    out[r] = out[r] + val * x
        return tuple(out)


def build_differential(mod, n):
    """Assemble the matrix of the degree-n differential (0 <= n <= 3)."""
    handle = mod.handle
    if handle.kind != "mat":
        raise TwistcalcError("matrix differentials need a finite-dimensional algebra")
    if not 0 <= n <= 3:
        raise ValueError("differentials are assembled for degrees 0..3")
    d = handle.dim()
    dim_n = d ** (n + 1)
    dim_np1 = d ** (n + 2)
    cap = _max_dim()
    if dim_np1 > cap or dim_n > cap:
        raise DimensionBudgetExceeded(
            f"cochain space of dimension {max(dim_n, dim_np1)} exceeds the "
            f"budget {cap} (set TWISTCALC_MAX_DIM to raise it)")
    cols = []
    tuples = list(itertools.product(range(d), repeat=n)) if n else [()]
    for t in tuples:
        for v in range(d):
            image = _cochain_differential(mod, n, _basis_cochain(handle, t, v))
            col = {}
            for s, val in image.items():
                base = 0
                for u in s:
                    base = base * d + u
                base *= d
                flat = val.vec()
                for p in range(d):
                    if flat[p]:
                        col[base + p] = flat[p]
            cols.append(col)
    return CochainComplexSlice(n=n, dims=(dim_n, dim_np1), cols=cols)


def composition_is_zero(mod, n):
    """Check d_n o d_{n-1} = 0 exactly by pushing every basis cochain through
    both differentials (n >= 1)."""
    handle = mod.handle
    d = handle.dim()
    tuples = list(itertools.product(range(d), repeat=n - 1)) if n > 1 else [()]
    for t in tuples:
        for v in range(d):
            mid = _cochain_differential(mod, n - 1, _basis_cochain(handle, t, v))
            top = _cochain_differential(mod, n, mid)
            if top:
                return False
    return True


@dataclass(frozen=True)
class CohomologyReport:
    degree: int
    dim_cocycles: int
    dim_coboundaries: int
    dim_cohomology: int
    representatives: tuple = dc_field(default=())

    def representative_elements(self, handle):
        """Degree-0 representatives rendered as algebra elements."""
        if self.degree != 0:
            raise TwistcalcError("only degree-0 classes render as elements")
        return [element_from_vec(handle, v) for v in self.representatives]

    def representative_maps(self, handle):
        """Degree-1 representatives rendered as linear maps on the algebra."""
        if self.degree != 1:
            raise TwistcalcError("only degree-1 classes render as maps")
        d = handle.dim()
        maps = []
        for v in self.representatives:
            rows = [[v[u * d + p] for u in range(d)] for p in range(d)]
            maps.append(LinearMapOnAlgebra.matrix_map(handle, rows))
        return maps


def cohomology_dim(mod, n):
    """Exact cohomology in degree n (0 <= n <= 2) for M_N coefficients.

    dim Z = nullity of d_n, dim B = rank of d_{n-1} (zero in degree 0);
    representatives are cocycles extending a basis of the coboundaries to a
    basis of the cocycles.
    """
    if not 0 <= n <= 2:
        raise ValueError("cohomology dimensions are reported for degrees 0..2")
    handle = mod.handle
    field = handle.field
    d_n = build_differential(mod, n)
    dim_n = d_n.dims[0]
    rows = d_n.dense_cols(field)          # rank(A) = rank(A^T)
    rank_dn = rank(field, rows) if rows else 0
    dim_z = dim_n - rank_dn
    kernel = nullspace_basis(field, d_n.dense_rows(field), dim_n)
    if n == 0:
        dim_b = 0
        boundary_vecs = []
    else:
        d_prev = build_differential(mod, n - 1)
        boundary_vecs = [tuple(col) for col in d_prev.dense_cols(field)]
        dim_b = rank(field, boundary_vecs) if boundary_vecs else 0
    reps = extend_independent(field, boundary_vecs, kernel)
    return CohomologyReport(degree=n, dim_cocycles=dim_z,
                            dim_coboundaries=dim_b,
                            dim_cohomology=dim_z - dim_b,
                            representatives=tuple(reps))


def derivation_space_dim(pair):
    """dim of the twisted-derivation space of M_N by solving the Leibniz
    system directly (an assembly independent of the cochain differential)."""
    handle = pair.handle
    if handle.kind != "mat":
        raise TwistcalcError("direct derivation-space solve is for M_N")
    d = handle.dim()
    n = handle.size
    units = handle.units()
    sigma_u = [pair.sigma.apply(e).payload for e in units]
    tau_u = [pair.tau.apply(e).payload for e in units]
    prod = _unit_product_table(handle)
    field = handle.field
    rows = []
    # unknowns w[p][u]: output coordinate p of omega(e_u); flat index p * d + u
    for u in range(d):
        for w in range(d):
            a = sigma_u[u]
            b = tau_u[w]
            for i in range(n):
                for j in range(n):
                    r = [field.zero] * (d * d)
                    merged = prod[u][w]
                    if merged is not None:
                        r[(i * n + j) * d + merged] += field.one
                    for t in range(n):
                        # -(sigma(e_u) omega(e_w))_{ij}
                        r[(t * n + j) * d + w] -= a[i][t]
                        # -(omega(e_u) tau(e_w))_{ij}
                        r[(i * n + t) * d + u] -= b[t][j]
                    rows.append(r)
    return d * d - rank(field, rows)


# -- closed forms on K[x] ---------------------------------------------------


H0_ZERO = "zero_space"
H0_ALL = "all_of_A"
H0_UNKNOWN = "unknown"

INFINITE = "infinite"


def h0_poly(pair):
    """H^0 for K[x] coefficients: the annihilator condition b delta(a) = 0.

    The zero space when the pair is regular, everything when sigma = tau."""
    if pair.handle.kind != "poly":
        raise TwistcalcError("h0_poly is the K[x] closed form")
    if pair.is_trivial():
        return H0_ALL
    report = classify_regularity(pair)
    return H0_ZERO if report.is_regular else H0_UNKNOWN


@dataclass(frozen=True)
class QuotientDescription:
    """K[x] modulo the principal ideal generated by ``modulus`` (monic)."""
    modulus: object
    dim_over_k: object           # int, or INFINITE when the ideal is zero
    representatives: tuple


def h1_poly(pair):
    """H^1 for K[x]: the quotient K[x]/(delta(x)).

    Derivations correspond to X(x), inner ones to multiples of delta(x);
    the monic associate of delta(x) generates the same ideal and is the
    canonical modulus.  Dimension = deg delta(x) (nonconstant case), 0 for
    a unit delta(x), infinite when sigma = tau.
    """
    handle = pair.handle
    if handle.kind != "poly":
        raise TwistcalcError("h1_poly is the K[x] closed form")
    if pair.is_trivial():
        return QuotientDescription(modulus=handle.zero(),
                                   dim_over_k=INFINITE, representatives=())
    dx = pair.delta_x().payload.monic()
    if dx.is_constant():
        return QuotientDescription(modulus=handle.element(dx),
                                   dim_over_k=0, representatives=())
    deg = dx.degree
    reps = tuple(handle.monomial(k) for k in range(deg))
    return QuotientDescription(modulus=handle.element(dx),
                               dim_over_k=deg, representatives=reps)


@dataclass(frozen=True)
class CocycleClass:
    kind: str                      # "inner" | "outer"
    m0: object = None              # for inner classes
    representative: object = None  # canonical class representative (outer)

    @property
    def is_inner(self):
        return self.kind == "inner"


def classify_cocycle(x):
    """Inner/outer classification of a derivation seen as a 1-cocycle.

    On K[x] the class representative is the remainder of X(x) modulo
    delta(x); on M_N the exact linear solve decides.
    """
    handle = x.handle
    pair = x.pair
    if handle.kind == "poly":
        fx = x.generator_image()
        if pair.is_trivial():
            if fx.is_zero():
                return CocycleClass(kind="inner", m0=handle.zero())
            return CocycleClass(kind="outer", representative=fx)
        dxp = pair.delta_x().payload
        rem = poly_rem(fx.payload, dxp)
        if rem.is_zero():
            return CocycleClass(kind="inner",
                                m0=handle.element(poly_div_exact(fx.payload, dxp)))
        return CocycleClass(kind="outer", representative=handle.element(rem))
    try:
        return CocycleClass(kind="inner", m0=inner_decompose(x))
    except NotInner:
        return CocycleClass(kind="outer")
