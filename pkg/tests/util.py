"""Seeded random generators shared by the test modules."""

import random
from fractions import Fraction

from twistcalc.algebra import AlgebraHandle, Endo
from twistcalc.fields import QQ, QQ_Q, RatFuncQ
from twistcalc.linalg import mat_det
from twistcalc.poly import UniPoly


def rng(seed=0):
    return random.Random(seed)


def rand_fraction(r, lo=-9, hi=9, den_hi=5):
    return Fraction(r.randint(lo, hi), r.randint(1, den_hi))


def rand_q_poly(r, max_degree=4, lo=-5, hi=5):
    coeffs = [rand_fraction(r, lo, hi) for _ in range(r.randint(0, max_degree) + 1)]
    return UniPoly(QQ, coeffs, "q")


def rand_ratfunc(r, max_degree=4, nonzero=False):
    while True:
        num = rand_q_poly(r, max_degree)
        den = rand_q_poly(r, max_degree)
        if den.is_zero():
            continue
        val = RatFuncQ(num, den)
        if not nonzero or not val.is_zero():
            return val


def rand_scalar(r, field):
    if field is QQ:
        return rand_fraction(r)
    return rand_ratfunc(r, max_degree=2)


def rand_x_poly(r, field, max_degree=4, nonzero=False):
    while True:
        coeffs = [field.coerce(Fraction(r.randint(-5, 5)))
                  for _ in range(r.randint(0, max_degree) + 1)]
        p = UniPoly(field, coeffs, "x")
        if not nonzero or not p.is_zero():
            return p


def rand_poly_element(r, handle, max_degree=4, nonzero=False):
    return handle.element(rand_x_poly(r, handle.field, max_degree, nonzero))


def rand_matrix_element(r, handle, lo=-4, hi=4):
    n = handle.size
    return handle.element([[r.randint(lo, hi) for _ in range(n)]
                           for _ in range(n)])


def rand_invertible_matrix(r, handle, lo=-3, hi=3):
    while True:
        m = rand_matrix_element(r, handle, lo, hi)
        if mat_det(handle.field, m.payload):
            return m


def rand_affine_endo(r, handle):
    a = handle.field.coerce(Fraction(r.choice([1, 2, 3, -1, -2])))
    b = handle.field.coerce(Fraction(r.randint(-4, 4)))
    return Endo.subst(handle, UniPoly(handle.field, [b, a], "x"))


def poly_handle(field=QQ):
    return AlgebraHandle("poly", field)


def mat_handle(n=2, field=QQ):
    return AlgebraHandle("mat", field, n)
