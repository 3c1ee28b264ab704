"""Exact linear algebra over a field.

Matrices are plain tuples of tuples of field scalars.  Everything here is
straight Gaussian elimination with exact division: over Q the scalars are
Fractions, over Q(q) they are reduced rational functions, so ranks and
kernels are computed without any tolerance.
"""

from .errors import NotInvertible


# -- small dense matrices (algebra elements) --------------------------


def mat_zero(field, n):
    return tuple((field.zero,) * n for _ in range(n))


def mat_eye(field, n):
    return tuple(tuple(field.one if i == j else field.zero for j in range(n))
                 for i in range(n))


def mat_from_rows(field, rows):
    n = len(rows)
    out = []
    for row in rows:
        if len(row) != n:
            raise ValueError("matrix payload must be square")
        out.append(tuple(field.coerce(c) for c in row))
    return tuple(out)


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(a):
    return tuple(tuple(-x for x in row) for row in a)


def mat_scale(a, c):
    return tuple(tuple(x * c for x in row) for row in a)


def mat_mul(a, b):
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col) if x and y),
                           start=row[0] - row[0])
                       for col in bt)
                 for row in a)


def mat_is_zero(a):
    return all(not x for row in a for x in row)


def mat_inv(field, a):
    """Inverse by Gauss-Jordan; raises NotInvertible on singular input."""
    n = len(a)
    work = [list(row) + list(erow) for row, erow in zip(a, mat_eye(field, n))]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            raise NotInvertible("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv = field.one / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [y - f * x for x, y in zip(work[col], work[r])]
    return tuple(tuple(row[n:]) for row in work)


def mat_det(field, a):
    n = len(a)
    work = [list(row) for row in a]
    det = field.one
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            return field.zero
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        det = det * work[col][col]
        inv = field.one / work[col][col]
        for r in range(col + 1, n):
            if work[r][col]:
                f = work[r][col] * inv
                work[r] = [y - f * x for x, y in zip(work[col], work[r])]
    return det


# -- rectangular systems ----------------------------------------------


def rref(field, rows):
    """Reduced row echelon form.  Returns (new_rows, pivot_columns)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        pr = next((i for i in range(r, nrows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = field.one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [y - f * x for x, y in zip(m[r], m[i])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(field, rows):
    if not rows:
        return 0
    return len(rref(field, rows)[1])


def nullspace_basis(field, rows, ncols):
    """Basis of {v : A v = 0} where ``rows`` are the rows of A."""
    if not rows:
        return [tuple(field.one if i == j else field.zero for i in range(ncols))
                for j in range(ncols)]
    m, pivots = rref(field, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(tuple(v))
    return basis


def solve_particular(field, rows, rhs):
    """One solution of A v = rhs with every free variable set to zero.

    Returns None when the system is inconsistent.  The free-variables-zero
    convention makes the answer canonical (minimal support under the
    elimination's pivoting).
    """
    if not rows:
        return ()
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m, pivots = rref(field, aug)
    if ncols in pivots:
        return None
    v = [field.zero] * ncols
    for i, pc in enumerate(pivots):
        v[pc] = m[i][ncols]
    return tuple(v)


def extend_independent(field, base_vectors, candidates):
    """Greedily pick candidates independent of base_vectors (and each other).

    Used to choose cohomology representatives: candidates are cocycles, the
    base is the coboundary space.
    """
    picked = []
    current = [list(v) for v in base_vectors]

    def _rank(vs):
        return rank(field, vs) if vs else 0

    r = _rank(current)
    for cand in candidates:
        trial = current + [list(cand)]
        if _rank(trial) > r:
            picked.append(tuple(cand))
            current = trial
            r += 1
    return picked
