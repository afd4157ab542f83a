"""Exact dense linear algebra over Gaussian rationals.

Matrices are tuples of row tuples of :class:`~hermsub.rational.CRat`.  All
routines use fraction Gaussian elimination with deterministic pivoting
(leftmost nonzero column, smallest row index), so results are reproducible
and exact.
"""

from __future__ import annotations

from .rational import CRat, ZERO, ONE, cr

Matrix = tuple  # tuple[tuple[CRat, ...], ...]


def mat(rows) -> Matrix:
    return tuple(tuple(cr(x) for x in row) for row in rows)


def zeros(r: int, c: int) -> Matrix:
    return tuple(tuple(ZERO for _ in range(c)) for _ in range(r))


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def shape(a: Matrix) -> tuple[int, int]:
    return (len(a), len(a[0]) if a else 0)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Matrix, s) -> Matrix:
    s = cr(s)
    return tuple(tuple(x * s for x in row) for row in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k = shape(a)
    k2, m = shape(b)
    if k != k2:
        raise ValueError(f"matrix shapes {n}x{k} and {k2}x{m} do not compose")
    bt = tuple(zip(*b)) if b else ()
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col)), ZERO) for col in bt) for row in a
    )


def mat_is_zero(a: Matrix) -> bool:
    return all(not x for row in a for x in row)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def row_vec(entries) -> Matrix:
    return (tuple(cr(x) for x in entries),)


def col_vec(entries) -> Matrix:
    return tuple((cr(x),) for x in entries)


def _rref(rows: list[list[CRat]]):
    """In-place reduced row echelon form; returns pivot column list."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rank(a: Matrix) -> int:
    rows = [list(row) for row in a]
    if not rows:
        return 0
    return len(_rref(rows))


def det(a: Matrix) -> CRat:
    n, m = shape(a)
    if n != m:
        raise ValueError("determinant of a non-square matrix")
    rows = [list(row) for row in a]
    out = ONE
    for c in range(n):
        pr = next((i for i in range(c, n) if rows[i][c]), None)
        if pr is None:
            return ZERO
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            out = -out
        out = out * rows[c][c]
        inv = ONE / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return out


def inverse(a: Matrix) -> Matrix:
    n, m = shape(a)
    if n != m:
        raise ValueError("inverse of a non-square matrix")
    rows = [list(ra) + list(ri) for ra, ri in zip(a, identity(n))]
    pivots = _rref(rows)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in rows)


def solve_general(a: Matrix, b: Matrix):
    """Particular solution X of A X = B with free variables set to zero.

    Returns None when the system is inconsistent.  Deterministic: the pivot
    choice is leftmost column, topmost row.
    """
    n, m = shape(a)
    nb, kb = shape(b)
    if nb != n:
        raise ValueError("right-hand side has wrong height")
    rows = [list(ra) + list(rb) for ra, rb in zip(a, b)]
    if not rows:
        return zeros(m, kb)
    pivots = []
    r = 0
    for c in range(m):  # pivot only within the unknown columns
        pr = next((i for i in range(r, n) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if any(rows[i][m:]):
            return None
    sol = [[ZERO] * kb for _ in range(m)]
    for rr, c in enumerate(pivots):
        sol[c] = list(rows[rr][m:])
    return tuple(tuple(row) for row in sol)


def nullspace(a: Matrix) -> list[Matrix]:
    """Basis of the right nullspace, as column vectors."""
    n, m = shape(a)
    rows = [list(row) for row in a]
    if not rows:
        return [col_vec([ONE if i == j else ZERO for i in range(m)]) for j in range(m)]
    pivots = _rref(rows)
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * m
        v[fc] = ONE
        for r, c in enumerate(pivots):
            v[c] = -rows[r][fc]
        basis.append(col_vec(v))
    return basis


def mat_to_floats(a: Matrix) -> list[list[complex]]:
    return [[complex(x) for x in row] for row in a]
