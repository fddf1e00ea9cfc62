"""Dense exact linear algebra over Q(i) by Gaussian elimination."""

from __future__ import annotations

from typing import Sequence

from .scalar import ONE, QI, ZERO

Matrix = list[list[QI]]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[QI.coerce(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    """Product of two matrices over any ring with + and *."""
    if a and len(a[0]) != len(b):
        raise ValueError("shape mismatch in matmul")
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        new = []
        for j in range(cols):
            acc = ZERO
            for k, x in enumerate(row):
                acc = acc + x * b[k][j]
            new.append(acc)
        out.append(new)
    return out


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)] if a else []


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = as_matrix(rows)
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis of {v : rows @ v = 0}, one basis vector per list entry."""
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return identity(ncols)
    ncols = len(rows[0])
    m, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][f]
        basis.append(v)
    return basis


def det(rows: Sequence[Sequence]) -> QI:
    m = as_matrix(rows)
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("det of a non-square matrix")
    result = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        piv = m[c][c]
        result = result * piv
        inv = piv.inverse()
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


def inverse(rows: Sequence[Sequence]) -> Matrix:
    n = len(rows)
    aug = [list(r) + e for r, e in zip(as_matrix(rows), identity(n))]
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in m]


def charpoly(rows: Sequence[Sequence]) -> list[QI]:
    """Coefficients [c_n, ..., c_0] of det(x I - A), via Faddeev-LeVerrier."""
    a = as_matrix(rows)
    n = len(a)
    coeffs = [ONE]
    m = [[ZERO] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        am = matmul(a, m)
        m = [[am[i][j] + (coeffs[-1] if i == j else ZERO) for j in range(n)] for i in range(n)]
        am = matmul(a, m)
        trace = sum((am[i][i] for i in range(n)), ZERO)
        coeffs.append(-trace / k)
    return coeffs
