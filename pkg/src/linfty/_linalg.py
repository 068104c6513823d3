"""Dense exact linear algebra over Q(i).

Matrices are lists of rows of :class:`~linfty.algebra.Scalar`.  Sizes in
this package are tiny (at most a few dozen columns), so plain Gaussian
elimination with first-nonzero pivoting is all that is needed.
"""

from __future__ import annotations

from .algebra import ONE, ZERO, Scalar
from .errors import AlgebraError

Matrix = list[list[Scalar]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[ZERO] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def rref(mat: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot column of each nonzero row."""
    m = [list(r) for r in mat]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inv()
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(mat: Matrix) -> int:
    return len(rref(mat)[1])


def nullspace(mat: Matrix, ncols: int | None = None) -> list[list[Scalar]]:
    """Kernel basis, one vector per free column, in column order."""
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    red, pivots = rref(mat) if mat else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for row, c in zip(red, pivots):
            x[c] = -row[f]
        basis.append(x)
    return basis


def transpose(mat: Matrix, ncols: int | None = None) -> Matrix:
    if not mat:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*mat)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[_dot(r, c) for c in bt] for r in a]


def matvec(a: Matrix, v: list[Scalar]) -> list[Scalar]:
    return [_dot(r, v) for r in a]


def _dot(r, c) -> Scalar:
    s = ZERO
    for x, y in zip(r, c):
        if x and y:
            s = s + x * y
    return s


def inverse(mat: Matrix) -> Matrix:
    n = len(mat)
    aug = [list(r) + e for r, e in zip(mat, identity(n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise AlgebraError("singular matrix", code="E_SINGULAR")
    return [row[n:] for row in red]


def det(mat: Matrix) -> Scalar:
    m = [list(r) for r in mat]
    n = len(m)
    out = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            out = -out
        out = out * m[c][c]
        inv = m[c][c].inv()
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return out


def pivot_columns(mat: Matrix) -> list[int]:
    """Indices of the earliest linearly independent columns."""
    return rref(mat)[1] if mat else []


def solve(mat: Matrix, rhs: list[Scalar]) -> list[Scalar] | None:
    """One solution of ``mat @ x = rhs`` (free variables zero), else None."""
    ncols = len(mat[0]) if mat else 0
    aug = [list(r) + [b] for r, b in zip(mat, rhs)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for row, c in zip(red, pivots):
        x[c] = row[ncols]
    return x
