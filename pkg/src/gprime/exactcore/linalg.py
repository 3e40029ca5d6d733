"""Exact dense and sparse linear algebra over Q(i).

Matrices are numpy arrays of ``dtype=object`` holding canonical Q(i) scalars
(see :func:`gprime.exactcore.gaussian.exact`).  Integer matrices may also be
plain ``int64`` arrays; everything here accepts both.

The elimination core works on sparse rows (``dict`` column -> value), which
suits the very sparse systems produced by coefficient matching in the
stabilizer engine.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .gaussian import exact

__all__ = [
    "as_matrix",
    "identity",
    "zeros",
    "matmul",
    "RowReducer",
    "rank",
    "nullspace",
    "solve",
    "det",
    "inverse",
    "charpoly",
    "is_zero_matrix",
]


def as_matrix(rows) -> np.ndarray:
    """Object-dtype copy of ``rows`` with canonical exact entries."""
    arr = np.array(rows, dtype=object)
    if arr.ndim != 2:
        raise ValueError("expected a 2-dimensional array")
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = exact(v)
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = 1
    return out


def zeros(r: int, c: int) -> np.ndarray:
    out = np.empty((r, c), dtype=object)
    out.fill(0)
    return out


def matmul(A, B) -> np.ndarray:
    A = np.asarray(A, dtype=object)
    B = np.asarray(B, dtype=object)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    return A.dot(B)


def is_zero_matrix(A) -> bool:
    return not any(v for v in np.asarray(A, dtype=object).flat)


def _inv(x):
    return Fraction(1, x) if isinstance(x, int) else 1 / x


class RowReducer:
    """Incremental Gaussian elimination on sparse rows.

    Rows are kept in echelon form keyed by pivot column, each normalised to a
    unit pivot; ``add`` returns ``True`` when the new row was independent.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict[int, object]] = {}

    def reduce(self, row: dict) -> dict:
        row = {c: v for c, v in row.items() if v}
        while row:
            c = min(row)
            prow = self.pivots.get(c)
            if prow is None:
                return row
            f = row[c]
            for k, v in prow.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return row

    def add(self, row: dict) -> bool:
        row = self.reduce(row)
        if not row:
            return False
        c = min(row)
        inv = _inv(row[c])
        self.pivots[c] = {k: exact(v * inv) for k, v in row.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def nullspace(self) -> list[dict]:
        """Basis of ``{x : row·x = 0 for every added row}`` as sparse vectors."""
        free = [c for c in range(self.ncols) if c not in self.pivots]
        order = sorted(self.pivots, reverse=True)
        basis = []
        for f in free:
            x = {f: 1}
            for p in order:
                s = 0
                for k, v in self.pivots[p].items():
                    if k != p and k in x:
                        s = s + v * x[k]
                if s:
                    x[p] = exact(-s)
            basis.append(x)
        return basis


def _rows_of(A) -> list[dict]:
    A = np.asarray(A, dtype=object)
    return [{j: exact(v) for j, v in enumerate(row) if v} for row in A]


def rank(A) -> int:
    A = np.asarray(A, dtype=object)
    red = RowReducer(A.shape[1])
    for r in _rows_of(A):
        red.add(r)
    return red.rank


def nullspace(A) -> list[list]:
    """Right nullspace of ``A`` as a list of dense exact vectors."""
    A = np.asarray(A, dtype=object)
    n = A.shape[1]
    red = RowReducer(n)
    for r in _rows_of(A):
        red.add(r)
    return [[x.get(j, 0) for j in range(n)] for x in red.nullspace()]


def solve(A, b) -> list:
    """One exact solution of ``A x = b``; raises ``ValueError`` if inconsistent."""
    A = np.asarray(A, dtype=object)
    m, n = A.shape
    red = RowReducer(n + 1)
    for row, rhs in zip(_rows_of(A), b):
        r = dict(row)
        rhs = exact(rhs)
        if rhs:
            r[n] = rhs
        red.add(r)
    if n in red.pivots:
        raise ValueError("inconsistent linear system")
    x = [0] * n
    for p in sorted(red.pivots, reverse=True):
        row = red.pivots[p]
        s = row.get(n, 0)
        for k, v in row.items():
            if k != p and k != n:
                s = s - v * x[k]
        x[p] = exact(s)
    return x


def det(A):
    """Exact determinant; integer matrices are delegated to FLINT."""
    A = np.asarray(A, dtype=object)
    n, m = A.shape
    if n != m:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    if all(isinstance(v, (int, np.integer)) for v in A.flat):
        import flint

        return int(flint.fmpz_mat([[int(v) for v in row] for row in A]).det())
    M = [[exact(v) for v in row] for row in A]
    sign, result = 1, 1
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            sign = -sign
        pv = M[col][col]
        result = result * pv
        inv = _inv(pv)
        for r in range(col + 1, n):
            f = M[r][col]
            if f:
                f = f * inv
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return exact(sign * result)


def inverse(A) -> np.ndarray:
    A = np.asarray(A, dtype=object)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    red = RowReducer(2 * n)
    for i, row in enumerate(_rows_of(A)):
        r = dict(row)
        r[n + i] = 1
        red.add(r)
    if any(p not in red.pivots for p in range(n)):
        raise ZeroDivisionError("matrix is singular")
    # back-substitute to reduced form
    out = zeros(n, n)
    rows = {p: dict(red.pivots[p]) for p in range(n)}
    for p in range(n - 1, -1, -1):
        row = rows[p]
        for q in range(p + 1, n):
            f = row.get(q)
            if f:
                for k, v in rows[q].items():
                    nv = row.get(k, 0) - f * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        for k, v in row.items():
            if k >= n:
                out[p, k - n] = exact(v)
    return out


def charpoly(A) -> list:
    """Coefficients ``[1, c1, ..., cn]`` of ``det(t I - A)``.

    Division-free (Samuelson-Berkowitz), so it works for matrices whose
    entries are polynomials as well as scalars.  Zero entries may be plain 0.
    """
    A = np.asarray(A, dtype=object)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("charpoly of a non-square matrix")
    if n == 0:
        return [1]
    vec = [1, -A[n - 1, n - 1]]
    for r in range(n - 2, -1, -1):
        sub = A[r + 1:, r + 1:]
        m = n - r - 1
        R = A[r, r + 1:]
        C = A[r + 1:, r]
        t = [1, -A[r, r]]
        w = list(C)
        for k in range(m):
            t.append(-_dot(R, w))
            if k < m - 1:
                w = [_dot(sub[i], w) for i in range(m)]
        new = []
        for i in range(m + 2):
            s = 0
            for j in range(min(i, m) + 1):
                a, b = t[i - j], vec[j]
                if a is not None and b is not None and _nz(a) and _nz(b):
                    s = s + a * b
            new.append(s)
        vec = new
    return vec


def _nz(x) -> bool:
    return bool(x)


def _dot(row, vec):
    s = 0
    for a, b in zip(row, vec):
        if _nz(a) and _nz(b):
            s = s + a * b
    return s
