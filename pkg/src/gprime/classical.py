"""Matrix realizations of the classical algebras and their invariant generators.

Orthogonal and symplectic algebras use split (anti-diagonal) forms so that the
Cartan subalgebra is diagonal.  The matrix basis is identified with the
Chevalley basis of :func:`gprime.chevalley.build_algebra` by choosing simple
root vectors, fixing ``y`` so each ``(x, y, [x, y])`` is an sl2-triple, and
generating the other root vectors with the same extraspecial brackets the
abstract construction uses.  An audit compares every bracket afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import lcm

import numpy as np

from .chevalley import AlgebraMap, ChevalleyAlgebra, ConstructionError, build_algebra
from .exactcore import Polynomial, exact
from .exactcore.linalg import charpoly, inverse, zeros
from .rootsystem import CartanType

__all__ = [
    "MatrixRealization",
    "UnsupportedTypeError",
    "realize",
    "classical_invariant_gens",
    "pfaffian",
    "polynomial_matrix",
    "transpose_map",
    "rais_transpose_check",
]


class UnsupportedTypeError(ValueError):
    pass


def _E(m: int, a: int, b: int) -> np.ndarray:
    M = zeros(m, m)
    M[a, b] = 1
    return M


def _commutator(A, B):
    return A.dot(B) - B.dot(A)


def _form(t: CartanType) -> tuple[int, np.ndarray | None]:
    n = t.rank
    if t.family == "A":
        return n + 1, None
    m = 2 * n + 1 if t.family == "B" else 2 * n
    S = zeros(m, m)
    for i in range(m):
        S[i, m - 1 - i] = 1
    if t.family == "C":
        for i in range(n, m):
            S[i, m - 1 - i] = -1
    return m, S


def _diagonal_weights(t: CartanType) -> list[tuple[int, ...]]:
    n = t.rank
    if t.family == "A":
        size = n + 1
        return [tuple(1 if k == p else 0 for k in range(size)) for p in range(size)]
    m = 2 * n + 1 if t.family == "B" else 2 * n
    out = []
    for p in range(m):
        w = [0] * n
        if p < n:
            w[p] = 1
        elif m - 1 - p < n:
            w[m - 1 - p] = -1
        out.append(tuple(w))
    return out


def _simple_root_vectors(t: CartanType) -> list[tuple[int, ...]]:
    n = t.rank
    size = n + 1 if t.family == "A" else n
    out = []
    for i in range(n - 1 if t.family != "A" else n):
        v = [0] * size
        v[i], v[i + 1] = 1, -1
        out.append(tuple(v))
    if t.family == "B":
        out.append(tuple(1 if k == n - 1 else 0 for k in range(n)))
    elif t.family == "C":
        out.append(tuple(2 if k == n - 1 else 0 for k in range(n)))
    elif t.family == "D":
        out.append(tuple(1 if k in (n - 2, n - 1) else 0 for k in range(n)))
    return out


@dataclass(eq=False)
class MatrixRealization:
    """Classical algebra as ``m x m`` matrices, basis aligned with the Chevalley basis."""

    cartan_type: CartanType
    m: int
    form: np.ndarray | None
    basis: list[np.ndarray] = field(repr=False)
    algebra: ChevalleyAlgebra = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @cached_property
    def _left_inverse(self) -> np.ndarray:
        B = np.array([b.reshape(-1) for b in self.basis], dtype=object).T
        return inverse(B.T.dot(B)).dot(B.T)

    def coordinates(self, X) -> list:
        """Chevalley coordinates of a matrix in the algebra (exact; checked)."""
        X = np.asarray(X, dtype=object)
        c = [exact(v) for v in self._left_inverse.dot(X.reshape(-1))]
        if np.any(self.matrix_of(c) - X):
            raise ValueError("matrix does not lie in the realized algebra")
        return c

    def matrix_of(self, coords) -> np.ndarray:
        out = zeros(self.m, self.m)
        for c, b in zip(coords, self.basis):
            c = exact(c)
            if c:
                out = out + c * b
        return out

    def in_algebra(self, X) -> bool:
        X = np.asarray(X, dtype=object)
        if self.form is None:
            return sum(X[i, i] for i in range(self.m)) == 0
        S = self.form
        return not np.any(X.T.dot(S) + S.dot(X))

    @cached_property
    def denominator(self) -> int:
        return lcm(*(Fraction(v).denominator for b in self.basis for v in b.flat))

    def integer_basis(self) -> np.ndarray:
        """``denominator * basis`` as an int64 array of shape ``(dim, m, m)``."""
        D = self.denominator
        return np.array([[[int(D * v) for v in row] for row in b] for b in self.basis], dtype=np.int64)

    def bracket_mismatches(self) -> list[tuple[int, int]]:
        """Basis pairs whose matrix commutator differs from the Chevalley table."""
        n, D = self.dimension, self.denominator
        B = self.integer_basis()
        prod = np.einsum("iab,jbc->ijac", B, B)
        comm = prod - prod.transpose(1, 0, 2, 3)
        C = np.zeros((n, n, n), dtype=np.int64)
        for (i, j), res in self.algebra.table.items():
            for k, v in res.items():
                C[i, j, k] = v
        expected = D * np.einsum("ijk,kab->ijab", C, B)
        bad = np.argwhere(np.any(comm != expected, axis=(2, 3)))
        return [(int(i), int(j)) for i, j in bad if i < j]


@lru_cache(maxsize=None)
def realize(t) -> MatrixRealization:
    t = CartanType.parse(t)
    if not t.is_classical:
        raise UnsupportedTypeError(f"{t} has no classical matrix realization")
    alg = build_algebra(t)
    rs = alg.root_system
    m, S = _form(t)
    weights = _diagonal_weights(t)
    Sinv = None if S is None else inverse(S)

    def root_vector(eps):
        for a in range(m):
            for b in range(m):
                if a != b and tuple(x - y for x, y in zip(weights[a], weights[b])) == eps:
                    Y = _E(m, a, b)
                    if S is not None:
                        Y = Y - Sinv.dot(Y.T).dot(S)
                    if np.any(Y):
                        return Y
        raise ConstructionError(f"no root vector of weight {eps}")

    simple_eps = _simple_root_vectors(t)
    x: dict[tuple, np.ndarray] = {}
    y: dict[tuple, np.ndarray] = {}
    h: list[np.ndarray] = []
    for i, a in enumerate(rs.simple):
        X = root_vector(simple_eps[i])
        Y0 = root_vector(tuple(-v for v in simple_eps[i]))
        H0 = _commutator(X, Y0)
        ratio = {exact(Fraction(p) / q) for p, q in zip(_commutator(H0, X).flat, X.flat) if q}
        if len(ratio) != 1:
            raise ConstructionError("simple root vector is not an eigenvector")
        c = exact(Fraction(2) / ratio.pop())
        x[a], y[a] = X, c * Y0
        h.append(_commutator(x[a], y[a]))
    for xi in rs.positive[rs.rank:]:
        g, d = alg.extraspecial[xi]
        ng = alg.N[(g, d)]
        nneg = alg.N[(tuple(-v for v in g), tuple(-v for v in d))]
        x[xi] = _commutator(x[g], x[d]) * exact(Fraction(1, ng))
        y[xi] = _commutator(y[g], y[d]) * exact(Fraction(1, nneg))
    basis = h + [x[a] for a in rs.positive] + [y[a] for a in rs.positive]
    basis = [np.vectorize(exact, otypes=[object])(b) for b in basis]
    real = MatrixRealization(t, m, S, basis, alg)
    if any(not real.in_algebra(b) for b in basis):
        raise ConstructionError("basis matrix violates the defining form")
    bad = real.bracket_mismatches()
    if bad:
        raise ConstructionError(f"matrix brackets disagree with the Chevalley table at {bad[:3]}")
    return real


def polynomial_matrix(real: MatrixRealization, scale=1) -> np.ndarray:
    """The generic element ``scale * sum x_k B_k`` as a matrix of linear polynomials."""
    out = np.empty((real.m, real.m), dtype=object)
    for a in range(real.m):
        for b in range(real.m):
            p = Polynomial.linear_form([exact(scale * bk[a, b]) for bk in real.basis])
            out[a, b] = p if p else 0
    return out


def pfaffian(M) -> Polynomial | object:
    """Pfaffian of an antisymmetric matrix (scalar or polynomial entries)."""
    M = np.asarray(M, dtype=object)
    m = M.shape[0]
    if M.shape != (m, m):
        raise ValueError("pfaffian of a non-square matrix")
    if m % 2:
        raise ValueError("pfaffian needs an even dimension")
    memo: dict[tuple[int, ...], object] = {}

    def pf(idx: tuple[int, ...]):
        if not idx:
            return 1
        if idx in memo:
            return memo[idx]
        i, rest = idx[0], idx[1:]
        total = 0
        for k, j in enumerate(rest):
            a = M[i, j]
            if not a:
                continue
            sub = pf(rest[:k] + rest[k + 1:])
            if not sub:
                continue
            term = a * sub
            total = total - term if k % 2 else total + term
        memo[idx] = total
        return total

    return pf(tuple(range(m)))


@lru_cache(maxsize=None)
def classical_invariant_gens(t) -> tuple[Polynomial, ...]:
    """Generators of the invariant ring in Chevalley coordinates.

    Characteristic-polynomial coefficients of the matrix realization, plus the
    Pfaffian of ``S X`` for type D.  Degrees reproduce ``invariant_degrees(t)``.
    """
    real = realize(t)
    t = real.cartan_type
    n = real.dimension
    # Clear denominators so the expansion runs on integer coefficients.
    D = real.denominator
    X = polynomial_matrix(real, scale=D)
    coeffs = charpoly(X)

    def as_poly(c, k):
        c = c if isinstance(c, Polynomial) else Polynomial.constant(n, c)
        return c if D == 1 else c.scale(Fraction(1, D ** k))

    if t.family == "A":
        return tuple(as_poly(coeffs[k], k) for k in range(2, real.m + 1))
    if t.family in "BC":
        return tuple(as_poly(coeffs[k], k) for k in range(2, real.m + 1, 2))
    gens = [as_poly(coeffs[k], k) for k in range(2, real.m - 1, 2)]
    SX = real.form.dot(X)
    gens.append(as_poly(pfaffian(SX), real.m // 2))
    return tuple(gens)


def transpose_map(t) -> AlgebraMap:
    """``X -> X^T`` on the realization, written in Chevalley coordinates."""
    real = realize(t)
    cols = [real.coordinates(b.T) for b in real.basis]
    M = np.array(cols, dtype=object).T
    if all(isinstance(v, int) for v in M.flat):
        M = M.astype(np.int64)
    return AlgebraMap(M, "transpose")


def rais_transpose_check(n: int) -> dict:
    """Transpose on sl_n: fixes the generators, is an anti-automorphism, and ``-transpose`` is an automorphism."""
    if n < 2:
        raise ValueError("need n >= 2")
    from .chevalley import chevalley_involution

    t = CartanType("A", n - 1)
    alg = build_algebra(t)
    T = transpose_map(t)
    gens = classical_invariant_gens(t)
    fixed = [g.compose(T.matrix) == g for g in gens]
    minus_is_aut = (-T).is_automorphism(alg)
    defect = T.bracket_defect(alg)
    psi = chevalley_involution(alg)
    report = {
        "n": n,
        "generatorDegrees": [g.degree for g in gens],
        "transposeFixesGenerators": all(fixed),
        "minusTransposeIsAutomorphism": minus_is_aut,
        "transposeIsAutomorphism": defect is None,
        "transposeBracketFailure": None if defect is None else [alg.labels[defect[0]], alg.labels[defect[1]]],
        "minusTransposeEqualsPsi": bool(np.array_equal(np.asarray(-T.matrix, dtype=object), psi.matrix.astype(object))),
        "minusTransposeTimesPsiIsAutomorphism": AlgebraMap((-T.matrix).dot(psi.matrix)).is_automorphism(alg),
    }
    report["passed"] = all(fixed) and minus_is_aut and defect is not None
    return report


def generator_degrees(t) -> list[int]:
    return sorted(g.degree for g in classical_invariant_gens(t))


def realization_names(t) -> str:
    t = CartanType.parse(t)
    names = {"A": f"sl{t.rank + 1}", "B": f"so{2 * t.rank + 1}", "C": f"sp{2 * t.rank}", "D": f"so{2 * t.rank}"}
    return names[t.family]


__all__ += ["generator_degrees", "realization_names"]
