"""Simple Lie algebras in a Chevalley basis, and the Chevalley involution psi.

Basis order for a root system with rank ``r`` and positive roots
``beta_1 < ... < beta_P`` (height order, see :mod:`gprime.rootsystem`)::

    h_1 .. h_r, x_{beta_1} .. x_{beta_P}, y_{beta_1} .. y_{beta_P}

with ``[x_a, y_a] = h_a`` (the coroot), ``[h, x_a] = a(h) x_a`` and
``[e_a, e_b] = N_{a,b} e_{a+b}`` where ``e_a = x_a`` for ``a > 0`` and
``e_a = y_{-a}`` for ``a < 0``.  Signs of the integers ``N_{a,b}`` are fixed by
declaring ``N`` positive on extraspecial pairs; together with
``N_{-a,-b} = -N_{a,b}`` this determines every structure constant.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np
import scipy.sparse as sp

from .exactcore import Polynomial, exact
from .exactcore.linalg import zeros
from .rootsystem import CartanType, RootSystem, root_system

__all__ = [
    "ChevalleyAlgebra",
    "AlgebraMap",
    "ConstructionError",
    "build_algebra",
    "ad_matrix",
    "chevalley_involution",
    "trace_form",
    "trace_form_values",
    "cartan_trace_form",
    "restrict_to_cartan",
    "cartan_reflection",
    "random_integer_point",
    "SYMBOLIC_RANK_BOUND",
]

SYMBOLIC_RANK_BOUND = 2


class ConstructionError(RuntimeError):
    """An internal consistency audit failed while building an algebra or map."""


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _neg(a):
    return tuple(-x for x in a)


def _is_pos(a) -> bool:
    return any(a) and all(c >= 0 for c in a)


def _structure_constants(rs: RootSystem):
    """``N_{a,b}`` for every pair of roots whose sum is a root, plus extraspecial pairs."""
    pos = rs.positive
    order = {r: k for k, r in enumerate(pos)}
    roots = rs.root_set
    by_sum: dict[tuple, list] = defaultdict(list)
    for i, a in enumerate(pos):
        for b in pos[i + 1:]:
            s = _add(a, b)
            if s in roots:
                by_sum[s].append((a, b))
    Npos: dict[tuple, int] = {}
    norm = {r: rs.inner(r, r) for r in rs.roots}

    def N(a, b) -> int:
        s = _add(a, b)
        if s not in roots:
            return 0
        pa, pb = _is_pos(a), _is_pos(b)
        if pa and pb:
            return Npos[(a, b)]
        if not pa and not pb:
            return -N(_neg(a), _neg(b))
        if not pa:
            return -N(b, a)
        c = _neg(s)
        if _is_pos(s):
            val = Fraction(-norm[c], norm[a]) * N(_neg(b), _neg(c))
        else:
            val = Fraction(norm[c], norm[b]) * N(c, a)
        if val.denominator != 1:
            raise ConstructionError(f"non-integral structure constant for {a}, {b}")
        return int(val)

    extraspecial = {}
    for xi in pos[rs.rank:]:
        pairs = sorted(by_sum[xi], key=lambda ab: order[ab[0]])
        g, d = pairs[0]
        extraspecial[xi] = (g, d)
        ngd = rs.string_down(g, d) + 1
        Npos[(g, d)] = ngd
        Npos[(d, g)] = -ngd
        for a, b in pairs[1:]:
            total = Fraction(0)
            bg = _add(b, _neg(g))
            if bg in roots:
                total += Fraction(N(b, _neg(g)) * N(a, _neg(d)), norm[bg])
            ag = _add(a, _neg(g))
            if ag in roots:
                total += Fraction(N(_neg(g), a) * N(b, _neg(d)), norm[ag])
            val = Fraction(norm[xi], ngd) * total
            if val.denominator != 1:
                raise ConstructionError(f"non-integral N for special pair {a}, {b}")
            Npos[(a, b)] = int(val)
            Npos[(b, a)] = -int(val)
    full = {}
    for a in rs.roots:
        for b in rs.roots:
            if _add(a, b) in roots:
                full[(a, b)] = N(a, b)
    return full, extraspecial


def _root_label(r) -> str:
    parts = []
    for i, c in enumerate(r):
        if c:
            parts.append(f"alpha{i + 1}" if c == 1 else f"{c}alpha{i + 1}")
    return "+".join(parts)


@dataclass(eq=False)
class ChevalleyAlgebra:
    """A simple Lie algebra given by integer structure constants in a Chevalley basis."""

    root_system: RootSystem
    table: dict[tuple[int, int], dict[int, int]] = field(repr=False)
    N: dict[tuple, int] = field(repr=False, default_factory=dict)
    extraspecial: dict[tuple, tuple] = field(repr=False, default_factory=dict)

    @property
    def cartan_type(self) -> CartanType:
        return self.root_system.cartan_type

    @property
    def rank(self) -> int:
        return self.root_system.rank

    @property
    def num_positive(self) -> int:
        return len(self.root_system.positive)

    @property
    def dimension(self) -> int:
        return self.rank + 2 * self.num_positive

    # -- basis bookkeeping -------------------------------------------------
    def x_index(self, alpha) -> int:
        return self.rank + self.root_system.positive_index[tuple(alpha)]

    def y_index(self, alpha) -> int:
        return self.rank + self.num_positive + self.root_system.positive_index[tuple(alpha)]

    def e_index(self, alpha) -> int:
        """Index of ``e_alpha`` for any root ``alpha``."""
        alpha = tuple(alpha)
        if _is_pos(alpha):
            return self.x_index(alpha)
        return self.y_index(_neg(alpha))

    @cached_property
    def weights(self) -> list[tuple[int, ...]]:
        """Root (or zero) weight of each basis vector."""
        zero = (0,) * self.rank
        pos = self.root_system.positive
        return [zero] * self.rank + list(pos) + [_neg(r) for r in pos]

    @cached_property
    def labels(self) -> list[str]:
        pos = self.root_system.positive
        return (
            [f"h{i + 1}" for i in range(self.rank)]
            + [f"x:{_root_label(r)}" for r in pos]
            + [f"y:{_root_label(r)}" for r in pos]
        )

    @cached_property
    def cartan_indices(self) -> list[int]:
        return list(range(self.rank))

    # -- brackets ----------------------------------------------------------
    def bracket_basis(self, i: int, j: int) -> dict[int, int]:
        return self.table.get((i, j), {})

    def bracket(self, u, v) -> dict:
        """Bracket of two sparse vectors ``{index: coeff}``."""
        out: dict[int, object] = {}
        for i, a in u.items():
            if not a:
                continue
            for j, b in v.items():
                if not b:
                    continue
                for k, c in self.table.get((i, j), {}).items():
                    out[k] = out.get(k, 0) + a * b * c
        return {k: v for k, v in out.items() if v}

    @cached_property
    def coo(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Structure constants ``C[i, j, k]`` as parallel int64 arrays."""
        I, J, K, V = [], [], [], []
        for (i, j), res in self.table.items():
            for k, v in res.items():
                I.append(i)
                J.append(j)
                K.append(k)
                V.append(v)
        return (np.array(I, dtype=np.int64), np.array(J, dtype=np.int64),
                np.array(K, dtype=np.int64), np.array(V, dtype=np.int64))

    @cached_property
    def bracket_matrix(self) -> sp.csr_matrix:
        """``n x n^2`` sparse matrix whose column ``i*n + j`` is ``[e_i, e_j]``."""
        n = self.dimension
        I, J, K, V = self.coo
        return sp.csr_matrix((V, (K, I * n + J)), shape=(n, n * n))

    @cached_property
    def ad_sparse(self) -> list[sp.csr_matrix]:
        n = self.dimension
        I, J, K, V = self.coo
        out = []
        order = np.argsort(I, kind="stable")
        I, J, K, V = I[order], J[order], K[order], V[order]
        bounds = np.searchsorted(I, np.arange(n + 1))
        for i in range(n):
            s, e = bounds[i], bounds[i + 1]
            out.append(sp.csr_matrix((V[s:e], (K[s:e], J[s:e])), shape=(n, n)))
        return out

    def ad_int(self, v) -> np.ndarray:
        """Dense int64 matrix of ``ad(sum v_i e_i)`` for an integer vector ``v``."""
        n = self.dimension
        v = np.asarray(v, dtype=np.int64)
        I, J, K, V = self.coo
        M = np.zeros((n, n), dtype=np.int64)
        np.add.at(M, (K, J), V * v[I])
        return M

    @cached_property
    def killing_matrix(self) -> np.ndarray:
        """Gram matrix of the Killing form ``tr(ad a ad b)`` (int64)."""
        n = self.dimension
        I, J, K, V = self.coo
        F = sp.csr_matrix((V, (I, K * n + J)), shape=(n, n * n))
        G = sp.csr_matrix((V, (I, J * n + K)), shape=(n, n * n))
        return np.asarray((F @ G.T).todense(), dtype=np.int64)

    # -- audits ----------------------------------------------------------------
    def jacobi_violations(self) -> int:
        """Number of basis triples/components where the Jacobi identity fails."""
        n = self.dimension
        I, J, K, V = self.coo
        order = np.argsort(I, kind="stable")
        I2, J2, K2, V2 = I[order], J[order], K[order], V[order]
        counts = np.bincount(I2, minlength=n)
        starts = np.concatenate([[0], np.cumsum(counts)[:-1]])
        reps = counts[K]
        total = int(reps.sum())
        if total == 0:
            return 0
        first = np.repeat(np.arange(len(K)), reps)
        offs = np.arange(total) - np.repeat(np.cumsum(reps) - reps, reps)
        second = starts[K[first]] + offs
        a, b = I[first], J[first]
        c, m = J2[second], K2[second]
        val = V[first] * V2[second]
        n2 = np.int64(n)

        def key(p, q, r):
            return ((p * n2 + q) * n2 + r) * n2 + m

        keys = np.concatenate([key(a, b, c), key(c, a, b), key(b, c, a)])
        vals = np.concatenate([val, val, val])
        uniq, inv = np.unique(keys, return_inverse=True)
        sums = np.zeros(len(uniq), dtype=np.int64)
        np.add.at(sums, inv, vals)
        return int(np.count_nonzero(sums))

    def sl2_triple_failures(self) -> list[str]:
        rs = self.root_system
        bad = []
        for alpha in rs.positive:
            xi, yi = self.x_index(alpha), self.y_index(alpha)
            h = {k: c for k, c in enumerate(rs.coroot_coefficients(alpha)) if c}
            if self.bracket({xi: 1}, {yi: 1}) != h:
                bad.append(f"[x,y] != h for {alpha}")
            if self.bracket(h, {xi: 1}) != {xi: 2}:
                bad.append(f"[h,x] != 2x for {alpha}")
            if self.bracket(h, {yi: 1}) != {yi: -2}:
                bad.append(f"[h,y] != -2y for {alpha}")
        for k, w in enumerate(self.weights[self.rank:], start=self.rank):
            for i in range(self.rank):
                if self.bracket({i: 1}, {k: 1}) != ({k: rs.pairing(w, i)} if rs.pairing(w, i) else {}):
                    bad.append(f"[h{i + 1}, e] wrong weight at basis {k}")
        return bad

    def string_length_failures(self) -> list[tuple]:
        rs = self.root_system
        return [
            (a, b) for (a, b), v in self.N.items() if abs(v) != rs.string_down(a, b) + 1
        ]

    def killing_audit(self) -> dict:
        K = self.killing_matrix
        symmetric = bool(np.array_equal(K, K.T))
        invariant = True
        for A in self.ad_sparse:
            R = A.T @ K + (A.T @ K).T
            if np.any(R):
                invariant = False
                break
        import flint

        d = int(flint.fmpz_mat(K.tolist()).det())
        return {"symmetric": symmetric, "invariant": invariant, "determinant_nonzero": d != 0}

    def audit(self) -> dict:
        jac = self.jacobi_violations()
        sl2 = self.sl2_triple_failures()
        strings = self.string_length_failures()
        kil = self.killing_audit()
        return {
            "type": str(self.cartan_type),
            "dimension": self.dimension,
            "jacobi": jac == 0,
            "sl2_triples": not sl2,
            "string_lengths": not strings,
            "killing_symmetric": kil["symmetric"],
            "killing_invariant": kil["invariant"],
            "killing_nondegenerate": kil["determinant_nonzero"],
            "passed": jac == 0 and not sl2 and not strings and all(kil.values()),
        }

    # -- serialisation -------------------------------------------------------
    def to_json(self) -> dict:
        entries = []
        for (i, j) in sorted(self.table):
            if i < j:
                for k, v in sorted(self.table[(i, j)].items()):
                    entries.append([i, j, k, v])
        return {
            "schemaVersion": 1,
            "type": str(self.cartan_type),
            "basis": self.labels,
            "structureConstants": entries,
        }

    @classmethod
    def from_json(cls, data: dict) -> "ChevalleyAlgebra":
        rs = root_system(CartanType.parse(data["type"]))
        table: dict[tuple[int, int], dict[int, int]] = defaultdict(dict)
        for i, j, k, v in data["structureConstants"]:
            table[(i, j)][k] = v
            table[(j, i)][k] = -v
        alg = cls(rs, dict(table))
        if alg.labels != data["basis"]:
            raise ValueError("basis labels do not match the declared type")
        return alg


@lru_cache(maxsize=None)
def build_algebra(t) -> ChevalleyAlgebra:
    rs = root_system(CartanType.parse(t))
    N, extraspecial = _structure_constants(rs)
    r, P = rs.rank, len(rs.positive)
    weights = [(0,) * r] * r + list(rs.positive) + [_neg(a) for a in rs.positive]
    pos_index = rs.positive_index

    def e_idx(a):
        return r + pos_index[a] if _is_pos(a) else r + P + pos_index[_neg(a)]

    table: dict[tuple[int, int], dict[int, int]] = {}
    n = r + 2 * P
    for i in range(r):
        for k in range(r, n):
            c = rs.pairing(weights[k], i)
            if c:
                table[(i, k)] = {k: c}
                table[(k, i)] = {k: -c}
    for a in rs.roots:
        ia = e_idx(a)
        na = _neg(a)
        table[(ia, e_idx(na))] = {i: c for i, c in enumerate(rs.coroot_coefficients(a)) if c}
    for (a, b), v in N.items():
        if v:
            table[(e_idx(a), e_idx(b))] = {e_idx(_add(a, b)): v}
    return ChevalleyAlgebra(rs, table, N, extraspecial)


def ad_matrix(alg: ChevalleyAlgebra, X) -> np.ndarray:
    """Exact matrix of ``[X, .]`` in the Chevalley basis."""
    X = [exact(v) for v in X]
    if len(X) != alg.dimension:
        raise ValueError("coefficient vector has the wrong length")
    n = alg.dimension
    M = zeros(n, n)
    for (i, j), res in alg.table.items():
        if X[i]:
            for k, c in res.items():
                M[k, j] = M[k, j] + X[i] * c
    return M


@dataclass(eq=False)
class AlgebraMap:
    """A linear endomorphism of an algebra, as a matrix on its basis."""

    matrix: np.ndarray
    label: str = ""

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix)

    def __neg__(self) -> "AlgebraMap":
        return AlgebraMap(-self.matrix, f"-{self.label}" if self.label else "")

    def __matmul__(self, other: "AlgebraMap") -> "AlgebraMap":
        return AlgebraMap(self.matrix.dot(other.matrix), f"{self.label}*{other.label}")

    def _sparse(self) -> sp.csr_matrix | None:
        if self.matrix.dtype.kind in "iu" or all(isinstance(v, (int, np.integer)) for v in self.matrix.flat):
            return sp.csr_matrix(self.matrix.astype(np.int64))
        return None

    def bracket_defect(self, alg: ChevalleyAlgebra) -> tuple[int, int] | None:
        """First basis pair ``(i, j)`` with ``M[e_i, e_j] != [M e_i, M e_j]``, or ``None``."""
        n = alg.dimension
        S = self._sparse()
        if S is not None:
            C = alg.bracket_matrix
            D = (S @ C - C @ sp.kron(S, S, format="csr")).tocoo()
            D.eliminate_zeros()
            if D.nnz == 0:
                return None
            col = int(D.col.min())
            return divmod(col, n)
        M = self.matrix
        cols = [{k: exact(M[k, j]) for k in range(n) if M[k, j]} for j in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                lhs: dict = {}
                for k, c in alg.table.get((i, j), {}).items():
                    for kk, v in cols[k].items():
                        lhs[kk] = lhs.get(kk, 0) + c * v
                lhs = {k: v for k, v in lhs.items() if v}
                if lhs != alg.bracket(cols[i], cols[j]):
                    return (i, j)
        return None

    def is_automorphism(self, alg: ChevalleyAlgebra) -> bool:
        return self.bracket_defect(alg) is None

    def order(self, limit: int = 64) -> int | None:
        n = self.matrix.shape[0]
        eye = np.eye(n, dtype=np.int64)
        P = self.matrix
        for k in range(1, limit + 1):
            if np.array_equal(np.asarray(P, dtype=object), eye.astype(object)):
                return k
            P = P.dot(self.matrix)
        return None


def chevalley_involution(alg: ChevalleyAlgebra) -> AlgebraMap:
    """psi: ``h -> -h`` and ``x_a <-> -y_a`` on simple roots, propagated through brackets."""
    rs = alg.root_system
    r, n = alg.rank, alg.dimension
    images: dict[int, dict[int, int]] = {}
    for i in range(r):
        images[i] = {i: -1}
    for a in rs.simple:
        images[alg.x_index(a)] = {alg.y_index(a): -1}
        images[alg.y_index(a)] = {alg.x_index(a): -1}
    for xi in rs.positive[r:]:
        g, d = alg.extraspecial[xi]
        for sign, idx, gi, di in (
            (1, alg.x_index(xi), alg.x_index(g), alg.x_index(d)),
            (-1, alg.y_index(xi), alg.y_index(g), alg.y_index(d)),
        ):
            nval = alg.N[(g, d)] if sign == 1 else alg.N[(_neg(g), _neg(d))]
            expect = alg.bracket({gi: 1}, {di: 1})
            if expect != {idx: nval}:
                raise ConstructionError(f"root vector for {xi} is not the extraspecial bracket")
            img = alg.bracket(images[gi], images[di])
            img = {k: Fraction(v, nval) for k, v in img.items()}
            target = alg.y_index(xi) if sign == 1 else alg.x_index(xi)
            if set(img) != {target} or img[target] not in (1, -1):
                raise ConstructionError(f"psi propagation inconsistent at {xi}: {img}")
            images[idx] = {target: int(img[target])}
    M = np.zeros((n, n), dtype=np.int64)
    for j, col in images.items():
        for k, v in col.items():
            M[k, j] = v
    psi = AlgebraMap(M, "psi")
    if not np.array_equal(M @ M, np.eye(n, dtype=np.int64)):
        raise ConstructionError("psi does not square to the identity")
    return psi


def psi_signs(alg: ChevalleyAlgebra, psi: AlgebraMap) -> dict[tuple, int]:
    """``eps_beta`` with ``psi(x_beta) = eps_beta * y_beta``."""
    return {b: int(psi.matrix[alg.y_index(b), alg.x_index(b)]) for b in alg.root_system.positive}


# -- trace-form invariants ----------------------------------------------------

def _ad_polynomial_rows(alg: ChevalleyAlgebra) -> list[dict[int, Polynomial]]:
    n = alg.dimension
    rows: list[dict[int, dict[int, int]]] = [defaultdict(dict) for _ in range(n)]
    for (i, j), res in alg.table.items():
        for k, c in res.items():
            rows[k][j][i] = rows[k][j].get(i, 0) + c
    out = []
    for k in range(n):
        out.append({
            j: Polynomial.linear_form([lin.get(i, 0) for i in range(n)])
            for j, lin in rows[k].items()
            if any(lin.values())
        })
    return out


def _rows_mul(A: list[dict], B: list[dict]) -> list[dict]:
    out = []
    for row in A:
        acc: dict[int, Polynomial] = {}
        for k, a in row.items():
            for j, b in B[k].items():
                prod = a * b
                acc[j] = acc[j] + prod if j in acc else prod
        out.append({j: v for j, v in acc.items() if v})
    return out


def trace_form(alg: ChevalleyAlgebra, k: int, max_rank: int = SYMBOLIC_RANK_BOUND) -> Polynomial:
    """``p_k(X) = tr((ad X)^k)`` as an explicit polynomial in the basis coordinates."""
    if k < 1:
        raise ValueError("trace forms need k >= 1")
    if alg.rank > max_rank:
        raise ValueError(
            f"symbolic trace forms are limited to rank <= {max_rank}; use trace_form_values"
        )
    n = alg.dimension
    M = _ad_polynomial_rows(alg)
    powers = {1: M}
    a = k // 2
    b = k - a
    for e in range(2, max(a, b) + 1):
        powers[e] = _rows_mul(powers[e - 1], M)
    if a == 0:
        total = Polynomial.zero(n)
        for c in range(n):
            if c in M[c]:
                total = total + M[c][c]
        return total
    A, B = powers[a], powers[b]
    total = Polynomial.zero(n)
    for c in range(n):
        for d, p in A[c].items():
            q = B[d].get(c)
            if q is not None:
                total = total + p * q
    return total


def _newton_power_sums(coeffs: list[int], K: int) -> list[int]:
    """Power sums ``p_1..p_K`` of the roots of ``t^n + c1 t^{n-1} + ...``."""
    n = len(coeffs) - 1
    c = [coeffs[j] if j <= n else 0 for j in range(K + 1)]
    p = [0] * (K + 1)
    for k in range(1, K + 1):
        s = -k * c[k]
        for i in range(1, k):
            s -= c[i] * p[k - i]
        p[k] = s
    return p


def _split_point(point) -> tuple[list[int], list[int], int]:
    """Write a Q(i) vector as ``(u + i w) / D`` with integer ``u, w``."""
    from math import lcm

    from .exactcore import GaussianRational

    vals = [exact(v) for v in point]
    dens = []
    for v in vals:
        if isinstance(v, GaussianRational):
            dens += [v.re.denominator, v.im.denominator]
        else:
            dens.append(Fraction(v).denominator)
    D = lcm(*dens) if dens else 1
    u, w = [], []
    for v in vals:
        if isinstance(v, GaussianRational):
            u.append(int(v.re * D))
            w.append(int(v.im * D))
        else:
            u.append(int(Fraction(v) * D))
            w.append(0)
    return u, w, D


def trace_form_values(alg: ChevalleyAlgebra, point, degrees) -> dict[int, object]:
    """Exact ``tr((ad X)^k)`` at one point for each ``k`` in ``degrees``.

    Real points use the FLINT characteristic polynomial and Newton's
    identities; points with imaginary parts use exact matrix powers over Z[i].
    """
    import flint

    degrees = sorted(set(degrees))
    K = max(degrees)
    u, w, D = _split_point(point)
    if not any(w):
        chi = flint.fmpz_mat(alg.ad_int(u).tolist()).charpoly()
        coeffs = [int(c) for c in reversed(chi.coeffs())]
        p = _newton_power_sums(coeffs, K)
        return {k: exact(Fraction(p[k], D ** k)) for k in degrees}
    from .exactcore import GaussianRational

    Ar = flint.fmpz_mat(alg.ad_int(u).tolist())
    Ai = flint.fmpz_mat(alg.ad_int(w).tolist())
    Pr, Pi = Ar, Ai
    out = {}
    for k in range(1, K + 1):
        if k > 1:
            Pr, Pi = Pr * Ar - Pi * Ai, Pr * Ai + Pi * Ar
        if k in degrees:
            tr_r = sum(int(Pr[i, i]) for i in range(Pr.nrows()))
            tr_i = sum(int(Pi[i, i]) for i in range(Pi.nrows()))
            out[k] = exact(GaussianRational(Fraction(tr_r, D ** k), Fraction(tr_i, D ** k)))
    return out


def random_integer_point(n: int, rng: random.Random, bound: int = 100) -> list[int]:
    return [rng.randint(-bound, bound) for _ in range(n)]


def random_rational_point(n: int, rng: random.Random, bound: int = 100) -> list[Fraction]:
    """Random point with a shared denominator: numerators and denominator at most ``bound``."""
    D = rng.randint(1, bound)
    return [exact(Fraction(rng.randint(-bound, bound), D)) for _ in range(n)]


def restrict_to_cartan(alg: ChevalleyAlgebra, p: Polynomial) -> Polynomial:
    """Set every root-space coordinate to zero; result is a polynomial on the Cartan."""
    if p.arity != alg.dimension:
        raise ValueError("polynomial does not live on this algebra")
    r = alg.rank
    images = Polynomial.variables(r) + [Polynomial.zero(r)] * (alg.dimension - r)
    return p.substitute(images)


def cartan_trace_form(alg: ChevalleyAlgebra, k: int) -> Polynomial:
    """``sum over roots of alpha(h)^k`` in the coordinates of ``h = sum a_i h_i``."""
    rs = alg.root_system
    r = alg.rank
    total = Polynomial.zero(r)
    for alpha in rs.roots:
        lin = Polynomial.linear_form([rs.pairing(alpha, i) for i in range(r)])
        total = total + lin ** k
    return total


def cartan_reflection(alg: ChevalleyAlgebra, i: int) -> np.ndarray:
    """Matrix of the simple reflection ``s_i`` on Cartan coordinates."""
    A = alg.root_system.cartan
    r = alg.rank
    T = np.eye(r, dtype=np.int64).astype(object)
    for j in range(r):
        T[i, j] -= A[j][i]
    return T
