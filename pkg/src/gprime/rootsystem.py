"""Root systems of the simple Lie algebras, their Weyl groups and invariant degrees.

Conventions
-----------
* Simple roots are numbered as in Bourbaki, except that for G2 the *first*
  simple root is the long one.
* ``cartan_matrix(t)[i][j] = <alpha_j, alpha_i^vee> = alpha_j(h_i)``, so G2 is
  ``[[2, -1], [-3, 2]]``.
* Roots are integer coordinate vectors in the basis of simple roots.
* Positive roots are ordered by height, then so that ``alpha_1`` precedes
  ``alpha_2`` and so on (lexicographically decreasing coordinate tuples).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, lcm, prod

import numpy as np

from .exactcore.linalg import charpoly

__all__ = [
    "CartanType",
    "RootSystem",
    "WeylElement",
    "GroupTooLargeError",
    "DEFAULT_WEYL_CAP",
    "admissible_types",
    "cartan_matrix",
    "positive_roots",
    "root_system",
    "weyl_enumerate",
    "longest_element",
    "coxeter_element",
    "invariant_degrees",
    "molien_series",
    "molien_degrees",
    "is_self_dual_type",
    "cyclotomic",
]

DEFAULT_WEYL_CAP = 51_840


class GroupTooLargeError(RuntimeError):
    """Raised when Weyl-group enumeration would exceed the configured cap."""


_MIN_RANK = {"A": 1, "B": 1, "C": 2, "D": 3}


@dataclass(frozen=True, order=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        fam = self.family.upper()
        object.__setattr__(self, "family", fam)
        n = self.rank
        ok = (
            (fam in _MIN_RANK and n >= _MIN_RANK[fam])
            or (fam == "E" and n in (6, 7, 8))
            or (fam == "F" and n == 4)
            or (fam == "G" and n == 2)
        )
        if not ok:
            raise ValueError(f"inadmissible Cartan type {fam}{n}")

    @classmethod
    def parse(cls, text) -> "CartanType":
        if isinstance(text, CartanType):
            return text
        m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", str(text))
        if m is None:
            raise ValueError(f"cannot parse Cartan type {text!r}")
        return cls(m.group(1), int(m.group(2)))

    @property
    def is_classical(self) -> bool:
        return self.family in "ABCD"

    def __str__(self):
        return f"{self.family}{self.rank}"


def admissible_types(max_rank: int = 8) -> list[CartanType]:
    out = []
    for fam in "ABCD":
        out += [CartanType(fam, n) for n in range(_MIN_RANK[fam], max_rank + 1)]
    out += [CartanType("E", n) for n in (6, 7, 8) if n <= max_rank]
    if max_rank >= 4:
        out.append(CartanType("F", 4))
    if max_rank >= 2:
        out.append(CartanType("G", 2))
    return out


def _gram(t: CartanType) -> list[list[int]]:
    """Symmetric matrix of inner products of simple roots (short roots have length^2 2)."""
    n, fam = t.rank, t.family
    B = [[0] * n for _ in range(n)]

    def link(i, j, v):
        B[i][j] = B[j][i] = v

    if fam == "A":
        for i in range(n):
            B[i][i] = 2
        for i in range(n - 1):
            link(i, i + 1, -1)
    elif fam == "B":
        for i in range(n):
            B[i][i] = 4
        B[n - 1][n - 1] = 2
        for i in range(n - 1):
            link(i, i + 1, -2)
    elif fam == "C":
        for i in range(n):
            B[i][i] = 2
        B[n - 1][n - 1] = 4
        for i in range(n - 2):
            link(i, i + 1, -1)
        if n >= 2:
            link(n - 2, n - 1, -2)
    elif fam == "D":
        for i in range(n):
            B[i][i] = 2
        for i in range(n - 2):
            link(i, i + 1, -1)
        link(n - 3, n - 1, -1)
    elif fam == "E":
        for i in range(n):
            B[i][i] = 2
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]
        for i, j in edges:
            link(i, j, -1)
    elif fam == "F":
        B = [[4, -2, 0, 0], [-2, 4, -2, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    elif fam == "G":
        B = [[6, -3], [-3, 2]]
    return B


def cartan_matrix(t) -> list[list[int]]:
    t = CartanType.parse(t)
    B = _gram(t)
    n = t.rank
    return [[2 * B[i][j] // B[i][i] for j in range(n)] for i in range(n)]


Root = tuple[int, ...]


@dataclass(eq=False)
class WeylElement:
    """Weyl group element as an integer matrix on root-lattice coordinates.

    ``matrix[:, j]`` is the image of the j-th simple root; ``word`` is a
    reduced expression ``s_{word[0]} s_{word[1]} ...`` (0-based indices).
    """

    matrix: np.ndarray
    word: tuple[int, ...] = ()

    def __eq__(self, other):
        return isinstance(other, WeylElement) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.astype(np.int64).tobytes())

    def __call__(self, v) -> Root:
        return tuple(int(x) for x in self.matrix @ np.asarray(v, dtype=np.int64))

    def __matmul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(self.matrix @ other.matrix, self.word + other.word)

    @property
    def length(self) -> int:
        return len(self.word)

    def is_minus_identity(self) -> bool:
        n = self.matrix.shape[0]
        return np.array_equal(self.matrix, -np.eye(n, dtype=self.matrix.dtype))


@dataclass(eq=False)
class RootSystem:
    cartan_type: CartanType
    cartan: list[list[int]]
    gram: list[list[int]]
    positive: list[Root] = field(repr=False)

    @property
    def rank(self) -> int:
        return self.cartan_type.rank

    @property
    def simple(self) -> list[Root]:
        return self.positive[: self.rank]

    @cached_property
    def roots(self) -> list[Root]:
        return self.positive + [tuple(-c for c in r) for r in self.positive]

    @cached_property
    def root_set(self) -> frozenset:
        return frozenset(self.roots)

    @cached_property
    def positive_index(self) -> dict[Root, int]:
        return {r: k for k, r in enumerate(self.positive)}

    @property
    def num_positive(self) -> int:
        return len(self.positive)

    @property
    def algebra_dimension(self) -> int:
        return self.rank + 2 * len(self.positive)

    def is_root(self, v) -> bool:
        return tuple(v) in self.root_set

    def inner(self, a, b) -> int:
        return sum(a[i] * self.gram[i][j] * b[j] for i in range(self.rank) for j in range(self.rank) if a[i] and b[j])

    def pairing(self, beta, i: int) -> int:
        """``<beta, alpha_i^vee> = beta(h_i)``."""
        return sum(beta[j] * self.cartan[i][j] for j in range(self.rank))

    def coroot_coefficients(self, alpha) -> tuple[int, ...]:
        """Coefficients of ``h_alpha`` in the basis ``h_1 .. h_r`` of simple coroots."""
        na = self.inner(alpha, alpha)
        out = []
        for i in range(self.rank):
            c = Fraction(alpha[i] * self.gram[i][i], na)
            if c.denominator != 1:
                raise ArithmeticError("non-integral coroot expansion")
            out.append(int(c))
        return tuple(out)

    def string_down(self, alpha, beta) -> int:
        """Largest ``p`` with ``beta - p*alpha`` a root."""
        p = 0
        while self.is_root(tuple(b - (p + 1) * a for a, b in zip(alpha, beta))):
            p += 1
        return p

    @cached_property
    def reflections(self) -> list[np.ndarray]:
        out = []
        for i in range(self.rank):
            S = np.eye(self.rank, dtype=np.int64)
            S[i, :] -= np.asarray(self.cartan[i], dtype=np.int64)
            out.append(S)
        return out

    def is_positive(self, v) -> bool:
        return any(v) and all(c >= 0 for c in v)


def _order_key(r: Root):
    return (sum(r), tuple(-c for c in r))


def _closure(cartan: list[list[int]]) -> list[Root]:
    n = len(cartan)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    known = set(simple)
    layer = list(simple)
    while layer:
        nxt = set()
        for beta in layer:
            for i in range(n):
                if beta == simple[i]:
                    continue
                r = 0
                while True:
                    cand = tuple(b - (r + 1) * (1 if j == i else 0) for j, b in enumerate(beta))
                    if cand in known:
                        r += 1
                    else:
                        break
                pair = sum(beta[j] * cartan[i][j] for j in range(n))
                q = r - pair
                if q > 0:
                    up = tuple(b + (1 if j == i else 0) for j, b in enumerate(beta))
                    nxt.add(up)
        nxt -= known
        known |= nxt
        layer = sorted(nxt, key=_order_key)
    return sorted(known, key=_order_key)


@lru_cache(maxsize=None)
def root_system(t) -> RootSystem:
    t = CartanType.parse(t)
    A = cartan_matrix(t)
    return RootSystem(t, A, _gram(t), _closure(A))


def positive_roots(t) -> RootSystem:
    """Root system of ``t`` with its positive roots closed from the simple ones."""
    return root_system(t)


def weyl_enumerate(rs: RootSystem, cap: int = DEFAULT_WEYL_CAP) -> list[WeylElement]:
    """All of W by breadth-first search over right multiplication by simple reflections."""
    n = rs.rank
    gens = rs.reflections
    prev_keys: set[bytes] = set()
    cur = np.eye(n, dtype=np.int64)[None, :, :]
    cur_words: list[tuple[int, ...]] = [()]
    out = [WeylElement(cur[0], ())]
    while True:
        cands = np.concatenate([cur @ S for S in gens], axis=0)
        words = [w + (i,) for i in range(n) for w in cur_words]
        flat = cands.reshape(len(cands), -1)
        _, idx = np.unique(flat, axis=0, return_index=True)
        idx.sort()
        nxt, nxt_words, keys = [], [], set()
        for k in idx:
            key = flat[k].tobytes()
            if key in prev_keys:
                continue
            keys.add(key)
            nxt.append(cands[k])
            nxt_words.append(words[k])
        if not nxt:
            break
        if len(out) + len(nxt) > cap:
            raise GroupTooLargeError(
                f"Weyl group of {rs.cartan_type} has more than {cap} elements"
            )
        out.extend(WeylElement(m, w) for m, w in zip(nxt, nxt_words))
        prev_keys = {c.tobytes() for c in cur.reshape(len(cur), -1)}
        cur = np.stack(nxt)
        cur_words = nxt_words
    return out


def longest_element(rs: RootSystem) -> WeylElement:
    """w0 by greedy ascent: right-multiply by s_i while ``w(alpha_i) > 0``."""
    n = rs.rank
    w = np.eye(n, dtype=np.int64)
    word: list[int] = []
    while True:
        for i in range(n):
            col = w[:, i]
            if col.min() >= 0:
                w = w @ rs.reflections[i]
                word.append(i)
                break
        else:
            return WeylElement(w, tuple(word))


def coxeter_element(rs: RootSystem) -> WeylElement:
    w = np.eye(rs.rank, dtype=np.int64)
    for S in rs.reflections:
        w = w @ S
    return WeylElement(w, tuple(range(rs.rank)))


# -- integer polynomials, highest coefficient first ----------------------

def _pdivmod(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    a = list(a)
    if b[0] not in (1, -1):
        raise ValueError("divisor must be monic")
    q = []
    while len(a) >= len(b):
        c = a[0] * b[0]
        q.append(c)
        for k in range(len(b)):
            a[k] -= c * b[k]
        a.pop(0)
    while a and a[0] == 0:
        a.pop(0)
    return q, a


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> tuple[int, ...]:
    """Coefficients (leading first) of the d-th cyclotomic polynomial."""
    num = [1] + [0] * (d - 1) + [-1]
    for k in range(1, d):
        if d % k == 0:
            num, r = _pdivmod(num, list(cyclotomic(k)))
            assert not r
    return tuple(num)


def _cyclotomic_factorization(poly: list[int], max_order: int) -> dict[int, int]:
    poly = list(poly)
    mult: dict[int, int] = {}
    for d in range(1, max_order + 1):
        phi = list(cyclotomic(d))
        while len(poly) >= len(phi):
            q, r = _pdivmod(poly, phi)
            if r:
                break
            mult[d] = mult.get(d, 0) + 1
            poly = q
        if len(poly) == 1:
            break
    if poly != [1]:
        raise ArithmeticError("characteristic polynomial is not a product of cyclotomics")
    return mult


def coxeter_exponents(t) -> tuple[list[int], int]:
    """Exponents ``m_k`` and the Coxeter number ``h`` from the Coxeter element."""
    rs = root_system(t)
    c = coxeter_element(rs)
    chi = [int(v) for v in charpoly(c.matrix.astype(object))]
    mult = _cyclotomic_factorization(chi, 2 * len(rs.positive) + 2)
    if 1 in mult:
        raise ArithmeticError("Coxeter element has eigenvalue 1")
    h = lcm(*mult)
    exps = []
    for d, k in mult.items():
        for j in range(1, d):
            if gcd(j, d) == 1:
                exps += [(h // d) * j] * k
    return sorted(exps), h


def invariant_degrees(t) -> list[int]:
    """Degrees of the basic invariants of W (= exponents + 1), sorted."""
    exps, _ = coxeter_exponents(t)
    return [m + 1 for m in exps]


def _batch_charpolys(mats: np.ndarray) -> np.ndarray:
    """Rows ``[1, c1, .., cn]`` of ``det(xI - w)`` for a stack of integer matrices."""
    k, n, _ = mats.shape
    eye = np.broadcast_to(np.eye(n, dtype=np.int64), (k, n, n))
    out = np.zeros((k, n + 1), dtype=np.int64)
    out[:, 0] = 1
    M = eye.copy()
    for j in range(1, n + 1):
        AM = mats @ M
        tr = np.trace(AM, axis1=1, axis2=2)
        if np.any(tr % j):
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        c = -tr // j
        out[:, j] = c
        M = AM + c[:, None, None] * eye
    return out


def molien_series(rs: RootSystem, order: int, cap: int = DEFAULT_WEYL_CAP) -> list[Fraction]:
    """Coefficients of the Molien series of W on the Cartan up to ``t^order``.

    ``det(I - t w)`` has coefficients equal to those of ``det(x I - w)`` read
    in ascending powers of ``t``, so the batch characteristic polynomials can
    be reused directly.
    """
    elems = weyl_enumerate(rs, cap)
    mats = np.stack([e.matrix for e in elems])
    polys = _batch_charpolys(mats)
    uniq, counts = np.unique(polys, axis=0, return_counts=True)
    total = [0] * (order + 1)
    for q, cnt in zip(uniq.tolist(), counts.tolist()):
        inv = [0] * (order + 1)
        inv[0] = 1
        for j in range(1, order + 1):
            s = 0
            for k in range(1, min(j, len(q) - 1) + 1):
                s += q[k] * inv[j - k]
            inv[j] = -s
        for j in range(order + 1):
            total[j] += cnt * inv[j]
    return [Fraction(v, len(elems)) for v in total]


def molien_degrees(rs: RootSystem, cap: int = DEFAULT_WEYL_CAP) -> list[int]:
    """Basic-invariant degrees read off the Molien series by peeling factors."""
    order = len(rs.positive) + 2
    S = molien_series(rs, order, cap)
    if S[0] != 1:
        raise ArithmeticError("Molien series does not start with 1")
    degrees: list[int] = []
    while len(degrees) < rs.rank:
        k = next((j for j in range(1, order + 1) if S[j]), None)
        if k is None:
            raise ArithmeticError("Molien series truncated too early")
        m = S[k]
        if m.denominator != 1 or m < 0:
            raise ArithmeticError(f"non-integral Molien coefficient {m}")
        for _ in range(int(m)):
            degrees.append(k)
            S = [S[j] - (S[j - k] if j >= k else 0) for j in range(order + 1)]
    return sorted(degrees)


_SELF_DUAL_ALIASES = {("A", 1): ("B", 1), ("C", 2): ("B", 2)}


def is_self_dual_type(t) -> bool:
    """Membership in the list B_n (n>=1), C_n (n>=3), D_2n (n>=2), E7, E8, F4, G2.

    A1 = B1 and C2 = B2 are identified with their B aliases.
    """
    t = CartanType.parse(t)
    fam, n = _SELF_DUAL_ALIASES.get((t.family, t.rank), (t.family, t.rank))
    if fam == "B":
        return n >= 1
    if fam == "C":
        return n >= 3
    if fam == "D":
        return n >= 4 and n % 2 == 0
    if fam == "E":
        return n in (7, 8)
    return fam in ("F", "G")


def weyl_order(t) -> int:
    return prod(invariant_degrees(t))
