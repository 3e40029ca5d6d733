"""Stabilizers of invariant generating sets.

Given generators ``p_1 .. p_s`` of an invariant ring on ``V``, the group
``{phi in GL(V) : p_i∘phi = p_i}`` is probed three ways:

* :func:`membership_test` decides whether one given map preserves every
  generator (exact polynomial composition, or exact evaluation at seeded
  random points for invariants that are only available as functions);
* :func:`lie_stabilizer` solves the linear system ``grad p(x)·(A x) == 0``
  coefficient by coefficient and returns a basis of its Lie algebra;
* :func:`scalar_subgroup` finds which scalings (per summand if a block
  decomposition is supplied) preserve the generators, via a Smith normal form
  of the degree matrix.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Sequence

import numpy as np

from .exactcore import I, Polynomial, exact, format_scalar, parse_scalar
from .exactcore.linalg import RowReducer, det, identity, inverse, zeros

__all__ = [
    "LinearMap",
    "SampledInvariant",
    "MembershipVerdict",
    "ScalarSubgroup",
    "StabilizerReport",
    "membership_test",
    "membership_verdict",
    "infinitesimal_defect",
    "lie_stabilizer",
    "lie_stabilizer_equations",
    "satisfies_stabilizer_equations",
    "smith_normal_form",
    "scalar_subgroup",
    "root_of_unity",
    "dixmier_check",
    "random_points",
]


# -- maps -----------------------------------------------------------------------

@dataclass(eq=False)
class LinearMap:
    """An endomorphism of ``V`` given by an exact square matrix."""

    matrix: np.ndarray
    label: str = ""

    def __post_init__(self):
        M = np.asarray(self.matrix, dtype=object)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise ValueError(f"linear map needs a square matrix, got shape {M.shape}")
        out = np.empty(M.shape, dtype=object)
        for idx, v in np.ndenumerate(M):
            out[idx] = exact(v)
        self.matrix = out

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls(identity(n), "identity")

    @classmethod
    def scalar(cls, n: int, value, label: str | None = None) -> "LinearMap":
        value = exact(value)
        return cls(identity(n) * value, label or f"scalar:{format_scalar(value)}")

    @classmethod
    def block_diagonal(cls, blocks: Sequence, label: str = "") -> "LinearMap":
        mats = [np.asarray(b, dtype=object) for b in blocks]
        n = sum(m.shape[0] for m in mats)
        out = zeros(n, n)
        k = 0
        for m in mats:
            d = m.shape[0]
            out[k:k + d, k:k + d] = m
            k += d
        return cls(out, label)

    def determinant(self):
        return det(self.matrix)

    def is_invertible(self) -> bool:
        return self.determinant() != 0

    def inverse(self) -> "LinearMap":
        return LinearMap(inverse(self.matrix), f"({self.label})^-1" if self.label else "")

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.matrix.dot(other.matrix), f"{self.label}*{other.label}")

    def __neg__(self) -> "LinearMap":
        return LinearMap(-self.matrix, f"-({self.label})" if self.label else "")

    def apply(self, v) -> list:
        return [exact(x) for x in self.matrix.dot(np.asarray([exact(c) for c in v], dtype=object))]

    def to_json(self) -> dict:
        return {
            "dim": self.dimension,
            "label": self.label,
            "entries": [[format_scalar(v) for v in row] for row in self.matrix],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LinearMap":
        if "entries" not in data:
            raise ValueError("map JSON needs an 'entries' field")
        rows = [[parse_scalar(str(v)) for v in row] for row in data["entries"]]
        m = cls(rows, data.get("label", ""))
        if "dim" in data and data["dim"] != m.dimension:
            raise ValueError(f"declared dim {data['dim']} but matrix is {m.dimension}x{m.dimension}")
        return m


# -- invariants known only as functions ---------------------------------------

@dataclass(eq=False)
class SampledInvariant:
    """An invariant available as an exact evaluator rather than as explicit terms.

    Used where expanding the polynomial is too expensive (trace forms above
    rank 2, char-poly coefficients of 9x9 matrices); identities involving it
    are checked by exact evaluation at seeded random points.
    """

    name: str
    arity: int
    degree: int
    evaluator: Callable[[Sequence], object] = field(repr=False)

    def evaluate(self, point):
        point = [exact(v) for v in point]
        if len(point) != self.arity:
            raise ValueError(f"point has length {len(point)}, expected {self.arity}")
        return exact(self.evaluator(point))

    __call__ = evaluate

    def is_homogeneous(self) -> bool:
        return True

    def degrees(self) -> set[int]:
        return {self.degree}


def _name(gen, k: int) -> str:
    if isinstance(gen, SampledInvariant):
        return gen.name
    return getattr(gen, "name", None) or f"generator {k + 1} (degree {gen.degree})"


def random_points(n: int, count: int, seed: int = 0, bound: int = 100) -> list[list]:
    """Seeded rational points; each shares one denominator, all parts bounded by ``bound``."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        d = rng.randint(1, bound)
        out.append([exact(Fraction(rng.randint(-bound, bound), d)) for _ in range(n)])
    return out


# -- membership -----------------------------------------------------------------

@dataclass
class MembershipVerdict:
    map_label: str
    member: bool
    failing: list[str]
    method: str

    def to_json(self) -> dict:
        return {"map": self.map_label, "member": self.member, "failingGenerators": self.failing, "method": self.method}


def membership_verdict(gens, phi: LinearMap, *, samples: int = 20, seed: int = 0,
                       names: Sequence[str] | None = None) -> MembershipVerdict:
    """Which generators does ``phi`` fail to preserve?"""
    n = phi.dimension
    for g in gens:
        if g.arity != n:
            raise ValueError(f"generator has arity {g.arity}, map acts on dimension {n}")
    failing = []
    sampled = False
    points = None
    images = None
    for k, g in enumerate(gens):
        label = names[k] if names else _name(g, k)
        if isinstance(g, SampledInvariant):
            sampled = True
            if points is None:
                points = random_points(n, samples, seed)
                images = [phi.apply(p) for p in points]
            if any(g(q) != g(p) for p, q in zip(points, images)):
                failing.append(label)
        elif g.compose(phi.matrix) != g:
            failing.append(label)
    method = f"exact evaluation at {samples} seeded points" if sampled else "exact composition"
    return MembershipVerdict(phi.label, not failing, failing, method)


def membership_test(gens, phi: LinearMap, *, samples: int = 20, seed: int = 0) -> bool:
    """True iff ``g∘phi == g`` for every generator."""
    return membership_verdict(gens, phi, samples=samples, seed=seed).member


# -- Lie stabilizer -------------------------------------------------------------

def infinitesimal_defect(p: Polynomial, A) -> Polynomial:
    """``grad p(x) · (A x)``; zero exactly when ``A`` is tangent to the stabilizer of ``p``."""
    n = p.arity
    A = np.asarray(A, dtype=object)
    total = Polynomial.zero(n)
    for a in range(n):
        row = [exact(v) for v in A[a]]
        if any(row):
            total = total + p.diff(a) * Polynomial.linear_form(row)
    return total


def lie_stabilizer_equations(gens: Sequence[Polynomial], dim: int) -> list[dict[int, object]]:
    """One linear equation in the entries ``A[a, b]`` (column ``a*dim + b``) per monomial."""
    rows: dict[tuple[int, int], dict[int, object]] = {}
    shift = [1 << (8 * b) for b in range(dim)]
    for gi, p in enumerate(gens):
        if isinstance(p, SampledInvariant):
            raise TypeError("the Lie stabilizer needs explicit polynomial generators")
        if p.arity != dim:
            raise ValueError("generator arity does not match the dimension")
        for a in range(dim):
            q = p.diff(a)
            for m, c in q._terms.items():
                for b in range(dim):
                    key = (gi, m + shift[b])
                    row = rows.setdefault(key, {})
                    col = a * dim + b
                    v = row.get(col, 0) + c
                    if v:
                        row[col] = v
                    else:
                        row.pop(col, None)
    return [rows[k] for k in sorted(rows) if rows[k]]


def lie_stabilizer(gens: Sequence[Polynomial], dim: int) -> list[np.ndarray]:
    """Basis of ``{A : grad p(x)·(A x) == 0 identically for every p in gens}``."""
    red = RowReducer(dim * dim)
    for row in lie_stabilizer_equations(gens, dim):
        red.add(row)
    out = []
    for vec in red.nullspace():
        M = zeros(dim, dim)
        for col, v in vec.items():
            M[col // dim, col % dim] = exact(v)
        out.append(M)
    return out


def satisfies_stabilizer_equations(gens, A) -> bool:
    return all(infinitesimal_defect(p, A).is_zero() for p in gens)


# -- scalar subgroups -----------------------------------------------------------

def smith_normal_form(M) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(U, S, V)`` with ``U @ M @ V == S`` diagonal, ``U, V`` unimodular, ``S[i,i] | S[i+1,i+1]``."""
    A = [[int(v) for v in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        A[dst] = [a - f * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a - f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for row in A:
            row[dst] -= f * row[src]
        for row in V:
            row[dst] -= f * row[src]

    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, q)
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, q)
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                    None,
                )
                if bad is not None:
                    add_row(t, bad[0], -1)
                    done = False
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            U[t] = [-v for v in U[t]]
        t += 1
    return np.array(U, dtype=object), np.array(A, dtype=object), np.array(V, dtype=object)


def root_of_unity(turn: Fraction):
    """``exp(2 pi i * turn)`` as an exact Q(i) value, or ``None`` if it is not in Q(i)."""
    turn = Fraction(turn) % 1
    return {Fraction(0): 1, Fraction(1, 2): -1, Fraction(1, 4): I, Fraction(3, 4): -I}.get(turn)


def _turn_text(turn: Fraction) -> str:
    v = root_of_unity(turn)
    if v is not None:
        return format_scalar(v)
    return f"exp(2*pi*i*{turn})"


@dataclass
class ScalarSubgroup:
    """Scalings that fix every generator.

    ``order`` describes ``{c in C* : p(c x) = p(x)}``: ``None`` means every
    scalar works.  When summand blocks were supplied, ``block_*`` describe the
    group of per-summand scalings ``(c_1, .., c_k)``: a torus of rank
    ``block_torus_rank`` times a finite group with the listed invariant
    factors, generated by ``block_generators`` (given as turn fractions).
    """

    order: int | None
    generator_turn: Fraction | None
    block_torus_rank: int | None = None
    block_invariant_factors: list[int] | None = None
    block_generators: list[tuple[Fraction, ...]] | None = None
    block_degrees: list[tuple[int, ...]] | None = None

    @property
    def all_scalars(self) -> bool:
        return self.order is None

    @property
    def generator(self):
        """Exact generator in Q(i), or ``None`` (all scalars, or not in Q(i))."""
        if self.generator_turn is None:
            return None
        return root_of_unity(self.generator_turn)

    def contains_turn(self, turn: Fraction) -> bool:
        if self.order is None:
            return True
        return (Fraction(turn) * self.order).denominator == 1

    def contains_block(self, turns) -> bool:
        """Does the per-summand scaling ``exp(2 pi i turns)`` fix every generator?"""
        if self.block_degrees is None:
            raise ValueError("no summand decomposition was supplied")
        return all(sum(Fraction(t) * d for t, d in zip(turns, row)).denominator == 1
                   for row in self.block_degrees)

    def contains(self, value) -> bool:
        value = exact(value)
        for k in range(4):
            if root_of_unity(Fraction(k, 4)) == value:
                return self.contains_turn(Fraction(k, 4))
        return False

    def describe(self) -> str:
        if self.order is None:
            return "all scalars"
        if self.order == 1:
            return "{1}"
        return f"mu_{self.order} generated by {_turn_text(self.generator_turn)}"

    def to_json(self) -> dict:
        out = {
            "allScalars": self.all_scalars,
            "order": self.order,
            "generator": None if self.generator_turn is None else _turn_text(self.generator_turn),
            "description": self.describe(),
        }
        if self.block_invariant_factors is not None:
            out["perSummand"] = {
                "torusRank": self.block_torus_rank,
                "invariantFactors": self.block_invariant_factors,
                "generators": [[_turn_text(t) for t in g] for g in self.block_generators],
            }
        return out


def _degree_vector(gen, blocks) -> tuple[int, ...]:
    if isinstance(gen, SampledInvariant):
        if blocks is not None:
            raise TypeError("per-summand degrees need explicit polynomial generators")
        return (gen.degree,)
    if blocks is None:
        ds = gen.degrees()
        if len(ds) != 1:
            raise ValueError("scalar subgroup needs homogeneous generators")
        return (ds.pop(),)
    starts = np.cumsum([0] + list(blocks))
    mds = gen.multidegrees([range(starts[i], starts[i + 1]) for i in range(len(blocks))])
    if len(mds) != 1:
        raise ValueError("scalar subgroup needs multi-homogeneous generators")
    return mds.pop()


def scalar_subgroup(gens, blocks: Sequence[int] | None = None) -> ScalarSubgroup:
    """Scalars (and per-summand scalings when ``blocks`` gives summand sizes) fixing ``gens``."""
    vecs = [_degree_vector(g, blocks) for g in gens]
    totals = [sum(v) for v in vecs]
    d = 0
    for t in totals:
        d = gcd(d, t)
    if not gens or d == 0:
        order, turn = None, None
    else:
        order, turn = d, Fraction(1, d)
    if blocks is None:
        return ScalarSubgroup(order, turn)
    k = len(blocks)
    if not vecs:
        return ScalarSubgroup(order, turn, k, [], [], [])
    U, S, V = smith_normal_form(vecs)
    diag = [int(S[i, i]) for i in range(min(S.shape))]
    torus = k - sum(1 for s in diag if s)
    factors, generators = [], []
    for j, s in enumerate(diag):
        if s > 1:
            factors.append(s)
            generators.append(tuple(Fraction(int(V[i, j]), s) % 1 for i in range(k)))
    return ScalarSubgroup(order, turn, torus, factors, generators, [tuple(v) for v in vecs])


# -- reports --------------------------------------------------------------------

def _matrix_json(M) -> list[list[str]]:
    return [[format_scalar(v) for v in row] for row in np.asarray(M, dtype=object)]


@dataclass
class StabilizerReport:
    """Everything known about the stabilizer of one generating set."""

    generator_set: str
    provenance: str
    generator_degrees: list
    verdicts: list[MembershipVerdict] = field(default_factory=list)
    lie_dimension: int | None = None
    lie_basis: list[np.ndarray] | None = None
    scalar_group: ScalarSubgroup | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self, include_basis: bool = True) -> dict:
        return {
            "generatorSet": self.generator_set,
            "generatingSetProvenance": self.provenance,
            "generatorDegrees": self.generator_degrees,
            "membership": [v.to_json() for v in self.verdicts],
            "lieStabilizerDimension": self.lie_dimension,
            "lieStabilizerBasis": (
                [_matrix_json(M) for M in self.lie_basis] if include_basis and self.lie_basis is not None else None
            ),
            "scalarSubgroup": None if self.scalar_group is None else self.scalar_group.to_json(),
            "notes": self.notes,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


# -- Dixmier check ---------------------------------------------------------------

def dixmier_check(t) -> dict:
    """Lie stabilizer of the classical generators versus ``ad(g)``, by exact span comparison."""
    from .chevalley import ad_matrix, build_algebra
    from .classical import classical_invariant_gens
    from .rootsystem import CartanType

    t = CartanType.parse(t)
    if not t.is_classical or t.rank > 3:
        raise ValueError("dixmier_check supports classical types of rank <= 3")
    alg = build_algebra(t)
    gens = list(classical_invariant_gens(t))
    n = alg.dimension
    stab = lie_stabilizer(gens, n)
    ads = []
    for k in range(n):
        e = [0] * n
        e[k] = 1
        ads.append(ad_matrix(alg, e))

    def flat(M):
        return {i: v for i, v in enumerate(np.asarray(M, dtype=object).reshape(-1)) if v}

    red = RowReducer(n * n)
    for M in stab:
        red.add(flat(M))
    stab_rank = red.rank
    ad_inside = all(not red.reduce(flat(A)) for A in ads)
    ad_red = RowReducer(n * n)
    for A in ads:
        ad_red.add(flat(A))
    return {
        "type": str(t),
        "dimension": n,
        "generatorDegrees": sorted(g.degree for g in gens),
        "lieStabilizerDimension": len(stab),
        "lieStabilizerRank": stab_rank,
        "adRank": ad_red.rank,
        "adContainedInStabilizer": ad_inside,
        "spansEqual": ad_inside and ad_red.rank == stab_rank,
        "passed": len(stab) == n and ad_inside and ad_red.rank == stab_rank,
    }

