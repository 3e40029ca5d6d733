"""Invariant generating sets for the adjoint representation, with provenance.

Which generators are used depends on the type:

* classical, rank <= 3: explicit char-poly coefficients (and Pfaffian) of the
  matrix realization;
* classical, rank >= 4: the same invariants, evaluated exactly at points;
* G2: explicit trace forms ``p_2, p_6``;
* F4, E6, E7, E8: trace forms of the nonvanishing (even) invariant degrees,
  evaluated exactly at points.  For E6 the odd degrees 5 and 9 are not
  represented, since every odd trace form vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .chevalley import (
    ChevalleyAlgebra,
    build_algebra,
    chevalley_involution,
    trace_form,
    trace_form_values,
)
from .classical import classical_invariant_gens, realize
from .engine import LinearMap, SampledInvariant, membership_verdict
from .exactcore import exact
from .exactcore.linalg import charpoly
from .rootsystem import CartanType, invariant_degrees

__all__ = [
    "GeneratorSet",
    "adjoint_generators",
    "trace_form_invariants",
    "pfaffian_value",
    "verify_minus_psi",
    "SYMBOLIC_CLASSICAL_RANK",
]

SYMBOLIC_CLASSICAL_RANK = 3


@dataclass(frozen=True)
class GeneratorSet:
    gens: tuple
    names: tuple[str, ...]
    provenance: str
    complete: bool

    @property
    def degrees(self) -> list[int]:
        return sorted(g.degree for g in self.gens)


class _TraceFamily:
    """Memoised ``tr((ad X)^k)`` for all needed ``k`` at once, per point."""

    def __init__(self, alg: ChevalleyAlgebra, degrees):
        self.alg = alg
        self.degrees = sorted(set(degrees))
        self.cache: dict[tuple, dict[int, object]] = {}

    def value(self, point, k: int):
        key = tuple(point)
        if key not in self.cache:
            if len(self.cache) > 256:
                self.cache.clear()
            self.cache[key] = trace_form_values(self.alg, point, self.degrees)
        return self.cache[key][k]

    def invariant(self, k: int) -> SampledInvariant:
        return SampledInvariant(f"p{k}", self.alg.dimension, k, lambda v, k=k: self.value(v, k))


def trace_form_invariants(alg: ChevalleyAlgebra, degrees, symbolic: bool | None = None) -> list:
    """Trace forms ``p_k``; explicit polynomials when ``symbolic`` (default: rank <= 2)."""
    if symbolic is None:
        symbolic = alg.rank <= 2
    if symbolic:
        return [trace_form(alg, k) for k in degrees]
    fam = _TraceFamily(alg, degrees)
    return [fam.invariant(k) for k in degrees]


def pfaffian_value(A):
    """Pfaffian of a scalar antisymmetric matrix by skew elimination."""
    A = np.array([[exact(v) for v in row] for row in np.asarray(A, dtype=object)], dtype=object)
    n = A.shape[0]
    if n % 2:
        return 0
    result = 1
    for k in range(0, n - 1, 2):
        piv = next((j for j in range(k + 1, n) if A[k, j]), None)
        if piv is None:
            return 0
        if piv != k + 1:
            A[[k + 1, piv], :] = A[[piv, k + 1], :]
            A[:, [k + 1, piv]] = A[:, [piv, k + 1]]
            result = -result
        a = A[k, k + 1]
        result = result * a
        if k + 2 < n:
            tau = np.array([exact(Fraction(v) / a if isinstance(v, int) else v / a) for v in A[k, k + 2:]],
                           dtype=object)
            col = A[k + 2:, k + 1]
            A[k + 2:, k + 2:] = A[k + 2:, k + 2:] + np.outer(tau, col) - np.outer(col, tau)
    return exact(result)


def _classical_sampled(t: CartanType) -> list[SampledInvariant]:
    real = realize(t)
    n = real.dimension
    m = real.m
    cache: dict[tuple, tuple] = {}

    def data(v):
        key = tuple(v)
        if key not in cache:
            if len(cache) > 256:
                cache.clear()
            X = real.matrix_of(v)
            pf = pfaffian_value(real.form.dot(X)) if t.family == "D" else None
            cache[key] = (charpoly(X), pf)
        return cache[key]

    if t.family == "A":
        ks = list(range(2, m + 1))
    elif t.family in "BC":
        ks = list(range(2, m + 1, 2))
    else:
        ks = list(range(2, m - 1, 2))
    out = [SampledInvariant(f"c{k}", n, k, lambda v, k=k: data(v)[0][k]) for k in ks]
    if t.family == "D":
        out.append(SampledInvariant("pf(SX)", n, m // 2, lambda v: data(v)[1]))
    return out


@lru_cache(maxsize=None)
def adjoint_generators(t) -> GeneratorSet:
    t = CartanType.parse(t)
    alg = build_algebra(t)
    degs = invariant_degrees(t)
    if t.is_classical:
        pf = " and the Pfaffian of S X" if t.family == "D" else ""
        if t.rank <= SYMBOLIC_CLASSICAL_RANK:
            gens = classical_invariant_gens(t)
            names = _classical_names(t, len(gens))
            how = "explicit polynomials"
        else:
            gens = tuple(_classical_sampled(t))
            names = tuple(g.name for g in gens)
            how = "exact evaluation at sampled points"
        prov = (
            f"classical module: characteristic-polynomial coefficients of the matrix realization{pf}; "
            f"degrees {sorted(g.degree for g in gens)} match the invariant degrees {degs}; {how}"
        )
        return GeneratorSet(tuple(gens), tuple(names), prov, True)
    even = [d for d in degs if d % 2 == 0]
    gens = tuple(trace_form_invariants(alg, even))
    names = tuple(f"p{d}" for d in even)
    how = "explicit polynomials" if alg.rank <= 2 else "exact evaluation at sampled points"
    missing = [d for d in degs if d % 2]
    note = (
        f"; odd invariant degrees {missing} are not represented (odd trace forms vanish)" if missing else
        "; generation by trace forms in these degrees is assumed, not certified"
    )
    prov = f"chevalley module: trace forms tr((ad X)^k) for k in {even}; {how}{note}"
    return GeneratorSet(gens, names, prov, not missing)


def _classical_names(t: CartanType, count: int) -> tuple[str, ...]:
    m = realize(t).m
    if t.family == "A":
        return tuple(f"c{k}" for k in range(2, m + 1))
    if t.family in "BC":
        return tuple(f"c{k}" for k in range(2, m + 1, 2))
    return tuple(f"c{k}" for k in range(2, m - 1, 2)) + ("pf(SX)",)


def verify_minus_psi(alg: ChevalleyAlgebra, gens=None, names=None, samples: int = 20, seed: int = 0) -> dict:
    """-psi preserves every generator and is not a bracket automorphism."""
    psi = chevalley_involution(alg)
    n = alg.dimension
    if gens is None:
        gs = adjoint_generators(alg.cartan_type)
        gens, names, provenance = gs.gens, gs.names, gs.provenance
    else:
        provenance = "caller-supplied generators"
    mpsi = LinearMap(-psi.matrix, "-psi")
    verdict = membership_verdict(list(gens), mpsi, samples=samples, seed=seed, names=list(names) if names else None)
    defect = (-psi).bracket_defect(alg)
    psi_aut = psi.is_automorphism(alg)
    K = alg.killing_matrix
    P = psi.matrix.astype(np.int64)
    report = {
        "type": str(alg.cartan_type),
        "dimension": n,
        "generatingSetProvenance": provenance,
        "psiSquaredIsIdentity": bool(np.array_equal(P @ P, np.eye(n, dtype=np.int64))),
        "psiIsAutomorphism": psi_aut,
        "psiPreservesKillingForm": bool(np.array_equal(P.T @ K @ P, K)),
        "minusPsiFixesGenerators": verdict.member,
        "failingGenerators": verdict.failing,
        "method": verdict.method,
        "minusPsiIsAutomorphism": defect is None,
        "minusPsiBracketFailure": None if defect is None else [alg.labels[defect[0]], alg.labels[defect[1]]],
    }
    report["passed"] = (
        report["psiSquaredIsIdentity"]
        and psi_aut
        and report["psiPreservesKillingForm"]
        and verdict.member
        and defect is not None
    )
    return report
