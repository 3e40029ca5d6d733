from __future__ import annotations

import random

import numpy as np
import pytest
import sympy

from gprime.adjoint import pfaffian_value
from gprime.chevalley import ad_matrix, build_algebra, cartan_reflection, restrict_to_cartan
from gprime.classical import (
    UnsupportedTypeError,
    classical_invariant_gens,
    pfaffian,
    rais_transpose_check,
    realize,
    transpose_map,
)
from gprime.engine import infinitesimal_defect
from gprime.exactcore import Polynomial, det
from gprime.rootsystem import admissible_types, invariant_degrees

CLASSICAL_3 = [t for t in admissible_types(3) if t.is_classical]


def _skew(rng, m):
    A = np.zeros((m, m), dtype=object)
    for i in range(m):
        for j in range(i + 1, m):
            A[i, j] = rng.randint(-5, 5)
            A[j, i] = -A[i, j]
    return A


def test_pfaffian_small():
    a, b, c, d, e, f = Polynomial.variables(6)
    assert pfaffian([[0, a], [-a, 0]]) == a
    M = np.array([[0, a, b, c], [-a, 0, d, e], [-b, -d, 0, f], [-c, -e, -f, 0]], dtype=object)
    assert pfaffian(M) == a * f - b * e + c * d


@pytest.mark.parametrize("m", [2, 4, 6])
def test_pfaffian_squared_is_det(m):
    rng = random.Random(m)
    for _ in range(5):
        A = _skew(rng, m)
        assert pfaffian(A) ** 2 == sympy.Matrix(A.tolist()).det()
        assert pfaffian_value(A) == pfaffian(A)


def test_pfaffian_congruence():
    rng = random.Random(7)
    for _ in range(5):
        A = _skew(rng, 6)
        g = np.array([[rng.randint(-2, 2) for _ in range(6)] for _ in range(6)], dtype=object)
        assert pfaffian(g.T.dot(A).dot(g)) == det(g) * pfaffian(A)


@pytest.mark.parametrize("t, m, dim", [("A1", 2, 3), ("A3", 4, 15), ("B2", 5, 10), ("C2", 4, 10),
                                       ("D3", 6, 15), ("C3", 6, 21), ("D4", 8, 28), ("B4", 9, 36)])
def test_realization_sizes(t, m, dim):
    real = realize(t)
    assert (real.m, real.dimension) == (m, dim)
    assert all(real.in_algebra(b) for b in real.basis)
    assert real.bracket_mismatches() == []


def test_exceptional_has_no_realization():
    with pytest.raises(UnsupportedTypeError):
        realize("G2")


def test_sl2_generator():
    a, b, c = Polynomial.variables(3)
    assert classical_invariant_gens("A1") == (-(a**2) - b * c,)


@pytest.mark.parametrize("t", [t for t in admissible_types(4) if t.is_classical and str(t) != "B4"], ids=str)
def test_generator_degrees(t):
    assert sorted(g.degree for g in classical_invariant_gens(t)) == invariant_degrees(t)


@pytest.mark.slow
def test_generator_degrees_b4():
    assert sorted(g.degree for g in classical_invariant_gens("B4")) == invariant_degrees("B4")


@pytest.mark.parametrize("t", CLASSICAL_3, ids=str)
def test_generators_infinitesimally_invariant(t):
    alg = build_algebra(t)
    n = alg.dimension
    for g in classical_invariant_gens(t):
        for i in range(n):
            A = ad_matrix(alg, [int(k == i) for k in range(n)])
            assert infinitesimal_defect(g, A).is_zero()


@pytest.mark.parametrize("t", CLASSICAL_3, ids=str)
def test_restricted_generators_weyl_invariant(t):
    alg = build_algebra(t)
    for g in classical_invariant_gens(t):
        r = restrict_to_cartan(alg, g)
        assert not r.is_zero()
        for i in range(alg.rank):
            assert r.compose(cartan_reflection(alg, i)) == r


@pytest.mark.parametrize("t", CLASSICAL_3, ids=str)
def test_coordinates_roundtrip(t):
    real = realize(t)
    rng = random.Random(5)
    c = [rng.randint(-4, 4) for _ in range(real.dimension)]
    assert real.coordinates(real.matrix_of(c)) == c


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_rais_transpose(n):
    r = rais_transpose_check(n)
    assert r["transposeFixesGenerators"]
    assert r["minusTransposeIsAutomorphism"]
    assert not r["transposeIsAutomorphism"]
    assert r["transposeBracketFailure"] is not None
    assert r["minusTransposeEqualsPsi"]
    assert r["passed"]


def test_transpose_is_an_anti_automorphism():
    alg = build_algebra("A2")
    T = transpose_map("A2").matrix
    rng = random.Random(6)
    n = alg.dimension
    for _ in range(3):
        X = [rng.randint(-3, 3) for _ in range(n)]
        Y = [rng.randint(-3, 3) for _ in range(n)]
        XY = alg.bracket(dict(enumerate(X)), dict(enumerate(Y)))
        lhs = T.dot(np.array([XY.get(k, 0) for k in range(n)]))
        TX, TY = T.dot(np.array(X)), T.dot(np.array(Y))
        rhs = alg.bracket(dict(enumerate(TY.tolist())), dict(enumerate(TX.tolist())))
        assert {k: int(v) for k, v in enumerate(lhs) if v} == rhs
