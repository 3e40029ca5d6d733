from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gprime.exactcore import (
    GaussianRational,
    I,
    Polynomial,
    RowReducer,
    charpoly,
    det,
    exact,
    format_scalar,
    inverse,
    matmul,
    nullspace,
    parse_scalar,
    rank,
    solve,
)

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=12)
gaussians = st.builds(lambda a, b: exact(a + b * I), fractions, fractions)


# -- scalars -----------------------------------------------------------------------


@pytest.mark.parametrize(
    "text, value",
    [
        ("3", 3),
        ("-2/4", Fraction(-1, 2)),
        ("i", I),
        ("-i", -I),
        ("1/2-3/4*i", Fraction(1, 2) - Fraction(3, 4) * I),
        ("2+0*i", 2),
    ],
)
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


def test_canonical_types():
    assert type(I * I) is int
    assert type(exact(Fraction(4, 2))) is int
    assert type((1 + I) * (1 - I)) is int
    assert type(exact(Fraction(1, 2))) is Fraction
    assert isinstance(1 + I, GaussianRational)


@given(gaussians)
def test_format_parse_roundtrip(z):
    assert parse_scalar(format_scalar(z)) == z


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    if b != 0:
        assert exact((a / b) * b) == a


@given(fractions, fractions)
def test_gaussian_square(a, b):
    sq = exact((a + b * I) * (a + b * I))
    re, im = (sq.re, sq.im) if isinstance(sq, GaussianRational) else (sq, 0)
    assert (re, im) == (a * a - b * b, 2 * a * b)


# -- polynomials -----------------------------------------------------------------------


small_points = st.lists(st.integers(-9, 9), min_size=3, max_size=3)
x, y, z = Polynomial.variables(3)


def _poly_strategy():
    mono = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
    return st.dictionaries(mono, st.integers(-5, 5), max_size=6).map(
        lambda d: sum((Polynomial.monomial(e, c) for e, c in d.items()), Polynomial.zero(3)))


polys = _poly_strategy()
X, Y, Z = sympy.symbols("x0 x1 x2")


def _to_sympy(p: Polynomial):
    return sum((sympy.Rational(str(c)) * X**e[0] * Y**e[1] * Z**e[2] for e, c in p.terms()), sympy.Integer(0))


@settings(max_examples=50)
@given(polys, polys, small_points)
def test_evaluation_is_a_ring_homomorphism(p, q, pt):
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)


@settings(max_examples=50)
@given(polys, polys)
def test_product_matches_sympy(p, q):
    assert sympy.expand(_to_sympy(p * q) - _to_sympy(p) * _to_sympy(q)) == 0


@settings(max_examples=50)
@given(polys)
def test_derivative_matches_sympy(p):
    for i, s in enumerate((X, Y, Z)):
        assert sympy.expand(_to_sympy(p.diff(i)) - sympy.diff(_to_sympy(p), s)) == 0


@settings(max_examples=30)
@given(polys, small_points)
def test_compose_is_substitution(p, pt):
    A = [[1, 2, 0], [0, 1, -1], [3, 0, 1]]
    Ax = [sum(A[i][j] * pt[j] for j in range(3)) for i in range(3)]
    assert p.compose(A).evaluate(pt) == p.evaluate(Ax)


@settings(max_examples=30)
@given(polys)
def test_json_roundtrip(p):
    assert Polynomial.from_json(p.to_json()) == p


def test_text_form_and_degree():
    p = (x + 2 * y) ** 2 * z - Fraction(1, 3)
    assert p.to_string() == "x0^2*x2 + 4*x0*x1*x2 + 4*x1^2*x2 - 1/3"
    assert p.degree == 3
    assert p.degrees() == {0, 3}
    assert not p.is_homogeneous()


def test_gaussian_coefficients():
    p = I * x * y + 1
    assert p.evaluate([I, 1, 0]) == 0
    assert (p * p).coefficient((2, 2, 0)) == -1


def test_primitive_has_content_one():
    p = Fraction(4, 6) * x**2 - Fraction(2, 3) * y * z
    assert p.primitive() == x**2 - y * z


def test_multidegrees():
    p = x**2 * z + y * z**2
    assert p.multidegrees([[0, 1], [2]]) == {(2, 1), (1, 2)}


# -- linear algebra ----------------------------------------------------------------------


int_matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=40)
@given(int_matrices)
def test_det_and_charpoly_match_sympy(rows):
    M = sympy.Matrix(rows)
    assert det(rows) == M.det()
    lam = sympy.Symbol("lam")
    ref = sympy.Poly(M.charpoly(lam).as_expr(), lam).all_coeffs()
    assert charpoly(rows) == [int(c) for c in ref]


@settings(max_examples=40)
@given(int_matrices)
def test_inverse(rows):
    if det(rows) == 0:
        return
    n = len(rows)
    P = matmul(np.array(rows, dtype=object), inverse(rows))
    assert all(P[i, j] == (i == j) for i in range(n) for j in range(n))


def test_gaussian_matrix():
    A = [[1, I], [-I, 2]]
    assert det(A) == 1
    assert charpoly(A) == [1, -3, 1]
    assert solve(A, [1, 0]) == [2, I]


@settings(max_examples=40)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5))
def test_nullspace_and_rank(rows):
    ns = nullspace(rows)
    assert rank(rows) == sympy.Matrix(rows).rank()
    assert len(ns) + rank(rows) == 4
    for v in ns:
        assert all(sum(r[j] * v[j] for j in range(4)) == 0 for r in rows)


def test_row_reducer_incremental():
    rr = RowReducer(3)
    assert rr.add({0: 1, 1: 1})
    assert rr.add({1: 1, 2: 1})
    assert not rr.add({0: 1, 2: -1})
    assert rr.rank == 2
    (v,) = rr.nullspace()
    vec = [v.get(j, 0) for j in range(3)]
    assert vec[0] + vec[1] == 0 and vec[1] + vec[2] == 0 and vec != [0, 0, 0]
