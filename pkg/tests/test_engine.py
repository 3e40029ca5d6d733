from __future__ import annotations

import json
import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from gprime.engine import (
    LinearMap,
    SampledInvariant,
    StabilizerReport,
    dixmier_check,
    infinitesimal_defect,
    lie_stabilizer,
    membership_test,
    membership_verdict,
    random_points,
    root_of_unity,
    scalar_subgroup,
    smith_normal_form,
)
from gprime.exactcore import I, Polynomial, as_matrix, det
from gprime.sl2modules import module_invariant_gens


def test_membership_basic():
    gens = module_invariant_gens("2R1")
    assert membership_test(gens, LinearMap.identity(4))
    assert not membership_test(gens, LinearMap(as_matrix(np.diag([2, Fraction(1, 2), 1, 1]))))
    assert membership_test(gens, LinearMap(as_matrix(np.diag([2, 2, Fraction(1, 2), Fraction(1, 2)]))))
    assert membership_test([], LinearMap.scalar(4, 7))


def test_membership_is_closed_under_products_and_inverses():
    gens = module_invariant_gens("2R1")
    swap = LinearMap(as_matrix([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]))
    # (v1, v2) -> (v2, -v1) keeps det(v1, v2)
    rot = LinearMap(as_matrix([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]))
    g = LinearMap(as_matrix([[1, 3, 0, 0], [0, 1, 0, 0], [0, 0, 1, 3], [0, 0, 0, 1]]))
    assert not membership_test(gens, swap)
    assert not membership_test(gens, -swap)
    for phi in (g, rot, g @ rot, rot @ g @ g):
        assert membership_test(gens, phi)
        assert membership_test(gens, phi.inverse())


def test_verdict_names_failing_generators():
    x, y = Polynomial.variables(2)
    v = membership_verdict([x * y, x**2 + y**2], LinearMap(as_matrix([[0, 1], [1, 0]])), names=["xy", "r"])
    assert v.member and v.failing == []
    v = membership_verdict([x * y, x**2 + y**2], LinearMap(as_matrix([[1, 0], [0, -1]])), names=["xy", "r"])
    assert not v.member and v.failing == ["xy"]
    assert v.method == "exact composition"


def test_sampled_membership():
    x, y = Polynomial.variables(2)
    p = x * y
    s = SampledInvariant("xy", 2, 2, lambda v: v[0] * v[1])
    for phi, expect in [(LinearMap(as_matrix([[0, 1], [1, 0]])), True),
                        (LinearMap(as_matrix([[1, 0], [0, -1]])), False)]:
        v = membership_verdict([s], phi, samples=20, seed=3)
        assert v.member is expect is membership_test([p], phi)
        assert "20 seeded points" in v.method


def test_random_points_are_seeded():
    assert random_points(5, 3, seed=4) == random_points(5, 3, seed=4)
    assert random_points(5, 3, seed=4) != random_points(5, 3, seed=5)


def test_linear_map_json_roundtrip():
    phi = LinearMap(as_matrix([[1, I], [Fraction(1, 3), -2]]), "m")
    back = LinearMap.from_json(json.loads(json.dumps(phi.to_json())))
    assert np.array_equal(back.matrix, phi.matrix) and back.label == "m"


def test_linear_map_rejects_bad_json():
    with pytest.raises((ValueError, TypeError)):
        LinearMap.from_json({"dim": 2, "entries": [["1", "0"]]})


# -- Lie stabilizer ---------------------------------------------------------------


@pytest.mark.parametrize("spec, dim", [("R1", 4), ("2R1", 6), ("3R1", 3), ("R2", 3), ("2R2", 3),
                                       ("R2+R1", 3), ("R3", 3), ("R4", 3)])
def test_lie_stabilizer_dimensions(spec, dim):
    gens = module_invariant_gens(spec)
    n = {"R1": 2, "2R1": 4, "3R1": 6, "R2": 3, "2R2": 6, "R2+R1": 5, "R3": 4, "R4": 5}[spec]
    assert len(lie_stabilizer(gens, n)) == dim


def test_lie_stabilizer_of_quadric_is_so():
    x, y, z = Polynomial.variables(3)
    basis = lie_stabilizer([x**2 + y**2 + z**2], 3)
    assert len(basis) == 3
    for A in basis:
        assert np.array_equal(A.T, -A)


def test_lie_stabilizer_solutions_satisfy_equations_at_points():
    gens = module_invariant_gens("R2+R1")
    rng = random.Random(0)
    for A in lie_stabilizer(gens, 5):
        assert all(infinitesimal_defect(p, A).is_zero() for p in gens)
        for _ in range(5):
            v = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(5)]
            Av = A.dot(np.array(v, dtype=object))
            for p in gens:
                assert sum(q(v) * w for q, w in zip(p.gradient(), Av)) == 0


def test_sampled_generators_are_rejected_by_lie_stabilizer():
    s = SampledInvariant("p", 2, 2, lambda v: v[0] * v[1])
    with pytest.raises(TypeError):
        lie_stabilizer([s], 2)


@pytest.mark.parametrize("t", ["A1", "A2", "B2", "C2", "A3"])
def test_dixmier(t):
    r = dixmier_check(t)
    assert r["passed"] and r["spansEqual"]
    assert r["lieStabilizerDimension"] == r["dimension"]


# -- Smith normal form and scalars -------------------------------------------------


matrices = st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=1, max_size=4))


@settings(max_examples=60)
@given(matrices)
def test_smith_normal_form(rows):
    U, S, V = smith_normal_form(rows)
    M = np.array(rows, dtype=object)
    assert np.array_equal(U.dot(M).dot(V), S)
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    diag = [S[i, i] for i in range(min(S.shape))]
    assert all(S[i, j] == 0 for i in range(S.shape[0]) for j in range(S.shape[1]) if i != j)
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else (b % a == 0)
    ref = sympy_snf(sympy.Matrix(rows))
    assert sorted(abs(ref[i, i]) for i in range(min(ref.shape))) == sorted(diag)


def test_roots_of_unity():
    assert [root_of_unity(Fraction(k, 4)) for k in range(4)] == [1, I, -1, -I]
    assert root_of_unity(Fraction(1, 3)) is None


def test_scalar_subgroups():
    x, y, z = Polynomial.variables(3)
    assert scalar_subgroup([x**2 + y * z]).order == 2
    assert scalar_subgroup([x**2, y**3]).order == 1
    s = scalar_subgroup([x**4, x * y**3])
    assert s.order == 4 and s.generator == I and s.contains(-I)
    assert scalar_subgroup([]).all_scalars


def test_per_summand_scalars():
    gens = module_invariant_gens("R2+R1")
    s = scalar_subgroup(gens, [3, 2])
    assert s.order == 1
    assert s.block_torus_rank == 0 and s.block_invariant_factors == [4]
    assert s.contains_block((Fraction(1, 2), Fraction(1, 4)))
    assert not s.contains_block((0, Fraction(1, 4)))


def test_stabilizer_report_json():
    x, y = Polynomial.variables(2)
    rep = StabilizerReport("demo", "hand-written", [2], lie_dimension=1,
                           lie_basis=lie_stabilizer([x * y], 2), scalar_group=scalar_subgroup([x * y]))
    data = json.loads(rep.dumps())
    assert data["generatingSetProvenance"] == "hand-written"
    ((a, b), (c, d)) = data["lieStabilizerBasis"][0]
    assert len(data["lieStabilizerBasis"]) == 1
    assert b == c == "0" and a != "0" and Fraction(a) == -Fraction(d)
    assert data["scalarSubgroup"]["order"] == 2
