from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest
import sympy

from gprime.engine import LinearMap, membership_test
from gprime.exactcore import I, Polynomial, as_matrix
from gprime.sl2modules import (
    CASES,
    SUPPORTED_MODULES,
    BinaryForm,
    SL2ModuleSpec,
    UnsupportedModuleError,
    action_matrix,
    claim_for,
    generic_stabilizer_dim,
    infinitesimal_action,
    jacobian_rank,
    module_invariant_gens,
    random_sl2,
    sl2_basis,
    transvectant,
    verify_case,
)

x, y = sympy.symbols("x y")


@pytest.mark.parametrize(
    "text, summands, canonical",
    [("R4", (4,), "R4"), ("2R1", (1, 1), "2R1"), ("R2+R1", (2, 1), "R2+R1"),
     ("R2 ⊕ R1", (2, 1), "R2+R1"), ("R1+R1+R1", (1, 1, 1), "3R1"), ("2r2", (2, 2), "2R2")],
)
def test_module_spec(text, summands, canonical):
    spec = SL2ModuleSpec.parse(text)
    assert spec.summands == summands
    assert str(spec) == canonical
    assert spec.total_dim == sum(j + 1 for j in summands)


@pytest.mark.parametrize("text", ["R0", "", "R", "0R2", "S2"])
def test_bad_module_spec(text):
    with pytest.raises(ValueError):
        SL2ModuleSpec.parse(text)


def test_unsupported_module():
    with pytest.raises(UnsupportedModuleError):
        module_invariant_gens("R5")


def test_action_on_r1_and_r2():
    g = as_matrix([[2, 3], [5, 7]])
    assert np.array_equal(action_matrix("R1", g), g)
    t = Fraction(3)
    D = action_matrix("R2", as_matrix([[t, 0], [0, 1 / t]]))
    assert [D[k, k] for k in range(3)] == [9, 1, Fraction(1, 9)]


@pytest.mark.parametrize("j", [1, 2, 3, 4])
def test_scalars_act_by_powers(j):
    lam = 2 + I
    M = action_matrix(f"R{j}", as_matrix([[lam, 0], [0, lam]]))
    assert all(M[k, k] == lam**j for k in range(j + 1))


@pytest.mark.parametrize("spec", ["R3", "R2+R1", "2R2"])
def test_action_is_a_homomorphism(spec):
    rng = random.Random(0)
    for _ in range(3):
        g, h = random_sl2(rng), random_sl2(rng)
        lhs = action_matrix(spec, g.dot(h))
        rhs = action_matrix(spec, g).dot(action_matrix(spec, h))
        assert np.array_equal(lhs, rhs)


def test_action_matches_substitution():
    # column k holds the coefficients of (g e1)^(2-k) (g e2)^k
    g = as_matrix([[1, 2], [3, 5]])
    M = action_matrix("R2", g)
    for k in range(3):
        img = sympy.expand((x + 3 * y) ** (2 - k) * (2 * x + 5 * y) ** k)
        coeffs = [sympy.Poly(img, x, y).coeff_monomial(x ** (2 - r) * y**r) for r in range(3)]
        assert [M[r, k] for r in range(3)] == coeffs


@pytest.mark.parametrize("spec", ["R4", "R2+R1"])
def test_infinitesimal_action_is_a_lie_map(spec):
    b = sl2_basis()
    rho = {k: infinitesimal_action(spec, v) for k, v in b.items()}
    for p, q in [("h", "e"), ("h", "f"), ("e", "f")]:
        br = b[p].dot(b[q]) - b[q].dot(b[p])
        assert np.array_equal(rho[p].dot(rho[q]) - rho[q].dot(rho[p]), infinitesimal_action(spec, br))


def _form(coeffs):
    return BinaryForm(tuple(Polynomial.constant(1, c) for c in coeffs))


def _sym(coeffs):
    d = len(coeffs) - 1
    return sum(c * x ** (d - k) * y**k for k, c in enumerate(coeffs))


def _sym_transvectant(f, g, r):
    return sympy.expand(sum((-1) ** i * sympy.binomial(r, i) * sympy.diff(f, x, r - i, y, i)
                            * sympy.diff(g, x, i, y, r - i) for i in range(r + 1)))


@pytest.mark.parametrize("r", [0, 1, 2, 3])
def test_transvectant_matches_sympy(r):
    rng = random.Random(r)
    for _ in range(4):
        a = [rng.randint(-5, 5) for _ in range(4)]
        b = [rng.randint(-5, 5) for _ in range(5)]
        got = transvectant(_form(a), _form(b), r)
        ref = _sym_transvectant(_sym(a), _sym(b), r)
        coeffs = [c.evaluate([0]) for c in got.coeffs]
        assert sympy.expand(_sym(coeffs) - ref) == 0


def test_transvectant_symmetry():
    rng = random.Random(9)
    f = _form([rng.randint(-5, 5) for _ in range(4)])
    g = _form([rng.randint(-5, 5) for _ in range(4)])
    for r in range(4):
        assert transvectant(f, g, r).scale((-1) ** r).coeffs == transvectant(g, f, r).coeffs
    assert transvectant(f, f, 1).is_zero() and transvectant(f, f, 3).is_zero()


def test_explicit_generators():
    x0, x1, x2, x3 = Polynomial.variables(4)
    assert module_invariant_gens("2R1") == (x0 * x3 - x1 * x2,)
    a, b, c = Polynomial.variables(3)
    assert module_invariant_gens("R2") == (4 * a * c - b**2,)


def test_r3_discriminant():
    a, b, c, d = sympy.symbols("a b c d")
    disc = sympy.discriminant(a * x**3 + b * x**2 + c * x + d, x)
    (p,) = module_invariant_gens("R3")
    names = (a, b, c, d)
    ours = sum(coef * sympy.prod([s**e for s, e in zip(names, exps)]) for exps, coef in p.terms())
    assert sympy.expand(ours + disc) == 0 or sympy.expand(ours - disc) == 0


def test_r4_invariants():
    a, b, c, d, e = sympy.symbols("a b c d e")
    names = (a, b, c, d, e)
    i_ref = 12 * a * e - 3 * b * d + c**2
    j_ref = 72 * a * c * e + 9 * b * c * d - 27 * a * d**2 - 27 * e * b**2 - 2 * c**3
    got = [sum(coef * sympy.prod([s**k for s, k in zip(names, exps)]) for exps, coef in p.terms())
           for p in module_invariant_gens("R4")]
    assert sympy.expand(got[0] - i_ref) == 0
    assert sympy.expand(got[1] - j_ref) == 0 or sympy.expand(got[1] + j_ref) == 0


@pytest.mark.parametrize(
    "spec, bidegrees",
    [("2R2", [{(2, 0)}, {(1, 1)}, {(0, 2)}]), ("R2+R1", [{(2, 0)}, {(1, 2)}]),
     ("3R1", [{(1, 1, 0)}, {(1, 0, 1)}, {(0, 1, 1)}])],
)
def test_generator_multidegrees(spec, bidegrees):
    s = SL2ModuleSpec.parse(spec)
    blocks, k = [], 0
    for size in s.block_sizes:
        blocks.append(range(k, k + size))
        k += size
    assert [p.multidegrees(blocks) for p in module_invariant_gens(spec)] == bidegrees


@pytest.mark.parametrize("spec", SUPPORTED_MODULES)
def test_generators_are_sl2_invariant(spec):
    rng = random.Random(1)
    gens = module_invariant_gens(spec)
    for p in gens:
        assert p.primitive() == p
    for _ in range(3):
        g = LinearMap(action_matrix(spec, random_sl2(rng)))
        assert membership_test(gens, g)


# Stabilizer of a vector in SL2 is unipotent, of a nondegenerate quadric is SO2.
@pytest.mark.parametrize("spec, dim", [("R1", 1), ("R2", 1), ("2R1", 0), ("3R1", 0), ("2R2", 0),
                                       ("R2+R1", 0), ("R3", 0), ("R4", 0)])
def test_generic_stabilizer(spec, dim):
    assert generic_stabilizer_dim(spec, samples=8, seed=0) == dim


@pytest.mark.parametrize("spec", SUPPORTED_MODULES)
def test_jacobian_rank_is_number_of_generators(spec):
    rng = random.Random(2)
    gens = module_invariant_gens(spec)
    n = SL2ModuleSpec.parse(spec).total_dim
    pt = [Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(n)]
    assert jacobian_rank(gens, pt) == len(gens)


@pytest.mark.parametrize("case", sorted(CASES))
def test_cases_pass(case):
    report = verify_case(case)
    assert report["passed"], [m["module"] for m in report["modules"] if not m["passed"]]


def test_r3_scalar_claim():
    # -Id is the image of -I in SL2; i Id is the extra claimed scalar; 2 Id rescales the degree-4 invariant
    gens = module_invariant_gens("R3")
    (phi,) = claim_for("R3").claimed_generators
    assert phi.matrix[0, 0] == I
    assert membership_test(gens, phi)
    assert np.array_equal(action_matrix("R3", as_matrix([[-1, 0], [0, -1]])), LinearMap.scalar(4, -1).matrix)
    assert not membership_test(gens, LinearMap.scalar(4, 2))


@pytest.mark.parametrize("spec", ["R2", "2R2", "R4", "2R1", "3R1"])
def test_independent_generators_match_orbit_dimension(spec):
    rng = random.Random(3)
    n = SL2ModuleSpec.parse(spec).total_dim
    pt = [Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(n)]
    rank = jacobian_rank(module_invariant_gens(spec), pt)
    assert rank == n - (3 - generic_stabilizer_dim(spec))
