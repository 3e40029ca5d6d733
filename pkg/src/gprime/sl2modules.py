"""Binary-form representations of SL2 and the small modules with extra symmetry.

``R_j`` is the space of binary forms of degree ``j`` in ``x, y``; its
coordinates are the coefficients of ``x^j, x^{j-1} y, ..., y^j``.  A module is
a direct sum of such summands, written ``"R4"``, ``"2R1"``, ``"R2+R1"``.

Invariants are produced with transvectants (Omega-process, no binomial
normalisation) and then rescaled to integer content-1 polynomials.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .engine import (
    LinearMap,
    lie_stabilizer,
    membership_verdict,
    scalar_subgroup,
)
from .exactcore import I, Polynomial, exact
from .exactcore.linalg import RowReducer, as_matrix, det, zeros

__all__ = [
    "SL2ModuleSpec",
    "BinaryForm",
    "GPrimeClaim",
    "UnsupportedModuleError",
    "SUPPORTED_MODULES",
    "action_matrix",
    "infinitesimal_action",
    "sl2_basis",
    "transvectant",
    "module_invariant_gens",
    "generic_stabilizer_dim",
    "jacobian_rank",
    "claims",
    "verify_case",
    "random_sl2",
]


class UnsupportedModuleError(ValueError):
    pass


_TERM = re.compile(r"^(\d*)R(\d+)$")


@dataclass(frozen=True)
class SL2ModuleSpec:
    """``R_{j_1} + ... + R_{j_k}``; summand order is the coordinate order."""

    summands: tuple[int, ...]

    def __post_init__(self):
        if not self.summands:
            raise ValueError("module needs at least one summand")
        if any(j <= 0 for j in self.summands):
            raise ValueError("trivial summands R0 are not allowed")

    @classmethod
    def parse(cls, text) -> "SL2ModuleSpec":
        if isinstance(text, SL2ModuleSpec):
            return text
        out = []
        for part in str(text).replace(" ", "").upper().replace("⊕", "+").split("+"):
            m = _TERM.match(part)
            if not m:
                raise ValueError(f"cannot parse module summand {part!r}")
            k = int(m.group(1)) if m.group(1) else 1
            if k < 1:
                raise ValueError(f"multiplicity must be positive in {part!r}")
            out += [int(m.group(2))] * k
        return cls(tuple(out))

    @property
    def total_dim(self) -> int:
        return sum(j + 1 for j in self.summands)

    @property
    def block_sizes(self) -> list[int]:
        return [j + 1 for j in self.summands]

    @property
    def offsets(self) -> list[int]:
        out, k = [], 0
        for j in self.summands:
            out.append(k)
            k += j + 1
        return out

    def __str__(self):
        parts, prev, count = [], None, 0
        for j in list(self.summands) + [None]:
            if j == prev:
                count += 1
                continue
            if prev is not None:
                parts.append(f"{count if count > 1 else ''}R{prev}")
            prev, count = j, 1
        return "+".join(parts)


def _sym_power(g, j: int) -> np.ndarray:
    """Matrix of ``Sym^j(g)`` on the basis ``e1^{j-k} e2^k``."""
    g = as_matrix(g)
    if g.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    a, c = g[0, 0], g[1, 0]   # g e1 = a e1 + c e2
    b, d = g[0, 1], g[1, 1]   # g e2 = b e1 + d e2
    ge1 = Polynomial.linear_form([a, c])
    ge2 = Polynomial.linear_form([b, d])
    M = zeros(j + 1, j + 1)
    for k in range(j + 1):
        img = ge1 ** (j - k) * ge2 ** k
        for r in range(j + 1):
            M[r, k] = img.coefficient((j - r, r))
    return M


def action_matrix(spec, g) -> np.ndarray:
    """Block-diagonal action of a 2x2 matrix ``g`` (any determinant) on the module."""
    spec = SL2ModuleSpec.parse(spec)
    return LinearMap.block_diagonal([_sym_power(g, j) for j in spec.summands]).matrix


def sl2_basis() -> dict[str, np.ndarray]:
    return {
        "h": as_matrix([[1, 0], [0, -1]]),
        "e": as_matrix([[0, 1], [0, 0]]),
        "f": as_matrix([[0, 0], [1, 0]]),
    }


def _derivation(xi, j: int) -> np.ndarray:
    xi = as_matrix(xi)
    a, c = xi[0, 0], xi[1, 0]
    b, d = xi[0, 1], xi[1, 1]
    M = zeros(j + 1, j + 1)
    # e1 -> a e1 + c e2, e2 -> b e1 + d e2, extended as a derivation
    for k in range(j + 1):
        p = j - k
        if p:
            M[k, k] += p * a
            M[k + 1, k] += p * c
        if k:
            M[k - 1, k] += k * b
            M[k, k] += k * d
    return M


def infinitesimal_action(spec, xi) -> np.ndarray:
    """Derivative at the identity of :func:`action_matrix` in the direction ``xi``."""
    spec = SL2ModuleSpec.parse(spec)
    return LinearMap.block_diagonal([_derivation(xi, j) for j in spec.summands]).matrix


# -- binary forms ------------------------------------------------------------------

@dataclass(frozen=True)
class BinaryForm:
    """``sum_k coeffs[k] x^{d-k} y^k`` with polynomial coefficients."""

    coeffs: tuple[Polynomial, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def generic(cls, spec: SL2ModuleSpec, summand: int) -> "BinaryForm":
        n = spec.total_dim
        off = spec.offsets[summand]
        j = spec.summands[summand]
        return cls(tuple(Polynomial.variable(n, off + k) for k in range(j + 1)))

    def dx(self) -> "BinaryForm":
        d = self.degree
        return BinaryForm(tuple(c.scale(d - k) for k, c in enumerate(self.coeffs[:-1])))

    def dy(self) -> "BinaryForm":
        return BinaryForm(tuple(c.scale(k) for k, c in enumerate(self.coeffs) if k))

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        n = self.coeffs[0].arity
        out = [Polynomial.zero(n)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return BinaryForm(tuple(out))

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if self.degree != other.degree:
            raise ValueError("adding forms of different degrees")
        return BinaryForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> "BinaryForm":
        return BinaryForm(tuple(a.scale(c) for a in self.coeffs))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def constant(self) -> Polynomial:
        if self.degree != 0:
            raise ValueError("form is not of degree 0")
        return self.coeffs[0]


def _partials(f: BinaryForm, r: int) -> list[BinaryForm]:
    """``d^r f / dx^{r-i} dy^i`` for ``i = 0..r``."""
    out = []
    for i in range(r + 1):
        g = f
        for _ in range(r - i):
            g = g.dx()
        for _ in range(i):
            g = g.dy()
        out.append(g)
    return out


def transvectant(f: BinaryForm, g: BinaryForm, r: int) -> BinaryForm:
    """``(f, g)^r = sum_i (-1)^i C(r, i) f_{x^{r-i} y^i} g_{x^i y^{r-i}}``."""
    if r < 0:
        raise ValueError("transvectant order must be nonnegative")
    if r > min(f.degree, g.degree):
        raise ValueError(f"order {r} exceeds the degrees {f.degree}, {g.degree}")
    fp = _partials(f, r)
    gp = _partials(g, r)
    total = None
    for i in range(r + 1):
        term = (fp[i] * gp[r - i]).scale((-1) ** i * comb(r, i))
        total = term if total is None else total + term
    return total


# -- invariant generators -----------------------------------------------------

SUPPORTED_MODULES = ("R1", "2R1", "3R1", "R2", "2R2", "R2+R1", "R3", "R4")


def module_invariant_gens(spec) -> tuple[Polynomial, ...]:
    """Generating invariants for the supported modules, integer with content 1."""
    return tuple(p for _, p in _named_gens(SL2ModuleSpec.parse(spec)))


def generator_names(spec) -> list[str]:
    return [name for name, _ in _named_gens(SL2ModuleSpec.parse(spec))]


@lru_cache(maxsize=None)
def _named_gens(spec: SL2ModuleSpec) -> tuple[tuple[str, Polynomial], ...]:
    key = str(spec)
    if key not in SUPPORTED_MODULES:
        raise UnsupportedModuleError(
            f"{key} is not one of the modules with extra symmetry: {', '.join(SUPPORTED_MODULES)}"
        )
    forms = [BinaryForm.generic(spec, s) for s in range(len(spec.summands))]
    gens: list[tuple[str, Polynomial]] = []
    if set(spec.summands) == {1}:
        for s in range(len(forms)):
            for t in range(s + 1, len(forms)):
                gens.append((f"det(v{s + 1},v{t + 1})", transvectant(forms[s], forms[t], 1).constant()))
    elif key == "R2":
        gens.append(("disc(q)", transvectant(forms[0], forms[0], 2).constant()))
    elif key == "2R2":
        u, v = forms
        gens.append(("<u,u>", transvectant(u, u, 2).constant()))
        gens.append(("<u,v>", transvectant(u, v, 2).constant()))
        gens.append(("<v,v>", transvectant(v, v, 2).constant()))
    elif key == "R2+R1":
        q, v = forms
        gens.append(("disc(q)", transvectant(q, q, 2).constant()))
        gens.append(("(q,v^2)^2", transvectant(q, v * v, 2).constant()))
    elif key == "R3":
        f = forms[0]
        hess = transvectant(f, f, 2)
        gens.append(("disc(f)", transvectant(hess, hess, 2).constant()))
    elif key == "R4":
        f = forms[0]
        gens.append(("(f,f)^4", transvectant(f, f, 4).constant()))
        gens.append(("(f,(f,f)^2)^4", transvectant(f, transvectant(f, f, 2), 4).constant()))
    out = []
    for name, p in gens:
        if p.is_zero():
            raise RuntimeError(f"generator {name} vanished identically")
        p = p.primitive()
        bad = [k for k, xi in sl2_basis().items() if _defect(p, infinitesimal_action(spec, xi))]
        if bad:
            raise RuntimeError(f"generator {name} is not invariant under {bad}")
        out.append((name, p))
    return tuple(out)


def _defect(p: Polynomial, A) -> bool:
    from .engine import infinitesimal_defect

    return not infinitesimal_defect(p, A).is_zero()


# -- probes ----------------------------------------------------------------------

def _random_point(n: int, rng: random.Random, bound: int = 50) -> list:
    return [exact(Fraction(rng.randint(-bound, bound), rng.randint(1, bound))) for _ in range(n)]


def generic_stabilizer_dim(spec, samples: int = 8, seed: int = 0) -> int:
    """Minimum over seeded random points ``v`` of ``dim {xi in sl2 : xi . v = 0}``."""
    if samples < 1:
        raise ValueError("need at least one sample")
    spec = SL2ModuleSpec.parse(spec)
    rng = random.Random(seed)
    mats = [infinitesimal_action(spec, xi) for xi in sl2_basis().values()]
    best = 3
    for _ in range(samples):
        v = np.array(_random_point(spec.total_dim, rng), dtype=object)
        red = RowReducer(3)
        for row in range(spec.total_dim):
            red.add({c: exact(M[row].dot(v)) for c, M in enumerate(mats)})
        best = min(best, 3 - red.rank)
    return best


def jacobian_rank(gens, point) -> int:
    """Rank of the Jacobian of ``gens`` at ``point`` (exact)."""
    if not gens:
        return 0
    red = RowReducer(len(point))
    for p in gens:
        red.add({i: exact(q(point)) for i, q in enumerate(p.gradient())})
    return red.rank


def random_sl2(rng: random.Random, bound: int = 5) -> np.ndarray:
    """Random rational element of SL2 as a product of elementary matrices."""
    def r():
        return exact(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)))

    u = as_matrix([[1, r()], [0, 1]])
    lo = as_matrix([[1, 0], [r(), 1]])
    t = exact(Fraction(rng.randint(1, bound), rng.randint(1, bound)))
    d = as_matrix([[t, 0], [0, exact(1 / Fraction(t))]])
    return u.dot(lo).dot(d)


# -- claims --------------------------------------------------------------------

@dataclass(eq=False)
class GPrimeClaim:
    """The stated extra symmetry of one module.

    ``claimed_generators`` are maps asserted to preserve every invariant but
    not to come from the group; ``claimed_lie_dimension`` is the dimension of
    the identity component; ``expected_scalars`` is the order of the scalar
    subgroup (``None`` for all scalars).
    """

    module: SL2ModuleSpec
    claimed_generators: list[LinearMap]
    claimed_lie_dimension: int
    case_id: int
    statement: str
    expected_scalars: int | None = None
    extra_members: list[LinearMap] = field(default_factory=list)


def _reflection_2r1() -> LinearMap:
    """Orthogonal reflection in ``w = e_{a1} + e_{b2}`` for ``Q = a1 b2 - a2 b1``."""
    gram = as_matrix([[0, 0, 0, 1], [0, 0, -1, 0], [0, -1, 0, 0], [1, 0, 0, 0]])  # 2Q = v^T gram v
    w = np.array([1, 0, 0, 1], dtype=object)
    Bww = w.dot(gram).dot(w)
    M = zeros(4, 4)
    for k in range(4):
        e = np.array([int(i == k) for i in range(4)], dtype=object)
        img = e - w * Fraction(2 * e.dot(gram).dot(w), Bww)
        for r in range(4):
            M[r, k] = exact(img[r])
    return LinearMap(M, "reflection in w = e_a1 + e_b2")


def _det_minus_one(rng: random.Random) -> np.ndarray:
    return random_sl2(rng).dot(as_matrix([[1, 0], [0, -1]]))


@lru_cache(maxsize=None)
def claims(seed: int = 0) -> tuple[GPrimeClaim, ...]:
    rng = random.Random(seed)
    s = SL2ModuleSpec.parse
    gl2 = [LinearMap(as_matrix([[2, 1], [exact(Fraction(1, 3)), 5]]), "random invertible g"),
           LinearMap(as_matrix([[0, 3], [7, 0]]), "anti-diagonal diag(3, 7)")]
    swap = LinearMap(as_matrix([[1, 0, 1, 0], [0, 1, 0, 1], [0, 0, 1, 0], [0, 0, 0, 1]]),
                     "multiplicity transvection (v1, v2) -> (v1 + v2, v2)")
    r21 = s("R2+R1")
    return (
        GPrimeClaim(s("R1"), [], 4, 1, "G' = GL2", None, gl2),
        GPrimeClaim(s("2R1"), [swap, _reflection_2r1()], 6, 1, "G' = O4", 2),
        GPrimeClaim(s("3R1"), [], 3, 1, "G' = G", 1),
        GPrimeClaim(s("R2"), [LinearMap.scalar(3, -1, "-Id")], 3, 2, "G' = O3", 2),
        GPrimeClaim(s("2R2"), [LinearMap.scalar(6, -1, "-Id")], 3, 2, "G' = O3", 2),
        GPrimeClaim(
            r21,
            [LinearMap(action_matrix(r21, as_matrix([[I, 0], [0, I]])), "-1 on R2, i on R1")],
            3, 3, "G' = image of {g in GL2 : det g = +-1}", 1,
            [LinearMap(action_matrix(r21, _det_minus_one(rng)), "random g with det -1")],
        ),
        GPrimeClaim(s("R3"), [LinearMap.scalar(4, I, "i Id")], 3, 4, "G'/G generated by i", 4),
        GPrimeClaim(s("R4"), [], 3, 5, "G' = G = SO3", 1),
    )


CASES = {1: ("R1", "2R1", "3R1"), 2: ("R2", "2R2"), 3: ("R2+R1",), 4: ("R3",), 5: ("R4",)}


def _perturbations(phi: LinearMap, count: int, rng: random.Random) -> list[LinearMap]:
    out = []
    n = phi.dimension
    while len(out) < count:
        E = np.array(
            [[exact(Fraction(rng.randint(-9, 9), rng.randint(1, 9))) for _ in range(n)] for _ in range(n)],
            dtype=object,
        )
        cand = LinearMap(phi.matrix + E, f"{phi.label} + E{len(out) + 1}")
        if det(cand.matrix) != 0:
            out.append(cand)
    return out


def _span_contains(A: list, B: list) -> bool:
    """Is every matrix of ``B`` in the span of ``A``?"""
    def flat(M):
        return {i: v for i, v in enumerate(np.asarray(M, dtype=object).reshape(-1)) if v}

    red = RowReducer(np.asarray(A[0]).size if A else 0)
    for M in A:
        red.add(flat(M))
    return all(not red.reduce(flat(M)) for M in B)


def verify_module(claim: GPrimeClaim, perturbations: int = 10, seed: int = 0) -> dict:
    spec = claim.module
    gens = list(module_invariant_gens(spec))
    names = generator_names(spec)
    n = spec.total_dim
    rng = random.Random(seed)
    fixes = []
    for phi in claim.claimed_generators + claim.extra_members:
        v = membership_verdict(gens, phi, names=names)
        fixes.append(v.to_json())
    g_members = []
    for _ in range(3):
        g = LinearMap(action_matrix(spec, random_sl2(rng)), "random SL2 element")
        g_members.append(membership_verdict(gens, g, names=names).member)
    stab = lie_stabilizer(gens, n)
    image = [infinitesimal_action(spec, xi) for xi in sl2_basis().values()]
    sl2_inside = _span_contains(stab, image) if stab else False
    pert = []
    for phi in claim.claimed_generators:
        for psi in _perturbations(phi, perturbations, rng):
            pert.append(membership_verdict(gens, psi, names=names).member)
    scal = scalar_subgroup(gens, spec.block_sizes)
    expected_scalar_ok = True
    if str(spec) == "R4":
        expected_scalar_ok = scal.order == 1
    report = {
        "module": str(spec),
        "case": claim.case_id,
        "statement": claim.statement,
        "generators": [
            {"name": nm, "degree": p.degree, "polynomial": p.to_string(_coordinate_names(spec))}
            for nm, p in zip(names, gens)
        ],
        "claimedGeneratorsFixInvariants": all(f["member"] for f in fixes),
        "membership": fixes,
        "groupElementsAreMembers": all(g_members),
        "lieStabilizerDimension": len(stab),
        "claimedLieDimension": claim.claimed_lie_dimension,
        "sl2ImageInsideStabilizer": sl2_inside,
        "perturbationsTested": len(pert),
        "perturbationsRejected": sum(1 for m in pert if not m),
        "scalarSubgroup": scal.to_json(),
        "noNontrivialScalarRequired": str(spec) == "R4",
        "noNontrivialScalarHolds": expected_scalar_ok,
    }
    report["passed"] = (
        report["claimedGeneratorsFixInvariants"]
        and report["groupElementsAreMembers"]
        and len(stab) == claim.claimed_lie_dimension
        and sl2_inside
        and report["perturbationsRejected"] == len(pert)
        and expected_scalar_ok
    )
    return report


def _coordinate_names(spec: SL2ModuleSpec) -> list[str]:
    letters = "abcdefgh"
    out = []
    for s, j in enumerate(spec.summands):
        suffix = str(s + 1) if len(spec.summands) > 1 else ""
        out += [f"{letters[k]}{suffix}" for k in range(j + 1)]
    return out


def claim_for(spec) -> GPrimeClaim:
    key = str(SL2ModuleSpec.parse(spec))
    for c in claims():
        if str(c.module) == key:
            return c
    raise UnsupportedModuleError(f"no stated symmetry for {key}")


def verify_case(case_id: int, perturbations: int = 10, seed: int = 0) -> dict:
    """Check every module of one case of the exceptional list."""
    if case_id not in CASES:
        raise ValueError(f"case must be one of {sorted(CASES)}")
    modules = [verify_module(claim_for(m), perturbations, seed) for m in CASES[case_id]]
    return {"case": case_id, "modules": modules, "passed": all(m["passed"] for m in modules)}


__all__ += ["CASES", "claim_for", "verify_module", "generator_names"]
