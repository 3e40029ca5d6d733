"""One test per acceptance criterion, each printing a single PASS/FAIL line.

Expectations are written out literally here; the ``criterion_N`` functions
only gather observations.  Nothing is loosened: criteria 7 and 9 are asserted
as stated.
"""

from __future__ import annotations

import pytest

from gprime import acceptance
from gprime.exactcore import I


@pytest.fixture
def report(capsys):
    def emit(result):
        with capsys.disabled():
            print(f"\n{result.line()}")
        return result

    return emit


def test_criterion_1_structure_audit(report):
    r = report(acceptance.criterion_1(max_rank=8))
    obs = r.observed
    assert all(obs[t]["passed"] for t in obs if isinstance(obs[t], dict)), r.failures
    assert obs["E8 dimension"] == 248
    assert obs["E8 positive roots"] == 120
    assert r.passed


def test_criterion_2_psi_audit(report):
    r = report(acceptance.criterion_2(max_rank=8, seed=0, samples=20))
    for t, o in r.observed.items():
        assert o["psiSquaredIsIdentity"], t
        assert o["psiIsAutomorphism"], t
        assert not o["minusPsiIsAutomorphism"], t
        assert o["minusPsiFixesTraceForms"], t
        assert o["oddTraceFormsVanish"], t
    assert len(r.observed) == 34
    assert r.passed


def test_criterion_3_self_duality(report):
    r = report(acceptance.criterion_3(max_rank=8))
    assert len(r.observed) == 34
    for t, o in r.observed.items():
        assert o["selfDualType"] == o["allDegreesEven"] == o["w0IsMinusIdentity"], t
    assert r.passed


def test_criterion_4_degree_tables(report):
    r = report(acceptance.criterion_4(max_rank=8))
    compared = {t: o for t, o in r.observed.items() if isinstance(o, dict) and "molien" in o}
    assert compared and all(o["coxeter"] == o["molien"] for o in compared.values())
    assert r.observed["D4"]["coxeter"] == [2, 4, 4, 6]
    assert r.passed


def test_criterion_5_transpose(report):
    r = report(acceptance.criterion_5())
    for n in range(2, 6):
        o = r.observed[f"sl{n}"]
        assert o["transposeFixesGenerators"]
        assert o["minusTransposeIsAutomorphism"]
        assert not o["transposeIsAutomorphism"]
    assert r.passed


def test_criterion_6_lie_stabilizer_equals_ad(report):
    r = report(acceptance.criterion_6())
    for t, dim in {"A1": 3, "A2": 8, "B2": 10}.items():
        o = r.observed[t]
        assert o["lieStabilizerDimension"] == dim
        assert o["spansEqual"]
    assert r.passed


def test_criterion_7_sl2_modules(report):
    r = report(acceptance.criterion_7(seed=0))
    obs = r.observed
    assert all(c["passed"] for c in obs["cases"].values())
    assert obs["lieDimensions"] == {"R1": 4, "2R1": 6, "3R1": 3, "R2": 3, "2R2": 3,
                                    "R2+R1": 3, "R3": 3, "R4": 3}
    scal = obs["scalarSubgroups"]
    assert scal["R1"]["allScalars"]
    assert scal["2R1"]["order"] % 2 == 0
    assert scal["R2"]["order"] == 2
    assert scal["2R2"]["order"] == 2
    assert scal["R2+R1"]["perSummand"]["invariantFactors"] == [4]
    assert scal["R3"]["order"] == 4
    assert obs["R3 generator"] == str(I)
    assert scal["R4"]["order"] == 1
    assert all(rejected == tested == 10 * len(acceptance.claim_for(m).claimed_generators)
               for m, (rejected, tested) in obs["perturbations"].items())
    assert scal["3R1"]["order"] == 1, f"3R1 scalar subgroup: stated {{1}}, observed {scal['3R1']['description']}"
    assert r.passed


def test_criterion_8_minus_identity(report):
    r = report(acceptance.criterion_8(seed=0))
    assert sorted(r.observed) == ["A1", "B1", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "F4", "G2"]
    assert all(o["member"] for o in r.observed.values())
    assert r.passed


def test_criterion_9_generic_stabilizer(report):
    r = report(acceptance.criterion_9(seed=0))
    assert r.observed["R1"] == 1
    for m in ("2R1", "3R1", "2R2", "R2+R1", "R3", "R4"):
        assert r.observed[m] == 0, m
    assert r.observed["R2"] == 0, f"R2 generic stabilizer: stated 0, observed {r.observed['R2']}"
    assert r.passed
