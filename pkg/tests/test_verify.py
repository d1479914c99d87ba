from __future__ import annotations

import json

import pytest

from milnorkit.golden import golden, golden_names
from milnorkit.verify import (
    SIGMA,
    HypothesisError,
    check_odd_remark,
    check_sato_levine,
    check_theorem1,
    check_vanishing,
    homotopy_certificate,
    replay_proof_identity,
    self_delta_certificate,
    vanishing_range,
)
from milnorkit.whitehead import DoubleSpec, double_twice, whitehead_double, whitehead_odd_double


def test_vanishing_range_examples():
    assert vanishing_range(golden("hopf"), 2, 4) == 1
    assert vanishing_range(golden("borromean"), 3, 4) == 2
    assert vanishing_range(golden("unlink3"), 1, 4) == 4
    assert vanishing_range(golden("whitehead"), 2, 4) == 3


@pytest.mark.parametrize("n", [-2, 1])
def test_double_formulas_hopf(n):
    r = check_theorem1(golden("hopf"), 2, n)
    assert r.passed and r.subject["k"] == 1
    values = {c.claim.split()[1]: c.computed for c in r.checks if c.claim.startswith("P")}
    assert values == {"1212": 2 * n, "1122": -n}


def test_double_formulas_borromean():
    r = check_theorem1(golden("borromean"), 3, -1)
    assert r.passed and r.subject["k"] == 2 and r.subject["D"] == 6
    values = {c.claim.split()[1]: c.computed for c in r.checks if c.claim.startswith("P")}
    assert values["123123"] == -2 and values["121233"] == 1


def test_double_formula_hypotheses():
    with pytest.raises(HypothesisError):
        check_theorem1(golden("hopf"), 2, 0)
    with pytest.raises(HypothesisError):
        check_theorem1(golden("unlink2"), 1, 1, search=4)
    with pytest.raises(HypothesisError):
        check_theorem1(golden("hopf"), 2, 1, D=3)


@pytest.mark.parametrize("n,beta", [(1, 1), (-3, -3)])
def test_sato_levine_hopf(n, beta):
    r = check_sato_levine(golden("hopf"), n)
    assert r.passed and r.beta2 == beta


def test_sato_levine_unlink_and_errors():
    r = check_sato_levine(golden("unlink2"), 5)
    assert r.passed and r.beta2 == 0
    with pytest.raises(HypothesisError):
        check_sato_levine(golden("borromean"), 1)


def test_odd_remark():
    r = check_odd_remark(golden("hopf"), 2, 1)
    assert r.passed
    assert [c.computed for c in r.checks if c.claim.startswith("12 ")] == [2 * SIGMA]
    r = check_odd_remark(golden("borromean"), 3, 3, indices=["123", "213"])
    assert r.passed and [c.computed for c in r.checks] == [-2, 2]
    assert check_odd_remark(golden("unlink2"), 1, 1).passed
    with pytest.raises(HypothesisError):
        check_odd_remark(golden("hopf"), 2, 1, indices=["1212"])


def test_certificates():
    h = homotopy_certificate(golden("borromean"), 4)
    assert not h.passed and sorted(h.witness) == ["1", "2", "3"]
    assert homotopy_certificate(golden("hopf"), 4).witness == "12"
    assert homotopy_certificate(golden("unlink3"), 4).passed
    s = self_delta_certificate(whitehead_double(golden("hopf"), DoubleSpec(2, 1)), 4)
    assert not s.passed and s.witness in ("1122", "1212")
    assert self_delta_certificate(golden("unlink2"), 4).passed
    assert self_delta_certificate(golden("unlink2"), 4, brunnian=True).note


def test_boundary_link_certificate():
    w = double_twice(golden("borromean"), DoubleSpec(1, -4), DoubleSpec(2, 2))
    assert self_delta_certificate(w, 6).passed
    assert check_vanishing(w, 6).passed


def monotonicity_subjects():
    hopf, bor = golden("hopf"), golden("borromean")
    out = [golden(n) for n in golden_names()]
    out += [whitehead_double(hopf, DoubleSpec(2, n)) for n in (-2, -1, 1, 2)]
    out += [whitehead_double(bor, DoubleSpec(3, n)) for n in (-1, 1)]
    out += [whitehead_odd_double(hopf, DoubleSpec(2, half_twists=1))]
    out += [whitehead_double(golden("whitehead"), DoubleSpec(1, 1))]
    out += [double_twice(bor, DoubleSpec(1, -4), DoubleSpec(2, 2))]
    return out


def test_certificate_monotonicity():
    subjects = monotonicity_subjects()
    assert len(subjects) == 20
    for d in subjects:
        if not homotopy_certificate(d, 4).passed:
            assert not self_delta_certificate(d, 4).passed


@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize("n", [-1, -2, -3])
def test_longitude_identity_replay(k, n):
    r = replay_proof_identity(k, n)
    assert r.passed and len(r.checks) == 2


def test_longitude_identity_coefficients():
    assert replay_proof_identity(1, -1, coefficients=[2, 0]).passed
    assert replay_proof_identity(1, -2, coefficients=[2, 3]).passed
    assert replay_proof_identity(2, -2, coefficients=[41, 43, 47, 53]).passed
    degenerate = replay_proof_identity(1, -1, coefficients=[0, 0])
    assert degenerate.passed and degenerate.checks[0].computed == '{"": "1"}'
    with pytest.raises(ValueError):
        replay_proof_identity(1, 1)
    with pytest.raises(ValueError):
        replay_proof_identity(0, -1)


def test_report_serialization():
    r = check_sato_levine(golden("hopf"), 1)
    data = json.loads(r.dumps())
    assert data["passed"] and data["sign_convention"] == 1 and data["beta2"] == 1
    assert all({"claim", "expected", "computed", "passed"} == set(c) for c in data["checks"])
    assert r.table().endswith("RESULT PASS")
