import json
import math
from pathlib import Path

import jsonschema
import numpy as np
import pytest

from idqm import systems as S
from idqm import verify as V
from idqm.errors import DegreeBoundViolation, DomainError
from idqm.fixtures import fixture

SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "docs" / "report.schema.json").read_text())


def test_report_passed_logic():
    assert V.VerificationReport("a", {}, 1e-9, 1e-8).passed
    assert not V.VerificationReport("a", {}, 1e-7, 1e-8).passed
    assert not V.VerificationReport("a", {}, math.nan, 1e-8).passed
    assert not V.VerificationReport("a", {}, math.inf, 1e-8).passed


def test_json_is_strict_and_matches_schema():
    reps = [V.VerificationReport("x", {"case": "V", "z": 1 + 2j}, math.nan, 1e-8,
                                 data={"arr": np.arange(3.0), "v": np.float64(2.5)}),
            V.VerificationReport("y", {"case": "VII"}, 0.0, 1e-8)]
    manifest = {"command": "verify", "parameters": {}, "seed": 7, "output_path": None, "format": "JSON"}
    text = V.reports_to_json(reps, manifest)
    doc = json.loads(text)
    jsonschema.validate(doc, SCHEMA)
    assert doc["reports"][0]["residual"] is None and doc["reports"][0]["passed"] is False
    assert doc["reports"][0]["params"]["z"] == [1.0, 2.0]
    assert doc["reports"][1]["passed"] is True


def test_csv_layout():
    reps = [V.VerificationReport("x", {"case": "V"}, 1e-3, 1e-8, notes="a, b \"quoted\"")]
    text = V.reports_to_csv(reps)
    lines = text.split("\r\n")
    assert lines[0] == "check_id,case,residual,tolerance,passed,notes"
    assert lines[1].startswith("x,V,0.001,1e-08,False,")
    assert '"a, b ""quoted"""' in lines[1]


def test_gram_matrix_is_diagonal_with_conjectured_norms():
    p = fixture("v_two")
    Gn, reps = V.orthogonality_report(p)
    assert all(r.passed for r in reps), [(r.check_id, r.residual) for r in reps]
    assert np.allclose(Gn, np.eye(p.n_max + 1), atol=1e-9)


def test_trapezoid_and_adaptive_schemes_agree():
    p = fixture("vii_basic")
    t = V.inner_product(p, 1, 1)
    a = V.inner_product(p, 1, 1, V.QuadratureConfig(scheme="adaptive", rel_tol=1e-11))
    assert abs(t - a) < 1e-9 * abs(t)
    assert abs(t - S.conjectured_norm(p, 1)) < 1e-9 * abs(t)


def test_integration_window_contains_mass():
    p = fixture("viii_km1")
    a, b = V.integration_window(p, [p.n_max, p.n_max])
    assert a < 0 < b
    assert V.integration_window(fixture("vii_basic"), [0, 0])[0] == 0


def test_hermiticity_on_admissible_pairs():
    p = fixture("v_two")
    for n1 in range(p.n_max + 1):
        for n2 in range(n1, p.n_max + 1):
            try:
                V.degree_bound(p, n1, n2)
            except DegreeBoundViolation:
                continue
            assert V.hermiticity_residual(p, n1, n2) < 1e-8


def test_degree_bound_violation():
    p = fixture("v_two")
    with pytest.raises(DegreeBoundViolation):
        V.degree_bound(p, p.n_max + 1, 0)
    with pytest.raises(DegreeBoundViolation):
        V.hermiticity_residual(p, -1, 0)


@pytest.mark.parametrize("name", ["v_two", "vii_two", "viii_k1"])
def test_pointwise_equations(name):
    p = fixture(name)
    x = np.linspace(0.3, 2.0, 9) if p.case == "VII" else np.linspace(-2, 2, 9)
    assert V.zero_mode_residual(p, x) < 1e-10
    for n in range(p.n_max + 1):
        assert V.htpn_residual(p, n, x + 0.1j) < 1e-10
        assert V.schrodinger_residual(p, n, x) < 1e-9


@pytest.mark.slow
@pytest.mark.parametrize("case", ["V", "VI", "VII", "VIII"])
def test_oqm_limit(case):
    r = V.oqm_limit_check(case)
    assert r.passed, r.notes
    assert min(r.data["orders"].values()) >= 1


def test_oqm_limit_rejects_increasing_sequence():
    with pytest.raises(DomainError):
        V.oqm_limit_check("V", (0.1, 0.2))


@pytest.mark.parametrize("case", ["VI", "VII"])
def test_r_limit(case):
    r = V.wilson_hahn_limit_check(case)
    assert r.passed, r.notes


def test_r_limit_only_for_vi_and_vii():
    with pytest.raises(DomainError):
        V.wilson_hahn_limit_check("V")
