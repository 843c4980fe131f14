import csv
import io
import json
import math
import subprocess
import sys
from pathlib import Path

import jsonschema
import numpy as np
import pytest

from idqm import systems as S
from idqm.cli import main, parse_params_text, weight_window
from idqm.fixtures import fixture

SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "docs" / "report.schema.json").read_text())

VII_TEXT = "case = VII\ngamma_rational = 1/5\nalpha1 = -3.0\nalpha2 = -3.0\n"
VIII_KM1_TEXT = ("case = VIII\ngamma = 0.6\nalpha1 = 1.5\nalpha2 = 1.6666666666666667\n"
                 "beta1 = 0.2\nbeta2 = -0.4\nK = -1\n")


def _write(tmp_path, text, name="p.txt"):
    f = tmp_path / name
    f.write_text(text)
    return str(f)


def _values(out):
    return {k.strip(): float(v) for k, v in (l.split("=", 1) for l in out.splitlines()[1:])}


def test_qdilog_at_origin(capsys):
    assert main(["qdilog", "--gamma", "0.7", "--z", "0"]) == 0
    v = _values(capsys.readouterr().out)
    assert v["abs"] == pytest.approx(1, abs=1e-14)
    expect = (0.7 ** 2 + math.pi ** 2) / (24 * 0.7)
    assert math.atan2(v["im"], v["re"]) == pytest.approx(expect, abs=1e-13)


def test_qdilog_rational_branch(capsys):
    assert main(["qdilog", "--gamma-rational", "1/5", "--z", "0.3-0.2i"]) == 0
    out = capsys.readouterr().out
    assert "1/5 pi" in out
    assert _values(out)["abs"] > 0


def test_qdilog_grid_csv(tmp_path):
    out = tmp_path / "g.csv"
    assert main(["qdilog", "--gamma", "1.1", "--grid=-1:1:3,-0.2:0.2:2", "--out", str(out)]) == 0
    raw = out.read_bytes()
    assert b"\r\n" in raw
    rows = list(csv.reader(io.StringIO(raw.decode(), newline="")))
    assert rows[0] == ["re_z", "im_z", "re_phi", "im_phi"] and len(rows) == 7
    man = json.loads((tmp_path / "g.csv.manifest.json").read_text())
    assert man["command"] == "qdilog" and man["format"] == "CSV" and man["output_path"] == str(out)


def test_qdilog_gamma_outside_domain():
    assert main(["qdilog", "--gamma", "4.0"]) == 2


def test_usage_error_is_input_error():
    with pytest.raises(SystemExit) as e:
        main(["qdilog", "--gamma", "x"])
    assert e.value.code == 1


def test_spectrum_vii(tmp_path, capsys):
    assert main(["spectrum", _write(tmp_path, VII_TEXT)]) == 0
    rows = [l.split() for l in capsys.readouterr().out.splitlines()[2:]]
    p = fixture("vii_basic")
    assert len(rows) == p.n_max + 1 == 2
    assert float(rows[0][1]) == 0
    for n, r in enumerate(rows):
        assert float(r[1]) == pytest.approx(S.energy(p, n), rel=1e-13)
        assert float(r[2]) == pytest.approx(S.conjectured_norm(p, n).real, rel=1e-13)


def test_spectrum_viii_negative_k(tmp_path, capsys):
    assert main(["spectrum", _write(tmp_path, VIII_KM1_TEXT)]) == 0
    out = capsys.readouterr().out
    p = fixture("viii_km1")
    assert f"n_max {p.n_max}" in out
    h = [float(l.split()[2]) for l in out.splitlines()[2:]]
    assert np.allclose(h, [S.conjectured_norm(p, n).real for n in range(p.n_max + 1)], rtol=1e-13)


@pytest.mark.parametrize("text", [
    "case = VII\nalpha1 = -3\n",                                   # missing key
    VII_TEXT + "colour = red\n",                                   # unknown key
    VII_TEXT + "alpha1 = -2\n",                                    # duplicate key
    "case = VII\ngamma_rational = 1/5\nalpha1 = abc\nalpha2 = -3\n",  # malformed number
    "case VII\n",                                                  # malformed line
])
def test_bad_parameter_files(tmp_path, text, capsys):
    assert main(["spectrum", _write(tmp_path, text)]) == 1
    assert "input error" in capsys.readouterr().err


def test_missing_file(tmp_path):
    assert main(["spectrum", str(tmp_path / "nope.txt")]) == 1


def test_out_of_range_parameters_are_domain_errors(tmp_path):
    text = "case = VII\ngamma_rational = 1/5\nalpha1 = 3.0\nalpha2 = -3.0\n"
    assert main(["spectrum", _write(tmp_path, text)]) == 2


def test_parse_params_accepts_pi_suffix():
    kw = parse_params_text("case = V\ngamma = 2/7 pi\nalpha1 = -4\nalpha2 = -4\n")
    assert kw["rational"] == (2, 7)


def test_verify_limits_case(tmp_path, capsys):
    js = tmp_path / "r.json"
    assert main(["verify", "limits", "--case", "vii", "--json", str(js), "--seed", "5"]) == 0
    doc = json.loads(js.read_text())
    jsonschema.validate(doc, SCHEMA)
    assert doc["manifest"]["seed"] == 5
    ids = {r["check_id"] for r in doc["reports"]}
    assert ids == {"oqm_limit_VII", "rlimit_VII"}


def test_verify_oracle_with_params(tmp_path, capsys):
    js = tmp_path / "o.json"
    assert main(["verify", "oracle", "--params", _write(tmp_path, VIII_KM1_TEXT), "--json", str(js)]) == 0
    doc = json.loads(js.read_text())
    jsonschema.validate(doc, SCHEMA)
    assert "determinant_vs_closed_form" in {r["check_id"] for r in doc["reports"]}
    assert all(r["passed"] for r in doc["reports"])


def test_weight_csv(tmp_path):
    out = tmp_path / "w.csv"
    assert main(["weight", _write(tmp_path, VII_TEXT), "--samples", "101", "--out", str(out)]) == 0
    rows = list(csv.reader(io.StringIO(out.read_bytes().decode(), newline="")))
    assert rows[0] == ["x", "phi0_sq", "P_0", "P_1"]
    data = np.array(rows[1:], dtype=float)
    assert data.shape == (101, 4)
    assert np.all(data[:, 1] > 0)
    man = json.loads((tmp_path / "w.csv.manifest.json").read_text())
    assert man["command"] == "weight" and man["seed"] == 0


@pytest.mark.parametrize("name", ["v_two", "viii_k1", "vii_two"])
def test_weight_window_spans_decay_lengths(name):
    p = fixture(name)
    lo, hi = weight_window(p)
    # the asymptotic log-slope of phi0^2 matches the exponents used for the window
    right, left = S.decay_exponents(p)
    slope = np.diff(np.log(S.weight(p, np.array([39.0, 40.0]))))[0]
    assert slope == pytest.approx(2 * right, rel=1e-6)
    if p.case != "VII":
        slope = np.diff(np.log(S.weight(p, np.array([-40.0, -39.0]))))[0]
        assert slope == pytest.approx(-2 * left, rel=1e-6)
    assert hi * abs(right) >= 6 - 1e-12
    if p.case != "VII":
        assert -lo * abs(left) >= 6 - 1e-12


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "idqm", "--version"], capture_output=True, text=True)
    assert r.returncode == 0 and "0.1.0" in r.stdout
