import csv
import io
import json
import math
import subprocess
import sys

import jsonschema
import pytest

from lorentz_casimir import cli
from lorentz_casimir.verify import report_schema

PI = math.pi


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def pressure_json(capsys, *argv):
    code, out, _ = run(capsys, "pressure", "--format", "json", *argv)
    assert code == 0
    return json.loads(out)


def test_pressure_cc(capsys):
    rep = pressure_json(capsys, "--setup", "cc", "--a", "1")
    assert rep["net_pressure"] == pytest.approx(-0.041123352, abs=1e-9)
    assert rep["verdict"] == "attractive"
    assert rep["divergent_left"] == "-3/(16 pi^2)"
    assert rep["divergent_right"] == "+3/(16 pi^2)"
    assert rep["divergence_cancels"] is True
    assert rep["left_finite"] + rep["right_finite"] == rep["net_pressure"]


def test_pressure_cp(capsys):
    rep = pressure_json(capsys, "--setup", "CP", "--a", "1")
    assert rep["net_pressure"] == pytest.approx(0.035982933, abs=1e-9)
    assert rep["verdict"] == "repulsive"


def test_pressure_oracle(capsys):
    closed = pressure_json(capsys, "--setup", "cc")["net_pressure"]
    oracle = pressure_json(capsys, "--setup", "cc", "--method", "oracle")["net_pressure"]
    assert abs(oracle - closed) < 1e-6


def test_pressure_si(capsys):
    rep = pressure_json(capsys, "--setup", "cc", "--a", "1e-6", "--si")
    # about 1.3 mPa at one micron
    assert rep["units"] == "Pa"
    assert rep["net_pressure_si"] == pytest.approx(-PI**2 / 240 * 3.16152677e-26 / 1e-24, rel=1e-12)
    assert rep["net_pressure_si"] == pytest.approx(-1.3e-3, rel=0.01)


def test_pressure_text(capsys):
    code, out, _ = run(capsys, "pressure")
    assert code == 0
    assert "net_pressure: -0.041123351671205" in out
    assert "verdict: attractive" in out


@pytest.mark.parametrize("argv", [
    ["pressure", "--a", "0"],
    ["pressure", "--a", "-1"],
    ["pressure", "--setup", "pp"],
    ["pressure", "--method", "zeta"],
    ["profile", "--z-min", "0.5", "--z-max", "0.4"],
    ["profile", "--z-max", "1.0"],
    ["profile", "--samples", "1"],
    ["profile", "--quantities", "EE,XY"],
    ["sweep", "--a-min", "2", "--a-max", "1"],
    ["verify", "--suite", "nope"],
    ["frobnicate"],
    [],
])
def test_invalid_arguments_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = cli.main(argv)
        raise SystemExit(code)
    assert exc.value.code == 2


def read_csv(text):
    return list(csv.reader(io.StringIO(text)))


def test_profile_csv(capsys):
    code, out, _ = run(capsys, "profile", "--setup", "cc", "--samples", "11",
                       "--z-min", "0.25", "--z-max", "0.75", "--quantities", "EE,e2mb2")
    assert code == 0
    rows = read_csv(out)
    assert rows[0] == ["z", "xi", "EE_xx", "EE_yy", "EE_zz", "e2mb2"]
    assert len(rows) - 1 == 11
    mid = rows[6]
    assert float(mid[0]) == 0.5
    assert float(mid[-1]) == pytest.approx(PI**3 / 2, rel=1e-12)
    assert float(mid[4]) == pytest.approx(4 * PI**3 / 45, rel=1e-12)
    assert "\r" not in out


def test_profile_default_row_count(capsys):
    _, out, _ = run(capsys, "profile")
    rows = read_csv(out)
    assert len(rows) == 102
    assert float(rows[1][0]) == pytest.approx(0.01)
    assert float(rows[-1][0]) == pytest.approx(0.99)


def test_profile_cp_eb_zero(capsys):
    _, out, _ = run(capsys, "profile", "--setup", "cp", "--samples", "25", "--quantities", "EB,e2mb2")
    rows = read_csv(out)
    for r in rows[1:]:
        assert [float(v) for v in r[2:5]] == [0.0, 0.0, 0.0]


def test_profile_seventeen_digits(capsys):
    _, out, _ = run(capsys, "profile", "--samples", "3", "--z-min", "0.3", "--z-max", "0.7",
                    "--quantities", "force_density")
    rows = read_csv(out)
    v = rows[2][2]
    assert float(v) == pytest.approx(PI**3 / 2 / (8 * PI), rel=1e-15)
    assert repr(float(v)) == repr(float(format(float(v), ".17g")))


def test_profile_json(capsys):
    _, out, _ = run(capsys, "profile", "--format", "json", "--samples", "5", "--quantities", "e2mb2")
    doc = json.loads(out)
    assert doc["columns"] == ["z", "xi", "e2mb2"]
    assert len(doc["rows"]) == 5


def test_sweep(capsys):
    _, out, _ = run(capsys, "sweep", "--a-min", "1", "--a-max", "4", "--samples", "3")
    rows = read_csv(out)
    assert rows[0][:4] == ["a", "cc", "cp", "ratio"]
    a, cc, cp, ratio = (float(v) for v in rows[1][:4])
    assert a == 1 and cc == pytest.approx(-PI**2 / 240) and cp == pytest.approx(7 * PI**2 / 1920)
    assert float(rows[2][0]) == pytest.approx(2.0)
    for r in rows[1:]:
        assert float(r[3]) == pytest.approx(-7 / 8, abs=1e-14)


def test_output_files_are_byte_identical(tmp_path):
    paths = [tmp_path / f"p{i}.csv" for i in range(2)]
    for p in paths:
        assert cli.main(["profile", "--setup", "cp", "--samples", "37", "--output", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    j = [tmp_path / f"v{i}.json" for i in range(2)]
    for p in j:
        assert cli.main(["pressure", "--setup", "cp", "--format", "json", "--output", str(p)]) == 0
    assert j[0].read_bytes() == j[1].read_bytes()


def test_output_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path))
    assert cli.main(["pressure", "--output", "sub/p.txt"]) == 0
    assert (tmp_path / "sub" / "p.txt").read_text().startswith("setup: cc")


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nsetup = cp\na = 2\nsamples = 4\nquantities = e2mb2\n")
    rep = pressure_json(capsys, "--config", str(cfg))
    assert rep["setup"] == "cp" and rep["a"] == 2.0
    assert rep["net_pressure"] == pytest.approx(7 * PI**2 / 1920 / 16)
    code, out, _ = run(capsys, "--config", str(cfg), "profile")
    assert code == 0 and len(read_csv(out)) == 5
    # explicit flags beat the file
    rep = pressure_json(capsys, "--config", str(cfg), "--setup", "cc")
    assert rep["setup"] == "cc"


def test_bad_config(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("setup cp\n")
    code, _, err = run(capsys, "--config", str(cfg), "pressure")
    assert code == 2 and "key=value" in err
    code, _, _ = run(capsys, "--config", str(tmp_path / "missing.cfg"), "pressure")
    assert code == 2


@pytest.mark.parametrize("suite", ["identity", "pressure", "modes"])
def test_verify_report_validates(capsys, suite):
    code, out, _ = run(capsys, "verify", "--suite", suite)
    rep = json.loads(out)
    jsonschema.validate(rep, report_schema())
    assert code == 0 and rep["passed"]
    assert all(c["name"].startswith(suite + ".") for c in rep["checks"])


def test_verify_identity_tolerance(capsys):
    _, out, _ = run(capsys, "verify", "--suite", "identity")
    checks = json.loads(out)["checks"]
    assert {c["tolerance"] for c in checks} == {1e-14}


def test_verify_failure_exit_1(capsys, monkeypatch):
    from lorentz_casimir import verify

    monkeypatch.setitem(verify._RUNNERS, "identity", lambda: [verify.Check.within("broken", 1.0, 0.5)])
    code, out, _ = run(capsys, "verify", "--suite", "identity")
    assert code == 1
    rep = json.loads(out)
    jsonschema.validate(rep, report_schema())
    assert rep["passed"] is False


def test_schema_rejects_malformed():
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate({"suite": "all", "passed": True, "checks": [{"name": "x"}]}, report_schema())


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lorentz_casimir", "pressure", "--setup", "cp"],
                          capture_output=True, text=True, check=True)
    assert "verdict: repulsive" in proc.stdout
