import json

import pytest
from click.testing import CliRunner

from main import cli


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def report_path(tmp_path):
    return tmp_path / "report.json"


def _json(path):
    return json.loads(path.read_text())


def _write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(payload if isinstance(payload, str) else json.dumps(payload))
    return str(path)


def test_catalog_lists_systems_and_algebras(runner):
    result = runner.invoke(cli, ["catalog"])
    assert result.exit_code == 0
    assert "so3" in result.output
    assert "octonions" in result.output


def test_catalog_shows_one_system(runner, report_path):
    result = runner.invoke(cli, ["catalog", "S2", "--format", "json", "--output", str(report_path)])
    assert result.exit_code == 0
    report = _json(report_path)
    assert report["kind"] == "system"
    assert report["names"] == ["e", "f"]
    assert [0, 1, 0, 0, [2, 1]] in report["ternary"]
    assert report["timing_ms"] is None


def test_axioms_pass_for_catalog_system(runner):
    result = runner.invoke(cli, ["axioms", "--system", "so3"])
    assert result.exit_code == 0
    assert "[PASS] cyclic" in result.output


def test_axioms_fail_with_witness(runner, tmp_path, report_path):
    path = _write(tmp_path, "bad.json", {"dim": 3, "ternary": [[0, 1, 2, 0, 1, 1], [1, 0, 2, 0, -1, 1]]})
    result = runner.invoke(cli, ["axioms", "--file", path, "--format", "json", "--output", str(report_path)])
    assert result.exit_code == 1
    checks = {c["name"]: c for c in _json(report_path)["checks"]}
    assert checks["ternary-skew"]["pass"] is True
    assert checks["cyclic"]["pass"] is False
    assert checks["cyclic"]["witness"] == [0, 1, 2]


def test_malcev_mode_adds_bol_checks(runner):
    result = runner.invoke(cli, ["axioms", "--system", "so3-lie", "--mode", "malcev"])
    assert result.exit_code == 0
    assert "bol:bol-binary" in result.output


def test_malformed_json_is_a_usage_error(runner, tmp_path, report_path):
    path = _write(tmp_path, "broken.json", '{"dim": 2, "ternary": [')
    result = runner.invoke(cli, ["axioms", "--file", path, "--format", "json", "--output", str(report_path)])
    assert result.exit_code == 2
    report = _json(report_path)
    assert report["position"].startswith("line 1 column")


def test_schema_violation_is_a_usage_error(runner, tmp_path, report_path):
    path = _write(tmp_path, "range.json", {"dim": 2, "ternary": [[0, 1, 5, 0, 1, 1]]})
    result = runner.invoke(cli, ["axioms", "--file", path, "--format", "json", "--output", str(report_path)])
    assert result.exit_code == 2
    assert "out of range" in _json(report_path)["error"]


def test_unknown_system_is_a_usage_error(runner):
    assert runner.invoke(cli, ["axioms", "--system", "sl7"]).exit_code == 2


def test_two_sources_are_rejected(runner, tmp_path):
    path = _write(tmp_path, "s.json", {"dim": 1})
    result = runner.invoke(cli, ["axioms", "--system", "S2", "--file", path])
    assert result.exit_code == 2


def test_envelope(runner, report_path):
    result = runner.invoke(cli, ["envelope", "--system", "S2", "--format", "json", "--output", str(report_path)])
    assert result.exit_code == 0
    report = _json(report_path)
    assert report["dim"] == 3
    assert report["embedding"] == [1, 2]
    assert report["grading"] == [1, -1, -1]


def test_mul(runner, report_path):
    result = runner.invoke(cli, ["mul", "--system", "S2", "f", "e", "--format", "json", "--output", str(report_path)])
    assert result.exit_code == 0
    report = _json(report_path)
    assert report["product"] == "e.f"
    assert report["terms"] == [[[0, 1], [1, 1]]]


def test_mul_rejects_unknown_generator(runner):
    assert runner.invoke(cli, ["mul", "--system", "S2", "e", "g"]).exit_code == 2


def test_centralizer_json(runner, report_path):
    args = ["centralizer", "--system", "S2", "--degree", "2", "--format", "json", "--output", str(report_path)]
    result = runner.invoke(cli, args)
    assert result.exit_code == 0
    report = _json(report_path)
    assert report["dim"] == 3
    assert report["verdict"] is True
    assert report["strategy"] == "graded"


def test_centralizer_degree_above_limit(runner):
    assert runner.invoke(cli, ["centralizer", "--system", "S2", "--degree", "99"]).exit_code == 2


def test_timing_is_reported_on_request(runner, report_path):
    args = ["catalog", "--timing", "--format", "json", "--output", str(report_path)]
    assert runner.invoke(cli, args).exit_code == 0
    num, den = _json(report_path)["timing_ms"]
    assert den >= 1


def test_nuclei(runner, report_path):
    result = runner.invoke(cli, ["nuclei", "--algebra", "cubic", "--format", "json", "--output", str(report_path)])
    assert result.exit_code == 0
    report = _json(report_path)
    assert report["center_dim"] == 3
    assert report["ln_alt_dim"] == 3


def test_decompose(runner):
    result = runner.invoke(cli, ["decompose", "--algebra", "cubic", "--vector", "0,1,0"])
    assert result.exit_code == 0
    assert "[PASS] direct-sum" in result.output


def test_decompose_failed_hypothesis(runner):
    result = runner.invoke(cli, ["decompose", "--algebra", "matrix2", "--vector", "0,1,0,0", "--strict"])
    assert result.exit_code == 1
    assert "V-generates-A" in result.output


def test_decompose_bad_vector(runner):
    assert runner.invoke(cli, ["decompose", "--algebra", "cubic", "--vector", "0,1"]).exit_code == 2


def test_verify_commutator(runner, report_path):
    args = ["verify", "commutator-s2", "--max-n", "3", "--format", "json", "--output", str(report_path)]
    result = runner.invoke(cli, args)
    assert result.exit_code == 0
    report = _json(report_path)
    assert [row["equal"] for row in report["rows"]] == [True, True, True]


def test_verify_so3_determinant(runner):
    result = runner.invoke(cli, ["verify", "so3-determinant", "--max-n", "4"])
    assert result.exit_code == 0
    assert "[PASS] so3-determinant" in result.output


def test_verify_unknown_id(runner):
    assert runner.invoke(cli, ["verify", "riemann"]).exit_code == 2


def test_reports_are_deterministic(runner, tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    for path in (first, second):
        runner.invoke(cli, ["verify", "iterated-commutator-r2", "--max-n", "3", "--format", "json", "--output", str(path)])
    assert first.read_text() == second.read_text()
