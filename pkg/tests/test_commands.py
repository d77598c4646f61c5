from fractions import Fraction

import pytest
from pydantic import ValidationError

from src.commands.inputs import parse_uv_expression, parse_vector, system_from_file
from src.commands.render import render, to_jsonable
from src.models.command import Command
from src.models.report import CheckResult, OutputFormat, Report
from src.services.errors import InputError
from src.services.verification import Verifier


def test_parse_uv_expression(s2_session):
    parsed = parse_uv_expression(s2_session, "e*f + 1/2 e")
    assert parsed == s2_session.element({(0, 1): 1, (0,): Fraction(1, 2)})
    assert parse_uv_expression(s2_session, "-e") == -s2_session.generator(0)
    assert parse_uv_expression(s2_session, "3") == 3


@pytest.mark.parametrize("text", ["", "e g", "e 2"])
def test_parse_uv_expression_errors(s2_session, text):
    with pytest.raises(InputError):
        parse_uv_expression(s2_session, text)


def test_parse_vector():
    assert parse_vector("0,1,-1/2", 3) == {1: 1, 2: Fraction(-1, 2)}
    with pytest.raises(InputError) as info:
        parse_vector("0,x,0", 3, "--vector 1")
    assert info.value.position == "--vector 1[1]"
    with pytest.raises(InputError):
        parse_vector("1,1", 3)


def test_system_from_file(tmp_path):
    path = tmp_path / "s2.json"
    path.write_text('{"dim": 2, "names": ["e", "f"], "ternary": [[0, 1, 0, 0, 2, 1], [1, 0, 0, 0, -2, 1]]}')
    T = system_from_file(path)
    assert T.names == ("e", "f")
    assert T.ternary[(0, 1, 0)] == {0: 2}


def test_missing_file_is_input_error(tmp_path):
    with pytest.raises(InputError):
        system_from_file(tmp_path / "absent.json")


def test_command_requires_one_source():
    with pytest.raises(ValidationError):
        Command(verb="axioms")
    with pytest.raises(ValidationError):
        Command(verb="nuclei", system="S2")
    assert Command(verb="catalog").system is None


def test_reports_reject_floats():
    assert to_jsonable({"x": Fraction(3, 4), "flag": True}) == {"x": [3, 4], "flag": True}
    with pytest.raises(TypeError):
        to_jsonable([0.5])


def test_text_report_shows_witness():
    report = Report(command="axioms", checks=[CheckResult(name="cyclic", passed=False, witness=[0, 1, 2])], data={"dim": 3})
    text = render(report, OutputFormat.TEXT)
    assert "[FAIL] cyclic (witness: [0, 1, 2])" in text
    assert "dim: 3" in text


def test_verifier_ids_and_runs():
    verifier = Verifier(cases=2, seed=3)
    assert "so3-determinant" in verifier.ids
    checks, data = verifier.run("so3-determinant", max_n=3)
    assert all(check.passed for check in checks)
    assert data["rows"][0] == {"npq": [0, 0, 0], "det": [16, 1], "formula": [16, 1]}
    with pytest.raises(KeyError):
        verifier.run("riemann")
