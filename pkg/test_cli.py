# test_cli.py
import json
import logging

import pytest

from main import main
from utils import serialization

# Configurar logging
logging.basicConfig(level=logging.DEBUG)
logger = logging.getLogger(__name__)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_classnumber(capsys):
    code, out = run(capsys, "classnumber", "-d", "15", "--json")
    assert code == 0
    assert out.strip() == '{"d":"15","h":"2"}'


def test_classify_json(capsys):
    code, out = run(capsys, "classify", "-N", "70", "-p", "103", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["tag"] == "E1"
    assert data["f"] == "12"
    assert data["factorization"]["l1"] == "7"


def test_eval_with_verification(capsys):
    code, out = run(capsys, "eval", "-N", "14", "-p", "11", "--verify", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["verified"] is True
    assert data["closed_form"]["text"] == "-11·√(-11)"


def test_eval_pure_case(capsys):
    code, out = run(capsys, "eval", "-N", "9", "-p", "2", "--json")
    assert code == 0
    assert json.loads(out)["case"] == "PURE"


def test_json_output_is_canonical(capsys):
    _, out = run(capsys, "eval", "-N", "70", "-p", "103", "--json")
    assert serialization.dumps(json.loads(out)) == out.strip()


def test_unsupported_case_exit_code(capsys):
    code, _ = run(capsys, "eval", "-N", "31", "-p", "2")
    assert code == 2


def test_budget_exit_codes(capsys):
    code, _ = run(capsys, "eval", "-N", "8", "-p", "3", "--budget", "5", "--strict")
    assert code == 3
    code, out = run(capsys, "eval", "-N", "8", "-p", "3", "--budget", "5", "--json")
    assert code == 0
    assert json.loads(out)["unit"].startswith("UNRESOLVED")


def test_verify_report_notes(capsys):
    code, out = run(capsys, "verify", "-N", "22", "-p", "3", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["match"] is True
    assert data["notes"]
    code, text = run(capsys, "verify", "-N", "22", "-p", "3")
    assert "CONFERE" in text


def test_oracle_command(capsys):
    code, out = run(capsys, "oracle", "-N", "3", "-p", "2", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["value"] == {"m": "6", "coeffs": ["2", "0"]}


def test_powers_command(capsys):
    code, out = run(capsys, "powers", "-N", "7", "-p", "2", "--verify", "--json")
    data = json.loads(out)
    assert code == 0
    assert len(data["powers"]) == 6
    assert all(row["verified"] for row in data["powers"])


def test_sweep_command(capsys, tmp_path):
    csv_path = tmp_path / "rows.csv"
    code, out = run(capsys, "sweep", "--N-max", "6", "--p-max", "5", "--workers", "1",
                    "--csv", str(csv_path), "--json")
    assert code == 0
    assert json.loads(out)["failures"] == []
    assert csv_path.exists()


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["eval"])
    assert exc.value.code == 64
    code, _ = run(capsys, "eval", "-N", "14", "-p", "11", "--mu", "2")
    assert code == 64
    code, _ = run(capsys, "sweep", "--N-max", "6", "--q-budget", "99999999999")
    assert code == 64


def test_eval_reports_reduction_plan(capsys):
    code, out = run(capsys, "eval", "-N", "14", "-p", "11", "--lambda", "7", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["plan"] == {"lambda": "7", "N_sub": "2", "f_sub": "1", "lift_s": "3", "conj_flag": False,
                            "sub_case": "QUADRATIC"}
    assert data["closed_form"]["text"] == "-11·√(-11)"


def test_sweep_honours_cli_budget(capsys, monkeypatch):
    monkeypatch.setenv("GSLAB_BUDGET", "100")
    code, _ = run(capsys, "sweep", "--N-max", "4", "--p-max", "3", "--q-budget", "1000", "--workers", "1")
    assert code == 64
    code, out = run(capsys, "sweep", "--N-max", "4", "--p-max", "3", "--q-budget", "1000",
                    "--budget", "10000", "--workers", "1", "--json")
    assert code == 0
    assert json.loads(out)["failures"] == []


def test_eval_emits_cyclotomic_value_without_verify(capsys):
    code, out = run(capsys, "eval", "-N", "30", "-p", "17", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["verified"] is None
    assert data["cyclo"] == {"m": "1", "coeffs": ["-289"]}
