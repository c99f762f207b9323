from __future__ import annotations

import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from cartan_principal.cli import basis_document, basis_from_document, dumps, main
from cartan_principal.principal import dual_principal_basis, principal_basis

DOCS = Path(__file__).resolve().parents[1] / "docs"
BASIS_SCHEMA = json.loads((DOCS / "output.schema.json").read_text())
INFO_SCHEMA = json.loads((DOCS / "info.schema.json").read_text())


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_basis_a2_json_verified():
    code, text = run("basis", "A2", "--format", "json", "--verify")
    assert code == 0
    doc = json.loads(text)
    jsonschema.validate(doc, BASIS_SCHEMA)
    assert [row["coordinates"] for row in doc["basis"]] == [["1", "1"], ["1", "-1"]]
    assert doc["certification"]["certified"] is True
    assert doc["form"] == "canonical"


def test_basis_g2_text():
    code, text = run("basis", "G2")
    assert code == 0
    assert "(5, 3)" in text and "(3, -1)" in text


def test_json_is_deterministic():
    first = run("basis", "D4", "--format", "json", "--verify")[1]
    assert first == run("basis", "D4", "--format", "json", "--verify")[1]


@pytest.mark.parametrize("t", ["A3", "B3", "D4", "G2", "F4"])
@pytest.mark.parametrize("dual", [False, True])
def test_document_roundtrip(t, dual):
    pb = (dual_principal_basis if dual else principal_basis)(t)
    doc = json.loads(dumps(basis_document(pb)))
    jsonschema.validate(doc, BASIS_SCHEMA)
    assert basis_from_document(doc) == pb


def test_e8_guard_exit_code(capsys):
    code, _ = run("basis", "E8")
    assert code == 2
    assert "orbit cap" in capsys.readouterr().err


def test_invalid_arguments():
    assert run("basis", "Q3")[0] == 2
    assert run("basis", "B1")[0] == 2
    assert run("basis", "A2", "--route", "nowhere")[0] == 2
    assert run("basis", "B3", "--seed-weight", "7")[0] == 2
    assert run("info", "A2", "colour")[0] == 2
    assert run()[0] == 2


def test_dependent_seed_exit_code(capsys):
    code, _ = run("basis", "D4", "--route", "orbit", "--seed-weight", "1")
    assert code == 3
    assert "linearly dependent" in capsys.readouterr().err


def test_verify_command(tmp_path):
    good = tmp_path / "good.json"
    good.write_text(run("basis", "C3", "--format", "json")[1])
    assert run("verify", str(good))[0] == 0
    doc = json.loads(good.read_text())
    doc["basis"][1]["coordinates"] = [str(int(a) + int(b)) for a, b in
                                      zip(doc["basis"][1]["coordinates"], doc["basis"][0]["coordinates"])]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, text = run("verify", str(bad))
    assert code == 4
    assert "NOT certified" in text
    code, text = run("verify", str(bad), "--format", "json")
    assert code == 4 and json.loads(text)["certified"] is False


def test_verify_malformed(tmp_path):
    p = tmp_path / "x.json"
    p.write_text('{"type": "A2"}')
    assert run("verify", str(p))[0] == 2
    assert run("verify", str(tmp_path / "missing.json"))[0] == 2


def test_dual_flag():
    code, text = run("basis", "B3", "--dual", "--format", "json", "--verify")
    doc = json.loads(text)
    assert code == 0
    assert doc["coordinates"] == "simple roots"
    assert doc["certification"]["certified_on"] == "C3"


@pytest.mark.parametrize(
    "argv, expected",
    [
        (("info", "D4", "exponents"), "1,3,3,5\n"),
        (("info", "B3", "dual"), "C3\n"),
        (("info", "A2", "dims"), "3,5\n"),
    ],
)
def test_info_text(argv, expected):
    assert run(*argv) == (0, expected)


@pytest.mark.parametrize("what", ["exponents", "roots", "dual", "dims", "triple"])
def test_info_json(what):
    code, text = run("info", "G2", what, "--format", "json")
    assert code == 0
    doc = json.loads(text)
    jsonschema.validate(doc, INFO_SCHEMA)
    assert doc["query"] == what


def test_info_triple_text():
    code, text = run("info", "D4", "triple")
    assert code == 0
    assert "6*f1 + 10*f2 + 6*f3 + 6*f4" in text


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cartan_principal", "info", "E6", "exponents"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "1,4,5,7,8,11"
