from __future__ import annotations

import json

import pytest

from kummer_forms.cli import dump_form, load_form, main

TAU = ["--tau", "0.1", "1.2", "0.3", "0.4", "-0.2", "1.5"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_cassels_flynn_exact(capsys):
    code, doc = run(capsys, "form", "cassels-flynn", "--lambda", "2", "3", "5")
    assert code == 0 and doc["kind"] == "cassels-flynn" and doc["degree"] == 4
    assert all(isinstance(t["coefficient"], str) for t in doc["terms"])


@pytest.mark.parametrize(
    "argv",
    [
        ["form", "shioda", "--lambda", "2", "3", "5"],
        ["form", "cassels-flynn", "--lambda", "1/2", "-3", "7/4"],
        ["form", "goepel", "--node", "3", "5", "7", "11"],
        ["form", "goepel", *TAU],
        ["form", "gh", "--lambda", "2", "3", "5"],
        ["form", "rosenhain-quartic", "--node", "3", "5", "7", "11"],
        ["form", "octic", "--params", "1", "2", "3", "-5"],
        ["form", "barth", *TAU],
        ["form", "cassels-flynn", "--lambda", "2", "3", "5", "--domain", "numeric"],
    ],
)
def test_forms_round_trip(capsys, argv):
    code, doc = run(capsys, *argv)
    assert code == 0
    assert dump_form(load_form(doc), doc["kind"]) == doc


def test_enumerations(capsys):
    code, doc = run(capsys, "enumerate", "goepel-groups")
    assert code == 0 and doc["count"] == 15 and doc["translates"] == 60
    code, doc = run(capsys, "enumerate", "rosenhain-groups")
    assert doc["count"] == 20 and doc["translates"] == 80


def test_richelot_exact_and_numeric(capsys):
    code, doc = run(capsys, "richelot", "--lambda", "4", "7", "28")
    assert code == 0 and doc["image_roots"] == ["14/5", "10", "2", "-2", "14", "-14"]
    code, doc = run(capsys, "richelot", "--lambda", "2", "3", "5")
    assert code == 1 and "numeric" in doc["error"]["message"]
    code, doc = run(capsys, "richelot", "--lambda", "2", "3", "5", "--domain", "numeric")
    assert code == 0 and len(doc["image_roots"]) == 6


def test_theta_commands(capsys):
    code, doc = run(capsys, "theta-eval", *TAU, "--z", "0.1", "0", "0.2", "0.1")
    assert code == 0 and len(doc["theta"]) == 16
    code, doc = run(capsys, "moduli-from-tau", *TAU)
    assert code == 0 and len(doc["lambda"]) == 3
    code, doc = run(capsys, "theta-eval", *TAU, "--domain", "exact")
    assert code == 1 and doc["error"]["type"] == "DomainError"


def test_domain_and_usage_errors(capsys, tmp_path):
    code, doc = run(capsys, "form", "cassels-flynn", "--lambda", "2", "2", "5")
    assert code == 1 and "error" in doc
    code, doc = run(capsys, "theta-eval", "--tau", "0", "1", "0", "0", "0", "-1")
    assert code == 1
    assert main(["form", "cassels-flynn", "--lambda", "1", "2"]) == 2
    assert main(["no-such-command"]) == 2
    assert main(["form", "barth", "--params", "1", "2"]) == 2
    capsys.readouterr()
    out = tmp_path / "cf.json"
    assert main(["form", "cassels-flynn", "--lambda", "2", "3", "5", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["kind"] == "cassels-flynn"


def test_verify_subset(capsys):
    code, doc = run(capsys, "verify", "--seed", "7", "--trials", "2", "--taus", "2", "--families", "frobenius", "trope-linear")
    assert code == 0 and set(doc["families"]) == {"frobenius", "trope-linear"}
    assert doc["summary"]["all_pass"]
