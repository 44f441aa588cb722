import json
from importlib import resources

import pytest

from scissors.cli import main
from scissors.scenario import Scenario, ScenarioError

DATA = resources.files("scissors") / "data"


def path(name):
    return str(DATA / name)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


@pytest.mark.parametrize("name", ["interval_exchange.json", "rotated_square.json", "trivial.json", "overlap.json"])
def test_round_trip(name):
    sc = Scenario.load(path(name))
    again = Scenario.loads(sc.dumps())
    assert again.to_json() == sc.to_json()


def test_verify_exit_codes(capsys, tmp_path):
    assert run(capsys, "verify", path("interval_exchange.json"))[0] == 0
    code, out = run(capsys, "verify", path("overlap.json"))
    assert code == 1 and "Overlap(0,1)" in out.out
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "verify", str(bad))[0] == 2


def test_undecidable_exit_code(capsys, tmp_path):
    data = json.loads((DATA / "interval_exchange.json").read_text())
    # a witness with no digits cannot separate w from 5/2
    data["symbols"] = [{"name": "w", "witness": ["2", "3"]}]
    data["target"] = {"cells": [["0", {"w": "1", "1": "-5/2"}]]}
    f = tmp_path / "undecidable.json"
    f.write_text(json.dumps(data))
    assert run(capsys, "verify", "--precision-bits", "64", str(f))[0] == 3


def test_schema_errors():
    data = json.loads((DATA / "rotated_square.json").read_text())
    data["pieces"][0]["cells"][0][0] = [0.5, 0]
    with pytest.raises(ScenarioError):
        Scenario.from_json(data)
    data = json.loads((DATA / "interval_exchange.json").read_text())
    data["symbols"] = []
    with pytest.raises(ScenarioError):
        Scenario.from_json(data)
    data["version"] = 2
    with pytest.raises(ScenarioError):
        Scenario.from_json(data)


def test_trace_outputs(capsys):
    code, out = run(capsys, "trace", path("interval_exchange.json"))
    assert code == 0
    assert "chain: ([y]⊗x + [−x]⊗y) − ([0]⊗x + [0]⊗y)" in out.out
    assert "class: y⊗x − x⊗y" in out.out
    code, out = run(capsys, "trace", "--json", path("rotated_square.json"))
    payload = json.loads(out.out)
    assert payload["class_text"] == "{p=5: −2}⊗1" and payload["nonzero"] is True
    code, out = run(capsys, "trace", path("trivial.json"))
    assert "class: 0" in out.out


def test_json_is_stable(capsys):
    a = run(capsys, "trace", "--json", path("rotated_square.json"))[1].out
    b = run(capsys, "trace", "--json", path("rotated_square.json"))[1].out
    assert a == b


def test_k0_and_check_measure(capsys):
    code, out = run(capsys, "k0", path("ea_z2.json"))
    assert code == 0 and "K0 = ℤ/2" in out.out
    code, out = run(capsys, "k0", "--json", path("toy.json"))
    assert json.loads(out.out)["classes"] == {"a": [2], "b": [1]}
    assert run(capsys, "check-measure", path("toy_measure.json"))[0] == 0
    assert run(capsys, "check-measure", path("toy_inconsistent.json"))[0] == 1
    assert run(capsys, "check-measure", path("rotated_square.json"))[0] == 0
    assert run(capsys, "check-measure", "--measure", "cells", path("rotated_square.json"))[0] == 1


def test_render(capsys, tmp_path):
    out = tmp_path / "r.svg"
    assert run(capsys, "render", path("rotated_square.json"), str(out))[0] == 0
    svg = out.read_text()
    assert svg.startswith("<svg") and svg.count('data-piece="11"') == 2
    assert 'data-piece="12"' not in svg
