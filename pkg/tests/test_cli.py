import json
import subprocess
import sys

import pytest

from hdforms.cli import main
from hdforms.cyclic import reichstein_form
from hdforms.forms import form_from_json, form_to_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_json(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


@pytest.fixture
def r33(tmp_path):
    return write_json(tmp_path, "r33.json", form_to_json(reichstein_form(3, 3)))


@pytest.fixture
def diag(tmp_path):
    return write_json(
        tmp_path,
        "diag.json",
        {"dim": 2, "degree": 3, "entries": [{"idx": [1, 1, 1], "value": "1"}, {"idx": [2, 2, 2], "value": "1"}]},
    )


def test_cyclic(capsys):
    code, out, _ = run(capsys, "cyclic", "--n", "3", "--d", "3")
    assert code == 0
    rep = json.loads(out)
    assert form_from_json(rep).entries == {(1, 3, 3): 1, (2, 2, 3): 1}


def test_lift_and_failure(capsys):
    code, out, _ = run(capsys, "lift", "--n", "3", "--d", "3", "--a", "8,0")
    assert code == 0
    assert json.loads(out)["sigma"] == [["16", "0", "0"], ["0", "2", "0"], ["0", "0", "1/4"]]
    code, out, _ = run(capsys, "lift", "--n", "3", "--d", "3", "--a", "2,0")
    assert code == 1
    assert json.loads(out)["error"] == "NoRationalLift"


def test_lie_on_diagonal(capsys, diag):
    code, out, _ = run(capsys, "lie", "--form", diag)
    assert code == 0
    assert json.loads(out)["dim_lie"] == 0


def test_lie_and_center_on_cyclic(capsys, r33):
    _, out, _ = run(capsys, "lie", "--form", r33)
    rep = json.loads(out)
    assert rep["dim_lie"] == 2 and rep["derived_series"] == [2, 1, 0] and rep["solvable"]
    _, out, _ = run(capsys, "center", "--form", r33)
    rep = json.loads(out)
    assert rep["dim_center"] == 3 and rep["maximal"] and rep["regular"]
    assert rep["cyclic_element"] is not None


def test_regular_exit_codes(capsys, tmp_path, r33):
    code, out, _ = run(capsys, "regular", "--form", r33, "--two-regular")
    assert code == 0
    assert json.loads(out)["two_regular_witness"] == ["1", "0", "0"]
    bad = write_json(tmp_path, "bad.json", {"dim": 2, "degree": 3, "entries": [{"idx": [1, 1, 1], "value": "1"}]})
    code, out, _ = run(capsys, "regular", "--form", bad)
    assert code == 1
    assert json.loads(out)["radical"] == [["0", "1"]]


def test_decompose(capsys, diag, tmp_path):
    code, out, _ = run(capsys, "decompose", "--form", diag)
    assert code == 0
    rep = json.loads(out)
    assert len(rep["components"]) == 2 and not rep["indecomposable_over_Q"]
    bad = write_json(tmp_path, "bad.json", {"dim": 2, "degree": 3, "entries": [{"idx": [1, 1, 1], "value": "1"}]})
    assert run(capsys, "decompose", "--form", bad)[0] == 2


def test_witt_report(capsys):
    code, out, _ = run(capsys, "witt", "--n", "4", "--d", "3")
    assert code == 0
    rep = json.loads(out)
    assert rep["bracket_rule"] == "r-s"
    assert rep["grading"]["bracket_D_psi_coefficient"] == "-3"


def test_group_verbs(capsys):
    for argv in (["group", "mul"], ["group-mul"]):
        code, out, _ = run(capsys, *argv, "--n", "3", "--a", "2,1", "--b", "1,1")
        assert code == 0 and json.loads(out)["result"] == ["2", "5"]
    for argv in (["group", "inv"], ["group-inv"]):
        code, out, _ = run(capsys, *argv, "--a", "2,1")
        assert json.loads(out)["result"] == ["1/2", "-1/8"]
    code, _, err = run(capsys, "group-mul", "--n", "3", "--a", "0,1", "--b", "1,1")
    assert code == 2 and "a_1" in err


def test_chi_and_isometry(capsys, tmp_path, r33):
    tau = write_json(tmp_path, "tau.json", [["1", "2", "-1"], ["0", "1", "-1"], ["0", "0", "1"]])
    code, out, _ = run(capsys, "chi", "--form", r33, "--sigma", tau)
    assert code == 0 and json.loads(out)["a"] == ["1", "3"]
    code, out, _ = run(capsys, "chi", "--n", "3", "--d", "3", "--sigma", tau)
    assert json.loads(out)["a"] == ["1", "3"]
    assert run(capsys, "isometry", "--form", r33, "--sigma", tau)[0] == 0
    scale = write_json(tmp_path, "s.json", {"matrix": [["2", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]})
    code, out, _ = run(capsys, "isometry", "--form", r33, "--sigma", scale)
    assert code == 1 and json.loads(out) == {"isometry": False}
    assert run(capsys, "chi", "--form", r33, "--sigma", scale)[0] == 2


def test_eval_and_polarize(capsys, tmp_path, r33):
    code, out, _ = run(capsys, "eval", "--form", r33, "--vectors", "1,1,0;0,1,0;0,0,1")
    assert code == 0 and json.loads(out) == {"value": "1"}
    poly = write_json(tmp_path, "p.json", {"dim": 2, "terms": [{"exp": [2, 1], "coeff": "1"}]})
    _, out, _ = run(capsys, "polarize", poly)
    assert json.loads(out)["entries"] == [{"idx": [1, 1, 2], "value": "1/3"}]
    _, out, _ = run(capsys, "polarize", "--inverse", r33)
    assert {tuple(t["exp"]): t["coeff"] for t in json.loads(out)["terms"]} == {(0, 2, 1): "3", (1, 0, 2): "3"}


def test_construct(capsys):
    _, out, _ = run(capsys, "construct", "trace-matrix", "--m", "2", "--d", "3")
    assert form_from_json(out).dim == 4
    _, out, _ = run(capsys, "construct", "trace-field", "--minpoly=-2,0,0,1", "--b", "1,0,0", "--d", "3")
    f = form_from_json(out)
    assert f[(1, 1, 1)] == 3
    _, out, _ = run(capsys, "construct", "diagonal", "--coeffs", "1,1,1", "--d", "3")
    assert len(json.loads(out)["entries"]) == 3
    code, _, err = run(capsys, "construct", "trace-field", "--minpoly=-2,0,2", "--b", "1,0", "--d", "3")
    assert code == 2 and "monic" in err


@pytest.mark.parametrize(
    "entries, message",
    [
        ([{"idx": [1, 1, 2], "value": "1"}, {"idx": [1, 1, 2], "value": "1"}], "duplicate multi-index"),
        ([{"idx": [2, 1, 1], "value": "1"}], "unsorted multi-index"),
        ([{"idx": [1, 1, 1], "value": "0"}], "zero value"),
        ([{"idx": [1, 1, 5], "value": "1"}], "out of range"),
    ],
)
def test_parse_errors_exit_2(capsys, tmp_path, entries, message):
    path = write_json(tmp_path, "f.json", {"dim": 2, "degree": 3, "entries": entries})
    code, out, err = run(capsys, "lie", "--form", path)
    assert code == 2 and out == "" and message in err


def test_malformed_and_missing_files(capsys, tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{oops")
    code, _, err = run(capsys, "center", "--form", str(p))
    assert code == 2 and "malformed JSON" in err
    code, _, err = run(capsys, "center", "--form", str(tmp_path / "nope.json"))
    assert code == 2 and "cannot read" in err


def test_unknown_verb_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_form_round_trip_through_cli(capsys, tmp_path):
    raw = {"dim": 2, "degree": 3, "entries": [{"idx": [1, 2, 2], "value": "6/4"}, {"idx": [1, 1, 1], "value": "-2"}]}
    path = write_json(tmp_path, "f.json", raw)
    _, out, _ = run(capsys, "polarize", "--inverse", path)
    poly = write_json(tmp_path, "p.json", json.loads(out))
    _, out, _ = run(capsys, "polarize", poly)
    assert json.loads(out) == form_to_json(form_from_json(raw))


def test_deterministic_subprocess(tmp_path):
    cmd = [sys.executable, "-m", "hdforms", "center", "--form", "-"]
    data = json.dumps(form_to_json(reichstein_form(4, 3)))
    outs = {subprocess.run(cmd, input=data, capture_output=True, text=True, check=True).stdout for _ in range(2)}
    assert len(outs) == 1
    assert json.loads(outs.pop())["dim_center"] == 4
