import json

import pytest

from mixwitt import cli
from mixwitt.utils import log

@pytest.fixture(autouse=True)
def quiet_logs():
    log.setup_loguru(level="WARNING")

def _run(capsys, *argv) -> tuple[int, str, str]:
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err

def _json(capsys, *argv) -> dict:
    code, out, err = _run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)

def test_orderings(capsys):
    payload = _json(capsys, "orderings", "--poly", "t^2-2")
    assert payload["count"] == 2 and payload["degree"] == 2
    assert [P["index"] for P in payload["orderings"]] == [0, 1]

def test_partition(capsys):
    payload = _json(capsys, "partition", "--poly", "t^2-2", "--symbol=-1,t")
    assert payload["x_plus"] == [1]
    assert payload["x_minus"] == [0]

def test_witt_sig(capsys):
    payload = _json(capsys, "witt", "sig", "--form", "1,-1,t", "--poly", "t^2-2")
    assert payload["signatures"] == {"0": -1, "1": 1}
    assert payload["dim_mod2"] == 1
    assert payload["signed_disc"] == "t"

def test_witt_equal(capsys):
    payload = _json(capsys, "witt", "equal", "--form", "2,3", "--other", "1,6")
    assert payload["method"] == "witt-equal-rational" and payload["equal"] is False
    payload = _json(capsys, "witt", "equal", "--form", "1,1", "--other", "2,1", "--poly", "t^2-2")
    assert payload["verdict"] == "equivalent-weakly"

def test_witt_pfister(capsys):
    payload = _json(capsys, "witt", "pfister", "--slots=-1,-1")
    assert payload["dim"] == 4
    assert payload["signatures"] == {"0": 4}

def test_quat(capsys):
    payload = _json(capsys, "quat", "mul", "--symbol=-1,-1", "--x", "0,1,0,0", "--y", "0,0,1,0")
    assert payload["product"] == "(1)k"
    payload = _json(capsys, "quat", "slot", "--symbol=-1,-3", "--z", "1,1,0")
    assert payload["z_square"] == "-4"
    assert payload["slot"] == "-12"

def test_mixed(capsys, data_dir):
    payload = _json(capsys, "mixed", "mul", "--workspace", str(data_dir / "hamilton.json"), "--forms", "one,one")
    assert len(payload["json"]["scalar"]["entries"]) == 4
    assert payload["rdim2"] == 0
    payload = _json(capsys, "mixed", "rdim2", "--workspace", str(data_dir / "hamilton.json"), "--forms", "one,scalar")
    assert payload["rdim2"] == {"one": 0, "scalar": 0}

def test_sign_table_pairs(capsys, data_dir):
    code, out, _ = _run(capsys, "sign-table", "--workspace", str(data_dir / "hamilton.json"), "--forms", "one,scalar", "--table")
    assert code == 0
    assert out.splitlines() == ["form    P0", "one     (2,-2)", "scalar  (2,2)"]
    payload = _json(capsys, "sign-table", "--workspace", str(data_dir / "hamilton.json"), "--forms", "one,i")
    assert payload["rows"] == [{"form": "one", "pairs": [[2, -2]]}, {"form": "i", "pairs": [[0, 0]]}]

@pytest.mark.parametrize("polarization, values, labels", [
    ("ref:i", [[2], [-2], [0]], {"0": 1}),
    ("labels:0=-1", [[-2], [2], [0]], {"0": -1}),
    ("global", [[2], [-2], [0]], {"0": 1}),
])
def test_sign_table_polarized(capsys, data_dir, polarization, values, labels):
    payload = _json(capsys, "sign-table", "--workspace", str(data_dir / "split.json"), "--forms", "i,minus_i,j", "--polarization", polarization)
    assert [row["values"] for row in payload["rows"]] == values
    assert payload["labels"] == labels

def test_sign_table_stored_polarization(capsys, data_dir):
    code, out, _ = _run(capsys, "sign-table", "--workspace", str(data_dir / "hamilton.json"), "--forms", "one", "--polarization", "plus", "--table")
    assert code == 0
    assert out.splitlines()[1] == "one   2"

def test_sign_table_sqrt2(capsys, data_dir):
    payload = _json(capsys, "sign-table", "--workspace", str(data_dir / "sqrt2.json"), "--forms", "one,theta,i")
    assert payload["rows"] == [
        {"form": "one", "pairs": [[2, -2], [0, 0]]},
        {"form": "theta", "pairs": [[0, 0], [2, 2]]},
        {"form": "i", "pairs": [[0, 0], [2, -2]]},
    ]

def test_reference_find(capsys):
    payload = _json(capsys, "reference", "find", "--symbol=-1,3")
    assert payload["nonzero_set"] == [0]
    assert payload["text"] == "<(1)i>_s"
    payload = _json(capsys, "reference", "find", "--symbol=-1,-1")
    assert payload["form"] == [] and payload["nonzero_set"] == []

def test_polarize_principal(capsys, data_dir):
    payload = _json(capsys, "polarize", "principal", "--workspace", str(data_dir / "hamilton.json"), "--forms", "one,minus_one,scalar")
    assert payload["principal"] == {"one": {"labels": {"0": 1}}, "minus_one": {"labels": {"0": -1}}, "scalar": {"labels": {}}}

def test_spectrum(capsys, data_dir):
    payload = _json(capsys, "spectrum", "--workspace", str(data_dir / "hamilton.json"), "--primes", "3,5")
    assert len(payload["labels"]) == 7
    assert payload["x_tilde_size"] == 2
    payload = _json(capsys, "spectrum", "--poly", "t^2+1", "--symbol=-1,-1")
    assert payload["labels"] == [{"kind": "fundamental", "ordering": None, "p": None, "eta": None}]

def test_output_is_deterministic(capsys, data_dir):
    argv = ["spectrum", "--workspace", str(data_dir / "sqrt2.json"), "--primes", "3"]
    assert _run(capsys, *argv)[1] == _run(capsys, *argv)[1]

@pytest.mark.parametrize("argv, code, name", [
    (["orderings", "--poly", "t^2-1"], 2, "ReducibleDetected"),
    (["orderings", "--poly", "2t^2-1"], 2, "NotMonic"),
    (["orderings", "--poly", "t^2-2x"], 4, "ParseError"),
    (["witt", "sig", "--form", "1,0"], 2, "ZeroElement"),
    (["quat", "mul", "--symbol=-1,-1", "--x", "0,1,0", "--y", "0,0,1,0"], 4, "ParseError"),
    (["reference", "find", "--symbol=1,1", "--budget", "2"], 3, "SearchBudgetExceeded"),
    (["spectrum", "--symbol=-1,-1", "--primes", "2"], 2, "InvalidLabel"),
    (["partition"], 2, "InvalidInputError"),
])
def test_errors(capsys, argv, code, name):
    result, out, err = _run(capsys, *argv)
    assert result == code
    assert out == ""
    assert f"error: {name}: " in err

def test_workspace_errors(capsys, data_dir, tmp_path):
    result, _, err = _run(capsys, "sign-table", "--workspace", str(data_dir / "broken.json"))
    assert result == 4 and "error: ParseError: " in err
    result, _, err = _run(capsys, "sign-table", "--workspace", str(data_dir / "hamilton.json"), "--forms", "nope")
    assert result == 2 and "error: UnknownName: " in err
    path = tmp_path / "noref.json"
    path.write_text(json.dumps({"field": "t", "algebra": {"a": -1, "b": 3}, "forms": {"i": {"skew": [{"x": [0, 1, 0]}]}}}))
    result, _, err = _run(capsys, "sign-table", "--workspace", str(path))
    assert result == 2
    assert "error: MissingReference: " in err and "(ordering 0)" in err

def test_budget_is_restored(capsys):
    _run(capsys, "reference", "find", "--symbol=1,1", "--budget", "2")
    payload = _json(capsys, "reference", "find", "--symbol=1,1")
    assert payload["nonzero_set"] == [0]
