import io
import json
import subprocess
import sys

import pytest

from ghilb.cli import main, run_compute
from ghilb.errors import InputError

PM1 = {
    "rank": 2,
    "base": "QQ",
    "unit": ["1", "0"],
    "constants": [
        {"i": 1, "j": 1, "k": 1, "c": "1"},
        {"i": 1, "j": 2, "k": 2, "c": "1"},
        {"i": 2, "j": 2, "k": 1, "c": "1"},
    ],
}
ROOT_S = dict(PM1, base="QQ[s]", constants=PM1["constants"][:2] + [{"i": 2, "j": 2, "k": 1, "c": "s"}])


def call(argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_delta_one_by_one():
    res = run_compute("delta", {"command": "delta", "n": 1, "x": ["t"], "y": ["t"]})
    assert res["degree"] == 1
    assert res["result"] == [{"tuple": ["t^2"], "coeff": "1"}]


def test_discriminant_command():
    assert run_compute("discriminant", {"algebra": PM1}) == {"result": "4"}
    assert run_compute("discriminant", {"algebra": ROOT_S}) == {"result": "4*s"}


def test_eval_command():
    doc = {"elem": {"delta": {"x": ["1", "t"], "y": ["1", "t"]}}, "points": [0, 1]}
    assert run_compute("eval", doc) == {"result": "1"}
    assert run_compute("eval", dict(doc, points="0;1")) == {"result": "1"}


def test_gamma_shuffle_internal_mul():
    g = run_compute("gamma", {"a": 2, "f": "x + y"})
    assert [term["tuple"] for term in g["result"]] == [["x", "x"], ["y", "x"], ["y", "y"]]
    t1 = run_compute("gamma", {"a": 1, "f": "t"})["result"]
    sh = run_compute("shuffle", {"u": t1, "v": t1})
    assert sh["result"] == [{"tuple": ["t", "t"], "coeff": "2"}]
    im = run_compute("internal-mul", {"u": {"gamma": {"a": 2, "f": "t"}}, "v": {"gamma": {"a": 2, "f": "t"}}})
    assert im["result"] == [{"tuple": ["t^2", "t^2"], "coeff": "1"}]


def test_margin_product_command():
    res = run_compute("margin-product", {"factors": [[[1, "x"], [1, "1"]], [[1, "y"], [1, "1"]]]})
    assert res["agrees_with_internal_product"] is True
    assert len(res["result"]) == 2


def test_sigma_command():
    res = run_compute("sigma", {"algebra": PM1, "tensor": {"gamma": {"a": 2, "f": "e2"}}})
    assert res == {"result": "-1"}


def test_norm_command():
    res = run_compute("norm", {"algebra": ROOT_S, "images": {"t": ["0", "1"]}})
    assert res["norm_values"] == ["4*s"]
    assert res["discriminant"] == "4*s"
    assert res["equal"] is True


def test_plucker_command():
    qxq = {"rank": 2, "base": "QQ", "unit": ["1", "1"],
           "constants": [{"i": 1, "j": 1, "k": 1, "c": "1"}, {"i": 2, "j": 2, "k": 2, "c": "1"}]}
    res = run_compute("plucker", {"algebra": qxq, "images": {"t": ["0", "1"]}, "V": ["1", "t", "t^2"]})
    assert res["minors"] == ["1", "1", "0"]


def test_chart_command_output():
    res = run_compute("chart", {"tuple": ["1", "t"], "points": "0;1"})
    assert res["discriminant"] == "1"
    assert {"i": 2, "j": 2, "k": 2, "c": "1"} in res["algebra"]["constants"]


def test_schema_violation():
    with pytest.raises(InputError, match="schema"):
        run_compute("delta", {"x": ["t"], "y": [3]})
    with pytest.raises(InputError):
        run_compute("delta", {"command": "gamma", "x": ["t"], "y": ["t"]})


def test_compute_exit_codes(tmp_path, monkeypatch):
    f = tmp_path / "in.json"
    f.write_text(json.dumps({"algebra": PM1}))
    code, out, _ = call(["compute", "discriminant", "--in", str(f)])
    assert code == 0 and json.loads(out) == {"result": "4"}
    code, _, err = call(["compute", "delta", "--in", "-"], stdin="{not json", monkeypatch=monkeypatch)
    assert code == 2 and json.loads(err)["error"]["code"] == "bad-input"
    code, _, err = call(["compute", "delta", "--in", "-"], stdin='{"x":["t +"],"y":["t"]}', monkeypatch=monkeypatch)
    assert code == 2 and json.loads(err)["error"]["code"] == "syntax"


def test_chart_subcommand():
    code, out, _ = call(["chart", "--ring", "QQ", "--tuple", "1,t", "--point", "0;1"])
    assert code == 0
    assert json.loads(out)["discriminant"] == "1"
    code, _, err = call(["chart", "--tuple", "t,t^2", "--point", "0;1"])
    assert code == 2 and json.loads(err)["error"]["code"] == "outside-chart"


def test_verify_exit_codes():
    code, out, _ = call(["verify", "lemma-product", "--seed", "3", "--trials", "3"])
    assert code == 0 and json.loads(out)["status"] == "pass"
    code, _, err = call(["verify", "no-such-suite"])
    assert code == 2 and "unknown suite" in err
    code, out, _ = call(["verify", "lemma1.6", "--ring", "GF(2)", "--n", "2", "--trials", "1"])
    case = json.loads(out)["cases"][0]
    assert code == 0 and case["params"]["expected"] is False and case["params"]["result"] is False


def test_console_script_byte_identical(tmp_path):
    args = [sys.executable, "-m", "ghilb.cli", "compute", "norm", "--in", "-"]
    doc = json.dumps({"algebra": ROOT_S, "images": {"t": ["0", "1"]}})
    a = subprocess.run(args, input=doc, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(args, input=doc, capture_output=True, text=True, check=True).stdout
    assert a == b and json.loads(a)["equal"] is True
