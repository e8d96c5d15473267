"""Command-line front end and emitters."""

import json

import pytest

from sphere_calculus import emit
from sphere_calculus.cli import default_order, run
from sphere_calculus.immersed import derive_immersed
from sphere_calculus.lens import build_poset


def capture(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, out


# ------------------------------------------------------------- commands


def test_series_text(capsys):
    code, out = capture(capsys, ["series", "--fn", "Q", "--order", "8"])
    assert code == 0
    assert out.startswith("Q = t")
    assert "-1/6*x" in out


def test_finite_type(capsys):
    code, out = capture(capsys, ["finite-type", "--p", "1", "--a", "0"])
    assert code == 0
    assert out == "r = 1\n"


def test_embedded_latex(capsys):
    code, out = capture(
        capsys, ["embedded", "--n", "2", "--epsilon", "0",
                 "--format", "latex"])
    assert code == 0
    assert out.startswith("e^{t\\sigma} \\equiv B^{2}")
    assert "\\sigma^{2}" in out and "\\frac{1}{2}" in out


def test_immersed_vanishing_text(capsys):
    code, out = capture(capsys, ["immersed", "--p", "1", "--s", "0", "--a", "0"])
    assert code == 0
    assert "D_w((x^2-4)*cosh(t*alpha)) = 0" in out
    assert "D_w((x^2-4)*sinh(t*alpha)) = 0" in out


def test_lens_chi_text(capsys):
    code, out = capture(capsys, ["lens", "chi", "--p", "6", "--parity", "even"])
    assert code == 0
    assert "{0}" in out and "{6}" in out and " 2," in out


def test_lens_poset_dot(capsys):
    code, out = capture(
        capsys, ["lens", "poset", "--p", "6", "--parity", "odd",
                 "--n", "10", "--format", "dot"])
    assert code == 0
    assert out.count("->") == 7


def test_verify_lens(capsys):
    code, out = capture(capsys, ["verify", "--suite", "lens"])
    assert code == 0
    assert "all checks passed" in out


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as exc:
        run(["series", "--fn", "nope"])
    assert exc.value.code == 2


def test_order_floor_rejected():
    with pytest.raises(SystemExit) as exc:
        run(["series", "--fn", "Q", "--order", "4"])
    assert exc.value.code == 2


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code = run(["series", "--fn", "B", "--order", "8",
                "--format", "json", "--output", str(target)])
    assert code == 0
    doc = json.loads(target.read_text())
    assert doc["schema"] == "sphere-calculus/1"
    assert doc["order"] == 8


def test_env_var_default(monkeypatch):
    monkeypatch.delenv("SPHERE_CALCULUS_ORDER", raising=False)
    assert default_order() == 32
    monkeypatch.setenv("SPHERE_CALCULUS_ORDER", "16")
    assert default_order() == 16
    monkeypatch.setenv("SPHERE_CALCULUS_ORDER", "2")
    assert default_order() == 8
    monkeypatch.setenv("SPHERE_CALCULUS_ORDER", "junk")
    assert default_order() == 32


# ------------------------------------------------------------- emitters


def test_json_round_trip_normal_form():
    nf = derive_immersed(1, 1, 0)
    doc = emit.normal_form_json(nf)
    parsed = json.loads(doc)
    again = json.dumps(parsed, sort_keys=True, indent=2) + "\n"
    assert doc == again


def test_json_rationals_are_strings():
    nf = derive_immersed(0, 0, -3)
    parsed = json.loads(emit.normal_form_json(nf))
    flat = json.dumps(parsed["d"])
    assert '"1/6"' in flat


def test_json_schema_everywhere():
    nf = derive_immersed(0, 0, -2)
    j = build_poset(6, 0, 10)
    for doc in (emit.normal_form_json(nf), emit.poset_json(j)):
        assert json.loads(doc)["schema"] == "sphere-calculus/1"


def test_determinism(capsys):
    _, first = capture(capsys, ["immersed", "--p", "2", "--s", "1",
                                "--a", "-1", "--format", "json"])
    _, second = capture(capsys, ["immersed", "--p", "2", "--s", "1",
                                 "--a", "-1", "--format", "json"])
    assert first == second


def test_empty_relation_document():
    nf = derive_immersed(1, 0, 0)
    text = emit.normal_form_text(nf)
    assert "= 0" in text
