import json
import re
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from contactlab import cli, fuzz
from contactlab.catalog import catalog, frobenius_inputs, get
from contactlab.errors import ParseError
from contactlab.io import AlgebraFile, analysis_report, digest, dump, dumps, fmt, load, loads, parse_rational, \
    report_json

F = Fraction
VALID = [e for e in catalog() if e.expected.get("jacobi", True)]


def emit(tmp_path, name):
    path = tmp_path / f"{name}.json"
    assert cli.main(["catalog", "--emit", name, "--out", str(path)]) == 0
    return path


@given(st.fractions())
def test_rational_strings_round_trip(x):
    assert parse_rational(fmt(x), "x") == x


@pytest.mark.parametrize("s", ["1/0", "1.5", "1e3", " 1", "+2", "1/-2", ""])
def test_bad_rational_strings(s):
    with pytest.raises(ParseError):
        parse_rational(s, "x")
    with pytest.raises(ParseError):
        parse_rational(3, "x")


@pytest.mark.parametrize("entry", catalog(), ids=lambda e: e.name)
def test_file_round_trip(entry):
    f = AlgebraFile(entry.name, entry.algebra, entry.contact_form)
    g = loads(dumps(f))
    assert g.algebra == f.algebra and g.contact_form == f.contact_form
    assert dumps(g) == dumps(f)
    assert digest(g) == digest(f)


def test_digest_ignores_layout():
    text = dumps(AlgebraFile("h3", get("h3").algebra, get("h3").contact_form))
    compact = json.dumps(json.loads(text), separators=(",", ":"), sort_keys=True)
    assert digest(loads(compact)) == digest(loads(text))


def _raw(**over):
    base = {"name": "t", "dim": 2, "basis": ["x", "y"], "brackets": [{"lhs": 0, "rhs": 1, "result": {"1": "1"}}]}
    base.update(over)
    return json.dumps(base)


@pytest.mark.parametrize("text,msg", [
    ("{\n  \"name\": ", "line 2"),
    ("[]", "top level"),
    (json.dumps({"name": "t"}), "missing field 'dim'"),
    (_raw(dim=0), "dim"),
    (_raw(basis=["x", "x"]), "distinct"),
    (_raw(brackets=[{"lhs": 1, "rhs": 0, "result": {}}]), "lhs < rhs"),
    (_raw(brackets=[{"lhs": 0, "rhs": 1, "result": {"1": "1"}}] * 2), "duplicate"),
    (_raw(brackets=[{"lhs": 0, "rhs": 1, "result": {"5": "1"}}]), "out of range"),
    (_raw(brackets=[{"lhs": 0, "rhs": 1, "result": {"1": "1/0"}}]), "zero denominator"),
    (_raw(brackets=[{"lhs": 0, "rhs": 1, "result": {"1": 1}}]), "brackets\\[0\\].result\\[1\\]"),
    (_raw(contact_form={"0": 0.5}), "contact_form"),
])
def test_parse_errors_name_the_place(text, msg):
    with pytest.raises(ParseError, match=msg):
        loads(text)


def test_validate_exit_codes(tmp_path, capsys):
    assert cli.main(["validate", str(emit(tmp_path, "g0_minus"))]) == 0
    bad = tmp_path / "bad.json"
    data = json.loads(emit(tmp_path, "sl2").read_text())
    data["brackets"][0]["result"] = {k: "2" for k in data["brackets"][0]["result"]}
    bad.write_text(json.dumps(data))
    capsys.readouterr()
    assert cli.main(["validate", str(bad)]) == 1
    assert "residual" in capsys.readouterr().out
    zero = tmp_path / "zero.json"
    zero.write_text(_raw(brackets=[{"lhs": 0, "rhs": 1, "result": {"1": "1/0"}}]))
    assert cli.main(["validate", str(zero)]) == 2
    assert cli.main(["validate", str(tmp_path / "missing.json")]) == 2


@pytest.mark.parametrize("entry", catalog(), ids=lambda e: e.name)
def test_emit_then_validate(tmp_path, entry):
    code = cli.main(["validate", str(emit(tmp_path, entry.name))])
    assert code == (0 if entry.expected.get("jacobi", True) else 1)


def test_catalog_list_and_unknown(capsys):
    assert cli.main(["catalog", "--list"]) == 0
    out = capsys.readouterr().out
    assert "diatta_foreman" in out and "paper transcription uncertain" in out
    assert cli.main(["catalog", "--emit", "nope"]) == 6


def test_analyze_diatta_foreman(tmp_path, capsys):
    report = tmp_path / "r.json"
    assert cli.main(["analyze", str(emit(tmp_path, "diatta_foreman")), "--report", str(report)]) == 0
    rep = json.loads(report.read_text())
    assert rep["verdicts"]["transversely_unimodular"] is True
    assert rep["verdicts"]["ad_xi_nilpotent"] is True
    assert rep["input_digest"].startswith("sha256:")
    assert "transversely_unimodular: true" in capsys.readouterr().out


def test_analyze_g1_minus_witness(tmp_path):
    report = tmp_path / "r.json"
    assert cli.main(["analyze", str(emit(tmp_path, "g1_minus")), "--report", str(report)]) == 0
    rep = json.loads(report.read_text())
    w = rep["witness"]
    assert (w["tr_t"], w["tr_q"], w["tr_total"]) == ("1", "1", "2")
    assert w["e"] == ["0", "1", "0", "0", "0"]
    assert rep["verdicts"]["classification"] == "g1-"
    assert rep["identities"]["counts"]["fail"] == 0


def test_analyze_sl2_via_simple_branch(tmp_path):
    report = tmp_path / "r.json"
    assert cli.main(["analyze", str(emit(tmp_path, "sl2")), "--report", str(report)]) == 0
    rep = json.loads(report.read_text())
    assert rep["audit"]["passed"] and rep["audit"]["three_dim_simple"]
    assert rep["verdicts"]["transversely_unimodular"] is True


@pytest.mark.parametrize("entry", VALID, ids=lambda e: e.name)
def test_report_is_deterministic(entry):
    if entry.contact_form is None:
        return
    f = AlgebraFile(entry.name, entry.algebra, entry.contact_form)
    assert report_json(analysis_report(f)) == report_json(analysis_report(loads(dumps(f))))


def test_analyze_searches_for_a_form_or_exits_3(tmp_path):
    h3 = get("h3")
    path = tmp_path / "h3.json"
    dump(AlgebraFile("h3", h3.algebra), path)
    assert cli.main(["analyze", str(path)]) == 0
    assert cli.main(["analyze", str(path), "--no-search"]) == 3
    even = tmp_path / "aff.json"
    dump(AlgebraFile("aff", get("aff").algebra), even)
    assert cli.main(["analyze", str(even)]) == 3
    degenerate = tmp_path / "deg.json"
    dump(AlgebraFile("deg", h3.algebra, get("h3").contact_form * 0), degenerate)
    assert cli.main(["analyze", str(degenerate)]) == 3


def test_classify5(tmp_path, capsys):
    path = emit(tmp_path, "g0_plus")
    capsys.readouterr()
    assert cli.main(["classify5", str(path)]) == 0
    assert capsys.readouterr().out.strip() == "g0+"
    assert cli.main(["classify5", str(emit(tmp_path, "sl2"))]) == 4


def _frobenius_file(tmp_path, name="aff"):
    f = frobenius_inputs()[name]
    path = tmp_path / f"{name}_frob.json"
    dump(AlgebraFile(name, f.algebra, primitive=f.primitive), path)
    return path


def _matrix_file(tmp_path, rows, name="A.json"):
    path = tmp_path / name
    path.write_text(json.dumps([[fmt(x) for x in r] for r in rows]))
    return path


def test_realize_q2_cli(tmp_path, capsys):
    out = tmp_path / "g.json"
    code = cli.main(["realize", "--mode", "q2", "--frobenius", str(_frobenius_file(tmp_path)),
                     "--A", str(_matrix_file(tmp_path, [[1, 0], [0, -1]])), "--out", str(out)])
    assert code == 0
    capsys.readouterr()
    assert cli.main(["classify5", str(out)]) == 0
    assert capsys.readouterr().out.strip() == "g1+"


def test_realize_line_ideal_cli(tmp_path, capsys):
    out = tmp_path / "g.json"
    code = cli.main(["realize", "--mode", "line-ideal", "--frobenius", str(_frobenius_file(tmp_path)),
                     "--A", str(_matrix_file(tmp_path, [[0, -1], [1, 0]])), "--z", "1", "--m", "1",
                     "--out", str(out)])
    assert code == 0
    capsys.readouterr()
    assert cli.main(["classify5", str(out)]) == 0
    assert capsys.readouterr().out.strip() == "g0-"


@pytest.mark.parametrize("mode,rows,extra,gate", [
    ("q2", [[1, 0], [0, 1]], [], "traceless"),
    ("q2", [[0, 1], [0, 0]], [], "invertible"),
    ("line-ideal", [[1, 0], [0, -1]], [], "needs --z"),
    ("line-ideal", [[1, 0], [0, -1]], ["--z", "1", "--m", "2"], "4x4"),
    ("line-ideal", [[1, 1], [0, 1]], ["--z", "1"], "sp\\(q"),
])
def test_realize_gates_exit_5(tmp_path, capsys, mode, rows, extra, gate):
    code = cli.main(["realize", "--mode", mode, "--frobenius", str(_frobenius_file(tmp_path)),
                     "--A", str(_matrix_file(tmp_path, rows))] + extra)
    assert code == 5
    assert re.search(gate, capsys.readouterr().err)


def test_realize_needs_primitive(tmp_path):
    assert cli.main(["realize", "--mode", "q2", "--frobenius", str(emit(tmp_path, "aff")),
                     "--A", str(_matrix_file(tmp_path, [[1, 0], [0, -1]]))]) == 5


def test_fuzz_cli(tmp_path, capsys):
    assert cli.main(["fuzz", "--count", "0", "--dump-dir", str(tmp_path)]) == 0
    capsys.readouterr()
    assert cli.main(["fuzz", "--seed", "1", "--count", "12", "--dump-dir", str(tmp_path)]) == 0
    first = capsys.readouterr().out
    assert cli.main(["fuzz", "--seed", "1", "--count", "12", "--dump-dir", str(tmp_path)]) == 0
    assert capsys.readouterr().out == first
    assert not list(tmp_path.iterdir())


def test_fuzz_instances_depend_only_on_seed_and_index():
    a = fuzz.generate(7, 5)
    b = fuzz.generate(7, 5)
    assert a.kind == b.kind and a.structure.algebra == b.structure.algebra
    assert fuzz.run(7, 6) and [o.source for o in fuzz.run(7, 6)][5] == a.source


def test_fuzz_failure_dump_replays(tmp_path, monkeypatch):
    real = fuzz.run_instance

    def broken(inst):
        out = real(inst)
        if inst.index == 2:
            out.ok = False
            out.problems.append("forced")
        return out

    monkeypatch.setattr(fuzz, "run_instance", broken)
    assert cli.main(["fuzz", "--seed", "3", "--count", "4", "--dump-dir", str(tmp_path)]) == 1
    files = sorted(tmp_path.iterdir())
    assert [p.name for p in files] == ["fuzz_s3_i2.json"]
    monkeypatch.setattr(fuzz, "run_instance", real)
    assert cli.main(["analyze", str(files[0])]) == 0
    assert load(files[0]).algebra == fuzz.generate(3, 2).structure.algebra
