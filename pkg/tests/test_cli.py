import json

import pytest

from rao_forge.cli import main

from support import D33G117, SKEW_IDEAL, TWISTED_CUBIC_IDEAL


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    (tmp_path / "skew.txt").write_text(SKEW_IDEAL)
    (tmp_path / "tc.txt").write_text("# twisted cubic\n" + TWISTED_CUBIC_IDEAL)
    (tmp_path / "empty.txt").write_text("# nothing here\n")
    (tmp_path / "point.txt").write_text("x0\nx1\nx2\n")
    ex = {"betti": {str(j): {str(i): b for i, b in r.items()} for j, r in D33G117.items()},
          "rao": {"5": 1}, "buchsbaum": True}
    (tmp_path / "d33g117.json").write_text(json.dumps(ex))
    (tmp_path / "skew.json").write_text(json.dumps(
        {"char": 32003, "betti": {"1": {"2": 4}, "2": {"3": 4}, "3": {"4": 1}}, "rao": {"0": 1}, "buchsbaum": True}))
    (tmp_path / "bad.json").write_text(json.dumps({"betti": {"1": {"2": 4}, "2": {"3": 4}, "3": {"4": 1}},
                                                   "rao": {"1": 1}, "buchsbaum": True}))
    return tmp_path


def test_resolve(capsys, files):
    code, out, _ = run(capsys, "resolve", "--ideal", str(files / "skew.txt"))
    assert code == 0
    assert json.loads(out)["betti"] == {"1": {"2": 4}, "2": {"3": 4}, "3": {"4": 1}}
    code, out, _ = run(capsys, "resolve", "--ideal", str(files / "tc.txt"))
    assert json.loads(out)["betti"] == {"1": {"2": 3}, "2": {"3": 2}}


def test_resolve_errors(capsys, files):
    code, _, err = run(capsys, "resolve", "--ideal", str(files / "empty.txt"))
    assert code == 1 and "no generators" in err
    code, _, err = run(capsys, "resolve", "--ideal", str(files / "point.txt"))
    assert code == 2 and "not a curve ideal" in err
    code, _, _ = run(capsys, "resolve", "--ideal", str(files / "missing.txt"))
    assert code == 1


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1


def test_char_env_override(capsys, files, monkeypatch):
    monkeypatch.setenv("RAO_FORGE_CHAR", "101")
    code, out, _ = run(capsys, "resolve", "--ideal", str(files / "skew.txt"))
    assert code == 0 and json.loads(out)["char"] == 101
    monkeypatch.setenv("RAO_FORGE_CHAR", "100")
    code, _, _ = run(capsys, "resolve", "--ideal", str(files / "skew.txt"))
    assert code == 1


def test_analyze_d33g117(capsys, files):
    code, out, _ = run(capsys, "analyze", "--input", str(files / "d33g117.json"))
    rep = json.loads(out)
    assert code == 0
    assert rep["verdict"]["status"] == "Obstructed"
    assert "beta_{1,9}*beta_{2,9}" in rep["verdict"]["trigger"][0]
    assert rep["invariants"]["d"] == 33 and rep["invariants"]["g"] == 117


def test_analyze_ideal_pipeline(capsys, files):
    code, out, _ = run(capsys, "analyze", "--ideal", str(files / "skew.txt"), "--buchsbaum")
    rep = json.loads(out)
    assert rep["verdict"]["status"] == "Unobstructed" and rep["verdict"]["dims"]["dim_H_dg"] == 8
    code, _, err = run(capsys, "analyze", "--ideal", str(files / "skew.txt"))
    assert code == 1 and "--rao" in err
    code, out, _ = run(capsys, "analyze", "--ideal", str(files / "skew.txt"), "--rao", '{"0": 1}')
    assert code == 0


def test_analyze_reports_all_validation_failures(capsys, files):
    code, _, err = run(capsys, "analyze", "--input", str(files / "bad.json"))
    assert code == 2
    assert err.count("error:") >= 2


def test_report_round_trip(capsys, files, tmp_path):
    code, first, _ = run(capsys, "analyze", "--input", str(files / "d33g117.json"))
    (tmp_path / "report.json").write_text(first)
    code, second, _ = run(capsys, "analyze", "--input", str(tmp_path / "report.json"))
    assert first == second


def test_batch_is_deterministic(capsys, files, tmp_path):
    batch = tmp_path / "batch"
    batch.mkdir()
    for name in ("d33g117.json", "skew.json"):
        (batch / name).write_text((files / name).read_text())
    code, out, _ = run(capsys, "analyze", "--dir", str(batch), "--jobs", "2")
    items = json.loads(out)["batch"]
    assert code == 0 and [i["file"] for i in items] == ["d33g117.json", "skew.json"]
    (batch / "bad.json").write_text((files / "bad.json").read_text())
    code, out, _ = run(capsys, "analyze", "--dir", str(batch))
    assert code == 2 and json.loads(out)["batch"][0]["file"] == "bad.json"


def test_generize(capsys, files):
    code, out, _ = run(capsys, "generize", "--input", str(files / "d33g117.json"), "--move", "l4f2", "--t", "5",
                       "--m", "1")
    assert code == 0 and json.loads(out)["result"]["rao"] == {}
    code, _, _ = run(capsys, "generize", "--input", str(files / "d33g117.json"), "--move", "l4f1", "--t", "5",
                     "--m", "1")
    assert code == 2
    code, _, _ = run(capsys, "generize", "--input", str(files / "d33g117.json"), "--move", "l4f2")
    assert code == 1


def test_lattice_components_family(capsys):
    code, out, _ = run(capsys, "lattice", "--triple", "4", "3", "2")
    assert code == 0 and out.startswith("digraph")
    code, out, _ = run(capsys, "lattice", "--triple", "4", "3", "2", "--export", "json")
    assert json.loads(out)["proper_generizations"] == 10
    code, out, _ = run(capsys, "--format", "text", "components", "--triple", "4", "3", "2", "--sec")
    assert "summary: exactly 2" in out
    code, out, _ = run(capsys, "family", "--ex1", "1", "1", "1")
    fam = json.loads(out)
    assert (fam["c"], fam["d"], fam["g"]) == (4, 18, 39)


def test_link_twice_is_identity(capsys, files, tmp_path):
    code, out, _ = run(capsys, "link", "--input", str(files / "skew.json"), "--fg", "2", "2")
    assert code == 0
    (tmp_path / "linked.json").write_text(json.dumps(json.loads(out)["linked"]))
    code, out2, _ = run(capsys, "link", "--input", str(tmp_path / "linked.json"), "--fg", "2", "2")
    assert json.loads(out2)["linked"] == json.loads((files / "skew.json").read_text())
    code, _, err = run(capsys, "link", "--input", str(files / "d33g117.json"), "--fg", "9", "9")
    assert code == 2 and "offending" in err


def test_singularity(capsys, files):
    code, out, _ = run(capsys, "singularity", "--ex1", "1", "1", "1")
    q = json.loads(out)
    assert q["m"] == 71 and q["generators"] == ["Z1_1*W1_1"]
    code, _, _ = run(capsys, "singularity", "--input", str(files / "skew.json"))
    assert code == 3


def test_global_flags_after_subcommand(capsys, files):
    code, before, _ = run(capsys, "--format", "text", "components", "--triple", "4", "3", "2", "--sec")
    code2, after, _ = run(capsys, "components", "--triple", "4", "3", "2", "--sec", "--format", "text")
    assert code == code2 == 0 and before == after
    assert "summary: exactly 2" in after
