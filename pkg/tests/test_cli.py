import json
import subprocess
import sys

import pytest

from cara.cli import main


def _write(path, obj):
    path.write_text(json.dumps(obj))
    return path


@pytest.fixture
def tverberg_instances(tmp_path):
    gen = _write(tmp_path / "gen.json", {
        "kind": "singletonFamily", "params": {"n": 2, "count": 7}, "count": 3,
        "extra": {"task": "tverberg", "r": 2, "kappa": 3}})
    assert main(["generate", "--spec", str(gen), "--seed", "1", "--out", str(tmp_path / "inst")]) == 0
    return sorted((tmp_path / "inst").glob("*.json"))


def _run(tmp_path, inputs, out, task=None, seed=1):
    spec = {"inputs": [str(p) for p in inputs]}
    if task:
        spec["task"] = task
    s = _write(tmp_path / "exp.json", spec)
    return main(["run", "--spec", str(s), "--seed", str(seed), "--out", str(out)])


def test_run_tverberg_report(tmp_path, tverberg_instances):
    assert _run(tmp_path, tverberg_instances, tmp_path / "a") == 0
    rows = (tmp_path / "a" / "report.csv").read_text().splitlines()
    assert rows[0] == "instance_id,task,result,valid,certificate,iterations,value_approx"
    assert len(rows) == 4 and all(",true," in r for r in rows[1:])
    for r in rows[1:]:
        assert (tmp_path / "a" / r.split(",")[4]).exists()


def test_run_is_deterministic(tmp_path, tverberg_instances):
    _run(tmp_path, tverberg_instances, tmp_path / "a")
    _run(tmp_path, tverberg_instances, tmp_path / "b")
    for name in ["report.csv"] + [f"certificates/{p.name}" for p in
                                  (tmp_path / "a" / "certificates").iterdir()]:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_parallel_matches_serial(tmp_path, tverberg_instances):
    _run(tmp_path, tverberg_instances, tmp_path / "a")
    spec = _write(tmp_path / "p.json", {"inputs": [str(p) for p in tverberg_instances]})
    assert main(["run", "--spec", str(spec), "--seed", "1", "--out", str(tmp_path / "b"),
                 "--jobs", "2"]) == 0
    assert (tmp_path / "a" / "report.csv").read_text() == (tmp_path / "b" / "report.csv").read_text()


def test_verify_saved_certificate(tmp_path, tverberg_instances, capsys):
    _run(tmp_path, tverberg_instances, tmp_path / "a")
    cert = sorted((tmp_path / "a" / "certificates").iterdir())[0]
    inst = tverberg_instances[0]
    assert main(["verify", "--spec", str(inst), "--cert", str(cert)]) == 0
    assert "valid=true" in capsys.readouterr().out
    data = json.loads(cert.read_text())
    data["certificate"]["witness"] = ["1000/1", "0/1"]
    bad = _write(tmp_path / "bad.json", data)
    assert main(["verify", "--spec", str(inst), "--cert", str(bad)]) == 1


def test_sarkaria_sweep_row(tmp_path):
    fam = {"dim": 1, "members": [{"vertices": [["0"]]}, {"vertices": [["1"], ["2"]]},
                                 {"vertices": [["-1"]]}]}
    inst = _write(tmp_path / "s.json", {"task": "sarkariaCheck", "family": fam, "r": 2})
    assert _run(tmp_path, [inst], tmp_path / "o") == 0
    row = (tmp_path / "o" / "report.csv").read_text().splitlines()[1]
    assert '"cases=16, equivalent=16"' in row


def test_colorful_and_convm_rows(tmp_path):
    a = _write(tmp_path / "c.json", {"task": "colorful", "colors": [
        [["-1"], ["1"]], [["-2"], ["2"]]]})
    b = _write(tmp_path / "m.json", {"task": "convm", "points": [[1, 1], [-1, 1], [-1, -1], [1, -1]],
                                     "query": [0, 0], "m": 2})
    assert _run(tmp_path, [a, b], tmp_path / "o") == 0
    rows = (tmp_path / "o" / "report.csv").read_text().splitlines()[1:]
    assert rows[0].split(",")[3] == "true" and "member=true" in rows[1]


def test_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"inputs": [1, }')
    assert main(["run", "--spec", str(bad), "--out", str(tmp_path)]) == 2
    assert "line 1 column" in capsys.readouterr().err


def test_missing_field_is_named(tmp_path, capsys):
    inst = _write(tmp_path / "i.json", {"task": "tverberg", "r": 2})
    assert _run(tmp_path, [inst], tmp_path / "o") == 1
    assert "'family'" in capsys.readouterr().err


def test_unknown_generator(tmp_path, capsys):
    g = _write(tmp_path / "g.json", {"kind": "nope"})
    assert main(["generate", "--spec", str(g), "--out", str(tmp_path)]) == 2
    assert "'kind'" in capsys.readouterr().err


def test_budget_skips(tmp_path, tverberg_instances, monkeypatch):
    monkeypatch.setenv("CARA_BUDGET_MS", "0")
    assert _run(tmp_path, tverberg_instances, tmp_path / "o") == 0
    assert "skipped" in (tmp_path / "o" / "report.csv").read_text()


def test_render_is_byte_identical(tmp_path, tverberg_instances):
    _run(tmp_path, tverberg_instances, tmp_path / "a")
    inst = tverberg_instances[0]
    cert = sorted((tmp_path / "a" / "certificates").iterdir())[0]
    for name in ("x.svg", "y.svg"):
        assert main(["render", "--spec", str(inst), "--cert", str(cert),
                     "--out", str(tmp_path / name)]) == 0
    assert (tmp_path / "x.svg").read_bytes() == (tmp_path / "y.svg").read_bytes()


def test_render_rejects_3d(tmp_path, capsys):
    inst = _write(tmp_path / "p.json", {"points": [[0, 0, 0], [1, 1, 1]]})
    assert main(["render", "--spec", str(inst), "--out", str(tmp_path / "x.svg")]) == 2


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "cara.cli", "--help"], capture_output=True,
                         text=True)
    assert out.returncode == 0 and "generate" in out.stdout
