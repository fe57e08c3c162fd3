from __future__ import annotations

import json

import pytest

from bistellar.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_writes_manifest(tmp_path, capsys):
    code, out, _ = run(capsys, "build", "A26", "--out", str(tmp_path / "a"))
    assert code == 0
    m = json.loads((tmp_path / "a" / "manifest.json").read_text())
    assert sorted(m["files"]) == ["complex.txt", "config.txt", "orientation.txt", "triangulation.txt"]
    run(capsys, "build", "A26", "--out", str(tmp_path / "b"))
    assert (tmp_path / "a" / "manifest.json").read_bytes() == (tmp_path / "b" / "manifest.json").read_bytes()


def test_build_cell24(tmp_path, capsys):
    code, _, _ = run(capsys, "build", "CELL24", "--out", str(tmp_path))
    assert code == 0
    assert sorted(json.loads((tmp_path / "manifest.json").read_text())["files"]) == [
        "complex.txt", "config.txt", "orientation.txt"]


def test_bad_id_exit_2(tmp_path, capsys):
    code, _, err = run(capsys, "build", "BADNAME", "--out", str(tmp_path))
    assert code == 2 and "unknown construction" in err


def test_unknown_flag_rejected(capsys):
    with pytest.raises(SystemExit) as e:
        main(["validate", "--bogus"])
    assert e.value.code == 2


def test_validate_and_corrupted_certify(tmp_path, capsys):
    d = tmp_path / "r"
    run(capsys, "build", "A26_REPAIRED", "--out", str(d))
    code, out, _ = run(capsys, "validate", "--config", str(d / "config.txt"),
                       "--triangulation", str(d / "triangulation.txt"))
    assert code == 0 and out.startswith("valid")
    lines = (d / "triangulation.txt").read_text().splitlines()
    (tmp_path / "bad.txt").write_text("\n".join(lines[1:]) + "\n")
    code, out, _ = run(capsys, "validate", "--config", str(d / "config.txt"),
                       "--triangulation", str(tmp_path / "bad.txt"))
    assert code == 1 and "witness" in out
    code, out, _ = run(capsys, "certify", "--config", str(d / "config.txt"), "--complex", str(d / "complex.txt"),
                       "--orientation", str(d / "orientation.txt"), "--triangulation", str(tmp_path / "bad.txt"),
                       "--levels", str(d / "manifest.json"))
    assert code == 1 and "[FAIL] validity" in out


def test_certify_files_pass(tmp_path, capsys):
    d = tmp_path / "r"
    run(capsys, "build", "A26_REPAIRED", "--out", str(d))
    code, out, _ = run(capsys, "certify", "--config", str(d / "config.txt"), "--complex", str(d / "complex.txt"),
                       "--orientation", str(d / "orientation.txt"),
                       "--triangulation", str(d / "triangulation.txt"), "--levels", str(d / "manifest.json"),
                       "--json", "--report", str(tmp_path / "rep.json"))
    assert code == 0
    assert json.loads((tmp_path / "rep.json").read_text())["status"] == "PASS"


def test_restrict_reports_non_face(tmp_path, capsys):
    d = tmp_path / "a"
    run(capsys, "build", "A26", "--out", str(d))
    code, out, _ = run(capsys, "restrict", "--config", str(d / "config.txt"),
                       "--triangulation", str(d / "triangulation.txt"), "--complex", str(d / "complex.txt"),
                       "--levels", str(d / "manifest.json"))
    assert code == 1 and "not a face" in out


def test_explore_hexagon_and_prism(tmp_path, capsys):
    run(capsys, "build", "HEXAGON", "--out", str(tmp_path / "h"))
    code, out, _ = run(capsys, "explore", "--config", str(tmp_path / "h" / "config.txt"), "--bruteforce",
                       "--out", str(tmp_path / "g"))
    assert code == 0 and "14 nodes" in out and "1 component" in out and "complete" in out
    assert (tmp_path / "g" / "graph.txt").exists()
    run(capsys, "build", "PRISM3", "--out", str(tmp_path / "p"))
    code, out, _ = run(capsys, "explore", "--config", str(tmp_path / "p" / "config.txt"),
                       "--seed", str(tmp_path / "p" / "triangulation.txt"), "--threads", "2")
    assert code == 0 and out.startswith("24 nodes")


def test_explore_partial(tmp_path, capsys):
    run(capsys, "build", "A26", "--out", str(tmp_path))
    code, out, _ = run(capsys, "explore", "--config", str(tmp_path / "config.txt"),
                       "--seed", str(tmp_path / "triangulation.txt"), "--node-limit", "3")
    assert code == 0 and "partial" in out


def test_flips_apply(tmp_path, capsys):
    run(capsys, "build", "PRISM2", "--out", str(tmp_path))
    code, out, _ = run(capsys, "flips", "--config", str(tmp_path / "config.txt"),
                       "--triangulation", str(tmp_path / "triangulation.txt"),
                       "--apply", "0", "--out", str(tmp_path / "t2.txt"))
    assert code == 0 and len(out.splitlines()) == 2
    code, _, _ = run(capsys, "validate", "--config", str(tmp_path / "config.txt"),
                     "--triangulation", str(tmp_path / "t2.txt"))
    assert code == 0


def test_help_mentions_claims(capsys):
    with pytest.raises(SystemExit):
        main(["certify", "--help"])
    assert "13 components" in " ".join(capsys.readouterr().out.split())
