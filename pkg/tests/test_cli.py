import json
import subprocess
import sys

import pytest

from leaperlab import checks, cli
from leaperlab.properties import Basis


def run(capsys, *argv):
    try:
        code = cli.main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


def test_info_5_12(capsys):
    code, data, _ = run_json(capsys, "info", "5", "12")
    assert code == 0 and data["schema"] == 1
    assert data["descent"] == "hh"
    assert data["classification"]["kind"] == "free"
    assert data["ecf"]["text"] == "[2, +1, 2, +1, 2]"
    assert data["children"] == {"f": [5, 22], "g": [12, 19], "h": [12, 29]}


def test_info_rejects_bad_leaper(capsys):
    code, _, err = run(capsys, "info", "1", "0")
    assert code == 2 and "error" in err


def test_tree(capsys):
    code, data, _ = run_json(capsys, "tree", "--bound", "8")
    assert code == 0
    descents = {tuple(e["leaper"]): e["descent"] for e in data["leapers"]}
    assert descents[(1, 2)] == "" and descents[(2, 3)] == "g" and descents[(1, 4)] == "f"
    # skew free leapers with p + q <= 8: p + q odd, coprime
    assert set(descents) == {(1, 2), (1, 4), (2, 3), (1, 6), (2, 5), (3, 4)}


def test_basis_match(capsys):
    code, data, _ = run_json(capsys, "basis", "R", "1", "2")
    assert code == 0 and data["match"] is True
    assert data["oracle"]["boards"] == [[3, 4], [4, 3]]


@pytest.mark.parametrize(
    "argv, boards",
    [
        (["basis", "W", "2", "7"], [[8, 15], [9, 9], [15, 8]]),
        (["basis", "C", "2", "3", "--theorem"], [[5, 6], [6, 5]]),
        (["basis", "journey:0,1", "2", "5"], [[6, 11], [7, 7], [11, 6]]),
        (["basis", "pattern:0,0;0,1", "2", "5"], [[6, 11], [7, 7]]),
        (["basis", "pattern:0,0;1,0", "2", "5"], [[7, 7], [11, 6]]),
    ],
)
def test_basis_examples(capsys, argv, boards):
    code, data, _ = run_json(capsys, *argv)
    assert code == 0
    assert data["theorem"]["boards"] == boards


def test_basis_saturated_oracle_exits_one(capsys):
    code, data, _ = run_json(capsys, "basis", "C", "1", "3", "--oracle")
    assert code == 1 and data["oracle"]["saturated"]


def test_basis_usage_errors(capsys):
    assert run(capsys, "basis", "Q", "1", "2")[0] == 2
    assert run(capsys, "basis", "C", "1", "3", "--theorem")[0] == 2
    assert run(capsys, "basis", "pattern:0,0;2,1", "1", "2", "--theorem")[0] == 2
    assert run(capsys, "basis", "C", "1", "2", "--oracle", "--theorem")[0] == 2


def test_basis_mismatch_exits_one(capsys, monkeypatch):
    monkeypatch.setattr(cli, "theorem_basis", lambda kind, leaper: Basis(((3, 5), (5, 3))))
    code, data, _ = run_json(capsys, "basis", "R", "1", "2")
    assert code == 1 and data["match"] is False
    assert data["diff"]["missing"] == [[3, 5], [5, 3]]


def test_lineage(capsys):
    code, data, _ = run_json(capsys, "lineage", "1", "2", "--kind", "R", "--depth", "1")
    assert code == 0 and data["passed"]
    nodes = data["lineages"][0]["nodes"]
    assert [n["leaper"] for n in nodes] == [[1, 2], [2, 3], [2, 5]]
    assert nodes[0]["board"] == [3, 5]


def test_lineage_rejects_non_originator(capsys):
    assert run(capsys, "lineage", "3", "8", "--kind", "W")[0] == 2


@pytest.mark.parametrize(
    "argv, groups",
    [
        (["2", "5", "6", "14", "--angular"], 4),
        (["4", "15", "21", "21", "--components"], 2),
        (["1", "2", "1", "1"], 0),
    ],
)
def test_render_group_counts(capsys, tmp_path, argv, groups):
    target = tmp_path / "out.svg"
    code, data, _ = run_json(capsys, "render", *argv, "-o", str(target))
    assert code == 0 and data["output"] == str(target)
    svg = target.read_text()
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert svg.count('class="group ') == groups


def test_render_to_stdout_and_walk(capsys, tmp_path):
    walk = tmp_path / "walk.txt"
    walk.write_text("0 0\n1 2\n-1 1\n1 0\n")
    code, out, _ = run(capsys, "render", "1", "2", "4", "4", "--walk", str(walk))
    assert code == 0 and out.startswith("<svg")
    walk.write_text("0 0\n1 1\n")
    assert run(capsys, "render", "1", "2", "4", "4", "--walk", str(walk))[0] == 2
    assert run(capsys, "render", "1", "2", "4", "4", "--walk", str(tmp_path / "missing"))[0] == 2


def test_render_oversize_board(capsys):
    assert run(capsys, "render", "1", "2", "500", "500")[0] == 2
    assert run(capsys, "render", "1", "2", "0", "5")[0] == 2


def test_render_deterministic(capsys):
    first = run(capsys, "render", "2", "5", "7", "9", "--clovers")[1]
    second = run(capsys, "render", "2", "5", "7", "9", "--clovers")[1]
    assert first == second


def write_config(tmp_path, text):
    path = tmp_path / "suite.conf"
    path.write_text(text)
    return str(path)


def test_load_config(tmp_path, monkeypatch):
    monkeypatch.delenv("LEAPERLAB_THREADS", raising=False)
    path = write_config(tmp_path, "# small run\nleapers = 1,2 2,3\ncaps_multiplier = 2\n\nlineage_depth=1\n")
    config = cli.load_config(path)
    assert config.leapers == ((1, 2), (2, 3))
    assert config.caps_multiplier == 2 and config.lineage_depth == 1
    assert config.threads == 1
    monkeypatch.setenv("LEAPERLAB_THREADS", "3")
    assert cli.load_config(path).threads == 3


@pytest.mark.parametrize("text", ["bogus = 1\n", "leapers = 1;2\n", "caps_multiplier = x\n", "no equals sign\n"])
def test_bad_config(tmp_path, capsys, monkeypatch, text):
    monkeypatch.delenv("LEAPERLAB_THREADS", raising=False)
    path = write_config(tmp_path, text)
    assert run(capsys, "verify", "--suite", "bases", "--config", path)[0] == 2


def test_bad_thread_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("LEAPERLAB_THREADS", "many")
    assert run(capsys, "verify", "--suite", "bases")[0] == 2


def test_verify_small_suite(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv("LEAPERLAB_THREADS", raising=False)
    path = write_config(tmp_path, "leapers = 1,2\nhalf_free = 1,3\n")
    report = tmp_path / "report.json"
    code, out, err = run(capsys, "verify", "--suite", "bases", "--config", path, "-o", str(report), "--timing")
    data = json.loads(out)
    assert code == 0 and data["passed"] and data["failed"] == []
    assert report.read_text() == out
    assert "suite bases:" in err
    names = [c["name"] for c in data["checks"]]
    assert "basis-R-1,2" in names and "basis-R_half-1,3" in names
    assert "threads" not in data["config"]
    assert data["summary"]["total"] == len(names)


def test_verify_corrupted_theorem_names_failing_check(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv("LEAPERLAB_THREADS", raising=False)
    real = checks.theorem_basis

    def corrupted(kind, leaper):
        basis = real(kind, leaper)
        if kind == "R":
            return Basis(tuple((m + 1, n) for m, n in basis.sizes))
        return basis

    monkeypatch.setattr(checks, "theorem_basis", corrupted)
    path = write_config(tmp_path, "leapers = 1,2\nhalf_free = 1,3\n")
    code, out, err = run(capsys, "verify", "--suite", "bases", "--config", path)
    data = json.loads(out)
    assert code == 1
    assert data["failed"] == ["basis-R-1,2"]
    assert "FAILED basis-R-1,2" in err


def test_verify_threads_do_not_change_report(tmp_path, capsys, monkeypatch):
    path = write_config(tmp_path, "leapers = 1,2 2,3\nhalf_free = 1,3\nlineage_roots = 1,2\nlineage_depth = 2\n")
    monkeypatch.delenv("LEAPERLAB_THREADS", raising=False)
    serial = run(capsys, "verify", "--suite", "all", "--config", path)
    monkeypatch.setenv("LEAPERLAB_THREADS", "2")
    threaded = run(capsys, "verify", "--suite", "all", "--config", path)
    assert serial[0] == threaded[0] == 0
    assert serial[1] == threaded[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "leaperlab", "info", "1", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["descent"] == ""
    proc = subprocess.run([sys.executable, "-m", "leaperlab", "nope"], capture_output=True, text=True)
    assert proc.returncode == 2
