import json
import subprocess
import sys

import pytest

from matchless.cli import main
from matchless.family import SetFamily, read_family, write_family
from matchless.gallery import ConstructionSpec, build


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _no_floats(obj):
    if isinstance(obj, float):
        return False
    if isinstance(obj, dict):
        return all(_no_floats(v) for v in obj.values())
    if isinstance(obj, list):
        return all(_no_floats(v) for v in obj)
    return True


def test_solve_prints_optimum(capsys, tmp_path):
    wit = tmp_path / "w.txt"
    code, out, _ = run(capsys, "solve", "E", "n=5", "s=3", "--witness-out", str(wit))
    assert code == 0
    assert "optimum 26 [proved-optimal]" in out
    assert len(read_family(str(wit))) == 26


def test_solve_budget_exit(capsys):
    code, out, _ = run(capsys, "solve", "E", "n=7", "s=3", "--budget-nodes", "1e1")
    assert code == 2 and "best-found" in out and "upper_bound=" in out


@pytest.mark.parametrize("argv", [
    ["solve", "E", "n=5"], ["solve", "E", "n=5", "s=3", "--space", "sideways"], ["frobnicate"],
    ["formula", "nope"], ["formula", "kleitman", "s=3"], ["circle", "averaged"],
    ["construct", "Q:x=1"], ["solve", "E", "n=5", "s=3", "--budget-nodes", "1.5"],
])
def test_usage_errors_exit_64(capsys, argv):
    assert run(capsys, *argv)[0] == 64


def test_json_is_exact_and_deterministic(capsys):
    outs = []
    for _ in range(2):
        code, out, _ = run(capsys, "solve", "F", "n=5", "q=3", "s=2", "--json", "-")
        assert code == 0
        data = json.loads(out)
        assert _no_floats(data)
        assert data["result"]["optimum"] == "26"
        data.pop("wall_seconds")
        data["result"].pop("wall_seconds")
        outs.append(data)
    assert outs[0] == outs[1]


def test_formula_values(capsys):
    code, out, err = run(capsys, "formula", "p", "s=4", "m=2", "l=2")
    assert code == 0 and out.strip() == "977" and not err
    code, out, _ = run(capsys, "formula", "stability", "n=9", "k=2", "s=2", "u=4", "--json", "-")
    assert json.loads(out)["value"] == "55/4"
    code, out, err = run(capsys, "formula", "conjectured", "s=3", "m=1", "l=3", "--json", "-")
    data = json.loads(out)
    assert data["guaranteed"] is False and data["warnings"] and "warning" in err
    code, out, _ = run(capsys, "formula", "size", "spec=W:m=20,s=20,n=401")
    assert code == 0 and int(out) > 10 ** 100


def test_construct_and_stats(capsys, tmp_path):
    path = tmp_path / "p.txt"
    code, out, _ = run(capsys, "construct", "P:s=3,m=1,l=2", "--out", str(path), "--verify")
    assert code == 0 and "12 members" in out
    assert read_family(str(path)) == build(ConstructionSpec.P(3, 1, 2))
    code, out, _ = run(capsys, "stats", "--family", str(path), "--partition", "1,1,1")
    assert code == 0 and "X_2 = 3/4" in out and "X_3 = 1/4" in out


def test_circle_commands(capsys, tmp_path):
    path = tmp_path / "p.txt"
    write_family(build(ConstructionSpec.P(5, 1, 2)), str(path))
    code, out, _ = run(capsys, "circle", "window-bound", "--family", str(path), "--s", "5", "--m", "1")
    assert code == 0 and "(equality)" in out
    code, out, _ = run(capsys, "circle", "averaged", "--family", str(path), "--s", "5", "--m", "1")
    assert code == 0 and "3/8 >= 3/8" in out
    code, out, _ = run(capsys, "circle", "chains", "--s", "4", "--m", "2")
    assert code == 0 and "d=2 nbar=5" in out
    assert run(capsys, "circle", "incidence", "--s", "4", "--m", "1")[0] == 0


def test_stats_skips_and_errors(capsys, tmp_path):
    path = tmp_path / "full.txt"
    write_family(SetFamily.full(4), str(path))
    code, out, _ = run(capsys, "stats", "--family", str(path), "--partition", "1,1,1")
    assert code == 0   # X_0 clause is skipped once nu >= s
    code, _, _ = run(capsys, "stats", "--family", str(tmp_path / "missing.txt"), "--partition", "1,1")
    assert code == 1


def test_campaign(capsys, tmp_path):
    spec = {"name": "small", "seed": 3, "tasks": [
        ["solve", "E", "n=4", "s=3"], ["formula", "quinn", "m=1"],
        ["solve", "E", "n=7", "s=3", "--budget-nodes", "10"],
    ]}
    path = tmp_path / "c.json"
    path.write_text(json.dumps(spec))
    code, out, _ = run(capsys, "campaign", str(path), "--json", "-")
    data = json.loads(out)
    assert code == 2 and [int(t["exit"]) for t in data["tasks"]] == [0, 0, 2]
    assert all("--seed" in t["argv"] for t in data["tasks"])


def test_scan_and_verify_smoke(capsys):
    code, out, _ = run(capsys, "scan", "p-families", "--n-max", "5")
    assert code == 0
    code, out, _ = run(capsys, "verify", "kleitman", "--s-max", "3", "--m-max", "2", "--n-max", "6")
    assert code == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "matchless", "formula", "quinn", "m=2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "105"
