import json
import subprocess
import sys

import pytest

from pieri_rank.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_dim(capsys):
    assert run(capsys, "dim", "--lambda", "6,2", "--n", "3") == (0, "60\n")


def test_bwb_json(capsys):
    code, out = run(capsys, "bwb", "--lambda", "1,0", "--d", "0", "--n", "3", "--format", "json")
    assert code == 0 and json.loads(out) == {"vanishing": True}
    code, out = run(capsys, "bwb", "--lambda", "3,1", "--d", "7", "--n", "3", "--format", "json")
    assert json.loads(out) == {"degree": 0, "weight": [7, 3, 1]}


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["dim", "--lambda", "1", "--n", "2", "--bogus"])
    assert exc.value.code == 2
    assert main(["dim", "--lambda", "1,2", "--n", "3"]) == 2
    assert main(["pieri", "--lambda", "2,2", "--mu", "3,3", "--u", "sym2", "--n", "3"]) == 2


def test_table1_flags_mismatch(capsys, tmp_path):
    code, out = run(capsys, "table1", "--format", "json", "--cache", str(tmp_path))
    data = json.loads(out)
    assert code == 1 and len(data["rows"]) == 6
    assert [r["match"] for r in data["rows"]] == [True, True, True, True, False, True]
    assert data["seed"] == 0


def test_json_is_deterministic(capsys):
    argv = ["bound", "--lambda", "3,1", "--mu", "3,3", "--u", "sym2", "--n", "4",
            "--r-source", "both", "--trials", "3", "--seed", "42", "--format", "json"]
    _, a = run(capsys, *argv)
    _, b = run(capsys, *argv, "--no-cache")
    assert a == b and json.loads(a)["seed"] == 42


def test_pieri_out(capsys, tmp_path):
    code, _ = run(capsys, "pieri", "--lambda", "3,1", "--mu", "3,3", "--u", "sym2", "--n", "4",
                  "--out", str(tmp_path / "t"))
    man = json.loads((tmp_path / "t" / "manifest.json").read_text())
    assert code == 0
    assert set(man) == {"lambda", "mu", "u", "n", "dims", "basis_version", "content_hash"}
    assert len(list((tmp_path / "t").glob("slice_*.mtx"))) == 10


def test_cache_round_trip_across_processes(tmp_path):
    argv = [sys.executable, "-m", "pieri_rank", "pieri", "--lambda", "2,1", "--mu", "2,2",
            "--n", "3", "--format", "json", "--cache", str(tmp_path)]
    first = subprocess.run(argv, capture_output=True, text=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, text=True, check=True).stdout
    assert json.loads(first)["content_hash"] == json.loads(second)["content_hash"]
    verify = subprocess.run([sys.executable, "-m", "pieri_rank", "cache", "verify", "--format",
                             "json", "--cache", str(tmp_path)], capture_output=True, text=True)
    assert verify.returncode == 0 and all(json.loads(verify.stdout)["valid"].values())


@pytest.mark.parametrize("argv", [
    ["hooks", "--lambda", "4,2,1"],
    ["kostant", "--type", "C", "--rank", "4", "--alpha", "1,1,1,0", "--max-degree", "3"],
    ["kostant", "--type", "E6", "--format", "csv"],
    ["families", "--kind", "sym2-row2", "--alpha", "0,0,0", "--n", "4", "--format", "json"],
    ["euler", "--n", "5", "--format", "json"],
    ["euler", "--nu", "3,1", "--n", "5"],
    ["schur-basis", "--lambda", "2,1", "--n", "3", "--format", "csv"],
    ["flatten-rank", "--lambda", "2,1", "--mu", "2,2", "--n", "3", "--exact"],
    ["generic-rank", "--lambda", "2,1", "--mu", "2,2", "--n", "3", "--trials", "2"],
])
def test_commands_succeed(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 0 and out.strip()


def test_kostant_output(capsys):
    _, out = run(capsys, "kostant", "--type", "C", "--rank", "4", "--alpha", "1,1,1,0",
                 "--format", "json")
    entries = json.loads(out)["entries"]
    assert [e["dual"] for e in entries][-2:] == [[4, 3, -1, -1], [5, 1, 0, -1]]
