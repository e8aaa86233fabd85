import json
import re
import subprocess
import sys

import pytest

from heurobench.cli import main


def write_config(tmp_path, **overrides):
    raw = {
        "suite": "PBO-mini",
        "instance_ids": [1],
        "dimensions": [16],
        "algorithm": {"name": "rls"},
        "budget": 200,
        "repetitions": 1,
        "master_seed": 5,
        "output": {"root_dir": str(tmp_path / "out"), "folder_name": "exp"},
    }
    raw.update(overrides)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(raw))
    return path


def test_validate_ok(tmp_path, capsys):
    assert main(["validate", str(write_config(tmp_path))]) == 0
    out = capsys.readouterr().out
    assert "config OK" in out
    assert "PBO-mini" in out
    assert "6 instances x 1 repetitions" in out


def test_validate_bad_algorithm_names_field(tmp_path, capsys):
    path = write_config(tmp_path, algorithm={"name": "gradient_descent"})
    assert main(["validate", str(path)]) == 2
    err = capsys.readouterr().err
    assert "invalid config" in err
    assert "algorithm.name" in err


def test_validate_bad_json(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{]")
    assert main(["validate", str(path)]) == 2
    assert "not valid JSON" in capsys.readouterr().err


def test_missing_config_file(tmp_path, capsys):
    assert main(["run", str(tmp_path / "absent.json")]) == 66
    assert "file not found" in capsys.readouterr().err


def test_unknown_subcommand(capsys):
    assert main(["optimize"]) == 64
    assert main([]) == 64


def test_run_then_inspect(tmp_path, capsys):
    path = write_config(tmp_path)
    assert main(["run", str(path)]) == 0
    out = capsys.readouterr().out
    m = re.search(r"runs executed: (\d+)", out)
    assert m and int(m.group(1)) == 6
    assert "output: " in out
    data_dir = out.split("output: ", 1)[1].strip()

    assert main(["inspect", data_dir]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 6
    assert lines[0].startswith("f1 OneMax DIM 16: 1 runs, best ")
    total_runs = sum(int(re.search(r"(\d+) runs", l).group(1)) for l in lines)
    assert total_runs == 6


def test_inspect_missing_dir(tmp_path, capsys):
    assert main(["inspect", str(tmp_path / "nothing")]) == 66


def test_inspect_malformed_data(tmp_path, capsys):
    bad = tmp_path / "data"
    bad.mkdir()
    (bad / "IOHprofiler_f1_OneMax.info").write_text("gibberish\n%\nmore")
    assert main(["inspect", str(bad)]) == 3
    assert "malformed data" in capsys.readouterr().err


def test_list_catalog(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert "OneMax" in out
    assert "Sphere" in out
    assert "PBO-mini" in out
    assert "BBOB-mini" in out
    assert "random_search" in out
    assert "one_plus_one_es" in out


def test_seed_override_changes_output(tmp_path, capsys):
    path = write_config(tmp_path)
    assert main(["--seed", "5", "run", str(path)]) == 0
    first = capsys.readouterr().out
    assert main(["--seed", "99", "run", str(path)]) == 0
    second = capsys.readouterr().out
    base = (tmp_path / "out" / "exp").rglob("*.dat")
    redo = (tmp_path / "out" / "exp-1").rglob("*.dat")
    baseline = {p.name: p.read_bytes() for p in base}
    reseeded = {p.name: p.read_bytes() for p in redo}
    assert baseline.keys() == reseeded.keys()
    assert baseline != reseeded
    assert first.splitlines()[0].startswith("runs executed")
    assert second.splitlines()[0].startswith("runs executed")


def test_output_override_redirects_root(tmp_path):
    path = write_config(tmp_path)
    elsewhere = tmp_path / "elsewhere"
    assert main(["--output", str(elsewhere), "run", str(path)]) == 0
    assert (elsewhere / "exp").is_dir()
    assert not (tmp_path / "out").exists()


def test_console_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "heurobench", "list"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "OneMax" in proc.stdout
