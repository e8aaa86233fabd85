from pathlib import Path

import pytest

from heurobench import (
    ExperimentSummary,
    read_data_dir,
    run_experiment,
    run_seed,
    validate_config,
)


def make_config(tmp_path, **overrides):
    raw = {
        "suite": "PBO-mini",
        "instance_ids": [1, 2],
        "dimensions": [16],
        "algorithm": {"name": "rls"},
        "budget": 500,
        "repetitions": 2,
        "master_seed": 31,
        "output": {"root_dir": str(tmp_path), "folder_name": "exp"},
    }
    raw.update(overrides)
    return validate_config(raw)


def tree_bytes(root: Path) -> dict:
    return {
        p.relative_to(root): p.read_bytes()
        for p in sorted(root.rglob("*"))
        if p.is_file()
    }


# ---------------------------------------------------------------------------
# seed mixing


def test_run_seed_is_deterministic():
    assert run_seed(31, 1, 16, 1, 1) == run_seed(31, 1, 16, 1, 1)


def test_run_seed_separates_every_field():
    base = run_seed(31, 1, 16, 1, 1)
    assert run_seed(32, 1, 16, 1, 1) != base
    assert run_seed(31, 2, 16, 1, 1) != base
    assert run_seed(31, 1, 17, 1, 1) != base
    assert run_seed(31, 1, 16, 2, 1) != base
    assert run_seed(31, 1, 16, 1, 2) != base


def test_run_seed_no_collisions_over_grid():
    seeds = {
        run_seed(31, pid, dim, iid, rep)
        for pid in range(1, 7)
        for dim in (4, 16, 64)
        for iid in range(1, 6)
        for rep in range(1, 6)
    }
    assert len(seeds) == 6 * 3 * 5 * 5


def test_run_seed_fits_in_64_bits():
    for seed in (0, 1, 2**63, 2**64 - 1, 12345):
        value = run_seed(seed, 6, 625, 9999, 100)
        assert 0 <= value < 2**64


# ---------------------------------------------------------------------------
# experiment execution


def test_experiment_run_counts_and_layout(tmp_path):
    summary = run_experiment(make_config(tmp_path))
    assert isinstance(summary, ExperimentSummary)
    assert summary.runs == 6 * 2 * 2
    assert summary.output_dir == tmp_path / "exp"
    infos = sorted(p.name for p in summary.output_dir.glob("*.info"))
    assert len(infos) == 6
    assert infos[0] == "IOHprofiler_f1_OneMax.info"
    data = read_data_dir(summary.output_dir)
    assert sum(len(s.runs) for s in data.stanzas) == 24
    by_key = data.runs_by_key()
    assert set(by_key) == {(pid, 16, iid) for pid in range(1, 7) for iid in (1, 2)}
    assert all(len(runs) == 2 for runs in by_key.values())


def test_rls_hits_easy_optima(tmp_path):
    summary = run_experiment(make_config(tmp_path, budget=20_000))
    assert summary.optima_hit > 0


def test_reruns_are_byte_identical(tmp_path):
    s1 = run_experiment(make_config(tmp_path / "a"))
    s2 = run_experiment(make_config(tmp_path / "b"))
    assert tree_bytes(s1.output_dir) == tree_bytes(s2.output_dir)


def test_parallel_matches_sequential(tmp_path):
    s1 = run_experiment(make_config(tmp_path / "a", parallelism=1))
    s2 = run_experiment(make_config(tmp_path / "b", parallelism=4))
    assert tree_bytes(s1.output_dir) == tree_bytes(s2.output_dir)


def test_different_master_seed_changes_output(tmp_path):
    s1 = run_experiment(make_config(tmp_path / "a"))
    s2 = run_experiment(make_config(tmp_path / "b", master_seed=32))
    assert tree_bytes(s1.output_dir) != tree_bytes(s2.output_dir)


def test_folder_collision_gets_suffix(tmp_path):
    s1 = run_experiment(make_config(tmp_path))
    s2 = run_experiment(make_config(tmp_path))
    assert s1.output_dir.name == "exp"
    assert s2.output_dir.name == "exp-1"
    assert tree_bytes(s1.output_dir) == tree_bytes(s2.output_dir)


def test_budget_one_stores_single_row(tmp_path):
    config = make_config(
        tmp_path,
        budget=1,
        repetitions=1,
        instance_ids=[1],
        triggers=[{"type": "on_improvement"}],
    )
    summary = run_experiment(config)
    data = read_data_dir(summary.output_dir)
    for stanza in data.stanzas:
        for run in stanza.runs:
            assert run.reported_evaluations == 1
            assert len(run.rows) == 1
            assert run.rows[0][0] == 1


def test_stop_on_optimum_false_uses_full_budget(tmp_path):
    config = make_config(
        tmp_path,
        suite={"domain": "boolean", "problem_ids": [1]},
        dimensions=[4],
        instance_ids=[1],
        budget=64,
        repetitions=1,
        stop_on_optimum=False,
    )
    summary = run_experiment(config)
    data = read_data_dir(summary.output_dir)
    run = data.stanzas[0].runs[0]
    assert run.reported_evaluations == 64
    assert summary.optima_hit == 1


def test_stop_on_optimum_true_stops_short(tmp_path):
    config = make_config(
        tmp_path,
        suite={"domain": "boolean", "problem_ids": [1]},
        dimensions=[4],
        instance_ids=[1],
        budget=64,
        repetitions=1,
    )
    summary = run_experiment(config)
    data = read_data_dir(summary.output_dir)
    assert data.stanzas[0].runs[0].reported_evaluations < 64


def test_watchers_recorded_through_runner(tmp_path):
    config = make_config(
        tmp_path,
        algorithm={"name": "one_plus_one_ea"},
        watchers=["mutation_rate"],
        budget=30,
        repetitions=1,
        instance_ids=[1],
        suite={"domain": "boolean", "problem_ids": [1]},
        dimensions=[16],
    )
    summary = run_experiment(config)
    data = read_data_dir(summary.output_dir)
    run = data.stanzas[0].runs[0]
    assert run.columns == ("evaluations", "raw_y", "raw_y_best", "mutation_rate")
    assert all(row[3] == pytest.approx(1 / 16) for row in run.rows)


def test_failed_shard_reports_partial_output(tmp_path, monkeypatch):
    import heurobench.runner as runner_module

    def boom(name, parameters):
        raise ValueError("constructor exploded")

    monkeypatch.setattr(runner_module, "make_algorithm", boom)
    with pytest.raises(RuntimeError, match="partial output"):
        run_experiment(make_config(tmp_path))
    assert (tmp_path / "exp").is_dir()
