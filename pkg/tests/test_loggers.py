import math

import numpy as np
import pytest

from heurobench import (
    AnalyzerLogger,
    Always,
    At,
    Domain,
    Each,
    OnImprovement,
    TriggerSet,
    Watcher,
    get_problem,
    read_data_dir,
)


def make_logger(tmp_path, triggers, watchers=(), **kwargs):
    return AnalyzerLogger(
        root_dir=tmp_path,
        folder_name="run",
        algorithm_id="alg",
        algorithm_info="test",
        triggers=triggers,
        watchers=watchers,
        **kwargs,
    )


def dat_lines(logger, pid, name, dim):
    path = logger.output_dir / f"data_f{pid}_{name}" / f"IOHprofiler_f{pid}_DIM{dim}.dat"
    return path.read_text().splitlines()


def test_always_budget_three(tmp_path):
    p = get_problem(Domain.BOOLEAN, 1, 1, 16)
    log = make_logger(tmp_path, Always())
    p.attach_logger(log)
    rng = np.random.default_rng(0)
    for _ in range(3):
        p(rng.integers(0, 2, 16, dtype=np.int8))
    p.reset()
    p.detach_logger(log)
    log.close()
    lines = dat_lines(log, 1, "OneMax", 16)
    assert lines[0] == '"evaluations" "raw_y" "raw_y_best"'
    assert len(lines) == 4  # 1 header + 3 rows, final row already stored


def test_two_runs_two_headers(tmp_path):
    p = get_problem(Domain.BOOLEAN, 1, 1, 8)
    log = make_logger(tmp_path, Always())
    p.attach_logger(log)
    p(np.ones(8, dtype=np.int8))
    p.reset()
    p(np.zeros(8, dtype=np.int8))
    p.reset()
    p.detach_logger(log)
    log.close()
    lines = dat_lines(log, 1, "OneMax", 8)
    headers = [i for i, l in enumerate(lines) if l.startswith('"')]
    assert headers == [0, 2]
    info = (log.output_dir / "IOHprofiler_f1_OneMax.info").read_text()
    assert info.endswith("1:1|8, 1:1|0")


def test_forced_final_record(tmp_path):
    p = get_problem(Domain.BOOLEAN, 1, 1, 4)
    log = make_logger(tmp_path, OnImprovement())
    p.attach_logger(log)
    p([1, 1, 0, 0])  # improves: stored
    p([0, 1, 0, 0])  # worse: not stored
    p.reset()  # forces the final evaluation to disk
    p.detach_logger(log)
    log.close()
    lines = dat_lines(log, 1, "OneMax", 4)
    assert lines[1:] == ["1 2 2", "2 1 2"]


def test_no_duplicate_when_final_already_stored(tmp_path):
    p = get_problem(Domain.BOOLEAN, 1, 1, 4)
    log = make_logger(tmp_path, Always())
    p.attach_logger(log)
    p([1, 0, 0, 0])
    p.reset()
    p.detach_logger(log)
    log.close()
    lines = dat_lines(log, 1, "OneMax", 4)
    assert len(lines) == 2


def test_detach_without_reset_leaves_readable_dir(tmp_path):
    p = get_problem(Domain.BOOLEAN, 1, 1, 4)
    log = make_logger(tmp_path, OnImprovement())
    p.attach_logger(log)
    p([1, 1, 0, 0])  # improves: stored
    p([0, 1, 0, 0])  # worse: pending only
    p.detach_logger(log)  # no reset: detach completes the run
    log.close()
    lines = dat_lines(log, 1, "OneMax", 4)
    assert lines[1:] == ["1 2 2", "2 1 2"]
    data = read_data_dir(log.output_dir)
    runs = data.stanzas[0].runs
    assert len(runs) == 1
    assert runs[0].reported_evaluations == 2
    assert runs[0].reported_best == 2.0


def test_empty_run_leaves_no_trace(tmp_path):
    p = get_problem(Domain.BOOLEAN, 1, 1, 4)
    log = make_logger(tmp_path, Always())
    p.attach_logger(log)
    p.reset()  # nothing evaluated
    p.detach_logger(log)
    log.close()
    assert list(log.output_dir.iterdir()) == []


def test_sparse_trigger_still_one_row(tmp_path):
    p = get_problem(Domain.BOOLEAN, 1, 1, 4)
    log = make_logger(tmp_path, At([1000]))
    p.attach_logger(log)
    for _ in range(5):
        p([1, 0, 1, 0])
    p.reset()
    p.detach_logger(log)
    log.close()
    lines = dat_lines(log, 1, "OneMax", 4)
    assert len(lines) == 2
    assert lines[1].startswith("5 ")


def test_watcher_columns(tmp_path):
    values = {"sigma": None}
    watcher = Watcher("sigma", lambda: values["sigma"])
    p = get_problem(Domain.BOOLEAN, 1, 1, 4)
    log = make_logger(tmp_path, Always(), watchers=[watcher])
    p.attach_logger(log)
    p([1, 0, 0, 0])  # polled while unavailable
    values["sigma"] = 0.5
    p([1, 1, 0, 0])
    p.reset()
    p.detach_logger(log)
    log.close()
    lines = dat_lines(log, 1, "OneMax", 4)
    assert lines[0] == '"evaluations" "raw_y" "raw_y_best" "sigma"'
    assert lines[1] == "1 1 1 nan"
    assert lines[2] == "2 2 2 0.5"


def test_watcher_name_validation():
    with pytest.raises(ValueError):
        Watcher("has space", lambda: 1.0)
    with pytest.raises(ValueError):
        Watcher('quo"te', lambda: 1.0)
    with pytest.raises(ValueError):
        Watcher("", lambda: 1.0)


def test_duplicate_watchers_rejected(tmp_path):
    w = [Watcher("a", lambda: 1.0), Watcher("a", lambda: 2.0)]
    with pytest.raises(ValueError):
        make_logger(tmp_path, Always(), watchers=w)


def test_folder_collision_suffixes(tmp_path):
    logs = [make_logger(tmp_path, Always()) for _ in range(3)]
    names = sorted(l.output_dir.name for l in logs)
    assert names == ["run", "run-1", "run-2"]


def test_info_stanza_per_dimension(tmp_path):
    log = make_logger(tmp_path, Always())
    for dim in (4, 8):
        p = get_problem(Domain.BOOLEAN, 1, 1, dim)
        p.attach_logger(log)
        p(np.ones(dim, dtype=np.int8))
        p.reset()
        p.detach_logger(log)
    log.close()
    info = (log.output_dir / "IOHprofiler_f1_OneMax.info").read_text()
    lines = info.splitlines()
    assert len(lines) == 6
    assert "DIM = 4" in lines[0]
    assert lines[1] == "%"
    assert lines[2] == "data_f1_OneMax/IOHprofiler_f1_DIM4.dat, 1:1|4"
    assert "DIM = 8" in lines[3]
    assert lines[5] == "data_f1_OneMax/IOHprofiler_f1_DIM8.dat, 1:1|8"
    assert not info.endswith("\n")


def test_consecutive_runs_share_stanza(tmp_path):
    log = make_logger(tmp_path, Always())
    for iid in (1, 2, 3):
        p = get_problem(Domain.BOOLEAN, 2, iid, 6)
        p.attach_logger(log)
        p(np.ones(6, dtype=np.int8))
        p.reset()
        p.detach_logger(log)
    log.close()
    info = (log.output_dir / "IOHprofiler_f2_LeadingOnes.info").read_text()
    assert len(info.splitlines()) == 3
    assert info.count("%") == 1
    data = read_data_dir(log.output_dir)
    assert [r.instance_id for r in data.stanzas[0].runs] == [1, 2, 3]


def test_offer_before_start_rejected(tmp_path):
    from heurobench.core import LogRecord

    log = make_logger(tmp_path, Always())
    with pytest.raises(RuntimeError):
        log.offer(LogRecord(1, 0.0, 0.0, True))


def test_label_validation(tmp_path):
    with pytest.raises(ValueError):
        AnalyzerLogger(tmp_path, 'bad"name', "a", "i", Always())
    with pytest.raises(ValueError):
        AnalyzerLogger(tmp_path, "ok", 'a"b', "i", Always())


def test_suite_name_appears_in_info(tmp_path):
    log = make_logger(tmp_path, Always(), suite_name="PBO-mini")
    p = get_problem(Domain.BOOLEAN, 1, 1, 4)
    p.attach_logger(log)
    p([1, 1, 1, 1])
    p.reset()
    p.detach_logger(log)
    log.close()
    info = (log.output_dir / "IOHprofiler_f1_OneMax.info").read_text()
    assert info.startswith('suite = "PBO-mini", funcId = 1, funcName = "OneMax", DIM = 4')
    assert 'maximization = "T"' in info


def test_trigger_state_reset_between_runs(tmp_path):
    from heurobench import Targets

    log = make_logger(tmp_path, TriggerSet([Targets([2.0])]))
    p = get_problem(Domain.BOOLEAN, 1, 1, 4)
    p.attach_logger(log)
    for _ in range(2):
        p([1, 1, 0, 0])
        p([1, 1, 1, 0])
        p.reset()
    p.detach_logger(log)
    log.close()
    lines = dat_lines(log, 1, "OneMax", 4)
    # each run: target row at t=1 (best 2.0 reached) + forced final row
    headers = [l for l in lines if l.startswith('"')]
    rows = [l for l in lines if not l.startswith('"')]
    assert len(headers) == 2
    assert [r.split()[0] for r in rows] == ["1", "2", "1", "2"]
