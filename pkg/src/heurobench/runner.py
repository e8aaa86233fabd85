"""Experiment driver: suite x repetitions with seeded reproducibility.

Every run's seed is mixed from (master_seed, problem_id, dimension,
instance_id, repetition) with a SplitMix64-style finalizer, so reruns of
the same config are byte-identical and runs are independent of execution
order.  Work is sharded by problem id; each shard owns its problem's
output files exclusively, which makes the optional thread parallelism
safe and keeps sequential and parallel output bytes identical.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .algorithms import make_algorithm
from .config import ExperimentConfig
from .functions import lookup
from .loggers import AnalyzerLogger, Watcher
from .triggers import trigger_set_from_config

_MASK64 = (1 << 64) - 1


def _splitmix64(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def run_seed(master_seed: int, problem_id: int, dimension: int,
             instance_id: int, repetition: int) -> int:
    """Per-run RNG seed; repetition counts from 1.

    Folds each field into the state with h = splitmix64(h XOR field).
    The formula is part of the interface: reruns must stay stable.
    """
    h = master_seed & _MASK64
    for value in (problem_id, dimension, instance_id, repetition):
        h = _splitmix64(h ^ (value & _MASK64))
    return h


@dataclass(frozen=True)
class ExperimentSummary:
    runs: int
    optima_hit: int
    output_dir: Path


def _run_problem_shard(config: ExperimentConfig, output_dir: Path, problem_id: int) -> tuple[int, int]:
    """All runs for one problem id, with its own logger and algorithm."""
    algorithm = make_algorithm(config.algorithm_name, config.algorithm_parameters)
    watchers = [Watcher(n, algorithm.parameter_source(n)) for n in config.watcher_names]
    logger = AnalyzerLogger(
        root_dir=output_dir.parent,
        folder_name=output_dir.name,
        algorithm_id=config.output.algorithm_id,
        algorithm_info=config.output.algorithm_info,
        triggers=trigger_set_from_config(config.trigger_specs),
        watchers=watchers,
        suite_name=config.suite.name,
        reuse_directory=output_dir,
    )
    suite = config.suite
    entry = lookup(problem_id, suite.domain)
    runs = 0
    optima = 0
    try:
        for dimension in suite.dimensions:
            for instance_id in suite.instance_ids:
                for rep in range(1, config.repetitions + 1):
                    problem = entry.constructor(instance_id, dimension)
                    problem.attach_logger(logger)
                    seed = run_seed(
                        config.master_seed, problem_id, dimension, instance_id, rep
                    )
                    algorithm.run(
                        problem, config.budget, seed,
                        stop_on_optimum=config.stop_on_optimum,
                    )
                    runs += 1
                    if problem.final_target_hit() is True:
                        optima += 1
                    problem.reset()
                    problem.detach_logger(logger)
    finally:
        logger.close()
    return runs, optima


def run_experiment(config: ExperimentConfig) -> ExperimentSummary:
    output_dir = AnalyzerLogger.claim_folder(
        Path(config.output.root_dir), config.output.folder_name
    )
    shards = list(config.suite.problem_ids)
    try:
        if config.parallelism <= 1:
            results = [_run_problem_shard(config, output_dir, pid) for pid in shards]
        else:
            with ThreadPoolExecutor(max_workers=config.parallelism) as pool:
                results = list(
                    pool.map(lambda pid: _run_problem_shard(config, output_dir, pid), shards)
                )
    except Exception as exc:
        raise RuntimeError(f"experiment aborted, partial output in {output_dir}: {exc}") from exc
    return ExperimentSummary(
        runs=sum(r for r, _ in results),
        optima_hit=sum(o for _, o in results),
        output_dir=output_dir,
    )
