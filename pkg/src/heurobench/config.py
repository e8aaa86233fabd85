"""Experiment configuration: a single JSON document, strictly validated.

Unknown keys are rejected everywhere (catches typos before hours of
compute).  Validation resolves the suite and algorithm against their
registries, so a passing config is runnable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .algorithms import get_algorithm_entry
from .core import Domain
from .suites import NAMED_SUITES, Suite, make_named_suite, make_suite
from .transforms import MAX_INSTANCE_ID
from .triggers import trigger_set_from_config

DEFAULT_TRIGGERS = [{"type": "on_improvement"}]

_TOP_KEYS = {
    "suite",
    "instance_ids",
    "dimensions",
    "algorithm",
    "budget",
    "repetitions",
    "master_seed",
    "triggers",
    "watchers",
    "stop_on_optimum",
    "parallelism",
    "output",
}
_REQUIRED_KEYS = {
    "suite",
    "instance_ids",
    "dimensions",
    "algorithm",
    "budget",
    "repetitions",
    "master_seed",
    "output",
}


class ConfigError(Exception):
    """Invalid experiment configuration."""


def _fail(message: str):
    raise ConfigError(message)


def _as_int(value, label: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(f"{label} must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        _fail(f"{label} must be >= {minimum}, got {value}")
    return value


def _as_int_list(value, label: str) -> list[int]:
    if not isinstance(value, list) or not value:
        _fail(f"{label} must be a non-empty list of integers")
    return [_as_int(v, f"{label} entry", minimum=1) for v in value]


def _as_str(value, label: str) -> str:
    if not isinstance(value, str):
        _fail(f"{label} must be a string, got {value!r}")
    return value


@dataclass(frozen=True)
class OutputConfig:
    root_dir: str
    folder_name: str
    algorithm_id: str
    algorithm_info: str


@dataclass
class ExperimentConfig:
    suite: Suite
    algorithm_name: str
    algorithm_parameters: dict
    budget: int
    repetitions: int
    master_seed: int
    trigger_specs: list[dict]
    watcher_names: tuple[str, ...]
    stop_on_optimum: bool
    parallelism: int
    output: OutputConfig
    raw: dict = field(repr=False, default_factory=dict)


def _parse_suite(raw_suite, instance_ids, dimensions) -> Suite:
    if isinstance(raw_suite, str):
        if raw_suite not in NAMED_SUITES:
            _fail(f"suite: unknown name {raw_suite!r}; available: {sorted(NAMED_SUITES)}")
        return make_named_suite(raw_suite, instance_ids, dimensions)
    if isinstance(raw_suite, dict):
        extra = set(raw_suite) - {"domain", "problem_ids"}
        if extra:
            _fail(f"suite: unknown keys {sorted(extra)}")
        if "domain" not in raw_suite or "problem_ids" not in raw_suite:
            _fail("suite object needs 'domain' and 'problem_ids'")
        domain_name = _as_str(raw_suite["domain"], "suite.domain")
        try:
            domain = Domain(domain_name)
        except ValueError:
            _fail(f"suite.domain must be one of {[d.value for d in Domain]}, got {domain_name!r}")
        ids = _as_int_list(raw_suite["problem_ids"], "suite.problem_ids")
        try:
            return make_suite("custom", domain, ids, instance_ids, dimensions)
        except ValueError as exc:
            _fail(f"suite: {exc}")
    _fail(f"suite must be a name or an object, got {raw_suite!r}")


def validate_config(raw: dict) -> ExperimentConfig:
    if not isinstance(raw, dict):
        _fail("config must be a JSON object")
    unknown = set(raw) - _TOP_KEYS
    if unknown:
        _fail(f"unknown config keys: {sorted(unknown)}")
    missing = _REQUIRED_KEYS - set(raw)
    if missing:
        _fail(f"missing config keys: {sorted(missing)}")

    instance_ids = _as_int_list(raw["instance_ids"], "instance_ids")
    for iid in instance_ids:
        if iid > MAX_INSTANCE_ID:
            _fail(f"instance_ids must be <= {MAX_INSTANCE_ID}, got {iid}")
    dimensions = _as_int_list(raw["dimensions"], "dimensions")

    try:
        suite = _parse_suite(raw["suite"], instance_ids, dimensions)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"suite: {exc}") from None

    algo_raw = raw["algorithm"]
    if not isinstance(algo_raw, dict):
        _fail("algorithm must be an object with a 'name'")
    extra = set(algo_raw) - {"name", "parameters"}
    if extra:
        _fail(f"algorithm: unknown keys {sorted(extra)}")
    if "name" not in algo_raw:
        _fail("algorithm.name is required")
    algorithm_name = _as_str(algo_raw["name"], "algorithm.name")
    try:
        entry = get_algorithm_entry(algorithm_name)
    except ValueError as exc:
        raise ConfigError(f"algorithm.name: {exc}") from None
    parameters = algo_raw.get("parameters", {})
    if not isinstance(parameters, dict):
        _fail("algorithm.parameters must be an object")
    if entry.domain is not None and entry.domain is not suite.domain:
        _fail(
            f"algorithm {algorithm_name!r} runs on {entry.domain.value} problems, "
            f"but the suite is {suite.domain.value}"
        )

    budget = _as_int(raw["budget"], "budget", minimum=1)
    repetitions = _as_int(raw["repetitions"], "repetitions", minimum=1)
    master_seed = _as_int(raw["master_seed"], "master_seed")

    trigger_specs = raw.get("triggers", DEFAULT_TRIGGERS)
    if isinstance(trigger_specs, dict):
        trigger_specs = [trigger_specs]
    if not isinstance(trigger_specs, list):
        _fail("triggers must be a list of trigger objects")
    try:
        trigger_set_from_config(trigger_specs)  # dry build, workers build their own
    except ValueError as exc:
        raise ConfigError(f"triggers: {exc}") from None

    watcher_names = raw.get("watchers", [])
    if not isinstance(watcher_names, list):
        _fail("watchers must be a list of parameter names")
    for name in watcher_names:
        _as_str(name, "watcher name")
        if name not in entry.watchable:
            _fail(
                f"watcher {name!r} is not exposed by {algorithm_name!r} "
                f"(available: {list(entry.watchable)})"
            )

    stop_on_optimum = raw.get("stop_on_optimum", True)
    if not isinstance(stop_on_optimum, bool):
        _fail("stop_on_optimum must be true or false")
    parallelism = _as_int(raw.get("parallelism", 1), "parallelism", minimum=1)

    out_raw = raw["output"]
    if not isinstance(out_raw, dict):
        _fail("output must be an object")
    extra = set(out_raw) - {"root_dir", "folder_name", "algorithm_id", "algorithm_info"}
    if extra:
        _fail(f"output: unknown keys {sorted(extra)}")
    if "folder_name" not in out_raw:
        _fail("output.folder_name is required")
    output = OutputConfig(
        root_dir=_as_str(out_raw.get("root_dir", "."), "output.root_dir"),
        folder_name=_as_str(out_raw["folder_name"], "output.folder_name"),
        algorithm_id=_as_str(out_raw.get("algorithm_id", algorithm_name), "output.algorithm_id"),
        algorithm_info=_as_str(out_raw.get("algorithm_info", ""), "output.algorithm_info"),
    )

    return ExperimentConfig(
        suite=suite,
        algorithm_name=algorithm_name,
        algorithm_parameters=dict(parameters),
        budget=budget,
        repetitions=repetitions,
        master_seed=master_seed,
        trigger_specs=list(trigger_specs),
        watcher_names=tuple(watcher_names),
        stop_on_optimum=stop_on_optimum,
        parallelism=parallelism,
        output=output,
        raw=raw,
    )


def load_config(path) -> ExperimentConfig:
    """Read and validate a JSON config file.

    Missing files raise FileNotFoundError (the CLI maps that to its own
    exit code); anything structurally wrong raises ConfigError.
    """
    text = Path(path).read_text()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON ({exc})") from None
    return validate_config(raw)
