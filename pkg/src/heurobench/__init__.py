"""heurobench: benchmarking toolkit for iterative optimization heuristics.

Problems are tuples (problem id, instance id, dimension) evaluated through
seeded instance transforms; attached loggers record trigger-selected
evaluations into an analyzer-ready text format; the runner executes
algorithm x suite x repetition grids reproducibly.
"""

from .core import (
    TARGET_TOLERANCE,
    Direction,
    Domain,
    LogRecord,
    OptimumInfo,
    ProblemInstance,
    ProblemMetadata,
    ProblemState,
    RunSummary,
)
from .transforms import (
    MAX_INSTANCE_ID,
    BooleanTransform,
    ContinuousTransform,
    InstanceTransform,
    RangeAffine,
    derive_seed,
    identity_transform,
    make_boolean_transform,
    make_continuous_transform,
)
from .functions import (
    FunctionEntry,
    WModelFunction,
    WModelParams,
    epistasis_block_inverse,
    epistasis_block_map,
    get_problem,
    leadingones,
    linear_harmonic,
    lookup,
    onemax,
    register_function,
    registered_entries,
    w_dummy,
    w_epistasis,
    w_neutrality,
    w_ruggedness,
)
from .suites import Suite, bbob_mini, make_named_suite, make_suite, pbo_mini
from .triggers import Always, At, Each, OnImprovement, Targets, Trigger, TriggerSet
from .loggers import AnalyzerLogger, FinalValueLogger, Logger, Watcher
from .dataformat import DataDirectory, DataFormatError, format_number, read_data_dir
from .algorithms import (
    ALGORITHMS,
    Algorithm,
    OnePlusOneEA,
    OnePlusOneES,
    RLS,
    RandomSearch,
    make_algorithm,
    one_plus_one_ea,
    one_plus_one_es,
    random_search,
    rls,
)
from .config import ConfigError, ExperimentConfig, load_config, validate_config
from .runner import ExperimentSummary, run_experiment, run_seed

__version__ = "0.1.0"

__all__ = [
    "TARGET_TOLERANCE",
    "MAX_INSTANCE_ID",
    "Direction",
    "Domain",
    "LogRecord",
    "OptimumInfo",
    "ProblemInstance",
    "ProblemMetadata",
    "ProblemState",
    "RunSummary",
    "BooleanTransform",
    "ContinuousTransform",
    "InstanceTransform",
    "RangeAffine",
    "derive_seed",
    "identity_transform",
    "make_boolean_transform",
    "make_continuous_transform",
    "FunctionEntry",
    "WModelFunction",
    "WModelParams",
    "epistasis_block_inverse",
    "epistasis_block_map",
    "get_problem",
    "leadingones",
    "linear_harmonic",
    "lookup",
    "onemax",
    "register_function",
    "registered_entries",
    "w_dummy",
    "w_epistasis",
    "w_neutrality",
    "w_ruggedness",
    "Suite",
    "bbob_mini",
    "make_named_suite",
    "make_suite",
    "pbo_mini",
    "Always",
    "At",
    "Each",
    "OnImprovement",
    "Targets",
    "Trigger",
    "TriggerSet",
    "AnalyzerLogger",
    "FinalValueLogger",
    "Logger",
    "Watcher",
    "DataDirectory",
    "DataFormatError",
    "format_number",
    "read_data_dir",
    "ALGORITHMS",
    "Algorithm",
    "OnePlusOneEA",
    "OnePlusOneES",
    "RLS",
    "RandomSearch",
    "make_algorithm",
    "one_plus_one_ea",
    "one_plus_one_es",
    "random_search",
    "rls",
    "ConfigError",
    "ExperimentConfig",
    "load_config",
    "validate_config",
    "ExperimentSummary",
    "run_experiment",
    "run_seed",
]
