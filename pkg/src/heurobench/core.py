"""Problem abstraction: metadata, per-run state, and the evaluation pipeline.

A problem instance evaluates candidate solutions through a three-stage
pipeline: a domain transform maps the incoming point into the base
function's frame, the base function scores it, and a range transform maps
the score back to the value the algorithm sees.  Attached loggers are
offered a record for every evaluation; their triggers decide what is kept.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

# Absolute tolerance for "optimum reached" checks.  Range transforms keep
# objective values O(10^3), so an absolute tolerance is safe.
TARGET_TOLERANCE = 1e-8


class Domain(enum.Enum):
    """Search-space kind of a problem."""

    BOOLEAN = "boolean"
    CONTINUOUS = "continuous"


class Direction(enum.Enum):
    """Optimization goal: whether larger or smaller values win."""

    MAXIMIZE = "maximize"
    MINIMIZE = "minimize"

    def better(self, a: float, b: float) -> bool:
        """True iff value `a` is strictly better than `b`."""
        return a > b if self is Direction.MAXIMIZE else a < b

    def not_worse(self, a: float, b: float) -> bool:
        return a >= b if self is Direction.MAXIMIZE else a <= b

    @property
    def worst(self) -> float:
        """Best-so-far sentinel: any real evaluation improves on it."""
        return -math.inf if self is Direction.MAXIMIZE else math.inf


@dataclass(frozen=True)
class ProblemMetadata:
    """Identity of one problem instance: (problem id, instance id, dimension)
    plus its domain, direction, and box bounds."""

    problem_id: int
    name: str
    dimension: int
    instance_id: int
    direction: Direction
    domain: Domain
    lower_bounds: np.ndarray
    upper_bounds: np.ndarray

    def __post_init__(self):
        if self.problem_id < 1:
            raise ValueError(f"problem_id must be >= 1, got {self.problem_id}")
        if self.instance_id < 1:
            raise ValueError(f"instance_id must be >= 1, got {self.instance_id}")
        if self.dimension < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dimension}")
        lower = np.asarray(self.lower_bounds, dtype=float)
        upper = np.asarray(self.upper_bounds, dtype=float)
        if lower.shape != (self.dimension,) or upper.shape != (self.dimension,):
            raise ValueError("bounds must have one (lower, upper) pair per variable")
        if not np.all(lower < upper):
            raise ValueError("lower bounds must be strictly below upper bounds")
        object.__setattr__(self, "lower_bounds", lower)
        object.__setattr__(self, "upper_bounds", upper)

    @classmethod
    def boolean(cls, problem_id: int, name: str, dimension: int, instance_id: int) -> "ProblemMetadata":
        """Boolean metadata with the fixed {0,1} bounds and MAXIMIZE direction."""
        return cls(
            problem_id=problem_id,
            name=name,
            dimension=dimension,
            instance_id=instance_id,
            direction=Direction.MAXIMIZE,
            domain=Domain.BOOLEAN,
            lower_bounds=np.zeros(dimension),
            upper_bounds=np.ones(dimension),
        )


@dataclass
class ProblemState:
    """Mutable per-run evaluation bookkeeping."""

    evaluations: int = 0
    y_current: float = math.nan
    y_best: float = math.nan
    x_best: np.ndarray | None = None
    improved_last_eval: bool = False

    @classmethod
    def initial(cls, direction: Direction) -> "ProblemState":
        return cls(y_best=direction.worst)


@dataclass(frozen=True)
class OptimumInfo:
    """Optimal value of the transformed problem, when known.

    `y_opt` is the value after the range transform; `x_opt`, when present,
    is an optimizer in the algorithm-facing coordinates (after accounting
    for the domain transform).
    """

    y_opt: float = math.nan
    x_opt: np.ndarray | None = None
    known: bool = False


@dataclass
class LogRecord:
    """One evaluation event offered to attached loggers.

    `parameters` holds watched algorithm values; it is filled in by each
    logger at log time (the problem offers the bare record).
    """

    evaluations: int
    raw_y: float
    raw_y_best: float
    improved: bool = False
    parameters: dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class RunSummary:
    """Handed to loggers when a run ends: budget spent and best value found."""

    evaluations: int
    y_best: float


class ProblemInstance:
    """A base function composed with its instance transform, plus run state.

    Evaluation returns ``T_y(f(T_x(x)))``.  The instance validates inputs,
    counts evaluations, tracks the best-so-far value with respect to the
    optimization direction, and fans each evaluation out to every attached
    logger.
    """

    def __init__(
        self,
        metadata: ProblemMetadata,
        raw_function: Callable[[np.ndarray], float],
        transform,
        optimum: OptimumInfo | None = None,
    ):
        if transform.dimension != metadata.dimension:
            raise ValueError(
                f"transform dimension {transform.dimension} does not match "
                f"problem dimension {metadata.dimension}"
            )
        self.metadata = metadata
        self.raw_function = raw_function
        self.transform = transform
        self.optimum = optimum if optimum is not None else OptimumInfo()
        self.state = ProblemState.initial(metadata.direction)
        self._loggers: list = []

    @property
    def loggers(self) -> tuple:
        return tuple(self._loggers)

    def _validate(self, x) -> np.ndarray:
        md = self.metadata
        arr = np.asarray(x)
        if arr.shape != (md.dimension,):
            raise ValueError(
                f"solution has shape {arr.shape}, expected ({md.dimension},) "
                f"for {md.name} in dimension {md.dimension}"
            )
        if md.domain is Domain.BOOLEAN:
            if not np.all((arr == 0) | (arr == 1)):
                raise ValueError(
                    f"boolean problem {md.name} requires 0/1 entries, got {list(arr)}"
                )
            return arr.astype(np.int8, copy=False)
        # Out-of-bounds continuous inputs are evaluated normally: the
        # platform measures algorithms, it does not police them.
        return arr.astype(float, copy=False)

    def evaluate(self, x) -> float:
        """Evaluate one solution and return the value the algorithm sees."""
        arr = self._validate(x)
        inner = self.transform.apply_domain(arr)
        y = float(self.transform.apply_range(self.raw_function(inner)))

        st = self.state
        st.evaluations += 1
        st.y_current = y
        # Strict improvement only: ties keep the incumbent, so trajectories
        # stay deterministic.
        improved = self.metadata.direction.better(y, st.y_best)
        if improved:
            st.y_best = y
            st.x_best = np.array(arr, copy=True)
        st.improved_last_eval = improved

        if self._loggers:
            record = LogRecord(st.evaluations, y, st.y_best, improved)
            for logger in self._loggers:
                logger.offer(record)
        return y

    __call__ = evaluate

    def reset(self) -> None:
        """End the current run: notify loggers and clear evaluation state.

        A never-evaluated run emits no summary (nothing happened).  Loggers
        stay attached and receive the next run's start notification.
        """
        if self.state.evaluations > 0:
            summary = RunSummary(self.state.evaluations, self.state.y_best)
            for logger in self._loggers:
                logger.on_run_end(summary)
        self.state = ProblemState.initial(self.metadata.direction)
        for logger in self._loggers:
            logger.on_run_start(self.metadata)

    def attach_logger(self, logger) -> None:
        if any(existing is logger for existing in self._loggers):
            raise ValueError("logger is already attached to this problem")
        self._loggers.append(logger)
        logger.on_run_start(self.metadata)

    def detach_logger(self, logger) -> None:
        """Remove a logger, completing its view of any run in progress.

        A run with at least one evaluation is summarised to the departing
        logger, so its files are complete without a prior reset().  The
        problem keeps its state and other loggers keep observing the run.
        """
        for i, existing in enumerate(self._loggers):
            if existing is logger:
                del self._loggers[i]
                if self.state.evaluations > 0:
                    summary = RunSummary(self.state.evaluations, self.state.y_best)
                    logger.on_run_end(summary)
                logger.flush()
                return
        raise ValueError("logger is not attached to this problem")

    def final_target_hit(self) -> bool | None:
        """Whether the best-so-far value reached the known optimum.

        Returns None when the optimum is unknown (not an error).
        """
        if not self.optimum.known:
            return None
        if self.metadata.direction is Direction.MAXIMIZE:
            return self.state.y_best >= self.optimum.y_opt - TARGET_TOLERANCE
        return self.state.y_best <= self.optimum.y_opt + TARGET_TOLERANCE
