"""Baseline solvers.

These exist to exercise the pipeline, not to compete: uniform random
search (both domains), random local search and a (1+1) EA with standard
bit mutation (boolean), and a (1+1) ES with the 1/5th-success step-size
rule (continuous).

Each algorithm keeps its current control parameters in `watch_values`, so
logger watchers can poll them mid-run via `parameter_source`.  All runs
stop early once the problem reports its optimum hit, unless told not to.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import Domain, ProblemInstance


class Algorithm:
    name: str = ""
    domain: Domain | None = None  # None: runs on any domain
    watchable: tuple[str, ...] = ()

    def __init__(self):
        self.watch_values: dict[str, float] = {}

    def parameter_source(self, name: str) -> Callable[[], float | None]:
        """Accessor suitable as a Watcher source; None until first set."""
        if name not in self.watchable:
            raise ValueError(
                f"{self.name} exposes {list(self.watchable)}, not {name!r}"
            )
        return lambda: self.watch_values.get(name)

    def run(self, problem: ProblemInstance, budget: int, seed: int,
            stop_on_optimum: bool = True) -> None:
        raise NotImplementedError

    def _check_domain(self, problem: ProblemInstance) -> None:
        if self.domain is not None and problem.metadata.domain is not self.domain:
            raise ValueError(
                f"{self.name} requires a {self.domain.value} problem, got "
                f"{problem.metadata.domain.value}"
            )

    def _done(self, problem, budget, stop_on_optimum) -> bool:
        if problem.state.evaluations >= budget:
            return True
        return stop_on_optimum and problem.final_target_hit() is True


class RandomSearch(Algorithm):
    """Budget-many i.i.d. uniform samples."""

    name = "random_search"

    def run(self, problem, budget, seed, stop_on_optimum=True):
        rng = np.random.default_rng(seed)
        md = problem.metadata
        while not self._done(problem, budget, stop_on_optimum):
            if md.domain is Domain.BOOLEAN:
                x = rng.integers(0, 2, size=md.dimension, dtype=np.int8)
            else:
                x = rng.uniform(md.lower_bounds, md.upper_bounds)
            problem.evaluate(x)


class RLS(Algorithm):
    """Random local search: flip one uniform bit, accept when not worse."""

    name = "rls"
    domain = Domain.BOOLEAN

    def __init__(self, x0=None):
        super().__init__()
        self.x0 = None if x0 is None else np.asarray(x0, dtype=np.int8)

    def run(self, problem, budget, seed, stop_on_optimum=True):
        self._check_domain(problem)
        rng = np.random.default_rng(seed)
        n = problem.metadata.dimension
        direction = problem.metadata.direction
        x = self.x0.copy() if self.x0 is not None else rng.integers(0, 2, n, dtype=np.int8)
        fx = problem.evaluate(x)
        while not self._done(problem, budget, stop_on_optimum):
            y = x.copy()
            i = rng.integers(n)
            y[i] ^= 1
            fy = problem.evaluate(y)
            if direction.not_worse(fy, fx):
                x, fx = y, fy


class OnePlusOneEA(Algorithm):
    """(1+1) EA: flip each bit with probability 1/n (zero flips resampled),
    accept when not worse."""

    name = "one_plus_one_ea"
    domain = Domain.BOOLEAN
    watchable = ("mutation_rate",)

    def __init__(self, mutation_rate: float | None = None, x0=None):
        super().__init__()
        if mutation_rate is not None and not 0 < mutation_rate <= 1:
            raise ValueError(f"mutation_rate must be in (0, 1], got {mutation_rate}")
        self.mutation_rate = mutation_rate
        self.x0 = None if x0 is None else np.asarray(x0, dtype=np.int8)

    def run(self, problem, budget, seed, stop_on_optimum=True):
        self._check_domain(problem)
        rng = np.random.default_rng(seed)
        n = problem.metadata.dimension
        direction = problem.metadata.direction
        rate = self.mutation_rate if self.mutation_rate is not None else 1.0 / n
        self.watch_values["mutation_rate"] = rate
        x = self.x0.copy() if self.x0 is not None else rng.integers(0, 2, n, dtype=np.int8)
        fx = problem.evaluate(x)
        while not self._done(problem, budget, stop_on_optimum):
            while True:
                mask = rng.random(n) < rate
                if mask.any():
                    break
            y = x ^ mask
            fy = problem.evaluate(y)
            if direction.not_worse(fy, fx):
                x, fx = y, fy


class OnePlusOneES(Algorithm):
    """(1+1) ES with isotropic Gaussian mutation and the 1/5th-success
    rule: step size grows by 1.5 on improvement and shrinks by 1.5^(-1/4)
    otherwise, clamped to [1e-12, domain width]."""

    name = "one_plus_one_es"
    domain = Domain.CONTINUOUS
    watchable = ("sigma",)

    SIGMA_MIN = 1e-12
    GROW = 1.5
    SHRINK = 1.5 ** -0.25

    def __init__(self, sigma0: float | None = None):
        super().__init__()
        if sigma0 is not None and not sigma0 > 0:
            raise ValueError(f"sigma0 must be positive, got {sigma0}")
        self.sigma0 = sigma0

    def run(self, problem, budget, seed, stop_on_optimum=True):
        self._check_domain(problem)
        rng = np.random.default_rng(seed)
        md = problem.metadata
        width = float(np.max(md.upper_bounds - md.lower_bounds))
        sigma = self.sigma0 if self.sigma0 is not None else 0.3 * width
        self.watch_values["sigma"] = sigma
        x = rng.uniform(md.lower_bounds, md.upper_bounds)
        fx = problem.evaluate(x)
        while not self._done(problem, budget, stop_on_optimum):
            y = x + sigma * rng.standard_normal(md.dimension)
            self.watch_values["sigma"] = sigma
            fy = problem.evaluate(y)
            success = md.direction.better(fy, fx)
            if md.direction.not_worse(fy, fx):
                x, fx = y, fy
            sigma *= self.GROW if success else self.SHRINK
            sigma = min(max(sigma, self.SIGMA_MIN), width)


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class AlgorithmEntry:
    name: str
    domain: Domain | None
    watchable: tuple[str, ...]
    factory: Callable[..., Algorithm]


ALGORITHMS: dict[str, AlgorithmEntry] = {}


def register_algorithm(entry: AlgorithmEntry) -> None:
    if entry.name in ALGORITHMS:
        raise ValueError(f"algorithm {entry.name!r} already registered")
    ALGORITHMS[entry.name] = entry


def get_algorithm_entry(name: str) -> AlgorithmEntry:
    try:
        return ALGORITHMS[name]
    except KeyError:
        raise ValueError(
            f"unknown algorithm {name!r}; available: {sorted(ALGORITHMS)}"
        ) from None


def make_algorithm(name: str, parameters: dict | None = None) -> Algorithm:
    entry = get_algorithm_entry(name)
    try:
        return entry.factory(**(parameters or {}))
    except TypeError as exc:
        raise ValueError(f"bad parameters for algorithm {name!r}: {exc}") from None


for _cls in (RandomSearch, RLS, OnePlusOneEA, OnePlusOneES):
    register_algorithm(AlgorithmEntry(_cls.name, _cls.domain, _cls.watchable, _cls))


# function-style entry points, for direct use

def random_search(problem, budget, seed, stop_on_optimum=True):
    RandomSearch().run(problem, budget, seed, stop_on_optimum)


def rls(problem, budget, seed, x0=None, stop_on_optimum=True):
    RLS(x0=x0).run(problem, budget, seed, stop_on_optimum)


def one_plus_one_ea(problem, budget, seed, mutation_rate=None, x0=None, stop_on_optimum=True):
    OnePlusOneEA(mutation_rate=mutation_rate, x0=x0).run(problem, budget, seed, stop_on_optimum)


def one_plus_one_es(problem, budget, seed, sigma0=None, stop_on_optimum=True):
    OnePlusOneES(sigma0=sigma0).run(problem, budget, seed, stop_on_optimum)
