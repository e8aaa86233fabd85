"""Suites: ordered collections of problem instances.

A suite is a recipe over the cross product of problem ids, instance ids,
and dimensions.  Iteration builds every instance fresh (problem state
never leaks between algorithms) in a fixed nesting: problem id outermost,
then dimension, then instance.  That grouping matches the data layout,
which keys files by (problem, dimension).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import Domain, ProblemInstance
from .functions import lookup

PBO_MINI_IDS = (1, 2, 3, 4, 5, 6)
BBOB_MINI_IDS = (1, 2, 3, 8, 10)


def _check_unique_positive(values, label: str) -> tuple[int, ...]:
    values = tuple(int(v) for v in values)
    if not values:
        raise ValueError(f"{label} must be non-empty")
    if len(set(values)) != len(values):
        raise ValueError(f"{label} contains duplicates: {values}")
    if any(v < 1 for v in values):
        raise ValueError(f"{label} must all be >= 1, got {values}")
    return values


@dataclass
class Suite:
    name: str
    domain: Domain
    problem_ids: tuple[int, ...]
    instance_ids: tuple[int, ...]
    dimensions: tuple[int, ...]
    _cursor: int = field(default=0, repr=False)

    @property
    def size(self) -> int:
        return len(self.problem_ids) * len(self.instance_ids) * len(self.dimensions)

    def keys(self) -> list[tuple[int, int, int]]:
        """All (problem_id, dimension, instance_id) triples in iteration order."""
        return [
            (pid, dim, iid)
            for pid in self.problem_ids
            for dim in self.dimensions
            for iid in self.instance_ids
        ]

    def next_problem(self) -> ProblemInstance | None:
        """Construct the next instance, or None once exhausted (repeatedly)."""
        triples = self.keys()
        if self._cursor >= len(triples):
            return None
        pid, dim, iid = triples[self._cursor]
        self._cursor += 1
        return lookup(pid, self.domain).constructor(iid, dim)

    def reset(self) -> None:
        self._cursor = 0

    def __iter__(self):
        self.reset()
        while (problem := self.next_problem()) is not None:
            yield problem

    def __len__(self) -> int:
        return self.size


def make_suite(name, domain, problem_ids, instance_ids, dimensions) -> Suite:
    problem_ids = _check_unique_positive(problem_ids, "problem_ids")
    instance_ids = _check_unique_positive(instance_ids, "instance_ids")
    dimensions = _check_unique_positive(dimensions, "dimensions")
    for pid in problem_ids:
        lookup(pid, domain)  # unknown ids fail here, before any iteration
    return Suite(name, domain, problem_ids, instance_ids, dimensions)


def pbo_mini(instance_ids, dimensions) -> Suite:
    """The boolean catalog: OneMax family plus LeadingOnes and the
    harmonic linear function."""
    return make_suite("PBO-mini", Domain.BOOLEAN, PBO_MINI_IDS, instance_ids, dimensions)


def bbob_mini(instance_ids, dimensions) -> Suite:
    """The continuous catalog: sphere, ellipsoids, Rastrigin, Rosenbrock."""
    return make_suite("BBOB-mini", Domain.CONTINUOUS, BBOB_MINI_IDS, instance_ids, dimensions)


NAMED_SUITES = {
    "PBO-mini": pbo_mini,
    "BBOB-mini": bbob_mini,
}


def make_named_suite(name: str, instance_ids, dimensions) -> Suite:
    try:
        builder = NAMED_SUITES[name]
    except KeyError:
        raise ValueError(
            f"unknown suite {name!r}; available: {sorted(NAMED_SUITES)}"
        ) from None
    return builder(instance_ids, dimensions)
