"""Triggers decide which evaluations get stored by a logger.

All triggers answer fires(record); stateful ones (TARGETS) reset at run
start.  A TriggerSet ORs its members and always polls every member, so a
firing TARGETS threshold is consumed even when another trigger already
fired at the same evaluation.
"""

from __future__ import annotations

from .core import Direction, LogRecord, ProblemMetadata


class Trigger:
    def on_run_start(self, metadata: ProblemMetadata) -> None:
        pass

    def fires(self, record: LogRecord) -> bool:
        raise NotImplementedError


class Always(Trigger):
    def fires(self, record: LogRecord) -> bool:
        return True


class OnImprovement(Trigger):
    """Fires when the evaluation strictly improved the best-so-far.

    The first evaluation of a run always improves on the sentinel, so it
    always fires.
    """

    def fires(self, record: LogRecord) -> bool:
        return record.improved


class Each(Trigger):
    """Fires every k-th evaluation: t mod k == 0, nothing extra at t=1."""

    def __init__(self, k: int):
        if k < 1:
            raise ValueError(f"interval must be >= 1, got {k}")
        self.k = k

    def fires(self, record: LogRecord) -> bool:
        return record.evaluations % self.k == 0


class At(Trigger):
    """Fires at an explicit set of evaluation counts."""

    def __init__(self, points):
        points = sorted(int(p) for p in points)
        if not points:
            raise ValueError("points must be non-empty")
        if any(p < 1 for p in points):
            raise ValueError(f"points must be >= 1, got {points}")
        if len(set(points)) != len(points):
            raise ValueError(f"points must be distinct, got {points}")
        self.points = frozenset(points)

    def fires(self, record: LogRecord) -> bool:
        return record.evaluations in self.points


class Targets(Trigger):
    """Fires when best-so-far first reaches a threshold, once per run each.

    Reaching means >= under MAXIMIZE and <= under MINIMIZE; one evaluation
    can consume several thresholds at once (single fire).
    """

    def __init__(self, values):
        values = sorted(float(v) for v in values)
        if not values:
            raise ValueError("values must be non-empty")
        self.values = tuple(values)
        self._direction = Direction.MAXIMIZE
        self._fired = [False] * len(self.values)

    def on_run_start(self, metadata: ProblemMetadata) -> None:
        self._direction = metadata.direction
        self._fired = [False] * len(self.values)

    def fires(self, record: LogRecord) -> bool:
        hit = False
        for i, v in enumerate(self.values):
            if self._fired[i]:
                continue
            if self._direction.not_worse(record.raw_y_best, v):
                self._fired[i] = True
                hit = True
        return hit


class TriggerSet(Trigger):
    """OR-combination of triggers, polled without short-circuiting."""

    def __init__(self, triggers):
        triggers = list(triggers)
        if not triggers:
            raise ValueError("a trigger set needs at least one trigger")
        self.triggers = triggers

    def on_run_start(self, metadata: ProblemMetadata) -> None:
        for t in self.triggers:
            t.on_run_start(metadata)

    def fires(self, record: LogRecord) -> bool:
        return any([t.fires(record) for t in self.triggers])


def trigger_from_dict(spec: dict) -> Trigger:
    """Build a trigger from its config description, e.g. {"type": "each",
    "k": 10}."""
    if not isinstance(spec, dict) or "type" not in spec:
        raise ValueError(f"trigger description must be an object with a 'type': {spec!r}")
    kind = spec["type"]
    extra = set(spec) - {"type", "k", "points", "values"}
    if extra:
        raise ValueError(f"unknown trigger fields {sorted(extra)} in {spec!r}")
    if kind == "always":
        return Always()
    if kind == "on_improvement":
        return OnImprovement()
    if kind == "each":
        if "k" not in spec:
            raise ValueError("'each' trigger requires field 'k'")
        return Each(int(spec["k"]))
    if kind == "at":
        if "points" not in spec:
            raise ValueError("'at' trigger requires field 'points'")
        return At(spec["points"])
    if kind == "targets":
        if "values" not in spec:
            raise ValueError("'targets' trigger requires field 'values'")
        return Targets(spec["values"])
    raise ValueError(f"unknown trigger type {kind!r}")


def trigger_set_from_config(specs) -> TriggerSet:
    if isinstance(specs, dict):
        specs = [specs]
    return TriggerSet([trigger_from_dict(s) for s in specs])
