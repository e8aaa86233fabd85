"""Line-delimited JSON protocol for driving problems from another process.

One request object per line on stdin, one response per line on stdout:

    {"id": 1, "op": "get_problem", "domain": "boolean",
     "problem_id": 1, "instance_id": 1, "dimension": 4}
    {"id": 1, "ok": true, "result": {"problem": 1, "metadata": {...}}}

Handles are small integers valid for the lifetime of the process.  Floats
that JSON cannot carry (nan, inf, -inf) travel as those strings, in both
directions.  Custom problems registered with `wrap_problem` are evaluated
by the client: the client computes y itself and calls `submit` with the
input and value, which advances state and feeds loggers exactly like a
server-side evaluation.  A failed or missing submit never advances state.
`close_logger` (and the end of the session) detaches a still-attached
logger first, so its output directory is always complete and readable.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .algorithms import make_algorithm
from .core import (
    Direction,
    Domain,
    OptimumInfo,
    ProblemInstance,
    ProblemMetadata,
)
from .functions import CONTINUOUS_LOWER, CONTINUOUS_UPPER, get_problem
from .loggers import AnalyzerLogger, Watcher
from .transforms import identity_transform
from .triggers import trigger_set_from_config

CUSTOM_ID_MIN = 10_000


def to_wire(value: float):
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def from_wire(value) -> float:
    if isinstance(value, str):
        if value in ("nan", "inf", "-inf"):
            return float(value)
        raise ValueError(f"not a number: {value!r}")
    return float(value)


class ServeError(Exception):
    pass


class _Session:
    """Handle registry plus one method per protocol op."""

    def __init__(self):
        self._next = 1
        self.problems: dict[int, tuple[str, ProblemInstance]] = {}
        self.loggers: dict[int, AnalyzerLogger] = {}
        self.watch_values: dict[int, dict[str, float]] = {}
        self.pending: dict[int, float] = {}
        self.attached: dict[int, int] = {}  # logger handle -> problem handle

    def _handle(self) -> int:
        h = self._next
        self._next += 1
        return h

    def _problem(self, params) -> tuple[str, ProblemInstance]:
        try:
            return self.problems[int(params["problem"])]
        except KeyError:
            raise ServeError(f"unknown problem handle {params.get('problem')}") from None

    def _logger(self, params) -> AnalyzerLogger:
        try:
            return self.loggers[int(params["logger"])]
        except KeyError:
            raise ServeError(f"unknown logger handle {params.get('logger')}") from None

    @staticmethod
    def _domain(params) -> Domain:
        try:
            return Domain(params["domain"])
        except ValueError:
            raise ServeError(
                f"domain must be one of {[d.value for d in Domain]}"
            ) from None

    def _metadata_payload(self, problem: ProblemInstance) -> dict:
        md = problem.metadata
        payload = {
            "problem_id": md.problem_id,
            "name": md.name,
            "instance_id": md.instance_id,
            "dimension": md.dimension,
            "domain": md.domain.value,
            "direction": md.direction.name.lower(),
            "lower_bound": float(md.lower_bounds[0]),
            "upper_bound": float(md.upper_bounds[0]),
            "optimum_known": problem.optimum.known,
        }
        if problem.optimum.known:
            payload["optimum"] = to_wire(problem.optimum.y_opt)
        return payload

    def _evaluation_payload(self, problem: ProblemInstance, y: float) -> dict:
        return {
            "y": to_wire(y),
            "evaluations": problem.state.evaluations,
            "y_best": to_wire(problem.state.y_best),
            "improved": problem.state.improved_last_eval,
        }

    # ---- ops ------------------------------------------------------------

    def op_get_problem(self, params):
        problem = get_problem(
            self._domain(params),
            int(params["problem_id"]),
            int(params["instance_id"]),
            int(params["dimension"]),
        )
        handle = self._handle()
        self.problems[handle] = ("catalog", problem)
        return {"problem": handle, "metadata": self._metadata_payload(problem)}

    def op_wrap_problem(self, params):
        problem_id = int(params["problem_id"])
        if problem_id < CUSTOM_ID_MIN:
            raise ServeError(
                f"custom problem ids start at {CUSTOM_ID_MIN}, got {problem_id}"
            )
        domain = self._domain(params)
        dimension = int(params["dimension"])
        direction_name = params.get("direction", "maximize")
        try:
            direction = Direction[direction_name.upper()]
        except KeyError:
            raise ServeError("direction must be 'maximize' or 'minimize'") from None
        if domain is Domain.BOOLEAN:
            lower, upper = 0.0, 1.0
        else:
            lower, upper = CONTINUOUS_LOWER, CONTINUOUS_UPPER
        metadata = ProblemMetadata(
            problem_id=problem_id,
            name=str(params["name"]),
            dimension=dimension,
            instance_id=1,
            direction=direction,
            domain=domain,
            lower_bounds=np.full(dimension, lower),
            upper_bounds=np.full(dimension, upper),
        )
        handle = self._handle()

        def stub(_inner):
            try:
                return self.pending.pop(handle)
            except KeyError:
                raise ServeError(
                    "custom problems are evaluated by the client; use 'submit'"
                ) from None

        optimum = None
        if "optimum" in params:
            optimum = OptimumInfo(y_opt=from_wire(params["optimum"]), known=True)
        problem = ProblemInstance(
            metadata=metadata,
            raw_function=stub,
            transform=identity_transform(dimension, domain),
            optimum=optimum,
        )
        self.problems[handle] = ("custom", problem)
        return {"problem": handle, "metadata": self._metadata_payload(problem)}

    def op_evaluate(self, params):
        kind, problem = self._problem(params)
        if kind != "catalog":
            raise ServeError(
                "custom problems are evaluated by the client; use 'submit'"
            )
        y = problem.evaluate(params["x"])
        return self._evaluation_payload(problem, y)

    def op_evaluate_batch(self, params):
        kind, problem = self._problem(params)
        if kind != "catalog":
            raise ServeError(
                "custom problems are evaluated by the client; use 'submit'"
            )
        ys = [to_wire(problem.evaluate(x)) for x in params["xs"]]
        return {"ys": ys, "evaluations": problem.state.evaluations,
                "y_best": to_wire(problem.state.y_best)}

    def op_submit(self, params):
        kind, problem = self._problem(params)
        if kind != "custom":
            raise ServeError("'submit' is for wrapped problems; use 'evaluate'")
        handle = int(params["problem"])
        self.pending[handle] = from_wire(params["y"])
        try:
            y = problem.evaluate(params["x"])
        finally:
            self.pending.pop(handle, None)
        return self._evaluation_payload(problem, y)

    def op_state(self, params):
        _, problem = self._problem(params)
        hit = problem.final_target_hit()
        return {
            "evaluations": problem.state.evaluations,
            "y_best": to_wire(problem.state.y_best),
            "final_target_hit": hit,
        }

    def op_reset(self, params):
        _, problem = self._problem(params)
        problem.reset()
        return {}

    def op_attach_analyzer(self, params):
        _, problem = self._problem(params)
        handle = self._handle()
        self.watch_values[handle] = {}
        store = self.watch_values[handle]

        def source_for(name):
            return lambda: store.get(name)

        watchers = [Watcher(n, source_for(n)) for n in params.get("watchers", [])]
        triggers = params.get("triggers", [{"type": "on_improvement"}])
        try:
            trigger_set = trigger_set_from_config(triggers)
        except ValueError as exc:
            raise ServeError(f"triggers: {exc}") from None
        logger = AnalyzerLogger(
            root_dir=Path(params["root_dir"]),
            folder_name=str(params["folder_name"]),
            algorithm_id=str(params.get("algorithm_id", "unknown_algorithm")),
            algorithm_info=str(params.get("algorithm_info", "")),
            triggers=trigger_set,
            watchers=watchers,
            suite_name=str(params.get("suite_name", "unknown_suite")),
        )
        self.loggers[handle] = logger
        problem.attach_logger(logger)
        self.attached[handle] = int(params["problem"])
        return {"logger": handle, "output_dir": str(logger.output_dir)}

    def op_set_watch(self, params):
        logger = int(params["logger"])
        if logger not in self.watch_values:
            raise ServeError(f"unknown logger handle {logger}")
        self.watch_values[logger][str(params["name"])] = from_wire(params["value"])
        return {}

    def op_detach(self, params):
        _, problem = self._problem(params)
        problem.detach_logger(self._logger(params))
        self.attached.pop(int(params["logger"]), None)
        return {}

    def op_close_logger(self, params):
        handle = int(params["logger"])
        logger = self._logger(params)
        self._release(handle, logger)
        del self.loggers[handle]
        self.watch_values.pop(handle, None)
        return {}

    def _release(self, handle: int, logger: AnalyzerLogger) -> None:
        """Detach the logger if it is still attached, then close it."""
        problem_handle = self.attached.pop(handle, None)
        if problem_handle is not None and problem_handle in self.problems:
            self.problems[problem_handle][1].detach_logger(logger)
        logger.close()

    def close_all(self) -> None:
        for handle, logger in self.loggers.items():
            self._release(handle, logger)
        self.loggers.clear()
        self.watch_values.clear()

    def op_run_algorithm(self, params):
        kind, problem = self._problem(params)
        if kind != "catalog":
            raise ServeError("server-side algorithms cannot drive wrapped problems")
        algorithm = make_algorithm(
            str(params["name"]), params.get("parameters", {})
        )
        algorithm.run(
            problem,
            budget=int(params["budget"]),
            seed=int(params["seed"]),
            stop_on_optimum=bool(params.get("stop_on_optimum", True)),
        )
        return {
            "evaluations": problem.state.evaluations,
            "y_best": to_wire(problem.state.y_best),
        }


def handle_request(session: _Session, request: dict) -> dict:
    request_id = request.get("id")
    op = request.get("op")
    method = getattr(session, f"op_{op}", None) if isinstance(op, str) else None
    if method is None:
        return {
            "id": request_id,
            "ok": False,
            "error": {"type": "ServeError", "message": f"unknown op {op!r}"},
        }
    try:
        result = method(request)
    except Exception as exc:
        return {
            "id": request_id,
            "ok": False,
            "error": {"type": type(exc).__name__, "message": str(exc)},
        }
    return {"id": request_id, "ok": True, "result": result}


def serve_loop(stdin, stdout) -> None:
    """Serve requests until 'shutdown' or end of input."""
    session = _Session()
    for line in stdin:
        line = line.strip()
        if not line:
            continue
        try:
            request = json.loads(line)
        except json.JSONDecodeError as exc:
            response = {
                "id": None,
                "ok": False,
                "error": {"type": "ParseError", "message": str(exc)},
            }
        else:
            if isinstance(request, dict) and request.get("op") == "shutdown":
                print(json.dumps({"id": request.get("id"), "ok": True, "result": {}}),
                      file=stdout, flush=True)
                break
            if not isinstance(request, dict):
                response = {
                    "id": None,
                    "ok": False,
                    "error": {"type": "ParseError", "message": "request must be an object"},
                }
            else:
                response = handle_request(session, request)
        print(json.dumps(response), file=stdout, flush=True)
    session.close_all()
