"""Loggers: consume evaluation records and persist what the triggers keep.

Lifecycle, driven by the problem: on_run_start at attach and after every
reset, offer per evaluation, on_run_end when a non-empty run is reset,
flush at detach.  The analyzer logger writes the two-part `.info` + `.dat`
format; the final-value logger keeps one (best, evaluations) pair per run
in memory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .core import Direction, LogRecord, ProblemMetadata, RunSummary
from .dataformat import (
    check_label,
    dat_file_name,
    dat_header,
    data_folder_name,
    format_number,
    info_file_name,
    info_header_line,
    run_entry,
)
from .triggers import Trigger, TriggerSet


class Logger:
    def on_run_start(self, metadata: ProblemMetadata) -> None:
        pass

    def offer(self, record: LogRecord) -> None:
        raise NotImplementedError

    def on_run_end(self, summary: RunSummary) -> None:
        pass

    def flush(self) -> None:
        pass


class Watcher:
    """Named scalar polled at log time, e.g. an algorithm's step size.

    The source returns the current value or None when it has nothing yet;
    None is recorded as the token nan.
    """

    def __init__(self, name: str, source: Callable[[], float | None]):
        check_label(name, "watcher name")
        if not name or " " in name:
            raise ValueError(f"watcher name must be non-empty and space-free: {name!r}")
        self.name = name
        self.source = source

    def poll(self) -> float:
        value = self.source()
        return math.nan if value is None else float(value)


class FinalValueLogger(Logger):
    """Keeps only the end-of-run result: (y_best, evaluations) per run."""

    def __init__(self):
        self.results: list[tuple[float, int]] = []

    def offer(self, record: LogRecord) -> None:
        pass

    def on_run_end(self, summary: RunSummary) -> None:
        self.results.append((summary.y_best, summary.evaluations))


@dataclass
class _PendingRecord:
    evaluations: int
    raw_y: float
    raw_y_best: float
    parameters: list[float]
    stored: bool


class AnalyzerLogger(Logger):
    """Writes analyzer-ready run folders.

    Rows go to one `.dat` file per (problem, dimension); run summaries go
    to one `.info` file per problem.  The header line of a run is written
    lazily at its first stored row, and the final evaluation is forced to
    disk at run end so sparse triggers still leave a complete record.
    """

    def __init__(
        self,
        root_dir,
        folder_name: str,
        algorithm_id: str,
        algorithm_info: str,
        triggers: Trigger,
        watchers=(),
        suite_name: str = "unknown_suite",
        reuse_directory=None,
    ):
        check_label(folder_name, "folder name")
        check_label(algorithm_id, "algorithm id")
        check_label(algorithm_info, "algorithm info")
        check_label(suite_name, "suite name")
        self.watchers = list(watchers)
        names = [w.name for w in self.watchers]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate watcher names: {names}")
        if isinstance(triggers, TriggerSet):
            self.triggers = triggers
        else:
            self.triggers = TriggerSet([triggers])
        self.algorithm_id = algorithm_id
        self.algorithm_info = algorithm_info
        self.suite_name = suite_name
        if reuse_directory is not None:
            # shared-folder mode for drivers that shard work: the caller
            # guarantees no two loggers touch the same problem's files
            self.output_dir = Path(reuse_directory)
            self.output_dir.mkdir(parents=True, exist_ok=True)
        else:
            self.output_dir = self.claim_folder(Path(root_dir), folder_name)

        self._context: ProblemMetadata | None = None
        self._header_written = False
        self._pending: _PendingRecord | None = None
        self._dat_key: tuple[int, int] | None = None
        self._dat_handle = None
        # dimension of the trailing stanza in each problem's .info file,
        # so consecutive runs of one (problem, dimension) share a stanza
        self._info_tail: dict[int, int] = {}

    @staticmethod
    def claim_folder(root: Path, folder_name: str) -> Path:
        """Create a fresh run folder, suffixing -1, -2, ... on collision."""
        root = Path(root)
        root.mkdir(parents=True, exist_ok=True)
        candidate = root / folder_name
        suffix = 0
        while candidate.exists():
            suffix += 1
            candidate = root / f"{folder_name}-{suffix}"
        candidate.mkdir()
        return candidate

    # -- run lifecycle ------------------------------------------------

    def on_run_start(self, metadata: ProblemMetadata) -> None:
        self._context = metadata
        self._header_written = False
        self._pending = None
        self.triggers.on_run_start(metadata)

    def offer(self, record: LogRecord) -> None:
        if self._context is None:
            raise RuntimeError("record offered before any run started")
        values = [w.poll() for w in self.watchers]
        pending = _PendingRecord(
            record.evaluations, record.raw_y, record.raw_y_best, values, stored=False
        )
        if self.triggers.fires(record):
            self._write_row(pending)
            pending.stored = True
        self._pending = pending

    def on_run_end(self, summary: RunSummary) -> None:
        if self._context is None:
            raise RuntimeError("run ended before it started")
        if self._pending is not None and not self._pending.stored:
            self._write_row(self._pending)
            self._pending.stored = True
        self._append_info_entry(summary)
        self._pending = None
        self._header_written = False

    def flush(self) -> None:
        if self._dat_handle is not None:
            self._dat_handle.flush()

    def close(self) -> None:
        if self._dat_handle is not None:
            self._dat_handle.close()
            self._dat_handle = None
            self._dat_key = None

    # -- file plumbing -------------------------------------------------

    def _dat_relative_path(self, metadata: ProblemMetadata) -> str:
        folder = data_folder_name(metadata.problem_id, metadata.name)
        return f"{folder}/{dat_file_name(metadata.problem_id, metadata.dimension)}"

    def _open_dat(self, metadata: ProblemMetadata):
        key = (metadata.problem_id, metadata.dimension)
        if self._dat_key != key:
            self.close()
            folder = self.output_dir / data_folder_name(metadata.problem_id, metadata.name)
            folder.mkdir(exist_ok=True)
            self._dat_handle = open(
                folder / dat_file_name(metadata.problem_id, metadata.dimension), "a"
            )
            self._dat_key = key
        return self._dat_handle

    def _write_row(self, pending: _PendingRecord) -> None:
        handle = self._open_dat(self._context)
        if not self._header_written:
            handle.write(dat_header(w.name for w in self.watchers) + "\n")
            self._header_written = True
        cells = [
            format_number(pending.evaluations),
            format_number(pending.raw_y),
            format_number(pending.raw_y_best),
            *(format_number(v) for v in pending.parameters),
        ]
        handle.write(" ".join(cells) + "\n")

    def _append_info_entry(self, summary: RunSummary) -> None:
        md = self._context
        entry = run_entry(md.instance_id, summary.evaluations, summary.y_best)
        path = self.output_dir / info_file_name(md.problem_id, md.name)
        if self._info_tail.get(md.problem_id) == md.dimension:
            with open(path, "a") as fh:
                fh.write(f", {entry}")
            return
        # new stanza; the file deliberately never ends in a newline so run
        # entries can be appended in place
        header = info_header_line(
            self.suite_name,
            md.problem_id,
            md.name,
            md.dimension,
            md.direction is Direction.MAXIMIZE,
            self.algorithm_id,
            self.algorithm_info,
        )
        lead = "\n" if path.exists() else ""
        with open(path, "a") as fh:
            fh.write(f"{lead}{header}\n%\n{self._dat_relative_path(md)}, {entry}")
        self._info_tail[md.problem_id] = md.dimension
