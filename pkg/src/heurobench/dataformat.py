"""The two-part data format: naming, number rendering, and a validating reader.

Layout under one run folder:

    <folder>/IOHprofiler_f<id>_<name>.info          one per problem id
    <folder>/data_f<id>_<name>/IOHprofiler_f<id>_DIM<n>.dat

`.dat` files hold one quoted header line per run followed by that run's
space-separated rows.  `.info` files hold three-line stanzas:

    suite = "<s>", funcId = <id>, funcName = "<name>", DIM = <n>, \
maximization = "<T|F>", algId = "<id>", algInfo = "<text>"
    %
    <relative .dat path>, <instance>:<evaluations>|<best>, ...

Numbers are rendered as the shortest decimal that round-trips to the same
double, integers without a decimal point, so identical experiments yield
byte-identical files.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path

BASE_COLUMNS = ("evaluations", "raw_y", "raw_y_best")

# Above this magnitude Python switches to exponent notation anyway and the
# "integer without decimal point" rule stops being exact.
_INT_RENDER_LIMIT = 1e16


class DataFormatError(Exception):
    """Malformed data directory; carries file and line context."""

    def __init__(self, message: str, path=None, line: int | None = None):
        self.path = Path(path) if path is not None else None
        self.line = line
        where = ""
        if self.path is not None:
            where = f"{self.path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        super().__init__(where + message)


def format_number(value) -> str:
    """Shortest decimal rendering that parses back to the same double."""
    v = float(value)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if v.is_integer() and abs(v) < _INT_RENDER_LIMIT:
        return str(int(v))
    return repr(v)


def check_label(text: str, what: str) -> str:
    """Reject labels that would corrupt the quoted-text grammar."""
    if '"' in text or "\n" in text or "\r" in text:
        raise ValueError(f"{what} may not contain quotes or newlines: {text!r}")
    return text


def data_folder_name(problem_id: int, function_name: str) -> str:
    return f"data_f{problem_id}_{function_name}"


def dat_file_name(problem_id: int, dimension: int) -> str:
    return f"IOHprofiler_f{problem_id}_DIM{dimension}.dat"


def info_file_name(problem_id: int, function_name: str) -> str:
    return f"IOHprofiler_f{problem_id}_{function_name}.info"


def dat_header(watcher_names) -> str:
    return " ".join(f'"{name}"' for name in (*BASE_COLUMNS, *watcher_names))


def info_header_line(
    suite: str,
    problem_id: int,
    function_name: str,
    dimension: int,
    maximization: bool,
    algorithm_id: str,
    algorithm_info: str,
) -> str:
    flag = "T" if maximization else "F"
    return (
        f'suite = "{suite}", funcId = {problem_id}, funcName = "{function_name}", '
        f'DIM = {dimension}, maximization = "{flag}", '
        f'algId = "{algorithm_id}", algInfo = "{algorithm_info}"'
    )


def run_entry(instance_id: int, evaluations: int, best: float) -> str:
    return f"{instance_id}:{evaluations}|{format_number(best)}"


# ---------------------------------------------------------------------------
# reader


@dataclass
class ParsedRun:
    instance_id: int
    reported_evaluations: int
    reported_best: float
    columns: tuple[str, ...]
    rows: list[list[float]] = field(default_factory=list)


@dataclass
class InfoStanza:
    """One three-line `.info` stanza with its `.dat` runs attached."""

    suite: str
    problem_id: int
    function_name: str
    dimension: int
    maximization: bool
    algorithm_id: str
    algorithm_info: str
    dat_path: str
    runs: list[ParsedRun] = field(default_factory=list)


@dataclass
class DataDirectory:
    root: Path
    stanzas: list[InfoStanza] = field(default_factory=list)

    def runs_by_key(self) -> dict[tuple[int, int, int], list[ParsedRun]]:
        """Runs grouped by (problem_id, dimension, instance_id)."""
        grouped: dict[tuple[int, int, int], list[ParsedRun]] = {}
        for stanza in self.stanzas:
            for run in stanza.runs:
                key = (stanza.problem_id, stanza.dimension, run.instance_id)
                grouped.setdefault(key, []).append(run)
        return grouped


_INFO_LINE1 = re.compile(
    r'^suite = "([^"]*)", funcId = (\d+), funcName = "([^"]*)", DIM = (\d+), '
    r'maximization = "(T|F)", algId = "([^"]*)", algInfo = "([^"]*)"$'
)
_RUN_ENTRY = re.compile(r"^(\d+):(\d+)\|(.+)$")


def _parse_float(token: str, path, lineno: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise DataFormatError(f"non-numeric cell {token!r}", path, lineno) from None


def _parse_info_file(path: Path) -> list[InfoStanza]:
    lines = path.read_text().splitlines()
    if len(lines) % 3 != 0:
        raise DataFormatError(
            f"expected three-line stanzas, found {len(lines)} lines", path, len(lines)
        )
    stanzas = []
    for i in range(0, len(lines), 3):
        meta = _INFO_LINE1.match(lines[i])
        if meta is None:
            raise DataFormatError("malformed header", path, i + 1)
        if lines[i + 1] != "%":
            raise DataFormatError(f"expected '%', found {lines[i + 1]!r}", path, i + 2)
        parts = lines[i + 2].split(", ")
        if len(parts) < 2:
            raise DataFormatError("run line needs a .dat path and at least one run", path, i + 3)
        stanza = InfoStanza(
            suite=meta.group(1),
            problem_id=int(meta.group(2)),
            function_name=meta.group(3),
            dimension=int(meta.group(4)),
            maximization=meta.group(5) == "T",
            algorithm_id=meta.group(6),
            algorithm_info=meta.group(7),
            dat_path=parts[0],
        )
        for entry in parts[1:]:
            m = _RUN_ENTRY.match(entry)
            if m is None:
                raise DataFormatError(f"malformed run entry {entry!r}", path, i + 3)
            stanza.runs.append(
                ParsedRun(
                    instance_id=int(m.group(1)),
                    reported_evaluations=int(m.group(2)),
                    reported_best=_parse_float(m.group(3), path, i + 3),
                    columns=(),
                )
            )
        stanzas.append(stanza)
    return stanzas


def _parse_dat_file(path: Path) -> list[tuple[tuple[str, ...], list[list[float]]]]:
    """Split a .dat file into (header columns, rows) blocks, one per run."""
    blocks: list[tuple[tuple[str, ...], list[list[float]]]] = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line:
                raise DataFormatError("blank line", path, lineno)
            if line.startswith('"'):
                columns = re.findall(r'"([^"]*)"', line)
                rebuilt = " ".join(f'"{c}"' for c in columns)
                if rebuilt != line or not columns:
                    raise DataFormatError("malformed header line", path, lineno)
                blocks.append((tuple(columns), []))
                continue
            if not blocks:
                raise DataFormatError("data row before any header", path, lineno)
            columns, rows = blocks[-1]
            cells = line.split(" ")
            if len(cells) != len(columns):
                raise DataFormatError(
                    f"row has {len(cells)} cells under a {len(columns)}-column header",
                    path,
                    lineno,
                )
            rows.append([_parse_float(c, path, lineno) for c in cells])
    return blocks


def read_data_dir(path) -> DataDirectory:
    """Parse and structurally validate one run folder.

    Checks the stanza grammar, row arity and numeric cells, the strictly
    increasing evaluation counter per run, and the cross-reference between
    `.info` run entries and `.dat` run blocks (matched in file order).
    """
    root = Path(path)
    if not root.is_dir():
        raise DataFormatError("not a directory", root)
    info_files = sorted(root.glob("*.info"))
    if not info_files:
        raise DataFormatError("no .info files found", root)

    result = DataDirectory(root=root)
    for info_path in info_files:
        stanzas = _parse_info_file(info_path)
        by_dat: dict[str, list[InfoStanza]] = {}
        for stanza in stanzas:
            by_dat.setdefault(stanza.dat_path, []).append(stanza)
        for dat_rel, group in by_dat.items():
            dat_path = root / dat_rel
            if not dat_path.is_file():
                raise DataFormatError(f"referenced .dat file missing: {dat_rel}", info_path)
            blocks = _parse_dat_file(dat_path)
            claimed = sum(len(s.runs) for s in group)
            if claimed != len(blocks):
                raise DataFormatError(
                    f"{dat_rel} holds {len(blocks)} runs but .info lists {claimed}",
                    info_path,
                )
            cursor = 0
            for stanza in group:
                for run in stanza.runs:
                    columns, rows = blocks[cursor]
                    cursor += 1
                    if not rows:
                        raise DataFormatError(
                            f"run {cursor} in {dat_rel} has a header but no rows", dat_path
                        )
                    evals = [r[0] for r in rows]
                    if any(not float(e).is_integer() or e < 1 for e in evals):
                        raise DataFormatError(
                            f"run {cursor} in {dat_rel} has a non-positive or "
                            "fractional evaluation count",
                            dat_path,
                        )
                    if any(b <= a for a, b in zip(evals, evals[1:])):
                        raise DataFormatError(
                            f"run {cursor} in {dat_rel}: evaluation counter not "
                            "strictly increasing",
                            dat_path,
                        )
                    run.columns = columns
                    run.rows = rows
        result.stanzas.extend(stanzas)
    return result
