"""Command-line interface.

Subcommands: run, validate, inspect, list, serve.  Exit codes: 0 success,
2 invalid config, 3 malformed data directory, 64 usage error, 66 missing
file.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import ConfigError, validate_config
from .core import Domain
from .dataformat import DataFormatError, format_number, read_data_dir
from .functions import registered_entries
from .algorithms import ALGORITHMS
from .suites import NAMED_SUITES

EXIT_OK = 0
EXIT_BAD_CONFIG = 2
EXIT_BAD_DATA = 3
EXIT_USAGE = 64
EXIT_NO_FILE = 66


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse normally exits the process on errors; raise instead so main
    # can map everything onto the documented exit codes
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(
        prog="heurobench",
        description="Benchmark iterative optimization heuristics and collect "
        "analyzer-ready run data.",
    )
    parser.add_argument("--seed", type=int, default=None,
                        help="override the config's master_seed")
    parser.add_argument("--output", default=None,
                        help="override the config's output.root_dir")
    sub = parser.add_subparsers(dest="command")
    run = sub.add_parser("run", help="execute an experiment config")
    run.add_argument("config_file")
    validate = sub.add_parser("validate", help="check a config without running it")
    validate.add_argument("config_file")
    inspect = sub.add_parser("inspect", help="parse and summarize a data directory")
    inspect.add_argument("data_dir")
    sub.add_parser("list", help="list registered problems, suites, and algorithms")
    sub.add_parser("serve", help="speak the line protocol on stdin/stdout")
    return parser


def _load_config(path: str, seed_override, root_override):
    text = Path(path).read_text()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON ({exc})") from None
    if seed_override is not None:
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
        raw["master_seed"] = seed_override
    if root_override is not None:
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
        output = raw.setdefault("output", {})
        if isinstance(output, dict):
            output["root_dir"] = root_override
    return validate_config(raw)


def _cmd_run(args) -> int:
    from .runner import run_experiment

    config = _load_config(args.config_file, args.seed, args.output)
    summary = run_experiment(config)
    print(f"runs executed: {summary.runs}")
    print(f"optima hit: {summary.optima_hit}")
    print(f"output: {summary.output_dir}")
    return EXIT_OK


def _cmd_validate(args) -> int:
    config = _load_config(args.config_file, args.seed, args.output)
    print(
        f"config OK: suite {config.suite.name} "
        f"({config.suite.size} instances x {config.repetitions} repetitions), "
        f"algorithm {config.algorithm_name}, budget {config.budget}"
    )
    return EXIT_OK


def _cmd_inspect(args) -> int:
    path = Path(args.data_dir)
    if not path.exists():
        raise FileNotFoundError(args.data_dir)
    data = read_data_dir(path)
    for stanza in data.stanzas:
        bests = [run.reported_best for run in stanza.runs]
        best = max(bests) if stanza.maximization else min(bests)
        print(
            f"f{stanza.problem_id} {stanza.function_name} DIM {stanza.dimension}: "
            f"{len(stanza.runs)} runs, best {format_number(best)}"
        )
    return EXIT_OK


def _cmd_list(args) -> int:
    for domain, label in ((Domain.BOOLEAN, "boolean"), (Domain.CONTINUOUS, "continuous")):
        print(f"{label} problems:")
        for entry in registered_entries(domain):
            print(f"  {entry.problem_id:>3}  {entry.name}")
    print("suites:")
    for name in NAMED_SUITES:
        print(f"  {name}")
    print("algorithms:")
    for name in sorted(ALGORITHMS):
        print(f"  {name}")
    return EXIT_OK


def _cmd_serve(args) -> int:
    from .serve import serve_loop

    serve_loop(sys.stdin, sys.stdout)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"heurobench: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.command is None:
        print("heurobench: a subcommand is required (run, validate, inspect, list, serve)",
              file=sys.stderr)
        return EXIT_USAGE
    handler = {
        "run": _cmd_run,
        "validate": _cmd_validate,
        "inspect": _cmd_inspect,
        "list": _cmd_list,
        "serve": _cmd_serve,
    }[args.command]
    try:
        return handler(args)
    except FileNotFoundError as exc:
        name = getattr(exc, "filename", None) or exc.args[0]
        print(f"heurobench: file not found: {name}", file=sys.stderr)
        return EXIT_NO_FILE
    except ConfigError as exc:
        print(f"heurobench: invalid config: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    except DataFormatError as exc:
        print(f"heurobench: malformed data: {exc}", file=sys.stderr)
        return EXIT_BAD_DATA


if __name__ == "__main__":
    sys.exit(main())
