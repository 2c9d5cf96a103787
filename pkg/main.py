#!/usr/bin/env python3
"""
nondisturb CLI - batch analyses of sequential quantum measurements.

Reports are written to stdout (or --out) as deterministic JSON; logs go to stderr.
"""
import argparse
import sys
from typing import Any, Dict, List, Optional

from commands import COMMAND_SCHEMAS, EXIT_CODES, CommandExecutor
from persistence import SQLiteRunArchive
from sdpcore import SolverSettings
from utils.config import TOOL_NAME, TOOL_VERSION, RunConfig, SeesawConfig, Tolerances, thread_count
from utils.errors import ConfigError
from utils.log import configure_logging
from utils.serialization import dumps

_TYPES = {"integer": int, "number": float, "string": str}


def _common_options() -> argparse.ArgumentParser:
    """Options accepted by every subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-psd", type=float, default=None, help="PSD tolerance (scale-relative)")
    common.add_argument("--tol-nd", type=float, default=None, help="Nondisturbance decision threshold")
    common.add_argument("--seesaw-restarts", type=int, default=5, help="See-saw restarts (default: 5)")
    common.add_argument("--seesaw-iters", type=int, default=200, help="See-saw sweeps per restart (default: 200)")
    common.add_argument("--seed", type=int, default=0, help="Root seed (default: 0)")
    common.add_argument("--solver", choices=["CLARABEL", "SCS"], default="CLARABEL", help="Conic solver")
    common.add_argument("--out", type=str, default=None, help="Write the report to this file")
    common.add_argument("--format", choices=["json", "csv"], default="json",
                        help="Report format; csv exports the nsit probability table")
    common.add_argument("--archive", type=str, default=None, help="SQLite archive of finished runs")
    common.add_argument("--threads", type=int, default=None,
                        help="Worker threads (default: NONDISTURB_THREADS or min(4, cpus))")
    common.add_argument("-v", "--verbose", action="count", default=0, help="More logging (repeatable)")
    common.add_argument("--quiet", action="store_true", help="Only log errors")
    return common


def _add_parameter(parser: argparse.ArgumentParser, name: str, prop: Dict[str, Any], required: bool) -> None:
    kwargs: Dict[str, Any] = {"help": prop.get("description")}
    if "enum" in prop:
        kwargs["choices"] = prop["enum"]
    if prop["type"] in _TYPES:
        kwargs["type"] = _TYPES[prop["type"]]

    if required or prop.get("positional"):
        if prop["type"] == "array":
            kwargs["nargs"] = "+"
        elif not required:
            kwargs["nargs"] = "?"
            kwargs["default"] = prop.get("default")
        parser.add_argument(name, **kwargs)
        return

    flag = "--" + name.replace("_", "-")
    if prop["type"] == "boolean":
        parser.add_argument(flag, dest=name, action="store_true", help=kwargs["help"])
        return
    if prop["type"] == "array":
        kwargs["nargs"] = "+"
    kwargs["default"] = prop.get("default")
    parser.add_argument(flag, dest=name, **kwargs)


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per entry of ``COMMAND_SCHEMAS``."""
    parser = argparse.ArgumentParser(prog=TOOL_NAME, description="Nondisturbance and macrorealism analyses")
    parser.add_argument("--version", action="version", version=f"{TOOL_NAME} {TOOL_VERSION}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = _common_options()
    for schema in COMMAND_SCHEMAS:
        sub = subparsers.add_parser(schema["name"], help=schema["description"],
                                    description=schema["description"], parents=[common])
        params = schema["parameters"]
        for name, prop in params["properties"].items():
            _add_parameter(sub, name, prop, name in params["required"])
    return parser


def _arguments(args: argparse.Namespace) -> Dict[str, Any]:
    """Command keyword arguments; unset optional values fall back to the command defaults."""
    schema = next(s for s in COMMAND_SCHEMAS if s["name"] == args.command)
    out = {}
    for name in schema["parameters"]["properties"]:
        value = getattr(args, name, None)
        if value is not None:
            out[name] = value
    return out


def _inputs(arguments: Dict[str, Any]) -> List[str]:
    paths = []
    for key in ("input", "a", "b", "instrument", "scenario"):
        if key in arguments:
            paths.append(str(arguments[key]))
    paths.extend(arguments.get("povms", []))
    return paths


def build_config(args: argparse.Namespace, arguments: Dict[str, Any]) -> RunConfig:
    tolerances = Tolerances().with_overrides(psd=args.tol_psd, nondisturbance=args.tol_nd)
    seesaw = SeesawConfig(restarts=args.seesaw_restarts, max_iters=args.seesaw_iters, seed=args.seed)
    options = {k: v for k, v in arguments.items() if k not in ("input", "a", "b", "instrument", "povms")}
    return RunConfig(
        command=args.command,
        inputs=_inputs(arguments),
        tolerances=tolerances,
        seesaw=seesaw,
        output_path=args.out,
        output_format=args.format,
        archive_path=args.archive,
        threads=args.threads if args.threads is not None else thread_count(),
        options=options,
    )


def render(report: Dict[str, Any], output_format: str) -> str:
    """JSON report, or the probability table as CSV when requested and available."""
    result = report.get("result")
    table = result.get("table") if isinstance(result, dict) else None
    if output_format == "csv" and table is not None:
        return table.to_csv()
    return dumps(report) + "\n"


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose, args.quiet)

    arguments = _arguments(args)
    try:
        config = build_config(args, arguments)
    except ConfigError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_CODES["input_error"]

    archive = SQLiteRunArchive(config.archive_path) if config.archive_path else None
    settings = SolverSettings.from_tolerances(config.tolerances, solver=args.solver)
    executor = CommandExecutor(config, settings, archive)
    try:
        status, message, report = executor.execute(args.command, arguments)
    finally:
        if archive is not None:
            archive.close()

    text = render(report, config.output_format)
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    if status != "success":
        print(message, file=sys.stderr)
    return EXIT_CODES[status]


if __name__ == "__main__":
    sys.exit(main())
