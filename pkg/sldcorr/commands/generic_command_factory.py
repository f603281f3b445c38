import sys
import logging
import argparse
from pathlib import Path
from typing import Any, Callable, Dict

from pydantic import ValidationError

from sldcorr.commands.command_config import CommandConfig
from sldcorr.commands.output import write_rows
from sldcorr.core.config import settings
from sldcorr.core.exceptions import DomainError, NumericalError
from sldcorr.core.logging_config import command_logging
from sldcorr.schemas.common import ScenarioKind
from sldcorr.schemas.run_schema import OutputFormat, RunConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_NUMERICAL = 3

# argparse definition of every flag a command may accept
FLAGS: Dict[str, Dict[str, Any]] = {
    "scenario": dict(flags=("--scenario",), choices=[k.value for k in ScenarioKind],
                     help="coefficient and sampling model"),
    "n": dict(flags=("--n",), type=int, help="sample size"),
    "n_list": dict(flags=("--n-list",), type=int, nargs="+", help="several sample sizes"),
    "c": dict(flags=("--c",), type=float, help="threshold c"),
    "rho": dict(flags=("--rho",), type=float, help="correlation of the Gaussian model"),
    "lam": dict(flags=("--lam",), type=float, help="tilt lambda of the cumulant generating function"),
    "order": dict(flags=("--order",), type=int, help="Laplace expansion order (default 1)"),
    "samples": dict(flags=("--samples",), type=int, help="Monte Carlo draws (0 disables the MC oracle)"),
    "seed": dict(flags=("--seed",), type=int, help=f"master seed (default {settings.MC_SEED})"),
    "threads": dict(flags=("--threads",), type=int,
                    help=f"Monte Carlo partitions run in parallel (default {settings.MC_PARTITIONS})"),
}


def _error(message: str, code: int) -> int:
    logger.error(message)
    print(f"error: {message}", file=sys.stderr)
    return code


def create_command(config: CommandConfig) -> Callable[[argparse._SubParsersAction], None]:
    """
    A factory function that turns a CommandConfig into a sub-command.
    It returns the function registering the sub-command on the main parser; the
    registered handler validates the flags, runs the service and writes the rows.
    """
    def handle(args: argparse.Namespace) -> int:
        with command_logging(command=config.name):
            # 1. Validation
            values = {name: getattr(args, name) for name in config.arguments if getattr(args, name, None) is not None}
            try:
                cfg = RunConfig(command=config.name, format=args.format, out=args.out, **values)
            except ValidationError as e:
                details = "; ".join(f"{'.'.join(map(str, err['loc'])) or 'input'}: {err['msg']}" for err in e.errors())
                return _error(f"invalid arguments: {details}", EXIT_PRECONDITION)

            # 2. Processing
            try:
                rows = config.service.execute(cfg)
            except ValidationError as e:
                return _error(f"invalid arguments: {'; '.join(err['msg'] for err in e.errors())}", EXIT_PRECONDITION)
            except DomainError as e:
                return _error(str(e), EXIT_PRECONDITION)
            except NumericalError as e:
                return _error(f"numerical failure: {e}", EXIT_NUMERICAL)

            # 3. Output
            write_rows(rows, cfg.format, cfg.out, sys.stdout)
            return EXIT_OK

    def register(subparsers: argparse._SubParsersAction) -> None:
        parser = subparsers.add_parser(config.name, help=config.help, description=config.description)
        for name in config.arguments:
            options = dict(FLAGS[name])
            flags = options.pop("flags")
            parser.add_argument(*flags, dest=name, default=None, **options)
        parser.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.CSV.value)
        parser.add_argument("--out", type=Path, default=None, help="write to PATH instead of stdout")
        parser.set_defaults(handler=handle)

    return register
