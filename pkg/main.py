import sys
import argparse
from typing import List, Optional

from sldcorr import __version__
from sldcorr.commands import (approx, bahadur, compare,
                              exact, laplace_demo, mc,
                              ncgf, rate)
from sldcorr.core import logging_config


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sld-correl",
        description="Sharp large-deviation approximations for empirical correlation coefficients."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    approx.command(subparsers)
    compare.command(subparsers)
    rate.command(subparsers)
    bahadur.command(subparsers)
    mc.command(subparsers)
    exact.command(subparsers)
    laplace_demo.command(subparsers)
    ncgf.command(subparsers)

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    logging_config.setup_logging()
    args = build_parser().parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(run())
