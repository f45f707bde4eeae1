"""
Command front end: ``eval``, ``converge`` and ``reproduce``.
"""

import argparse
import sys

from cli.commands import COMMANDS, common_parser
from cli.console import print_banner
from cli.utils import EXIT_USAGE
from greenkernel.config import get_config


def create_parser():
    """Parser factory with one sub-command per command module."""
    parser = argparse.ArgumentParser(
        prog='green',
        description="Green's functions of planar and spatial domains and kernel convergence checks",
    )
    subparsers = parser.add_subparsers(dest='command')
    parents = [common_parser()]
    for module in COMMANDS.values():
        module.register(subparsers, parents)
    return parser


def main(argv=None, config_name=None):
    """Parse, run and return the exit code."""
    config = get_config(config_name)
    config.init_logging()

    parser = create_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        print_banner()
        parser.print_help(sys.stdout)
        return EXIT_USAGE
    return args.handler(args)
