"""
Command modules. Each module exposes ``register(subparsers, parents)``.
"""

from cli.commands import converge, evaluate, reproduce
from cli.commands.options import common_parser

COMMANDS = {
    'eval': evaluate,
    'converge': converge,
    'reproduce': reproduce,
}

__all__ = ['COMMANDS', 'common_parser']
