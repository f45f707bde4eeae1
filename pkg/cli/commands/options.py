"""
Flags and parameter objects shared by the commands.
"""

import argparse

from greenkernel.config import BaseConfig
from greenkernel.evaluators import METHODS
from greenkernel.mfs_solver import MfsParams
from greenkernel.wos_oracle import WosParams


def common_parser():
    """Flags shared by every command."""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('--walks', type=int, default=None, help='walks per WoS evaluation')
    parser.add_argument('--eps-shell', type=float, default=None, help='WoS absorption shell width')
    parser.add_argument('--charges', type=int, default=None, help='MFS charges per boundary component')
    parser.add_argument('--method', choices=METHODS, default=None, help='force an evaluation method')
    parser.add_argument('--seed', type=int, default=BaseConfig.WOS_SEED, help='random stream seed')
    parser.add_argument('--workers', type=int, default=BaseConfig.WOS_WORKERS, help='threads for walk blocks')
    parser.add_argument('--json', action='store_true', help='machine-readable output')
    return parser


def wos_params(args) -> WosParams:
    kwargs = {'seed': args.seed, 'eps_shell': args.eps_shell, 'workers': args.workers}
    if args.walks is not None:
        kwargs['walks'] = args.walks
    return WosParams(**kwargs)


def mfs_params(args):
    return MfsParams(charges_per_component=args.charges) if args.charges else None
