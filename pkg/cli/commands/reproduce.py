"""
``reproduce``: run a named reproduction; the exit code is its acceptance.
"""

from cli.decorators import command_handler
from cli.utils import EXIT_OK, EXIT_REJECTED, success_response
from greenkernel.config import BaseConfig
from greenkernel.reproductions import NAMES, ReproductionSpec, run_reproduction


def register(subparsers, parents):
    parser = subparsers.add_parser('reproduce', parents=parents, help='run a named reproduction')
    parser.add_argument('name', choices=NAMES, help='reproduction name')
    parser.add_argument('--n', type=int, nargs='+', default=None, help='sequence indices')
    parser.add_argument('--out', default=BaseConfig.OUTPUT_DIR, help='output directory')
    parser.set_defaults(handler=run)
    return parser


@command_handler
def run(args):
    spec = ReproductionSpec(
        name=args.name,
        n_values=tuple(args.n) if args.n else None,
        seed=args.seed,
        walks=args.walks,
        eps_shell=args.eps_shell,
        charges=args.charges,
        method=args.method,
        output=args.out,
        workers=args.workers,
    )
    outcome = run_reproduction(spec)
    data = {
        'accepted': outcome.accepted,
        'checks': outcome.summary['checks'],
        'output': args.out,
    }
    verdict = 'accepted' if outcome.accepted else 'rejected'
    return success_response(data, f"{spec.name}: {verdict}"), EXIT_OK if outcome.accepted else EXIT_REJECTED
