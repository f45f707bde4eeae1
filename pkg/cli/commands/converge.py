"""
``converge``: kernel check and discrepancy report for a domain sequence.
"""

from pathlib import Path

from cli.commands.options import mfs_params, wos_params
from cli.decorators import command_handler
from cli.utils import EXIT_OK, EXIT_REJECTED, load_domain_json, parse_point, success_response
from greenkernel.config import BaseConfig
from greenkernel.convergence import build_report, kernel_check
from greenkernel.convergence.sequences import DomainSequence
from greenkernel.exceptions import SchemaError


def register(subparsers, parents):
    parser = subparsers.add_parser('converge', parents=parents, help='check a domain sequence')
    parser.add_argument('--sequence', required=True, help='sequence JSON file (explicit or family form)')
    parser.add_argument('--grid', type=float, default=BaseConfig.GRID_RESOLUTION, help='grid resolution')
    parser.add_argument('--probe', action='append', default=None,
                        help='probe point for stochastic evaluators (repeatable)')
    parser.add_argument('--out', default=None, help='directory for <name>.csv and <name>.json')
    parser.set_defaults(handler=run)
    return parser


@command_handler
def run(args):
    seq = load_domain_json(args.sequence)
    if not isinstance(seq, DomainSequence):
        raise SchemaError("converge needs a document of type 'sequence'", field="type")
    probes = [parse_point(p) for p in args.probe] if args.probe else None

    check = kernel_check(seq, args.grid)
    report = build_report(
        seq,
        pitch=args.grid,
        probes=probes,
        method=args.method,
        mfs_params=mfs_params(args),
        wos_params=wos_params(args),
    )
    files = []
    if args.out:
        out = Path(args.out)
        files = [str(report.to_csv(out / f"{seq.name}.csv")), str(report.to_json(out / f"{seq.name}.json"))]

    data = {'kernel_check': check.as_dict(), 'report': report.as_dict(), 'files': files}
    exit_code = EXIT_OK if check.passed else EXIT_REJECTED
    return success_response(data, f"sequence {seq.name}: {len(report.rows)} rows"), exit_code
