"""
``eval``: one Green's function value with its method and error bound.
"""

from cli.commands.options import mfs_params, wos_params
from cli.decorators import command_handler
from cli.utils import EXIT_OK, load_domain_json, parse_point, success_response
from greenkernel.convergence.sequences import DomainSequence
from greenkernel.evaluators import select_evaluator
from greenkernel.exceptions import SchemaError
from greenkernel.geometry.domains import dimension


def register(subparsers, parents):
    parser = subparsers.add_parser('eval', parents=parents, help="evaluate g(z, w) on a domain")
    parser.add_argument('--domain', required=True, help='domain JSON file')
    parser.add_argument('--z', required=True, help='evaluation point, x,y or x,y,z')
    parser.add_argument('--w', default=None, help='pole, x,y or x,y,z (default: origin)')
    parser.set_defaults(handler=run)
    return parser


@command_handler
def run(args):
    domain = load_domain_json(args.domain)
    if isinstance(domain, DomainSequence):
        raise SchemaError("eval needs a single domain, not a sequence", field="type")
    origin = 0j if dimension(domain) == 2 else (0.0, 0.0, 0.0)
    z = parse_point(args.z)
    w = parse_point(args.w) if args.w is not None else origin

    g = select_evaluator(domain, w, args.method, mfs_params(args), wos_params(args))
    estimate = g.estimate(z)
    return success_response(estimate.as_dict(), f"g(z, w) = {estimate.value:.6f} [{estimate.method}]"), EXIT_OK
