"""
Common decorators for the command handlers.
"""

import json
from functools import wraps

from cli.console import render
from cli.utils import handle_exception
from greenkernel.convergence.report import json_safe


def command_handler(f):
    """
    Run a command returning (response, exit code), turn exceptions into error
    responses and print the result as JSON or colored text.
    """
    @wraps(f)
    def decorated_function(args, *a, **kwargs):
        try:
            response, exit_code = f(args, *a, **kwargs)
        except Exception as e:
            response, exit_code = handle_exception(e)

        if getattr(args, 'json', False):
            print(json.dumps(json_safe(response), sort_keys=True, default=str))
        else:
            render(response, exit_code)
        return exit_code
    return decorated_function
