"""
Response helpers and input parsing for the command front end.
"""

import json
import logging
import traceback
from pathlib import Path

from greenkernel.convergence.sequences import sequence_from_dict
from greenkernel.exceptions import (
    DomainError,
    GreenKernelError,
    IllConditionedGeometryError,
    InfeasibleSearchError,
    MethodNotAvailableError,
    SchemaError,
)
from greenkernel.geometry.encoding import decode_domain

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_USAGE = 2
EXIT_UNEXPECTED = 3


def success_response(data=None, message="Success"):
    """
    Create a standardized success response.

    Args:
        data: Response data
        message: Success message

    Returns:
        dict: response without timestamps, so reruns compare equal
    """
    response = {
        'success': True,
        'message': message,
    }

    if data is not None:
        response['data'] = data

    return response


def error_response(error, message="An error occurred", details=None):
    """
    Create a standardized error response.

    Args:
        error: Error type or name
        message: Error message
        details: Additional error details

    Returns:
        dict: response
    """
    response = {
        'success': False,
        'error': error,
        'message': message,
    }

    if details:
        response['details'] = details

    return response


def handle_error(error_type, message, exit_code=EXIT_USAGE, details=None):
    """Log an error and pair its response with an exit code."""
    logger.error(f"{error_type}: {message}")
    return error_response(error_type, message, details), exit_code


def handle_exception(e):
    """
    Map an exception to (response, exit code).

    Domain, schema, pole, precondition and method errors are usage errors (2);
    an infeasible search is a failed reproduction (1); anything else is
    unexpected (3).
    """
    if isinstance(e, MethodNotAvailableError):
        return handle_error(type(e).__name__, str(e), EXIT_USAGE, {'feasible': e.feasible})
    if isinstance(e, IllConditionedGeometryError):
        return handle_error(type(e).__name__, str(e), EXIT_USAGE, {'residual': e.residual, 'advice': e.advice})
    if isinstance(e, SchemaError):
        return handle_error(type(e).__name__, str(e), EXIT_USAGE, {'field': e.field} if e.field else None)
    if isinstance(e, InfeasibleSearchError):
        return handle_error(type(e).__name__, str(e), EXIT_REJECTED, e.diagnostics)
    if isinstance(e, (GreenKernelError, ValueError, OSError)):
        return handle_error(type(e).__name__, str(e), EXIT_USAGE)

    logger.error(f"Exception: {str(e)}")
    logger.error(traceback.format_exc())
    return error_response("UnexpectedError", str(e)), EXIT_UNEXPECTED


def load_domain_json(path):
    """
    Read a domain or a domain sequence from a JSON file.

    Raises:
        SchemaError: invalid JSON or schema violation (names the field)
    """
    text = Path(path).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path} is not valid JSON: {e.msg} at line {e.lineno}") from e

    if isinstance(obj, dict) and obj.get('type') == 'sequence':
        return sequence_from_dict(obj)
    return decode_domain(obj)


def parse_point(text):
    """'x,y' -> complex, 'x,y,z' -> (x, y, z)."""
    try:
        values = [float(part) for part in str(text).split(',')]
    except ValueError as e:
        raise DomainError(f"cannot parse point {text!r}; use x,y or x,y,z", field="point") from e
    if len(values) == 2:
        return complex(values[0], values[1])
    if len(values) == 3:
        return tuple(values)
    raise DomainError(f"a point has 2 or 3 coordinates, got {text!r}", field="point")
