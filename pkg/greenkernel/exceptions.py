"""
Exception hierarchy for greenkernel.
"""


class GreenKernelError(Exception):
    """Base class for every error raised by the library."""


class DomainError(GreenKernelError, ValueError):
    """A domain description violates one of its invariants."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class SchemaError(DomainError):
    """A JSON document does not match the domain schema."""

    def __init__(self, message, field=None):
        if field is not None and field not in message:
            message = f"{message} (field: {field})"
        super().__init__(message, field)


class PoleError(GreenKernelError, ValueError):
    """Evaluation requested at the pole itself."""


class PreconditionError(GreenKernelError, ValueError):
    """Inputs outside the domain of an operation."""


class IllConditionedGeometryError(GreenKernelError):
    """The fundamental-solutions fit did not reach the required boundary residual."""

    def __init__(self, residual, limit):
        self.residual = residual
        self.limit = limit
        self.advice = "use method 'wos' for this geometry"
        super().__init__(
            f"boundary residual {residual:.3e} exceeds {limit:.1e}; {self.advice}"
        )


class MethodNotAvailableError(GreenKernelError):
    """A forced evaluation method cannot handle the domain class."""

    def __init__(self, method, domain_type, feasible):
        self.method = method
        self.domain_type = domain_type
        self.feasible = list(feasible)
        super().__init__(
            f"method '{method}' is not available for {domain_type}; "
            f"feasible methods: {', '.join(self.feasible)}"
        )


class NotSimplyConnectedError(GreenKernelError, ValueError):
    """A simply connected domain was required."""


class InfeasibleSearchError(GreenKernelError):
    """A parameter search could not meet its acceptance threshold."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
