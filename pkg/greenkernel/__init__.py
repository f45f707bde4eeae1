"""Green's functions of planar and spatial domains, and kernel convergence checks."""
import logging

__version__ = "1.0.0"


def _prepare_logging():
    """Prepare logger for module greenkernel."""
    logger = logging.getLogger(__name__)
    # logger.setLevel(logging.DEBUG)
    logger.addHandler(logging.NullHandler())


_prepare_logging()
