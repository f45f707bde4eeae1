"""
Configuration management for greenkernel.

Only ambient settings (log level, output directory, worker threads) come from
the environment. Numerical defaults are identical in every profile so that
results depend on nothing but the inputs and the seed.
"""

import logging
import os
import sys

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


class BaseConfig:
    """Base configuration class with common settings."""

    # Output
    OUTPUT_DIR = os.getenv('GREENKERNEL_OUTPUT_DIR', 'results')

    # Thread pool for walk blocks; never changes results
    WOS_WORKERS = int(os.getenv('GREENKERNEL_WORKERS', '1'))

    # Fundamental solutions
    MFS_CHARGES = 64
    MFS_COLLOCATION_FACTOR = 4
    MFS_HOLE_SHRINK = 0.6
    MFS_OUTER_DILATE = 1.6
    MFS_SV_CUTOFF = 1e-12
    MFS_MAX_RESIDUAL = 1e-4

    # Walk on spheres
    WOS_WALKS = 100_000
    WOS_EPS_FACTOR = 1e-4
    WOS_MAX_STEPS = 1_000_000
    WOS_SEED = 0

    # Convergence grids
    GRID_RESOLUTION = 1e-2
    POLE_EXCISION = 1e-3
    BOUNDARY_OFFSETS = (1e-2, 1e-3)

    # Logging
    LOG_LEVEL = os.getenv('GREENKERNEL_LOG_LEVEL', 'INFO')
    LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'

    @classmethod
    def validate_config(cls):
        """Validate the numeric defaults and the log level."""
        numeric = [
            'MFS_CHARGES', 'MFS_COLLOCATION_FACTOR', 'MFS_SV_CUTOFF',
            'MFS_MAX_RESIDUAL', 'WOS_WALKS', 'WOS_EPS_FACTOR', 'WOS_MAX_STEPS',
            'GRID_RESOLUTION', 'POLE_EXCISION', 'WOS_WORKERS',
        ]
        invalid = [name for name in numeric if not getattr(cls, name) > 0]
        if not 0 < cls.MFS_HOLE_SHRINK < 1:
            invalid.append('MFS_HOLE_SHRINK')
        if not cls.MFS_OUTER_DILATE > 1:
            invalid.append('MFS_OUTER_DILATE')
        if invalid:
            raise ValueError(f"Invalid configuration values: {', '.join(invalid)}")

        if not isinstance(logging.getLevelName(str(cls.LOG_LEVEL).upper()), int):
            raise ValueError(f"Unknown log level: {cls.LOG_LEVEL}")

    @classmethod
    def init_logging(cls, stream=None):
        """Attach a stream handler to the package logger."""
        cls.validate_config()

        level = logging.getLevelName(str(cls.LOG_LEVEL).upper())
        logger = logging.getLogger('greenkernel')
        for handler in list(logger.handlers):
            if isinstance(handler, logging.StreamHandler) and not isinstance(handler, logging.NullHandler):
                logger.removeHandler(handler)

        handler = logging.StreamHandler(stream or sys.stderr)
        handler.setLevel(level)
        handler.setFormatter(logging.Formatter(cls.LOG_FORMAT))
        logger.addHandler(handler)
        logger.setLevel(level)
        return logger


class DevelopmentConfig(BaseConfig):
    """Development configuration."""

    LOG_LEVEL = os.getenv('GREENKERNEL_LOG_LEVEL', 'DEBUG')


class TestingConfig(BaseConfig):
    """Testing configuration."""

    LOG_LEVEL = 'WARNING'
    OUTPUT_DIR = os.getenv('GREENKERNEL_OUTPUT_DIR', 'test-results')


class ProductionConfig(BaseConfig):
    """Production configuration."""

    LOG_LEVEL = os.getenv('GREENKERNEL_LOG_LEVEL', 'WARNING')


# Configuration mapping
config_map = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'production': ProductionConfig,
    'default': ProductionConfig
}


def get_config(config_name=None):
    """
    Get configuration class based on environment.

    Args:
        config_name: Configuration name or None to auto-detect

    Returns:
        Configuration class
    """
    if config_name is None:
        config_name = os.getenv('GREENKERNEL_ENV', 'default')

    return config_map.get(config_name, config_map['default'])
