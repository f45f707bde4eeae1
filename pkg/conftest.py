"""
Shared fixtures. Acceptance-scale runs are marked ``slow`` and only run
with GREENKERNEL_SLOW=1.
"""

import os
from pathlib import Path

import pytest

from greenkernel.wos_oracle import WosParams

FIXTURES = Path(__file__).parent / "fixtures"


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: acceptance-scale run, enabled with GREENKERNEL_SLOW=1")


def pytest_collection_modifyitems(config, items):
    if os.getenv("GREENKERNEL_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="set GREENKERNEL_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def fast_wos():
    """Small walk count for statistical tests with a 4-SE tolerance."""
    return WosParams(walks=4096, seed=7)
