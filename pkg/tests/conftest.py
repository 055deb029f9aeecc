"""Global test configuration and fixtures for the latred test suite.

This module provides common fixtures and configuration that can be shared
across all test modules.
"""

import logging
from collections.abc import Iterator

import numpy as np
import pytest

from tests.helpers import random_basis

TEST_SEED = 20240917


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator, fresh for every test."""
    return np.random.default_rng(TEST_SEED)


@pytest.fixture
def basis_4(rng: np.random.Generator) -> np.ndarray:
    """One random 4 x 4 complex normal basis."""
    return random_basis(rng, 4)


@pytest.fixture(autouse=True)
def reset_root_logger() -> Iterator[None]:
    """Undo handler changes made by setup_logging."""
    root = logging.getLogger()
    handlers = list(root.handlers)
    level = root.level
    yield
    for handler in root.handlers:
        if handler not in handlers:
            handler.close()
    root.handlers[:] = handlers
    root.setLevel(level)
