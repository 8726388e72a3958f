#!/usr/bin/env python

"""Shared fixtures for the schottkit test suites."""

import numpy as np
import pytest

from schottkit.algebra.linalg import Matrix


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def jblock():
    """The 2x2 unipotent Jordan block [[1, 1], [0, 1]]."""
    return Matrix.from_rows([[1, 1], [0, 1]])


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: rank 4-5 adjoint suites (deselect with -m 'not slow')")
