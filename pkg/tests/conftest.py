"""
Test configuration and shared fixtures for Stabilis tests.

This file contains:
- Centralized test configuration
- Shared networks (P2, P3, triangle, the eight-node d-step scenario)
- make_config helper for building configurations from d vectors
"""

import pytest

from app import create_app
from app.models import Configuration
from app.utils.topology import from_edges


# Centralized test configuration
TEST_CONFIG = {
    'TESTING': True,
    'LOG_LEVEL': 'WARNING',
    'JOBS': 1,
    'MAX_STEPS': 10000,
    'MAX_STATES': 10 ** 6,
    'DEFAULT_D_MAX': 2,
    'GREEDY_SAMPLE_LIMIT': 64,
    'API_MAX_NODES': 4,
    'API_MAX_D_MAX': 3,
    'API_MAX_NETWORK_NODES': 16
}

# r=0, p1..p7 = 1..7
FIG1_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (3, 7), (4, 5), (5, 6), (6, 7)]
FIG1_GAMMA1_D = (10, 9, 9, 8, 10, 10, 9, 10)


@pytest.fixture
def app():
    """Create and configure a new app instance for each test."""
    app = create_app(TEST_CONFIG)
    return app


@pytest.fixture
def client(app):
    """Create a test client for the app."""
    return app.test_client()


@pytest.fixture
def p2():
    """Path r - a."""
    return from_edges(2, [(0, 1)])


@pytest.fixture
def p3():
    """Path r - a - b; a's neighbor order is [r, b]."""
    return from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def triangle():
    return from_edges(3, [(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def fig1():
    """Eight-node network carrying the smooth and non-smooth d-step scenario."""
    return from_edges(8, FIG1_EDGES)


@pytest.fixture
def make_config():
    """make_config(net, d, par=None): par defaults to each node's first neighbor."""
    def build(net, d, par=None):
        if par is None:
            par = [None if p == net.root else net.adjacency[p][0] for p in net.nodes]
        return Configuration(d=tuple(d), par=tuple(par))
    return build
