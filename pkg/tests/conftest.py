"""
Shared fixtures: seeded randomness, an isolated data directory, and
random digraph factories.
"""

import logging
import random

import numpy as np
import pytest

from slupecki.digraph import new_digraph


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=0, help="seed for randomized property tests")


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed):
    return random.Random(seed)


@pytest.fixture
def np_rng(seed):
    return np.random.default_rng(seed)


@pytest.fixture(autouse=True)
def slupecki_home(tmp_path, monkeypatch):
    """Keep config and logs out of the real home directory"""
    home = tmp_path / "slupecki-home"
    monkeypatch.setenv("SLUPECKI_HOME", str(home))
    monkeypatch.delenv("SLUPECKI_THREADS", raising=False)
    yield home
    logger = logging.getLogger("slupecki")
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()


@pytest.fixture
def random_digraph(rng):
    def make(n, p=0.4):
        arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
        return new_digraph(n, arcs)
    return make
