"""Pytest configuration and fixtures for all tests."""

import tempfile
from pathlib import Path

import numpy as np
import pytest

from code_factory import build_bch, build_punctured_rm, build_stacked, extend
from tanner import build_graph

# ==================== Code Fixtures ====================


@pytest.fixture(scope="session")
def code_74():
    """The cyclic (7,4) Hamming code, BCH with m=3, delta=1."""
    return build_bch(3, 1)


@pytest.fixture(scope="session")
def ext_84(code_74):
    """Extended (8,4) Hamming code."""
    return extend(code_74)


@pytest.fixture(scope="session")
def bch_15_7():
    """BCH(15,7), m=4, delta=2."""
    return build_bch(4, 2)


@pytest.fixture(scope="session")
def ext_16_7(bch_15_7):
    return extend(bch_15_7)


@pytest.fixture(scope="session")
def prm_15_11():
    """Punctured RM of order 2 and length 15."""
    return build_punctured_rm(4, 2)


@pytest.fixture(scope="session")
def ext_16_5():
    """Extended RM(16,5), built from the first-order punctured RM code of length 15."""
    return extend(build_punctured_rm(4, 1))


# ==================== Graph Fixtures ====================


@pytest.fixture(scope="session")
def graph_factory():
    """Build (and cache) the structured Tanner graph of an extended code for a given P."""
    cache = {}

    def _graph(spec, P):
        key = (spec.code_hash(), P)
        if key not in cache:
            cache[key] = build_graph(build_stacked(extend(spec), P))
        return cache[key]

    return _graph


# ==================== Randomness Fixtures ====================


@pytest.fixture
def rng():
    """A fresh generator with a fixed seed for every test."""
    from channel_sim import make_rng

    return make_rng(1234)


@pytest.fixture
def random_bank():
    """Weight bank of the given shape, entries drawn around 1."""
    from decoder import WeightBank

    def _bank(u, t, seed=7, spread=0.3):
        gen = np.random.default_rng(seed)
        return WeightBank(
            self_weights=1.0 + spread * gen.standard_normal((t, u)),
            cross_weights=1.0 + spread * gen.standard_normal((t, u, u)),
            output_weights=1.0 + spread * gen.standard_normal(u),
        )

    return _bank


# ==================== File System Fixtures ====================


@pytest.fixture
def temp_dir():
    """Provide a temporary directory for test files."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture(autouse=True)
def isolated_env(monkeypatch):
    """Keep a developer's NBP_* settings out of the tests."""
    for name in ("NBP_WORKERS", "NBP_SEED", "NBP_CHUNK_FRAMES", "NBP_OUTPUT_DIR"):
        monkeypatch.delenv(name, raising=False)


# ==================== Pytest Configuration ====================


def pytest_configure(config):
    """Configure pytest with custom markers."""
    config.addinivalue_line("markers", "unit: Unit tests (fast, no external dependencies)")
    config.addinivalue_line("markers", "integration: Integration tests (several modules end to end)")
    config.addinivalue_line("markers", "slow: Tests that take >1s to run")
