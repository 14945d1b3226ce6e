"""Shared fixtures: session-scoped caches for deterministic objects."""

import numpy as np
import pytest

import betafreeze as bf


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance: end-to-end acceptance criteria"
    )


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    from _acceptance_log import RESULTS

    if RESULTS:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def zeros_cache():
    """Memoized compute_zeros; zeros are deterministic so sharing is safe."""
    cache: dict[int, bf.HermiteZeros] = {}

    def get(n: int) -> bf.HermiteZeros:
        if n not in cache:
            cache[n] = bf.compute_zeros(n)
        return cache[n]

    return get


@pytest.fixture(scope="session")
def precision_cache(zeros_cache):
    """Memoized build_precision keyed on n."""
    cache: dict[int, bf.PrecisionSpectralPair] = {}

    def get(n: int) -> bf.PrecisionSpectralPair:
        if n not in cache:
            cache[n] = bf.build_precision(zeros_cache(n).zeros)
        return cache[n]

    return get


@pytest.fixture()
def rng():
    """Fresh deterministic generator per test."""
    return np.random.default_rng(20260817)
