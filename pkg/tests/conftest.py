"""
Shared fixtures and brute-force oracles
"""

import logging

import numpy as np
import pytest

from app.models.channel import AenProfile, Seed
from app.models.fading import FadingProfile


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: Monte-Carlo runs taking more than a few seconds")


# ============================================================================
# ORACLES
# ============================================================================

def kron_generator(n: int) -> np.ndarray:
    """G_N built from explicit Kronecker powers and a separately computed bit reversal"""
    f = np.array([[1, 0], [1, 1]], dtype=np.int64)
    g = np.ones((1, 1), dtype=np.int64)
    for _ in range(n):
        g = np.kron(g, f)
    rev = [int(format(i, f"0{n}b")[::-1], 2) if n else 0 for i in range(1 << n)]
    return g[:, rev]


def gf2_encode(u, g: np.ndarray) -> np.ndarray:
    return (np.asarray(u, dtype=np.int64) @ g) % 2


def _reduce(vector: int, basis: dict) -> int:
    while vector:
        top = vector.bit_length() - 1
        if top not in basis:
            return vector
        vector ^= basis[top]
    return 0


def bec_bit_channel_erasures(n: int, erasure: float) -> np.ndarray:
    """
    Exact erasure probability of every synthesized channel of BEC(e) by enumeration.

    With u_0..u_{i-1} known, u_i is lost iff row i of G restricted to the
    unerased columns lies in the span of rows i+1..N-1 restricted to them.
    """
    length = 1 << n
    g = kron_generator(n)
    counts = np.zeros((length, length + 1), dtype=np.int64)
    for known in range(1 << length):
        columns = [j for j in range(length) if known >> j & 1]
        rows = [sum(int(g[i, j]) << k for k, j in enumerate(columns)) for i in range(length)]
        erased = length - len(columns)
        basis = {}
        for i in range(length - 1, -1, -1):
            residue = _reduce(rows[i], basis)
            if residue == 0:
                counts[i, erased] += 1
            else:
                basis[residue.bit_length() - 1] = residue
    m = np.arange(length + 1)
    weights = erasure ** m * (1.0 - erasure) ** (length - m)
    return counts @ weights


# ============================================================================
# FIXTURES
# ============================================================================

@pytest.fixture
def seed():
    return Seed(20240611)


@pytest.fixture
def two_state_bsc():
    return FadingProfile(crossovers=(0.11, 0.03), probabilities=(0.5, 0.5))


@pytest.fixture
def two_state_aen():
    """Two fading states: strong noise rarely, weak noise mostly"""
    return AenProfile(noise_means=(0.5, 3.0), probabilities=(0.8, 0.2), input_mean=1000.0)


@pytest.fixture
def clean_logging():
    root = logging.getLogger()
    before = list(root.handlers)
    level = root.level
    yield root
    for handler in list(root.handlers):
        if handler not in before:
            root.removeHandler(handler)
    root.setLevel(level)
