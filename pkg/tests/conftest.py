import numpy as np
import pytest

from twistedrs.gf import FieldTower
from twistedrs.rng import StreamRNG


@pytest.fixture(scope="session")
def tower8():
    """GF(2^8) built over GF(2^4): the toy crypto tower."""
    return FieldTower(4, 1)


@pytest.fixture(scope="session")
def tower64():
    """GF(2^6) over GF(2^3): the (7, 3) exhaustive tower."""
    return FieldTower(3, 1)


@pytest.fixture(scope="session")
def tower16():
    """GF(2^16) over GF(2^8): the paper-scale tower."""
    return FieldTower(8, 1)


def rand_vec(tower, rng: StreamRNG, n: int, nonzero: bool = False) -> np.ndarray:
    if nonzero:
        return np.array(
            [rng.randbelow(tower.order - 1) + 1 for _ in range(n)], dtype=np.uint64
        )
    return np.array([rng.randbelow(tower.order) for _ in range(n)], dtype=np.uint64)


def weight(a: np.ndarray, b: np.ndarray) -> int:
    return int(np.count_nonzero(a != b))


def add_errors(rng: StreamRNG, word: np.ndarray, count: int, order: int) -> np.ndarray:
    out = word.copy()
    for pos in rng.sample_positions(len(word), count):
        out[pos] ^= np.uint64(rng.randbelow(order - 1) + 1)
    return out
