import numpy as np
import pytest

from src.codes.seeds import load_seed
from src.surgery.connection import ConnectionCode
from src.utils.config import settings


@pytest.fixture(autouse=True)
def quiet_progress(monkeypatch):
    monkeypatch.setattr(settings, "show_progress", False)


@pytest.fixture(scope="session")
def code_12():
    return load_seed("cc_12_4_3").build()


@pytest.fixture(scope="session")
def code_24():
    return load_seed("cc_24_8_3").build()


@pytest.fixture(scope="session")
def code_136():
    return load_seed("cc_136_8_14").build()


@pytest.fixture(scope="session")
def identity_connection(code_24):
    """H_a' = H_b' = I_2: every cluster merged with its partner in the other sector"""
    eye = np.eye(2, dtype=np.uint8)
    return ConnectionCode.from_bits(eye, eye, code_24.l)


@pytest.fixture(scope="session")
def column_connection(code_24):
    """H_a' = [[1,0],[1,0]], H_b' = 0: two merges inside the right sector"""
    return ConnectionCode.from_bits([[1, 0], [1, 0]], np.zeros((2, 2), dtype=np.uint8), code_24.l)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)
