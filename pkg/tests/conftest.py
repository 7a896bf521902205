import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ("QMUT_SEED", "QMUT_LOG_LEVEL", "QMUT_MAX_STEPS"):
        monkeypatch.delenv(name, raising=False)
