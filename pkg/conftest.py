import os
import sys

import numpy as np
import pytest

# lets the tests import the `src` package without installing it
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def clean_env(monkeypatch):
    for key in list(os.environ):
        if key.startswith("LS_"):
            monkeypatch.delenv(key, raising=False)
    return monkeypatch
