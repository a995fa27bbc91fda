import json
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "iet-lab" / "scripts"))

from catalog import load_catalog  # noqa: E402

CONSTANTS_FILE = Path(__file__).parent / "data" / "regression_constants.json"


@pytest.fixture(autouse=True)
def _isolated_env(monkeypatch):
    for key in ("IETLAB_CATALOG", "IETLAB_MAX_WORKERS", "IETLAB_DIGITS",
                "IETLAB_CHUNK_SIZE", "IETLAB_LOG_LEVEL"):
        monkeypatch.delenv(key, raising=False)


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def third(catalog):
    return catalog["third"].iet()


@pytest.fixture(scope="session")
def golden(catalog):
    return catalog["golden"].iet()


@pytest.fixture(scope="session")
def fhz(catalog):
    return catalog["fhz"].iet()


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture(scope="session")
def regression_constants():
    if not CONSTANTS_FILE.exists():
        return {}
    return json.loads(CONSTANTS_FILE.read_text())
