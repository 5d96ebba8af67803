from pathlib import Path
from typing import Callable

import pytest

from app.pkg.slp.codec import parse_slp_file
from app.pkg.slp.core import Slp

TESTDATA = Path(__file__).resolve().parent.parent / "testdata"


@pytest.fixture
def testdata() -> Path:
    return TESTDATA


@pytest.fixture
def load_instance() -> Callable[[str], Slp]:
    def load(name: str) -> Slp:
        return parse_slp_file(TESTDATA / name)

    return load
