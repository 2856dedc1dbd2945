import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from krtorus.cartan import build_frame


@pytest.fixture(scope="session")
def a3_sink_source():
    return build_frame("A", 3, {(2, 1), (2, 3)}, height_anchor=(2, 0))


@pytest.fixture(scope="session")
def a2():
    return build_frame("A", 2)


@pytest.fixture(scope="session")
def a4():
    return build_frame("A", 4)


@pytest.fixture(scope="session")
def d4():
    return build_frame("D", 4)


@pytest.fixture(scope="session")
def d5():
    return build_frame("D", 5)


@pytest.fixture(scope="session")
def e6():
    return build_frame("E", 6)
