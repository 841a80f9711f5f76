import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mgeneral.field import make_field


@pytest.fixture(scope="session")
def f2():
    return make_field(2)


@pytest.fixture(scope="session")
def f3():
    return make_field(3)


@pytest.fixture(scope="session")
def f4():
    return make_field(2, 2)


@pytest.fixture(scope="session")
def f5():
    return make_field(5)


@pytest.fixture(scope="session")
def f8():
    return make_field(2, 3)


@pytest.fixture(scope="session")
def f9():
    return make_field(3, 2)
