import pytest

import fairsum
from fairsum.instance import separate, shared


@pytest.fixture(autouse=True)
def default_options():
    fairsum.reset()
    yield
    fairsum.reset()


@pytest.fixture
def six_solutions():
    return separate(400, [400, 102, 100, 100], [388, 100, 100, 96], label="six")


@pytest.fixture
def three_solutions():
    return separate(100, [100, 75, 52], [23, 21, 0], label="three")


@pytest.fixture
def two_solutions():
    return separate(100, [100, 1], [1, 1], label="two")


@pytest.fixture
def shared_large_alpha():
    return shared(100, [75, 26, 25, 1], label="shared-large")


@pytest.fixture
def shared_odd_blocks():
    return shared(99, [33, 33, 33, 1, 1], label="shared-odd")
