import pytest

from probteam import ProbTeam, Structure


@pytest.fixture
def two():
    """Domain {0, 1} with P = {1}."""
    return Structure.build(2, {"P": [1]})


@pytest.fixture
def team12():
    return ProbTeam.from_rows(["x"], [((0,), 1), ((1,), 2)])
