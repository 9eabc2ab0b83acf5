import pathlib

import pytest

from congestion_adversary import validate_instance

FIXTURES_DIR = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def example1():
    """Five players, three resources, budget 6: no exact equilibrium exists."""
    return validate_instance([0, 2, 5], 5, 6)


@pytest.fixture
def seven_player():
    """Seven players, five resources: the solver's last round moves twice."""
    return validate_instance([1, 4, 4, 10, 10], 7, 9)
