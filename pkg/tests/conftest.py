import pytest

from eprgame.game_model import SymmetricGame
from eprgame.probability_model import complete_from_independent

from .data import WORKED_INDEPENDENTS, WORKED_RATIOS


@pytest.fixture
def pd_game():
    return SymmetricGame(7, 9, 3, 0, 5, 1)


@pytest.fixture
def worked_ratios():
    return WORKED_RATIOS


@pytest.fixture
def worked_game():
    return WORKED_RATIOS.to_game()


@pytest.fixture
def worked_behavior():
    return complete_from_independent(WORKED_INDEPENDENTS)


@pytest.fixture
def worked_behavior_float():
    return complete_from_independent({i: float(v) for i, v in WORKED_INDEPENDENTS.items()})
