from fractions import Fraction
from unittest.mock import mock_open, patch

import numpy as np
import pytest

from eprgame import helpers
from eprgame.errors import InputError, NotSymmetric
from eprgame.game_model import SymmetricGame
from eprgame.probability_model import CoinParameters

from .data import WORKED_INDEPENDENTS, WORKED_RATIOS, sample_path


def test_read_json_file():
    """Test reading a JSON document through a mocked file."""
    with patch("builtins.open", mock_open(read_data='{"alpha": 7}')):
        assert helpers.read_json_file("game.json") == {"alpha": 7}


def test_read_json_file_errors():
    with patch("builtins.open", side_effect=FileNotFoundError):
        with pytest.raises(InputError, match="File not found: missing.json"):
            helpers.read_json_file("missing.json", field="game")
    with patch("builtins.open", mock_open(read_data="{not json")):
        with pytest.raises(InputError, match="Error parsing JSON file") as excinfo:
            helpers.read_json_file("broken.json", field="behavior")
    assert excinfo.value.field == "behavior"
    with patch("builtins.open", side_effect=IsADirectoryError(21, "Is a directory")):
        with pytest.raises(InputError, match="Cannot read samples: Is a directory"):
            helpers.read_json_file("samples")


@pytest.mark.parametrize(
    "value, exact, expected",
    [
        ("7/50", True, Fraction(7, 50)),
        ("0.14", True, Fraction(7, 50)),
        (0.1, True, Fraction(1, 10)),
        (3, True, 3),
        ("7/50", False, 0.14),
    ],
)
def test_parse_number(value, exact, expected):
    assert helpers.parse_number(value, "x", exact) == expected


@pytest.mark.parametrize("value", [True, None, "seven", "1/0", [1]])
def test_parse_number_rejects(value):
    with pytest.raises(InputError) as excinfo:
        helpers.parse_number(value, "alpha")
    assert excinfo.value.field == "alpha"


def test_parse_profile():
    assert helpers.parse_profile("1, 0.5, 0").values() == (1.0, 0.5, 0.0)
    assert helpers.parse_profile("1/2,1,0", exact=True).x == Fraction(1, 2)
    with pytest.raises(InputError, match="expected x,y,z"):
        helpers.parse_profile("1,1")
    with pytest.raises(InputError, match="must lie in"):
        helpers.parse_profile("1,2,0")


def test_game_from_constants_and_table():
    constants = helpers.load(sample_path("pd7.json"), helpers.game_from_content)
    table = helpers.load(sample_path("pd7_table.json"), helpers.game_from_content)
    assert constants == table == SymmetricGame(7, 9, 3, 0, 5, 1)


def test_game_from_content_errors():
    with pytest.raises(InputError, match="missing payoff constants"):
        helpers.game_from_content({"alpha": 1})
    with pytest.raises(InputError, match="expected an object"):
        helpers.game_from_content([1, 2])
    table = [[0, 0, 0]] * 8
    table[1] = [1, 0, 0]
    with pytest.raises(NotSymmetric):
        helpers.game_from_content({"table": table})


def test_ratios_from_content():
    content = helpers.read_json_file(sample_path("worked_ratios.json"))
    assert helpers.ratios_from_content(content, exact=True) == WORKED_RATIOS
    with pytest.raises(InputError, match="missing ratios"):
        helpers.ratios_from_content({"alpha_beta": 0.9})


def test_coins_from_content():
    coins = helpers.load(sample_path("coins_half.json"), helpers.coins_from_content)
    assert coins == CoinParameters(0.5, 0.0, 0.5, 0.0, 0.5, 0.0)
    with pytest.raises(InputError, match="must lie in"):
        helpers.coins_from_content(
            {"coins": dict(r=2, s=0, r_prime=0, s_prime=0, r_double=0, s_double=0)}
        )


def test_independents_from_content():
    content = {
        key: str(value) for key, value in helpers.independents_to_content(WORKED_INDEPENDENTS).items()
    }
    assert helpers.independents_from_content(content, exact=True) == WORKED_INDEPENDENTS
    with pytest.raises(InputError, match="unknown keys"):
        helpers.independents_from_content({**content, "p2": 0.1})
    with pytest.raises(InputError, match="missing p27"):
        helpers.independents_from_content({k: v for k, v in content.items() if k != "p27"})


def test_behavior_documents_agree(worked_behavior):
    """The 64-entry and independent forms of the worked example describe the same behavior."""
    full = helpers.load(sample_path("worked_behavior.json"), helpers.behavior_from_content, True)
    short = helpers.load(sample_path("worked_independents.json"), helpers.behavior_from_content, True)
    assert full == short == worked_behavior


def test_behavior_from_content_errors():
    with pytest.raises(InputError, match="64 probabilities"):
        helpers.behavior_from_content({"p": [0.5] * 10})
    with pytest.raises(InputError, match="expected one of"):
        helpers.behavior_from_content({"q": []})


def test_state_from_content():
    state = helpers.load(sample_path("ghz.json"), helpers.state_from_content)
    assert state.kind == "pure"
    assert np.allclose(np.abs(state.data) ** 2, [0.5, 0, 0, 0, 0, 0, 0, 0.5])
    complex_state = helpers.state_from_content({"pure": [[0, 1]] + [0] * 7})
    assert complex_state.data[0] == 1j
    with pytest.raises(InputError, match="expected 'pure' or 'density'"):
        helpers.state_from_content({"mixed": []})


def test_setup_from_content():
    setup = helpers.load(sample_path("setup_xy.json"), helpers.setup_from_content)
    assert np.allclose(setup.direction(0, 1), [1, 0, 0])
    assert np.allclose(setup.direction(2, 2), [0, 1, 0])
    angles = helpers.setup_from_content(
        {player: [[0, 0], [np.pi / 2, 0]] for player in ("alice", "bob", "chris")}
    )
    assert np.allclose(angles.direction(1, 1), [0, 0, 1])
    assert np.allclose(angles.direction(1, 2), [1, 0, 0])
    with pytest.raises(InputError) as excinfo:
        helpers.setup_from_content({"alice": [[1, 0, 0]]})
    assert excinfo.value.field == "alice"


def test_problem_from_content():
    problem = helpers.load(sample_path("problem.json"), helpers.problem_from_content, True)
    assert problem.ratios == WORKED_RATIOS
    assert problem.margin == Fraction(1, 100)
    assert problem.require_nonfactorizable
    assert problem.warm_start is None
    with pytest.raises(InputError, match="non-negative"):
        helpers.problem_from_content({"ratios": problem_ratios(), "margin": -1})
    with pytest.raises(InputError, match="true or false"):
        helpers.problem_from_content({"ratios": problem_ratios(), "require_nonfactorizable": "yes"})


def problem_ratios():
    return dict(zip(WORKED_RATIOS.names(), (float(v) for v in WORKED_RATIOS.values())))
