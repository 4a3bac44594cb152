from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eprgame.errors import NotSymmetric
from eprgame.game_model import (
    PROFILES,
    GeneralThreePlayerGame,
    PdRatios,
    SymmetricGame,
    check_symmetry_conditions,
    classify_generalized_pd,
    general_mixed_payoffs,
    profile_label,
    pure_strategy_payoffs,
    reduce_to_symmetric,
)

from .data import WORKED_RATIOS, unit

payoff = st.integers(min_value=-20, max_value=20)


@st.composite
def symmetric_games(draw):
    return SymmetricGame(*(draw(payoff) for _ in range(6)))


def test_pure_strategy_payoffs(pd_game):
    """Test payoff triples of the PD game at selected profiles."""
    assert pure_strategy_payoffs(pd_game, (1, 1, 1)) == (7, 7, 7)
    assert pure_strategy_payoffs(pd_game, (2, 2, 2)) == (1, 1, 1)
    assert pure_strategy_payoffs(pd_game, (1, 2, 2)) == (0, 5, 5)
    assert pure_strategy_payoffs(pd_game, (2, 1, 1)) == (9, 3, 3)


def test_pure_strategy_payoffs_rejects_bad_profile(pd_game):
    with pytest.raises(ValueError, match="not a pure profile"):
        pure_strategy_payoffs(pd_game, (1, 3, 1))


def test_profile_label():
    assert profile_label((1, 2, 2)) == "(C,D,D)"


def test_reduce_round_trip(pd_game):
    """Test that expanding then reducing recovers the constants."""
    assert reduce_to_symmetric(pd_game.expand()) == pd_game


def test_reduce_zero_table():
    table = GeneralThreePlayerGame(tuple((0, 0, 0) for _ in range(8)))
    assert reduce_to_symmetric(table) == SymmetricGame(0, 0, 0, 0, 0, 0)


def test_reduce_broken_equality(pd_game):
    """Test that a single broken equality is named in the error."""
    table = [list(row) for row in pd_game.expand().table]
    table[1][1] = 4  # beta_2 no longer equals alpha_3
    with pytest.raises(NotSymmetric) as excinfo:
        reduce_to_symmetric(GeneralThreePlayerGame(tuple(map(tuple, table))))
    assert excinfo.value.failed == ["beta_2=alpha_3"]


def test_reduce_within_tolerance(pd_game):
    table = [list(row) for row in pd_game.expand().table]
    table[1][1] = 3 + 1e-13
    game = reduce_to_symmetric(GeneralThreePlayerGame(tuple(map(tuple, table))))
    assert game.delta == 3


def test_general_game_validation():
    with pytest.raises(ValueError, match="exactly 8 entries"):
        GeneralThreePlayerGame(((1, 1, 1),))
    with pytest.raises(ValueError, match="must be finite"):
        GeneralThreePlayerGame(tuple((float("nan"), 0, 0) for _ in range(8)))
    with pytest.raises(ValueError, match="must be finite"):
        SymmetricGame(float("inf"), 0, 0, 0, 0, 0)


@given(symmetric_games())
def test_expansion_is_symmetric(game):
    """Test the player/profile permutation symmetry on all eight profiles."""
    for s1, s2, s3 in PROFILES:
        alice, bob, chris = pure_strategy_payoffs(game, (s1, s2, s3))
        assert alice == pure_strategy_payoffs(game, (s1, s3, s2))[0]
        assert bob == pure_strategy_payoffs(game, (s2, s1, s3))[0]
        assert chris == pure_strategy_payoffs(game, (s3, s1, s2))[0]
    assert reduce_to_symmetric(game.expand()) == game


@given(symmetric_games(), st.lists(st.tuples(unit, unit, unit), min_size=1, max_size=5))
@settings(max_examples=50)
def test_symmetry_conditions_hold_for_symmetric_games(game, samples):
    report = check_symmetry_conditions(game.expand(), samples, tol=1e-9)
    assert report.passed


def test_symmetry_conditions_flag_asymmetric_table(pd_game):
    table = [list(row) for row in pd_game.expand().table]
    table[1][0] = 100
    general = GeneralThreePlayerGame(tuple(map(tuple, table)))
    report = check_symmetry_conditions(general, [(0.5, 0.5, 0.5)])
    assert not report.passed
    assert report.violations == ["(0.5,0.5,0.5)"]


def test_general_mixed_payoffs_at_corner(pd_game):
    assert general_mixed_payoffs(pd_game.expand(), (1, 0, 0)) == (0, 5, 5)


def test_classify_pd_game(pd_game):
    report = classify_generalized_pd(pd_game)
    assert report.is_generalized_pd
    assert report.violated_inequalities == []


def test_classify_constant_game():
    report = classify_generalized_pd(SymmetricGame(1, 1, 1, 1, 1, 1))
    assert not report.is_generalized_pd
    assert not (report.condition_a or report.condition_b or report.condition_c)
    assert len(report.violated_inequalities) == 11


def test_classify_ratio_game():
    """Test that theta == omega surfaces as a violation."""
    game = SymmetricGame(0.9, 1, 0.002, 0.009, 0.01, 0.01)
    report = classify_generalized_pd(game)
    assert not report.is_generalized_pd
    assert "theta>omega" in report.violated_inequalities
    assert report.condition_a


@pytest.mark.parametrize(
    "changes, expected",
    [
        ({"alpha": 10}, ["beta>alpha"]),
        ({"epsilon": 2}, ["omega>epsilon", "delta>(epsilon+theta)/2"]),
        ({"theta": 3}, ["theta>delta"]),
        ({"beta": 13}, ["alpha>(delta+beta)/2"]),
    ],
)
def test_classify_named_violations(pd_game, changes, expected):
    values = dict(
        alpha=pd_game.alpha,
        beta=pd_game.beta,
        delta=pd_game.delta,
        epsilon=pd_game.epsilon,
        theta=pd_game.theta,
        omega=pd_game.omega,
    )
    values.update(changes)
    report = classify_generalized_pd(SymmetricGame(**values))
    assert report.violated_inequalities == expected


def test_classify_margin(pd_game):
    assert not classify_generalized_pd(pd_game, margin=1).is_generalized_pd


def test_ratios_round_trip():
    game = WORKED_RATIOS.to_game()
    assert game == SymmetricGame(
        Fraction(9, 10), 1, Fraction(1, 500), Fraction(9, 1000), Fraction(1, 100), Fraction(1, 100)
    )
    assert PdRatios.from_game(game) == WORKED_RATIOS
    assert WORKED_RATIOS.all_below_one()


def test_ratios_require_positive_beta():
    with pytest.raises(ValueError, match="beta > 0"):
        PdRatios.from_game(SymmetricGame(1, 0, 1, 1, 1, 1))
    with pytest.raises(ValueError, match="non-zero theta"):
        PdRatios.from_game(SymmetricGame(1, 2, 1, 1, 0, 1))
