"""
Three-player two-strategy games.

Pure profiles are triples of setting numbers (1 or 2) for Alice, Bob and
Chris, always listed in the canonical order

    111, 211, 121, 112, 122, 212, 221, 222

which also fixes the order of the eight measurement contexts downstream.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

from .checks import CheckReport
from .errors import NotSymmetric

logger = logging.getLogger(__name__)

Number = Union[float, Fraction]
Payoffs = Tuple[Number, Number, Number]
Profile = Tuple[int, int, int]

PROFILES: Tuple[Profile, ...] = (
    (1, 1, 1),
    (2, 1, 1),
    (1, 2, 1),
    (1, 1, 2),
    (1, 2, 2),
    (2, 1, 2),
    (2, 2, 1),
    (2, 2, 2),
)

PLAYERS = ("alice", "bob", "chris")

# Symmetry conditions on a general table: (player, entry) == ("alpha", entry).
# Entries are 1-based in canonical profile order.
SYMMETRY_EQUALITIES: Tuple[Tuple[str, int, int], ...] = (
    ("beta", 1, 1),
    ("beta", 2, 3),
    ("beta", 3, 2),
    ("beta", 4, 3),
    ("beta", 5, 6),
    ("beta", 6, 5),
    ("beta", 7, 6),
    ("beta", 8, 8),
    ("gamma", 1, 1),
    ("gamma", 2, 3),
    ("gamma", 3, 3),
    ("gamma", 4, 2),
    ("gamma", 5, 6),
    ("gamma", 6, 6),
    ("gamma", 7, 5),
    ("gamma", 8, 8),
    ("alpha", 6, 7),
    ("alpha", 3, 4),
)

_PLAYER_COLUMN = {"alpha": 0, "beta": 1, "gamma": 2}


def _check_finite(name: str, value: Number) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, float, Fraction)):
        raise ValueError(f"Error: payoff '{name}' must be a real number, got {value!r}.")
    if not math.isfinite(float(value)):
        raise ValueError(f"Error: payoff '{name}' must be finite, got {value!r}.")


def profile_index(profile: Profile) -> int:
    try:
        return PROFILES.index(tuple(profile))
    except ValueError:
        raise ValueError(
            f"Error: {profile!r} is not a pure profile; settings must be 1 or 2."
        )


def profile_label(profile: Profile) -> str:
    """Cooperate/defect label, S_1 being cooperation."""
    return "(" + ",".join("C" if s == 1 else "D" for s in profile) + ")"


@dataclass(frozen=True)
class GeneralThreePlayerGame:
    """Payoff table of 8 (Alice, Bob, Chris) triples in canonical profile order."""

    table: Tuple[Payoffs, ...]

    def __post_init__(self):
        table = tuple(tuple(row) for row in self.table)
        if len(table) != 8:
            raise ValueError(
                f"Error: payoff table must have exactly 8 entries, got {len(table)}."
            )
        for i, row in enumerate(table, start=1):
            if len(row) != 3:
                raise ValueError(
                    f"Error: payoff table entry {i} must be a triple, got {len(row)} values."
                )
            for column, value in zip(("alpha", "beta", "gamma"), row):
                _check_finite(f"{column}_{i}", value)
        object.__setattr__(self, "table", table)

    def entry(self, player: str, index: int) -> Number:
        return self.table[index - 1][_PLAYER_COLUMN[player]]

    def payoffs(self, profile: Profile) -> Payoffs:
        return self.table[profile_index(profile)]


@dataclass(frozen=True)
class SymmetricGame:
    alpha: Number
    beta: Number
    delta: Number
    epsilon: Number
    theta: Number
    omega: Number

    def __post_init__(self):
        for name in ("alpha", "beta", "delta", "epsilon", "theta", "omega"):
            _check_finite(name, getattr(self, name))

    def constants(self) -> Tuple[Number, ...]:
        return (self.alpha, self.beta, self.delta, self.epsilon, self.theta, self.omega)

    def expand(self) -> GeneralThreePlayerGame:
        return GeneralThreePlayerGame(
            tuple(pure_strategy_payoffs(self, profile) for profile in PROFILES)
        )


def pure_strategy_payoffs(game: SymmetricGame, profile: Profile) -> Payoffs:
    a, b, d, e, t, w = game.constants()
    table = {
        (1, 1, 1): (a, a, a),
        (2, 1, 1): (b, d, d),
        (1, 2, 1): (d, b, d),
        (1, 1, 2): (d, d, b),
        (1, 2, 2): (e, t, t),
        (2, 1, 2): (t, e, t),
        (2, 2, 1): (t, t, e),
        (2, 2, 2): (w, w, w),
    }
    profile_index(profile)
    return table[tuple(profile)]


def reduce_to_symmetric(
    game: GeneralThreePlayerGame, tol: float = 1e-12
) -> SymmetricGame:
    """
    Recovers (alpha, beta, delta, epsilon, theta, omega) from a general
    table. Raises NotSymmetric listing every equality that deviates by
    more than tol.
    """
    failed = []
    for player, left, right in SYMMETRY_EQUALITIES:
        deviation = abs(game.entry(player, left) - game.entry("alpha", right))
        if deviation > tol:
            failed.append(f"{player}_{left}=alpha_{right}")
    if failed:
        logger.debug(f"Symmetry equalities failed: {failed}")
        raise NotSymmetric(failed)

    return SymmetricGame(
        alpha=game.entry("alpha", 1),
        beta=game.entry("alpha", 2),
        delta=game.entry("alpha", 3),
        epsilon=game.entry("alpha", 5),
        theta=game.entry("alpha", 6),
        omega=game.entry("alpha", 8),
    )


def profile_weight(profile: Profile, probabilities: Sequence[Number]) -> Number:
    """Probability of a pure profile when each player picks setting 1 w.p. x, y, z."""
    weight = 1
    for setting, q in zip(profile, probabilities):
        weight *= q if setting == 1 else 1 - q
    return weight


def general_mixed_payoffs(
    game: GeneralThreePlayerGame, probabilities: Sequence[Number]
) -> Payoffs:
    totals = [0, 0, 0]
    for profile, row in zip(PROFILES, game.table):
        weight = profile_weight(profile, probabilities)
        for k in range(3):
            totals[k] += weight * row[k]
    return tuple(totals)


def check_symmetry_conditions(
    game: GeneralThreePlayerGame,
    samples: Iterable[Sequence[Number]],
    tol: float = 1e-12,
) -> CheckReport:
    """
    Evaluates Pi_A(x,y,z) = Pi_A(x,z,y) = Pi_B(y,x,z) = Pi_B(z,x,y)
    = Pi_C(y,z,x) = Pi_C(z,y,x) at every sample.
    """
    residuals = {}
    violations = []
    for x, y, z in samples:
        values = (
            general_mixed_payoffs(game, (x, y, z))[0],
            general_mixed_payoffs(game, (x, z, y))[0],
            general_mixed_payoffs(game, (y, x, z))[1],
            general_mixed_payoffs(game, (z, x, y))[1],
            general_mixed_payoffs(game, (y, z, x))[2],
            general_mixed_payoffs(game, (z, y, x))[2],
        )
        name = f"({x},{y},{z})"
        spread = max(values) - min(values)
        residuals[name] = spread
        if spread > tol:
            violations.append(name)
    return CheckReport("symmetry", not violations, residuals, violations)


@dataclass(frozen=True)
class PdReport:
    condition_a: bool
    condition_b: bool
    condition_c: bool
    violated_inequalities: List[str] = field(default_factory=list)

    @property
    def is_generalized_pd(self) -> bool:
        return self.condition_a and self.condition_b and self.condition_c


def pd_inequalities(game: SymmetricGame) -> List[Tuple[str, str, Number]]:
    """(condition, name, greater side minus lesser side) for each strict inequality."""
    a, b, d, e, t, w = game.constants()
    return [
        ("a", "beta>alpha", b - a),
        ("a", "omega>epsilon", w - e),
        ("a", "theta>delta", t - d),
        ("b", "beta>theta", b - t),
        ("b", "theta>omega", t - w),
        ("b", "alpha>delta", a - d),
        ("b", "delta>epsilon", d - e),
        ("c", "delta>omega", d - w),
        ("c", "alpha>theta", a - t),
        ("c", "delta>(epsilon+theta)/2", d - (e + t) / 2),
        ("c", "alpha>(delta+beta)/2", a - (d + b) / 2),
    ]


def classify_generalized_pd(game: SymmetricGame, margin: Number = 0) -> PdReport:
    """
    Checks the three inequality families of a generalized three-player
    Prisoner's Dilemma. An inequality holds only when the greater side
    exceeds the lesser by more than margin; equality is a violation.
    """
    violated = []
    failed_conditions = set()
    for condition, name, difference in pd_inequalities(game):
        if not difference > margin:
            violated.append(name)
            failed_conditions.add(condition)
    report = PdReport(
        condition_a="a" not in failed_conditions,
        condition_b="b" not in failed_conditions,
        condition_c="c" not in failed_conditions,
        violated_inequalities=violated,
    )
    logger.debug(f"PD classification of {game}: violated {violated}")
    return report


@dataclass(frozen=True)
class PdRatios:
    """The five payoff ratios alpha/beta, theta/beta, delta/theta, omega/beta, epsilon/omega."""

    alpha_beta: Number
    theta_beta: Number
    delta_theta: Number
    omega_beta: Number
    epsilon_omega: Number

    def __post_init__(self):
        for name in self.names():
            _check_finite(name, getattr(self, name))

    @staticmethod
    def names() -> Tuple[str, ...]:
        return ("alpha_beta", "theta_beta", "delta_theta", "omega_beta", "epsilon_omega")

    def values(self) -> Tuple[Number, ...]:
        return tuple(getattr(self, name) for name in self.names())

    def all_below_one(self) -> bool:
        return all(value < 1 for value in self.values())

    @classmethod
    def from_game(cls, game: SymmetricGame) -> "PdRatios":
        if not game.beta > 0:
            raise ValueError("Error: ratio form requires beta > 0.")
        if game.theta == 0 or game.omega == 0:
            raise ValueError("Error: ratio form requires non-zero theta and omega.")
        return cls(
            alpha_beta=game.alpha / game.beta,
            theta_beta=game.theta / game.beta,
            delta_theta=game.delta / game.theta,
            omega_beta=game.omega / game.beta,
            epsilon_omega=game.epsilon / game.omega,
        )

    def to_game(self, beta: Number = 1) -> SymmetricGame:
        theta = self.theta_beta * beta
        omega = self.omega_beta * beta
        return SymmetricGame(
            alpha=self.alpha_beta * beta,
            beta=beta,
            delta=self.delta_theta * theta,
            epsilon=self.epsilon_omega * omega,
            theta=theta,
            omega=omega,
        )
