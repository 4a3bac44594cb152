import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .errors import ZeroConstraintViolated
from .game_model import (
    PROFILES,
    Number,
    Payoffs,
    Profile,
    SymmetricGame,
    profile_index,
    profile_weight,
    pure_strategy_payoffs,
)
from .probability_model import (
    EMBEDDING_ZEROS,
    OUTCOMES,
    CoinParameters,
    JointProbabilitySet,
    Outcome,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MixedProfile:
    """Probabilities x, y, z of Alice, Bob and Chris choosing their first strategy."""

    x: Number
    y: Number
    z: Number

    def __post_init__(self):
        for name in ("x", "y", "z"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float, Fraction)):
                raise ValueError(f"Error: '{name}' must be a real number, got {value!r}.")
            if not 0 <= value <= 1:
                raise ValueError(f"Error: '{name}' must lie in [0, 1], got {value}.")

    def values(self) -> Tuple[Number, Number, Number]:
        return (self.x, self.y, self.z)

    def replace(self, player: int, value: Number) -> "MixedProfile":
        values = list(self.values())
        values[player] = value
        return MixedProfile(*values)

    @classmethod
    def corner(cls, profile: Profile) -> "MixedProfile":
        """Pure profile (settings 1/2) as the corner x, y, z in {0, 1}."""
        profile_index(profile)
        return cls(*(1 if setting == 1 else 0 for setting in profile))

    def is_corner(self) -> bool:
        return all(v in (0, 1) for v in self.values())


def outcome_coefficients(game: SymmetricGame, outcome: Outcome) -> Payoffs:
    """
    Payoff triple earned on a joint outcome. An outcome of +1 plays the role
    of the first strategy and -1 the second, so (+,-,+) earns what the pure
    profile (S1, S2', S1'') earns:

        (+,+,+) alpha,alpha,alpha   (+,-,+) delta,beta,delta
        (+,+,-) delta,delta,beta    (+,-,-) epsilon,theta,theta
        (-,+,+) beta,delta,delta    (-,-,+) theta,theta,epsilon
        (-,+,-) theta,epsilon,theta (-,-,-) omega,omega,omega
    """
    return pure_strategy_payoffs(game, tuple(1 if o == 1 else 2 for o in outcome))


def _accumulate(totals: List[Number], weight: Number, payoffs: Payoffs) -> None:
    for k in range(3):
        totals[k] += weight * payoffs[k]


def three_coin_payoffs(game: SymmetricGame, m: MixedProfile) -> Payoffs:
    totals = [0, 0, 0]
    for profile in PROFILES:
        _accumulate(totals, profile_weight(profile, m.values()), pure_strategy_payoffs(game, profile))
    return tuple(totals)


def context_payoffs(game: SymmetricGame, p: JointProbabilitySet) -> List[Payoffs]:
    """Pure-strategy payoffs over a behavior, one triple per context."""
    result = []
    for context in range(len(PROFILES)):
        totals = [0, 0, 0]
        for outcome, value in zip(OUTCOMES, p.block(context)):
            _accumulate(totals, value, outcome_coefficients(game, outcome))
        result.append(tuple(totals))
    return result


def payoffs_from_joint(
    game: SymmetricGame, p: JointProbabilitySet, m: MixedProfile
) -> Payoffs:
    totals = [0, 0, 0]
    for profile, payoffs in zip(PROFILES, context_payoffs(game, p)):
        _accumulate(totals, profile_weight(profile, m.values()), payoffs)
    return tuple(totals)


# Entries left standing in each context once the embedding zeros hold,
# paired with the pure profile whose payoff triple they carry.
REDUCED_TERMS: Dict[Profile, Tuple[Tuple[int, Profile], ...]] = {
    (1, 1, 1): (
        (1, (1, 1, 1)),
        (2, (1, 2, 1)),
        (3, (1, 1, 2)),
        (4, (1, 2, 2)),
        (5, (2, 1, 1)),
        (6, (2, 2, 1)),
        (7, (2, 1, 2)),
        (8, (2, 2, 2)),
    ),
    (2, 1, 1): ((13, (2, 1, 1)), (14, (2, 2, 1)), (15, (2, 1, 2)), (16, (2, 2, 2))),
    (1, 2, 1): ((18, (1, 2, 1)), (20, (1, 2, 2)), (22, (2, 2, 1)), (24, (2, 2, 2))),
    (1, 1, 2): ((27, (1, 1, 2)), (28, (1, 2, 2)), (31, (2, 1, 2)), (32, (2, 2, 2))),
    (1, 2, 2): ((36, (1, 2, 2)), (40, (2, 2, 2))),
    (2, 1, 2): ((47, (2, 1, 2)), (48, (2, 2, 2))),
    (2, 2, 1): ((54, (2, 2, 1)), (56, (2, 2, 2))),
    (2, 2, 2): ((64, (2, 2, 2)),),
}


def reduced_payoffs(
    game: SymmetricGame, p: JointProbabilitySet, profile: Profile, tol: float = 1e-12
) -> Payoffs:
    """Pure-strategy payoffs over a behavior that obeys the embedding zeros."""
    violated = [i for i in EMBEDDING_ZEROS if abs(p.p(i)) > tol]
    if violated:
        raise ZeroConstraintViolated(violated)

    profile_index(profile)
    totals = [0, 0, 0]
    for index, role in REDUCED_TERMS[tuple(profile)]:
        _accumulate(totals, p.p(index), pure_strategy_payoffs(game, role))
    return tuple(totals)


def fold_coins(coins: CoinParameters, m: MixedProfile) -> MixedProfile:
    """Each player's overall probability of a +1 outcome when mixing between two coins."""
    return MixedProfile(
        m.x * coins.r + (1 - m.x) * coins.s,
        m.y * coins.r_prime + (1 - m.y) * coins.s_prime,
        m.z * coins.r_double + (1 - m.z) * coins.s_double,
    )


def six_coin_payoffs(
    game: SymmetricGame, coins: CoinParameters, m: MixedProfile
) -> Payoffs:
    totals = [0, 0, 0]
    for profile in PROFILES:
        heads = MixedProfile(*(coins.heads(k, setting) for k, setting in enumerate(profile)))
        _accumulate(totals, profile_weight(profile, m.values()), three_coin_payoffs(game, heads))
    return tuple(totals)
