"""
Behaviors: 64 joint outcome probabilities over the eight measurement contexts.

Flat 1-based indexing p1..p64. Context k (0-based, canonical profile order
from game_model.PROFILES) owns p(8k+1)..p(8k+8); inside a context the
outcomes (Alice, Bob, Chris) run

    (+,+,+), (+,-,+), (+,+,-), (+,-,-), (-,+,+), (-,-,+), (-,+,-), (-,-,-)
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from .checks import CheckReport
from .errors import Infeasible, NotABehavior
from .game_model import PLAYERS, PROFILES, Number

logger = logging.getLogger(__name__)

Outcome = Tuple[int, int, int]

OUTCOMES: Tuple[Outcome, ...] = (
    (1, 1, 1),
    (1, -1, 1),
    (1, 1, -1),
    (1, -1, -1),
    (-1, 1, 1),
    (-1, -1, 1),
    (-1, 1, -1),
    (-1, -1, -1),
)

CONTEXTS = PROFILES

# Entries that vanish when every player's second coin never shows heads.
EMBEDDING_ZEROS: Tuple[int, ...] = (
    9, 10, 11, 12,
    17, 19, 21, 23,
    25, 26, 29, 30,
    33, 34, 35, 37, 38, 39,
    41, 42, 43, 44, 45, 46,
    49, 50, 51, 52, 53, 55,
    57, 58, 59, 60, 61, 62, 63,
)

INDEPENDENT_INDICES: Tuple[int, ...] = (1, 3, 5, 6, 13, 15, 18, 20, 22, 27)


def flat_index(context: int, outcome: int) -> int:
    """1-based index of an entry from 0-based context and outcome positions."""
    return 8 * context + outcome + 1


def context_of(index: int) -> int:
    return (index - 1) // 8


def outcome_of(index: int) -> Outcome:
    return OUTCOMES[(index - 1) % 8]


@dataclass(frozen=True)
class JointProbabilitySet:
    values: Tuple[Number, ...]

    def __post_init__(self):
        values = tuple(self.values)
        if len(values) != 64:
            raise ValueError(
                f"Error: a behavior needs exactly 64 joint probabilities, got {len(values)}."
            )
        for i, value in enumerate(values, start=1):
            if isinstance(value, bool) or not isinstance(value, (int, float, Fraction)):
                raise ValueError(f"Error: p{i} must be a real number, got {value!r}.")
            if not math.isfinite(float(value)):
                raise ValueError(f"Error: p{i} must be finite, got {value!r}.")
        object.__setattr__(self, "values", values)

    def p(self, index: int) -> Number:
        if not 1 <= index <= 64:
            raise IndexError(f"joint probability index {index} outside 1..64")
        return self.values[index - 1]

    def block(self, context: int) -> Tuple[Number, ...]:
        return self.values[8 * context : 8 * context + 8]

    def total(self, indices: Sequence[int]) -> Number:
        return sum((self.values[i - 1] for i in indices), 0)

    def is_exact(self) -> bool:
        return all(isinstance(v, (int, Fraction)) for v in self.values)


@dataclass(frozen=True)
class CoinParameters:
    """Heads (+1) probabilities of each player's two coins/directions."""

    r: Number
    s: Number
    r_prime: Number
    s_prime: Number
    r_double: Number
    s_double: Number

    def __post_init__(self):
        for name in self.names():
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float, Fraction)):
                raise ValueError(f"Error: coin '{name}' must be a real number, got {value!r}.")
            if not 0 <= value <= 1:
                raise ValueError(f"Error: coin '{name}' must lie in [0, 1], got {value}.")

    @staticmethod
    def names() -> Tuple[str, ...]:
        return ("r", "s", "r_prime", "s_prime", "r_double", "s_double")

    def values(self) -> Tuple[Number, ...]:
        return tuple(getattr(self, name) for name in self.names())

    def heads(self, player: int, setting: int) -> Number:
        """Pr(+1) for player 0..2 measuring along setting 1 or 2."""
        return self.values()[2 * player + setting - 1]


def expand_factorizable(coins: CoinParameters) -> JointProbabilitySet:
    values = []
    for profile in CONTEXTS:
        heads = [coins.heads(k, setting) for k, setting in enumerate(profile)]
        for outcome in OUTCOMES:
            product = 1
            for q, sign in zip(heads, outcome):
                product *= q if sign == 1 else 1 - q
            values.append(product)
    return JointProbabilitySet(tuple(values))


def check_normalization(p: JointProbabilitySet, tol: float = 1e-12) -> CheckReport:
    residuals = {}
    violations = []
    for context in range(8):
        residual = sum(p.block(context), 0) - 1
        name = f"context-{context + 1}"
        residuals[name] = residual
        if abs(residual) > tol:
            violations.append(name)
    for i, value in enumerate(p.values, start=1):
        if value < -tol or value > 1 + tol:
            violations.append(f"p{i} out of range")
    return CheckReport("normalization", not violations, residuals, violations)


class Chain(NamedTuple):
    """Sums of entries that must all be equal, and equal to total when given."""

    name: str
    terms: Tuple[Tuple[int, ...], ...]
    total: Optional[int] = None


def _signaling_chains() -> Tuple[Chain, ...]:
    chains = []
    for k, player in enumerate(PLAYERS):
        for setting in (1, 2):
            for sign in (1, -1):
                contexts = [c for c, profile in enumerate(CONTEXTS) if profile[k] == setting]
                terms = tuple(
                    tuple(
                        flat_index(c, o)
                        for o, outcome in enumerate(OUTCOMES)
                        if outcome[k] == sign
                    )
                    for c in contexts
                )
                label = "+1" if sign == 1 else "-1"
                chains.append(Chain(f"{player}({label}|S{setting})", terms))
    return tuple(chains)


# Every one-party marginal, read in each of the four contexts that fix the
# party's setting. Pr(-1) chains are implied by Pr(+1) chains plus
# normalization; both are kept so the report names what moved.
SIGNALING_CHAINS: Tuple[Chain, ...] = _signaling_chains()

REDUCED_CONSTRAINTS: Tuple[Chain, ...] = (
    Chain("normalization-1", ((1, 2, 3, 4, 5, 6, 7, 8),), 1),
    Chain("normalization-2", ((13, 14, 15, 16),), 1),
    Chain("normalization-3", ((18, 20, 22, 24),), 1),
    Chain("normalization-4", ((27, 28, 31, 32),), 1),
    Chain("normalization-5", ((36, 40),), 1),
    Chain("normalization-6", ((47, 48),), 1),
    Chain("normalization-7", ((54, 56),), 1),
    Chain("normalization-8", ((64,),), 1),
    Chain("alice(+1|S1)", ((1, 2, 3, 4), (27, 28), (18, 20), (36,))),
    Chain("alice(-1|S1)", ((5, 6, 7, 8), (31, 32), (22, 24), (40,))),
    Chain("bob(+1|S1)", ((1, 3, 5, 7), (27, 31), (13, 15), (47,))),
    Chain("bob(-1|S1)", ((2, 4, 6, 8), (28, 32), (14, 16), (48,))),
    Chain("chris(+1|S1)", ((1, 2, 5, 6), (18, 22), (13, 14), (54,))),
    Chain("chris(-1|S1)", ((3, 4, 7, 8), (20, 24), (15, 16), (56,))),
)


def _evaluate_chains(
    name: str, p: JointProbabilitySet, chains: Sequence[Chain], tol: float
) -> CheckReport:
    residuals = {}
    violations = []
    for chain in chains:
        sums = [p.total(term) for term in chain.terms]
        if chain.total is not None:
            sums.append(chain.total)
        spread = max(sums) - min(sums)
        residuals[chain.name] = spread
        if spread > tol:
            violations.append(chain.name)
    return CheckReport(name, not violations, residuals, violations)


def check_no_signaling(p: JointProbabilitySet, tol: float = 1e-12) -> CheckReport:
    return _evaluate_chains("no-signaling", p, SIGNALING_CHAINS, tol)


def check_reduced_constraints(
    p: JointProbabilitySet, tol: float = 1e-12
) -> CheckReport:
    return _evaluate_chains("reduced-constraints", p, REDUCED_CONSTRAINTS, tol)


def check_embedding_zeros(p: JointProbabilitySet, tol: float = 1e-12) -> CheckReport:
    residuals = {f"p{i}": p.p(i) for i in EMBEDDING_ZEROS}
    violations = [f"p{i}" for i in EMBEDDING_ZEROS if abs(p.p(i)) > tol]
    return CheckReport("embedding-zeros", not violations, residuals, violations)


@dataclass(frozen=True)
class MarginalTable:
    """
    One-party marginals keyed by (player, setting). Each value is the
    average over the four contexts fixing that setting; spread records how
    far the four readings disagree.
    """

    plus: Dict[Tuple[str, int], Number]
    minus: Dict[Tuple[str, int], Number]
    spread: Dict[Tuple[str, int], Number]

    def prob(self, player: str, setting: int, outcome: int = 1) -> Number:
        table = self.plus if outcome == 1 else self.minus
        return table[(player, setting)]

    def to_dict(self) -> Dict[str, Dict[str, Number]]:
        return {
            f"{player}|S{setting}": {
                "+1": self.plus[(player, setting)],
                "-1": self.minus[(player, setting)],
                "spread": self.spread[(player, setting)],
            }
            for player, setting in self.plus
        }


def _context_marginal(
    p: JointProbabilitySet, context: int, player: int, sign: int = 1
) -> Number:
    return sum(
        (
            p.values[flat_index(context, o) - 1]
            for o, outcome in enumerate(OUTCOMES)
            if outcome[player] == sign
        ),
        0,
    )


def compute_marginals(p: JointProbabilitySet) -> MarginalTable:
    plus, minus, spread = {}, {}, {}
    for k, player in enumerate(PLAYERS):
        for setting in (1, 2):
            contexts = [c for c, profile in enumerate(CONTEXTS) if profile[k] == setting]
            readings = [_context_marginal(p, c, k) for c in contexts]
            plus[(player, setting)] = sum(readings, 0) / 4
            minus[(player, setting)] = (
                sum((_context_marginal(p, c, k, -1) for c in contexts), 0) / 4
            )
            spread[(player, setting)] = max(readings) - min(readings)
    return MarginalTable(plus, minus, spread)


@dataclass(frozen=True)
class Witness:
    index: int
    product: Number
    value: Number
    deviation: Number


@dataclass(frozen=True)
class FactorizabilityResult:
    """
    `coins` are the candidate parameters read from the marginals; they
    reproduce the behavior only when `factorizable` is true. `witness` is
    the lowest-index entry whose deviation exceeds the tolerance.
    """

    factorizable: bool
    coins: CoinParameters
    max_deviation: Number
    max_index: int
    witness: Optional[Witness] = None


# Context each coin is read from: the lowest-index context using that setting.
_CERTIFICATE_CONTEXTS = ((0, 0), (1, 0), (0, 1), (2, 1), (0, 2), (3, 2))


def _clamp_unit(value: Number) -> Number:
    if value < 0:
        return type(value)(0)
    if value > 1:
        return type(value)(1)
    return value


def factorizability_certificate(
    p: JointProbabilitySet, tol: float = 1e-9
) -> FactorizabilityResult:
    normalization = check_normalization(p, tol)
    signaling = check_no_signaling(p, tol)
    if not (normalization.passed and signaling.passed):
        raise NotABehavior(normalization.violations + signaling.violations)

    coins = CoinParameters(
        *(
            _clamp_unit(_context_marginal(p, context, player))
            for context, player in _CERTIFICATE_CONTEXTS
        )
    )
    products = expand_factorizable(coins)

    witness = None
    max_deviation, max_index = 0, 1
    for i, (product, value) in enumerate(zip(products.values, p.values), start=1):
        deviation = abs(value - product)
        if deviation > max_deviation:
            max_deviation, max_index = deviation, i
        if witness is None and deviation > tol:
            witness = Witness(i, product, value, deviation)

    if witness is not None:
        logger.debug(
            f"Not factorizable: p{witness.index}={witness.value} vs product {witness.product}"
        )
    return FactorizabilityResult(
        factorizable=witness is None,
        coins=coins,
        max_deviation=max_deviation,
        max_index=max_index,
        witness=witness,
    )


def complete_values(independent: Mapping[int, Number]) -> List[Number]:
    """
    Fills all 64 entries from the ten independent probabilities by the
    reduced normalization and locality relations, without any checks.
    """
    missing = [i for i in INDEPENDENT_INDICES if i not in independent]
    if missing:
        raise ValueError(
            f"Error: missing independent probabilities {', '.join(f'p{i}' for i in missing)}."
        )
    q = {i: independent[i] for i in INDEPENDENT_INDICES}
    one = 1
    q[7] = q[13] + q[15] - q[1] - q[3] - q[5]
    q[2] = q[18] + q[22] - q[1] - q[5] - q[6]
    q[14] = q[18] + q[22] - q[13]
    q[4] = q[18] + q[20] - q[1] - q[2] - q[3]
    q[8] = one - (q[1] + q[2] + q[3] + q[4] + q[5] + q[6] + q[7])
    q[16] = one - q[13] - q[14] - q[15]
    q[24] = one - q[18] - q[20] - q[22]
    q[28] = q[18] + q[20] - q[27]
    q[31] = q[13] + q[15] - q[27]
    q[32] = one - q[27] - q[28] - q[31]
    q[36] = q[1] + q[2] + q[3] + q[4]
    q[40] = q[5] + q[6] + q[7] + q[8]
    q[47] = q[13] + q[15]
    q[48] = q[14] + q[16]
    q[54] = q[13] + q[14]
    q[56] = q[15] + q[16]
    q[64] = one

    zero = 0 * q[1]
    values = [q.get(i, zero) for i in range(1, 65)]
    logger.debug(f"Completed values: { {i: q[i] for i in sorted(q)} }")
    return values


def complete_from_independent(
    independent: Mapping[int, Number], tol: float = 1e-12
) -> JointProbabilitySet:
    for i in INDEPENDENT_INDICES:
        value = independent.get(i)
        if value is not None and not 0 <= value <= 1:
            raise ValueError(f"Error: independent p{i} must lie in [0, 1], got {value}.")

    values = complete_values(independent)
    violations = [
        f"p{i}={value}"
        for i, value in enumerate(values, start=1)
        if value < -tol or value > 1 + tol
    ]
    if violations:
        raise Infeasible(violations)

    behavior = JointProbabilitySet(tuple(values))
    residual = check_reduced_constraints(behavior, tol)
    if not residual.passed:
        raise Infeasible(residual.violations)
    return behavior
