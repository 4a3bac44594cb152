"""
Nash equilibrium checks over behaviors.

Every payoff here is affine in the deviating player's own probability, so
the best unilateral deviation always sits at 0 or 1 and only those two
corners need testing.
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Tuple

from .classical_play import MixedProfile, payoffs_from_joint, three_coin_payoffs
from .errors import ConstraintViolation
from .game_model import PROFILES, Number, Payoffs, PdRatios, SymmetricGame
from .probability_model import (
    JointProbabilitySet,
    check_embedding_zeros,
    check_normalization,
    check_reduced_constraints,
    factorizability_certificate,
)

logger = logging.getLogger(__name__)

Triple = Tuple[Number, Number, Number]


@dataclass(frozen=True)
class NeVerdict:
    """
    margins[k] is player k's payoff at the profile minus the best payoff
    reachable by a unilateral corner deviation; deviations[k] is that
    corner probability.
    """

    is_ne: bool
    margins: Triple
    deviations: Triple

    def to_dict(self) -> Dict[str, Any]:
        return {
            "is_ne": self.is_ne,
            "margins": list(self.margins),
            "deviations": list(self.deviations),
        }


def _deviation_corners(own: Number) -> Tuple[int, ...]:
    if own == 0:
        return (1,)
    if own == 1:
        return (0,)
    return (0, 1)


def _verdict(
    payoffs: Callable[[MixedProfile], Payoffs], m: MixedProfile, tol: float
) -> NeVerdict:
    base = payoffs(m)
    margins, deviations = [], []
    for k, own in enumerate(m.values()):
        best = None
        for corner in _deviation_corners(own):
            margin = base[k] - payoffs(m.replace(k, corner))[k]
            if best is None or margin < best[0]:
                best = (margin, corner)
        margins.append(best[0])
        deviations.append(best[1])
    is_ne = all(margin >= -tol for margin in margins)
    logger.debug(f"NE check at {m.values()}: margins {margins}, is_ne={is_ne}")
    return NeVerdict(is_ne, tuple(margins), tuple(deviations))


def verify_ne(
    game: SymmetricGame, p: JointProbabilitySet, m: MixedProfile, tol: float = 1e-9
) -> NeVerdict:
    return _verdict(lambda profile: payoffs_from_joint(game, p, profile), m, tol)


def three_coin_verify_ne(
    game: SymmetricGame, m: MixedProfile, tol: float = 1e-9
) -> NeVerdict:
    return _verdict(lambda profile: three_coin_payoffs(game, profile), m, tol)


def enumerate_pure_ne(
    game: SymmetricGame, p: JointProbabilitySet, tol: float = 1e-9
) -> List[MixedProfile]:
    """Corner profiles that are equilibria, in canonical profile order."""
    corners = [MixedProfile.corner(profile) for profile in PROFILES]
    return [m for m in corners if verify_ne(game, p, m, tol).is_ne]


@dataclass(frozen=True)
class DeltaCoefficients:
    delta_1: Number
    delta_2: Number
    delta_3: Number

    @classmethod
    def from_game(cls, game: SymmetricGame) -> "DeltaCoefficients":
        a, b, d, e, t, w = game.constants()
        return cls(
            delta_1=a - b - 2 * d + 2 * t + e - w,
            delta_2=d - e - t + w,
            delta_3=e - w,
        )


@dataclass(frozen=True)
class DeltaReduction:
    """Slope of each player's payoff in their own probability, and the NE verdict it implies."""

    coefficients: DeltaCoefficients
    brackets: Triple
    is_ne: bool


def delta_reduction_check(
    game: SymmetricGame,
    p: JointProbabilitySet,
    m_star: MixedProfile,
    tol: float = 1e-9,
) -> DeltaReduction:
    certificate = factorizability_certificate(p, tol)
    coins = certificate.coins
    if not certificate.factorizable:
        raise ConstraintViolation(["behavior is not factorizable"])
    second = {"s": coins.s, "s_prime": coins.s_prime, "s_double": coins.s_double}
    nonzero = [f"{name}={value}" for name, value in second.items() if abs(value) > tol]
    if nonzero:
        raise ConstraintViolation(nonzero)

    deltas = DeltaCoefficients.from_game(game)
    heads = (coins.r, coins.r_prime, coins.r_double)
    own = m_star.values()
    brackets = []
    for k in range(3):
        i, j = [n for n in range(3) if n != k]
        yi, yj = own[i] * heads[i], own[j] * heads[j]
        brackets.append(
            heads[k] * (yi * yj * deltas.delta_1 + (yi + yj) * deltas.delta_2 + deltas.delta_3)
        )

    is_ne = all(
        min((own[k] - corner) * brackets[k] for corner in (0, 1)) >= -tol
        for k in range(3)
    )
    return DeltaReduction(deltas, tuple(brackets), is_ne)


def _require_reduced_behavior(p: JointProbabilitySet, tol: float) -> None:
    normalization = check_normalization(p, tol)
    zeros = check_embedding_zeros(p, tol)
    reduced = check_reduced_constraints(p, tol)
    if not (normalization.passed and zeros.passed and reduced.passed):
        raise ConstraintViolation(
            normalization.violations + zeros.violations + reduced.violations
        )


def ccc_lhs(ratios: PdRatios, p: JointProbabilitySet) -> Triple:
    ab, tb, dt, wb, ew = ratios.values()
    q = p.p
    alice = (
        (q(5) + ab * q(1) - q(13))
        + tb * (q(6) + q(7) - q(14) - q(15) + dt * (q(2) + q(3)))
        + wb * (q(8) - q(16) + ew * q(4))
    )
    bob = (
        (q(2) + ab * q(1) - q(18))
        + tb * (q(4) + q(6) - q(20) - q(22) + dt * (q(3) + q(5)))
        + wb * (q(8) - q(24) + ew * q(7))
    )
    chris = (
        (q(3) + ab * q(1) - q(27))
        + tb * (q(4) + q(7) - q(28) - q(31) + dt * (q(2) + q(5)))
        + wb * (q(8) - q(32) + ew * q(6))
    )
    return (alice, bob, chris)


def ccc_margins(
    ratios: PdRatios, p: JointProbabilitySet, tol: float = 1e-12
) -> Triple:
    """
    Payoff gain, in units of beta, of each player cooperating at (C,C,C)
    over defecting alone. (C,C,C) is an equilibrium iff all three are >= 0.
    """
    _require_reduced_behavior(p, tol)
    return ccc_lhs(ratios, p)


def ddd_margins(
    game: SymmetricGame, p: JointProbabilitySet, m: MixedProfile, tol: float = 1e-12
) -> Triple:
    """
    Loss of each player moving alone from (D,D,D) to their probability in m:
    x*p36*(omega-epsilon), y*p47*(omega-epsilon), z*p54*(omega-epsilon).
    """
    _require_reduced_behavior(p, tol)
    gap = game.omega - game.epsilon
    return (m.x * p.p(36) * gap, m.y * p.p(47) * gap, m.z * p.p(54) * gap)


def ddd_payoff_differences(
    game: SymmetricGame, p: JointProbabilitySet, m: MixedProfile, tol: float = 1e-12
) -> Triple:
    """Pi(0,0,0) - Pi(deviation) per player before normalization is used to simplify."""
    zeros = check_embedding_zeros(p, tol)
    if not zeros.passed:
        raise ConstraintViolation(zeros.violations)
    e, w = game.epsilon, game.omega
    return (
        -m.x * (e * p.p(36) + w * p.p(40) - w),
        -m.y * (e * p.p(47) + w * p.p(48) - w),
        -m.z * (e * p.p(54) + w * p.p(56) - w),
    )
