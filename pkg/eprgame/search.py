"""
Search for behaviors under which (C,C,C) is an equilibrium.

The ten independent probabilities fix the whole zero-constrained behavior
through affine completion formulas, and the (C,C,C) margins are affine in
the behavior, so for fixed ratios the search is a linear feasibility
problem in ten variables.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .equilibrium import ccc_lhs
from .errors import Infeasible, SamplingExhausted
from .game_model import Number, PdRatios
from .probability_model import (
    INDEPENDENT_INDICES,
    FactorizabilityResult,
    JointProbabilitySet,
    complete_from_independent,
    complete_values,
    factorizability_certificate,
)
from .simplex import solve_lp

logger = logging.getLogger(__name__)

Independents = Dict[int, Number]


@dataclass(frozen=True)
class SearchProblem:
    ratios: PdRatios
    margin: Number = 0
    require_nonfactorizable: bool = False
    warm_start: Optional[Mapping[int, Number]] = None

    def __post_init__(self):
        if isinstance(self.margin, bool) or not isinstance(self.margin, (int, float, Fraction)):
            raise ValueError(f"Error: margin must be a real number, got {self.margin!r}.")
        if not self.margin >= 0:
            raise ValueError(f"Error: margin must be non-negative, got {self.margin}.")


@dataclass(frozen=True)
class SearchResult:
    feasible: bool
    behavior: Optional[JointProbabilitySet] = None
    independents: Optional[Independents] = None
    margins: Optional[Tuple[Number, Number, Number]] = None
    certificate: Optional[FactorizabilityResult] = None
    attempts: int = 0
    reason: str = ""


@dataclass
class AffineModel:
    """
    Completed values and (C,C,C) margins as base + coefficients . v over
    the independents v, in INDEPENDENT_INDICES order.
    """

    value_base: List[Number]
    value_coeffs: List[List[Number]]
    margin_base: List[Number]
    margin_coeffs: List[List[Number]]

    @classmethod
    def build(cls, ratios: PdRatios, exact: bool) -> "AffineModel":
        zero, one = (Fraction(0), Fraction(1)) if exact else (0.0, 1.0)
        if exact:
            ratios = PdRatios(*(Fraction(v) for v in ratios.values()))

        def evaluate(point: Sequence[Number]):
            values = complete_values(dict(zip(INDEPENDENT_INDICES, point)))
            return values, list(ccc_lhs(ratios, JointProbabilitySet(tuple(values))))

        base_values, base_margins = evaluate([zero] * len(INDEPENDENT_INDICES))
        value_coeffs = [[] for _ in base_values]
        margin_coeffs = [[] for _ in base_margins]
        for i in range(len(INDEPENDENT_INDICES)):
            unit = [zero] * len(INDEPENDENT_INDICES)
            unit[i] = one
            values, margins = evaluate(unit)
            for k, (v, b) in enumerate(zip(values, base_values)):
                value_coeffs[k].append(v - b)
            for k, (v, b) in enumerate(zip(margins, base_margins)):
                margin_coeffs[k].append(v - b)
        return cls(base_values, value_coeffs, base_margins, margin_coeffs)

    def margins_at(self, point: Sequence[Number]) -> List[Number]:
        return [
            base + sum(c * v for c, v in zip(coeffs, point))
            for base, coeffs in zip(self.margin_base, self.margin_coeffs)
        ]

    def constraints(self, margin: Number) -> Tuple[List[List[Number]], List[Number]]:
        """Rows and rhs of A v <= b: box on every entry, margins at least margin."""
        n = len(INDEPENDENT_INDICES)
        rows, rhs = [], []
        for i in range(n):
            rows.append([1 if j == i else 0 for j in range(n)])
            rhs.append(1)
        for base, coeffs in zip(self.value_base, self.value_coeffs):
            if all(c == 0 for c in coeffs):
                continue
            rows.append(list(coeffs))
            rhs.append(1 - base)
            rows.append([-c for c in coeffs])
            rhs.append(base)
        for base, coeffs in zip(self.margin_base, self.margin_coeffs):
            rows.append([-c for c in coeffs])
            rhs.append(base - margin)
        return rows, rhs


def _accept(
    problem: SearchProblem,
    independents: Independents,
    constraint_tol: float,
    factorization_tol: float,
) -> Optional[Tuple[JointProbabilitySet, Tuple, FactorizabilityResult]]:
    try:
        behavior = complete_from_independent(independents, constraint_tol)
    except Infeasible as e:
        logger.debug(f"Candidate rejected: {e}")
        return None
    margins = ccc_lhs(problem.ratios, behavior)
    if any(m < problem.margin - constraint_tol for m in margins):
        logger.debug(f"Candidate margins {margins} below {problem.margin}")
        return None
    certificate = factorizability_certificate(behavior, factorization_tol)
    if problem.require_nonfactorizable and certificate.factorizable:
        logger.debug("Candidate is factorizable, trying again")
        return None
    return behavior, margins, certificate


def search_ccc_feasible(
    problem: SearchProblem,
    exact: bool = False,
    seed: int = 0,
    retries: int = 16,
    constraint_tol: float = 1e-12,
    factorization_tol: float = 1e-9,
) -> SearchResult:
    """
    Finds ten independents whose completion makes (C,C,C) an equilibrium
    with every margin at least problem.margin. A feasible warm start is
    returned as is. Further attempts maximize the summed margins, then
    random directions; when only factorizable vertices come back, their
    average is tried as well.
    """
    if problem.warm_start is not None:
        start = {i: problem.warm_start[i] for i in INDEPENDENT_INDICES}
        accepted = _accept(problem, start, constraint_tol, factorization_tol)
        if accepted is not None:
            logger.info("Warm start already satisfies every constraint")
            return SearchResult(True, accepted[0], start, accepted[1], accepted[2], 0)

    model = AffineModel.build(problem.ratios, exact)
    margin = Fraction(problem.margin) if exact else problem.margin
    rows, rhs = model.constraints(margin)
    rng = np.random.default_rng(seed)
    n = len(INDEPENDENT_INDICES)

    vertices: List[List[Number]] = []
    for attempt in range(1, retries + 1):
        if attempt == 1:
            objective = [sum(column) for column in zip(*model.margin_coeffs)]
        else:
            objective = [float(v) for v in rng.normal(size=n)]
            if exact:
                objective = [Fraction(v).limit_denominator(1000) for v in objective]

        result = solve_lp(objective, rows, rhs, exact=exact)
        if result.status == "infeasible":
            logger.info(f"No behavior reaches margin {problem.margin}")
            return SearchResult(
                False, attempts=attempt, reason=f"no behavior reaches margin {problem.margin}"
            )
        if not result.optimal:
            logger.debug(f"Attempt {attempt} ended with status {result.status}")
            continue

        vertices.append(list(result.x))
        candidates = [result.x]
        if len(vertices) > 1:
            candidates.append([sum(column) / len(vertices) for column in zip(*vertices)])
        for point in candidates:
            independents = {
                i: min(max(v, 0), 1) for i, v in zip(INDEPENDENT_INDICES, point)
            }
            accepted = _accept(problem, independents, constraint_tol, factorization_tol)
            if accepted is not None:
                logger.info(f"Feasible behavior found after {attempt} attempt(s)")
                return SearchResult(
                    True, accepted[0], independents, accepted[1], accepted[2], attempt
                )

    return SearchResult(
        False,
        attempts=retries,
        reason=f"no non-factorizable behavior found in {retries} attempts",
    )


def _frechet(rng: np.random.Generator, u: float, v: float) -> float:
    """Joint probability of two events with marginals u, v drawn within its attainable range."""
    low, high = max(0.0, u + v - 1.0), min(u, v)
    return float(rng.uniform(low, high)) if high > low else low


def random_nosignaling_sample(
    seed: int, max_draws: int = 10000, tol: float = 1e-12
) -> JointProbabilitySet:
    """
    Zero-constrained no-signaling behavior, deterministic per seed. The
    all-first-settings context is drawn from a flat Dirichlet; each
    two-party context is drawn within the bounds its marginals allow.
    The draw is therefore not uniform over the feasible independents.
    """
    rng = np.random.default_rng(seed)
    for draw in range(1, max_draws + 1):
        block = [float(v) for v in rng.dirichlet(np.ones(8))]
        p1, p2, p3, p4, p5, p6, p7, p8 = block
        alice = p1 + p2 + p3 + p4
        bob = p1 + p3 + p5 + p7
        chris = p1 + p2 + p5 + p6

        p13 = _frechet(rng, bob, chris)
        p18 = _frechet(rng, alice, chris)
        p27 = _frechet(rng, alice, bob)
        independents = {
            1: p1,
            3: p3,
            5: p5,
            6: p6,
            13: p13,
            15: bob - p13,
            18: p18,
            20: alice - p18,
            22: chris - p18,
            27: p27,
        }
        if any(not 0 <= v <= 1 for v in independents.values()):
            continue
        try:
            behavior = complete_from_independent(independents, tol)
        except Infeasible:
            continue
        logger.info(f"Sample accepted after {draw} draw(s)")
        return behavior
    raise SamplingExhausted(max_draws)
