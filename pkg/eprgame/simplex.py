"""
Small linear programs

    maximize c.x  subject to  A x <= b,  x >= 0

Float problems go to HiGHS dual simplex through scipy. Exact problems run
a dense two-phase tableau over Fractions; Bland's rule picks entering and
leaving variables, so it terminates on degenerate problems.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog

from .game_model import Number

logger = logging.getLogger(__name__)

FLOAT_EPS = 1e-9


@dataclass(frozen=True)
class LpResult:
    status: str
    x: Tuple[Number, ...] = ()
    objective: Optional[Number] = None

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


class Tableau:
    """Constraint rows plus an objective row of reduced costs; last column is the rhs."""

    def __init__(self, rows: List[List[Number]], basis: List[int]):
        self.rows = rows
        self.basis = basis
        self.z: List[Number] = []

    def pivot(self, r: int, j: int) -> None:
        row = self.rows[r]
        piv = row[j]
        self.rows[r] = row = [v / piv for v in row]
        for k, other in enumerate(self.rows):
            if k != r and other[j] != 0:
                f = other[j]
                self.rows[k] = [a - f * b for a, b in zip(other, row)]
        if self.z[j] != 0:
            f = self.z[j]
            self.z = [a - f * b for a, b in zip(self.z, row)]
        self.basis[r] = j

    def entering(self, allowed: int) -> int:
        for j in range(allowed):
            if self.z[j] < 0:
                return j
        return -1

    def leaving(self, j: int) -> int:
        best = None
        for r, row in enumerate(self.rows):
            if row[j] > 0:
                key = (row[-1] / row[j], self.basis[r])
                if best is None or key < best[0]:
                    best = (key, r)
        return -1 if best is None else best[1]

    def run(self, allowed: int, max_iterations: int) -> str:
        for iteration in range(max_iterations):
            j = self.entering(allowed)
            if j == -1:
                return "optimal"
            r = self.leaving(j)
            if r == -1:
                return "unbounded"
            logger.debug(f"Pivot {iteration}: column {j} enters, row {r} leaves")
            self.pivot(r, j)
        return "iteration_limit"


HIGHS_STATUS = {0: "optimal", 1: "iteration_limit", 3: "unbounded"}


def _solve_highs(
    objective: Sequence[Number],
    rows: Sequence[Sequence[Number]],
    rhs: Sequence[Number],
    max_iterations: int,
) -> LpResult:
    n = len(objective)
    a_ub = np.asarray(rows, dtype=float) if rows else None
    b_ub = np.asarray(rhs, dtype=float) if rows else None
    options = {
        "maxiter": max_iterations,
        "primal_feasibility_tolerance": FLOAT_EPS,
        "dual_feasibility_tolerance": FLOAT_EPS,
    }

    def run(costs):
        return linprog(
            costs, A_ub=a_ub, b_ub=b_ub, bounds=(0, None), method="highs-ds", options=options
        )

    result = run(-np.asarray(objective, dtype=float))
    logger.debug(f"HiGHS status {result.status}: {result.message}")
    status = HIGHS_STATUS.get(result.status)
    if status == "optimal":
        x = tuple(max(float(v), 0.0) for v in result.x)
        return LpResult(status, x, -float(result.fun))
    if status is not None:
        return LpResult(status)

    # Infeasible or unbounded: a zero objective cannot be unbounded.
    feasibility = run(np.zeros(n))
    return LpResult("unbounded" if feasibility.status == 0 else "infeasible")


def _solve_tableau(
    objective: Sequence[Number],
    rows: Sequence[Sequence[Number]],
    rhs: Sequence[Number],
    max_iterations: int,
) -> LpResult:
    n = len(objective)
    m = len(rows)
    zero, one = Fraction(0), Fraction(1)

    negative = [i for i in range(m) if rhs[i] < 0]
    artificial_of = {i: n + m + k for k, i in enumerate(negative)}
    width = n + m + len(negative)

    table, basis = [], []
    for i, (coeffs, b) in enumerate(zip(rows, rhs)):
        sign = -1 if i in artificial_of else 1
        row = [zero] * (width + 1)
        for j, a in enumerate(coeffs):
            row[j] = sign * Fraction(a)
        row[n + i] = sign * one
        row[-1] = sign * Fraction(b)
        if i in artificial_of:
            row[artificial_of[i]] = one
            basis.append(artificial_of[i])
        else:
            basis.append(n + i)
        table.append(row)

    tableau = Tableau(table, basis)

    # Phase one: maximize -(sum of artificials).
    z = [zero] * (width + 1)
    for i in negative:
        z[artificial_of[i]] = one
        z = [a - b for a, b in zip(z, table[i])]
    tableau.z = z
    status = tableau.run(width, max_iterations)
    if status != "optimal":
        return LpResult(status)
    if tableau.z[-1] < 0:
        logger.debug(f"Phase one ends with infeasibility {-tableau.z[-1]}")
        return LpResult("infeasible")

    first_artificial = n + m
    r = 0
    while r < len(tableau.rows):
        if tableau.basis[r] >= first_artificial:
            row = tableau.rows[r]
            j = next((j for j in range(first_artificial) if row[j] != 0), None)
            if j is None:
                del tableau.rows[r]
                del tableau.basis[r]
                continue
            tableau.pivot(r, j)
        r += 1
    tableau.rows = [row[:first_artificial] + row[-1:] for row in tableau.rows]

    # Phase two on the original objective.
    costs = [Fraction(c) for c in objective] + [zero] * m
    z = [-c for c in costs] + [zero]
    for r, b in enumerate(tableau.basis):
        if costs[b] != 0:
            z = [a + costs[b] * v for a, v in zip(z, tableau.rows[r])]
    tableau.z = z
    status = tableau.run(first_artificial, max_iterations)
    if status != "optimal":
        return LpResult(status)

    x = [zero] * n
    for r, b in enumerate(tableau.basis):
        if b < n:
            x[b] = tableau.rows[r][-1]
    return LpResult("optimal", tuple(x), tableau.z[-1])


def solve_lp(
    objective: Sequence[Number],
    rows: Sequence[Sequence[Number]],
    rhs: Sequence[Number],
    exact: bool = False,
    max_iterations: int = 5000,
) -> LpResult:
    n = len(objective)
    m = len(rows)
    if len(rhs) != m:
        raise ValueError(f"Error: {m} constraint rows but {len(rhs)} right-hand sides.")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ValueError(f"Error: constraint row {i} has {len(row)} coefficients, expected {n}.")

    if exact:
        return _solve_tableau(objective, rows, rhs, max_iterations)
    return _solve_highs(objective, rows, rhs, max_iterations)
