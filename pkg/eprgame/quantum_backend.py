"""
Behaviors generated by measuring a shared three-qubit state.

Basis order is |000> .. |111> with Alice as the leftmost qubit; |0> is the
+1 eigenstate of sigma_z. A player measuring along unit vector n gets
outcome a with projector (I + a n.sigma) / 2.
"""

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .checks import CheckReport
from .errors import InvalidSetup, InvalidState
from .game_model import PLAYERS, PROFILES
from .probability_model import OUTCOMES, JointProbabilitySet

logger = logging.getLogger(__name__)

IDENTITY = np.eye(2, dtype=complex)
PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


@dataclass(frozen=True, eq=False)
class TripartiteState:
    """Either 8 amplitudes (kind "pure") or an 8x8 density operator (kind "density")."""

    kind: str
    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data, dtype=complex)
        if self.kind == "pure":
            expected = (8,)
        elif self.kind == "density":
            expected = (8, 8)
        else:
            raise InvalidState(f"Unknown state kind '{self.kind}', expected 'pure' or 'density'.")
        if data.shape != expected:
            raise InvalidState(f"A {self.kind} state needs shape {expected}, got {data.shape}.")
        if not np.all(np.isfinite(data)):
            raise InvalidState("State entries must be finite.")
        object.__setattr__(self, "data", data)

    @classmethod
    def pure(cls, amplitudes: Sequence[complex]) -> "TripartiteState":
        return cls("pure", np.asarray(amplitudes, dtype=complex))

    @classmethod
    def density(cls, matrix: Sequence[Sequence[complex]]) -> "TripartiteState":
        return cls("density", np.asarray(matrix, dtype=complex))


@dataclass(frozen=True, eq=False)
class MeasurementSetup:
    """directions[player][setting - 1] is a unit 3-vector."""

    directions: np.ndarray

    def __post_init__(self):
        directions = np.asarray(self.directions, dtype=float)
        if directions.shape != (3, 2, 3):
            raise InvalidSetup(
                f"A setup needs two 3-vectors for each of three players, got shape {directions.shape}."
            )
        if not np.all(np.isfinite(directions)):
            raise InvalidSetup("Directions must be finite.")
        object.__setattr__(self, "directions", directions)

    @classmethod
    def from_vectors(cls, alice, bob, chris) -> "MeasurementSetup":
        return cls(np.array([alice, bob, chris], dtype=float))

    @classmethod
    def from_angles(cls, angles) -> "MeasurementSetup":
        """angles[player][setting - 1] = (theta, phi)."""
        return cls(
            np.array(
                [[direction_from_angles(t, p) for t, p in player] for player in angles]
            )
        )

    def direction(self, player: int, setting: int) -> np.ndarray:
        return self.directions[player, setting - 1]

    def check(self, tol: float = 1e-12) -> None:
        bad = []
        for k, player in enumerate(PLAYERS):
            for setting in (1, 2):
                norm = np.linalg.norm(self.direction(k, setting))
                if abs(norm - 1) > tol:
                    bad.append(f"{player}[{setting}] norm {norm:.15g}")
        if bad:
            raise InvalidSetup(f"Directions must be unit vectors: {', '.join(bad)}")


def direction_from_angles(theta: float, phi: float) -> np.ndarray:
    return np.array(
        [np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)]
    )


def projector(direction: np.ndarray, outcome: int) -> np.ndarray:
    spin = sum(n * sigma for n, sigma in zip(direction, PAULI))
    return (IDENTITY + outcome * spin) / 2


def ghz_state() -> TripartiteState:
    amplitudes = np.zeros(8, dtype=complex)
    amplitudes[0] = amplitudes[7] = 1 / np.sqrt(2)
    return TripartiteState.pure(amplitudes)


def _qubit_along(direction: Sequence[float]) -> np.ndarray:
    x, y, z = direction
    theta = np.arccos(np.clip(z, -1.0, 1.0))
    phi = np.arctan2(y, x)
    return np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])


def product_state(directions: Sequence[Sequence[float]]) -> TripartiteState:
    """Each qubit polarized along its Bloch direction (Alice, Bob, Chris)."""
    if len(directions) != 3:
        raise InvalidState(f"A product state needs three directions, got {len(directions)}.")
    qubits = [_qubit_along(d) for d in directions]
    return TripartiteState.pure(np.kron(np.kron(qubits[0], qubits[1]), qubits[2]))


def density_from_pure(state: TripartiteState) -> TripartiteState:
    if state.kind != "pure":
        raise InvalidState("Only a pure state can be turned into its projector.")
    return TripartiteState.density(np.outer(state.data, state.data.conj()))


def validate_state(state: TripartiteState, tol: float = 1e-12) -> CheckReport:
    residuals = {}
    violations = []
    if state.kind == "pure":
        residuals["norm"] = float(abs(np.vdot(state.data, state.data).real - 1))
        if residuals["norm"] > tol:
            violations.append("norm")
    else:
        rho = state.data
        residuals["hermitian"] = float(np.max(np.abs(rho - rho.conj().T)))
        residuals["trace"] = float(abs(np.trace(rho) - 1))
        residuals["min_eigenvalue"] = float(np.min(np.linalg.eigvalsh((rho + rho.conj().T) / 2)))
        if residuals["hermitian"] > tol:
            violations.append("hermitian")
        if residuals["trace"] > tol:
            violations.append("trace")
        if residuals["min_eigenvalue"] < -1e-10:
            violations.append("positivity")
    return CheckReport("state", not violations, residuals, violations)


def _expectation(state: TripartiteState, projectors: Tuple[np.ndarray, ...]) -> float:
    pa, pb, pc = projectors
    if state.kind == "pure":
        psi = state.data.reshape(2, 2, 2)
        value = np.einsum("ijk,ia,jb,kc,abc->", psi.conj(), pa, pb, pc, psi)
    else:
        rho = state.data.reshape(2, 2, 2, 2, 2, 2)
        value = np.einsum("abcijk,ia,jb,kc->", rho, pa, pb, pc)
    return float(value.real)


def born_joint_probabilities(
    state: TripartiteState, setup: MeasurementSetup, tol: float = 1e-10
) -> JointProbabilitySet:
    report = validate_state(state)
    if not report.passed:
        raise InvalidState(f"State fails validation: {', '.join(report.violations)}")
    setup.check()

    values = []
    for profile in PROFILES:
        directions = [setup.direction(k, setting) for k, setting in enumerate(profile)]
        for outcome in OUTCOMES:
            projectors = tuple(projector(d, a) for d, a in zip(directions, outcome))
            value = _expectation(state, projectors)
            if value < -tol or value > 1 + tol:
                raise InvalidState(
                    f"Born probability {value} for context {profile}, outcome {outcome} is outside [0, 1]."
                )
            values.append(min(max(value, 0.0), 1.0))
    logger.debug(f"Generated behavior from {state.kind} state: {values}")
    return JointProbabilitySet(tuple(values))
