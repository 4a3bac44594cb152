import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eprgame.errors import InvalidSetup, InvalidState
from eprgame.probability_model import (
    check_no_signaling,
    check_normalization,
    compute_marginals,
    factorizability_certificate,
    outcome_of,
)
from eprgame.quantum_backend import (
    IDENTITY,
    MeasurementSetup,
    TripartiteState,
    born_joint_probabilities,
    density_from_pure,
    direction_from_angles,
    ghz_state,
    product_state,
    projector,
    validate_state,
)

X, Y, Z = (1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)
SETUP_Z = MeasurementSetup.from_vectors([Z, Z], [Z, Z], [Z, Z])
SETUP_X = MeasurementSetup.from_vectors([X, X], [X, X], [X, X])
SETUP_XY = MeasurementSetup.from_vectors([X, Y], [X, Y], [X, Y])

angle = st.floats(min_value=0.0, max_value=2 * np.pi, allow_nan=False)
amplitude = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)


@st.composite
def pure_states(draw):
    parts = np.array([draw(amplitude) + 1j * draw(amplitude) for _ in range(8)])
    norm = np.linalg.norm(parts)
    if norm < 1e-3:
        parts = np.zeros(8, dtype=complex)
        parts[0] = 1
        norm = 1.0
    return TripartiteState.pure(parts / norm)


@st.composite
def setups(draw):
    return MeasurementSetup.from_angles(
        [[(draw(angle), draw(angle)) for _ in range(2)] for _ in range(3)]
    )


def test_ghz_along_z():
    """Test that GHZ measured along z gives perfectly correlated outcomes."""
    p = born_joint_probabilities(ghz_state(), SETUP_Z)
    for context in range(8):
        block = p.block(context)
        assert block[0] == pytest.approx(0.5)
        assert block[7] == pytest.approx(0.5)
        assert sum(block[1:7]) == pytest.approx(0.0, abs=1e-12)


def test_ghz_along_x():
    """Only outcomes with an even number of -1s appear when all three measure x."""
    p = born_joint_probabilities(ghz_state(), SETUP_X)
    assert [p.p(i) for i in range(1, 9)] == pytest.approx(
        [0.25, 0, 0, 0.25, 0, 0.25, 0.25, 0], abs=1e-12
    )
    for i in range(1, 65):
        a, b, c = outcome_of(i)
        assert p.p(i) == pytest.approx((1 + a * b * c) / 8, abs=1e-12)


def test_ghz_is_not_factorizable():
    p = born_joint_probabilities(ghz_state(), SETUP_XY)
    assert check_normalization(p, 1e-10).passed
    assert check_no_signaling(p, 1e-10).passed
    result = factorizability_certificate(p)
    assert not result.factorizable
    marginals = compute_marginals(p)
    assert all(v == pytest.approx(0.5) for v in marginals.plus.values())


def test_product_state_is_factorizable():
    p = born_joint_probabilities(product_state([X, Y, Z]), SETUP_XY)
    result = factorizability_certificate(p)
    assert result.factorizable
    assert result.coins.r == pytest.approx(1.0)
    assert result.coins.s == pytest.approx(0.5)
    assert result.coins.r_prime == pytest.approx(0.5)
    assert result.coins.s_prime == pytest.approx(1.0)
    assert result.coins.r_double == pytest.approx(0.5)


def test_density_path_matches_pure_path():
    state = ghz_state()
    pure = born_joint_probabilities(state, SETUP_XY)
    mixed = born_joint_probabilities(density_from_pure(state), SETUP_XY)
    assert mixed.values == pytest.approx(pure.values, abs=1e-12)


def test_maximally_mixed_state_is_uniform():
    p = born_joint_probabilities(TripartiteState.density(np.eye(8) / 8), SETUP_XY)
    assert p.values == pytest.approx((0.125,) * 64)


def test_projectors():
    direction = direction_from_angles(0.7, 1.3)
    plus, minus = projector(direction, 1), projector(direction, -1)
    assert np.allclose(plus @ plus, plus)
    assert np.allclose(plus + minus, IDENTITY)
    assert np.allclose(plus @ minus, np.zeros((2, 2)))


def test_direction_from_angles():
    assert np.allclose(direction_from_angles(0.0, 0.0), [0.0, 0.0, 1.0])
    assert np.allclose(direction_from_angles(np.pi / 2, np.pi / 2), [0.0, 1.0, 0.0])


@pytest.mark.parametrize(
    "state, violation",
    [
        (TripartiteState.pure([1, 1, 0, 0, 0, 0, 0, 0]), "norm"),
        (TripartiteState.density(np.eye(8) / 4), "trace"),
        (TripartiteState.density(np.diag([1.5, -0.5, 0, 0, 0, 0, 0, 0])), "positivity"),
    ],
)
def test_validate_state_violations(state, violation):
    report = validate_state(state)
    assert not report.passed
    assert report.violations == [violation]


def test_validate_state_hermitian():
    rho = np.eye(8, dtype=complex) / 8
    rho[0, 1] = 0.1
    report = validate_state(TripartiteState.density(rho))
    assert "hermitian" in report.violations


def test_validate_state_accepts_ghz():
    assert validate_state(ghz_state()).passed
    assert validate_state(density_from_pure(ghz_state())).passed


def test_state_shape_errors():
    with pytest.raises(InvalidState, match="shape"):
        TripartiteState.pure([1, 0, 0])
    with pytest.raises(InvalidState, match="Unknown state kind"):
        TripartiteState("mixed", np.eye(8))
    with pytest.raises(InvalidState, match="three directions"):
        product_state([X, Y])


def test_born_rejects_invalid_inputs():
    with pytest.raises(InvalidState, match="norm"):
        born_joint_probabilities(TripartiteState.pure([1, 1, 0, 0, 0, 0, 0, 0]), SETUP_Z)
    not_unit = MeasurementSetup.from_vectors([Z, (0.0, 0.0, 2.0)], [Z, Z], [Z, Z])
    with pytest.raises(InvalidSetup, match=r"alice\[2\]"):
        born_joint_probabilities(ghz_state(), not_unit)
    with pytest.raises(InvalidSetup, match="shape"):
        MeasurementSetup(np.zeros((3, 3)))


@given(pure_states(), setups())
@settings(max_examples=200, deadline=None)
def test_born_behaviors_are_behaviors(state, setup):
    """Test that every Born-rule behavior is normalized and no-signaling."""
    p = born_joint_probabilities(state, setup)
    assert check_normalization(p, 1e-10).passed
    assert check_no_signaling(p, 1e-10).passed
    assert all(0 <= v <= 1 for v in p.values)


def test_polarized_state_is_factorizable():
    p = born_joint_probabilities(product_state([Z, Z, Z]), SETUP_XY)
    result = factorizability_certificate(p)
    assert result.factorizable
    assert all(v == pytest.approx(0.5) for v in result.coins.values())


def test_seeded_state_batch():
    """Two hundred random pure states measured along random directions."""
    rng = np.random.default_rng(2024)
    for _ in range(200):
        amplitudes = rng.normal(size=8) + 1j * rng.normal(size=8)
        state = TripartiteState.pure(amplitudes / np.linalg.norm(amplitudes))
        setup = MeasurementSetup.from_angles(rng.uniform(0, 2 * np.pi, size=(3, 2, 2)))
        p = born_joint_probabilities(state, setup)
        assert check_normalization(p, 1e-10).passed
        assert check_no_signaling(p, 1e-10).passed
