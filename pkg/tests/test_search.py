from fractions import Fraction

import pytest

from eprgame.equilibrium import ccc_margins
from eprgame.errors import SamplingExhausted
from eprgame.probability_model import (
    INDEPENDENT_INDICES,
    check_embedding_zeros,
    check_no_signaling,
    check_normalization,
    check_reduced_constraints,
)
from eprgame.search import (
    AffineModel,
    SearchProblem,
    random_nosignaling_sample,
    search_ccc_feasible,
)

from .data import WORKED_INDEPENDENTS, WORKED_RATIOS


def assert_constrained_behavior(p, tol=1e-9):
    assert check_normalization(p, tol).passed
    assert check_no_signaling(p, tol).passed
    assert check_embedding_zeros(p, tol).passed
    assert check_reduced_constraints(p, tol).passed


def test_search_finds_nonfactorizable_behavior():
    """Test a search at margin 0.01 over the worked example's ratios."""
    problem = SearchProblem(WORKED_RATIOS, margin=0.01, require_nonfactorizable=True)
    result = search_ccc_feasible(problem, seed=7)
    assert result.feasible
    assert result.attempts >= 1
    assert all(m >= 0.01 - 1e-12 for m in result.margins)
    assert not result.certificate.factorizable
    assert_constrained_behavior(result.behavior)
    assert set(result.independents) == set(INDEPENDENT_INDICES)


def test_search_exact():
    problem = SearchProblem(WORKED_RATIOS, margin=Fraction(1, 100))
    result = search_ccc_feasible(problem, exact=True)
    assert result.feasible
    assert result.behavior.is_exact()
    assert min(ccc_margins(WORKED_RATIOS, result.behavior)) >= Fraction(1, 100)
    assert_constrained_behavior(result.behavior, 0)


def test_search_unreachable_margin():
    result = search_ccc_feasible(SearchProblem(WORKED_RATIOS, margin=10))
    assert not result.feasible
    assert result.behavior is None
    assert "margin 10" in result.reason


def test_search_warm_start():
    """A feasible warm start comes back untouched, without solving anything."""
    problem = SearchProblem(WORKED_RATIOS, margin=0.01, warm_start=WORKED_INDEPENDENTS)
    result = search_ccc_feasible(problem)
    assert result.feasible
    assert result.attempts == 0
    assert result.independents == WORKED_INDEPENDENTS
    assert result.margins == (
        Fraction(10663, 100000),
        Fraction(9643, 100000),
        Fraction(172, 10000),
    )


def test_search_rejected_warm_start_falls_back_to_solver():
    problem = SearchProblem(WORKED_RATIOS, margin=0.05, warm_start=WORKED_INDEPENDENTS)
    result = search_ccc_feasible(problem)
    if result.feasible:
        assert result.attempts >= 1
        assert all(m >= 0.05 - 1e-12 for m in result.margins)


def test_feasibility_is_monotone_in_margin():
    ladder = [0, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1]
    feasible = [search_ccc_feasible(SearchProblem(WORKED_RATIOS, margin=m)).feasible for m in ladder]
    assert feasible[0]
    assert feasible == sorted(feasible, reverse=True)


def test_affine_model_reproduces_margins():
    model = AffineModel.build(WORKED_RATIOS, exact=True)
    point = [WORKED_INDEPENDENTS[i] for i in INDEPENDENT_INDICES]
    assert tuple(model.margins_at(point)) == (
        Fraction(10663, 100000),
        Fraction(9643, 100000),
        Fraction(172, 10000),
    )


def test_search_problem_validation():
    with pytest.raises(ValueError, match="non-negative"):
        SearchProblem(WORKED_RATIOS, margin=-0.1)


def test_sampler_is_deterministic():
    assert random_nosignaling_sample(3) == random_nosignaling_sample(3)
    assert random_nosignaling_sample(3) != random_nosignaling_sample(4)


@pytest.mark.parametrize("seed", range(100))
def test_sampler_invariants(seed):
    assert_constrained_behavior(random_nosignaling_sample(seed))


def test_sampler_exhausted():
    with pytest.raises(SamplingExhausted) as excinfo:
        random_nosignaling_sample(0, max_draws=0)
    assert excinfo.value.draws == 0
