import argparse
import logging
from typing import Any, Dict, List, Optional, Tuple

from rich import print
from rich.logging import RichHandler

from . import helpers
from .classical_play import payoffs_from_joint
from .equilibrium import ccc_margins, ddd_margins, enumerate_pure_ne, verify_ne
from .errors import (
    ConstraintViolation,
    EprGameError,
    Infeasible,
    NotABehavior,
    SamplingExhausted,
    ZeroConstraintViolated,
)
from .game_model import PLAYERS, PdRatios, classify_generalized_pd
from .probability_model import (
    INDEPENDENT_INDICES,
    check_embedding_zeros,
    check_no_signaling,
    check_normalization,
    complete_from_independent,
    factorizability_certificate,
)
from .quantum_backend import born_joint_probabilities
from .report import emit
from .search import random_nosignaling_sample, search_ccc_feasible
from .settings import Settings, load_settings

logger = logging.getLogger(__name__)

# Domain verdicts that are failures, not bad input.
FAILURES = (
    NotABehavior,
    Infeasible,
    ConstraintViolation,
    ZeroConstraintViolated,
    SamplingExhausted,
)

Outcome = Tuple[str, Dict[str, Any], bool]


def _tol(args: argparse.Namespace, settings: Settings, name: str) -> float:
    return args.tol if args.tol is not None else getattr(settings, name)


def _load_behavior(args, settings, tol: Optional[float] = None):
    """Loads the behavior argument and rejects entries that are not a normalized distribution."""
    tol = settings.constraint if tol is None else tol
    behavior = helpers.load(args.behavior, helpers.behavior_from_content, args.exact, tol)
    normalization = check_normalization(behavior, tol)
    if not normalization.passed:
        raise NotABehavior(normalization.violations)
    return behavior


def _per_player(values) -> Dict[str, Any]:
    return dict(zip(PLAYERS, values))


def _certificate(result) -> Dict[str, Any]:
    witness = None
    if result.witness is not None:
        w = result.witness
        witness = {"index": w.index, "product": w.product, "value": w.value, "deviation": w.deviation}
    return {
        "factorizable": result.factorizable,
        "coins": dict(zip(result.coins.names(), result.coins.values())),
        "witness": witness,
        "max_deviation": result.max_deviation,
        "max_index": result.max_index,
    }


def game_check_pd(args, settings) -> Outcome:
    game = helpers.load(args.game, helpers.game_from_content, args.exact, _tol(args, settings, "symmetry"))
    report = classify_generalized_pd(game)
    payload = {
        "game": dict(zip(helpers.GAME_KEYS, game.constants())),
        "generalized_pd": report.is_generalized_pd,
        "conditions": {
            "a": report.condition_a,
            "b": report.condition_b,
            "c": report.condition_c,
        },
        "violated": report.violated_inequalities,
    }
    try:
        ratios = PdRatios.from_game(game)
        payload["ratios"] = dict(zip(ratios.names(), ratios.values()))
        payload["ratios_below_one"] = ratios.all_below_one()
    except ValueError as e:
        logger.debug(f"No ratio form: {e}")
    return "Game classification", payload, report.is_generalized_pd


def payoff(args, settings) -> Outcome:
    game = helpers.load(args.game, helpers.game_from_content, args.exact, settings.symmetry)
    behavior = _load_behavior(args, settings, _tol(args, settings, "constraint"))
    m = helpers.parse_profile(args.profile, args.exact)
    payload = {
        "profile": list(m.values()),
        "payoffs": _per_player(payoffs_from_joint(game, behavior, m)),
    }
    return "Payoffs", payload, True


def probs_check(args, settings) -> Outcome:
    tol = _tol(args, settings, "constraint")
    behavior = helpers.load(args.behavior, helpers.behavior_from_content, args.exact, tol)
    normalization = check_normalization(behavior, tol)
    no_signaling = check_no_signaling(behavior, tol)
    payload = {
        "normalization": normalization,
        "no_signaling": no_signaling,
        "embedding_zeros": check_embedding_zeros(behavior, tol),
        "passed": normalization.passed and no_signaling.passed,
    }
    return "Behavior checks", payload, payload["passed"]


def probs_factorize(args, settings) -> Outcome:
    tol = _tol(args, settings, "factorization")
    behavior = helpers.load(args.behavior, helpers.behavior_from_content, args.exact, settings.constraint)
    result = factorizability_certificate(behavior, tol)
    return "Factorizability", _certificate(result), result.factorizable


def probs_complete(args, settings) -> Outcome:
    content = helpers.read_json_file(args.independents, "independent")
    if isinstance(content, dict) and "independent" in content:
        content = content["independent"]
    independents = helpers.independents_from_content(content, args.exact)
    behavior = complete_from_independent(independents, _tol(args, settings, "constraint"))
    completed = {
        f"p{i}": value
        for i, value in enumerate(behavior.values, start=1)
        if i not in INDEPENDENT_INDICES and value != 0
    }
    payload = {
        "independent": helpers.independents_to_content(independents),
        "completed": completed,
        "p": list(behavior.values),
    }
    return "Completed behavior", payload, True


def probs_sample(args, settings) -> Outcome:
    behavior = random_nosignaling_sample(
        args.seed, settings.sampler_draws, _tol(args, settings, "constraint")
    )
    return "Sampled behavior", {"seed": args.seed, "p": list(behavior.values)}, True


def ne_verify(args, settings) -> Outcome:
    game = helpers.load(args.game, helpers.game_from_content, args.exact, settings.symmetry)
    behavior = _load_behavior(args, settings)
    m = helpers.parse_profile(args.profile, args.exact)
    verdict = verify_ne(game, behavior, m, _tol(args, settings, "ne"))
    payload = {
        "profile": list(m.values()),
        "is_ne": verdict.is_ne,
        "margins": _per_player(verdict.margins),
        "deviations": _per_player(verdict.deviations),
    }
    return "Nash equilibrium check", payload, verdict.is_ne


def ne_enumerate(args, settings) -> Outcome:
    game = helpers.load(args.game, helpers.game_from_content, args.exact, settings.symmetry)
    behavior = _load_behavior(args, settings)
    found = enumerate_pure_ne(game, behavior, _tol(args, settings, "ne"))
    return "Pure equilibria", {"equilibria": [list(m.values()) for m in found]}, True


def ne_ccc_margins(args, settings) -> Outcome:
    ratios = helpers.load(args.ratios, helpers.ratios_from_content, args.exact)
    behavior = helpers.load(args.behavior, helpers.behavior_from_content, args.exact, settings.constraint)
    margins = ccc_margins(ratios, behavior, _tol(args, settings, "constraint"))
    is_ne = all(margin >= -settings.ne for margin in margins)
    payload = {"margins": _per_player(margins), "is_ne": is_ne}
    return "(C,C,C) margins", payload, is_ne


def ne_ddd_margins(args, settings) -> Outcome:
    game = helpers.load(args.game, helpers.game_from_content, args.exact, settings.symmetry)
    behavior = helpers.load(args.behavior, helpers.behavior_from_content, args.exact, settings.constraint)
    m = helpers.parse_profile(args.profile, args.exact)
    margins = ddd_margins(game, behavior, m, _tol(args, settings, "constraint"))
    is_ne = all(margin >= -settings.ne for margin in margins)
    payload = {"profile": list(m.values()), "margins": _per_player(margins), "is_ne": is_ne}
    return "(D,D,D) margins", payload, is_ne


def quantum_generate(args, settings) -> Outcome:
    state = helpers.load(args.state, helpers.state_from_content)
    setup = helpers.load(args.setup, helpers.setup_from_content)
    tol = _tol(args, settings, "quantum")
    behavior = born_joint_probabilities(state, setup, tol)
    normalization = check_normalization(behavior, tol)
    no_signaling = check_no_signaling(behavior, tol)
    payload = {
        "normalization": normalization,
        "no_signaling": no_signaling,
        "factorizable": factorizability_certificate(behavior, settings.factorization).factorizable,
        "p": list(behavior.values),
    }
    return "Quantum behavior", payload, normalization.passed and no_signaling.passed


def search_ccc(args, settings) -> Outcome:
    problem = helpers.load(args.problem, helpers.problem_from_content, args.exact)
    result = search_ccc_feasible(
        problem,
        exact=args.exact,
        seed=args.seed,
        retries=settings.retries,
        constraint_tol=_tol(args, settings, "constraint"),
        factorization_tol=settings.factorization,
    )
    payload = {"feasible": result.feasible, "attempts": result.attempts}
    if result.feasible:
        payload.update(
            {
                "margins": _per_player(result.margins),
                "independent": helpers.independents_to_content(result.independents),
                "certificate": _certificate(result.certificate),
                "p": list(result.behavior.values),
            }
        )
    else:
        payload["reason"] = result.reason
    return "(C,C,C) search", payload, result.feasible


def run(args: argparse.Namespace) -> int:
    try:
        settings = load_settings(args.config)
        title, payload, passed = args.func(args, settings)
    except FAILURES as e:
        print(f"[red]Error: {e}[/red]")
        return 1
    except (EprGameError, ValueError) as e:
        print(f"[red]Error: {e}[/red]")
        return 2

    try:
        emit(title, payload, args.format, args.output)
    except OSError as e:
        print(f"[red]Error: cannot write {e.filename}: {e.strerror}[/red]")
        return 2
    return 0 if passed else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML file overriding tolerances and search bounds")
    common.add_argument("--tol", type=float, help="Override the command's primary tolerance")
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--exact", action="store_true", help="Use exact rational arithmetic")
    common.add_argument("--output", help="Also write the JSON report to this path")
    common.add_argument("--verbose", action="store_true", help="Enable debug logging")

    parser = argparse.ArgumentParser(
        prog="eprgame",
        description="Three-player games played over EPR-style joint probabilities",
    )
    subparsers = parser.add_subparsers(dest="command")

    def command(group, name, func, summary, *positionals):
        sub = group.add_parser(name, help=summary, parents=[common])
        for positional, positional_help in positionals:
            sub.add_argument(positional, help=positional_help)
        sub.set_defaults(func=func)
        return sub

    game_parser = subparsers.add_parser("game", help="Payoff table commands")
    game = game_parser.add_subparsers(dest="action", required=True)
    command(game, "check-pd", game_check_pd, "Classify a game as a generalized PD",
            ("game", "Game JSON file"))

    payoff_parser = command(subparsers, "payoff", payoff, "Mixed-strategy payoffs over a behavior",
                            ("game", "Game JSON file"), ("behavior", "Behavior or coins JSON file"))
    payoff_parser.add_argument("--profile", required=True, help="x,y,z")

    probs_parser = subparsers.add_parser("probs", help="Joint probability commands")
    probs = probs_parser.add_subparsers(dest="action", required=True)
    command(probs, "check", probs_check, "Normalization, no-signaling and zero constraints",
            ("behavior", "Behavior JSON file"))
    command(probs, "factorize", probs_factorize, "Factorizability certificate",
            ("behavior", "Behavior JSON file"))
    command(probs, "complete", probs_complete, "Complete a behavior from ten independents",
            ("independents", "Independents JSON file"))
    sample = command(probs, "sample", probs_sample, "Random zero-constrained no-signaling behavior")
    sample.add_argument("--seed", type=int, default=0)

    ne_parser = subparsers.add_parser("ne", help="Nash equilibrium commands")
    ne = ne_parser.add_subparsers(dest="action", required=True)
    verify = command(ne, "verify", ne_verify, "Check a profile for equilibrium",
                     ("game", "Game JSON file"), ("behavior", "Behavior JSON file"))
    verify.add_argument("--profile", required=True, help="x,y,z")
    command(ne, "enumerate", ne_enumerate, "List pure equilibria",
            ("game", "Game JSON file"), ("behavior", "Behavior JSON file"))
    command(ne, "ccc-margins", ne_ccc_margins, "(C,C,C) equilibrium margins from ratios",
            ("ratios", "Ratios JSON file"), ("behavior", "Behavior JSON file"))
    ddd = command(ne, "ddd-margins", ne_ddd_margins, "(D,D,D) deviation losses",
                  ("game", "Game JSON file"), ("behavior", "Behavior JSON file"))
    ddd.add_argument("--profile", default="1,1,1", help="x,y,z deviation probabilities")

    quantum_parser = subparsers.add_parser("quantum", help="Quantum backend commands")
    quantum = quantum_parser.add_subparsers(dest="action", required=True)
    command(quantum, "generate", quantum_generate, "Born-rule behavior of a state and setup",
            ("state", "State JSON file"), ("setup", "Setup JSON file"))

    search_parser = subparsers.add_parser("search", help="Behavior search commands")
    search = search_parser.add_subparsers(dest="action", required=True)
    ccc = command(search, "ccc", search_ccc, "Find a behavior making (C,C,C) an equilibrium",
                  ("problem", "Problem JSON file"))
    ccc.add_argument("--seed", type=int, default=0)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code

    if not hasattr(args, "func"):
        parser.print_help()
        return 2

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(show_path=False)],
    )
    return run(args)


if __name__ == "__main__":
    raise SystemExit(main())
