import json
import logging
from fractions import Fraction
from typing import Any, Dict, Mapping

from .classical_play import MixedProfile
from .errors import InputError
from .game_model import (
    GeneralThreePlayerGame,
    Number,
    PdRatios,
    SymmetricGame,
    reduce_to_symmetric,
)
from .probability_model import (
    INDEPENDENT_INDICES,
    CoinParameters,
    JointProbabilitySet,
    complete_from_independent,
    expand_factorizable,
)
from .quantum_backend import MeasurementSetup, TripartiteState, direction_from_angles
from .search import SearchProblem

logger = logging.getLogger(__name__)

GAME_KEYS = ("alpha", "beta", "delta", "epsilon", "theta", "omega")


def read_json_file(file_path: str, field: str = "file") -> Any:
    logger.debug(f"Attempting to read JSON file: {file_path}")
    try:
        with open(file_path, "r", encoding="utf-8") as file:
            content = json.load(file)
    except FileNotFoundError:
        raise InputError(f"File not found: {file_path}", field=field)
    except OSError as e:
        raise InputError(f"Cannot read {file_path}: {e.strerror}", field=field)
    except json.JSONDecodeError as e:
        raise InputError(f"Error parsing JSON file {file_path}: {e}", field=field)
    logger.debug(f"Successfully loaded JSON from {file_path}")
    return content


def _mapping(content: Any, field: str) -> Dict[str, Any]:
    if not isinstance(content, dict):
        raise InputError(
            f"expected an object, got {type(content).__name__}", field=field
        )
    return content


def parse_number(value: Any, field: str, exact: bool = False) -> Number:
    """
    Accepts JSON numbers and rational or decimal strings such as "7/50".
    Exact mode keeps the decimal value the file spells out.
    """
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise InputError(f"expected a number, got {value!r}", field=field)
    try:
        number = Fraction(value if isinstance(value, (int, str)) else repr(value))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot read {value!r} as a number", field=field)
    return number if exact else float(number)


def parse_profile(text: str, exact: bool = False) -> MixedProfile:
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != 3:
        raise InputError(f"expected x,y,z, got '{text}'", field="profile")
    values = [parse_number(part, f"profile[{i}]", exact) for i, part in enumerate(parts)]
    try:
        return MixedProfile(*values)
    except ValueError as e:
        raise InputError(str(e), field="profile")


def game_from_content(
    content: Any, exact: bool = False, tol: float = 1e-12
) -> SymmetricGame:
    content = _mapping(content, "game")
    if "table" in content:
        table = content["table"]
        if not isinstance(table, list):
            raise InputError("expected a list of 8 payoff triples", field="table")
        rows = []
        for i, row in enumerate(table, start=1):
            if not isinstance(row, list):
                raise InputError("expected a payoff triple", field=f"table[{i}]")
            rows.append([parse_number(v, f"table[{i}]", exact) for v in row])
        try:
            general = GeneralThreePlayerGame(tuple(rows))
        except ValueError as e:
            raise InputError(str(e), field="table")
        return reduce_to_symmetric(general, tol)

    missing = [key for key in GAME_KEYS if key not in content]
    if missing:
        raise InputError(f"missing payoff constants {missing}", field="game")
    return SymmetricGame(*(parse_number(content[key], key, exact) for key in GAME_KEYS))


def ratios_from_content(content: Any, exact: bool = False) -> PdRatios:
    content = _mapping(content, "ratios")
    if "ratios" in content:
        content = _mapping(content["ratios"], "ratios")
    missing = [key for key in PdRatios.names() if key not in content]
    if missing:
        raise InputError(f"missing ratios {missing}", field="ratios")
    return PdRatios(
        *(parse_number(content[key], f"ratios.{key}", exact) for key in PdRatios.names())
    )


def coins_from_content(content: Any, exact: bool = False) -> CoinParameters:
    content = _mapping(content, "coins")
    if "coins" in content:
        content = _mapping(content["coins"], "coins")
    missing = [key for key in CoinParameters.names() if key not in content]
    if missing:
        raise InputError(f"missing coin parameters {missing}", field="coins")
    values = [parse_number(content[key], f"coins.{key}", exact) for key in CoinParameters.names()]
    try:
        return CoinParameters(*values)
    except ValueError as e:
        raise InputError(str(e), field="coins")


def independents_from_content(
    content: Any, exact: bool = False, field: str = "independent"
) -> Dict[int, Number]:
    content = _mapping(content, field)
    result = {}
    for index in INDEPENDENT_INDICES:
        key = f"p{index}"
        if key not in content:
            raise InputError(f"missing {key}", field=field)
        result[index] = parse_number(content[key], f"{field}.{key}", exact)
        if not 0 <= result[index] <= 1:
            raise InputError(f"{key} must lie in [0, 1]", field=field)
    unknown = sorted(set(content) - {f"p{i}" for i in INDEPENDENT_INDICES})
    if unknown:
        raise InputError(f"unknown keys {unknown}", field=field)
    return result


def behavior_from_content(
    content: Any, exact: bool = False, tol: float = 1e-12
) -> JointProbabilitySet:
    """
    A behavior document is {"p": [64 values]}, {"independent": {...}} or a
    coin-parameter object, which is expanded to its product behavior.
    """
    content = _mapping(content, "behavior")
    if "p" in content:
        values = content["p"]
        if not isinstance(values, list) or len(values) != 64:
            raise InputError("expected a list of 64 probabilities", field="p")
        return JointProbabilitySet(
            tuple(parse_number(v, f"p[{i}]", exact) for i, v in enumerate(values, start=1))
        )
    if "independent" in content:
        return complete_from_independent(
            independents_from_content(content["independent"], exact), tol
        )
    if "coins" in content or "r" in content:
        return expand_factorizable(coins_from_content(content, exact))
    raise InputError("expected one of 'p', 'independent' or coin parameters", field="behavior")


def _complex(value: Any, field: str) -> complex:
    if isinstance(value, list) and len(value) == 2:
        return complex(parse_number(value[0], field), parse_number(value[1], field))
    return complex(parse_number(value, field))


def state_from_content(content: Any) -> TripartiteState:
    content = _mapping(content, "state")
    if "pure" in content:
        amplitudes = content["pure"]
        if not isinstance(amplitudes, list):
            raise InputError("expected a list of 8 amplitudes", field="pure")
        return TripartiteState.pure(
            [_complex(v, f"pure[{i}]") for i, v in enumerate(amplitudes)]
        )
    if "density" in content:
        matrix = content["density"]
        if not isinstance(matrix, list) or not all(isinstance(row, list) for row in matrix):
            raise InputError("expected an 8x8 matrix", field="density")
        return TripartiteState.density(
            [
                [_complex(v, f"density[{i}][{j}]") for j, v in enumerate(row)]
                for i, row in enumerate(matrix)
            ]
        )
    raise InputError("expected 'pure' or 'density'", field="state")


def setup_from_content(content: Any) -> MeasurementSetup:
    """
    Each player maps to two directions, given either as unit 3-vectors
    [x, y, z] or as spherical angles [theta, phi].
    """
    content = _mapping(content, "setup")
    vectors = []
    for player in ("alice", "bob", "chris"):
        pair = content.get(player)
        if not isinstance(pair, list) or len(pair) != 2:
            raise InputError("expected two directions", field=player)
        directions = []
        for setting, entry in enumerate(pair, start=1):
            field = f"{player}[{setting}]"
            if not isinstance(entry, list) or len(entry) not in (2, 3):
                raise InputError("expected [x, y, z] or [theta, phi]", field=field)
            numbers = [parse_number(v, field) for v in entry]
            if len(numbers) == 2:
                numbers = list(direction_from_angles(*numbers))
            directions.append(numbers)
        vectors.append(directions)
    return MeasurementSetup.from_vectors(*vectors)


def problem_from_content(content: Any, exact: bool = False) -> SearchProblem:
    content = _mapping(content, "problem")
    if "ratios" not in content:
        raise InputError("missing 'ratios'", field="problem")
    require = content.get("require_nonfactorizable", False)
    if not isinstance(require, bool):
        raise InputError("expected true or false", field="require_nonfactorizable")
    warm_start = None
    if "warm_start" in content:
        warm_start = independents_from_content(content["warm_start"], exact, "warm_start")
    margin = parse_number(content.get("margin", 0), "margin", exact)
    try:
        return SearchProblem(ratios_from_content(content["ratios"], exact), margin, require, warm_start)
    except ValueError as e:
        raise InputError(str(e), field="problem")


def load(file_path: str, parse, *args, **kwargs):
    """Reads a JSON document and hands it to one of the *_from_content parsers."""
    return parse(read_json_file(file_path), *args, **kwargs)


def independents_to_content(independents: Mapping[int, Number]) -> Dict[str, Number]:
    return {f"p{i}": independents[i] for i in sorted(independents)}
