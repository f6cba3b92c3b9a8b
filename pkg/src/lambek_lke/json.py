from collections.abc import Iterable

from seriacade.implementations.pydantic import PydanticJsonCodec
from seriacade.json.types import JsonType

from lambek_lke.tableau.results import ProofResult

_RESULT_CODEC = PydanticJsonCodec(model_type=ProofResult)


def enforce_dict_type(value: JsonType) -> dict[str, JsonType]:
    """Helper that enforces the python json representation to be a json object (ie. a dict).

    Args:
        value (JsonType): The Python representation of a JSON object.

    Raises:
        ValueError: If the provided Python object is not a dict.

    Returns:
        dict[str, JsonType]: The Python object if it is a dict.
    """
    match value:
        case dict():
            return value
        case _:
            err_msg = f"Expected a dict but got {type(value)}"
            raise ValueError(err_msg)


def result_to_json(result: ProofResult) -> dict[str, JsonType]:
    """Converts a proof result to its JSON object."""
    return enforce_dict_type(_RESULT_CODEC.convert_to_json(result))


def result_from_json(value: JsonType) -> ProofResult:
    """Reads a proof result back from its JSON object.

    Raises:
        ValueError: If ``value`` is not a JSON object.
    """
    return _RESULT_CODEC.convert_from_json(enforce_dict_type(value))


def results_to_json(results: Iterable[ProofResult]) -> list[JsonType]:
    """Converts several results to one JSON list, as printed for batch runs."""
    return [result_to_json(result) for result in results]
