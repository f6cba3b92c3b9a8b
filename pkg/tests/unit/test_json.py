import pytest
from hamcrest import assert_that, equal_to, has_entries, has_length

from lambek_lke.calculus.frames import L
from lambek_lke.calculus.sequents import parse_sequent
from lambek_lke.json import enforce_dict_type, result_from_json, result_to_json, results_to_json
from lambek_lke.tableau.engine import prove_sequent


def test_result_serializes_its_closures() -> None:
    result = prove_sequent(parse_sequent("NP, (NP\\S)/NP => S/NP"), L)
    payload = result_to_json(result)
    assert_that(payload, has_entries(theorem=True, calculus="L", filtered=False))
    assert_that(result_from_json(payload), equal_to(result))


def test_results_to_json() -> None:
    results = [prove_sequent(parse_sequent(text), L) for text in ("X/Y, Y => X", "Y, X/Y => X")]
    assert_that(results_to_json(results), has_length(2))


def test_enforce_dict_type() -> None:
    assert_that(enforce_dict_type({"theorem": True}), equal_to({"theorem": True}))
    with pytest.raises(ValueError, match="Expected a dict"):
        _ = enforce_dict_type([1, 2])
