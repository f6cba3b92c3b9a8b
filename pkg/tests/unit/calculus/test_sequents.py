import pytest
from hamcrest import assert_that, contains_exactly, equal_to

from lambek_lke.calculus.categories import Atom, over, parse_category, product, under
from lambek_lke.calculus.sequents import (
    Sequent,
    bracketing_product,
    leaves,
    parse_bracketing,
    parse_sequent,
    right_nested,
)
from lambek_lke.errors import CategorySyntaxError

S, NP, X, Y, Z = (Atom(name) for name in ("S", "NP", "X", "Y", "Z"))


def test_parse_sequent() -> None:
    sequent = parse_sequent("NP, (NP\\S)/NP => S/NP")
    assert_that(sequent.antecedents, contains_exactly(NP, over(under(NP, S), NP)))
    assert_that(sequent.succedent, equal_to(over(S, NP)))


def test_render_round_trips() -> None:
    text = "NP, (NP\\S)/NP => S/NP"
    assert_that(parse_sequent(text).render(), equal_to(text))


@pytest.mark.parametrize("text", ["NP S", "NP => S => S", " => S", "NP, , S => S", "NP => "])
def test_parse_sequent_rejects_malformed_text(text: str) -> None:
    with pytest.raises(CategorySyntaxError):
        _ = parse_sequent(text)


def test_sequent_needs_an_antecedent() -> None:
    with pytest.raises(ValueError, match="at least one antecedent"):
        _ = Sequent((), S)


def test_default_structure_is_right_nested() -> None:
    sequent = Sequent((X, Y, Z), S)
    assert_that(sequent.structure, equal_to((X, (Y, Z))))
    assert_that(bracketing_product(sequent.structure), equal_to(product(X, product(Y, Z))))


def test_right_nested_single_antecedent() -> None:
    assert_that(right_nested((X,)), equal_to(X))


def test_parse_bracketing() -> None:
    antecedents = (X, Y, Z)
    bracketing = parse_bracketing("((.. ..) ..)", antecedents)
    assert_that(bracketing, equal_to(((X, Y), Z)))
    assert_that(leaves(bracketing), contains_exactly(X, Y, Z))


def test_bracketing_is_rendered_with_the_sequent() -> None:
    sequent = Sequent((X, Y, Z), S, ((X, Y), Z))
    assert_that(sequent.render(), equal_to("((X, Y), Z) => S"))


@pytest.mark.parametrize("text", ["(.. .. ..)", "(.. ..)", "((.. ..) ..", "(.. x ..)", ".. .. .."])
def test_parse_bracketing_rejects_mismatches(text: str) -> None:
    with pytest.raises(CategorySyntaxError):
        _ = parse_bracketing(text, (X, Y, Z))


def test_bracketing_must_match_antecedents() -> None:
    with pytest.raises(ValueError, match="bracketing"):
        _ = Sequent((X, Y), S, (Y, X))


def test_parse_sequent_accepts_products() -> None:
    assert_that(parse_sequent("X*Y => S").antecedents, contains_exactly(parse_category("X*Y")))
