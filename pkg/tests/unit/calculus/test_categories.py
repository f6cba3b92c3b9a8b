import pytest
from hamcrest import assert_that, contains_exactly, equal_to, has_item, less_than_or_equal_to
from hypothesis import given

from lambek_lke.calculus.categories import (
    Atom,
    Category,
    Compound,
    Connective,
    Polarity,
    atom_count,
    atoms,
    over,
    parse_category,
    product,
    render_category,
    size,
    subformulae,
    under,
)
from lambek_lke.errors import CategorySyntaxError
from tests.helpers.strategies import categories

S, NP = Atom("S"), Atom("NP")


def test_parse_transitive_verb() -> None:
    """Test the verb category of the worked example parses to an over of an under."""
    assert_that(parse_category("(NP\\S)/NP"), equal_to(over(under(NP, S), NP)))


def test_parse_atom() -> None:
    assert_that(parse_category("S"), equal_to(S))


def test_single_operator_chain_associates_left() -> None:
    assert_that(parse_category("S/NP/NP"), equal_to(over(over(S, NP), NP)))


@pytest.mark.parametrize("text", ["NP*S", "NP•S"])
def test_product_spellings(text: str) -> None:
    assert_that(parse_category(text), equal_to(product(NP, S)))


@pytest.mark.parametrize("text", ["", "   ", "(S/NP", "S/NP)", "NP\\S/NP", "S/", "/S", "S$NP", "()"])
def test_parse_rejects_malformed_text(text: str) -> None:
    """Test unbalanced parentheses, mixed operators and stray characters are syntax errors."""
    with pytest.raises(CategorySyntaxError):
        _ = parse_category(text)


def test_syntax_error_is_a_syntax_error() -> None:
    with pytest.raises(SyntaxError):
        _ = parse_category("S/(NP")


def test_atom_names_are_validated() -> None:
    with pytest.raises(CategorySyntaxError):
        _ = Atom("1NP")


@pytest.mark.parametrize(
    ("category", "rendered"),
    [
        (over(under(NP, S), NP), "(NP\\S)/NP"),
        (under(NP, over(S, NP)), "NP\\(S/NP)"),
        (over(over(S, NP), NP), "S/NP/NP"),
        (over(S, over(S, NP)), "S/(S/NP)"),
        (product(NP, over(under(NP, S), NP)), "NP*((NP\\S)/NP)"),
    ],
)
def test_render_uses_minimal_parentheses(category: Category, rendered: str) -> None:
    assert_that(render_category(category), equal_to(rendered))


@given(category=categories())
def test_render_round_trips(category: Category) -> None:
    assert_that(parse_category(render_category(category)), equal_to(category))


def test_subformulae_of_atom() -> None:
    assert_that(subformulae(S), contains_exactly(S))


def test_subformulae_of_one_connective() -> None:
    assert_that(subformulae(over(S, NP)), contains_exactly(NP, S, over(S, NP)))


def test_subformulae_collapse_duplicates() -> None:
    verb = over(under(NP, S), NP)
    assert_that(subformulae(verb), contains_exactly(NP, S, under(NP, S), verb))


@given(category=categories())
def test_subformulae_bounded_and_contain_category(category: Category) -> None:
    found = subformulae(category)
    assert_that(found, has_item(category))
    assert_that(len(found), less_than_or_equal_to(2 * size(category) - 1))


@pytest.mark.parametrize(
    ("category", "atom", "count"),
    [
        (over(S, NP), S, 1),
        (over(S, NP), NP, -1),
        (over(under(NP, S), NP), NP, -2),
        (S, S, 1),
        (under(over(S, S), S), S, 1),
    ],
)
def test_atom_count(category: Category, atom: Atom, count: int) -> None:
    assert_that(atom_count(category, atom), equal_to(count))


def test_atom_count_negative_polarity() -> None:
    assert_that(atom_count(S, S, Polarity.NEGATIVE), equal_to(-1))


@given(left=categories(4), right=categories(4))
def test_atom_count_is_additive_over_products(left: Category, right: Category) -> None:
    for atom in (S, NP):
        assert_that(
            atom_count(Compound(Connective.PRODUCT, left, right), atom),
            equal_to(atom_count(left, atom) + atom_count(right, atom)),
        )


def test_atoms_in_order_of_first_occurrence() -> None:
    assert_that(atoms(over(under(NP, S), NP)), contains_exactly(NP, S))
