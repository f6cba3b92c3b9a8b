import pytest
from hamcrest import assert_that, contains_exactly, equal_to, is_
from hypothesis import given

from lambek_lke.calculus.labels import (
    IDENTITY,
    Comp,
    Ground,
    LeftRes,
    RightRes,
    Token,
    Var,
    compose,
    grounds,
    is_ground,
    leaf_count,
    left_residual,
    render_token,
    right_residual,
    substitute,
    variables,
    weight,
)
from lambek_lke.errors import CategorySyntaxError
from tests.helpers.strategies import ground_tokens
from tests.helpers.tokens import parse_token

A, B, M = Ground("a"), Ground("b"), Ground("m")


@pytest.mark.parametrize(("x", "y", "expected"), [(IDENTITY, M, M), (M, IDENTITY, M), (A, B, Comp(A, B))])
def test_compose_applies_only_unit_laws(x: Token, y: Token, expected: Token) -> None:
    assert_that(compose(x, y), equal_to(expected))


def test_residuals_stay_symbolic() -> None:
    assert_that(right_residual(M, A), equal_to(RightRes(M, A)))
    assert_that(left_residual(M, A), equal_to(LeftRes(M, A)))


@pytest.mark.parametrize(
    ("token", "rendered"),
    [
        (IDENTITY, "1"),
        (RightRes(M, A), "m<|a"),
        (Comp(RightRes(M, A), B), "(m<|a).b"),
        (Comp(A, Comp(RightRes(M, A), B)), "a.((m<|a).b)"),
        (LeftRes(Comp(M, B), A), "(m.b)|>a"),
    ],
)
def test_render_token(token: Token, rendered: str) -> None:
    assert_that(render_token(token), equal_to(rendered))


@given(token=ground_tokens())
def test_parse_token_round_trips(token: Token) -> None:
    assert_that(parse_token(render_token(token)), equal_to(token))


def test_parse_token_reads_variables() -> None:
    assert_that(parse_token("v1.a"), equal_to(Comp(Var("v1"), A)))


def test_parse_token_chains_associate_left() -> None:
    assert_that(parse_token("a.b.m"), equal_to(Comp(Comp(A, B), M)))


@pytest.mark.parametrize("text", ["", "a.", "(a.b", "a b", "a#b"])
def test_parse_token_rejects_malformed_text(text: str) -> None:
    with pytest.raises(CategorySyntaxError):
        _ = parse_token(text)


def test_variables_and_grounds() -> None:
    token = Comp(Var("v1"), RightRes(M, Comp(A, Var("v1"))))
    assert_that(variables(token), contains_exactly(Var("v1")))
    assert_that(grounds(token), contains_exactly(M, A))
    assert_that(is_ground(token), is_(False))


def test_substitute_reapplies_unit_laws() -> None:
    token = Comp(Var("v1"), A)
    assert_that(substitute(token, {"v1": IDENTITY}), equal_to(A))
    assert_that(substitute(token, {"v1": M}), equal_to(Comp(M, A)))


@pytest.mark.parametrize(
    ("token", "expected"),
    [(IDENTITY, 0), (A, 1), (Comp(A, B), 2), (Comp(RightRes(M, A), B), 2)],
)
def test_weight(token: Token, expected: int) -> None:
    assert_that(weight(token), equal_to(expected))


def test_leaf_count_looks_inside_residuals() -> None:
    token = Comp(A, Comp(RightRes(M, A), B))
    assert_that(leaf_count(token), equal_to(4))
    assert_that(weight(token), equal_to(3))
    assert_that(leaf_count(IDENTITY), equal_to(0))
