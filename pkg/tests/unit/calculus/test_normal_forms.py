import pytest
from hamcrest import assert_that, contains_exactly, equal_to, is_
from hypothesis import given

from lambek_lke.calculus.frames import LP, NL, CalculusSpec, L
from lambek_lke.calculus.labels import IDENTITY, Comp, Ground, LeftRes, RightRes, Token
from lambek_lke.calculus.normal_forms import (
    canonical,
    chain,
    from_chain,
    has_redex,
    normalize,
    sub_multisets,
)
from lambek_lke.errors import LimitExceededError
from tests.helpers.strategies import ground_tokens, presets

A, B, C, M = Ground("a"), Ground("b"), Ground("c"), Ground("m")


def test_chain_flattens_only_in_associative_frames() -> None:
    token = Comp(Comp(A, B), C)
    assert_that(chain(token, L), contains_exactly(A, B, C))
    assert_that(chain(token, NL), contains_exactly(token))
    assert_that(chain(IDENTITY, L), equal_to(()))


def test_from_chain_is_right_nested() -> None:
    assert_that(from_chain((A, B, C)), equal_to(Comp(A, Comp(B, C))))
    assert_that(from_chain(()), equal_to(IDENTITY))


def test_canonical_rebrackets_to_the_right() -> None:
    assert_that(canonical(Comp(Comp(A, B), C), L), equal_to(Comp(A, Comp(B, C))))


def test_canonical_keeps_brackets_without_associativity() -> None:
    token = Comp(Comp(A, B), C)
    assert_that(canonical(token, NL), equal_to(token))


def test_canonical_sorts_commutative_chains() -> None:
    assert_that(canonical(Comp(C, Comp(A, B)), LP), equal_to(Comp(A, Comp(B, C))))


def test_canonical_merges_stacked_right_residuals() -> None:
    assert_that(canonical(RightRes(RightRes(M, A), B), L), equal_to(RightRes(M, Comp(A, B))))


def test_canonical_turns_left_residuals_right_when_commutative() -> None:
    assert_that(canonical(LeftRes(M, A), LP), equal_to(RightRes(M, A)))


def test_canonical_drops_unit_denominators() -> None:
    assert_that(canonical(RightRes(M, IDENTITY), NL), equal_to(M))


def test_canonical_reports_exhausted_pass_limit() -> None:
    with pytest.raises(LimitExceededError):
        _ = canonical(Comp(Comp(Comp(A, B), C), M), L, depth=1)


def test_normalize_unit_law() -> None:
    assert_that(normalize(Comp(IDENTITY, M), L), equal_to(M))


def test_normalize_cancels_after_rebracketing() -> None:
    """Test the residual meets its denominator once the chain is flattened."""
    assert_that(normalize(Comp(A, RightRes(M, A)), L), equal_to(M))
    assert_that(normalize(Comp(Comp(A, RightRes(M, A)), B), L), equal_to(Comp(M, B)))


def test_normalize_composition_example() -> None:
    token = Comp(Comp(B, A), RightRes(M, A))
    assert_that(normalize(token, L), equal_to(Comp(B, M)))


def test_normalize_cancels_left_residuals() -> None:
    assert_that(normalize(Comp(LeftRes(M, A), A), NL), equal_to(M))


def test_normalize_needs_adjacent_denominator() -> None:
    token = Comp(RightRes(M, A), A)
    assert_that(normalize(token, L), equal_to(token))
    assert_that(normalize(token, LP), equal_to(M))


def test_has_redex() -> None:
    assert_that(has_redex(Comp(A, Comp(RightRes(M, A), B)), L), is_(True))
    assert_that(has_redex(Comp(B, Comp(RightRes(M, A), B)), L), is_(False))


@given(token=ground_tokens(), spec=presets())
def test_normalize_is_idempotent(token: Token, spec: CalculusSpec) -> None:
    once = normalize(token, spec)
    assert_that(normalize(once, spec), equal_to(once))


def test_sub_multisets_smallest_first_without_duplicates() -> None:
    splits = sub_multisets((A, A, B))
    assert_that(
        [picked for picked, _ in splits],
        contains_exactly((), (A,), (B,), (A, A), (A, B), (A, A, B)),
    )
    assert_that(splits[1], equal_to(((A,), (A, B))))
