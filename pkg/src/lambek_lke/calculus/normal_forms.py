"""Calculus-relative canonical and normal forms of tokens.

``canonical`` only applies equalities of the frame (unit laws, re-bracketing, operand order, merging of
stacked residuals), so a token and its canonical form are interchangeable everywhere. ``normalize``
additionally cancels a residual against its denominator (``y.(x<|y)`` becomes ``x``), which moves up in
the order and is therefore only used to produce candidate tokens and readable summaries.
"""

from collections.abc import Sequence
from itertools import combinations
from typing import assert_never

from lambek_lke.calculus.frames import CalculusSpec
from lambek_lke.calculus.labels import (
    IDENTITY,
    Comp,
    Ground,
    Identity,
    LeftRes,
    RightRes,
    Token,
    Var,
    compose,
    token_sort_key,
)
from lambek_lke.errors import LimitExceededError

DEFAULT_DEPTH = 32


def chain(token: Token, spec: CalculusSpec) -> tuple[Token, ...]:
    """The operands of a composition chain.

    Associative frames flatten nested compositions, others keep the token whole. ``1`` is the empty chain.
    """
    match token:
        case Identity():
            return ()
        case Comp(left=left, right=right) if spec.associative:
            return chain(left, spec) + chain(right, spec)
        case _:
            return (token,)


def from_chain(elements: Sequence[Token]) -> Token:
    """Right-nested composition of ``elements``; the empty chain is ``1``."""
    token: Token = IDENTITY
    for element in reversed(elements):
        token = compose(element, token)
    return token


def sort_tokens(elements: Sequence[Token]) -> tuple[Token, ...]:
    """Puts the elements of a commutative chain in their fixed order."""
    return tuple(sorted(elements, key=token_sort_key))


def _canonical_once(token: Token, spec: CalculusSpec) -> Token:
    match token:
        case Identity() | Ground() | Var():
            return token
        case Comp(left=left, right=right):
            joined = compose(_canonical_once(left, spec), _canonical_once(right, spec))
            if spec.associative:
                elements = chain(joined, spec)
                return from_chain(sort_tokens(elements) if spec.commutative else elements)
            if spec.commutative and isinstance(joined, Comp):
                first, second = sort_tokens((joined.left, joined.right))
                return Comp(first, second)
            return joined
        case RightRes(num=num, den=den):
            return _canonical_residual(_canonical_once(num, spec), _canonical_once(den, spec), spec, right=True)
        case LeftRes(num=num, den=den):
            return _canonical_residual(
                _canonical_once(num, spec), _canonical_once(den, spec), spec, right=spec.commutative
            )
        case _:
            assert_never(token)


def _canonical_residual(num: Token, den: Token, spec: CalculusSpec, *, right: bool) -> Token:
    if isinstance(den, Identity):
        return num
    if right:
        if spec.associative and isinstance(num, RightRes):
            return RightRes(num.num, compose(num.den, den))
        return RightRes(num, den)
    if spec.associative and isinstance(num, LeftRes):
        return LeftRes(num.num, compose(den, num.den))
    return LeftRes(num, den)


def canonical(token: Token, spec: CalculusSpec, depth: int = DEFAULT_DEPTH) -> Token:
    """Rewrites a token with the frame's equalities until nothing changes.

    Args:
        token (Token): The token to rewrite.
        spec (CalculusSpec): The frame whose equalities apply.
        depth (int): Maximum number of rewrite passes.

    Raises:
        LimitExceededError: If no fixed point is reached within ``depth`` passes.

    Returns:
        Token: The canonical form.
    """
    current = token
    for _ in range(depth):
        rewritten = _canonical_once(current, spec)
        if rewritten == current:
            return current
        current = rewritten
    err_msg = f"Token {current} has no canonical form within {depth} passes"
    raise LimitExceededError(err_msg)


def _cancel_in_chain(elements: tuple[Token, ...], spec: CalculusSpec) -> tuple[Token, ...] | None:
    for index, element in enumerate(elements):
        match element:
            case RightRes(num=num, den=den):
                wanted = chain(den, spec)
                if spec.commutative:
                    remaining = _remove_all(elements[:index] + elements[index + 1 :], wanted)
                    if remaining is not None:
                        return remaining + chain(num, spec)
                elif index >= len(wanted) and elements[index - len(wanted) : index] == wanted:
                    return elements[: index - len(wanted)] + chain(num, spec) + elements[index + 1 :]
            case LeftRes(num=num, den=den):
                wanted = chain(den, spec)
                end = index + 1 + len(wanted)
                if elements[index + 1 : end] == wanted:
                    return elements[:index] + chain(num, spec) + elements[end:]
            case _:
                pass
    return None


def _remove_all(elements: tuple[Token, ...], wanted: tuple[Token, ...]) -> tuple[Token, ...] | None:
    remaining = list(elements)
    for item in wanted:
        if item not in remaining:
            return None
        remaining.remove(item)
    return tuple(remaining)


def _cancel_pair(left: Token, right: Token) -> Token | None:
    match right:
        case RightRes(num=num, den=den) if den == left:
            return num
        case _:
            pass
    match left:
        case LeftRes(num=num, den=den) if den == right:
            return num
        case _:
            return None


def _reduce_once(token: Token, spec: CalculusSpec) -> Token | None:  # noqa: PLR0911
    match token:
        case Identity() | Ground() | Var():
            return None
        case Comp() if spec.associative:
            elements = chain(token, spec)
            for index, element in enumerate(elements):
                reduced = _reduce_once(element, spec)
                if reduced is not None:
                    return from_chain((*elements[:index], reduced, *elements[index + 1 :]))
            cancelled = _cancel_in_chain(elements, spec)
            return None if cancelled is None else from_chain(cancelled)
        case Comp(left=left, right=right):
            if (reduced := _reduce_once(left, spec)) is not None:
                return compose(reduced, right)
            if (reduced := _reduce_once(right, spec)) is not None:
                return compose(left, reduced)
            cancelled = _cancel_pair(left, right)
            if cancelled is None and spec.commutative:
                cancelled = _cancel_pair(right, left)
            return cancelled
        case RightRes(num=num, den=den):
            if (reduced := _reduce_once(num, spec)) is not None:
                return RightRes(reduced, den)
            if (reduced := _reduce_once(den, spec)) is not None:
                return RightRes(num, reduced)
            return None
        case LeftRes(num=num, den=den):
            if (reduced := _reduce_once(num, spec)) is not None:
                return LeftRes(reduced, den)
            if (reduced := _reduce_once(den, spec)) is not None:
                return LeftRes(num, reduced)
            return None
        case _:
            assert_never(token)


def has_redex(token: Token, spec: CalculusSpec) -> bool:
    """True when a residual in the canonical form of ``token`` meets its own denominator."""
    return _reduce_once(canonical(token, spec), spec) is not None


def normalize(token: Token, spec: CalculusSpec, depth: int = DEFAULT_DEPTH) -> Token:
    """Canonical form with every residual cancelled against an adjacent denominator.

    Args:
        token (Token): The token to simplify.
        spec (CalculusSpec): The frame deciding bracketing and operand order.
        depth (int): Maximum number of cancellation passes.

    Raises:
        LimitExceededError: If the passes do not reach a fixed point.

    Returns:
        Token: The normal form, idempotent under ``normalize``.
    """
    current = canonical(token, spec, depth)
    for _ in range(depth):
        reduced = _reduce_once(current, spec)
        if reduced is None:
            return current
        current = canonical(reduced, spec, depth)
    err_msg = f"Token {token} did not normalize within {depth} passes"
    raise LimitExceededError(err_msg)


def sub_multisets(elements: tuple[Token, ...]) -> list[tuple[tuple[Token, ...], tuple[Token, ...]]]:
    """Every way to pick a sub-multiset of a sorted tuple, paired with what is left, smallest first."""
    seen: set[tuple[Token, ...]] = set()
    splits: list[tuple[tuple[Token, ...], tuple[Token, ...]]] = []
    for size in range(len(elements) + 1):
        for picked in combinations(range(len(elements)), size):
            chosen = tuple(elements[i] for i in picked)
            if chosen in seen:
                continue
            seen.add(chosen)
            splits.append((chosen, tuple(e for i, e in enumerate(elements) if i not in picked)))
    return splits
