"""Information tokens labelling tableau formulae.

A token is built from the identity ``1``, ground names handed out by the tableau, variables introduced by
the branching rule, composition ``x.y`` and the two residuals ``x<|y`` (right) and ``x|>y`` (left).
"""

from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from functools import cache
from typing import assert_never, final


@final
@dataclass(frozen=True, slots=True)
class Identity:
    """The unit ``1`` of composition."""

    def __str__(self) -> str:
        return "1"


@final
@dataclass(frozen=True, slots=True)
class Ground:
    """A resource name handed out by the root or an alpha rule."""

    name: str

    def __str__(self) -> str:
        return self.name


@final
@dataclass(frozen=True, slots=True)
class Var:
    """A label introduced by the branching rule, instantiated at closure time."""

    name: str

    def __str__(self) -> str:
        return self.name


@final
@dataclass(frozen=True, slots=True)
class Comp:
    """Composition ``left.right`` of two resources."""

    left: "Token"
    right: "Token"

    def __str__(self) -> str:
        return render_token(self)


@final
@dataclass(frozen=True, slots=True)
class RightRes:
    """``num<|den``: the greatest z with ``den.z <= num``."""

    num: "Token"
    den: "Token"

    def __str__(self) -> str:
        return render_token(self)


@final
@dataclass(frozen=True, slots=True)
class LeftRes:
    """``num|>den``: the greatest z with ``z.den <= num``."""

    num: "Token"
    den: "Token"

    def __str__(self) -> str:
        return render_token(self)


type Token = Identity | Ground | Var | Comp | RightRes | LeftRes
type Substitution = Mapping[str, Token]

IDENTITY = Identity()


def compose(x: Token, y: Token) -> Token:
    """Composes two tokens, applying only the unit laws.

    Args:
        x (Token): The left operand.
        y (Token): The right operand.

    Returns:
        Token: ``x.y``, or the other operand when one of them is ``1``.
    """
    if isinstance(x, Identity):
        return y
    if isinstance(y, Identity):
        return x
    return Comp(x, y)


def right_residual(x: Token, y: Token) -> Token:
    """Builds ``x<|y``, the label of what remains of ``x`` once ``y`` is taken from its left."""
    return RightRes(x, y)


def left_residual(x: Token, y: Token) -> Token:
    """Builds ``x|>y``, the label of what remains of ``x`` once ``y`` is taken from its right."""
    return LeftRes(x, y)


def _render_operand(token: Token) -> str:
    text = render_token(token)
    if isinstance(token, Comp | RightRes | LeftRes):
        return f"({text})"
    return text


@cache
def render_token(token: Token) -> str:
    """Renders a token with ``.``, ``<|`` and ``|>``, parenthesizing every compound operand."""
    match token:
        case Identity():
            return "1"
        case Ground(name=name) | Var(name=name):
            return name
        case Comp(left=left, right=right):
            return f"{_render_operand(left)}.{_render_operand(right)}"
        case RightRes(num=num, den=den):
            return f"{_render_operand(num)}<|{_render_operand(den)}"
        case LeftRes(num=num, den=den):
            return f"{_render_operand(num)}|>{_render_operand(den)}"
        case _:
            assert_never(token)


def token_sort_key(token: Token) -> str:
    """Sort key giving commutative chains one fixed order."""
    return render_token(token)


def subterms(token: Token) -> Iterator[Token]:
    """Yields ``token`` and all of its subterms, outermost first."""
    yield token
    match token:
        case Comp(left=left, right=right):
            yield from subterms(left)
            yield from subterms(right)
        case RightRes(num=num, den=den) | LeftRes(num=num, den=den):
            yield from subterms(num)
            yield from subterms(den)
        case Identity() | Ground() | Var():
            pass
        case _:
            assert_never(token)


def variables(token: Token) -> tuple[Var, ...]:
    """Distinct variables of a token in left-to-right order."""
    return tuple(dict.fromkeys(t for t in subterms(token) if isinstance(t, Var)))


def grounds(token: Token) -> tuple[Ground, ...]:
    """Distinct ground names of a token in left-to-right order."""
    return tuple(dict.fromkeys(t for t in subterms(token) if isinstance(t, Ground)))


def is_ground(token: Token) -> bool:
    """True when the token contains no variable."""
    return not variables(token)


def substitute(token: Token, substitution: Substitution) -> Token:
    """Replaces bound variables and re-applies the unit laws around them."""
    if not substitution:
        return token
    match token:
        case Var(name=name):
            return substitution.get(name, token)
        case Identity() | Ground():
            return token
        case Comp(left=left, right=right):
            return compose(substitute(left, substitution), substitute(right, substitution))
        case RightRes(num=num, den=den):
            return RightRes(substitute(num, substitution), substitute(den, substitution))
        case LeftRes(num=num, den=den):
            return LeftRes(substitute(num, substitution), substitute(den, substitution))
        case _:
            assert_never(token)


def weight(token: Token) -> int:
    """Number of resource units a token spends: composed leaves, a residual counting as one."""
    match token:
        case Identity():
            return 0
        case Comp(left=left, right=right):
            return weight(left) + weight(right)
        case Ground() | Var() | RightRes() | LeftRes():
            return 1
        case _:
            assert_never(token)


def leaf_count(token: Token) -> int:
    """Number of names in a token, counted through residuals as well."""
    match token:
        case Identity():
            return 0
        case Comp(left=left, right=right) | RightRes(num=left, den=right) | LeftRes(num=left, den=right):
            return leaf_count(left) + leaf_count(right)
        case Ground() | Var():
            return 1
        case _:
            assert_never(token)
