import re
from dataclasses import dataclass
from typing import final

from lambek_lke.calculus.categories import Category, parse_category, product, render_category
from lambek_lke.errors import CategorySyntaxError

ARROW = "=>"

type Bracketing = Category | tuple[Bracketing, Bracketing]


def leaves(bracketing: Bracketing) -> tuple[Category, ...]:
    """The antecedent categories of a bracketing, left to right."""
    if isinstance(bracketing, tuple):
        return leaves(bracketing[0]) + leaves(bracketing[1])
    return (bracketing,)


def right_nested(antecedents: tuple[Category, ...]) -> Bracketing:
    """The default bracketing ``A1 (A2 (... An))``."""
    structure: Bracketing = antecedents[-1]
    for category in reversed(antecedents[:-1]):
        structure = (category, structure)
    return structure


def bracketing_product(bracketing: Bracketing) -> Category:
    """The product category that packs a bracketed antecedent into one formula."""
    if isinstance(bracketing, tuple):
        return product(bracketing_product(bracketing[0]), bracketing_product(bracketing[1]))
    return bracketing


def render_bracketing(bracketing: Bracketing) -> str:
    r"""Renders a bracketing as nested pairs, e.g. ``((X, X\Y), Y\Z)``."""
    if isinstance(bracketing, tuple):
        return f"({render_bracketing(bracketing[0])}, {render_bracketing(bracketing[1])})"
    return render_category(bracketing)


@final
@dataclass(frozen=True)
class Sequent:
    """``A1, ..., An => B`` with an optional bracketing of the antecedents for non-associative calculi."""

    antecedents: tuple[Category, ...]
    succedent: Category
    bracketing: Bracketing | None = None

    def __post_init__(self) -> None:
        if not self.antecedents:
            err_msg = "A sequent needs at least one antecedent"
            raise ValueError(err_msg)
        if self.bracketing is not None and leaves(self.bracketing) != self.antecedents:
            err_msg = "The bracketing does not match the antecedents"
            raise ValueError(err_msg)

    @property
    def structure(self) -> Bracketing:
        return self.bracketing if self.bracketing is not None else right_nested(self.antecedents)

    def render(self) -> str:
        left = (
            render_bracketing(self.bracketing)
            if self.bracketing is not None
            else ", ".join(render_category(category) for category in self.antecedents)
        )
        return f"{left} {ARROW} {render_category(self.succedent)}"

    def __str__(self) -> str:
        return self.render()


def parse_sequent(text: str) -> Sequent:
    """Parses ``"A1, A2 => B"``.

    Raises:
        CategorySyntaxError: If the arrow is missing or repeated, or a category does not parse.
    """
    parts = text.split(ARROW)
    if len(parts) != 2:  # noqa: PLR2004
        err_msg = f"Expected exactly one {ARROW!r} in sequent {text!r}"
        raise CategorySyntaxError(err_msg)
    left, right = parts
    items = [item.strip() for item in left.split(",")]
    if not all(items):
        err_msg = f"Empty antecedent in sequent {text!r}"
        raise CategorySyntaxError(err_msg)
    return Sequent(tuple(parse_category(item) for item in items), parse_category(right.strip()))


_SKELETON = re.compile(r"\s*(?:(?P<open>\()|(?P<close>\))|(?P<slot>\.\.|_)|(?P<bad>\S))")


def parse_bracketing(text: str, antecedents: tuple[Category, ...]) -> Bracketing:
    """Parses a bracketing skeleton such as ``"((.. ..) ..)"`` over the given antecedents.

    Each ``..`` (or ``_``) stands for the next antecedent and every parenthesized group has two members.

    Args:
        text (str): The skeleton.
        antecedents (tuple[Category, ...]): The categories filling the slots, in order.

    Raises:
        CategorySyntaxError: If the skeleton is malformed or its slots do not match the antecedents.

    Returns:
        Bracketing: The bracketed antecedent.
    """
    items = [match.lastgroup for match in _SKELETON.finditer(text) if match.lastgroup is not None]
    if "bad" in items:
        err_msg = f"Unexpected character in bracketing {text!r}"
        raise CategorySyntaxError(err_msg)
    position = 0
    slot = 0

    def node() -> Bracketing:
        nonlocal position, slot
        if position >= len(items):
            err_msg = f"Unexpected end of bracketing {text!r}"
            raise CategorySyntaxError(err_msg)
        kind = items[position]
        position += 1
        if kind == "slot":
            if slot >= len(antecedents):
                err_msg = f"Bracketing {text!r} has more slots than the {len(antecedents)} antecedents"
                raise CategorySyntaxError(err_msg)
            slot += 1
            return antecedents[slot - 1]
        if kind != "open":
            err_msg = f"Unbalanced bracketing {text!r}"
            raise CategorySyntaxError(err_msg)
        pair = (node(), node())
        if position >= len(items) or items[position] != "close":
            err_msg = f"Every group in bracketing {text!r} must hold exactly two members"
            raise CategorySyntaxError(err_msg)
        position += 1
        return pair

    structure = node()
    if position != len(items) or slot != len(antecedents):
        err_msg = f"Bracketing {text!r} does not cover the {len(antecedents)} antecedents"
        raise CategorySyntaxError(err_msg)
    return structure
