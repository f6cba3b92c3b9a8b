import re
from dataclasses import dataclass
from enum import Enum
from functools import cache
from typing import assert_never, final

from lambek_lke.errors import CategorySyntaxError

_ATOM_NAME = re.compile(r"[A-Za-z][A-Za-z0-9]*")
_TOKENS = re.compile(r"\s*(?:(?P<atom>[A-Za-z][A-Za-z0-9]*)|(?P<op>[/\\*•])|(?P<paren>[()])|(?P<bad>\S))")


class Connective(Enum):
    """The three binary connectives of the calculus family."""

    OVER = "/"
    UNDER = "\\"
    PRODUCT = "*"


class Polarity(Enum):
    """Sign of an occurrence for count invariance."""

    POSITIVE = "+"
    NEGATIVE = "-"

    def flip(self) -> "Polarity":
        return Polarity.NEGATIVE if self is Polarity.POSITIVE else Polarity.POSITIVE


@final
@dataclass(frozen=True, slots=True)
class Atom:
    """A basic category such as S, NP or PP."""

    name: str

    def __post_init__(self) -> None:
        if _ATOM_NAME.fullmatch(self.name) is None:
            err_msg = f"Invalid atom name {self.name!r}"
            raise CategorySyntaxError(err_msg)

    def __str__(self) -> str:
        return self.name


@final
@dataclass(frozen=True, slots=True)
class Compound:
    r"""A connective node.

    Over(X, Y) is stored as ``Compound(OVER, X, Y)`` and renders ``X/Y``; Under(Y, X) is stored as
    ``Compound(UNDER, Y, X)`` and renders ``Y\X``; the product renders ``A*B``.
    """

    connective: Connective
    left: "Category"
    right: "Category"

    def __str__(self) -> str:
        return render_category(self)


type Category = Atom | Compound


def over(result: Category, argument: Category) -> Compound:
    """Builds ``result/argument``, a functor looking for its argument to the right."""
    return Compound(Connective.OVER, result, argument)


def under(argument: Category, result: Category) -> Compound:
    r"""Builds ``argument\result``, a functor looking for its argument to the left."""
    return Compound(Connective.UNDER, argument, result)


def product(left: Category, right: Category) -> Compound:
    """Builds ``left*right``."""
    return Compound(Connective.PRODUCT, left, right)


@cache
def render_category(category: Category) -> str:
    """Renders a category with the fewest parentheses that still parse back to it.

    Chains of one operator associate left, so a left child only needs parentheses when its connective
    differs from its parent's, while a compound right child always needs them.
    """
    match category:
        case Atom(name=name):
            return name
        case Compound(connective=connective, left=left, right=right):
            left_text = render_category(left)
            if isinstance(left, Compound) and left.connective is not connective:
                left_text = f"({left_text})"
            right_text = render_category(right)
            if isinstance(right, Compound):
                right_text = f"({right_text})"
            return f"{left_text}{connective.value}{right_text}"
        case _:
            assert_never(category)


def size(category: Category) -> int:
    """Number of atom occurrences in a category."""
    match category:
        case Atom():
            return 1
        case Compound(left=left, right=right):
            return size(left) + size(right)
        case _:
            assert_never(category)


def connective_count(category: Category) -> int:
    """Number of connectives in a category, one less than its atom occurrences."""
    return size(category) - 1


def _subtrees(category: Category) -> set[Category]:
    match category:
        case Atom():
            return {category}
        case Compound(left=left, right=right):
            return {category} | _subtrees(left) | _subtrees(right)
        case _:
            assert_never(category)


def subformulae(category: Category) -> tuple[Category, ...]:
    """All distinct subtrees of a category, smallest first, ties broken by rendering.

    Args:
        category (Category): The category to decompose.

    Returns:
        tuple[Category, ...]: The subformulae including ``category`` itself.
    """
    return tuple(sorted(_subtrees(category), key=category_sort_key))


def category_sort_key(category: Category) -> tuple[int, str]:
    """Orders categories smallest first, then by rendering."""
    return size(category), render_category(category)


def atom_count(category: Category, atom: Atom, polarity: Polarity = Polarity.POSITIVE) -> int:
    r"""Signed number of occurrences of ``atom`` in ``category``.

    Positive occurrences count +1 and negative ones -1. The argument of ``/`` and ``\`` flips polarity,
    the product keeps it on both sides.

    Args:
        category (Category): The category to count in.
        atom (Atom): The atom being counted.
        polarity (Polarity): The polarity of ``category`` itself.

    Returns:
        int: The signed count.
    """
    match category:
        case Atom():
            if category != atom:
                return 0
            return 1 if polarity is Polarity.POSITIVE else -1
        case Compound(connective=Connective.OVER, left=result, right=argument):
            return atom_count(result, atom, polarity) + atom_count(argument, atom, polarity.flip())
        case Compound(connective=Connective.UNDER, left=argument, right=result):
            return atom_count(argument, atom, polarity.flip()) + atom_count(result, atom, polarity)
        case Compound(connective=Connective.PRODUCT, left=left, right=right):
            return atom_count(left, atom, polarity) + atom_count(right, atom, polarity)
        case _:
            assert_never(category)


def atoms(category: Category) -> tuple[Atom, ...]:
    """Distinct atoms of a category in left-to-right order of first occurrence."""
    match category:
        case Atom():
            return (category,)
        case Compound(left=left, right=right):
            return tuple(dict.fromkeys((*atoms(left), *atoms(right))))
        case _:
            assert_never(category)


class _CategoryParser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens: list[tuple[str, str]] = []
        for match in _TOKENS.finditer(text):
            kind = match.lastgroup
            if kind is None:
                continue
            if kind == "bad":
                err_msg = f"Unexpected character {match.group(kind)!r} in category {text!r}"
                raise CategorySyntaxError(err_msg)
            self.tokens.append((kind, match.group(kind)))
        self.position = 0

    def _peek(self) -> tuple[str, str] | None:
        return self.tokens[self.position] if self.position < len(self.tokens) else None

    def parse(self) -> Category:
        category = self._expression()
        if self._peek() is not None:
            err_msg = f"Unbalanced parentheses in category {self.text!r}"
            raise CategorySyntaxError(err_msg)
        return category

    def _expression(self) -> Category:
        category = self._term()
        chain_connective: Connective | None = None
        while (token := self._peek()) is not None and token[0] == "op":
            self.position += 1
            connective = Connective.PRODUCT if token[1] in "*•" else Connective(token[1])
            if chain_connective is not None and connective is not chain_connective:
                err_msg = f"Mixed operators without parentheses in category {self.text!r}"
                raise CategorySyntaxError(err_msg)
            chain_connective = connective
            category = Compound(connective, category, self._term())
        return category

    def _term(self) -> Category:
        token = self._peek()
        match token:
            case ("atom", name):
                self.position += 1
                return Atom(name)
            case ("paren", "("):
                self.position += 1
                category = self._expression()
                if self._peek() != ("paren", ")"):
                    err_msg = f"Unbalanced parentheses in category {self.text!r}"
                    raise CategorySyntaxError(err_msg)
                self.position += 1
                return category
            case _:
                err_msg = f"Expected an atom or '(' in category {self.text!r}"
                raise CategorySyntaxError(err_msg)


def parse_category(text: str) -> Category:
    r"""Parses the concrete category syntax.

    ``/``, ``\`` and ``*`` (or ``•``) share one precedence level, a chain of one repeated operator
    associates to the left and mixing operators at one nesting level needs parentheses.

    Args:
        text (str): The category text, e.g. ``"(NP\S)/NP"``.

    Raises:
        CategorySyntaxError: If the text is empty, unbalanced or mixes operators.

    Returns:
        Category: The parsed category.
    """
    if not text.strip():
        err_msg = "Empty category"
        raise CategorySyntaxError(err_msg)
    return _CategoryParser(text).parse()
