"""The reduction laws of the Lambek calculus as named sequents.

Each law comes in a rightward and a leftward (or converse) form. All of them are theorems of L;
associativity, both division laws and composition need associativity of the frame.
"""

from dataclasses import dataclass
from typing import final

from lambek_lke.calculus.sequents import Sequent, parse_sequent


@final
@dataclass(frozen=True)
class ReductionLaw:
    """A named reduction law and whether it needs an associative frame."""

    name: str
    title: str
    sequent: Sequent
    needs_associativity: bool


def _law(name: str, title: str, text: str, *, needs_associativity: bool) -> ReductionLaw:
    return ReductionLaw(name, title, parse_sequent(text), needs_associativity)


REDUCTION_LAWS: tuple[ReductionLaw, ...] = (
    _law("R1a", "application", r"X/Y, Y => X", needs_associativity=False),
    _law("R1b", "application", r"Y, Y\X => X", needs_associativity=False),
    _law("R2a", "composition", r"X/Y, Y/Z => X/Z", needs_associativity=True),
    _law("R2b", "composition", r"Z\Y, Y\X => Z\X", needs_associativity=True),
    _law("R3a", "associativity", r"(Z\X)/Y => Z\(X/Y)", needs_associativity=True),
    _law("R3b", "associativity", r"Z\(X/Y) => (Z\X)/Y", needs_associativity=True),
    _law("R4a", "lifting", r"X => Y/(X\Y)", needs_associativity=False),
    _law("R4b", "lifting", r"X => (Y/X)\Y", needs_associativity=False),
    _law("R5a", "division (main functor)", r"X/Y => (X/Z)/(Y/Z)", needs_associativity=True),
    _law("R5b", "division (main functor)", r"Y\X => (Z\Y)\(Z\X)", needs_associativity=True),
    _law("R6a", "division (subordinate functor)", r"X/Y => (Z/X)\(Z/Y)", needs_associativity=True),
    _law("R6b", "division (subordinate functor)", r"Y\X => (Y\Z)/(X\Z)", needs_associativity=True),
)


def law(name: str) -> ReductionLaw:
    """Looks a law up by name, e.g. ``"R3a"``.

    Raises:
        KeyError: If there is no such law.
    """
    for candidate in REDUCTION_LAWS:
        if candidate.name == name:
            return candidate
    err_msg = f"Unknown reduction law {name!r}"
    raise KeyError(err_msg)
