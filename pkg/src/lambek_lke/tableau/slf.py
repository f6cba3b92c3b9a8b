from dataclasses import dataclass
from enum import Enum
from typing import final

from lambek_lke.calculus.categories import Category, render_category
from lambek_lke.calculus.labels import Ground, Token, Var, render_token


class Sign(Enum):
    """Whether a formula is asserted (T) or denied (F) at its label."""

    T = "T"
    F = "F"


class Rule(Enum):
    """Names of the tableau rules as printed in derivations."""

    PREMISE = "premise"
    ALPHA_I = "alpha(i)"
    ALPHA_II = "alpha(ii)"
    ALPHA_III = "alpha(iii)"
    SIGMA_I = "sigma(i)"
    SIGMA_II = "sigma(ii)"
    SIGMA_III = "sigma(iii)"
    SIGMA_IV = "sigma(iv)"
    SIGMA_V = "sigma(v)"
    SIGMA_VI = "sigma(vi)"
    BETA = "beta"


@final
@dataclass(frozen=True, slots=True)
class Justification:
    """The rule that produced a line and the lines of its premises."""

    rule: Rule
    premises: tuple[int, ...] = ()

    def render(self) -> str:
        if not self.premises:
            return f"[{self.rule.value}]"
        return f"[{self.rule.value} {','.join(str(line) for line in self.premises)}]"


@final
@dataclass(frozen=True, slots=True)
class SLF:
    """A signed labelled formula ``sign cat : label`` at a numbered line of a derivation."""

    sign: Sign
    cat: Category
    label: Token
    line: int
    justification: Justification

    def render(self) -> str:
        body = f"{self.line}- {self.sign.value} {render_category(self.cat)} : {render_token(self.label)}"
        return f"{body}   {self.justification.render()}"


class FreshNames:
    """Hands out ground and variable names never used before in one derivation.

    Grounds run ``a, b, c, ...`` skipping the root ``m`` and ``v``, then continue with numbered copies
    (``a1, b1, ...``); variables are ``v1, v2, ...``.
    """

    ROOT = "m"
    _ALPHABET = tuple("abcdefghijklnopqrstuwxyz")

    def __init__(self) -> None:
        self._grounds = 0
        self._vars = 0
        self.introduced: list[str] = []

    def root(self) -> Ground:
        self.introduced.append(self.ROOT)
        return Ground(self.ROOT)

    def fresh_ground(self) -> Ground:
        cycle, index = divmod(self._grounds, len(self._ALPHABET))
        self._grounds += 1
        name = self._ALPHABET[index] + (str(cycle) if cycle else "")
        self.introduced.append(name)
        return Ground(name)

    def fresh_var(self) -> Var:
        self._vars += 1
        return Var(f"v{self._vars}")
