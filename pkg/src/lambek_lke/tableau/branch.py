"""Tableau state: branches, linear completion and the branching rule."""

import logging
from dataclasses import dataclass, field
from typing import final

from lambek_lke.calculus.categories import Category, Compound, Connective, category_sort_key, subformulae
from lambek_lke.calculus.frames import CalculusSpec
from lambek_lke.calculus.labels import LeftRes, RightRes, Token, compose, grounds, variables, weight
from lambek_lke.calculus.normal_forms import canonical, chain, has_redex
from lambek_lke.calculus.sequents import Sequent, bracketing_product
from lambek_lke.errors import BetaExhaustedError, LimitExceededError, ResourceLimitError
from lambek_lke.settings import ProofOptions
from lambek_lke.tableau.rules import (
    apply_alpha,
    apply_sigma,
    has_split,
    is_alpha,
    is_sigma_major,
    sigma_rules,
)
from lambek_lke.tableau.slf import SLF, FreshNames, Justification, Rule, Sign

logger = logging.getLogger(__name__)


@final
@dataclass(frozen=True, slots=True)
class SigmaMove:
    """One sigma application: which premises, which rule and whether to use the residual label."""

    major: int
    minor: int
    rule: Rule
    residual: bool = False


@dataclass
class TableauStats:
    """Rule applications and search events of one tableau."""

    alpha: int = 0
    sigma: int = 0
    beta: int = 0
    backtracks: int = 0
    limit_failures: int = 0

    @property
    def rules(self) -> int:
        return self.alpha + self.sigma + self.beta


@dataclass
class Branch:
    """A path from the root of the tableau, holding every formula on it.

    Children copy the formulae of their parent, so a branch can be read on its own; ``start`` marks where
    its own formulae begin.
    """

    path: str
    slfs: list[SLF]
    start: int = 0
    beta_count: int = 0
    beta_done: set[Category] = field(default_factory=set)
    alpha_done: set[int] = field(default_factory=set)
    tried: set[SigmaMove] = field(default_factory=set)
    sigma_stack: list[SigmaMove] = field(default_factory=list)
    seen: set[tuple[Sign, Category, Token]] = field(default_factory=set)
    units: set[str] = field(default_factory=set)
    children: "tuple[Branch, Branch] | None" = None
    beta_formula: Category | None = None

    def line(self, number: int) -> SLF:
        for slf in self.slfs:
            if slf.line == number:
                return slf
        err_msg = f"Line {number} is not on branch {self.path}"
        raise KeyError(err_msg)

    def conflicts(self, node: SLF) -> bool:
        """True when a formula of the opposite sign and the same category is already on the branch."""
        return any(other.cat == node.cat and other.sign is not node.sign for other in self.slfs)

    def own(self) -> list[SLF]:
        return self.slfs[self.start :]


class Tableau:
    """A derivation tree for one sequent under one calculus."""

    def __init__(self, sequent: Sequent, spec: CalculusSpec, options: ProofOptions | None = None) -> None:
        self.sequent = sequent
        self.spec = spec
        self.options = options or ProofOptions()
        self.fresh = FreshNames()
        self.stats = TableauStats()
        self.next_line = 2
        self.appended = 0
        self.spent = 0
        root_label = self.fresh.root()
        antecedent = bracketing_product(sequent.structure)
        self.subformula_pool: tuple[Category, ...] = tuple(
            sorted(set(subformulae(antecedent)) | set(subformulae(sequent.succedent)), key=category_sort_key)
        )
        self.root = Branch(path="1", slfs=[])
        self._append(self.root, SLF(Sign.T, antecedent, root_label, self._take_line(), Justification(Rule.PREMISE)))
        self._append(
            self.root, SLF(Sign.F, sequent.succedent, root_label, self._take_line(), Justification(Rule.PREMISE))
        )

    @property
    def beta_depth(self) -> int:
        return self.options.beta_depth if self.options.beta_depth is not None else len(self.subformula_pool)

    def _take_line(self) -> int:
        line = self.next_line
        self.next_line += 1
        return line

    def _canonical(self, token: Token) -> Token:
        return canonical(token, self.spec, self.options.normalize_depth)

    def label_bound(self, branch: Branch) -> int:
        """Largest label weight a branch admits: one unit per name on it, twice that when contractive."""
        return len(branch.units) * (2 if self.spec.contractive else 1)

    def charge(self) -> None:
        """Spends one unit of the search budget on a sigma move or a new order check.

        Raises:
            ResourceLimitError: If the budget is spent.
        """
        self.spent += 1
        if self.spent > self.options.search_budget:
            err_msg = f"Search for {self.sequent} spent its budget of {self.options.search_budget} steps"
            raise ResourceLimitError(err_msg)

    def _append(self, branch: Branch, node: SLF) -> None:
        self.appended += 1
        if self.appended > self.options.resource_limit:
            err_msg = f"Tableau for {self.sequent} exceeded {self.options.resource_limit} formulae"
            raise ResourceLimitError(err_msg)
        branch.slfs.append(node)
        branch.seen.add((node.sign, node.cat, self._canonical(node.label)))
        branch.units.update(token.name for token in (*grounds(node.label), *variables(node.label)))
        logger.debug("branch %s: %s", branch.path, node.render())

    def _admissible(self, branch: Branch, node: SLF) -> bool:
        label = self._canonical(node.label)
        if (node.sign, node.cat, label) in branch.seen:
            return False
        return weight(label) <= self.label_bound(branch)

    def alpha_complete(self, branch: Branch) -> bool:
        """Applies alpha rules until none is left; returns True when a conclusion conflicts with the branch."""
        conflict = False
        index = 0
        while index < len(branch.slfs):
            node = branch.slfs[index]
            index += 1
            if node.line in branch.alpha_done or not is_alpha(node):
                continue
            branch.alpha_done.add(node.line)
            first_line = self._take_line()
            self._take_line()
            for conclusion in apply_alpha(node, self.fresh, first_line):
                conflict = branch.conflicts(conclusion) or conflict
                self._append(branch, conclusion)
            self.stats.alpha += 1
        return conflict

    def _partner_rank(self, major: SLF, minor: SLF, rule: Rule) -> tuple[int, int, int]:
        """Orders partners so that juxtaposed resources are combined first."""
        x, y = major.label, minor.label
        match rule:
            case Rule.SIGMA_I:
                label, misplaced = compose(y, x), self._wanted(x, LeftRes, y)
            case Rule.SIGMA_IV:
                label, misplaced = compose(x, y), self._wanted(x, RightRes, y)
            case _:
                return 1, 0, minor.line
        try:
            reducible = has_redex(label, self.spec)
        except LimitExceededError:
            reducible = False
        return (0 if reducible else 1), (1 if misplaced else 0), minor.line

    def _wanted(self, functor: Token, residual: type[RightRes | LeftRes], argument: Token) -> bool:
        """True when ``argument`` is a denominator the functor label expects on the other side."""
        try:
            elements = chain(self._canonical(functor), self.spec)
            target = self._canonical(argument)
        except LimitExceededError:
            return False
        return any(isinstance(element, residual) and element.den == target for element in elements)

    def _untried(self, branch: Branch, major: SLF) -> list[SigmaMove]:
        moves = [
            (self._partner_rank(major, minor, rule), SigmaMove(major.line, minor.line, rule))
            for minor in branch.slfs
            for rule in sigma_rules(major, minor)
            if SigmaMove(major.line, minor.line, rule) not in branch.tried
        ]
        return [move for _, move in sorted(moves, key=lambda item: item[0])]

    def apply_move(self, branch: Branch, move: SigmaMove) -> bool:
        """Applies one sigma move and alpha-completes; returns True when the branch gained a conflict."""
        self.charge()
        branch.tried.add(move)
        major, minor = branch.line(move.major), branch.line(move.minor)
        fallback = self.options.residual_fallback
        if fallback and not move.residual and has_split(major, minor, move.rule, self.spec):
            alternative = SigmaMove(move.major, move.minor, move.rule, residual=True)
            if alternative not in branch.tried:
                branch.tried.add(alternative)
                branch.sigma_stack.append(alternative)
        conclusion = apply_sigma(
            major,
            minor,
            self.spec,
            self.next_line,
            rule=move.rule,
            residual=move.residual,
            residual_fallback=fallback,
        )
        if conclusion is None or not self._admissible(branch, conclusion):
            return False
        self._take_line()
        self.stats.sigma += 1
        conflict = branch.conflicts(conclusion)
        self._append(branch, conclusion)
        return self.alpha_complete(branch) or conflict

    def complete_step(self, branch: Branch) -> bool:
        """Runs linear completion until a new conflict appears or nothing is left to combine.

        Each sigma major takes its best-ranked untried partner; the other partners are stacked for
        backtracking.

        Returns:
            bool: True when the run changed the branch.
        """
        before = len(branch.slfs)
        if self.alpha_complete(branch):
            return True
        progressed = True
        while progressed:
            progressed = False
            for node in list(branch.slfs):
                if not is_sigma_major(node):
                    continue
                moves = self._untried(branch, node)
                if not moves:
                    continue
                progressed = True
                first, *rest = moves
                for alternative in reversed(rest):
                    branch.tried.add(alternative)
                    branch.sigma_stack.append(alternative)
                if self.apply_move(branch, first):
                    return True
        return len(branch.slfs) != before

    def backtrack(self, branch: Branch) -> bool:
        """Applies the most recently stacked alternative; False when the stack is empty."""
        if not branch.sigma_stack:
            return False
        move = branch.sigma_stack.pop()
        self.stats.backtracks += 1
        logger.debug("branch %s: backtracking to %s", branch.path, move)
        self.apply_move(branch, move)
        return True

    def eligible_subformulae(self, branch: Branch) -> list[Category]:
        """Subformulae a branch may still split on, smallest first.

        Only categories that some formula on the branch is waiting for qualify: arguments of true
        implications and components of false products.
        """
        wanted: set[Category] = set()
        for node in branch.slfs:
            match node.sign, node.cat:
                case Sign.T, Compound(connective=Connective.OVER, right=argument):
                    wanted.add(argument)
                case Sign.T, Compound(connective=Connective.UNDER, left=argument):
                    wanted.add(argument)
                case Sign.F, Compound(connective=Connective.PRODUCT, left=left, right=right):
                    wanted.update((left, right))
                case _:
                    pass
        return [sub for sub in self.subformula_pool if sub in wanted and sub not in branch.beta_done]

    def split(self, branch: Branch, sub: Category) -> tuple[Branch, Branch]:
        if branch.children is not None:
            err_msg = f"Branch {branch.path} is already split"
            raise ValueError(err_msg)
        variable = self.fresh.fresh_var()
        children: list[Branch] = []
        for index, sign in enumerate((Sign.T, Sign.F), start=1):
            child = Branch(
                path=f"{branch.path}.{index}",
                slfs=list(branch.slfs),
                start=len(branch.slfs),
                beta_count=branch.beta_count + 1,
                beta_done=branch.beta_done | {sub},
                alpha_done=set(branch.alpha_done),
                tried=set(branch.tried),
                sigma_stack=list(branch.sigma_stack),
                seen=set(branch.seen),
                units=set(branch.units),
                beta_formula=sub,
            )
            self._append(child, SLF(sign, sub, variable, self._take_line(), Justification(Rule.BETA)))
            children.append(child)
        branch.children = (children[0], children[1])
        self.stats.beta += 1
        logger.debug("branch %s: beta on %s with %s", branch.path, sub, variable)
        return branch.children


def linear_completion(tab: Tableau, branch: Branch) -> Tableau:
    """Completes a branch linearly, stopping early at the first new conflict."""
    tab.complete_step(branch)
    return tab


def select_subformula(tab: Tableau, branch: Branch) -> Category:
    """The smallest subformula the branch may still split on.

    Raises:
        BetaExhaustedError: If there is none.
    """
    eligible = tab.eligible_subformulae(branch)
    if not eligible:
        err_msg = f"No subformula left to split branch {branch.path} on"
        raise BetaExhaustedError(err_msg)
    return eligible[0]


def apply_beta(tab: Tableau, branch: Branch, sub: Category | None = None) -> Tableau:
    """Splits a branch into ``T sub : v`` and ``F sub : v`` children sharing a fresh variable ``v``.

    Args:
        tab (Tableau): The tableau holding the branch.
        branch (Branch): The branch to split.
        sub (Category | None): The subformula to split on; the smallest eligible one when None.

    Raises:
        BetaExhaustedError: If ``sub`` is None and no subformula is eligible, or ``sub`` was already used.

    Returns:
        Tableau: The same tableau, now holding two children under ``branch``.
    """
    chosen = sub if sub is not None else select_subformula(tab, branch)
    if chosen in branch.beta_done or chosen not in tab.subformula_pool:
        err_msg = f"{chosen} is not available for splitting branch {branch.path}"
        raise BetaExhaustedError(err_msg)
    tab.split(branch, chosen)
    return tab
