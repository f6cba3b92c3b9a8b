"""Full tableau expansion: closure, bounded backtracking and branching."""

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from typing import final

from lambek_lke.calculus.categories import Category, atoms, atom_count, render_category
from lambek_lke.calculus.frames import CalculusSpec
from lambek_lke.calculus.labels import (
    IDENTITY,
    Token,
    is_ground,
    leaf_count,
    render_token,
    subterms,
    substitute,
    weight,
)
from lambek_lke.calculus.normal_forms import canonical, chain, from_chain, normalize, sub_multisets
from lambek_lke.calculus.ordering import LabelOrder, iter_substitutions
from lambek_lke.calculus.sequents import Bracketing, Sequent
from lambek_lke.errors import BetaExhaustedError, LimitExceededError
from lambek_lke.settings import ProofOptions
from lambek_lke.tableau.branch import Branch, Tableau, apply_beta
from lambek_lke.tableau.render import render_derivation
from lambek_lke.tableau.results import BranchClosure, ProofResult, ProofStats
from lambek_lke.tableau.slf import SLF, Sign

logger = logging.getLogger(__name__)

_MAX_POOL_SUBSET = 3


@final
@dataclass(frozen=True)
class _Closing:
    substitution: dict[str, Token]
    closures: tuple[BranchClosure, ...]

    @property
    def key(self) -> frozenset[tuple[str, Token]]:
        return frozenset(self.substitution.items())


class _Expansion:
    """Explores one tableau, yielding the substitutions under which a subtree closes."""

    def __init__(self, tab: Tableau) -> None:
        self.tab = tab
        self.spec = tab.spec
        self.options = tab.options
        self.order = LabelOrder(tab.spec, self.options.leq_budget, self.options.normalize_depth, on_check=tab.charge)

    def pool(self, branch: Branch, substitution: dict[str, Token]) -> list[Token]:
        """Variable-free tokens of a branch, their subterms and sub-chains, then ``1``.

        Candidates heavier than the branch admits are left out, so substitutions never grow labels past
        the bound linear completion works under.
        """
        pool: dict[Token, None] = {}
        for node in branch.slfs:
            label = substitute(node.label, substitution)
            for term in subterms(label):
                if is_ground(term):
                    pool.setdefault(term, None)
            if not is_ground(label):
                continue
            try:
                pool.setdefault(normalize(label, self.spec, self.options.normalize_depth), None)
                elements = chain(canonical(label, self.spec, self.options.normalize_depth), self.spec)
            except LimitExceededError:
                self.tab.stats.limit_failures += 1
                continue
            for part in self._parts(elements):
                pool.setdefault(part, None)
        pool.pop(IDENTITY, None)
        bound = self.tab.label_bound(branch)
        return [*(token for token in pool if self._within(token, bound)), IDENTITY]

    def _within(self, token: Token, bound: int) -> bool:
        try:
            reduced = canonical(token, self.spec, self.options.normalize_depth)
        except LimitExceededError:
            self.tab.stats.limit_failures += 1
            return False
        return weight(reduced) <= bound and leaf_count(reduced) <= 2 * bound

    def _parts(self, elements: tuple[Token, ...]) -> Iterator[Token]:
        if self.spec.commutative:
            for picked, _ in sub_multisets(elements):
                if 1 < len(picked) <= _MAX_POOL_SUBSET:
                    yield from_chain(picked)
            return
        for start in range(len(elements)):
            for end in range(start + 2, len(elements) + 1):
                yield from_chain(elements[start:end])

    def _pairs(self, branch: Branch) -> Iterator[tuple[SLF, SLF]]:
        for false in branch.slfs:
            if false.sign is not Sign.F:
                continue
            for true in branch.slfs:
                if true.sign is Sign.T and true.cat == false.cat:
                    yield true, false

    def closures(self, branch: Branch, substitution: dict[str, Token]) -> Iterator[_Closing]:
        """Every way the branch closes as it stands, extending ``substitution`` where variables remain."""
        for true, false in self._pairs(branch):
            goal = (substitute(true.label, substitution), substitute(false.label, substitution))
            try:
                if is_ground(goal[0]) and is_ground(goal[1]):
                    candidates: Iterator[dict[str, Token]] = iter([dict(substitution)])
                else:
                    candidates = iter_substitutions(goal, self.order, self.pool(branch, substitution), substitution)
                for candidate in candidates:
                    x, y = substitute(true.label, candidate), substitute(false.label, candidate)
                    witness = self.order.explain(x, y)
                    if witness is None:
                        continue
                    closure = BranchClosure(
                        branch=branch.path,
                        true_line=true.line,
                        false_line=false.line,
                        category=render_category(true.cat),
                        true_label=render_token(x),
                        false_label=render_token(y),
                        steps=witness,
                        substitution={name: render_token(token) for name, token in candidate.items()},
                    )
                    logger.debug("branch %s closes on lines %d and %d", branch.path, true.line, false.line)
                    yield _Closing(candidate, (closure,))
            except LimitExceededError as error:
                self.tab.stats.limit_failures += 1
                logger.warning(
                    "branch %s: closure check on lines %d, %d failed: %s", branch.path, true.line, false.line, error
                )

    def _advance(self, branch: Branch) -> bool:
        if self.tab.complete_step(branch):
            return True
        return self.tab.backtrack(branch)

    def _children(self, branch: Branch) -> tuple[Branch, Branch] | None:
        if branch.children is not None:
            return branch.children
        if not self.options.beta_enabled or branch.beta_count >= self.tab.beta_depth:
            return None
        try:
            apply_beta(self.tab, branch)
        except BetaExhaustedError:
            return None
        return branch.children

    def solutions(self, branch: Branch, substitution: dict[str, Token]) -> Iterator[_Closing]:
        """Substitutions closing the subtree at ``branch``, at most ``max_substitutions`` of them."""
        seen: set[frozenset[tuple[str, Token]]] = set()
        for closing in self._solutions(branch, substitution):
            if closing.key in seen:
                continue
            seen.add(closing.key)
            yield closing
            if len(seen) >= self.options.max_substitutions:
                return

    def _solutions(self, branch: Branch, substitution: dict[str, Token]) -> Iterator[_Closing]:
        while True:
            yield from self.closures(branch, substitution)
            if not self._advance(branch):
                break
        children = self._children(branch)
        if children is None:
            return
        true_child, false_child = children
        for left in self.solutions(true_child, substitution):
            for right in self.solutions(false_child, left.substitution):
                yield _Closing(right.substitution, left.closures + right.closures)


def expand(tab: Tableau, options: ProofOptions | None = None) -> ProofResult:
    """Runs the tableau until every branch closes or no rule is left to try.

    Args:
        tab (Tableau): A freshly built tableau.
        options (ProofOptions | None): Overrides the tableau's own options when given.

    Raises:
        ResourceLimitError: If the tableau grows past its resource limit or the search spends its budget.

    Returns:
        ProofResult: The verdict, the rendered derivation and search statistics.
    """
    if options is not None:
        tab.options = options
    expansion = _Expansion(tab)
    closing = next(expansion.solutions(tab.root, {}), None)
    theorem = closing is not None
    closures = closing.closures if closing is not None else ()
    logger.info("%s in %s: %s", tab.sequent, tab.spec.display_name, "theorem" if theorem else "not a theorem")
    return ProofResult(
        sequent=tab.sequent.render(),
        calculus=tab.spec.display_name,
        theorem=theorem,
        derivation=render_derivation(tab, closures),
        closures=closures,
        stats=ProofStats(
            rules=tab.stats.rules,
            beta=tab.stats.beta,
            backtracks=tab.stats.backtracks,
            leq_steps=expansion.order.steps,
            formulae=tab.appended,
            limit_failures=tab.stats.limit_failures,
        ),
    )


def net_counts(antecedents: Sequence[Category], succedent: Category) -> dict[str, int]:
    """Net signed count of every atom: antecedent occurrences minus succedent occurrences."""
    names = dict.fromkeys(atom for category in (*antecedents, succedent) for atom in atoms(category))
    return {
        atom.name: sum(atom_count(category, atom) for category in antecedents) - atom_count(succedent, atom)
        for atom in names
    }


def count_filter(antecedents: Sequence[Category], succedent: Category) -> bool:
    """False only when some atom's net count is nonzero, which rules out theoremhood in NL, L and LP."""
    return all(count == 0 for count in net_counts(antecedents, succedent).values())


def prove(
    antecedents: Sequence[Category],
    succedent: Category,
    spec: CalculusSpec,
    options: ProofOptions | None = None,
    bracketing: Bracketing | None = None,
) -> ProofResult:
    """Decides ``antecedents => succedent`` in the calculus ``spec``.

    The antecedents are packed into one true product labelled ``m`` (right-nested unless a bracketing is
    given) and the succedent is denied with the same label.

    Args:
        antecedents (Sequence[Category]): The antecedent categories, at least one.
        succedent (Category): The succedent category.
        spec (CalculusSpec): The calculus.
        options (ProofOptions | None): Search limits, defaults when None.
        bracketing (Bracketing | None): Explicit bracketing of the antecedents.

    Raises:
        ValueError: If ``antecedents`` is empty or the bracketing does not match them.
        ResourceLimitError: If the tableau grows past its resource limit or the search spends its budget.

    Returns:
        ProofResult: The verdict with its derivation.
    """
    options = options or ProofOptions()
    sequent = Sequent(tuple(antecedents), succedent, bracketing)
    if options.count_invariance and spec.resource_sensitive and not count_filter(sequent.antecedents, succedent):
        counts = net_counts(sequent.antecedents, succedent)
        unbalanced = ", ".join(f"{name}={count:+d}" for name, count in counts.items() if count)
        logger.info("%s in %s: rejected by count invariance", sequent, spec.display_name)
        return ProofResult(
            sequent=sequent.render(),
            calculus=spec.display_name,
            theorem=False,
            derivation=f"count invariance fails: {unbalanced}",
            filtered=True,
        )
    return expand(Tableau(sequent, spec, options))


def prove_sequent(sequent: Sequent, spec: CalculusSpec, options: ProofOptions | None = None) -> ProofResult:
    """Decides a parsed sequent, keeping its bracketing. See ``prove``."""
    return prove(sequent.antecedents, sequent.succedent, spec, options, sequent.bracketing)
