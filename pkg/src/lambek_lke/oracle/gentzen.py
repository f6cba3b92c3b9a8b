"""Cut-free backward-chaining sequent search, used to cross-check the tableau engine.

Sub-derivations may have empty antecedents, matching the identity token of the labelling algebra.
Associative calculi work on flat antecedent lists (sorted multisets when commutative); NL works on
bracketing trees.
"""

import logging
from collections.abc import Iterator
from enum import Enum
from itertools import combinations, product

from lambek_lke.calculus.categories import Atom, Category, Compound, Connective, render_category
from lambek_lke.calculus.frames import CalculusSpec
from lambek_lke.calculus.sequents import Sequent
from lambek_lke.tableau.engine import count_filter

logger = logging.getLogger(__name__)

DEFAULT_DEPTH = 2


class Verdict(Enum):
    """Answer of the sequent search; UNKNOWN when a failed search cannot refute."""

    PROVED = "proved"
    REFUTED = "refuted"
    UNKNOWN = "unknown"


type _Flat = tuple[Category, ...]
type _Tree = Category | tuple[_Tree, _Tree] | None


def _key(category: Category) -> str:
    return render_category(category)


class _FlatSearch:
    def __init__(self, spec: CalculusSpec, contractions: int) -> None:
        self.spec = spec
        self.contractions = contractions
        self._memo: dict[tuple[_Flat, Category, int], bool] = {}

    def _join(self, *parts: _Flat) -> _Flat:
        joined = tuple(category for part in parts for category in part)
        return tuple(sorted(joined, key=_key)) if self.spec.commutative else joined

    def _splits(self, gamma: _Flat) -> Iterator[tuple[_Flat, _Flat]]:
        if not self.spec.commutative:
            for cut in range(len(gamma) + 1):
                yield gamma[:cut], gamma[cut:]
            return
        seen: set[_Flat] = set()
        for size in range(len(gamma) + 1):
            for picked in combinations(range(len(gamma)), size):
                chosen = tuple(gamma[i] for i in picked)
                if chosen not in seen:
                    seen.add(chosen)
                    yield chosen, tuple(c for i, c in enumerate(gamma) if i not in picked)

    def prove(self, gamma: _Flat, goal: Category, contractions: int) -> bool:
        key = (gamma, goal, contractions)
        if key not in self._memo:
            self._memo[key] = False
            self._memo[key] = self._search(gamma, goal, contractions)
        return self._memo[key]

    def _search(self, gamma: _Flat, goal: Category, contractions: int) -> bool:  # noqa: C901, PLR0911
        if gamma == (goal,):
            return True
        for index, category in enumerate(gamma):
            if isinstance(category, Compound) and category.connective is Connective.PRODUCT:
                unpacked = self._join(gamma[:index], (category.left, category.right), gamma[index + 1 :])
                return self.prove(unpacked, goal, contractions)
        match goal:
            case Compound(connective=Connective.OVER, left=result, right=argument):
                return self.prove(self._join(gamma, (argument,)), result, contractions)
            case Compound(connective=Connective.UNDER, left=argument, right=result):
                return self.prove(self._join((argument,), gamma), result, contractions)
            case Compound(connective=Connective.PRODUCT, left=left, right=right):
                if any(
                    self.prove(head, left, contractions) and self.prove(tail, right, contractions)
                    for head, tail in self._splits(gamma)
                ):
                    return True
            case _:
                pass
        for index, category in enumerate(gamma):
            if self._left_rule(gamma, index, category, goal, contractions):
                return True
        if self.spec.monotonic and any(
            self.prove(gamma[:index] + gamma[index + 1 :], goal, contractions) for index in range(len(gamma))
        ):
            return True
        if self.spec.contractive and contractions > 0:
            return any(
                self.prove(self._join(gamma[: index + 1], (category,), gamma[index + 1 :]), goal, contractions - 1)
                for index, category in enumerate(gamma)
            )
        return False

    def _left_rule(self, gamma: _Flat, index: int, category: Category, goal: Category, contractions: int) -> bool:
        if not isinstance(category, Compound) or category.connective is Connective.PRODUCT:
            return False
        rest = gamma[:index] + gamma[index + 1 :]
        if category.connective is Connective.OVER:
            result, argument = category.left, category.right
        else:
            argument, result = category.left, category.right
        if self.spec.commutative:
            return any(
                self.prove(used, argument, contractions) and self.prove(self._join(left, (result,)), goal, contractions)
                for used, left in self._splits(rest)
            )
        if category.connective is Connective.OVER:
            candidates = (
                (gamma[index + 1 : end], (*gamma[:index], result, *gamma[end:]))
                for end in range(index + 1, len(gamma) + 1)
            )
        else:
            candidates = (
                (gamma[start:index], (*gamma[:start], result, *gamma[index + 1 :]))
                for start in range(index, -1, -1)
            )
        return any(
            self.prove(used, argument, contractions) and self.prove(remaining, goal, contractions)
            for used, remaining in candidates
        )


def _pair(left: _Tree, right: _Tree) -> _Tree:
    if left is None:
        return right
    if right is None:
        return left
    return (left, right)


type _Path = tuple[int, ...]


class _TreeSearch:
    def __init__(self, spec: CalculusSpec) -> None:
        self.spec = spec
        self._memo: dict[tuple[_Tree, Category], bool] = {}

    def prove(self, tree: _Tree, goal: Category) -> bool:
        key = (tree, goal)
        if key not in self._memo:
            self._memo[key] = False
            self._memo[key] = self._search(tree, goal)
        return self._memo[key]

    def _positions(self, tree: _Tree, path: _Path = ()) -> Iterator[tuple[_Path, _Tree]]:
        yield path, tree
        if isinstance(tree, tuple):
            yield from self._positions(tree[0], (*path, 0))
            yield from self._positions(tree[1], (*path, 1))

    def _replace(self, tree: _Tree, path: _Path, replacement: _Tree) -> _Tree:
        if not path:
            return replacement
        assert isinstance(tree, tuple)  # noqa: S101
        if path[0] == 0:
            return _pair(self._replace(tree[0], path[1:], replacement), tree[1])
        return _pair(tree[0], self._replace(tree[1], path[1:], replacement))

    def _search(self, tree: _Tree, goal: Category) -> bool:  # noqa: C901
        if tree == goal:
            return True
        for path, node in self._positions(tree):
            if isinstance(node, Compound) and node.connective is Connective.PRODUCT:
                return self.prove(self._replace(tree, path, (node.left, node.right)), goal)
        match goal:
            case Compound(connective=Connective.OVER, left=result, right=argument):
                return self.prove(_pair(tree, argument), result)
            case Compound(connective=Connective.UNDER, left=argument, right=result):
                return self.prove(_pair(argument, tree), result)
            case Compound(connective=Connective.PRODUCT, left=left, right=right):
                splits: list[tuple[_Tree, _Tree]] = [(None, tree), (tree, None)]
                if isinstance(tree, tuple):
                    splits.insert(0, tree)
                    if self.spec.commutative:
                        splits.insert(1, (tree[1], tree[0]))
                if any(self.prove(head, left) and self.prove(tail, right) for head, tail in splits):
                    return True
            case _:
                pass
        return any(
            self.prove(used, argument) and self.prove(self._replace(tree, path, result), goal)
            for path, used, argument, result in self._left_redexes(tree)
        )

    def _left_redexes(self, tree: _Tree) -> Iterator[tuple[_Path, _Tree, Category, Category]]:
        """Yields (where the functor's result goes, what proves its argument, argument, result)."""
        for path, node in self._positions(tree):
            if isinstance(node, Compound) and node.connective is not Connective.PRODUCT:
                if node.connective is Connective.OVER:
                    yield path, None, node.right, node.left
                else:
                    yield path, None, node.left, node.right
            if not isinstance(node, tuple):
                continue
            first, second = node
            for functor, other, functor_first in ((first, second, True), (second, first, False)):
                if not isinstance(functor, Compound):
                    continue
                if functor.connective is Connective.OVER and (functor_first or self.spec.commutative):
                    yield path, other, functor.right, functor.left
                elif functor.connective is Connective.UNDER and (not functor_first or self.spec.commutative):
                    yield path, other, functor.left, functor.right


def oracle_prove(sequent: Sequent, spec: CalculusSpec, depth: int = DEFAULT_DEPTH) -> Verdict:
    """Searches for a cut-free sequent proof.

    Contraction is bounded by ``depth`` copies per antecedent formula. Expansion has no sequent rule here,
    so a failed search in a calculus that copies or adds resources is reported as unknown.

    Args:
        sequent (Sequent): The sequent to decide.
        spec (CalculusSpec): The calculus.
        depth (int): Contraction bound per antecedent formula, at least 1.

    Raises:
        ValueError: If ``depth`` is below 1.

    Returns:
        Verdict: PROVED, REFUTED when the finite search space is exhausted, UNKNOWN otherwise.
    """
    if depth < 1:
        err_msg = f"Oracle depth must be at least 1, got {depth}"
        raise ValueError(err_msg)
    if spec.associative:
        search = _FlatSearch(spec, depth * len(sequent.antecedents))
        gamma = tuple(sorted(sequent.antecedents, key=_key)) if spec.commutative else sequent.antecedents
        proved = search.prove(gamma, sequent.succedent, search.contractions)
    else:
        proved = _TreeSearch(spec).prove(sequent.structure, sequent.succedent)
    if proved:
        verdict = Verdict.PROVED
    elif spec.resource_sensitive:
        verdict = Verdict.REFUTED
    else:
        verdict = Verdict.UNKNOWN
    logger.debug("oracle: %s in %s is %s", sequent, spec.display_name, verdict.value)
    return verdict


def categories_up_to(atoms: tuple[Atom, ...], max_connectives: int) -> list[Category]:
    """Every category over ``atoms`` with at most ``max_connectives`` connectives, fewest first."""
    by_count: list[list[Category]] = [list(atoms)]
    for count in range(1, max_connectives + 1):
        level: list[Category] = []
        for connective in Connective:
            for left_count in range(count):
                for left in by_count[left_count]:
                    for right in by_count[count - 1 - left_count]:
                        level.append(Compound(connective, left, right))  # noqa: PERF401
        by_count.append(level)
    return [category for level in by_count for category in level]


def enumerate_sequents(
    atoms: tuple[Atom, ...],
    max_connectives: int,
    max_antecedents: int,
    spec: CalculusSpec | None = None,
) -> Iterator[Sequent]:
    """Deterministically enumerates sequents over the given atoms.

    Args:
        atoms (tuple[Atom, ...]): The atoms to build categories from, nonempty.
        max_connectives (int): Connective bound per category.
        max_antecedents (int): Antecedent bound per sequent.
        spec (CalculusSpec | None): When given and resource-sensitive, sequents failing count invariance
            are skipped.

    Raises:
        ValueError: If ``atoms`` is empty.

    Yields:
        Sequent: Sequents with fewer antecedents first, then in category order.
    """
    if not atoms:
        err_msg = "At least one atom is needed to enumerate sequents"
        raise ValueError(err_msg)
    categories = categories_up_to(atoms, max_connectives)
    filtered = spec is not None and spec.resource_sensitive
    for size in range(1, max_antecedents + 1):
        for antecedents in product(categories, repeat=size):
            for succedent in categories:
                if filtered and not count_filter(antecedents, succedent):
                    continue
                yield Sequent(antecedents, succedent)
