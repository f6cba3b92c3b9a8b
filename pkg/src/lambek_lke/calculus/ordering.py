"""The information order ``x <= y`` and bounded variable instantiation.

Deciding ``x <= y`` is a goal-directed search over a left structure and a right token: compositions on the
left are resources, compositions on the right are split among them, and a residual on the left consumes
the part of the structure that proves its denominator. Associative frames keep the left structure as a
flat chain (a sorted one when commutative), other frames keep the bracketing tree.
"""

import logging
from abc import ABC, abstractmethod
from collections.abc import Callable, Iterator, Sequence
from itertools import chain as concat
from typing import final, override

from pydantic import BaseModel, ConfigDict

from lambek_lke.calculus.frames import CalculusSpec
from lambek_lke.calculus.labels import (
    IDENTITY,
    Comp,
    LeftRes,
    RightRes,
    Substitution,
    Token,
    Var,
    compose,
    grounds,
    is_ground,
    leaf_count,
    render_token,
    substitute,
    variables,
)
from lambek_lke.calculus.normal_forms import (
    DEFAULT_DEPTH,
    canonical,
    chain,
    from_chain,
    sort_tokens,
    sub_multisets,
)

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 64


class ClosureStep(BaseModel):
    """One line of an order witness: the claim reached and the law that justified it."""

    model_config = ConfigDict(frozen=True)

    claim: str
    law: str

    def render(self) -> str:
        return f"<= {self.claim}   by {self.law}"


type Witness = tuple[ClosureStep, ...]


class _Search[S](ABC):
    """Memoized search shared by the chain and tree strategies.

    Every goal expanded costs one step; a query stops expanding once its step allowance is spent.
    """

    def __init__(self, spec: CalculusSpec) -> None:
        self.spec = spec
        self.steps = 0
        self._remaining = 0
        self._memo: dict[tuple[S, Token], Witness | None] = {}
        self._active: set[tuple[S, Token]] = set()
        self._cuts = 0

    def run(self, left: S, right: Token, budget: int) -> Witness | None:
        """Proves ``left <= right`` expanding at most ``budget`` goals."""
        self._remaining = budget
        return self.prove(left, right)

    def prove(self, left: S, right: Token) -> Witness | None:
        key = (left, right)
        if key in self._memo:
            return self._memo[key]
        if self._remaining <= 0 or key in self._active:
            self._cuts += 1
            return None
        self._remaining -= 1
        self.steps += 1
        self._active.add(key)
        cuts_before = self._cuts
        try:
            result = self._search(left, right)
        finally:
            self._active.discard(key)
        if result is not None or self._cuts == cuts_before:
            self._memo[key] = result
        return result

    @abstractmethod
    def structure(self, token: Token) -> S: ...

    @abstractmethod
    def render(self, structure: S) -> str: ...

    @abstractmethod
    def _search(self, left: S, right: Token) -> Witness | None: ...

    def _step(self, claim: str, law: str) -> ClosureStep:
        return ClosureStep(claim=claim, law=law)

    def _goal(self, left: S, right: Token) -> str:
        return f"{self.render(left)} <= {render_token(right)}"


@final
class _ChainSearch(_Search[tuple[Token, ...]]):
    @override
    def structure(self, token: Token) -> tuple[Token, ...]:
        return self._join(chain(token, self.spec))

    @override
    def render(self, structure: tuple[Token, ...]) -> str:
        return render_token(from_chain(structure))

    def _join(self, *parts: Sequence[Token]) -> tuple[Token, ...]:
        joined = tuple(concat.from_iterable(parts))
        return sort_tokens(joined) if self.spec.commutative else joined

    @override
    def _search(self, left: tuple[Token, ...], right: Token) -> Witness | None:
        if left == self.structure(right):
            return ()
        match right:
            case RightRes(num=num, den=den):
                extended = self._join(chain(den, self.spec), left)
                rest = self.prove(extended, num)
                return None if rest is None else (self._step(self._goal(extended, num), "residuation"), *rest)
            case LeftRes(num=num, den=den):
                extended = self._join(left, chain(den, self.spec))
                rest = self.prove(extended, num)
                return None if rest is None else (self._step(self._goal(extended, num), "residuation"), *rest)
            case _:
                pass
        attempts = concat(
            self._cancellations(left, right),
            self._splits(left, right),
            self._structural(left, right),
        )
        return next(attempts, None)

    def _segments(self, left: tuple[Token, ...], index: int, *, before: bool) -> Iterator[tuple[int, int]]:
        if self.spec.commutative:
            return
        if before:
            for start in range(index, -1, -1):
                yield start, index
        else:
            for end in range(index + 1, len(left) + 1):
                yield index + 1, end

    def _cancellations(self, left: tuple[Token, ...], right: Token) -> Iterator[Witness]:
        for index, element in enumerate(left):
            match element:
                case RightRes(num=num, den=den):
                    before = True
                case LeftRes(num=num, den=den):
                    before = False
                case _:
                    continue
            if self.spec.commutative:
                others = left[:index] + left[index + 1 :]
                for used, rest in sub_multisets(others):
                    reduced = self._join(rest, chain(num, self.spec))
                    yield from self._cancel(left, right, (used, element, num, den), reduced)
                continue
            for start, end in self._segments(left, index, before=before):
                used = left[start:end]
                if before:
                    reduced = left[:start] + chain(num, self.spec) + left[index + 1 :]
                    grouped = (*left[:start], from_chain((*used, element)), *left[index + 1 :])
                else:
                    reduced = left[:index] + chain(num, self.spec) + left[end:]
                    grouped = (*left[:index], from_chain((element, *used)), *left[end:])
                yield from self._cancel(left, right, (used, element, num, den), reduced, grouped)

    def _cancel(
        self,
        left: tuple[Token, ...],
        right: Token,
        redex: tuple[tuple[Token, ...], Token, Token, Token],
        reduced: tuple[Token, ...],
        grouped: tuple[Token, ...] | None = None,
    ) -> Iterator[Witness]:
        used, element, _num, den = redex
        consumed = self.prove(used, den)
        if consumed is None:
            return
        rest = self.prove(reduced, right)
        if rest is None:
            return
        steps: list[ClosureStep] = list(consumed)
        if len(left) > len(used) + 1:
            if grouped is None:
                grouped = (from_chain((*used, element)), *self._join(_without(left, (*used, element))))
            law = "commutativity" if self.spec.commutative else "associativity"
            steps.append(self._step(render_token(from_chain(grouped)), law))
        law = "property (1)" if not consumed else "property (1) and order preservation"
        steps.append(self._step(self.render(reduced), law))
        yield (*steps, *rest)

    def _splits(self, left: tuple[Token, ...], right: Token) -> Iterator[Witness]:
        if not isinstance(right, Comp):
            return
        parts = chain(right, self.spec)
        first, second = parts[0], from_chain(parts[1:])
        if self.spec.commutative:
            candidates = sub_multisets(left)
        else:
            candidates = [(left[:cut], left[cut:]) for cut in range(len(left) + 1)]
        for head, tail in candidates:
            head_witness = self.prove(head, first)
            if head_witness is None:
                continue
            tail_witness = self.prove(tail, second)
            if tail_witness is None:
                continue
            claim = f"{self._goal(head, first)} and {self._goal(tail, second)}"
            yield (self._step(claim, "order preservation"), *head_witness, *tail_witness)

    def _structural(self, left: tuple[Token, ...], right: Token) -> Iterator[Witness]:
        if self.spec.contractive:
            for width in range(1, len(left) // 2 + 1):
                for start in range(len(left) - 2 * width + 1):
                    if self.spec.commutative and width > 1:
                        break
                    if left[start : start + width] == left[start + width : start + 2 * width]:
                        contracted = left[: start + width] + left[start + 2 * width :]
                        yield from self._rewrite(contracted, right, "contraction")
        room = len(left) < leaf_count(right)
        if self.spec.expansive and room:
            for index, element in enumerate(left):
                expanded = self._join(left[: index + 1], (element,), left[index + 1 :])
                yield from self._rewrite(expanded, right, "expansion")
        if self.spec.monotonic and room:
            for extra in grounds(right):
                for index in range(len(left)):
                    weakened = self._join(left[: index + 1], (extra,), left[index + 1 :])
                    yield from self._rewrite(weakened, right, "monotonicity")

    def _rewrite(self, rewritten: tuple[Token, ...], right: Token, law: str) -> Iterator[Witness]:
        rest = self.prove(rewritten, right)
        if rest is not None:
            yield (self._step(self.render(rewritten), law), *rest)


def _without(elements: tuple[Token, ...], removed: Sequence[Token]) -> tuple[Token, ...]:
    remaining = list(elements)
    for item in removed:
        remaining.remove(item)
    return tuple(remaining)


type _Path = tuple[int, ...]


@final
class _TreeSearch(_Search[Token]):
    @override
    def structure(self, token: Token) -> Token:
        return token

    @override
    def render(self, structure: Token) -> str:
        return render_token(structure)

    def _pair(self, left: Token, right: Token) -> Token:
        joined = compose(left, right)
        if self.spec.commutative and isinstance(joined, Comp):
            first, second = sort_tokens((joined.left, joined.right))
            return Comp(first, second)
        return joined

    @override
    def _search(self, left: Token, right: Token) -> Witness | None:
        if left == right:
            return ()
        match right:
            case RightRes(num=num, den=den):
                extended = self._pair(den, left)
                rest = self.prove(extended, num)
                return None if rest is None else (self._step(self._goal(extended, num), "residuation"), *rest)
            case LeftRes(num=num, den=den):
                extended = self._pair(left, den)
                rest = self.prove(extended, num)
                return None if rest is None else (self._step(self._goal(extended, num), "residuation"), *rest)
            case _:
                pass
        attempts = concat(
            self._cancellations(left, right),
            self._splits(left, right),
            self._structural(left, right),
        )
        return next(attempts, None)

    def _positions(self, token: Token, path: _Path = ()) -> Iterator[tuple[_Path, Token]]:
        yield path, token
        if isinstance(token, Comp):
            yield from self._positions(token.left, (*path, 0))
            yield from self._positions(token.right, (*path, 1))

    def _replace(self, token: Token, path: _Path, replacement: Token) -> Token:
        if not path:
            return replacement
        if not isinstance(token, Comp):
            err_msg = f"Path {path} does not address a node of {render_token(token)}"
            raise ValueError(err_msg)
        head, *tail = path
        if head == 0:
            return self._pair(self._replace(token.left, tuple(tail), replacement), token.right)
        return self._pair(token.left, self._replace(token.right, tuple(tail), replacement))

    def _redexes(self, node: Token) -> Iterator[tuple[Token, Token, Token]]:
        """Yields (consumed structure, numerator, denominator) for residuals that can cancel at ``node``."""
        match node:
            case RightRes(num=num, den=den) | LeftRes(num=num, den=den):
                yield IDENTITY, num, den
            case Comp(left=left, right=RightRes(num=num, den=den)):
                yield left, num, den
            case _:
                pass
        match node:
            case Comp(left=LeftRes(num=num, den=den), right=right):
                yield right, num, den
            case _:
                pass
        if self.spec.commutative and isinstance(node, Comp):
            match node:
                case Comp(left=RightRes(num=num, den=den), right=right):
                    yield right, num, den
                case _:
                    pass

    def _cancellations(self, left: Token, right: Token) -> Iterator[Witness]:
        for path, node in self._positions(left):
            for used, num, den in self._redexes(node):
                consumed = self.prove(used, den)
                if consumed is None:
                    continue
                reduced = self._replace(left, path, num)
                rest = self.prove(reduced, right)
                if rest is None:
                    continue
                law = "property (1)" if not consumed else "property (1) and order preservation"
                yield (*consumed, self._step(self.render(reduced), law), *rest)

    def _splits(self, left: Token, right: Token) -> Iterator[Witness]:
        if not isinstance(right, Comp):
            return
        candidates = [(IDENTITY, left), (left, IDENTITY)]
        if isinstance(left, Comp):
            candidates.insert(0, (left.left, left.right))
            if self.spec.commutative:
                candidates.insert(1, (left.right, left.left))
        for head, tail in candidates:
            head_witness = self.prove(head, right.left)
            if head_witness is None:
                continue
            tail_witness = self.prove(tail, right.right)
            if tail_witness is None:
                continue
            claim = f"{self._goal(head, right.left)} and {self._goal(tail, right.right)}"
            yield (self._step(claim, "order preservation"), *head_witness, *tail_witness)

    def _structural(self, left: Token, right: Token) -> Iterator[Witness]:
        room = leaf_count(left) < leaf_count(right)
        for path, node in self._positions(left):
            rewrites: list[tuple[Token, str]] = []
            if self.spec.contractive and isinstance(node, Comp) and node.left == node.right:
                rewrites.append((node.left, "contraction"))
            if self.spec.expansive and room and not isinstance(node, Comp):
                rewrites.append((self._pair(node, node), "expansion"))
            if self.spec.monotonic and room:
                rewrites.extend((self._pair(node, extra), "monotonicity") for extra in grounds(right))
            for replacement, law in rewrites:
                rewritten = self._replace(left, path, replacement)
                rest = self.prove(rewritten, right)
                if rest is not None:
                    yield (self._step(self.render(rewritten), law), *rest)


@final
class LabelOrder:
    """Decides the information order of one frame, remembering earlier answers.

    One instance is meant to live for a single proof search so that repeated closure checks reuse work.
    ``on_check`` is called before every question not answered before, which lets a caller charge the
    checks against a budget of its own.
    """

    def __init__(
        self,
        spec: CalculusSpec,
        budget: int = DEFAULT_BUDGET,
        normalize_depth: int = DEFAULT_DEPTH,
        on_check: Callable[[], None] | None = None,
    ) -> None:
        self.spec = spec
        self.budget = budget
        self.normalize_depth = normalize_depth
        self.checks = 0
        self._on_check = on_check
        self._answers: dict[tuple[Token, Token], Witness | None] = {}
        self._search: _ChainSearch | _TreeSearch = _ChainSearch(spec) if spec.associative else _TreeSearch(spec)

    @property
    def steps(self) -> int:
        """Number of search goals expanded so far."""
        return self._search.steps

    def explain(self, x: Token, y: Token) -> Witness | None:
        """Searches for a witness of ``x <= y``, expanding at most ``budget`` goals.

        Args:
            x (Token): The smaller side, typically the label of a true formula.
            y (Token): The larger side, typically the label of a false formula.

        Raises:
            ValueError: If either token contains a variable.
            LimitExceededError: If a token has no canonical form within the configured depth.
            ResourceLimitError: Raised by ``on_check`` when the caller's budget is spent.

        Returns:
            Witness | None: The steps leading from ``x`` to ``y``, or None when none was found within budget.
        """
        if not (is_ground(x) and is_ground(y)):
            err_msg = f"Order is only decided on variable-free tokens, got {render_token(x)} and {render_token(y)}"
            raise ValueError(err_msg)
        if (x, y) in self._answers:
            return self._answers[(x, y)]
        if self._on_check is not None:
            self._on_check()
        self.checks += 1
        canonical_x = canonical(x, self.spec, self.normalize_depth)
        canonical_y = canonical(y, self.spec, self.normalize_depth)
        witness = self._search.run(self._search.structure(canonical_x), canonical_y, self.budget)
        if witness is not None:
            logger.debug("Found %s <= %s in %d steps", render_token(x), render_token(y), len(witness))
            if render_token(canonical_x) != render_token(x):
                witness = (ClosureStep(claim=render_token(canonical_x), law=self._regrouping_law()), *witness)
        self._answers[(x, y)] = witness
        return witness

    def _regrouping_law(self) -> str:
        if self.spec.commutative:
            return "commutativity"
        return "associativity" if self.spec.associative else "identity"

    def leq(self, x: Token, y: Token) -> bool:
        """True when a witness of ``x <= y`` is found within budget."""
        return self.explain(x, y) is not None


def leq(x: Token, y: Token, spec: CalculusSpec, budget: int = DEFAULT_BUDGET) -> bool:
    """Decides ``x <= y`` in the frame ``spec`` expanding at most ``budget`` search goals.

    A False answer means no derivation was found within budget.
    """
    return LabelOrder(spec, budget).leq(x, y)


def iter_substitutions(
    goal: tuple[Token, Token],
    order: LabelOrder,
    pool: Sequence[Token],
    base: Substitution | None = None,
) -> Iterator[dict[str, Token]]:
    """Yields every assignment of the goal's free variables from ``pool`` that makes the goal hold.

    Variables are assigned depth-first in order of appearance and candidates are tried in pool order.

    Args:
        goal (tuple[Token, Token]): The pair ``(x, y)`` that should satisfy ``x <= y``.
        order (LabelOrder): The order to decide with.
        pool (Sequence[Token]): Variable-free candidate tokens.
        base (Substitution | None): Bindings already fixed elsewhere in the tableau.

    Yields:
        dict[str, Token]: ``base`` extended with bindings for the goal's free variables.
    """
    bindings = dict(base or {})
    x, y = (substitute(side, bindings) for side in goal)
    free: list[Var] = list(dict.fromkeys((*variables(x), *variables(y))))
    candidates = tuple(dict.fromkeys(token for token in pool if is_ground(token)))

    def assign(index: int, current: dict[str, Token]) -> Iterator[dict[str, Token]]:
        if index == len(free):
            if order.leq(substitute(x, current), substitute(y, current)):
                yield dict(current)
            return
        for candidate in candidates:
            current[free[index].name] = candidate
            yield from assign(index + 1, current)
            del current[free[index].name]

    yield from assign(0, bindings)


def instantiate(
    goal: tuple[Token, Token], spec: CalculusSpec, pool: Sequence[Token], budget: int = DEFAULT_BUDGET
) -> dict[str, Token] | None:
    """Finds the first pool substitution for the goal's variables under which ``x <= y`` holds.

    Args:
        goal (tuple[Token, Token]): The pair ``(x, y)``, possibly containing variables.
        spec (CalculusSpec): The frame to decide the order in.
        pool (Sequence[Token]): Variable-free candidates in insertion order.
        budget (int): Search budget for each order check.

    Returns:
        dict[str, Token] | None: The first substitution found, or None.
    """
    return next(iter_substitutions(goal, LabelOrder(spec, budget), pool), None)
