"""The non-branching tableau rules.

Alpha rules decompose one formula into two using a fresh ground token. Sigma rules combine a major
premise (a true implication or a false product) with a minor premise that matches one of its parts.
"""

from lambek_lke.calculus.categories import Compound, Connective
from lambek_lke.calculus.frames import CalculusSpec
from lambek_lke.calculus.labels import IDENTITY, Comp, Token, compose, left_residual, right_residual
from lambek_lke.calculus.normal_forms import canonical, chain, from_chain, sort_tokens
from lambek_lke.errors import NotAlphaFormulaError
from lambek_lke.tableau.slf import SLF, FreshNames, Justification, Rule, Sign


def is_alpha(node: SLF) -> bool:
    r"""True for ``F A\B``, ``F A/B`` and ``T A*B``."""
    match node.sign, node.cat:
        case Sign.F, Compound(connective=Connective.UNDER | Connective.OVER):
            return True
        case Sign.T, Compound(connective=Connective.PRODUCT):
            return True
        case _:
            return False


def apply_alpha(node: SLF, fresh: FreshNames, first_line: int) -> tuple[SLF, SLF]:
    r"""Decomposes ``F A\B``, ``F A/B`` or ``T A*B`` with a fresh ground token ``a``.

    ``F A\B : x`` gives ``T A : a`` and ``F B : a.x``; ``F A/B : x`` gives ``T B : a`` and ``F A : x.a``;
    ``T A*B : x`` gives ``T A : a`` and ``T B : x<|a``.

    Args:
        node (SLF): The formula to decompose.
        fresh (FreshNames): Source of the new ground name.
        first_line (int): Line number of the first conclusion; the second gets the next one.

    Raises:
        NotAlphaFormulaError: If ``node`` has none of the three shapes.

    Returns:
        tuple[SLF, SLF]: The two conclusions in the order they are written down.
    """
    if not is_alpha(node):
        err_msg = f"Line {node.line} ({node.sign.value} {node.cat}) is not an alpha formula"
        raise NotAlphaFormulaError(err_msg)
    cat = node.cat
    assert isinstance(cat, Compound)  # noqa: S101
    name = fresh.fresh_ground()
    x = node.label
    match cat.connective:
        case Connective.UNDER:
            rule = Rule.ALPHA_I
            first = (Sign.T, cat.left, name)
            second = (Sign.F, cat.right, compose(name, x))
        case Connective.OVER:
            rule = Rule.ALPHA_II
            first = (Sign.T, cat.right, name)
            second = (Sign.F, cat.left, compose(x, name))
        case Connective.PRODUCT:
            rule = Rule.ALPHA_III
            first = (Sign.T, cat.left, name)
            second = (Sign.T, cat.right, right_residual(x, name))
    justification = Justification(rule, (node.line,))
    return (
        SLF(first[0], first[1], first[2], first_line, justification),
        SLF(second[0], second[1], second[2], first_line + 1, justification),
    )


def is_sigma_major(node: SLF) -> bool:
    """True for formulae that take a partner: true implications and false products."""
    match node.sign, node.cat:
        case Sign.T, Compound(connective=Connective.UNDER | Connective.OVER):
            return True
        case Sign.F, Compound(connective=Connective.PRODUCT):
            return True
        case _:
            return False


def sigma_rules(major: SLF, minor: SLF) -> tuple[Rule, ...]:
    """The sigma rules under which ``minor`` is a partner of ``major``."""
    if not isinstance(major.cat, Compound):
        return ()
    left, right = major.cat.left, major.cat.right
    candidates: list[tuple[Rule, Sign, object]] = []
    match major.sign, major.cat.connective:
        case Sign.T, Connective.UNDER:
            candidates = [(Rule.SIGMA_I, Sign.T, left), (Rule.SIGMA_II, Sign.F, right)]
        case Sign.T, Connective.OVER:
            candidates = [(Rule.SIGMA_IV, Sign.T, right), (Rule.SIGMA_III, Sign.F, left)]
        case Sign.F, Connective.PRODUCT:
            candidates = [(Rule.SIGMA_V, Sign.T, left), (Rule.SIGMA_VI, Sign.T, right)]
        case _:
            pass
    return tuple(rule for rule, sign, cat in candidates if minor.sign is sign and minor.cat == cat)


def split_right(z: Token, x: Token, spec: CalculusSpec) -> Token | None:
    """Finds ``y`` with ``z = y.x`` syntactically on canonical forms, or None."""
    whole, part = chain(canonical(z, spec), spec), chain(canonical(x, spec), spec)
    if spec.commutative:
        return _split_multiset(whole, part)
    if whole[len(whole) - len(part) :] == part:
        return from_chain(whole[: len(whole) - len(part)])
    return _split_pair(canonical(z, spec), canonical(x, spec), spec, from_right=True)


def split_left(z: Token, x: Token, spec: CalculusSpec) -> Token | None:
    """Finds ``y`` with ``z = x.y`` syntactically on canonical forms, or None."""
    whole, part = chain(canonical(z, spec), spec), chain(canonical(x, spec), spec)
    if spec.commutative:
        return _split_multiset(whole, part)
    if whole[: len(part)] == part:
        return from_chain(whole[len(part) :])
    return _split_pair(canonical(z, spec), canonical(x, spec), spec, from_right=False)


def _split_multiset(whole: tuple[Token, ...], part: tuple[Token, ...]) -> Token | None:
    remaining = list(whole)
    for item in part:
        if item not in remaining:
            return None
        remaining.remove(item)
    return from_chain(sort_tokens(remaining))


def _split_pair(z: Token, x: Token, spec: CalculusSpec, *, from_right: bool) -> Token | None:
    if spec.associative:
        return None
    if z == x:
        return IDENTITY
    if not isinstance(z, Comp):
        return None
    if from_right and z.right == x:
        return z.left
    if not from_right and z.left == x:
        return z.right
    return None


def apply_sigma(  # noqa: PLR0911
    major: SLF,
    minor: SLF,
    spec: CalculusSpec,
    line: int,
    *,
    rule: Rule | None = None,
    residual: bool = False,
    residual_fallback: bool = False,
) -> SLF | None:
    """Combines a major and a minor premise into one conclusion.

    Sigma (ii) and (iii) split the false label syntactically. With ``residual`` set they conclude with the
    greatest label that still works instead (``z|>x`` and ``z<|x``); with ``residual_fallback`` set they
    do so only when no split exists.

    Args:
        major (SLF): A true implication or a false product.
        minor (SLF): The partner formula.
        spec (CalculusSpec): The frame used to split labels.
        line (int): Line number of the conclusion.
        rule (Rule | None): The sigma rule to use when several apply; the first applicable one otherwise.
        residual (bool): Use the residual label for sigma (ii) and (iii) even when a split exists.
        residual_fallback (bool): Use the residual label for sigma (ii) and (iii) when no split exists.

    Returns:
        SLF | None: The conclusion, or None when ``minor`` is not a partner under ``rule`` or the false label
            does not split.
    """
    applicable = sigma_rules(major, minor)
    chosen = rule if rule is not None else next(iter(applicable), None)
    if chosen is None or chosen not in applicable:
        return None
    cat = major.cat
    assert isinstance(cat, Compound)  # noqa: S101
    x, y = major.label, minor.label
    justification = Justification(chosen, tuple(sorted((major.line, minor.line))))
    match chosen:
        case Rule.SIGMA_I:
            return SLF(Sign.T, cat.right, compose(y, x), line, justification)
        case Rule.SIGMA_II:
            label = left_residual(y, x) if residual else split_right(y, x, spec)
            if label is None and residual_fallback:
                label = left_residual(y, x)
            return None if label is None else SLF(Sign.F, cat.left, label, line, justification)
        case Rule.SIGMA_III:
            label = right_residual(y, x) if residual else split_left(y, x, spec)
            if label is None and residual_fallback:
                label = right_residual(y, x)
            return None if label is None else SLF(Sign.F, cat.right, label, line, justification)
        case Rule.SIGMA_IV:
            return SLF(Sign.T, cat.left, compose(x, y), line, justification)
        case Rule.SIGMA_V:
            return SLF(Sign.F, cat.right, right_residual(x, y), line, justification)
        case Rule.SIGMA_VI:
            return SLF(Sign.F, cat.left, left_residual(x, y), line, justification)
        case _:
            return None


def has_split(major: SLF, minor: SLF, rule: Rule, spec: CalculusSpec) -> bool:
    """True when sigma (ii) or (iii) can split the false label syntactically."""
    match rule:
        case Rule.SIGMA_II:
            return split_right(minor.label, major.label, spec) is not None
        case Rule.SIGMA_III:
            return split_left(minor.label, major.label, spec) is not None
        case _:
            return False
