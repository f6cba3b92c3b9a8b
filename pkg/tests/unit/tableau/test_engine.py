import contextlib
import time
from collections.abc import Iterator

import pytest
from hamcrest import assert_that, contains_string, equal_to, has_length, is_, less_than
from hypothesis import given, settings
from hypothesis import strategies as st

from lambek_lke.calculus.categories import Atom, Category, subformulae
from lambek_lke.calculus.frames import LP, LPC, LPE, NL, PRESETS, CalculusSpec, L
from lambek_lke.calculus.sequents import Sequent, parse_sequent
from lambek_lke.errors import ResourceLimitError
from lambek_lke.settings import ProofOptions
from lambek_lke.tableau import laws
from lambek_lke.tableau.branch import Branch, Tableau
from lambek_lke.tableau.engine import count_filter, expand, net_counts, prove, prove_sequent
from lambek_lke.tableau.laws import REDUCTION_LAWS, ReductionLaw
from lambek_lke.tableau.slf import SLF
from tests.helpers.strategies import categories

S, NP = Atom("S"), Atom("NP")

WORKED_EXAMPLE = """\
1- NP, (NP\\S)/NP => S/NP   [goal]
2- T NP*((NP\\S)/NP) : m   [premise]
3- F S/NP : m   [premise]
4- T NP : a   [alpha(iii) 2]
5- T (NP\\S)/NP : m<|a   [alpha(iii) 2]
6- T NP : b   [alpha(ii) 3]
7- F S : m.b   [alpha(ii) 3]
8- T NP\\S : (m<|a).b   [sigma(iv) 5,6]
9- T S : a.((m<|a).b)   [sigma(i) 4,8]
closure:
  branch 1: 9 T S : a.((m<|a).b)  against  7 F S : m.b
    <= (a.(m<|a)).b   by associativity
    <= m.b   by property (1)"""


def test_worked_example_derivation() -> None:
    result = prove_sequent(parse_sequent("NP, (NP\\S)/NP => S/NP"), L)
    assert_that(result.theorem, is_(True))
    assert_that(result.derivation, equal_to(WORKED_EXAMPLE))
    assert_that(result.stats.beta, equal_to(0))


def test_worked_example_fails_without_associativity() -> None:
    result = prove_sequent(parse_sequent("NP, (NP\\S)/NP => S/NP"), NL)
    assert_that(result.theorem, is_(False))


@pytest.mark.parametrize("law", REDUCTION_LAWS, ids=lambda law: law.name)
def test_reduction_laws_hold_in_l(law: ReductionLaw) -> None:
    assert_that(prove_sequent(law.sequent, L).theorem, is_(True))


@pytest.mark.parametrize("law", REDUCTION_LAWS, ids=lambda law: law.name)
def test_reduction_laws_hold_without_branching(law: ReductionLaw) -> None:
    """Test linear completion alone settles every reduction law."""
    result = prove_sequent(law.sequent, L, ProofOptions(beta_enabled=False))
    assert_that(result.theorem, is_(True))
    assert_that(result.stats.beta, equal_to(0))


@pytest.mark.parametrize("name", ["R3a", "R3b", "R6a", "R6b"])
def test_associative_laws_fail_in_nl(name: str) -> None:
    assert_that(prove_sequent(laws.law(name).sequent, NL).theorem, is_(False))


@pytest.mark.parametrize(
    "law", [law for law in REDUCTION_LAWS if not law.needs_associativity], ids=lambda law: law.name
)
def test_application_and_lifting_hold_in_nl(law: ReductionLaw) -> None:
    assert_that(prove_sequent(law.sequent, NL).theorem, is_(True))


def test_application_closes_linearly_in_nl() -> None:
    result = prove_sequent(parse_sequent("X/Y, Y => X"), NL)
    assert_that(result.theorem, is_(True))
    assert_that(result.stats.beta, equal_to(0))


def test_permuted_application_needs_commutativity() -> None:
    sequent = parse_sequent("Y, X/Y => X")
    assert_that(prove_sequent(sequent, L).theorem, is_(False))
    assert_that(prove_sequent(sequent, LP).theorem, is_(True))


@pytest.mark.parametrize("spec", list(PRESETS.values()), ids=lambda spec: spec.display_name)
def test_identity_sequent_in_every_calculus(spec: CalculusSpec) -> None:
    result = prove_sequent(parse_sequent("X => X"), spec)
    assert_that(result.theorem, is_(True))
    assert_that(result.closures, has_length(1))
    assert_that(result.derivation, contains_string("by reflexivity"))


def test_shifted_object_in_lp() -> None:
    sequent = parse_sequent("NP, ((NP\\S)/PP)/NP, PP, NP => S")
    assert_that(prove_sequent(sequent, LP).theorem, is_(True))


def test_count_invariance_rejects_before_search() -> None:
    result = prove([NP], S, L)
    assert_that(result.theorem, is_(False))
    assert_that(result.filtered, is_(True))
    assert_that(result.derivation, equal_to("count invariance fails: NP=+1, S=-1"))


def test_count_invariance_is_skipped_when_resources_are_not_counted() -> None:
    result = prove([S, S], S, LPE)
    assert_that(result.filtered, is_(False))
    assert_that(result.theorem, is_(False))


def test_net_counts() -> None:
    sequent = parse_sequent("NP, (NP\\S)/NP => S/NP")
    assert_that(net_counts(sequent.antecedents, sequent.succedent), equal_to({"NP": 0, "S": 0}))
    assert_that(count_filter(sequent.antecedents, sequent.succedent), is_(True))
    assert_that(count_filter([NP], S), is_(False))


def test_prove_needs_antecedents() -> None:
    with pytest.raises(ValueError, match="at least one antecedent"):
        _ = prove([], S, L)


def test_resource_limit_is_reported() -> None:
    with pytest.raises(ResourceLimitError):
        _ = prove_sequent(parse_sequent("NP, (NP\\S)/NP => S/NP"), L, ProofOptions(resource_limit=4))


def test_search_is_deterministic() -> None:
    sequent = parse_sequent("X/Y, Y/Z => X/Z")
    first, second = prove_sequent(sequent, L), prove_sequent(sequent, L)
    assert_that(second.derivation, equal_to(first.derivation))
    assert_that(second.stats, equal_to(first.stats))


def test_stats_count_rules() -> None:
    result = prove_sequent(parse_sequent("NP, (NP\\S)/NP => S/NP"), L)
    assert_that(result.stats.rules, equal_to(4))
    assert_that(result.stats.formulae, equal_to(8))
    assert_that(result.stats.render(), contains_string("rules=4 beta=0"))


def test_expand_accepts_option_overrides() -> None:
    tab = Tableau(parse_sequent("X/Y, Y => X"), NL)
    result = expand(tab, ProofOptions(beta_enabled=False))
    assert_that(result.theorem, is_(True))
    assert_that(tab.options.beta_enabled, is_(False))


@settings(max_examples=30, deadline=None)
@given(left=categories(3), right=categories(3), spec=st.sampled_from((NL, L, LP)))
def test_introduced_names_are_fresh(left: Category, right: Category, spec: CalculusSpec) -> None:
    """Test every alpha rule introduces a ground token never used before."""
    tab = Tableau(Sequent((left,), right), spec, ProofOptions(resource_limit=400))
    try:
        _ = expand(tab)
    except ResourceLimitError:
        return
    introduced = tab.fresh.introduced
    assert_that(len(set(introduced)), equal_to(len(introduced)))
    assert_that(len(introduced), equal_to(tab.stats.alpha + 1))


def test_search_budget_is_reported() -> None:
    with pytest.raises(ResourceLimitError, match="budget"):
        _ = prove_sequent(parse_sequent("NP, (NP\\S)/NP => S/NP"), L, ProofOptions(search_budget=1))


@pytest.mark.parametrize(
    ("text", "spec"),
    [
        ("S/S, NP/NP => S/S", L),
        ("S/S, NP/NP => S/S", NL),
        ("NP/NP, S/S => S/S", LP),
        ("NP/NP => NP*NP", LPE),
        ("S\\S => S", LPC),
    ],
    ids=lambda value: value if isinstance(value, str) else value.display_name,
)
def test_unprovable_sequents_are_settled_quickly(text: str, spec: CalculusSpec) -> None:
    """Test branching over unprovable sequents ends well inside the default limits."""
    started = time.monotonic()
    result = prove_sequent(parse_sequent(text), spec)
    assert_that(result.theorem, is_(False))
    assert_that(time.monotonic() - started, less_than(10.0))


def formulae(branch: Branch) -> Iterator[SLF]:
    yield from branch.own()
    for child in branch.children or ():
        yield from formulae(child)


@settings(max_examples=30, deadline=None)
@given(left=categories(3), right=categories(3), spec=st.sampled_from((NL, L, LP)))
def test_every_formula_is_a_subformula_of_the_sequent(left: Category, right: Category, spec: CalculusSpec) -> None:
    tab = Tableau(Sequent((left,), right), spec, ProofOptions(resource_limit=400, search_budget=400))
    with contextlib.suppress(ResourceLimitError):
        _ = expand(tab)
    allowed = set(subformulae(left)) | set(subformulae(right))
    assert_that([node.cat for node in formulae(tab.root) if node.cat not in allowed], equal_to([]))


def test_branching_keeps_to_subformulae() -> None:
    sequent = parse_sequent("S/S, NP/NP => S/S")
    tab = Tableau(sequent, L)
    _ = expand(tab)
    allowed = set(tab.subformula_pool)
    assert_that(tab.stats.beta > 0, is_(True))
    assert_that([node.cat for node in formulae(tab.root) if node.cat not in allowed], equal_to([]))
