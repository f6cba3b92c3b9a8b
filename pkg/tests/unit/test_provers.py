import pytest
from hamcrest import assert_that, equal_to, is_

from lambek_lke.calculus.frames import NL, L
from lambek_lke.calculus.sequents import parse_sequent
from lambek_lke.oracle.gentzen import Verdict
from lambek_lke.provers import GentzenProver, SequentProver, TableauProver
from lambek_lke.settings import ProofOptions

WORKED = parse_sequent("NP, (NP\\S)/NP => S/NP")


@pytest.mark.parametrize("prover", [TableauProver(), GentzenProver()], ids=["tableau", "gentzen"])
def test_provers_agree_on_the_worked_example(prover: SequentProver) -> None:
    assert_that(prover.decide(WORKED, L), equal_to(Verdict.PROVED))
    assert_that(prover.decide(WORKED, NL), equal_to(Verdict.REFUTED))


def test_tableau_prover_keeps_its_options() -> None:
    prover = TableauProver(ProofOptions(beta_enabled=False))
    result = prover.prove(WORKED, L)
    assert_that(result.theorem, is_(True))
    assert_that(result.calculus, equal_to("L"))


def test_gentzen_depth_must_be_positive() -> None:
    with pytest.raises(ValueError, match="at least 1"):
        _ = GentzenProver(0)
