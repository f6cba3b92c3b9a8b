from typing import Protocol, final, override

from lambek_lke.calculus.frames import CalculusSpec
from lambek_lke.calculus.sequents import Sequent
from lambek_lke.oracle.gentzen import DEFAULT_DEPTH, Verdict, oracle_prove
from lambek_lke.settings import ProofOptions
from lambek_lke.tableau.engine import prove_sequent
from lambek_lke.tableau.results import ProofResult


class SequentProver(Protocol):
    """Anything that can decide a sequent in a calculus."""

    def decide(self, sequent: Sequent, spec: CalculusSpec) -> Verdict: ...


@final
class TableauProver(SequentProver):
    """Decides sequents with labelled tableaux; a closed tableau proves, an open one refutes."""

    def __init__(self, options: ProofOptions | None = None) -> None:
        self.options = options or ProofOptions()

    def prove(self, sequent: Sequent, spec: CalculusSpec) -> ProofResult:
        return prove_sequent(sequent, spec, self.options)

    @override
    def decide(self, sequent: Sequent, spec: CalculusSpec) -> Verdict:
        return Verdict.PROVED if self.prove(sequent, spec).theorem else Verdict.REFUTED


@final
class GentzenProver(SequentProver):
    """Decides sequents with the cut-free sequent search, bounding contraction by ``depth``."""

    def __init__(self, depth: int = DEFAULT_DEPTH) -> None:
        if depth < 1:
            err_msg = f"Oracle depth must be at least 1, got {depth}"
            raise ValueError(err_msg)
        self.depth = depth

    @override
    def decide(self, sequent: Sequent, spec: CalculusSpec) -> Verdict:
        return oracle_prove(sequent, spec, self.depth)
