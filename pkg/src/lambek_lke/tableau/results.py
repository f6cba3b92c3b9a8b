from pydantic import BaseModel, ConfigDict

from lambek_lke.calculus.ordering import ClosureStep


class BranchClosure(BaseModel):
    """How one branch closed: the clashing pair and the order witness between their labels."""

    model_config = ConfigDict(frozen=True)

    branch: str
    true_line: int
    false_line: int
    category: str
    true_label: str
    false_label: str
    steps: tuple[ClosureStep, ...] = ()
    substitution: dict[str, str] = {}


class ProofStats(BaseModel):
    """Search counters of one proof: rule applications, branching, backtracking and order-search work."""

    model_config = ConfigDict(frozen=True)

    rules: int = 0
    beta: int = 0
    backtracks: int = 0
    leq_steps: int = 0
    formulae: int = 0
    limit_failures: int = 0

    def render(self) -> str:
        return f"rules={self.rules} beta={self.beta} backtracks={self.backtracks} leq_steps={self.leq_steps}"


class ProofResult(BaseModel):
    """Outcome of one proof search.

    ``theorem`` is True exactly when every branch of the derivation closed with a checked order witness,
    recorded in ``closures``. ``filtered`` marks sequents rejected by count invariance before any search.
    """

    model_config = ConfigDict(frozen=True)

    sequent: str
    calculus: str
    theorem: bool
    derivation: str = ""
    closures: tuple[BranchClosure, ...] = ()
    stats: ProofStats = ProofStats()
    filtered: bool = False
