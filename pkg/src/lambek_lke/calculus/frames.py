from enum import Enum

from pydantic import BaseModel, ConfigDict


class CalculusSpec(BaseModel):
    """The structural properties of an information frame.

    A calculus is fixed entirely by which inequations its composition obeys: associativity both ways,
    ``x.y <= y.x`` when commutative, ``x.x <= x`` when contractive, ``x <= x.x`` when expansive and
    ``x <= x.y`` when monotonic.
    """

    model_config = ConfigDict(frozen=True)

    associative: bool = False
    commutative: bool = False
    contractive: bool = False
    expansive: bool = False
    monotonic: bool = False
    name: str | None = None

    @property
    def resource_sensitive(self) -> bool:
        """True when no structural inequation copies, drops or adds resources."""
        return not (self.contractive or self.expansive or self.monotonic)

    @property
    def display_name(self) -> str:
        if self.name is not None:
            return self.name
        flags = [
            flag
            for flag, enabled in (
                ("assoc", self.associative),
                ("comm", self.commutative),
                ("contr", self.contractive),
                ("exp", self.expansive),
                ("mono", self.monotonic),
            )
            if enabled
        ]
        return "custom(" + ",".join(flags) + ")"


class Calculus(Enum):
    """The named calculi of the Lambek family."""

    NL = "NL"
    L = "L"
    LP = "LP"
    LPC = "LPC"
    LPE = "LPE"
    LPCE = "LPCE"

    @property
    def spec(self) -> CalculusSpec:
        return PRESETS[self]


PRESETS: dict[Calculus, CalculusSpec] = {
    Calculus.NL: CalculusSpec(name="NL"),
    Calculus.L: CalculusSpec(name="L", associative=True),
    Calculus.LP: CalculusSpec(name="LP", associative=True, commutative=True),
    Calculus.LPC: CalculusSpec(name="LPC", associative=True, commutative=True, contractive=True),
    Calculus.LPE: CalculusSpec(name="LPE", associative=True, commutative=True, expansive=True),
    Calculus.LPCE: CalculusSpec(name="LPCE", associative=True, commutative=True, contractive=True, expansive=True),
}

NL = PRESETS[Calculus.NL]
L = PRESETS[Calculus.L]
LP = PRESETS[Calculus.LP]
LPC = PRESETS[Calculus.LPC]
LPE = PRESETS[Calculus.LPE]
LPCE = PRESETS[Calculus.LPCE]


def preset(name: str) -> CalculusSpec:
    """Looks a preset up by its name.

    Raises:
        ValueError: If ``name`` is not one of NL, L, LP, LPC, LPE, LPCE.
    """
    try:
        return Calculus(name).spec
    except ValueError:
        err_msg = f"Unknown calculus {name!r}, expected one of {', '.join(c.value for c in Calculus)}"
        raise ValueError(err_msg) from None
