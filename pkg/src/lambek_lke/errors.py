class LambekError(Exception):
    """Base class for every error raised by lambek_lke."""


class CategorySyntaxError(LambekError, SyntaxError):
    """Raised when category, token or sequent text cannot be parsed."""


class LimitExceededError(LambekError):
    """Raised when label normalization does not reach a fixed point within its pass limit."""


class ResourceLimitError(LambekError):
    """Raised when a tableau outgrows its formula limit or a proof search spends its step budget."""


class NotAlphaFormulaError(LambekError):
    """Raised when an alpha rule is applied to a formula it does not decompose."""


class BetaExhaustedError(LambekError):
    """Raised when a branch has no subformula left to split on."""


class LexiconError(LambekError):
    """Base class for lexicon loading errors."""


class LexiconParseError(LexiconError):
    """A lexicon line could not be parsed.

    Attributes:
        line_number (int): 1-based line number of the offending line.
    """

    def __init__(self, line_number: int, message: str) -> None:
        self.line_number = line_number
        super().__init__(f"line {line_number}: {message}")


class DuplicateEntryError(LexiconError):
    """The same (word, category) pair occurs twice in a lexicon."""
