"""Word-to-category lexicons read from tab-separated files."""

import itertools
import logging
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from pathlib import Path
from typing import final

from lambek_lke.calculus.categories import Category, parse_category, render_category
from lambek_lke.errors import CategorySyntaxError, DuplicateEntryError, LexiconError, LexiconParseError

logger = logging.getLogger(__name__)


@final
@dataclass(frozen=True)
class Lexicon:
    """Maps each word (case-sensitive) to its categories in file order."""

    entries: Mapping[str, tuple[Category, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for word, categories in self.entries.items():
            if not categories:
                err_msg = f"Word {word!r} has no category"
                raise LexiconError(err_msg)
            if len(set(categories)) != len(categories):
                err_msg = f"Word {word!r} lists the same category twice"
                raise DuplicateEntryError(err_msg)

    def __contains__(self, word: object) -> bool:
        return word in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def categories(self, word: str) -> tuple[Category, ...]:
        """The categories of ``word``.

        Raises:
            LexiconError: If the word is not in the lexicon.
        """
        try:
            return self.entries[word]
        except KeyError:
            err_msg = f"Unknown word {word!r}"
            raise LexiconError(err_msg) from None

    def assignments(self, words: list[str]) -> Iterator[tuple[Category, ...]]:
        """Every way to assign a category to each word, earlier lexicon entries first.

        Raises:
            LexiconError: If a word is not in the lexicon.
        """
        yield from itertools.product(*(self.categories(word) for word in words))


def parse_lexicon(lines: list[str]) -> Lexicon:
    """Parses ``word<TAB>category`` lines, skipping blank lines and ``#`` comments.

    Raises:
        LexiconParseError: If a line has no tab, an empty word or an unparsable category.
        DuplicateEntryError: If a (word, category) pair appears twice.
    """
    entries: dict[str, list[Category]] = {}
    for line_number, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        word, tab, text = line.partition("\t")
        word = word.strip()
        if not tab or not word:
            raise LexiconParseError(line_number, f"expected 'word<TAB>category', got {line!r}")
        try:
            category = parse_category(text.strip())
        except CategorySyntaxError as error:
            raise LexiconParseError(line_number, str(error)) from error
        known = entries.setdefault(word, [])
        if category in known:
            err_msg = f"line {line_number}: {word!r} is already assigned {render_category(category)}"
            raise DuplicateEntryError(err_msg)
        known.append(category)
    return Lexicon({word: tuple(categories) for word, categories in entries.items()})


def load_lexicon(path: Path) -> Lexicon:
    """Reads a UTF-8 lexicon file.

    Args:
        path (Path): The TSV file.

    Raises:
        LexiconParseError: If a line is malformed.
        DuplicateEntryError: If a (word, category) pair appears twice.

    Returns:
        Lexicon: The parsed lexicon.
    """
    lexicon = parse_lexicon(path.read_text(encoding="utf-8").splitlines())
    logger.debug("loaded %d words from %s", len(lexicon), path)
    return lexicon
