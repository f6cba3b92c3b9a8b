"""The ``lambek-lke`` command line.

Exit codes: 0 theorem, 1 not a theorem, 2 usage or parse error, 3 resource limit, 4 oracle disagreement.
"""

import argparse
import json
import logging
import sys
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import IntEnum
from pathlib import Path
from typing import final

from lambek_lke.calculus.categories import parse_category
from lambek_lke.calculus.frames import Calculus, CalculusSpec, preset
from lambek_lke.calculus.sequents import ARROW, Sequent, parse_bracketing, parse_sequent
from lambek_lke.cli.lexicon import Lexicon, load_lexicon
from lambek_lke.errors import CategorySyntaxError, LexiconError, LimitExceededError, ResourceLimitError
from lambek_lke.json import result_to_json, results_to_json
from lambek_lke.oracle.gentzen import Verdict
from lambek_lke.provers import GentzenProver, TableauProver
from lambek_lke.settings import ProofOptions, ProverSettings
from lambek_lke.tableau.laws import REDUCTION_LAWS
from lambek_lke.tableau.results import ProofResult, ProofStats

logger = logging.getLogger(__name__)

NOT_A_THEOREM = "NOT A THEOREM"


class ExitCode(IntEnum):
    """Process exit status of the command line."""

    THEOREM = 0
    NOT_A_THEOREM = 1
    USAGE = 2
    RESOURCE_LIMIT = 3
    ORACLE_DISAGREEMENT = 4


@final
@dataclass(frozen=True)
class _Task:
    sequent: Sequent
    spec: CalculusSpec
    options: ProofOptions
    oracle_depth: int | None


@final
@dataclass(frozen=True)
class _Outcome:
    result: ProofResult
    oracle: Verdict | None

    @property
    def disagrees(self) -> bool:
        match self.oracle:
            case Verdict.PROVED:
                return not self.result.theorem
            case Verdict.REFUTED:
                return self.result.theorem
            case _:
                return False


def _check(task: _Task) -> _Outcome:
    result = TableauProver(task.options).prove(task.sequent, task.spec)
    oracle = None if task.oracle_depth is None else GentzenProver(task.oracle_depth).decide(task.sequent, task.spec)
    if oracle is not None and _Outcome(result, oracle).disagrees:
        logger.warning("oracle says %s for %s in %s", oracle.value, task.sequent, task.spec.display_name)
    return _Outcome(result, oracle)


def _check_all(tasks: Sequence[_Task], jobs: int) -> list[_Outcome]:
    if jobs <= 1 or len(tasks) <= 1:
        return [_check(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_check, tasks))


def build_parser() -> argparse.ArgumentParser:
    """Builds the ``prove`` and ``laws`` command line."""
    parser = argparse.ArgumentParser(prog="lambek-lke", description="Labelled tableaux for Lambek calculi.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log search steps to stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    prove = commands.add_parser("prove", help="decide a sequent, a sentence or a batch of sequents")
    prove.add_argument("--calculus", required=True, choices=[calculus.name for calculus in Calculus])
    prove.add_argument("--lexicon", type=Path, help="word<TAB>category file used by --sentence")
    source = prove.add_mutually_exclusive_group(required=True)
    source.add_argument("--sequent", help='e.g. "NP, (NP\\S)/NP => S/NP"')
    source.add_argument("--sentence", help='words and a goal category, e.g. "John likes => S/NP"')
    source.add_argument("--batch", type=Path, help="file with one sequent per line")
    prove.add_argument("--bracketing", help='antecedent skeleton for --sequent, e.g. "((.. ..) ..)"')
    prove.add_argument("--all", action="store_true", help="report every proving lexical assignment")
    prove.add_argument("--jobs", type=int, default=1, help="worker processes for --batch")
    _add_search_flags(prove)

    laws = commands.add_parser("laws", help="prove the reduction-law catalogue")
    laws.add_argument("--calculus", required=True, choices=[calculus.name for calculus in Calculus])
    _add_search_flags(laws)
    return parser


def _add_search_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--no-beta", action="store_true", help="never split branches")
    parser.add_argument("--oracle", action="store_true", help="cross-check every answer with the sequent oracle")
    parser.add_argument("--limit", type=int, help="maximum number of formulae in one tableau")
    parser.add_argument("--budget", type=int, help="maximum number of sigma moves and order checks in one search")
    parser.add_argument("--stats", action="store_true", help="print a final statistics record")
    parser.add_argument("--json", action="store_true", help="print results as JSON")


def _configure_logging(*, verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def parse_sentence(text: str, lexicon: Lexicon) -> tuple[list[str], list[Sequent]]:
    """Resolves ``"w1 w2 ... => B"`` against a lexicon, one sequent per category assignment.

    Raises:
        CategorySyntaxError: If the arrow is missing or there are no words.
        LexiconError: If a word is not in the lexicon.
    """
    words_text, arrow, goal_text = text.partition(ARROW)
    words = words_text.split()
    if not arrow or not words:
        err_msg = f"Expected 'words {ARROW} category', got {text!r}"
        raise CategorySyntaxError(err_msg)
    goal = parse_category(goal_text.strip())
    return words, [Sequent(assignment, goal) for assignment in lexicon.assignments(words)]


def _read_batch(path: Path) -> list[Sequent]:
    sequents: list[Sequent] = []
    for line_number, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            sequents.append(parse_sequent(line))
        except CategorySyntaxError as error:
            err_msg = f"{path}:{line_number}: {error}"
            raise CategorySyntaxError(err_msg) from error
    return sequents


def _total(results: Iterable[ProofResult]) -> ProofStats:
    stats = [result.stats for result in results]
    return ProofStats(
        rules=sum(item.rules for item in stats),
        beta=sum(item.beta for item in stats),
        backtracks=sum(item.backtracks for item in stats),
        leq_steps=sum(item.leq_steps for item in stats),
        formulae=sum(item.formulae for item in stats),
        limit_failures=sum(item.limit_failures for item in stats),
    )


def _summary(result: ProofResult) -> str:
    if result.filtered:
        return result.derivation
    return f"every branch search exhausted after {result.stats.rules} rule applications"


def _report(outcomes: Sequence[_Outcome], *, batch: bool, show_json: bool, show_stats: bool) -> None:
    results = [outcome.result for outcome in outcomes]
    if show_json:
        payload = result_to_json(results[0]) if len(results) == 1 and not batch else results_to_json(results)
        print(json.dumps(payload, sort_keys=True, indent=2))  # noqa: T201
    else:
        for outcome in outcomes:
            result = outcome.result
            if batch:
                print(f"{result.sequent}\t{'THEOREM' if result.theorem else NOT_A_THEOREM}")  # noqa: T201
            elif result.theorem:
                print(result.derivation)  # noqa: T201
            else:
                print(NOT_A_THEOREM)  # noqa: T201
                print(f"{result.sequent} in {result.calculus}: {_summary(result)}")  # noqa: T201
            if outcome.oracle is not None and outcome.disagrees:
                print(f"ORACLE DISAGREES: {result.sequent} is {outcome.oracle.value} by the oracle")  # noqa: T201
    if show_stats:
        print(_total(results).render())  # noqa: T201


def _exit_code(outcomes: Sequence[_Outcome], *, any_theorem: bool) -> ExitCode:
    if any(outcome.disagrees for outcome in outcomes):
        return ExitCode.ORACLE_DISAGREEMENT
    theorems = [outcome.result.theorem for outcome in outcomes]
    proved = any(theorems) if any_theorem else bool(theorems) and all(theorems)
    return ExitCode.THEOREM if proved else ExitCode.NOT_A_THEOREM


def _options(args: argparse.Namespace, settings: ProverSettings) -> ProofOptions:
    return settings.proof_options(
        resource_limit=args.limit,
        search_budget=args.budget,
        beta_enabled=False if args.no_beta else None,
    )


def _prove_sentence(args: argparse.Namespace, spec: CalculusSpec, options: ProofOptions, depth: int | None) -> int:
    if args.lexicon is None:
        err_msg = "--sentence needs --lexicon"
        raise CategorySyntaxError(err_msg)
    words, sequents = parse_sentence(args.sentence, load_lexicon(args.lexicon))
    outcomes: list[_Outcome] = []
    for sequent in sequents:
        outcome = _check(_Task(sequent, spec, options, depth))
        outcomes.append(outcome)
        if outcome.result.theorem and not args.all:
            break
    logger.info("%s: tried %d of %d assignments", " ".join(words), len(outcomes), len(sequents))
    proving = [outcome for outcome in outcomes if outcome.result.theorem or outcome.disagrees]
    _report(proving or outcomes, batch=False, show_json=args.json, show_stats=args.stats)
    return _exit_code(outcomes, any_theorem=True)


def _prove(args: argparse.Namespace, settings: ProverSettings) -> int:
    spec = preset(args.calculus)
    options = _options(args, settings)
    depth = settings.oracle_depth if args.oracle else None
    if args.sentence is not None:
        return _prove_sentence(args, spec, options, depth)
    if args.batch is not None:
        tasks = [_Task(sequent, spec, options, depth) for sequent in _read_batch(args.batch)]
        outcomes = _check_all(tasks, args.jobs)
        _report(outcomes, batch=True, show_json=args.json, show_stats=args.stats)
        return _exit_code(outcomes, any_theorem=False)
    sequent = parse_sequent(args.sequent)
    if args.bracketing is not None:
        bracketing = parse_bracketing(args.bracketing, sequent.antecedents)
        sequent = Sequent(sequent.antecedents, sequent.succedent, bracketing)
    outcome = _check(_Task(sequent, spec, options, depth))
    _report([outcome], batch=False, show_json=args.json, show_stats=args.stats)
    return _exit_code([outcome], any_theorem=False)


def _laws(args: argparse.Namespace, settings: ProverSettings) -> int:
    spec = preset(args.calculus)
    options = _options(args, settings)
    depth = settings.oracle_depth if args.oracle else None
    outcomes = [_check(_Task(law.sequent, spec, options, depth)) for law in REDUCTION_LAWS]
    if args.json:
        _report(outcomes, batch=True, show_json=True, show_stats=args.stats)
    else:
        for law, outcome in zip(REDUCTION_LAWS, outcomes, strict=True):
            verdict = "THEOREM" if outcome.result.theorem else NOT_A_THEOREM
            print(f"{law.name}\t{law.title}\t{law.sequent}\t{verdict}")  # noqa: T201
        if args.stats:
            print(_total(outcome.result for outcome in outcomes).render())  # noqa: T201
    return _exit_code(outcomes, any_theorem=False)


def run(argv: Sequence[str] | None = None) -> int:
    """Runs one command and returns its exit code instead of exiting.

    Args:
        argv (Sequence[str] | None): Arguments without the program name; ``sys.argv[1:]`` when None.

    Returns:
        int: The exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "prove" and args.bracketing is not None and args.sequent is None:
            parser.error("--bracketing only applies to --sequent")
    except SystemExit as error:
        return error.code if isinstance(error.code, int) else ExitCode.USAGE
    _configure_logging(verbose=args.verbose)
    settings = ProverSettings()
    try:
        match args.command:
            case "prove":
                return _prove(args, settings)
            case "laws":
                return _laws(args, settings)
            case _:
                err_msg = f"Unknown command {args.command!r}"
                raise CategorySyntaxError(err_msg)
    except (CategorySyntaxError, LexiconError, ValueError, OSError) as error:
        print(f"error: {error}", file=sys.stderr)  # noqa: T201
        return ExitCode.USAGE
    except (ResourceLimitError, LimitExceededError) as error:
        print(f"resource limit: {error}", file=sys.stderr)  # noqa: T201
        return ExitCode.RESOURCE_LIMIT


def main() -> None:
    """Console entry point."""
    sys.exit(run())
