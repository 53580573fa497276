"""
bwclusters CLI - Command-line front end for clustering words and AR languages.

Usage:
    bwclusters bwt aab --order ab
    bwclusters cluster abaca
    bwclusters criterion abaca --order acb --pi cab
    bwclusters ar bound --directive :abc
    bwclusters ar longword --directive :abc
    bwclusters verify --suite car --max 8

Results go to standard output as text or JSON; logs go to standard error.
Exit codes: 0 success or true verdict, 1 false verdict, 2 usage or input error.
"""

import argparse
import json
import sys
from typing import Any, Callable, Iterable, Optional, Sequence

from pydantic_core import to_jsonable_python

from src.application.census import CensusService
from src.application.verification import VerificationService
from src.config import AppConfig, get_config
from src.domain.arnoux_rauzy import (
    ar_evolve,
    arc_bound,
    caro_obstructed,
    clist_criterion,
    is_ar_factor,
    landmarks,
    length_relations,
    lms_rename,
    long_word,
    square_roots,
    standard_clusters,
)
from src.domain.bwt import (
    bwt,
    clustering_certificates,
    clusters_any,
    is_perfectly_clustering,
)
from src.domain.constructions import (
    desubstitute,
    is_conjugate_to_standard,
    ptb1_construct,
    ptb2_construct,
)
from src.domain.criterion import clustering_by_criterion, resolve_bispecials
from src.domain.directive import DirectiveLanguage, DirectiveWord
from src.domain.episturmian import (
    clustering_witnesses,
    ebs_check,
    epi_bound,
    multi_ar_evolve,
    multi_arc_bound,
    multi_thepi_check,
    thepi_check,
    tstu_check,
)
from src.domain.exceptions import DomainError, ValidationError
from src.domain.interfaces import IObservabilityService
from src.domain.language import (
    CircularLanguage,
    complexity,
    is_closed_under_reversal,
    left_specials,
    right_specials,
)
from src.domain.models import ClusterCount, Suite
from src.domain.words import LetterPermutation, OrderedAlphabet, Word
from src.infrastructure.observability import ObservabilityProvider

LETTERS = "abcdefghijklmnopqrstuvwxyz"

Handler = Callable[[argparse.Namespace, "Context"], int]


class Context:
    """What a command handler needs besides its arguments."""

    def __init__(self, config: AppConfig, observability: IObservabilityService, json_output: bool):
        self.config = config
        self.observability = observability
        self.json_output = json_output

    def emit(self, payload: Any, lines: Iterable[str]) -> None:
        """Print ``payload`` as JSON or ``lines`` as text."""
        if self.json_output:
            print(json.dumps(to_jsonable_python(payload), indent=2))
        else:
            for line in lines:
                print(line)


def _order(text: str) -> OrderedAlphabet:
    return OrderedAlphabet.parse(text)


def _word(text: str, alphabet: Optional[str] = None) -> Word:
    return Word.parse(text, alphabet)


def _directive(args: argparse.Namespace) -> DirectiveWord:
    letters = getattr(args, "letters", None)
    if letters:
        return DirectiveWord.parse(args.directive, LETTERS[:letters])
    return DirectiveWord.parse(args.directive)


def _stage(args: argparse.Namespace, ctx: Context) -> int:
    cap = ctx.config.limits.max_stage
    if not 0 <= args.stage <= cap:
        raise ValidationError(f"stage must be between 0 and {cap}, got {args.stage}")
    stage: int = args.stage
    return stage


def _verdict(value: bool) -> int:
    return 0 if value else 1


def _show(word: Word) -> str:
    return str(word) if len(word) else "(empty)"


# --- words and transforms -------------------------------------------------


def cmd_bwt(args: argparse.Namespace, ctx: Context) -> int:
    order = _order(args.order)
    word = Word.parse(args.word, order)
    transform = str(bwt(word, order))
    ctx.emit({"word": args.word, "order": list(order.letters), "transform": transform}, [transform])
    return 0


def cmd_cluster(args: argparse.Namespace, ctx: Context) -> int:
    limit = ctx.config.limits.max_permutation_alphabet
    alphabet = args.alphabet or args.order
    word = _word(args.word, alphabet)
    if args.perfect:
        orders = [_order(args.order)] if args.order else word.alphabet.orders(limit)
        perfect = [str(order) for order in orders if is_perfectly_clustering(word, order)]
        ctx.emit(
            {"word": args.word, "perfect_orders": perfect},
            perfect or [f"{args.word} is not perfectly clustering"],
        )
        return _verdict(bool(perfect))
    if args.order:
        certificates = clustering_certificates(word, _order(args.order))
    else:
        certificates = clusters_any(word, limit)
    ctx.emit(
        certificates,
        [c.describe() for c in certificates] or [f"{args.word} does not cluster"],
    )
    return _verdict(bool(certificates))


def cmd_bispecials(args: argparse.Namespace, ctx: Context) -> int:
    graphs = resolve_bispecials(_word(args.word, args.alphabet))
    payload = [
        {
            "bispecial": str(graph.center),
            "extensions": [f"{x}{graph.center}{y}" for x, y in graph.sorted_pairs()],
        }
        for graph in graphs
    ]
    ctx.emit(
        payload,
        [f"{_show(g.center)}: {' '.join(item['extensions'])}" for g, item in zip(graphs, payload)],
    )
    return 0


def cmd_criterion(args: argparse.Namespace, ctx: Context) -> int:
    order = _order(args.order)
    word = Word.parse(args.word, order)
    permutation = LetterPermutation.parse(args.pi, order)
    report = clustering_by_criterion(word, order, permutation)
    lines = [f"verdict: {'clusters' if report.verdict else 'does not cluster'}"]
    lines.extend(
        f"violated at {v.bispecial or '(empty)'}: {v.x}{v.bispecial}{v.y} and "
        f"{v.x_prime}{v.bispecial}{v.y_prime} ({v.count} failing pairs)"
        for v in report.violations
    )
    ctx.emit(report, lines)
    return _verdict(report.verdict)


def cmd_desub(args: argparse.Namespace, ctx: Context) -> int:
    word = _word(args.word, args.alphabet)
    if args.conjugates:
        found = is_conjugate_to_standard(word)
        ctx.emit({"word": args.word, "conjugate_to_standard": found}, [str(found).lower()])
        return _verdict(found)
    chain = desubstitute(word)
    if chain is None:
        ctx.emit(None, [f"{args.word} does not de-substitute to a letter"])
        return 1
    lines = [f"{step.kind.value}_{step.letter}^-1 -> {step.result}" for step in chain.steps]
    ctx.emit(chain, lines + [f"letter: {chain.letter}"])
    return 0


def cmd_language(args: argparse.Namespace, ctx: Context) -> int:
    language = CircularLanguage(_word(args.word, args.alphabet))
    rows = [
        {
            "n": n,
            "complexity": complexity(language, n),
            "left_specials": [str(w) for w in left_specials(language, n)],
            "right_specials": [str(w) for w in right_specials(language, n)],
        }
        for n in range(args.max + 1)
    ]
    closed = is_closed_under_reversal(language)
    ctx.emit(
        {"word": args.word, "closed_under_reversal": closed, "profile": rows},
        [f"closed under reversal: {str(closed).lower()}"]
        + [f"{row['n']}: {row['complexity']}" for row in rows],
    )
    return 0


def cmd_complexity(args: argparse.Namespace, ctx: Context) -> int:
    language = DirectiveLanguage(_directive(args))
    values = [complexity(language, n) for n in range(1, args.max + 1)]
    ctx.emit(
        {"directive": args.directive, "complexity": values},
        [f"{n}: {value}" for n, value in enumerate(values, start=1)],
    )
    return 0


# --- Arnoux-Rauzy -------------------------------------------------------------


def cmd_ar_gen(args: argparse.Namespace, ctx: Context) -> int:
    state = ar_evolve(_directive(args), _stage(args, ctx))
    words = state.as_dict()
    payload = {"stage": state.stage, "words": words, "bispecial": str(state.bispecial)}
    lines = [f"{letter.upper()}_{state.stage} = {word}" for letter, word in words.items()]
    ctx.emit(payload, lines + [f"w_{state.stage} = {_show(state.bispecial)}"])
    return 0


def cmd_ar_lms(args: argparse.Namespace, ctx: Context) -> int:
    stage = _stage(args, ctx)
    triple = lms_rename(_directive(args), stage)
    relations = length_relations(_directive(args), stage)
    lines = [
        f"S = {triple.short} ({triple.short_letter})",
        f"M = {triple.middle} ({triple.middle_letter})",
        f"L = {triple.long} ({triple.long_letter})",
        f"step: {triple.step.value}",
    ]
    ctx.emit({"lms": triple, "relations": relations}, lines)
    return 0


def cmd_ar_landmarks(args: argparse.Namespace, ctx: Context) -> int:
    marks = landmarks(_directive(args))
    fields = marks.model_dump(exclude={"normalization"})
    ctx.emit(marks, [f"{name}: {value}" for name, value in fields.items()])
    return 0


def cmd_ar_bound(args: argparse.Namespace, ctx: Context) -> int:
    bound = arc_bound(_directive(args))
    ctx.emit({"directive": args.directive, "bound": bound}, [str(bound)])
    return 0


def cmd_ar_longword(args: argparse.Namespace, ctx: Context) -> int:
    word = long_word(_directive(args))
    ctx.emit({"directive": args.directive, "word": str(word), "length": len(word)}, [str(word)])
    return 0


def cmd_ar_census(args: argparse.Namespace, ctx: Context) -> int:
    service = CensusService(ctx.observability, ctx.config.limits)
    report = service.execute(_directive(args), args.max)
    lines = [
        f"{entry.word} ({len(entry.word)}): {len(entry.certificates)} certificates"
        for entry in report.entries
    ]
    ctx.emit(report, lines + [f"longest: {report.longest}"])
    return 0


def cmd_ar_member(args: argparse.Namespace, ctx: Context) -> int:
    directive = _directive(args)
    found = is_ar_factor(Word.parse(args.word, directive.alphabet), directive)
    ctx.emit({"word": args.word, "member": found}, [str(found).lower()])
    return _verdict(found)


def cmd_ar_squares(args: argparse.Namespace, ctx: Context) -> int:
    roots = square_roots(_directive(args), args.max)
    ctx.emit([str(root) for root in roots], [str(root) for root in roots])
    return 0


def cmd_ar_standard(args: argparse.Namespace, ctx: Context) -> int:
    directive = _directive(args)
    stage = _stage(args, ctx)
    by_landmarks = standard_clusters(directive, args.letter, stage)
    verdict = clist_criterion(directive, args.letter, stage)
    lines = [
        f"clusters: {str(by_landmarks).lower()}",
        f"middles: {' '.join(verdict.middles) or '-'}",
        f"orders: {' '.join(verdict.orders) or '-'}",
    ]
    ctx.emit({"clusters": by_landmarks, "clist": verdict}, lines)
    return _verdict(by_landmarks)


def cmd_ar_caro(args: argparse.Namespace, ctx: Context) -> int:
    directive = _directive(args)
    obstructed = caro_obstructed(
        Word.parse(args.word, directive.alphabet), directive, circular=args.circular
    )
    ctx.emit({"word": args.word, "obstructed": obstructed}, [str(obstructed).lower()])
    return _verdict(obstructed)


# --- episturmian, Sturmian and r letters -------------------------------------


def cmd_epi_check(args: argparse.Namespace, ctx: Context) -> int:
    verdict = thepi_check(_directive(args))
    lines = [verdict.kind.value]
    if verdict.kind is ClusterCount.INFINITELY_MANY:
        lines.append(f"head: {verdict.head or '(empty)'} tail: {''.join(verdict.tail_letters)}")
    ctx.emit(verdict, lines)
    return 0


def cmd_epi_bound(args: argparse.Namespace, ctx: Context) -> int:
    bound = epi_bound(_directive(args))
    ctx.emit({"directive": args.directive, "bound": bound}, [str(bound)])
    return 0


def cmd_epi_witnesses(args: argparse.Namespace, ctx: Context) -> int:
    witnesses = clustering_witnesses(
        _directive(args), args.count, max_stage=ctx.config.limits.max_stage
    )
    ctx.emit([str(w) for w in witnesses], [str(w) for w in witnesses])
    return _verdict(bool(witnesses))


def cmd_epi_ebs(args: argparse.Namespace, ctx: Context) -> int:
    found = ebs_check(_directive(args), _stage(args, ctx), args.letter)
    payload = {"stage": args.stage, "letter": args.letter, "in_language": found}
    ctx.emit(payload, [str(found).lower()])
    return _verdict(found)


def cmd_multi_bound(args: argparse.Namespace, ctx: Context) -> int:
    bound = multi_arc_bound(_directive(args))
    ctx.emit(bound, [f"general: {bound.general}", f"refined: {bound.refined}"])
    return 0


def cmd_multi_evolve(args: argparse.Namespace, ctx: Context) -> int:
    state = multi_ar_evolve(_directive(args), _stage(args, ctx))
    words = state.as_dict()
    payload = {"stage": state.stage, "words": words, "bispecial": str(state.bispecial)}
    lines = [f"{letter}: {word}" for letter, word in words.items()]
    ctx.emit(payload, lines + [f"w_{state.stage} = {_show(state.bispecial)}"])
    return 0


def cmd_multi_check(args: argparse.Namespace, ctx: Context) -> int:
    verdict = multi_thepi_check(_directive(args))
    lines = [verdict.kind.value] + [
        f"{''.join(block.letters)}: {block.segment}" for block in verdict.blocks
    ]
    ctx.emit(verdict, lines)
    return 0


def cmd_sturmian_check(args: argparse.Namespace, ctx: Context) -> int:
    found = tstu_check(Word.parse(args.word, "ab"))
    ctx.emit({"word": args.word, "clusters": found}, [str(found).lower()])
    return _verdict(found)


def cmd_ptb1(args: argparse.Namespace, ctx: Context) -> int:
    word = ptb1_construct(Word.parse(args.v, "abc"))
    ctx.emit({"v": args.v, "word": str(word)}, [str(word)])
    return 0


def cmd_ptb2(args: argparse.Namespace, ctx: Context) -> int:
    word = ptb2_construct(Word.parse(args.u, "abc"), Word.parse(args.w, "abc"))
    ctx.emit({"u": args.u, "w": args.w, "word": str(word)}, [str(word)])
    return 0


def cmd_verify(args: argparse.Namespace, ctx: Context) -> int:
    service = VerificationService(ctx.observability, ctx.config.limits)
    report = service.execute(Suite(args.suite), args.max)
    lines = [
        f"suite {report.suite} max {report.max_n}: {report.cases_checked} cases, "
        f"{'passed' if report.passed else 'FAILED'}"
    ] + [f"  {failure}" for failure in report.failures]
    ctx.emit(report, lines)
    return _verdict(report.passed)


# --- parser -------------------------------------------------------------------


def _add_directive(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--directive",
        required=True,
        help='Directive word as PREFIX:PERIOD, e.g. ":abc" for Tribonacci',
    )


def _subcommand(
    subparsers: Any, name: str, handler: Handler, help_text: str, **kwargs: Any
) -> argparse.ArgumentParser:
    parser: argparse.ArgumentParser = subparsers.add_parser(name, help=help_text, **kwargs)
    parser.set_defaults(handler=handler)
    return parser


def _add_ar_commands(subparsers: Any) -> None:
    ar = subparsers.add_parser("ar", help="Arnoux-Rauzy languages on three letters")
    commands = ar.add_subparsers(dest="ar_command", required=True)

    gen = _subcommand(commands, "gen", cmd_ar_gen, "Standard words at a stage", aliases=["evolve"])
    gen.add_argument("--stage", type=int, required=True)
    lms = _subcommand(commands, "lms", cmd_ar_lms, "Short, middle and long words at a stage")
    lms.add_argument("--stage", type=int, required=True)
    _subcommand(commands, "landmarks", cmd_ar_landmarks, "Landmark stages")
    _subcommand(commands, "bound", cmd_ar_bound, "Length from which nothing clusters")
    _subcommand(commands, "longword", cmd_ar_longword, "Longest constructed clustering word")
    census = _subcommand(commands, "census", cmd_ar_census, "All clustering factors")
    census.add_argument("--max", type=int, required=True, help="Longest factor length")
    member = _subcommand(commands, "member", cmd_ar_member, "Membership in the language")
    member.add_argument("word")
    squares = _subcommand(commands, "squares", cmd_ar_squares, "Standard words with square factors")
    squares.add_argument("--max", type=int, required=True)
    standard = _subcommand(commands, "standard", cmd_ar_standard, "Clustering of a standard word")
    standard.add_argument("--letter", required=True)
    standard.add_argument("--stage", type=int, required=True)
    caro = _subcommand(commands, "caro", cmd_ar_caro, "Flanked-bispecial obstruction")
    caro.add_argument("word")
    caro.add_argument("--circular", action="store_true", help="Search the circular word")
    for parser in dict.fromkeys(commands.choices.values()):
        _add_directive(parser)


def _add_epi_commands(subparsers: Any) -> None:
    epi = subparsers.add_parser("epi", help="Episturmian languages on three letters")
    commands = epi.add_subparsers(dest="epi_command", required=True)
    _subcommand(commands, "check", cmd_epi_check, "Finitely or infinitely many clustering words")
    _subcommand(commands, "bound", cmd_epi_bound, "Length from which nothing clusters")
    witnesses = _subcommand(commands, "witnesses", cmd_epi_witnesses, "Clustering witnesses")
    witnesses.add_argument("--count", type=int, default=5)
    ebs = _subcommand(commands, "ebs", cmd_epi_ebs, "Whether w_p Z_p is in the language")
    ebs.add_argument("--stage", type=int, required=True)
    ebs.add_argument("--letter", required=True)
    for parser in commands.choices.values():
        _add_directive(parser)


def _add_multi_commands(subparsers: Any) -> None:
    multi = subparsers.add_parser("multi", help="AR and episturmian languages on r letters")
    commands = multi.add_subparsers(dest="multi_command", required=True)
    _subcommand(commands, "bound", cmd_multi_bound, "General and refined bounds")
    evolve = _subcommand(commands, "evolve", cmd_multi_evolve, "Standard words at a stage")
    evolve.add_argument("--stage", type=int, required=True)
    _subcommand(commands, "check", cmd_multi_check, "Chain decomposition verdict")
    for parser in commands.choices.values():
        _add_directive(parser)
        parser.add_argument("--letters", type=int, help="Alphabet size r (first r letters)")


def setup_argparse() -> argparse.ArgumentParser:
    """Configure command-line arguments."""
    parser = argparse.ArgumentParser(
        prog="bwclusters",
        description="Burrows-Wheeler clustering words and Arnoux-Rauzy languages",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Transform and clustering certificates
  %(prog)s bwt aab --order ab
  %(prog)s cluster abaca
  %(prog)s criterion abaca --order acb --pi cab

  # Tribonacci bound and longest clustering word
  %(prog)s ar bound --directive :abc
  %(prog)s ar longword --directive :abc

  # 4-Bonacci bounds
  %(prog)s multi bound --directive :abcd

  # Exhaustive verification
  %(prog)s verify --suite car --max 8
        """,
    )
    parser.add_argument("--format", choices=["text", "json"], default="text")
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Overrides BWC_LOG_LEVEL",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    bwt_parser = _subcommand(subparsers, "bwt", cmd_bwt, "Burrows-Wheeler transform")
    bwt_parser.add_argument("word")
    bwt_parser.add_argument("--order", required=True, help='Order as letters, "acb" is a<c<b')

    cluster = _subcommand(subparsers, "cluster", cmd_cluster, "Clustering certificates")
    cluster.add_argument("word")
    cluster.add_argument("--order")
    cluster.add_argument("--alphabet", help="Alphabet when it has letters absent from the word")
    cluster.add_argument("--perfect", action="store_true", help="Only perfect clustering")

    bispecial = _subcommand(
        subparsers, "bispecials", cmd_bispecials, "Bispecials of the circular language"
    )
    bispecial.add_argument("word")
    bispecial.add_argument("--alphabet")

    criterion = _subcommand(subparsers, "criterion", cmd_criterion, "Order condition report")
    criterion.add_argument("word")
    criterion.add_argument("--order", required=True)
    criterion.add_argument(
        "--pi", required=True, help='Images in alphabetical order, "cab" is a->c, b->a, c->b'
    )

    desub = _subcommand(subparsers, "desub", cmd_desub, "De-substitute to a single letter")
    desub.add_argument("word")
    desub.add_argument("--alphabet")
    desub.add_argument(
        "--conjugates", action="store_true", help="Decide conjugacy to a standard word"
    )

    language = _subcommand(subparsers, "language", cmd_language, "Circular language profile")
    language.add_argument("word")
    language.add_argument("--alphabet")
    language.add_argument("--max", type=int, default=6)

    complexity_parser = _subcommand(
        subparsers, "complexity", cmd_complexity, "Complexity of a directive language"
    )
    _add_directive(complexity_parser)
    complexity_parser.add_argument("--max", type=int, required=True)

    _add_ar_commands(subparsers)
    _add_epi_commands(subparsers)
    _add_multi_commands(subparsers)

    sturmian = subparsers.add_parser("sturmian", help="Sturmian words")
    sturmian_commands = sturmian.add_subparsers(dest="sturmian_command", required=True)
    check = _subcommand(
        sturmian_commands, "check", cmd_sturmian_check, "Clustering of a binary word"
    )
    check.add_argument("word")

    ptb1 = _subcommand(
        subparsers, "ptb1", cmd_ptb1, "Palindromic clustering word from v over {a,c}"
    )
    ptb1.add_argument("v")
    ptb2 = _subcommand(subparsers, "ptb2", cmd_ptb2, "tau_u image of a ptb1 word")
    ptb2.add_argument("u")
    ptb2.add_argument("w")

    verify = _subcommand(subparsers, "verify", cmd_verify, "Run a verification suite")
    verify.add_argument("--suite", choices=[suite.value for suite in Suite], required=True)
    verify.add_argument("--max", type=int, required=True)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv``, run the command and return the exit code."""
    parser = setup_argparse()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    try:
        config = get_config()
        observability = ObservabilityProvider(
            service_name=config.app_name,
            log_level=args.log_level or config.observability.log_level,
            log_format=config.observability.log_format,
        )
        ctx = Context(config, observability, json_output=args.format == "json")
        code: int = args.handler(args, ctx)
        return code
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        print("cancelled", file=sys.stderr)
        return 130


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
