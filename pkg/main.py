import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv
load_dotenv()  # Load .env before other imports

from app.cayley import (
    cayley_automaton,
    classifier,
    dual_semigroup,
    freeness_check,
)
from app.census import CensusPipeline
from app.config import settings
from app.constructions import (
    FAMILIES,
    example_table,
    relation_automaton,
    self_dual_nonband,
    basic_family,
)
from app.errors import BudgetExceeded, InternalDisagreement, SemigroupError, BadParam
from app.formats import (
    export_dot,
    parse_any,
    render_eggbox,
    write_automaton,
    write_table,
)
from app.mealy import CompositeState, MealyAutomaton, act, enumerate_semigroup, words_equal
from app.schemas import Budgets, Exhausted, KnownInfinite
from app.semigroup import (
    FiniteSemigroup,
    green,
    has_relative_identities,
    idempotents,
    is_aperiodic,
    is_band,
    is_monoid,
    is_regular,
    lrr,
    nilpotency_class,
    square,
)

logger = logging.getLogger("cayley")

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_BUDGET, EXIT_BUG = 0, 1, 2, 3, 4

WORD_HELP = (
    "comma-separated state names in algebraic product order: "
    "'s,t' is s̄·t̄, so t acts on the sequence first"
)


def _read(path: str):
    return parse_any(Path(path).read_text(encoding="utf-8"))


def _automaton(path: str) -> MealyAutomaton:
    loaded = _read(path)
    if isinstance(loaded, FiniteSemigroup):
        return cayley_automaton(loaded)
    return loaded


def _semigroup(path: str) -> FiniteSemigroup:
    loaded = _read(path)
    if not isinstance(loaded, FiniteSemigroup):
        raise BadParam(f"{path} holds an automaton; this command needs a table file")
    return loaded


def _split(text: str) -> List[str]:
    """Comma-separated symbols; commas inside parentheses belong to a name like (i,j)"""
    tokens, current, depth = [], [], 0
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth = max(depth - 1, 0)
        if ch == "," and depth == 0:
            tokens.append("".join(current))
            current = []
        else:
            current.append(ch)
    tokens.append("".join(current))
    return [token.strip() for token in tokens if token.strip()]


def _emit(text: str, out: Optional[str]) -> None:
    if out and out != "-":
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _budgets(args) -> Budgets:
    return Budgets.from_settings(max_elements=args.max_elements, max_length=args.max_length)


def _bool(value) -> str:
    if value is None:
        return "?"
    return "true" if value else "false"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_validate(args) -> int:
    loaded = _read(args.file)
    if isinstance(loaded, FiniteSemigroup):
        print(f"ok: associative table with {loaded.size} elements")
    else:
        print(f"ok: automaton with {len(loaded.states)} states over {len(loaded.alphabet)} symbols")
    return EXIT_OK


def cmd_analyze(args) -> int:
    S = _semigroup(args.file)
    structure = green(S)
    facts = {
        "size": S.size,
        "band": is_band(S).holds,
        "aperiodic": is_aperiodic(S).holds,
        "monoid": is_monoid(S),
        "relative_identities": has_relative_identities(S),
        "regular": is_regular(S),
        "lrr_faithful": lrr(S).faithful,
        "s_squared_band": is_band(square(S)[0]).holds,
        "idempotents": len(idempotents(S)),
        "r_classes": len(structure.r_classes),
        "l_classes": len(structure.l_classes),
        "h_classes": len(structure.h_classes),
        "d_classes": len(structure.d_classes),
        "nilpotency_class": nilpotency_class(S),
        "square_d_classes": structure.square_d_classes(),
        "maximal_d_singletons": structure.maximal_d_singletons(),
    }
    if args.json:
        print(json.dumps(facts, indent=2))
    else:
        for key, value in facts.items():
            print(f"{key}: {_bool(value) if isinstance(value, bool) or value is None else value}")
    return EXIT_OK


def cmd_eggbox(args) -> int:
    sys.stdout.write(render_eggbox(_semigroup(args.file)))
    return EXIT_OK


def cmd_automaton(args) -> int:
    _emit(export_dot(_automaton(args.file)), args.dot)
    return EXIT_OK


def cmd_act(args) -> int:
    A = _automaton(args.file)
    w = CompositeState.from_product(A, _split(args.word))
    print(",".join(act(A, w, _split(args.seq))))
    return EXIT_OK


def cmd_equal(args) -> int:
    A = _automaton(args.file)
    u = CompositeState.from_product(A, _split(args.word1))
    v = CompositeState.from_product(A, _split(args.word2))
    verdict = words_equal(A, u, v)
    if verdict.holds:
        print("EQUAL")
        return EXIT_OK
    print(f"DISTINCT {','.join(verdict.witness)}")
    return EXIT_FALSE


def _finish_enumeration(result, args, label: str) -> int:
    if isinstance(result, KnownInfinite):
        w = result.witness
        print(f"infinite: {w.element} has index {w.index} and period {w.period}")
        return EXIT_FALSE
    if isinstance(result, Exhausted):
        print(
            f"exhausted: {result.elements_found} elements found, frontier {result.frontier_size} "
            f"({result.reason}); raise --max-elements/--max-length",
            file=sys.stderr,
        )
        return EXIT_BUDGET
    _emit(write_table(result), args.out)
    print(f"{label} has {result.size} elements", file=sys.stderr)
    return EXIT_OK


def _enumerate(args, dual: bool) -> int:
    loaded = _read(args.file)
    budgets = _budgets(args)
    if isinstance(loaded, FiniteSemigroup):
        engine = classifier.with_budgets(budgets.max_elements, budgets.max_length)
        result = engine.pi(loaded, force=args.force) if dual else engine.sigma(loaded, force=args.force)
        return _finish_enumeration(result, args, "Π" if dual else "Σ")
    result = enumerate_semigroup(loaded, budgets.max_elements, budgets.max_length)
    if dual and not isinstance(result, Exhausted):
        result = dual_semigroup(result, loaded.states)
    return _finish_enumeration(result, args, "Π" if dual else "Σ")


def cmd_sigma(args) -> int:
    return _enumerate(args, dual=False)


def cmd_pi(args) -> int:
    return _enumerate(args, dual=True)


def cmd_classify(args) -> int:
    S = _semigroup(args.file)
    budgets = _budgets(args)
    report = classifier.with_budgets(budgets.max_elements, budgets.max_length).classify(S)
    if args.json:
        print(report.model_dump_json(indent=2))
    else:
        for key, value in report.model_dump().items():
            if isinstance(value, bool) or key in ("self_dual", "c_self_automaton"):
                print(f"{key}: {_bool(value)}")
            elif value not in (None, [], {}):
                print(f"{key}: {value}")
    if report.sigma_status == "exhausted":
        return EXIT_BUDGET
    return EXIT_OK if report.self_automaton else EXIT_FALSE


def cmd_free(args) -> int:
    result = freeness_check(_semigroup(args.file), args.max_len)
    if result.ok:
        print(f"ok: {result.words_checked} words up to length {result.max_len} pairwise distinct")
        return EXIT_OK
    u, v = result.collision
    print(f"collision: {u} = {v}")
    return EXIT_FALSE


GENERATORS = {
    **{kind: arity for kind, (_, arity) in FAMILIES.items()},
    "square_left_zero": 0,
    "square_right_zero": 0,
    "self_dual_nonband": 0,
    "relation_automaton": 0,
}


def cmd_gen(args) -> int:
    kind = args.kind
    if kind not in GENERATORS:
        raise BadParam(f"unknown kind {kind!r}; choose from {', '.join(GENERATORS)}")
    if len(args.params) != GENERATORS[kind]:
        raise BadParam(f"{kind} takes {GENERATORS[kind]} parameter(s)")
    if kind == "relation_automaton":
        text = write_automaton(relation_automaton())
    elif kind == "self_dual_nonband":
        text = write_table(self_dual_nonband().s)
    elif kind in ("square_left_zero", "square_right_zero"):
        text = write_table(example_table(kind))
    else:
        text = write_table(basic_family(kind, *args.params))
    _emit(text, args.out)
    return EXIT_OK


def cmd_census(args) -> int:
    budgets = _budgets(args)
    pipeline = CensusPipeline(classifier.with_budgets(budgets.max_elements, budgets.max_length))
    outcome = pipeline.run_sync(Path(args.dir))
    for name, reason in outcome.failures:
        print(f"{name}: {reason}", file=sys.stderr)
    _emit(outcome.to_csv(), args.out)
    return EXIT_USAGE if outcome.failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cayley",
        description=f"{settings.MESSAGE}: finite semigroups, Cayley automata and self-automaton classification",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_budgets(p):
        p.add_argument("--max-elements", type=int, default=None, help=f"default {settings.MAX_ELEMENTS}")
        p.add_argument("--max-length", type=int, default=None, help=f"default {settings.MAX_LENGTH}")

    p = sub.add_parser("validate", help="check a table or automaton file")
    p.add_argument("file")
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("analyze", help="structural flags and Green class counts")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser("eggbox", help="ASCII egg-box diagram")
    p.add_argument("file")
    p.set_defaults(handler=cmd_eggbox)

    p = sub.add_parser("automaton", help="DOT export of the (Cayley) automaton")
    p.add_argument("file")
    p.add_argument("--dot", default="-", help="output path, '-' for stdout")
    p.set_defaults(handler=cmd_automaton)

    p = sub.add_parser("act", help="run a word of states on a sequence")
    p.add_argument("file")
    p.add_argument("--word", required=True, help=WORD_HELP)
    p.add_argument("--seq", required=True, help="comma-separated input symbols")
    p.set_defaults(handler=cmd_act)

    p = sub.add_parser("equal", help="decide whether two words act identically")
    p.add_argument("file")
    p.add_argument("--word1", required=True, help=WORD_HELP)
    p.add_argument("--word2", required=True, help=WORD_HELP)
    p.set_defaults(handler=cmd_equal)

    for name, handler, text in (("sigma", cmd_sigma, "enumerate Σ (left action)"),
                                ("pi", cmd_pi, "enumerate Π (right action)")):
        p = sub.add_parser(name, help=text)
        p.add_argument("file")
        with_budgets(p)
        p.add_argument("--force", action="store_true", help="explore even when the result is known infinite")
        p.add_argument("--out", default=None)
        p.set_defaults(handler=handler)

    p = sub.add_parser("classify", help="full self-automaton report")
    p.add_argument("file")
    with_budgets(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("free", help="check that short words of states are pairwise distinct")
    p.add_argument("file")
    p.add_argument("--max-len", type=int, required=True)
    p.set_defaults(handler=cmd_free)

    p = sub.add_parser("gen", help="write a table (or automaton) file for a named family")
    p.add_argument("kind", help=", ".join(GENERATORS))
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("census", help="classify every table file in a directory, CSV out")
    p.add_argument("dir")
    with_budgets(p)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_census)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    level = logging.DEBUG if args.verbose else getattr(logging, settings.LOG_LEVEL.upper(), logging.WARNING)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    logger.debug("running %s", args.command)
    try:
        return args.handler(args)
    except InternalDisagreement as e:
        print(f"INTERNAL DISAGREEMENT (this is a bug, please report it): {e}", file=sys.stderr)
        return EXIT_BUG
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (SemigroupError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(run())
