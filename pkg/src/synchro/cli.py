"""Command-line interface: ``synchro build|analyze|words|verify``.

Exit codes: 0 success / property true, 1 property false or verification
mismatch, 2 invalid input or state cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import operator
import re
import sys
from pathlib import Path
from typing import Any, Sequence

from . import document
from .automata import (
    Alphabet,
    Dfa,
    Nfa,
    find_zero_state,
    is_proper,
    is_synchronizing_dfa,
    letter_essentiality,
    shortest_reset_word_dfa,
    shortest_strong_sync_word_nfa,
    to_dot,
    zero_candidates,
)
from .codesets import (
    check_restivo_precondition,
    forbidden_sets_recurrence,
    gap_partial_sums,
    is_completable,
    is_incompletable_xku,
    is_k_representative,
    load_codeset,
    restivo_word,
    shortest_incompletable_word,
)
from .constructions import build_chain_zero, build_fhat_k_u, fhat, semi_flower
from .errors import SynchroError, UnsupportedInputError
from .verify import verify_equivalence, verify_fig1, verify_prop2, verify_theorem2
from .words import decompose_by, is_unbordered, shortest_border

EXIT_OK, EXIT_FALSE, EXIT_INVALID = 0, 1, 2

# grid bounds beyond which verify needs --allow-large
DESK_LIMITS = {"k": 6, "n": 7, "max_len": 14}


class CliError(Exception):
    """Invalid command-line input; reported with exit code 2."""


def parse_range(text: str) -> list[int]:
    """``"2..6"``, ``"3"`` or ``"2,4,5"``."""
    out: list[int] = []
    try:
        for chunk in text.split(","):
            chunk = chunk.strip()
            if ".." in chunk:
                lo, hi = chunk.split("..", 1)
                out.extend(range(int(lo), int(hi) + 1))
            elif chunk:
                out.append(int(chunk))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a range: {text!r}") from None
    if not out:
        raise argparse.ArgumentTypeError(f"empty range: {text!r}")
    return out


def _emit(args, payload: dict[str, Any], text: str) -> None:
    if args.json:
        print(json.dumps(payload, ensure_ascii=False, indent=2))
    else:
        print(text)


def _word_text(alphabet: Alphabet, w) -> str | None:
    return None if w is None else alphabet.format(w)


# -- build -------------------------------------------------------------------

def cmd_build(args) -> int:
    alphabet = Alphabet.of(args.alphabet)
    family = args.family
    if family == "fhat-ku":
        if args.u is None:
            raise CliError("fhat-ku needs --u")
        automaton: Dfa | Nfa = build_fhat_k_u(alphabet, alphabet.parse(args.u))
    elif family == "chain":
        if args.n is None:
            raise CliError("chain needs --n")
        automaton = build_chain_zero(args.n)
    else:
        if args.code is None:
            raise CliError(f"{family} needs --code")
        X = load_codeset(args.code, Alphabet.of(args.alphabet) if args.alphabet_given else None)
        if family == "fhat-x" or args.complete_zero:
            automaton = fhat(X)
        else:
            automaton = semi_flower(X)
    text = document.dumps(automaton)
    if args.out and args.out != "-":
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)
    if args.dot:
        Path(args.dot).write_text(to_dot(automaton, family), encoding="utf-8", newline="\n")
    return EXIT_OK


# -- analyze -----------------------------------------------------------------

_CHECK = re.compile(r"^\s*(==|!=|<=|>=|<|>|=)?\s*(\S+)\s*$")
_OPS = {"==": operator.eq, "=": operator.eq, "!=": operator.ne, "<=": operator.le,
        ">=": operator.ge, "<": operator.lt, ">": operator.gt}


def check_predicate(value: Any, expr: str) -> bool:
    """Compare an analysis result with ``EXPR``: ``true``, ``none``, ``11``, ``<=11`` ..."""
    match = _CHECK.match(expr)
    if not match:
        raise CliError(f"bad --check expression {expr!r}")
    op = _OPS[match.group(1) or "=="]
    rhs = match.group(2).lower()
    if isinstance(value, bool):
        lhs: Any = "true" if value else "false"
    elif value is None:
        lhs = "none"
    else:
        lhs = value
        try:
            rhs = int(rhs)
        except ValueError:
            return op(str(lhs), rhs)
    if isinstance(lhs, str) and op not in (operator.eq, operator.ne):
        return False  # e.g. "<=10" against "none"
    return op(lhs, rhs)


def cmd_analyze(args) -> int:
    automaton = document.load(args.input)
    alphabet = automaton.alphabet
    task = args.task
    payload: dict[str, Any] = {"task": task}
    if task == "reset":
        if isinstance(automaton, Dfa):
            word = shortest_reset_word_dfa(automaton, args.cap)
        else:
            word = shortest_strong_sync_word_nfa(automaton, args.cap)
        payload.update(synchronizing=word is not None,
                       length=None if word is None else len(word),
                       word=_word_text(alphabet, word))
        value: Any = payload["length"]
        text = "not synchronizing" if word is None else f"length {len(word)}\nword {payload['word']}"
        truth = word is not None
    elif task == "sync":
        if isinstance(automaton, Dfa):
            value = is_synchronizing_dfa(automaton)
        else:
            value = shortest_strong_sync_word_nfa(automaton, args.cap) is not None
        payload["synchronizing"] = value
        text = "synchronizing: " + str(value).lower()
        truth = value
    elif task == "proper":
        if not isinstance(automaton, Dfa):
            raise UnsupportedInputError("properness is only decided for deterministic automata")
        value = is_proper(automaton)
        essential = letter_essentiality(automaton)
        payload["proper"] = value
        payload["essential_letters"] = {alphabet.letters[a]: e for a, e in essential.items()}
        text = "proper: " + str(value).lower() + "\n" + "\n".join(
            f"  without {alphabet.letters[a]}: {'not synchronizing' if e else 'synchronizing'}"
            for a, e in essential.items()
        )
        truth = value
    else:  # zero
        if isinstance(automaton, Dfa):
            value = find_zero_state(automaton)
            candidates = zero_candidates(automaton)
        else:
            value = automaton.zero
            candidates = [] if value is None else [value]
        payload["zero"] = value
        payload["candidates"] = candidates
        if value is not None:
            text = f"zero: {value}"
        elif len(candidates) > 1:
            text = "zero: none (multiple all-loop states: " + ", ".join(map(str, candidates)) + ")"
        else:
            text = "zero: none"
        truth = value is not None
    _emit(args, payload, text)
    if args.check is not None:
        return EXIT_OK if check_predicate(value, args.check) else EXIT_FALSE
    return EXIT_OK if truth else EXIT_FALSE


# -- words -------------------------------------------------------------------

def _need(args, *names: str) -> None:
    for name in names:
        if getattr(args, name) is None:
            raise CliError(f"{args.task} needs --{name.replace('_', '-')}")


def cmd_words(args) -> int:
    alphabet = Alphabet.of(args.alphabet)
    task = args.task
    payload: dict[str, Any] = {"task": task}
    if task == "unbordered":
        _need(args, "u")
        u = alphabet.parse(args.u)
        value = is_unbordered(u)
        border = shortest_border(u)
        payload.update(unbordered=value, border=_word_text(alphabet, border))
        text = "unbordered: " + str(value).lower()
        if border is not None:
            text += f" (border '{alphabet.format(border)}')"
        truth = value
    elif task == "completable":
        _need(args, "word", "code")
        X = load_codeset(args.code, alphabet if args.alphabet_given else None)
        w = X.alphabet.parse(args.word)
        value = is_completable(w, X)
        payload["completable"] = value
        text = "completable: " + str(value).lower()
        truth = value
    elif task == "incompletable-criterion":
        _need(args, "u", "word")
        u, w = alphabet.parse(args.u), alphabet.parse(args.word)
        value = is_incompletable_xku(w, u, alphabet)
        k = len(u)
        parts = decompose_by(w, u)
        sums = gap_partial_sums(parts)
        payload.update(
            incompletable=value,
            k=k,
            occurrences=parts.occurrences,
            parts=[alphabet.format(v) for v in parts.parts],
            partial_sums=sums,
            k_representative=is_k_representative(sums, k),
        )
        lines = [
            "incompletable: " + str(value).lower(),
            f"decomposition: {' | '.join(alphabet.format(v) for v in parts.parts)}  "
            f"({parts.occurrences} occurrences of {alphabet.format(u)})",
            f"partial sums: {sums}",
        ]
        if parts.occurrences >= 2:
            S = forbidden_sets_recurrence(u, k, parts)
            payload["forbidden_sets"] = [sorted(s) for s in S.sets]
            for j, s in enumerate(S.sets, start=1):
                lines.append(f"S_{j} = {{{', '.join(map(str, sorted(s)))}}}")
        else:
            payload["forbidden_sets"] = None
            lines.append("fewer than two occurrences: completable")
        text = "\n".join(lines)
        truth = value
    elif task == "shortest-incompletable":
        _need(args, "code")
        X = load_codeset(args.code, alphabet if args.alphabet_given else None)
        word = shortest_incompletable_word(X, args.cap)
        payload.update(complete=word is None,
                       length=None if word is None else len(word),
                       word=_word_text(X.alphabet, word))
        text = "complete: no incompletable word" if word is None else (
            f"length {len(word)}\nword {X.alphabet.format(word)}")
        truth = word is not None
    else:  # restivo
        _need(args, "u")
        u = alphabet.parse(args.u)
        pad = alphabet.index(args.pad) if args.pad is not None else 0
        word = restivo_word(u, pad, len(u))
        payload.update(word=alphabet.format(word), length=len(word))
        if args.code is not None:
            X = load_codeset(args.code, alphabet if args.alphabet_given else None)
            payload["precondition"] = check_restivo_precondition(u, X)
        text = alphabet.format(word)
        truth = True
    _emit(args, payload, text)
    return EXIT_OK if truth else EXIT_FALSE


# -- verify ------------------------------------------------------------------

def _parse_case(text: str) -> tuple[int, str]:
    size, _, u = text.partition(":")
    try:
        return int(size), u
    except ValueError:
        raise CliError(f"case must look like SIZE:U, got {text!r}") from None


def cmd_verify(args) -> int:
    suite = args.suite
    large = args.allow_large
    if suite == "theorem2":
        if max(args.k) > DESK_LIMITS["k"] and not large:
            raise CliError(f"k > {DESK_LIMITS['k']} needs --allow-large")
        report = verify_theorem2(args.k, args.alphabet_sizes, args.cap)
    elif suite == "prop2":
        cases = [_parse_case(c) for c in args.case] if args.case else None
        report = verify_prop2(cases, args.cap) if cases else verify_prop2(cap=args.cap)
    elif suite == "fig1":
        if max(args.n) > DESK_LIMITS["n"] and not large:
            raise CliError(f"n > {DESK_LIMITS['n']} needs --allow-large")
        report = verify_fig1(args.n, args.cap)
    else:
        if args.max_len > DESK_LIMITS["max_len"] and not large:
            raise CliError(f"--max-len > {DESK_LIMITS['max_len']} needs --allow-large")
        alphabet = Alphabet.of(args.alphabet)
        u = alphabet.parse(args.u)
        report = verify_equivalence(u, args.max_len, alphabet)
    if args.json:
        print(json.dumps(report.to_dict(), ensure_ascii=False, indent=2))
    else:
        sys.stdout.write(report.render())
    return EXIT_OK if report.ok else EXIT_FALSE


# -- parser ------------------------------------------------------------------

class _AlphabetAction(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        setattr(namespace, self.dest, values)
        namespace.alphabet_given = True


def _add_alphabet(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alphabet", default="ab", action=_AlphabetAction,
                   help="letters, e.g. 'abc' or 'x y z' (default: ab)")
    p.set_defaults(alphabet_given=False)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--cap", type=int, default=None,
                        help="state cap for subset searches (default 24 or $SYNCHRO_STATE_CAP)")

    parser = argparse.ArgumentParser(prog="synchro", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="build an automaton and write its JSON document")
    p.add_argument("family", choices=["fhat-ku", "chain", "semiflower", "fhat-x"])
    _add_alphabet(p)
    p.add_argument("--u", help="unbordered word for fhat-ku")
    p.add_argument("--n", type=int, help="number of states for chain")
    p.add_argument("--code", help="code set: file path, 'A^k minus u', or comma-separated words")
    p.add_argument("--complete-zero", action="store_true", help="add the zero state to semiflower")
    p.add_argument("--out", "-o", help="output path (default stdout)")
    p.add_argument("--dot", help="also write Graphviz DOT here")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("analyze", parents=[common], help="analyze an automaton document")
    p.add_argument("task", choices=["reset", "sync", "proper", "zero"])
    p.add_argument("input", help="automaton JSON document")
    p.add_argument("--check", metavar="EXPR",
                   help="exit 0 if the result matches EXPR (e.g. 11, '<=11', true, none), else 1")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("words", parents=[common], help="word and code-set computations")
    p.add_argument("task", choices=["unbordered", "completable", "incompletable-criterion",
                                    "shortest-incompletable", "restivo"])
    _add_alphabet(p)
    p.add_argument("--u")
    p.add_argument("--word")
    p.add_argument("--code")
    p.add_argument("--pad", help="padding letter for restivo (default: first letter)")
    p.set_defaults(func=cmd_words)

    p = sub.add_parser("verify", parents=[common], help="compare measured lengths with the formulas")
    p.add_argument("suite", choices=["theorem2", "prop2", "fig1", "equivalence"])
    p.add_argument("--k", type=parse_range, default=parse_range("2..6"))
    p.add_argument("--alphabet-sizes", type=parse_range, default=parse_range("2,3"))
    p.add_argument("--n", type=parse_range, default=parse_range("3..7"))
    p.add_argument("--case", action="append", metavar="SIZE:U",
                   help="prop2 case, repeatable (default: 2:ab 2:aab 2:abb 3:ab)")
    _add_alphabet(p)
    p.add_argument("--u", default="ab")
    p.add_argument("--max-len", type=int, default=14)
    p.add_argument("--allow-large", action="store_true",
                   help="accept grids beyond desk scale (long runtimes)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, SynchroError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
