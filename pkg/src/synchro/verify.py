"""Measured-versus-formula verification of the extremal families.

Each suite walks a parameter grid, computes a length (or an agreement count)
by exhaustive search and compares it with the closed formula.  Grid points
whose search would exceed the state cap are marked ``skipped``.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field
from typing import Any, Iterable, Sequence

from .automata import Alphabet, Word, is_reset_word_dfa, shortest_reset_word_dfa
from .codesets import CodeSet, is_completable, is_incompletable_xku, shortest_incompletable_word
from .constructions import build_chain_zero, build_fhat_k_u
from .errors import InvalidInputError, ResourceLimitError
from .words import canonical_unbordered_with_all_letters, is_unbordered

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class PointResult:
    params: dict[str, Any]
    expected: int
    measured: int | None
    witness: str | None
    status: str
    note: str = ""


@dataclass
class VerificationReport:
    family: str
    grid: dict[str, Any]
    points: list[PointResult] = field(default_factory=list)

    @property
    def summary(self) -> dict[str, int]:
        counts = {PASS: 0, FAIL: 0, SKIPPED: 0}
        for p in self.points:
            counts[p.status] += 1
        return counts

    @property
    def ok(self) -> bool:
        return self.summary[FAIL] == 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "family": self.family,
            "grid": self.grid,
            "points": [asdict(p) for p in self.points],
            "summary": self.summary,
        }

    def render(self) -> str:
        lines = [f"verify {self.family}  grid: " + ", ".join(f"{k}={v}" for k, v in self.grid.items())]
        for p in self.points:
            params = " ".join(f"{k}={v}" for k, v in p.params.items())
            measured = "-" if p.measured is None else str(p.measured)
            line = f"  [{p.status:>7}] {params}: expected {p.expected}, measured {measured}"
            if p.witness is not None:
                line += f", witness {p.witness}"
            if p.note:
                line += f" ({p.note})"
            lines.append(line)
        s = self.summary
        lines.append(f"summary: {s[PASS]} passed, {s[FAIL]} failed, {s[SKIPPED]} skipped")
        return "\n".join(lines) + "\n"


def theorem2_word(alphabet: Alphabet, k: int) -> Word:
    """Unbordered ``u`` of length ``k`` for the grid: all letters when ``k >= |A|``,
    otherwise ``a^(k-1) b``."""
    if k >= len(alphabet):
        return canonical_unbordered_with_all_letters(alphabet, k)
    return (0,) * (k - 1) + (1,)


def _point(params, expected, word: Word | None, alphabet: Alphabet, note="") -> PointResult:
    measured = None if word is None else len(word)
    witness = None if word is None else alphabet.format(word)
    status = PASS if measured == expected else FAIL
    return PointResult(params, expected, measured, witness, status, note)


def _skipped(params, expected, exc: Exception) -> PointResult:
    return PointResult(params, expected, None, None, SKIPPED, str(exc))


def verify_theorem2(ks: Iterable[int], alphabet_sizes: Iterable[int], cap: int | None = None) -> VerificationReport:
    ks, sizes = list(ks), list(alphabet_sizes)
    report = VerificationReport("theorem2", {"k": ks, "alphabet_sizes": sizes})
    for m in sizes:
        alphabet = Alphabet.standard(m)
        for k in ks:
            n = 2 * k
            expected = k * k + k - 1
            if 4 * expected != n * n + 2 * n - 4:
                raise AssertionError("k^2+k-1 and n^2/4+n/2-1 disagree")  # harness self-check
            u = theorem2_word(alphabet, k)
            params = {"alphabet_size": m, "k": k, "n": n, "u": alphabet.format(u)}
            try:
                word = shortest_reset_word_dfa(build_fhat_k_u(alphabet, u), cap)
            except ResourceLimitError as exc:
                report.points.append(_skipped(params, expected, exc))
                continue
            report.points.append(_point(params, expected, word, alphabet))
    return report


DEFAULT_PROP2_CASES = ((2, "ab"), (2, "aab"), (2, "abb"), (3, "ab"))


def verify_prop2(cases: Iterable[tuple[int, str]] = DEFAULT_PROP2_CASES, cap: int | None = None) -> VerificationReport:
    cases = list(cases)
    report = VerificationReport("prop2", {"cases": [f"{m}:{u}" for m, u in cases]})
    for m, text in cases:
        alphabet = Alphabet.standard(m)
        u = alphabet.parse(text)
        if len(u) < 2 or not is_unbordered(u):
            raise InvalidInputError(f"u = {text!r} must be unbordered of length >= 2")
        k = len(u)
        expected = k * k + k - 1
        params = {"alphabet_size": m, "k": k, "u": text}
        try:
            word = shortest_incompletable_word(CodeSet.all_but(alphabet, u), cap)
        except ResourceLimitError as exc:
            report.points.append(_skipped(params, expected, exc))
            continue
        report.points.append(_point(params, expected, word, alphabet))
    return report


def verify_fig1(ns: Iterable[int], cap: int | None = None) -> VerificationReport:
    ns = list(ns)
    report = VerificationReport("fig1", {"n": ns})
    for n in ns:
        expected = n * (n - 1) // 2
        params = {"n": n}
        try:
            dfa = build_chain_zero(n)
            word = shortest_reset_word_dfa(dfa, cap)
        except ResourceLimitError as exc:
            report.points.append(_skipped(params, expected, exc))
            continue
        report.points.append(_point(params, expected, word, dfa.alphabet))
    return report


def verify_equivalence(u: Sequence[int], max_len: int, alphabet: Alphabet) -> VerificationReport:
    """Three-way agreement on every word up to ``max_len``: gap criterion,
    semi-flower completability, and reset words of the 2k-state automaton."""
    u = tuple(u)
    fhat = build_fhat_k_u(alphabet, u)
    X = CodeSet.all_but(alphabet, u)
    report = VerificationReport(
        "equivalence", {"u": alphabet.format(u), "alphabet": "".join(alphabet.letters), "max_len": max_len}
    )
    m = len(alphabet)
    for length in range(max_len + 1):
        total = agree = incompletable = 0
        first_bad = None
        for w in itertools.product(range(m), repeat=length):
            crit = is_incompletable_xku(w, u)
            oracle = not is_completable(w, X)
            reset = is_reset_word_dfa(fhat, w)
            total += 1
            incompletable += crit
            if crit == oracle == reset:
                agree += 1
            elif first_bad is None:
                first_bad = w
        status = PASS if agree == total else FAIL
        witness = None if first_bad is None else alphabet.format(first_bad)
        report.points.append(
            PointResult({"length": length}, total, agree, witness, status, f"{incompletable} incompletable")
        )
    return report
