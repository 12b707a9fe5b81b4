"""Exit criteria for the package, one test per criterion.

Each test prints a single ``[PASS]``/``[FAIL]`` line.  All comparisons are
exact; the wall-clock bounds are the stated budgets for each criterion.
"""

import random
import time

import pytest

from synchro.automata import (
    Alphabet,
    is_proper,
    is_reset_word_dfa,
    is_strong_sync_word_nfa,
    is_synchronizing_dfa,
    letter_essentiality,
    shortest_reset_word_dfa,
)
from synchro.codesets import (
    CodeSet,
    forbidden_sets_closed_form,
    forbidden_sets_recurrence,
    is_complete_set,
    is_completable,
    is_incompletable_xku,
    restivo_word,
    shortest_incompletable_word,
)
from synchro.constructions import build_chain_zero, build_fhat_k_u, fhat
from synchro.verify import theorem2_word
from synchro.words import Decomposition, decompose_by, is_unbordered

from conftest import COMPLETE_WORDS, all_words

AB = Alphabet.standard(2)
ABC = Alphabet.standard(3)

XKU_CASES = [(AB, "ab"), (AB, "aab"), (AB, "abb"), (ABC, "ab")]


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            status = "PASS" if ok else "FAIL"
            print(f"\n[{status}] criterion {number}: {title}" + (f" ({detail})" if detail else ""))
        assert ok, detail

    return emit


def test_criterion_1_reset_threshold_of_2k_state_family(report):
    start = time.perf_counter()
    lengths = {}
    for m in (2, 3):
        alphabet = Alphabet.standard(m)
        lengths[m] = []
        for k in range(2, 7):
            d = build_fhat_k_u(alphabet, theorem2_word(alphabet, k))
            lengths[m].append(len(shortest_reset_word_dfa(d)))
    elapsed = time.perf_counter() - start
    n_form = [(2 * k) ** 2 // 4 + (2 * k) // 2 - 1 for k in range(2, 7)]
    ok = lengths[2] == lengths[3] == [5, 11, 19, 29, 41] == n_form and elapsed < 5
    report(1, "shortest reset words of F(k,u), k=2..6, |A| in {2,3}", ok, f"{lengths}, {elapsed:.2f}s")


def test_criterion_2_shortest_incompletable_length(report):
    start = time.perf_counter()
    measured = []
    for alphabet, u in XKU_CASES:
        k = len(u)
        word = shortest_incompletable_word(CodeSet.all_but(alphabet, alphabet.parse(u)))
        measured.append((u, len(alphabet), len(word), k * k + k - 1))
    elapsed = time.perf_counter() - start
    ok = all(got == want for _, _, got, want in measured) and elapsed < 30
    report(2, "shortest incompletable word for A^k minus u has length k^2+k-1", ok, f"{measured}, {elapsed:.2f}s")


def test_criterion_3_restivo_word(report):
    failures = []
    for alphabet, u in XKU_CASES:
        uu = alphabet.parse(u)
        k = len(uu)
        word = restivo_word(uu, 0, k)
        if is_completable(word, CodeSet.all_but(alphabet, uu)):
            failures.append(f"{u}: completable")
        if not is_reset_word_dfa(build_fhat_k_u(alphabet, uu), word):
            failures.append(f"{u}: not a reset word")
    report(3, "(ua)^(k-1)u is incompletable and resets F(k,u)", not failures, "; ".join(failures))


def test_criterion_4_chain_family(report):
    start = time.perf_counter()
    lengths = [len(shortest_reset_word_dfa(build_chain_zero(n))) for n in range(3, 8)]
    elapsed = time.perf_counter() - start
    expected = [n * (n - 1) // 2 for n in range(3, 8)]
    ok = lengths == expected == [3, 6, 10, 15, 21] and elapsed < 5
    report(4, "chain automata reset in n(n-1)/2, n=3..7", ok, f"{lengths}, {elapsed:.2f}s")


def test_criterion_5_three_way_equivalence(report):
    start = time.perf_counter()
    mismatches = []
    total = 0
    for u in ("ab", "aab"):
        uu = AB.parse(u)
        X = CodeSet.all_but(AB, uu)
        d = build_fhat_k_u(AB, uu)
        for word in all_words(2, 14):
            crit = is_incompletable_xku(word, uu)
            oracle = not is_completable(word, X)
            reset = is_reset_word_dfa(d, word)
            total += 1
            if not crit == oracle == reset:
                mismatches.append((u, AB.format(word)))
    elapsed = time.perf_counter() - start
    ok = not mismatches and elapsed < 120
    report(5, "criterion = not completable = resets F(k,u), |w| <= 14", ok,
           f"{total} words, {len(mismatches)} mismatches, {elapsed:.2f}s")


def test_criterion_6_forbidden_sets(report):
    bad = []
    decompositions = 0
    for u in ("ab", "aab"):
        uu = AB.parse(u)
        k = len(uu)
        for word in all_words(2, 14):
            parts = decompose_by(word, uu)
            crit = is_incompletable_xku(word, uu)
            if parts.occurrences < 2:
                if crit:
                    bad.append(("criterion true with < 2 occurrences", u, word))
                continue
            decompositions += 1
            rec = forbidden_sets_recurrence(uu, k, parts)
            if rec != forbidden_sets_closed_form(uu, k, parts):
                bad.append(("recurrence != closed form", u, word))
            if (rec.first == frozenset(range(k))) != crit:
                bad.append(("S_1 full != criterion", u, word))
    rng = random.Random(1000)
    for _ in range(1000):
        k = rng.randint(2, 7)
        u = (0,) * (k - 1) + (1,)
        parts = tuple(tuple([0] * rng.randint(0, 2 * k)) for _ in range(rng.randint(3, 10)))
        dec = Decomposition(u, parts)
        if forbidden_sets_recurrence(u, k, dec) != forbidden_sets_closed_form(u, k, dec):
            bad.append(("random recurrence != closed form", u, parts))
    report(6, "S_1 full iff incompletable; recurrence = closed form", not bad,
           f"{decompositions} exhaustive + 1000 random decompositions, {len(bad)} failures")


def test_criterion_7_properness(report):
    cases = [(AB, "aab"), (AB, "aabb"), (AB, "aaab"), (ABC, "aabc")]
    details = []
    ok = True
    for alphabet, u in cases:
        uu = alphabet.parse(u)
        assert is_unbordered(uu), u
        d = build_fhat_k_u(alphabet, uu)
        essential = letter_essentiality(d)
        # independent of is_proper: drop each letter and re-test synchronizability
        dropped = {
            a: not is_synchronizing_dfa(d.restricted([b for b in range(len(alphabet)) if b != a]))
            for a in range(len(alphabet))
        }
        proper = is_proper(d)
        ok &= proper and all(essential.values()) and essential == dropped
        details.append(f"{u}:{proper}")
    report(7, "F(k,u) is proper for k > |A| and u using every letter", ok, ", ".join(details))


def test_criterion_8_completeness(report):
    complete = CodeSet.from_strings(AB, COMPLETE_WORDS)
    n = fhat(complete)
    strong = [w for w in all_words(2, 8) if is_strong_sync_word_nfa(n, w)]
    incomplete = CodeSet.all_but(AB, AB.parse("ab"))
    ok = is_complete_set(complete) and not strong and not is_complete_set(incomplete)
    report(8, "completeness: {aa,ab,ba,bb,aab} complete, A^2 minus ab incomplete", ok,
           f"{len(strong)} strong-sync words up to length 8")
