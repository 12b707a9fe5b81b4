import itertools
import random

import pytest

from synchro.automata import (
    Alphabet,
    Nfa,
    find_zero_state,
    is_proper,
    is_reset_word_dfa,
    letter_essentiality,
    shortest_reset_word_dfa,
)
from synchro.codesets import CodeSet, is_completable
from synchro.constructions import (
    build_chain_zero,
    build_fhat_k_u,
    complete_with_zero,
    fhat,
    flower_prefixes,
    semi_flower,
)
from synchro.errors import InvalidInputError, PreconditionError
from synchro.words import canonical_unbordered_with_all_letters, is_unbordered

from conftest import AB, ABC, COMPLETE_WORDS, all_words, w


def in_star(word, X):
    """Dynamic programming membership in X*."""
    ok = [True] + [False] * len(word)
    for i in range(1, len(word) + 1):
        ok[i] = any(ok[i - len(x)] and word[i - len(x) : i] == x for x in X.words if len(x) <= i)
    return ok[-1]


def random_code(rng, m):
    size = rng.randint(1, 5)
    words = {tuple(rng.randrange(m) for _ in range(rng.randint(1, 4))) for _ in range(size)}
    return CodeSet(Alphabet.standard(m), frozenset(words))


def hub_cycles(nfa):
    """Label words of simple cycles through the hub (state 0)."""
    m = len(nfa.alphabet)
    out = set()

    def rec(q, visited, label):
        for a in range(m):
            for t in nfa.delta[q][a]:
                if t == 0:
                    out.add(label + (a,))
                elif t not in visited:
                    rec(t, visited | {t}, label + (a,))

    rec(0, {0}, ())
    return out


def has_cycle_avoiding_hub(nfa):
    # DFS colouring on the graph with the hub removed
    succ = {q: {t for cell in nfa.delta[q] for t in cell if t != 0} for q in range(1, nfa.n_states)}
    colour = {}

    def visit(q):
        colour[q] = 1
        for t in succ[q]:
            if colour.get(t) == 1 or (t not in colour and visit(t)):
                return True
        colour[q] = 2
        return False

    return any(q not in colour and visit(q) for q in succ)


# -- semi-flower -------------------------------------------------------------

def test_semi_flower_shared_prefixes(complete_code):
    n = semi_flower(complete_code)
    assert n.n_states == 4
    assert flower_prefixes(complete_code) == [(), w("a"), w("aa"), w("b")]
    # hub 0, then prefixes a, aa, b
    assert n.delta[1][0] == {0, 2}
    assert n.delta[2][0] == frozenset()
    assert n.delta[0][0] == {1} and n.delta[0][1] == {3}
    assert n.delta[2][1] == {0}
    assert n.delta[3][0] == n.delta[3][1] == {0}
    assert n.initial == 0 and n.terminals == {0}


def test_semi_flower_single_letter():
    X = CodeSet.from_strings(AB, ["a"])
    n = semi_flower(X)
    assert n.n_states == 1
    assert n.delta[0][0] == {0} and n.delta[0][1] == frozenset()


def test_semi_flower_x2_ab_language(x2_ab):
    n = semi_flower(x2_ab)
    assert n.n_states == 3
    for word in all_words(2, 8):
        blocks = [word[i : i + 2] for i in range(0, len(word), 2)]
        direct = len(word) % 2 == 0 and w("ab") not in blocks
        assert n.accepts(word) == direct


def test_semi_flower_recognizes_star_on_random_codes():
    rng = random.Random(7)
    codes = [random_code(rng, rng.choice([2, 3])) for _ in range(25)]
    codes.append(CodeSet.from_strings(AB, COMPLETE_WORDS))
    for X in codes:
        n = semi_flower(X)
        m = len(X.alphabet)
        for word in all_words(m, 10 if m == 2 else 6):
            assert n.accepts(word) == in_star(word, X), (X, word)


def test_simple_cycles_pass_through_hub_and_spell_members():
    rng = random.Random(11)
    codes = [random_code(rng, 2) for _ in range(25)] + [CodeSet.from_strings(AB, COMPLETE_WORDS)]
    for X in codes:
        n = semi_flower(X)
        assert not has_cycle_avoiding_hub(n)
        assert hub_cycles(n) == X.words


# -- zero completion ---------------------------------------------------------

def test_complete_with_zero_adds_one_edge(complete_code):
    before = semi_flower(complete_code)
    after = complete_with_zero(before)
    z = after.zero
    assert z == 4 and after.n_states == 5
    added = [
        (q, a)
        for q in range(before.n_states)
        for a in range(2)
        if after.delta[q][a] != before.delta[q][a]
    ]
    assert added == [(2, 0)]  # only node aa lacked an a-edge
    assert after.delta[2][0] == {z}
    assert after.delta[z][0] == after.delta[z][1] == {z}


def test_complete_with_zero_no_empty_cells():
    total = Nfa(2, AB, [({1}, {0}), ({0, 1}, {1})])
    after = complete_with_zero(total)
    assert after.delta[:2] == total.delta
    assert after.delta[2] == ({2}, {2})


def test_complete_with_zero_rejects_existing_zero(complete_code):
    with pytest.raises(InvalidInputError):
        complete_with_zero(fhat(complete_code))


def test_fhat_examples(complete_code, x2_ab):
    assert fhat(complete_code).n_states == 5
    n = fhat(x2_ab)
    assert n.n_states == 4
    assert all(cell == {n.zero} for cell in n.delta[n.zero])


# -- the 2k-state automaton --------------------------------------------------

def test_fhat_k_u_binary_ab():
    d = build_fhat_k_u(AB, w("ab"))
    a, b = 0, 1
    assert d.n_states == 4 and d.zero == 0
    assert d.delta[1][a] == 2 and d.delta[1][b] == 3
    assert d.delta[2][b] == 0 and d.delta[2][a] == 1
    assert d.delta[3][a] == d.delta[3][b] == 1
    assert d.delta[0] == (0, 0)
    assert d.initial == 1 and d.finals == {1}


def test_fhat_k_u_aab():
    d = build_fhat_k_u(AB, w("aab"))
    assert d.n_states == 6
    assert d.delta[3][1] == 0


def test_fhat_k_u_ternary():
    d = build_fhat_k_u(ABC, w("aabc", ABC))
    assert d.n_states == 8
    # a_2 = a continues along u; any other letter deviates to k + 2
    assert d.delta[2][0] == 3
    assert d.delta[2][1] == 6
    assert d.delta[2][2] == 6


@pytest.mark.parametrize(
    "alphabet, u",
    [(AB, "aba"), (AB, "a"), (Alphabet.of("a"), "aa")],
)
def test_fhat_k_u_rejects(alphabet, u):
    with pytest.raises(PreconditionError):
        build_fhat_k_u(alphabet, alphabet.parse(u))


def test_fhat_k_u_bordered_message():
    with pytest.raises(PreconditionError, match="border 'a'"):
        build_fhat_k_u(AB, w("aba"))


@pytest.mark.parametrize("u", ["ab", "aab", "abb"])
def test_fhat_k_u_resets_are_incompletable_words(u):
    u = w(u)
    d = build_fhat_k_u(AB, u)
    X = CodeSet.all_but(AB, u)
    assert find_zero_state(d) == 0
    for word in all_words(2, 14):
        assert is_reset_word_dfa(d, word) == (not is_completable(word, X))


def unbordered_words(m, k):
    return [u for u in itertools.product(range(m), repeat=k) if is_unbordered(u)]


@pytest.mark.parametrize("m", [2, 3])
@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_fhat_k_u_reset_threshold_every_unbordered_u(m, k):
    alphabet = Alphabet.standard(m)
    for u in unbordered_words(m, k):
        assert len(shortest_reset_word_dfa(build_fhat_k_u(alphabet, u))) == k * k + k - 1, u


@pytest.mark.parametrize("m, k", [(2, 3), (2, 4), (3, 4)])
def test_fhat_k_u_proper(m, k):
    alphabet = Alphabet.standard(m)
    d = build_fhat_k_u(alphabet, canonical_unbordered_with_all_letters(alphabet, k))
    assert is_proper(d)
    assert all(letter_essentiality(d).values())


# -- chain family ------------------------------------------------------------

def test_chain_n4_table():
    d = build_chain_zero(4)
    a1, a2, a3 = 0, 1, 2
    assert d.n_states == 4 and len(d.alphabet) == 3
    assert d.delta[1][a1] == 0
    assert d.delta[1][a2] == 2 and d.delta[2][a2] == 1
    assert d.delta[2][a3] == 3 and d.delta[3][a3] == 2
    assert d.delta[3][a1] == 3
    assert d.delta[2][a1] == 2
    assert d.delta[0] == (0, 0, 0)
    assert d.zero == 0


@pytest.mark.parametrize("n", range(3, 10))
def test_chain_reset_threshold(n):
    assert len(shortest_reset_word_dfa(build_chain_zero(n))) == n * (n - 1) // 2


def test_chain_rejects_small_n():
    with pytest.raises(InvalidInputError):
        build_chain_zero(2)
