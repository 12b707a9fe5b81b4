"""Builders for the automaton families: semi-flower automata, their zero
completion, the explicit 2k-state automaton for ``A^k \\ {u}``, and the chain
automata with zero over a growing alphabet.
"""

from __future__ import annotations

from functools import lru_cache
from typing import TYPE_CHECKING, Sequence

from .automata import Alphabet, Dfa, Nfa, Word
from .errors import InvalidInputError, PreconditionError
from .words import is_unbordered, shortest_border

if TYPE_CHECKING:
    from .codesets import CodeSet

HUB = 0


def flower_prefixes(X: "CodeSet") -> list[Word]:
    """State labels of ``semi_flower(X)``: the hub (empty prefix) then every
    nonempty proper prefix of a member, in lexicographic order."""
    prefixes = {x[:i] for x in X.words for i in range(1, len(x))}
    return [()] + sorted(prefixes)


@lru_cache(maxsize=256)
def semi_flower(X: "CodeSet") -> Nfa:
    """Trie-shaped NFA recognizing ``X*``.

    State 0 is the hub (initial and only terminal state); state ``i >= 1`` is the
    ``i``-th nonempty proper prefix in lexicographic order.  Reading ``a`` from
    prefix ``p`` leads to the node of ``pa`` when that is a proper prefix, and
    back to the hub when ``pa`` is in X.  Every simple cycle thus runs through
    the hub and spells a member of X.
    """
    labels = flower_prefixes(X)
    node = {p: i for i, p in enumerate(labels)}
    m = len(X.alphabet)
    delta = []
    for p in labels:
        row = []
        for a in range(m):
            pa = p + (a,)
            cell = set()
            if pa in node:
                cell.add(node[pa])
            if pa in X.words:
                cell.add(HUB)
            row.append(frozenset(cell))
        delta.append(tuple(row))
    return Nfa(len(labels), X.alphabet, tuple(delta), initial=HUB, terminals=frozenset({HUB}))


def complete_with_zero(nfa: Nfa) -> Nfa:
    """Append an absorbing zero state and send every empty transition to it."""
    if nfa.zero is not None:
        raise InvalidInputError("automaton already has a zero state")
    z = nfa.n_states
    m = len(nfa.alphabet)
    delta = [tuple(cell or frozenset({z}) for cell in row) for row in nfa.delta]
    delta.append(tuple(frozenset({z}) for _ in range(m)))
    return Nfa(z + 1, nfa.alphabet, tuple(delta), nfa.initial, nfa.terminals, zero=z)


def fhat(X: "CodeSet") -> Nfa:
    return complete_with_zero(semi_flower(X))


def _check_fhat_word(alphabet: Alphabet, u: Sequence[int]) -> Word:
    u = tuple(u)
    alphabet.check_word(u)
    if len(alphabet) < 2:
        raise PreconditionError("alphabet must have at least two letters")
    if len(u) < 2:
        raise PreconditionError(f"u must have length k >= 2, got {len(u)}")
    if not is_unbordered(u):
        border = alphabet.format(shortest_border(u))
        raise PreconditionError(f"u is bordered: border '{border}'")
    return u


def build_fhat_k_u(alphabet: Alphabet, u: Sequence[int]) -> Dfa:
    """The deterministic 2k-state automaton with zero for ``A^k \\ {u}``.

    States ``1..k`` follow ``u`` (reading the last letter of ``u`` at ``k``
    falls into zero), states ``k+1..2k-1`` form the chain taken after a
    deviation from ``u``, and both lead back to state 1.  State 0 is the zero.
    Initial and only final state is 1.
    """
    u = _check_fhat_word(alphabet, u)
    k = len(u)
    m = len(alphabet)
    n = 2 * k
    delta = [[0] * m for _ in range(n)]
    for i in range(1, k):
        for b in range(m):
            delta[i][b] = i + 1 if b == u[i - 1] else k + i
    for b in range(m):
        delta[k][b] = 0 if b == u[k - 1] else 1
    for i in range(k + 1, 2 * k - 1):
        delta[i] = [i + 1] * m
    delta[2 * k - 1] = [1] * m
    return Dfa(n, alphabet, tuple(map(tuple, delta)), zero=0, initial=1, finals=frozenset({1}))


def chain_alphabet(n: int) -> Alphabet:
    return Alphabet(tuple(f"a{i}" for i in range(1, n)))


def build_chain_zero(n: int) -> Dfa:
    """``n``-state automaton with zero over ``n-1`` letters with reset threshold n(n-1)/2.

    Letter index ``i-1`` is ``a_i``.  ``a_1`` sends 1 to 0, and for
    ``1 <= i <= n-2`` the letter ``a_{i+1}`` swaps states ``i`` and ``i+1``;
    everything else is a self-loop.
    """
    if n < 3:
        raise InvalidInputError(f"chain automaton needs n >= 3, got {n}")
    m = n - 1
    delta = [[q] * m for q in range(n)]
    delta[1][0] = 0
    for i in range(1, n - 1):
        delta[i][i] = i + 1
        delta[i + 1][i] = i
    return Dfa(n, chain_alphabet(n), tuple(map(tuple, delta)), zero=0)
