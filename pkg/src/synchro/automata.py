"""Deterministic and nondeterministic automata and the synchronization procedures.

States are integers ``0 .. n_states-1`` and letters are indices into an
:class:`Alphabet`.  Words are tuples of letter indices.  Public functions take
and return state sets as ``frozenset``; the exponential searches work on
integer bitmasks internally.
"""

from __future__ import annotations

import logging
import os
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .errors import (
    InvalidInputError,
    PreconditionError,
    ResourceLimitError,
    UnsupportedInputError,
)

log = logging.getLogger(__name__)

Word = tuple[int, ...]
StateSet = frozenset[int]

DEFAULT_STATE_CAP = 24
STATE_CAP_ENV = "SYNCHRO_STATE_CAP"


def state_cap(cap: int | None = None) -> int:
    """Resolve the subset-search cap: explicit value, then env var, then default."""
    if cap is not None:
        return cap
    raw = os.environ.get(STATE_CAP_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise InvalidInputError(f"{STATE_CAP_ENV} must be an integer, got {raw!r}") from None
    return DEFAULT_STATE_CAP


def _check_cap(n_states: int, cap: int | None) -> None:
    limit = state_cap(cap)
    if n_states > limit:
        raise ResourceLimitError(
            f"state cap exceeded: {n_states} states > cap {limit} "
            f"(raise it with cap= or {STATE_CAP_ENV})"
        )


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of letter display names; letter ``i`` is ``letters[i]``."""

    letters: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if not self.letters:
            raise InvalidInputError("alphabet must contain at least one letter")
        if len(set(self.letters)) != len(self.letters):
            raise InvalidInputError(f"duplicate letters in alphabet {self.letters!r}")
        for s in self.letters:
            if not s or any(c.isspace() for c in s):
                raise InvalidInputError(f"invalid letter symbol {s!r}")

    @classmethod
    def of(cls, spec: str | Iterable[str]) -> "Alphabet":
        """``Alphabet.of("ab")`` or ``Alphabet.of(["a1", "a2"])``."""
        if isinstance(spec, str):
            spec = spec.split() if any(c.isspace() for c in spec) else list(spec)
        return cls(tuple(spec))

    @classmethod
    def standard(cls, size: int) -> "Alphabet":
        if not 1 <= size <= 26:
            raise InvalidInputError(f"standard alphabet size must be in 1..26, got {size}")
        return cls(tuple("abcdefghijklmnopqrstuvwxyz"[:size]))

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def size(self) -> int:
        return len(self.letters)

    def index(self, symbol: str) -> int:
        try:
            return self.letters.index(symbol)
        except ValueError:
            raise InvalidInputError(f"symbol {symbol!r} not in alphabet {self.letters!r}") from None

    @property
    def _single_char(self) -> bool:
        return all(len(s) == 1 for s in self.letters)

    def parse(self, text: str) -> Word:
        """Parse a word written with display symbols.

        Single-character alphabets read the string character by character
        (whitespace ignored); otherwise symbols are whitespace separated.
        The empty string and ``"λ"`` denote the empty word.
        """
        text = text.strip()
        if text in ("", "λ") and "λ" not in self.letters:
            return ()
        if self._single_char:
            return tuple(self.index(c) for c in text if not c.isspace())
        return tuple(self.index(tok) for tok in text.split())

    def format(self, word: Sequence[int]) -> str:
        self.check_word(word)
        if not word:
            return "λ"
        sep = "" if self._single_char else " "
        return sep.join(self.letters[a] for a in word)

    def check_word(self, word: Sequence[int]) -> None:
        m = len(self.letters)
        for a in word:
            if not isinstance(a, int) or not 0 <= a < m:
                raise InvalidInputError(f"letter index {a!r} out of range for alphabet of size {m}")


@dataclass(frozen=True)
class Dfa:
    """Total deterministic automaton ``delta[q][a]``, optionally with a zero state.

    ``initial`` and ``finals`` are carried for recognizers such as the 2k-state
    construction; synchronization ignores them.
    """

    n_states: int
    alphabet: Alphabet
    delta: tuple[tuple[int, ...], ...]
    zero: int | None = None
    initial: int | None = None
    finals: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        delta = tuple(tuple(row) for row in self.delta)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "finals", frozenset(self.finals))
        n, m = self.n_states, len(self.alphabet)
        if n < 1:
            raise InvalidInputError("automaton needs at least one state")
        if len(delta) != n or any(len(row) != m for row in delta):
            raise InvalidInputError(f"transition table must be {n} x {m}")
        for q, row in enumerate(delta):
            for a, t in enumerate(row):
                if not isinstance(t, int) or not 0 <= t < n:
                    raise InvalidInputError(f"delta[{q}][{a}] = {t!r} is not a state")
        for s in (self.zero, self.initial):
            if s is not None and not 0 <= s < n:
                raise InvalidInputError(f"state {s} out of range")
        if any(not 0 <= f < n for f in self.finals):
            raise InvalidInputError("final state out of range")
        if self.zero is not None and any(t != self.zero for t in delta[self.zero]):
            raise InvalidInputError(f"declared zero {self.zero} is not fixed by every letter")

    @property
    def states(self) -> StateSet:
        return frozenset(range(self.n_states))

    def check_state(self, q: int) -> None:
        if not isinstance(q, int) or not 0 <= q < self.n_states:
            raise InvalidInputError(f"state {q!r} out of range 0..{self.n_states - 1}")

    @cached_property
    def _columns(self) -> tuple[tuple[int, ...], ...]:
        # _columns[a][q] == delta[q][a]
        return tuple(zip(*self.delta))

    def restricted(self, letters: Iterable[int]) -> "Dfa":
        """Sub-automaton over the given letters (in the given order)."""
        keep = list(letters)
        self.alphabet.check_word(keep)
        if not keep:
            raise UnsupportedInputError("cannot restrict to an empty alphabet")
        sub = Alphabet(tuple(self.alphabet.letters[a] for a in keep))
        delta = tuple(tuple(row[a] for a in keep) for row in self.delta)
        return Dfa(self.n_states, sub, delta, self.zero, self.initial, self.finals)


@dataclass(frozen=True)
class Nfa:
    """Nondeterministic automaton; ``delta[q][a]`` is a possibly empty set of states."""

    n_states: int
    alphabet: Alphabet
    delta: tuple[tuple[frozenset[int], ...], ...]
    initial: int | None = None
    terminals: frozenset[int] = field(default_factory=frozenset)
    zero: int | None = None

    def __post_init__(self):
        delta = tuple(tuple(frozenset(cell) for cell in row) for row in self.delta)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        n, m = self.n_states, len(self.alphabet)
        if n < 1:
            raise InvalidInputError("automaton needs at least one state")
        if len(delta) != n or any(len(row) != m for row in delta):
            raise InvalidInputError(f"transition table must be {n} x {m}")
        for q, row in enumerate(delta):
            for a, cell in enumerate(row):
                if any(not isinstance(t, int) or not 0 <= t < n for t in cell):
                    raise InvalidInputError(f"delta[{q}][{a}] = {sorted(cell)} has a bad state")
        for s in (self.zero, self.initial):
            if s is not None and not 0 <= s < n:
                raise InvalidInputError(f"state {s} out of range")
        if any(not 0 <= f < n for f in self.terminals):
            raise InvalidInputError("terminal state out of range")
        if self.zero is not None and any(cell != {self.zero} for cell in delta[self.zero]):
            raise InvalidInputError(f"declared zero {self.zero} is not absorbing")

    @property
    def states(self) -> StateSet:
        return frozenset(range(self.n_states))

    @cached_property
    def _masks(self) -> tuple[tuple[int, ...], ...]:
        # _masks[a][q]: bitmask of delta[q][a]
        return tuple(
            tuple(_to_mask(self.delta[q][a]) for q in range(self.n_states))
            for a in range(len(self.alphabet))
        )

    def accepts(self, w: Sequence[int]) -> bool:
        if self.initial is None:
            raise UnsupportedInputError("automaton has no initial state")
        return bool(image_nfa(self, {self.initial}, w) & self.terminals)


# -- bitmask helpers ---------------------------------------------------------

def _to_mask(states: Iterable[int]) -> int:
    mask = 0
    for q in states:
        mask |= 1 << q
    return mask


def _from_mask(mask: int) -> StateSet:
    out = []
    q = 0
    while mask:
        if mask & 1:
            out.append(q)
        mask >>= 1
        q += 1
    return frozenset(out)


def _step_mask(images: Sequence[int], mask: int) -> int:
    out = 0
    while mask:
        low = mask & -mask
        out |= images[low.bit_length() - 1]
        mask ^= low
    return out


def _dfa_images(dfa: Dfa) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(1 << t for t in col) for col in dfa._columns)


def _shortest_word(
    start: int,
    images: Sequence[Sequence[int]],
    is_target: Callable[[int], bool],
) -> Word | None:
    """BFS over subsets from ``start``; lexicographically least shortest word to a target.

    Letters are expanded in index order and each subset keeps its first
    discovery, so the first target generated carries the least word.
    """
    if is_target(start):
        return ()
    parent: dict[int, tuple[int, int]] = {start: (-1, -1)}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for a, img in enumerate(images):
            nxt = _step_mask(img, cur)
            if nxt in parent:
                continue
            parent[nxt] = (cur, a)
            if is_target(nxt):
                word = []
                node = nxt
                while node != start:
                    node, letter = parent[node]
                    word.append(letter)
                return tuple(reversed(word))
            queue.append(nxt)
    return None


# -- deterministic automata --------------------------------------------------

def apply_dfa(dfa: Dfa, q: int, w: Sequence[int]) -> int:
    """Image of state ``q`` under word ``w``."""
    dfa.check_state(q)
    dfa.alphabet.check_word(w)
    delta = dfa.delta
    for a in w:
        q = delta[q][a]
    return q


def image_dfa(dfa: Dfa, states: Iterable[int], w: Sequence[int]) -> StateSet:
    states = frozenset(states)
    for q in states:
        dfa.check_state(q)
    dfa.alphabet.check_word(w)
    delta = dfa.delta
    for a in w:
        states = frozenset(delta[q][a] for q in states)
    return states


def is_reset_word_dfa(dfa: Dfa, w: Sequence[int]) -> bool:
    return len(image_dfa(dfa, dfa.states, w)) == 1


def shortest_reset_word_dfa(dfa: Dfa, cap: int | None = None) -> Word | None:
    """Shortest reset word (least in letter-index order among shortest), or None.

    Raises ResourceLimitError when ``n_states`` exceeds the cap; that is
    distinct from returning None for a non-synchronizing automaton.
    """
    _check_cap(dfa.n_states, cap)
    full = (1 << dfa.n_states) - 1
    return _shortest_word(full, _dfa_images(dfa), lambda s: s & (s - 1) == 0)


def is_synchronizing_dfa(dfa: Dfa) -> bool:
    """Polynomial test: every pair of states can be merged by some word."""
    n = dfa.n_states
    if n == 1:
        return True
    delta = dfa.delta
    m = len(dfa.alphabet)
    # inverse transitions per letter
    preimage = [[[] for _ in range(n)] for _ in range(m)]
    for q in range(n):
        for a in range(m):
            preimage[a][delta[q][a]].append(q)

    mergeable = [[False] * n for _ in range(n)]
    queue = deque()
    for q in range(n):
        mergeable[q][q] = True
        queue.append((q, q))
    while queue:
        p, q = queue.popleft()
        for a in range(m):
            for p0 in preimage[a][p]:
                for q0 in preimage[a][q]:
                    if not mergeable[p0][q0]:
                        mergeable[p0][q0] = mergeable[q0][p0] = True
                        queue.append((p0, q0))
    return all(all(row) for row in mergeable)


def zero_candidates(dfa: Dfa) -> list[int]:
    """All states fixed by every letter."""
    return [q for q, row in enumerate(dfa.delta) if all(t == q for t in row)]


def find_zero_state(dfa: Dfa) -> int | None:
    """The unique state fixed by every letter, or None.

    Two or more such states make the automaton unsynchronizable; that case
    returns None and logs a warning (see :func:`zero_candidates`).
    """
    found = zero_candidates(dfa)
    if len(found) == 1:
        return found[0]
    if len(found) > 1:
        log.warning("%d states are fixed by every letter: %s", len(found), found)
    return None


def letter_essentiality(dfa: Dfa) -> dict[int, bool]:
    """For each letter, whether dropping it leaves a non-synchronizing automaton."""
    out = {}
    m = len(dfa.alphabet)
    for a in range(m):
        rest = [b for b in range(m) if b != a]
        if rest:
            out[a] = not is_synchronizing_dfa(dfa.restricted(rest))
        else:
            # only the empty word remains available
            out[a] = dfa.n_states > 1
    return out


def is_proper(dfa: Dfa) -> bool:
    """Every letter occurs in every reset word."""
    if not is_synchronizing_dfa(dfa):
        raise PreconditionError("is_proper requires a synchronizing automaton")
    return all(letter_essentiality(dfa).values())


# -- nondeterministic automata -----------------------------------------------

def image_nfa(nfa: Nfa, states: Iterable[int], w: Sequence[int]) -> StateSet:
    """All states reachable from ``states`` along ``w``; possibly empty."""
    states = frozenset(states)
    if any(not isinstance(q, int) or not 0 <= q < nfa.n_states for q in states):
        raise InvalidInputError(f"state set {sorted(states)} out of range")
    nfa.alphabet.check_word(w)
    return _from_mask(_image_nfa_mask(nfa, _to_mask(states), w))


def _image_nfa_mask(nfa: Nfa, mask: int, w: Sequence[int]) -> int:
    masks = nfa._masks
    for a in w:
        if not mask:
            break
        mask = _step_mask(masks[a], mask)
    return mask


def is_strong_sync_word_nfa(nfa: Nfa, w: Sequence[int]) -> bool:
    """Every run of ``w`` from every state ends in the zero state.

    Only automata with an absorbing zero are supported: the zero is fixed by
    every word, so it is the only possible target.
    """
    if nfa.zero is None:
        raise UnsupportedInputError("strong synchronization is only supported for automata with a zero state")
    nfa.alphabet.check_word(w)
    target = 1 << nfa.zero
    return all(_image_nfa_mask(nfa, 1 << q, w) == target for q in range(nfa.n_states))


def shortest_strong_sync_word_nfa(nfa: Nfa, cap: int | None = None) -> Word | None:
    """Shortest strongly synchronizing word of an automaton with zero, or None.

    Requires every transition cell to be nonempty, so that no single state can
    have an empty image and the union of images equals ``{zero}`` exactly when
    every state's image does.
    """
    if nfa.zero is None:
        raise UnsupportedInputError("strong synchronization is only supported for automata with a zero state")
    if any(not cell for row in nfa.delta for cell in row):
        raise UnsupportedInputError("automaton has undefined transitions; complete it with a zero first")
    _check_cap(nfa.n_states, cap)
    full = (1 << nfa.n_states) - 1
    target = 1 << nfa.zero
    return _shortest_word(full, nfa._masks, lambda s: s == target)


def nfa_shortest_killing_word(nfa: Nfa, cap: int | None = None) -> Word | None:
    """Shortest word (least in index order) whose image of all states is empty."""
    _check_cap(nfa.n_states, cap)
    full = (1 << nfa.n_states) - 1
    return _shortest_word(full, nfa._masks, lambda s: s == 0)


# -- export ------------------------------------------------------------------

def _dot_id(q: int) -> str:
    return f"q{q}"


def to_dot(automaton: Dfa | Nfa, name: str = "automaton") -> str:
    """Graphviz DOT text; edges between the same pair of states share one label."""
    letters = automaton.alphabet.letters
    if isinstance(automaton, Dfa):
        initial, finals = automaton.initial, automaton.finals
        cells = lambda q, a: (automaton.delta[q][a],)  # noqa: E731
    else:
        initial, finals = automaton.initial, automaton.terminals
        cells = lambda q, a: sorted(automaton.delta[q][a])  # noqa: E731

    lines = [f'digraph "{name}" {{', "  rankdir=LR;"]
    if initial is not None:
        lines.append('  __start [shape=point, label=""];')
    for q in range(automaton.n_states):
        attrs = [f'label="{q}"']
        if q == automaton.zero:
            attrs += ["shape=doubleoctagon", "style=filled", "fillcolor=lightgray"]
        elif q in finals:
            attrs.append("shape=doublecircle")
        else:
            attrs.append("shape=circle")
        lines.append(f"  {_dot_id(q)} [{', '.join(attrs)}];")
    if initial is not None:
        lines.append(f"  __start -> {_dot_id(initial)};")
    for q in range(automaton.n_states):
        grouped: dict[int, list[str]] = {}
        for a in range(len(letters)):
            for t in cells(q, a):
                grouped.setdefault(t, []).append(letters[a])
        for t, labels in grouped.items():
            lines.append(f'  {_dot_id(q)} -> {_dot_id(t)} [label="{",".join(labels)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
