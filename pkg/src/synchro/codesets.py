"""Completable and incompletable words for finite sets ``X`` of words.

General sets are handled through the semi-flower automaton of ``X``: a word
is completable (a factor of some product of members of ``X``) exactly when it
can be read from some state of that automaton.  For ``X = A^k \\ {u}`` with
``u`` unbordered there is a direct arithmetic criterion on the gaps between
occurrences of ``u``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

from .automata import Alphabet, Word, _image_nfa_mask, _to_mask, nfa_shortest_killing_word
from .constructions import semi_flower
from .errors import InvalidInputError, PreconditionError
from .words import Decomposition, decompose_by, find_occurrences, is_unbordered, shortest_border


@dataclass(frozen=True)
class CodeSet:
    """A finite nonempty set of nonempty words over ``alphabet``."""

    alphabet: Alphabet
    words: frozenset[Word]

    def __post_init__(self):
        words = frozenset(tuple(w) for w in self.words)
        object.__setattr__(self, "words", words)
        if not words:
            raise InvalidInputError("code set must be nonempty")
        for w in words:
            if not w:
                raise InvalidInputError("code set may not contain the empty word")
            self.alphabet.check_word(w)

    @property
    def k_max(self) -> int:
        return max(map(len, self.words))

    def sorted_words(self) -> list[Word]:
        return sorted(self.words, key=lambda w: (len(w), w))

    @classmethod
    def from_strings(cls, alphabet: Alphabet, words: Iterable[str]) -> "CodeSet":
        return cls(alphabet, frozenset(alphabet.parse(s) for s in words))

    @classmethod
    def all_but(cls, alphabet: Alphabet, u: Sequence[int]) -> "CodeSet":
        """``A^k \\ {u}`` with ``k = |u|``."""
        u = tuple(u)
        alphabet.check_word(u)
        if not u:
            raise InvalidInputError("u must be nonempty")
        words = frozenset(itertools.product(range(len(alphabet)), repeat=len(u))) - {u}
        return cls(alphabet, words)


# -- text format -------------------------------------------------------------

_ALL_BUT = re.compile(r"^\s*A\s*\^\s*(\d+)\s+(?:minus|\\)\s+(\S+)\s*$")


def parse_codeset(text: str, alphabet: Alphabet | None = None) -> CodeSet:
    """Parse the one-word-per-line format.

    ``#`` starts a comment, blank lines are skipped, and an optional
    ``alphabet: a b c`` header declares the letters (otherwise they are the
    distinct characters used, in order of first appearance).
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("alphabet:"):
            alphabet = Alphabet.of(line.split(":", 1)[1].split())
            continue
        lines.append(line)
    if alphabet is None:
        seen = dict.fromkeys(c for line in lines for c in line if not c.isspace())
        if not seen:
            raise InvalidInputError("code set text has no words")
        alphabet = Alphabet(tuple(seen))
    return CodeSet.from_strings(alphabet, lines)


def format_codeset(X: CodeSet) -> str:
    out = ["alphabet: " + " ".join(X.alphabet.letters)]
    out += [X.alphabet.format(w) for w in X.sorted_words()]
    return "\n".join(out) + "\n"


def load_codeset(spec: str, alphabet: Alphabet | None = None) -> CodeSet:
    """Read a code set from a file path, ``"A^k minus u"``, or ``"w1,w2,..."``."""
    path = Path(spec)
    if path.is_file():
        return parse_codeset(path.read_text(encoding="utf-8"), alphabet)
    alphabet = alphabet or Alphabet.of("ab")
    match = _ALL_BUT.match(spec)
    if match:
        k, u = int(match.group(1)), alphabet.parse(match.group(2))
        if len(u) != k:
            raise InvalidInputError(f"'{match.group(2)}' does not have length {k}")
        return CodeSet.all_but(alphabet, u)
    if "," in spec or spec.strip():
        return CodeSet.from_strings(alphabet, [s for s in spec.split(",") if s.strip()])
    raise InvalidInputError(f"cannot read a code set from {spec!r}")


# -- completability ----------------------------------------------------------

def is_completable(w: Sequence[int], X: CodeSet) -> bool:
    """``w`` is a factor of some word of ``X*``."""
    X.alphabet.check_word(w)
    flower = semi_flower(X)
    return _image_nfa_mask(flower, _to_mask(flower.states), w) != 0


def is_completable_by_products(w: Sequence[int], X: CodeSet) -> bool:
    """Independent check: enumerate products of members of X and search for ``w``.

    A cover of ``w`` overhangs by at most ``k_max - 1`` letters on each side,
    so products up to ``|w| + 2 k_max`` letters suffice.  Exponential; keep
    ``|w|`` small.
    """
    w = tuple(w)
    X.alphabet.check_word(w)
    return w in _product_factors(X, len(w))


@lru_cache(maxsize=64)
def _product_factors(X: CodeSet, n: int) -> frozenset[Word]:
    """All length-``n`` factors of products of at most ``n + 2 k_max`` letters."""
    limit = n + 2 * X.k_max
    members = sorted(X.words)
    found = set()
    stack = [()]
    seen = {()}
    while stack:
        prod = stack.pop()
        for i in range(len(prod) - n + 1):
            found.add(prod[i : i + n])
        for x in members:
            p = prod + x
            if len(p) <= limit and p not in seen:
                seen.add(p)
                stack.append(p)
    return frozenset(found)


def is_complete_set(X: CodeSet, cap: int | None = None) -> bool:
    """Every word over the alphabet is completable in ``X*``."""
    return shortest_incompletable_word(X, cap) is None


def shortest_incompletable_word(X: CodeSet, cap: int | None = None) -> Word | None:
    """Least (in letter-index order) among the shortest incompletable words; None if X is complete."""
    return nfa_shortest_killing_word(semi_flower(X), cap)


# -- the A^k \ {u} case --------------------------------------------------------

def restivo_word(u: Sequence[int], pad: int, k: int) -> Word:
    """``(u pad)^(k-1) u``, of length ``k^2 + k - 1``."""
    u = tuple(u)
    if len(u) != k or k < 1:
        raise InvalidInputError(f"|u| = {len(u)} must equal k = {k} >= 1")
    return (u + (pad,)) * (k - 1) + u


def check_restivo_precondition(u: Sequence[int], X: CodeSet) -> bool:
    """True iff ``|u| = k_max`` and no member of X occurs in ``u``."""
    u = tuple(u)
    if len(u) != X.k_max:
        raise InvalidInputError(f"|u| = {len(u)} but the longest member of X has length {X.k_max}")
    return not any(find_occurrences(x, u) for x in X.words)


def is_k_representative(S: Iterable[int], k: int) -> bool:
    """Residues of ``S`` mod ``k`` include every nonzero residue."""
    if k < 1:
        raise InvalidInputError(f"modulus must be >= 1, got {k}")
    residues = {s % k for s in S}
    return all(r in residues for r in range(1, k))


@dataclass(frozen=True)
class ForbiddenSets:
    """``sets[j-1]`` holds the forbidden positions of the ``j``-th occurrence of u.

    Position ``i`` is forbidden when the suffix of the word starting at offset
    ``i`` inside that occurrence cannot be extended to a word of ``X*``.
    """

    sets: tuple[frozenset[int], ...]
    k: int

    def __getitem__(self, j: int) -> frozenset[int]:
        """1-based access: ``S[1]`` is the first occurrence."""
        if not 1 <= j <= len(self.sets):
            raise IndexError(j)
        return self.sets[j - 1]

    @property
    def first(self) -> frozenset[int]:
        return self.sets[0]

    def all_forbidden(self) -> bool:
        return self.sets[0] == frozenset(range(self.k))


def _check_xku(u: Sequence[int], k: int, parts: Decomposition) -> list[int]:
    u = tuple(u)
    if len(u) != k:
        raise PreconditionError(f"|u| = {len(u)} must equal k = {k}")
    if k < 2:
        raise PreconditionError("k must be at least 2")
    if not is_unbordered(u):
        raise PreconditionError(f"u is bordered: border {shortest_border(u)!r}")
    if parts.u != u:
        raise PreconditionError("decomposition was made for a different u")
    if parts.occurrences < 2:
        raise PreconditionError(f"need at least two occurrences of u, got {parts.occurrences}")
    return parts.inner_lengths()


def forbidden_sets_recurrence(u: Sequence[int], k: int, parts: Decomposition) -> ForbiddenSets:
    """Backward recurrence from the last occurrence: ``S_{m+1} = {0}`` and
    ``S_{j-1} = {0} ∪ {(|v_{j-1}| + l) mod k : l ∈ S_j}``."""
    gaps = _check_xku(u, k, parts)
    current = frozenset({0})
    out = [current]
    for gap in reversed(gaps):
        current = frozenset({0}) | {(gap + s) % k for s in current}
        out.append(current)
    return ForbiddenSets(tuple(reversed(out)), k)


def forbidden_sets_closed_form(u: Sequence[int], k: int, parts: Decomposition) -> ForbiddenSets:
    """``S_j = {0} ∪ {(|v_j| + ... + |v_{j+t}|) mod k : 0 <= t <= m - j}``."""
    gaps = _check_xku(u, k, parts)
    m = len(gaps)
    sets = []
    for j in range(1, m + 2):
        partial = itertools.accumulate(gaps[j - 1 :])
        sets.append(frozenset({0}) | {s % k for s in partial})
    return ForbiddenSets(tuple(sets), k)


def gap_partial_sums(parts: Decomposition) -> list[int]:
    """``|v_1|, |v_1|+|v_2|, ..., |v_1|+...+|v_m|``."""
    return list(itertools.accumulate(parts.inner_lengths()))


def is_incompletable_xku(w: Sequence[int], u: Sequence[int], alphabet: Alphabet | None = None) -> bool:
    """Criterion for ``X = A^k \\ {u}``, ``u`` unbordered, ``k = |u| >= 2``.

    ``w`` is incompletable iff ``u`` occurs at least twice and the partial
    sums of the gap lengths between consecutive occurrences cover every
    nonzero residue mod ``k``.
    """
    u, w = tuple(u), tuple(w)
    if alphabet is not None:
        if len(alphabet) < 2:
            raise PreconditionError("alphabet must have at least two letters")
        alphabet.check_word(u)
        alphabet.check_word(w)
    k = len(u)
    if k < 2:
        raise PreconditionError("k = |u| must be at least 2")
    parts = decompose_by(w, u)  # rejects bordered u
    if parts.occurrences < 2:
        return False
    return is_k_representative(gap_partial_sums(parts), k)
