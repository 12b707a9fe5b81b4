"""Combinatorics on words: factors, borders, occurrences and decompositions.

Positions are 0-based and ranges half-open, like Python slices.
:func:`factor_inclusive` gives the 1-based inclusive ``u[i..j]`` reading used
in hand calculations, where ``u[1..0]`` is the empty word.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .automata import Alphabet, Word
from .errors import InvalidInputError, PreconditionError, SynchroError


def factor(w: Sequence[int], start: int, stop: int) -> Word:
    """``w[start:stop]`` with bounds checking; ``start == stop`` gives the empty word."""
    if not 0 <= start <= stop <= len(w):
        raise InvalidInputError(f"factor bounds [{start}, {stop}) invalid for length {len(w)}")
    return tuple(w[start:stop])


def factor_inclusive(w: Sequence[int], i: int, j: int) -> Word:
    """Letters ``i..j`` of ``w``, 1-based and inclusive; empty when ``i > j``.

    For ``i > j`` the indices may sit one step outside the word
    (``factor_inclusive(w, 1, 0)`` and ``factor_inclusive(w, n + 1, n)``).
    """
    n = len(w)
    if i > j:
        if 0 <= j and i <= n + 1:
            return ()
    elif 1 <= i and j <= n:
        return tuple(w[i - 1 : j])
    raise InvalidInputError(f"factor indices ({i}, {j}) invalid for length {n}")


def is_unbordered(u: Sequence[int]) -> bool:
    """True iff no proper nonempty prefix of ``u`` is also a suffix."""
    if not u:
        raise InvalidInputError("is_unbordered needs a nonempty word")
    u = tuple(u)
    return all(u[:p] != u[-p:] for p in range(1, len(u)))


def shortest_border(u: Sequence[int]) -> Word | None:
    u = tuple(u)
    for p in range(1, len(u)):
        if u[:p] == u[-p:]:
            return u[:p]
    return None


def find_occurrences(u: Sequence[int], w: Sequence[int]) -> list[int]:
    """Start positions (0-based, ascending) of every occurrence of ``u`` in ``w``.

    Plain O(|w|·|u|) scan; a KMP failure table would drop in here if inputs grow.
    """
    if not u:
        raise InvalidInputError("cannot search for the empty word")
    u, w = tuple(u), tuple(w)
    k = len(u)
    return [i for i in range(len(w) - k + 1) if w[i : i + k] == u]


@dataclass(frozen=True)
class Decomposition:
    """``w = v_0 u v_1 u ... u v_{m+1}`` at every occurrence of an unbordered ``u``."""

    u: Word
    parts: tuple[Word, ...]

    @property
    def occurrences(self) -> int:
        return len(self.parts) - 1

    @property
    def m(self) -> int:
        """Occurrence count minus one (``-1`` when ``u`` does not occur)."""
        return len(self.parts) - 2

    def reassemble(self) -> Word:
        out = list(self.parts[0])
        for part in self.parts[1:]:
            out += self.u
            out += part
        return tuple(out)

    def inner_lengths(self) -> list[int]:
        """``|v_1|, ..., |v_m|``: the gaps between consecutive occurrences."""
        return [len(v) for v in self.parts[1:-1]]


def decompose_by(w: Sequence[int], u: Sequence[int]) -> Decomposition:
    u, w = tuple(u), tuple(w)
    if not is_unbordered(u):
        raise PreconditionError(f"u is bordered: border {shortest_border(u)!r}")
    parts = []
    prev = 0
    for pos in find_occurrences(u, w):
        parts.append(w[prev:pos])
        prev = pos + len(u)
    parts.append(w[prev:])
    return Decomposition(u, tuple(parts))


def canonical_unbordered_with_all_letters(alphabet: Alphabet, k: int) -> Word:
    """``a_0^(k-m+1) a_1 ... a_(m-1)``: unbordered, length ``k``, every letter present."""
    m = len(alphabet)
    if k < m:
        raise InvalidInputError(f"need k >= alphabet size ({m}), got k = {k}")
    if m == 1 and k > 1:
        raise InvalidInputError("a unary alphabet has no unbordered word longer than one letter")
    u = (0,) * (k - m + 1) + tuple(range(1, m))
    if not is_unbordered(u):
        raise SynchroError(f"internal error: {u} is bordered")
    return u
