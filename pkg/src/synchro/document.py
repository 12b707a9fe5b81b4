"""JSON interchange format for automata.

::

    {
      "kind": "dfa" | "nfa",
      "alphabet": ["a", "b"],
      "states": 4,
      "transitions": [[1, 3], ...]      # dfa: state per cell; nfa: list of states per cell
      "initial": 1 | null,
      "finals": [1],
      "zero": 0 | null
    }

Keys are always written in this order.  A declared zero must be absorbing;
documents violating that are rejected on load.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .automata import Alphabet, Dfa, Nfa
from .errors import InvalidInputError, SynchroError

KINDS = ("dfa", "nfa")


@dataclass(frozen=True)
class AutomatonDocument:
    kind: str
    alphabet: tuple[str, ...]
    states: int
    transitions: tuple
    initial: int | None = None
    finals: tuple[int, ...] = ()
    zero: int | None = None

    @classmethod
    def from_automaton(cls, automaton: Dfa | Nfa) -> "AutomatonDocument":
        if isinstance(automaton, Dfa):
            return cls(
                "dfa",
                automaton.alphabet.letters,
                automaton.n_states,
                automaton.delta,
                automaton.initial,
                tuple(sorted(automaton.finals)),
                automaton.zero,
            )
        table = tuple(tuple(tuple(sorted(cell)) for cell in row) for row in automaton.delta)
        return cls(
            "nfa",
            automaton.alphabet.letters,
            automaton.n_states,
            table,
            automaton.initial,
            tuple(sorted(automaton.terminals)),
            automaton.zero,
        )

    def to_automaton(self) -> Dfa | Nfa:
        alphabet = Alphabet(tuple(self.alphabet))
        if self.kind == "dfa":
            return Dfa(self.states, alphabet, self.transitions, self.zero, self.initial, frozenset(self.finals))
        return Nfa(self.states, alphabet, self.transitions, self.initial, frozenset(self.finals), self.zero)

    def to_dict(self) -> dict[str, Any]:
        if self.kind == "dfa":
            table = [list(row) for row in self.transitions]
        else:
            table = [[list(cell) for cell in row] for row in self.transitions]
        return {
            "kind": self.kind,
            "alphabet": list(self.alphabet),
            "states": self.states,
            "transitions": table,
            "initial": self.initial,
            "finals": list(self.finals),
            "zero": self.zero,
        }

    @classmethod
    def from_dict(cls, data: Any) -> "AutomatonDocument":
        if not isinstance(data, dict):
            raise InvalidInputError("automaton document must be a JSON object")
        missing = {"kind", "alphabet", "states", "transitions"} - data.keys()
        if missing:
            raise InvalidInputError(f"automaton document is missing {sorted(missing)}")
        kind = data["kind"]
        if kind not in KINDS:
            raise InvalidInputError(f"kind must be one of {KINDS}, got {kind!r}")
        alphabet, states, table = data["alphabet"], data["states"], data["transitions"]
        if not isinstance(alphabet, list) or not all(isinstance(s, str) for s in alphabet):
            raise InvalidInputError("alphabet must be a list of strings")
        if not isinstance(states, int) or isinstance(states, bool):
            raise InvalidInputError("states must be an integer")
        if not isinstance(table, list) or len(table) != states:
            raise InvalidInputError(f"transitions must have {states} rows")
        for row in table:
            if not isinstance(row, list) or len(row) != len(alphabet):
                raise InvalidInputError(f"every transition row must have {len(alphabet)} cells")
        if kind == "dfa":
            transitions = tuple(tuple(row) for row in table)
        else:
            if not all(isinstance(cell, list) for row in table for cell in row):
                raise InvalidInputError("nfa cells must be lists of states")
            transitions = tuple(tuple(tuple(cell) for cell in row) for row in table)
        finals = data.get("finals") or []
        return cls(
            kind,
            tuple(alphabet),
            states,
            transitions,
            data.get("initial"),
            tuple(finals),
            data.get("zero"),
        )


def dumps(automaton: Dfa | Nfa) -> str:
    doc = AutomatonDocument.from_automaton(automaton).to_dict()
    # one table row per line keeps the files readable and diffable
    rows = doc.pop("transitions")
    body = ",\n".join("    " + json.dumps(r, ensure_ascii=False) for r in rows)
    tail_keys = ("initial", "finals", "zero")
    lines = ["{"]
    for key in ("kind", "alphabet", "states"):
        lines.append(f"  {json.dumps(key)}: {json.dumps(doc[key], ensure_ascii=False)},")
    lines.append('  "transitions": [')
    if body:
        lines.append(body)
    lines.append("  ],")
    for i, key in enumerate(tail_keys):
        comma = "," if i < len(tail_keys) - 1 else ""
        lines.append(f"  {json.dumps(key)}: {json.dumps(doc[key])}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> Dfa | Nfa:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"not valid JSON: {exc}") from None
    try:
        return AutomatonDocument.from_dict(data).to_automaton()
    except SynchroError:
        raise
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(str(exc)) from None


def load(path: str | Path) -> Dfa | Nfa:
    return loads(Path(path).read_text(encoding="utf-8"))


def dump(automaton: Dfa | Nfa, path: str | Path) -> None:
    Path(path).write_text(dumps(automaton), encoding="utf-8", newline="\n")
