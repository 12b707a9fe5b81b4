"""Synchronizing automata with zero and incomplete sets of words."""

from .automata import (
    Alphabet,
    Dfa,
    Nfa,
    apply_dfa,
    find_zero_state,
    image_dfa,
    image_nfa,
    is_proper,
    is_reset_word_dfa,
    is_strong_sync_word_nfa,
    is_synchronizing_dfa,
    shortest_reset_word_dfa,
    to_dot,
)
from .codesets import (
    CodeSet,
    is_complete_set,
    is_completable,
    is_incompletable_xku,
    restivo_word,
    shortest_incompletable_word,
)
from .constructions import build_chain_zero, build_fhat_k_u, complete_with_zero, fhat, semi_flower
from .errors import (
    InvalidInputError,
    PreconditionError,
    ResourceLimitError,
    SynchroError,
    UnsupportedInputError,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet", "Dfa", "Nfa", "CodeSet",
    "apply_dfa", "image_dfa", "image_nfa", "is_reset_word_dfa", "shortest_reset_word_dfa",
    "is_synchronizing_dfa", "find_zero_state", "is_strong_sync_word_nfa", "is_proper", "to_dot",
    "is_completable", "is_complete_set", "shortest_incompletable_word", "restivo_word",
    "is_incompletable_xku",
    "semi_flower", "complete_with_zero", "fhat", "build_fhat_k_u", "build_chain_zero",
    "SynchroError", "InvalidInputError", "PreconditionError", "UnsupportedInputError",
    "ResourceLimitError",
]
