"""Exact computation in the singular twisted virtual braid monoid STVB_n.

Submodules:

* :mod:`stvb.word`      words, parsing, composition, inversion, strand shifts
* :mod:`stvb.homs`      signed permutations and other class invariants
* :mod:`stvb.rewrite`   relations as rewrite rules, bounded search, derivations
* :mod:`stvb.reduced`   reduced generators, the index flip and b*
* :mod:`stvb.markov`    Markov-type moves and closure-equivalence search
* :mod:`stvb.closure`   closures, Morse diagrams and braiding
* :mod:`stvb.cli`       the ``stvb`` command
"""

from .closure import (
    ClosureCode,
    ClosureInvariants,
    MorseWord,
    braid_morse,
    close,
    closure_invariants,
    morse_encode,
    morse_invariants,
    parse_morse,
)
from .errors import StvbError
from .homs import InvariantRecord, SignedPermutation, invariants, signed_permutation, underlying_permutation
from .markov import MarkovMove, apply_move, derive_left_from_right, markov_equivalent, markov_neighbors
from .reduced import conjugate_by_star, expand_generator, flip, reduce_word, star_element
from .relations import RelationId, instantiate
from .rewrite import (
    EquivalenceVerdict,
    RewriteStep,
    apply,
    check_derivation,
    equivalent,
    neighbors,
    verify_presentation,
)
from .word import BraidWord, Generator, Kind, compose, format_word, identity, invert, iota, parse

__version__ = "0.1.0"

__all__ = [
    "BraidWord",
    "Generator",
    "Kind",
    "parse",
    "format_word",
    "compose",
    "invert",
    "iota",
    "identity",
    "SignedPermutation",
    "InvariantRecord",
    "underlying_permutation",
    "signed_permutation",
    "invariants",
    "RelationId",
    "instantiate",
    "RewriteStep",
    "EquivalenceVerdict",
    "apply",
    "neighbors",
    "equivalent",
    "check_derivation",
    "verify_presentation",
    "expand_generator",
    "reduce_word",
    "star_element",
    "flip",
    "conjugate_by_star",
    "MarkovMove",
    "apply_move",
    "markov_neighbors",
    "markov_equivalent",
    "derive_left_from_right",
    "ClosureCode",
    "ClosureInvariants",
    "MorseWord",
    "close",
    "closure_invariants",
    "parse_morse",
    "morse_invariants",
    "braid_morse",
    "morse_encode",
    "StvbError",
]
