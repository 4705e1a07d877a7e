"""Braid words over the generators s_i, S_i (= s_i^-1), v_i, t_i and g_i.

A word is an immutable pair (degree, letters).  Letters carry 1-based strand
indices: crossings s_i, S_i, v_i, t_i act on positions i and i+1, a bar g_i
sits on position i.

Text form::

    <degree> ';' (ws letter)*        e.g.  "3; v1 s2 g3"

Internally the search code works on tuples of integer letter codes,
``code = 8 * index + kind``; :func:`encode` and :func:`decode` convert.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, NamedTuple

from .errors import (
    DegreeMismatch,
    IndexOutOfRange,
    MalformedHeader,
    NotInvertible,
    UnknownToken,
)

__all__ = [
    "Kind",
    "Generator",
    "BraidWord",
    "parse",
    "format_word",
    "compose",
    "invert",
    "iota",
    "identity",
    "encode",
    "decode",
    "s", "S", "v", "t", "g",
]


class Kind(IntEnum):
    SIGMA_POS = 0
    SIGMA_NEG = 1
    V = 2
    TAU = 3
    GAMMA = 4


_SYMBOL = {Kind.SIGMA_POS: "s", Kind.SIGMA_NEG: "S", Kind.V: "v", Kind.TAU: "t", Kind.GAMMA: "g"}
_KIND_OF = {sym: kind for kind, sym in _SYMBOL.items()}
CROSSINGS = frozenset({Kind.SIGMA_POS, Kind.SIGMA_NEG, Kind.V, Kind.TAU})


class Generator(NamedTuple):
    kind: Kind
    index: int

    @property
    def code(self) -> int:
        return 8 * self.index + int(self.kind)

    @classmethod
    def from_code(cls, code: int) -> "Generator":
        return _DECODE_CACHE.get(code) or cls(Kind(code & 7), code >> 3)

    @property
    def is_crossing(self) -> bool:
        return self.kind in CROSSINGS

    def inverse(self) -> "Generator":
        if self.kind == Kind.TAU:
            raise NotInvertible(f"t{self.index} has no inverse in the monoid")
        if self.kind == Kind.SIGMA_POS:
            return Generator(Kind.SIGMA_NEG, self.index)
        if self.kind == Kind.SIGMA_NEG:
            return Generator(Kind.SIGMA_POS, self.index)
        return self

    def legal_at(self, degree: int) -> bool:
        top = degree if self.kind == Kind.GAMMA else degree - 1
        return 1 <= self.index <= top

    def __str__(self) -> str:
        return f"{_SYMBOL[self.kind]}{self.index}"

    def __repr__(self) -> str:
        return f"Generator({self})"


_DECODE_CACHE: dict[int, Generator] = {}
for _i in range(1, 64):
    for _k in Kind:
        _gen = Generator(_k, _i)
        _DECODE_CACHE[_gen.code] = _gen


def s(i: int) -> Generator:
    return Generator(Kind.SIGMA_POS, i)


def S(i: int) -> Generator:
    return Generator(Kind.SIGMA_NEG, i)


def v(i: int) -> Generator:
    return Generator(Kind.V, i)


def t(i: int) -> Generator:
    return Generator(Kind.TAU, i)


def g(i: int) -> Generator:
    return Generator(Kind.GAMMA, i)


@dataclass(frozen=True, slots=True)
class BraidWord:
    degree: int
    letters: tuple[Generator, ...] = ()

    def __post_init__(self):
        if not isinstance(self.degree, int) or self.degree < 1:
            raise MalformedHeader(f"degree must be a positive integer, got {self.degree!r}")
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        for letter in letters:
            if not letter.legal_at(self.degree):
                raise IndexOutOfRange(f"{letter} is not a legal letter at degree {self.degree}")

    @classmethod
    def from_codes(cls, degree: int, codes: Iterable[int]) -> "BraidWord":
        return cls(degree, decode(codes))

    @property
    def codes(self) -> tuple[int, ...]:
        return encode(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"BraidWord({format_word(self)!r})"


def encode(letters: Iterable[Generator]) -> tuple[int, ...]:
    return tuple(8 * idx + int(kind) for kind, idx in letters)


def decode(codes: Iterable[int]) -> tuple[Generator, ...]:
    cache = _DECODE_CACHE
    return tuple(cache.get(c) or Generator(Kind(c & 7), c >> 3) for c in codes)


_HEADER = re.compile(r"^\s*(\d+)\s*;(.*)$", re.DOTALL)
_TOKEN = re.compile(r"^([sSvtg])(\d+)$")


def parse(text: str) -> BraidWord:
    """Parse ``"<degree>; letters..."`` into a word, validating every index."""
    m = _HEADER.match(text)
    if m is None:
        raise MalformedHeader(f"expected '<degree>;' header in {text!r}")
    degree = int(m.group(1))
    if degree < 1:
        raise MalformedHeader("degree must be at least 1")
    letters = []
    for token in m.group(2).split():
        tm = _TOKEN.match(token)
        if tm is None:
            raise UnknownToken(f"unknown token {token!r}")
        letters.append(Generator(_KIND_OF[tm.group(1)], int(tm.group(2))))
    return BraidWord(degree, tuple(letters))


def format_word(w: BraidWord) -> str:
    if not w.letters:
        return f"{w.degree};"
    return f"{w.degree}; " + " ".join(map(str, w.letters))


def identity(degree: int) -> BraidWord:
    return BraidWord(degree, ())


def compose(a: BraidWord, b: BraidWord) -> BraidWord:
    if a.degree != b.degree:
        raise DegreeMismatch(f"cannot compose degree {a.degree} with degree {b.degree}")
    return BraidWord(a.degree, a.letters + b.letters)


def invert(w: BraidWord) -> BraidWord:
    """Reverse the word and invert each letter; fails on singular letters."""
    for letter in w.letters:
        if letter.kind == Kind.TAU:
            raise NotInvertible(f"{format_word(w)!r} contains the singular letter {letter}")
    return BraidWord(w.degree, tuple(letter.inverse() for letter in reversed(w.letters)))


def iota(w: BraidWord, left: int, right: int) -> BraidWord:
    """Add ``left`` trivial strands on the left and ``right`` on the right."""
    if left < 0 or right < 0:
        raise ValueError("strand counts must be non-negative")
    letters = tuple(Generator(kind, idx + left) for kind, idx in w.letters)
    return BraidWord(w.degree + left + right, letters)
