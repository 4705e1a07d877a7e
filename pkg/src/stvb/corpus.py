"""Seeded random words and diagrams for sweeps, tests and benchmarks."""

from __future__ import annotations

import random
from importlib import resources
from pathlib import Path

from .closure import MorseEvent, MorseWord
from .word import BraidWord, Generator, Kind

__all__ = ["random_word", "random_words", "random_morse", "data_dir", "derivation_files", "morse_files"]


def random_word(rng: random.Random, degree: int, length: int, kinds=tuple(Kind)) -> BraidWord:
    letters = []
    kinds = tuple(kinds) if degree > 1 else (Kind.GAMMA,)
    for _ in range(length):
        kind = rng.choice(kinds)
        top = degree if kind == Kind.GAMMA else degree - 1
        letters.append(Generator(kind, rng.randint(1, top)))
    return BraidWord(degree, tuple(letters))


def random_words(seed: int, count: int, max_degree: int = 5, max_length: int = 12) -> list[BraidWord]:
    rng = random.Random(seed)
    return [random_word(rng, rng.randint(1, max_degree), rng.randint(0, max_length)) for _ in range(count)]


def random_morse(rng: random.Random, max_width: int = 6, steps: int = 12) -> MorseWord:
    """A random valid Morse word: a walk that opens, crosses and closes arcs."""
    events: list[MorseEvent] = []
    width = 0
    for _ in range(steps):
        options = ["cup"] if width + 2 <= max_width else []
        if width >= 1:
            options.append("bar")
        if width >= 2:
            options += ["cap", "pos", "neg", "virt", "sing", "pos", "neg"]
        if not options:
            break
        kind = rng.choice(options)
        if kind == "cup":
            events.append(MorseEvent("cup", rng.randint(1, width + 1)))
            width += 2
        elif kind == "bar":
            events.append(MorseEvent("bar", rng.randint(1, width)))
        else:
            events.append(MorseEvent(kind, rng.randint(1, width - 1)))
            if kind == "cap":
                width -= 2
    if width == 0 and not events:
        events.append(MorseEvent("cup", 1))
        width = 2
    while width:
        events.append(MorseEvent("cap", rng.randint(1, width - 1)))
        width -= 2
    return MorseWord(tuple(events))


def data_dir() -> Path:
    return Path(str(resources.files("stvb") / "data"))


def derivation_files() -> list[Path]:
    return sorted((data_dir() / "derivations").glob("*.drv"))


def morse_files() -> list[Path]:
    return sorted((data_dir() / "morse").glob("*.morse"))
