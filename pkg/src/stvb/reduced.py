"""Reduced generating set and the index-flip apparatus.

Every generator can be written in terms of s_1^{+-1}, t_1, g_1 and the virtual
letters:

    s_i = (v_{i-1}..v_1)(v_i..v_2) s_1 (v_2..v_i)(v_1..v_{i-1})
    t_i = same with t_1 in the middle
    g_i = (v_{i-1}..v_1) g_1 (v_1..v_{i-1})

``flip`` is the letterwise index reversal f_n, and ``conjugate_by_star``
conjugates by the word b* that realises it inside the monoid.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import IllegalGenerator, StvbError
from .relations import RelationId, _asc, _desc, _reduction
from .rewrite import LR, RL, RewriteStep, equivalent
from .word import BraidWord, Generator, Kind, compose, g, invert, v

__all__ = [
    "is_reduced",
    "expand_generator",
    "reduce_word",
    "star_element",
    "flip",
    "flip_generator",
    "conjugate_by_star",
    "star_rewrite_steps",
    "flipped_relation_derivation",
]


def is_reduced(w: BraidWord) -> bool:
    """True when only s_1, S_1, t_1, g_1 and virtual letters occur."""
    return all(x.kind == Kind.V or x.index == 1 for x in w.letters)


def _expand_letters(x: Generator) -> tuple[Generator, ...]:
    if x.kind == Kind.V or x.index == 1:
        return (x,)
    if x.kind == Kind.GAMMA:
        return _desc(x.index - 1, 1) + (g(1),) + _asc(1, x.index - 1)
    core = Generator(Kind.SIGMA_POS if x.kind == Kind.SIGMA_NEG else x.kind, 1)
    out = _reduction(x.index, core)
    if x.kind == Kind.SIGMA_NEG:
        out = tuple(y.inverse() for y in reversed(out))
    return out


def expand_generator(x: Generator, n: int) -> BraidWord:
    if not isinstance(x, Generator) or not x.legal_at(n):
        raise IllegalGenerator(f"{x} is not a generator of degree {n}")
    return BraidWord(n, _expand_letters(x))


def reduce_word(w: BraidWord) -> BraidWord:
    letters: list[Generator] = []
    for x in w.letters:
        letters.extend(_expand_letters(x))
    return BraidWord(w.degree, tuple(letters))


def star_element(n: int) -> BraidWord:
    """b* = (v_1)(v_2 v_1)...(v_{n-1}..v_1) g_1 g_2 ... g_n."""
    if n < 1:
        raise ValueError("degree must be positive")
    letters: list[Generator] = []
    for i in range(1, n):
        letters.extend(v(k) for k in range(i, 0, -1))
    letters.extend(g(k) for k in range(1, n + 1))
    return BraidWord(n, tuple(letters))


def flip_generator(x: Generator, n: int) -> Generator:
    if x.kind == Kind.GAMMA:
        return Generator(x.kind, n + 1 - x.index)
    return Generator(x.kind, n - x.index)


def flip(w: BraidWord) -> BraidWord:
    n = w.degree
    return BraidWord(n, tuple(flip_generator(x, n) for x in w.letters))


def conjugate_by_star(w: BraidWord) -> BraidWord:
    star = star_element(w.degree)
    return compose(star, compose(w, invert(star)))


# -- b* conjugation as explicit rewriting -------------------------------------

def _cancel_rule(x: Generator) -> RelationId:
    return RelationId("Std3" if x.kind == Kind.V else "Std8", (x.index,))


@lru_cache(maxsize=None)
def _generator_steps(x: Generator, n: int) -> tuple[RewriteStep, ...]:
    """Rewrites taking b* x b*^-1 to flip(x), found once by bounded search."""
    w = BraidWord(n, (x,))
    src, dst = conjugate_by_star(w), flip(w)
    verdict = equivalent(src, dst, "standard", len(src) + 4, 4_000_000, check_soundness=False)
    if not verdict.is_equivalent:  # pragma: no cover
        raise StvbError(f"no derivation of the flip of {x} at degree {n}: {verdict.describe()}")
    return verdict.trace


def star_rewrite_steps(w: BraidWord) -> list[RewriteStep]:
    """Rewrite steps from ``conjugate_by_star(w)`` to ``flip(w)``.

    Copies of b*^-1 b* are inserted between consecutive letters, then each
    block b* x b*^-1 is rewritten to f(x), right to left.
    """
    n = w.degree
    star = star_element(n).letters
    lb = len(star)
    letters = w.letters
    steps: list[RewriteStep] = []
    if not letters:
        for p in range(lb - 1, -1, -1):
            steps.append(RewriteStep(_cancel_rule(star[p]), p, LR))
        return steps
    block = 2 * lb + 1
    for j in range(1, len(letters)):
        p = j * block - lb
        for x in reversed(star):
            steps.append(RewriteStep(_cancel_rule(x), p, RL))
            p += 1
    for j in range(len(letters) - 1, -1, -1):
        offset = j * block
        for st in _generator_steps(letters[j], n):
            steps.append(RewriteStep(st.relation, st.position + offset, st.direction))
    return steps


def flipped_relation_derivation(rel: RelationId, n: int) -> tuple[BraidWord, list[RewriteStep], BraidWord]:
    """Derivation between the flipped sides of ``rel`` via conjugation by b*.

    f(lhs) -> b* lhs b*^-1 -> b* rhs b*^-1 -> f(rhs).
    """
    from .relations import instantiate

    lhs, rhs = instantiate(rel, n)
    back = [st.reversed() for st in reversed(star_rewrite_steps(lhs))]
    middle = RewriteStep(rel, len(star_element(n)), LR)
    return flip(lhs), back + [middle] + star_rewrite_steps(rhs), flip(rhs)
