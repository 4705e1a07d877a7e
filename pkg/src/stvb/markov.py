"""Markov-type moves on braid words and bounded search for closure equivalence.

Moves (all act on a word ``w`` of degree ``n``):

* ``ConjReal(i, +-)``    s_i^{+-1} w s_i^{-+1}
* ``ConjVirtual(i)``     v_i w v_i
* ``ConjTwist(i)``       g_i w g_i
* ``ConjSingular(i, +)`` t_i w' -> w' t_i   (``-`` goes the other way)
* ``StabReal(+-)``       w s_n^{+-1} on n+1 strands; ``StabVirtual`` uses v_n
* ``UnderThreadRight(+-)``  w s_n^{+-1} v_{n-1} s_n^{-+1} on n+1 strands
* ``UnderThreadLeft(+-)``   (w shifted right) s_1^{+-1} v_2 s_1^{-+1}
* ``RsThreadRight(+-)``  swaps a trailing t_n v_{n-1} s_n^{+-1} with s_n^{+-1} v_{n-1} t_n
* ``RsThreadLeft(+-)``   the same at indices 1, 2

``Destab*`` and ``Unthread*`` undo the degree-raising moves.  ``Flip``
is a derived move: conjugation by b*, which acts on words as the index flip;
:func:`expand_flip` writes it out as primitive conjugations and rewrites.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple, Sequence

from .closure import ClosureInvariants, closure_invariants, closure_invariants_of_codes
from .errors import IndexOutOfRange, PatternAbsent, StvbError
from .relations import RelationId
from .reduced import star_element, star_rewrite_steps
from .rewrite import (
    DISTINCT,
    EQUIVALENT,
    LR,
    NOT_PROVED,
    RL,
    EquivalenceVerdict,
    RewriteStep,
    _Rule,
    apply,
    rule_index,
)
from .search import SoundnessError, bidirectional_search, reverse_path
from .word import BraidWord, Generator, Kind, iota

__all__ = [
    "MarkovMove",
    "VARIANTS",
    "MOVESETS",
    "apply_move",
    "markov_neighbors",
    "markov_equivalent",
    "replay",
    "expand_flip",
    "derive_left_from_right",
    "FLIP",
]

SP, SN, VV, TT, GG = 0, 1, 2, 3, 4

_INDEXED = {"ConjReal", "ConjVirtual", "ConjSingular", "ConjTwist"}
_SIGNED = {
    "ConjReal",
    "ConjSingular",
    "StabReal",
    "DestabReal",
    "UnderThreadRight",
    "UnderThreadLeft",
    "UnthreadRight",
    "UnthreadLeft",
    "RsThreadRight",
    "RsThreadLeft",
}
VARIANTS = (
    "ConjReal",
    "ConjVirtual",
    "ConjSingular",
    "ConjTwist",
    "StabReal",
    "StabVirtual",
    "DestabReal",
    "DestabVirtual",
    "UnderThreadRight",
    "UnderThreadLeft",
    "UnthreadRight",
    "UnthreadLeft",
    "RsThreadRight",
    "RsThreadLeft",
    "Flip",
)
_LEFT = frozenset({"UnderThreadLeft", "UnthreadLeft", "RsThreadLeft"})
MOVESETS = {
    "full": frozenset(VARIANTS),
    "reduced": frozenset(VARIANTS) - _LEFT,
}


@dataclass(frozen=True)
class MarkovMove:
    variant: str
    index: int | None = None
    sign: int = 1

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown move {self.variant!r}")
        if (self.index is None) == (self.variant in _INDEXED):
            raise ValueError(f"{self.variant} {'needs' if self.index is None else 'takes no'} index")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.variant not in _SIGNED and self.sign != 1:
            raise ValueError(f"{self.variant} takes no sign")

    def __str__(self) -> str:
        args = []
        if self.index is not None:
            args.append(str(self.index))
        if self.variant in _SIGNED:
            args.append("+" if self.sign > 0 else "-")
        return f"{self.variant}({', '.join(args)})" if args else self.variant


FLIP = MarkovMove("Flip")


def _c(kind: int, i: int) -> int:
    return 8 * i + kind


def _sig(sign: int, i: int) -> int:
    return _c(SP if sign > 0 else SN, i)


def _fits(codes: Sequence[int], lo_cross: int, hi_cross: int, lo_bar: int, hi_bar: int) -> bool:
    for c in codes:
        i = c >> 3
        if (c & 7) == GG:
            if not lo_bar <= i <= hi_bar:
                return False
        elif not lo_cross <= i <= hi_cross:
            return False
    return True


def _shift(codes: Sequence[int], by: int) -> tuple[int, ...]:
    return tuple(c + 8 * by for c in codes)


def _move(n: int, codes: tuple[int, ...], m: MarkovMove) -> tuple[int, tuple[int, ...]] | None:
    """Result of ``m`` on a word given as codes, or None when it does not apply."""
    var, i, e = m.variant, m.index, m.sign
    if var == "ConjReal":
        if not 1 <= i <= n - 1:
            return None
        return n, (_sig(e, i),) + codes + (_sig(-e, i),)
    if var == "ConjVirtual":
        if not 1 <= i <= n - 1:
            return None
        return n, (_c(VV, i),) + codes + (_c(VV, i),)
    if var == "ConjTwist":
        if not 1 <= i <= n:
            return None
        return n, (_c(GG, i),) + codes + (_c(GG, i),)
    if var == "ConjSingular":
        x = _c(TT, i)
        if e > 0:
            if codes and codes[0] == x:
                return n, codes[1:] + (x,)
        elif codes and codes[-1] == x:
            return n, (x,) + codes[:-1]
        return None
    if var == "StabReal":
        return n + 1, codes + (_sig(e, n),)
    if var == "StabVirtual":
        return n + 1, codes + (_c(VV, n),)
    if var in ("DestabReal", "DestabVirtual"):
        if n < 2 or not codes:
            return None
        last = _sig(e, n - 1) if var == "DestabReal" else _c(VV, n - 1)
        if codes[-1] != last or not _fits(codes[:-1], 1, n - 2, 1, n - 1):
            return None
        return n - 1, codes[:-1]
    if var == "UnderThreadRight":
        if n < 2:
            return None
        return n + 1, codes + (_sig(e, n), _c(VV, n - 1), _sig(-e, n))
    if var == "UnderThreadLeft":
        if n < 2:
            return None
        return n + 1, _shift(codes, 1) + (_sig(e, 1), _c(VV, 2), _sig(-e, 1))
    if var == "UnthreadRight":
        tail = (_sig(e, n - 1), _c(VV, n - 2), _sig(-e, n - 1))
        if n < 3 or codes[-3:] != tail or not _fits(codes[:-3], 1, n - 2, 1, n - 1):
            return None
        return n - 1, codes[:-3]
    if var == "UnthreadLeft":
        tail = (_sig(e, 1), _c(VV, 2), _sig(-e, 1))
        if n < 3 or codes[-3:] != tail or not _fits(codes[:-3], 2, n - 1, 2, n):
            return None
        return n - 1, _shift(codes[:-3], -1)
    if var in ("RsThreadRight", "RsThreadLeft"):
        if n < 3:
            return None
        a, b = (n - 1, n - 2) if var == "RsThreadRight" else (1, 2)
        one = (_c(TT, a), _c(VV, b), _sig(e, a))
        two = (_sig(e, a), _c(VV, b), _c(TT, a))
        tail = codes[-3:]
        if tail == one:
            new = two
        elif tail == two:
            new = one
        else:
            return None
        prefix = codes[:-3]
        ok = _fits(prefix, 1, n - 2, 1, n - 1) if var == "RsThreadRight" else _fits(prefix, 2, n - 1, 2, n)
        if not ok:
            return None
        return n, prefix + new
    if var == "Flip":
        return n, tuple(_flip_code(c, n) for c in codes)
    raise AssertionError(var)


def _flip_code(c: int, n: int) -> int:
    kind, i = c & 7, c >> 3
    return _c(kind, n + 1 - i if kind == GG else n - i)


def apply_move(w: BraidWord, m: MarkovMove) -> BraidWord:
    var, i = m.variant, m.index
    if i is not None:
        top = w.degree if var == "ConjTwist" else w.degree - 1
        if not 1 <= i <= top:
            raise IndexOutOfRange(f"{m} is not legal at degree {w.degree}")
    if var in ("UnderThreadRight", "UnderThreadLeft") and w.degree < 2:
        raise IndexOutOfRange(f"{m} needs at least 2 strands")
    out = _move(w.degree, w.codes, m)
    if out is None:
        raise PatternAbsent(f"{m} does not apply to {w}")
    return BraidWord.from_codes(*out)


# -- neighbours -----------------------------------------------------------------

def _moves_at(n: int, moveset: frozenset) -> tuple[MarkovMove, ...]:
    return _moves_cached(n, moveset)


@lru_cache(maxsize=None)
def _moves_cached(n: int, moveset: frozenset) -> tuple[MarkovMove, ...]:
    out = []
    for var in VARIANTS:
        if var not in moveset or var == "Flip":
            continue
        signs = (1, -1) if var in _SIGNED else (1,)
        if var in _INDEXED:
            top = n if var == "ConjTwist" else n - 1
            for i in range(1, top + 1):
                for e in signs:
                    out.append(MarkovMove(var, i, e))
        else:
            for e in signs:
                out.append(MarkovMove(var, None, e))
    return tuple(out)


State = tuple  # (degree, codes)


def _expand(state: State, max_degree: int, max_len: int, moveset: frozenset, use_flip: bool) -> Iterator:
    n, codes = state
    if use_flip and n >= 2:
        out = _move(n, codes, FLIP)
        if out[1] != codes:
            yield (FLIP,), out
    for m in _moves_at(n, moveset):
        out = _move(n, codes, m)
        if out is None or out[0] > max_degree or len(out[1]) > max_len:
            continue
        yield (m,), out
    index = rule_index("standard", n)
    for edge, nxt in index.expand(codes, max_len):
        yield (edge,), (n, nxt)


def markov_neighbors(
    w: BraidWord, max_degree: int, max_len: int, moveset: str = "full"
) -> tuple[BraidWord, ...]:
    """Distinct words one move or one braid relation away, within the bounds."""
    if max_degree < w.degree or max_len < len(w):
        raise ValueError("bounds must be at least the size of the word")
    moves = MOVESETS[moveset] - {"Flip"}
    seen: dict[State, None] = {}
    start = (w.degree, w.codes)
    for _, nxt in _expand(start, max_degree, max_len, moves, False):
        if nxt != start:
            seen.setdefault(nxt, None)
    return tuple(BraidWord.from_codes(n, c) for n, c in seen)


# -- reversal and expansion of search edges ---------------------------------------

def _cancel_rule(code: int) -> RelationId:
    kind, i = code & 7, code >> 3
    return {SP: RelationId("Std14", (i,)), SN: RelationId("Std14-", (i,)), VV: RelationId("Std3", (i,)), GG: RelationId("Std8", (i,))}[kind]


def _reverse_item(src: State, item, dst: State) -> tuple:
    if isinstance(item, MarkovMove):
        var, i, e = item.variant, item.index, item.sign
        if var in ("ConjReal", "ConjVirtual", "ConjTwist"):
            # conjugate back with the inverse letter, then cancel both ends
            back = MarkovMove(var, i, -e) if var == "ConjReal" else item
            n, codes = dst
            first = _sig(-e, i) if var == "ConjReal" else codes[0]
            rel = _cancel_rule(first)
            return (
                back,
                RewriteStep(rel, 0, LR),
                RewriteStep(rel, len(codes) - 2, LR),
            )
        pairs = {
            "StabReal": "DestabReal",
            "DestabReal": "StabReal",
            "StabVirtual": "DestabVirtual",
            "DestabVirtual": "StabVirtual",
            "UnderThreadRight": "UnthreadRight",
            "UnthreadRight": "UnderThreadRight",
            "UnderThreadLeft": "UnthreadLeft",
            "UnthreadLeft": "UnderThreadLeft",
        }
        if var == "ConjSingular":
            return (MarkovMove(var, i, -e),)
        if var in pairs:
            return (MarkovMove(pairs[var], None, e),)
        return (item,)  # RsThread moves and Flip are involutions
    if isinstance(item, RewriteStep):
        return (item.reversed(),)
    rule, p = item
    return ((_Rule(rule.rel, RL if rule.direction == LR else LR, rule.dst, rule.src), p),)


def _to_steps(edge: tuple) -> list:
    out = []
    for item in edge:
        if isinstance(item, (MarkovMove, RewriteStep)):
            out.append(item)
        else:
            rule, p = item
            out.append(RewriteStep(rule.rel, p, rule.direction))
    return out


def expand_flip(w: BraidWord) -> list:
    """Primitive moves and rewrites realising ``w -> flip(w)``."""
    n = w.degree
    star = star_element(n).codes
    out: list = []
    for c in reversed(star):
        kind, i = c & 7, c >> 3
        out.append(MarkovMove("ConjVirtual" if kind == VV else "ConjTwist", i))
    return out + star_rewrite_steps(w)


# -- replay ---------------------------------------------------------------------

class ReplayResult(NamedTuple):
    valid: bool
    final: BraidWord
    failing_step: int | None


def replay(start: BraidWord, trace: Sequence) -> ReplayResult:
    w = start
    for k, step in enumerate(trace):
        try:
            w = apply(w, step) if isinstance(step, RewriteStep) else apply_move(w, step)
        except StvbError:
            return ReplayResult(False, w, k)
    return ReplayResult(True, w, None)


def _expand_trace(path) -> list:
    steps: list = []
    for src, edge, _ in path:
        for item in _to_steps(edge):
            if item == FLIP:
                # spelled out against the concrete word at this point of the path
                steps.extend(expand_flip(BraidWord.from_codes(*src)))
            else:
                steps.append(item)
    return steps


# -- equivalence search -----------------------------------------------------------

def _closure_of(state: State) -> ClosureInvariants:
    return closure_invariants_of_codes(state[0], state[1])


def markov_equivalent(
    a: BraidWord,
    b: BraidWord,
    max_degree: int | None = None,
    max_len: int | None = None,
    max_states: int = 100_000,
    moveset: str = "full",
    *,
    check_soundness: bool = True,
) -> EquivalenceVerdict:
    """Bounded search for a sequence of moves and braid relations from ``a`` to ``b``.

    Besides the primitive moves the search may use ``Flip`` (conjugation by
    b*), which the returned trace spells out as primitive steps.
    """
    if moveset not in MOVESETS:
        raise ValueError(f"unknown moveset {moveset!r}")
    ca, cb = closure_invariants(a), closure_invariants(b)
    diff = ca.first_difference(cb)
    if diff is not None:
        return EquivalenceVerdict(DISTINCT, field=diff)
    if max_degree is None:
        max_degree = max(a.degree, b.degree) + 1
    if max_len is None:
        max_len = max(len(a), len(b)) + 4
    if max_degree < max(a.degree, b.degree) or max_len < max(len(a), len(b)):
        raise ValueError("bounds must be at least the size of both words")

    moves = MOVESETS[moveset]
    use_flip = "Flip" in moves
    start, goal = (a.degree, a.codes), (b.degree, b.codes)
    key = lambda st: (len(st[1]), st[0], st[1])  # noqa: E731
    swapped = key(goal) < key(start)
    if swapped:
        start, goal = goal, start

    def check(state):
        if _closure_of(state) != ca:
            raise SoundnessError(f"search reached {state} with different closure invariants")

    result = bidirectional_search(
        start,
        goal,
        lambda st: _expand(st, max_degree, max_len, moves, use_flip),
        reverse_edge=_reverse_edge_any,
        max_states=max_states,
        priority=lambda st: (len(st[1]), st[0]),
        size=lambda st: len(st[1]),
        check=check if check_soundness else None,
    )
    if not result.found:
        return EquivalenceVerdict(NOT_PROVED, states=result.states, max_len_reached=result.max_size)
    path = result.path
    if swapped:
        path = reverse_path(path, _reverse_edge_any)
    trace = tuple(_expand_trace(path))
    return EquivalenceVerdict(EQUIVALENT, trace=trace, states=result.states, max_len_reached=result.max_size)


def _reverse_edge_any(src: State, edge: tuple, dst: State) -> tuple:
    """Reverse an edge that may already be a composite produced by reversal."""
    if len(edge) == 1:
        return _reverse_item(src, edge[0], dst)
    # composite edges come from reversing a conjugation: (Conj(x^-1), cancel, cancel);
    # walking it backwards is the original single conjugation
    move = edge[0]
    assert isinstance(move, MarkovMove)
    if move.variant == "ConjReal":
        return (MarkovMove("ConjReal", move.index, -move.sign),)
    return (move,)


# -- left moves from right moves --------------------------------------------------

def derive_left_from_right(alpha: BraidWord, kind: str, sign: int = 1) -> list[tuple[BraidWord, MarkovMove | None]]:
    """Path from a left-threaded word to the corresponding right-threaded one and back.

    ``under_thread``: alpha -> f(alpha) -> right under-threading -> f, ending at
    the left under-threading of alpha.  ``rs_thread``: starts from the left
    rs-threaded form of alpha and ends at its rs-partner, passing through the
    right rs-threading move.  Each entry is (word, move that produced it).
    """
    if kind == "under_thread":
        path = [(alpha, None)]
        w = apply_move(alpha, FLIP)
        path.append((w, FLIP))
        m = MarkovMove("UnderThreadRight", None, sign)
        w = apply_move(w, m)
        path.append((w, m))
        path.append((apply_move(w, FLIP), FLIP))
        return path
    if kind == "rs_thread":
        n = alpha.degree
        b3 = BraidWord(n + 1, iota(alpha, 1, 0).letters + (Generator(Kind.TAU, 1), Generator(Kind.V, 2), _gen(sign, 1)))
        path = [(b3, None)]
        w = apply_move(b3, FLIP)
        path.append((w, FLIP))
        m = MarkovMove("RsThreadRight", None, sign)
        w = apply_move(w, m)
        path.append((w, m))
        path.append((apply_move(w, FLIP), FLIP))
        return path
    raise ValueError(f"unknown threading kind {kind!r}")


def _gen(sign: int, i: int) -> Generator:
    return Generator(Kind.SIGMA_POS if sign > 0 else Kind.SIGMA_NEG, i)


def left_threaded(alpha: BraidWord, kind: str, sign: int = 1) -> BraidWord:
    """The left-move result that :func:`derive_left_from_right` should reach."""
    if kind == "under_thread":
        return apply_move(alpha, MarkovMove("UnderThreadLeft", None, sign))
    start = derive_left_from_right(alpha, kind, sign)[0][0]
    return apply_move(start, MarkovMove("RsThreadLeft", None, sign))


def expand_path(path: list[tuple[BraidWord, MarkovMove | None]]) -> list:
    """Primitive trace for a path returned by :func:`derive_left_from_right`."""
    steps: list = []
    for (prev, _), (_, move) in zip(path, path[1:]):
        steps.extend(expand_flip(prev) if move == FLIP else [move])
    return steps
