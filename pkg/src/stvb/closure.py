"""Closures of braid words, closure invariants, and braiding of Morse diagrams.

A Morse word describes a diagram as a top-to-bottom sequence of elementary
events on numbered slots::

    cup i    open a new arc occupying slots i, i+1
    cap i    join slots i, i+1
    pos i    crossing of slots i, i+1; the arc from top slot i to bottom slot i+1 is over
    neg i    same, that arc is under
    virt i   virtual crossing
    sing i   singular crossing
    bar i    bar on slot i

Components are oriented by starting at the left leg of their earliest cup and
walking down.  The oriented sign of a classical crossing is the base sign
(+1 for ``pos``) times the direction (+1 down, -1 up) of both passes.

:func:`braid_morse` builds a braid whose closure has the same signed Gauss
code (ignoring virtual crossings) and the same bars per arc.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .errors import InvalidMorse
from .word import BraidWord, Generator, Kind, S, g, s, t, v

__all__ = [
    "Over",
    "Under",
    "SingPass",
    "VirtualPass",
    "Bar",
    "ClosureCode",
    "ClosureInvariants",
    "CrossingTotals",
    "close",
    "closure_invariants",
    "crossing_totals",
    "MorseEvent",
    "MorseWord",
    "parse_morse",
    "format_morse",
    "load_morse",
    "morse_code",
    "morse_invariants",
    "morse_crossing_totals",
    "braid_morse",
    "morse_encode",
]


# -- closure code ----------------------------------------------------------------

class Over(NamedTuple):
    crossing: int
    sign: int


class Under(NamedTuple):
    crossing: int
    sign: int


class SingPass(NamedTuple):
    crossing: int


class VirtualPass(NamedTuple):
    crossing: int


class Bar(NamedTuple):
    pass


def _event_json(ev) -> dict:
    if isinstance(ev, Over):
        return {"type": "over", "crossing": ev.crossing, "sign": ev.sign}
    if isinstance(ev, Under):
        return {"type": "under", "crossing": ev.crossing, "sign": ev.sign}
    if isinstance(ev, SingPass):
        return {"type": "sing", "crossing": ev.crossing}
    if isinstance(ev, VirtualPass):
        return {"type": "virt", "crossing": ev.crossing}
    return {"type": "bar"}


@dataclass(frozen=True)
class ClosureCode:
    components: tuple[tuple, ...]

    def __len__(self) -> int:
        return len(self.components)

    def to_json(self) -> list:
        return [[_event_json(ev) for ev in comp] for comp in self.components]


def close(w: BraidWord) -> ClosureCode:
    """Trace the closure of ``w``; crossing ids are letter positions plus one."""
    n = w.degree
    letters = w.letters
    seen = [False] * (n + 1)
    comps = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        events = []
        p = start
        while not seen[p]:
            seen[p] = True
            for j, (kind, i) in enumerate(letters):
                c = j + 1
                if kind == Kind.GAMMA:
                    if p == i:
                        events.append(Bar())
                    continue
                if p != i and p != i + 1:
                    continue
                left = p == i
                if kind == Kind.SIGMA_POS:
                    events.append(Over(c, 1) if left else Under(c, 1))
                elif kind == Kind.SIGMA_NEG:
                    events.append(Under(c, -1) if left else Over(c, -1))
                elif kind == Kind.V:
                    events.append(VirtualPass(c))
                else:
                    events.append(SingPass(c))
                p = i + 1 if left else i
        comps.append(tuple(events))
    return ClosureCode(tuple(comps))


@dataclass(frozen=True)
class ClosureInvariants:
    components: int
    bar_parities: tuple[int, ...]
    tau_count: int
    singular_passes: tuple[int, ...]

    FIELDS = ("components", "bar_parities", "tau_count", "singular_passes")

    def first_difference(self, other: "ClosureInvariants") -> str | None:
        for name in self.FIELDS:
            if getattr(self, name) != getattr(other, name):
                return name
        return None

    def to_json(self) -> dict:
        return {
            "components": self.components,
            "barParities": list(self.bar_parities),
            "tauCount": self.tau_count,
            "singularPasses": list(self.singular_passes),
        }


def closure_invariants_of_codes(degree: int, codes) -> ClosureInvariants:
    _, comp_bar, comp_sing, tau = _kernels.closure_stats(np.asarray(codes, np.int64), degree)
    return ClosureInvariants(
        int(comp_bar.shape[0]),
        tuple(sorted(int(b) for b in comp_bar)),
        int(tau),
        tuple(sorted(int(x) for x in comp_sing)),
    )


def closure_invariants(w: BraidWord) -> ClosureInvariants:
    return closure_invariants_of_codes(w.degree, w.codes)


class CrossingTotals(NamedTuple):
    positive: int
    negative: int
    singular: int
    virtual: int = 0

    def essential(self) -> tuple[int, int, int]:
        """Classical-by-sign and singular counts; virtual counts are not invariant."""
        return (self.positive, self.negative, self.singular)


def crossing_totals(w: BraidWord) -> CrossingTotals:
    counts = [0] * 5
    for kind, _ in w.letters:
        counts[kind] += 1
    return CrossingTotals(counts[Kind.SIGMA_POS], counts[Kind.SIGMA_NEG], counts[Kind.TAU], counts[Kind.V])


# -- Morse words ----------------------------------------------------------------

MORSE_KINDS = ("cup", "cap", "pos", "neg", "virt", "sing", "bar")


class MorseEvent(NamedTuple):
    kind: str
    slot: int

    def __str__(self) -> str:
        return f"{self.kind} {self.slot}"


@dataclass(frozen=True)
class MorseWord:
    events: tuple[MorseEvent, ...]

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(MorseEvent(*e) for e in self.events))
        _check_widths(self.events)

    def __len__(self) -> int:
        return len(self.events)


def _check_widths(events) -> None:
    width = 0
    for k, (kind, i) in enumerate(events):
        if kind not in MORSE_KINDS:
            raise InvalidMorse(f"event {k}: unknown kind {kind!r}")
        if not isinstance(i, int) or i < 1:
            raise InvalidMorse(f"event {k}: slot must be a positive integer")
        if kind == "cup":
            if i > width + 1:
                raise InvalidMorse(f"event {k}: cup {i} beyond width {width}")
            width += 2
        elif kind == "bar":
            if i > width:
                raise InvalidMorse(f"event {k}: bar {i} beyond width {width}")
        else:
            if i + 1 > width:
                raise InvalidMorse(f"event {k}: {kind} {i} needs slots {i},{i + 1} but width is {width}")
            if kind == "cap":
                width -= 2
    if width != 0:
        raise InvalidMorse(f"diagram ends with {width} open strands")


_LINE = re.compile(r"^(cup|cap|pos|neg|virt|sing|bar)\s+(\d+)$")


def parse_morse(text: str) -> MorseWord:
    events = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.match(line)
        if m is None:
            raise InvalidMorse(f"line {lineno}: cannot read {raw.strip()!r}")
        events.append(MorseEvent(m.group(1), int(m.group(2))))
    return MorseWord(tuple(events))


def format_morse(d: MorseWord) -> str:
    return "".join(f"{e}\n" for e in d.events)


def load_morse(path) -> MorseWord:
    with open(path, encoding="utf-8") as fh:
        return parse_morse(fh.read())


_CROSS = ("pos", "neg", "virt", "sing")
_INTERNAL = {"a": "b", "b": "a", "tl": "br", "br": "tl", "tr": "bl", "bl": "tr"}
_INTERNAL_BAR = {"t": "b", "b": "t"}


class _Pass(NamedTuple):
    node: int  # event index
    kind: str
    down: bool
    over: bool  # only meaningful for pos/neg: this pass is the over strand


class _Traced(NamedTuple):
    # per component: list of items, each a _Pass or the string "bar"
    components: list


def _trace(d: MorseWord) -> _Traced:
    link: dict[tuple[int, str], tuple[int, str]] = {}
    slots: list[tuple[int, str]] = []

    def join(x, y):
        link[x] = y
        link[y] = x

    cups = []
    for k, (kind, i) in enumerate(d.events):
        if kind == "cup":
            slots[i - 1 : i - 1] = [(k, "a"), (k, "b")]
            cups.append(k)
        elif kind == "cap":
            join(slots[i - 1], (k, "a"))
            join(slots[i], (k, "b"))
            del slots[i - 1 : i + 1]
        elif kind == "bar":
            join(slots[i - 1], (k, "t"))
            slots[i - 1] = (k, "b")
        else:
            join(slots[i - 1], (k, "tl"))
            join(slots[i], (k, "tr"))
            slots[i - 1] = (k, "bl")
            slots[i] = (k, "br")

    events = d.events

    def internal(node, port):
        if events[node].kind == "bar":
            return _INTERNAL_BAR[port]
        return _INTERNAL[port]

    visited: set[int] = set()
    comps = []
    for c in cups:
        if c in visited:
            continue
        items = []
        start = (c, "a")
        cur = start
        while True:
            node, port = link[cur]
            kind = events[node].kind
            visited.add(node)
            if kind in _CROSS:
                down = port in ("tl", "tr")
                main_diag = port in ("tl", "br")  # top-left to bottom-right pass
                over = main_diag if kind == "pos" else not main_diag
                items.append(_Pass(node, kind, down, over))
            elif kind == "bar":
                items.append("bar")
            cur = (node, internal(node, port))
            if cur == start:
                break
        comps.append(items)
    return _Traced(comps)


def _signs(traced: _Traced, d: MorseWord) -> dict[int, int]:
    dirs: dict[int, dict[bool, int]] = {}
    for items in traced.components:
        for it in items:
            if isinstance(it, _Pass) and it.kind in ("pos", "neg"):
                dirs.setdefault(it.node, {})[it.over] = 1 if it.down else -1
    out = {}
    for node, dd in dirs.items():
        base = 1 if d.events[node].kind == "pos" else -1
        out[node] = base * dd[True] * dd[False]
    return out


def morse_code(d: MorseWord) -> ClosureCode:
    """Closure code read directly off a Morse diagram (crossing ids are event indices plus one)."""
    traced = _trace(d)
    signs = _signs(traced, d)
    comps = []
    for items in traced.components:
        evs = []
        for it in items:
            if it == "bar":
                evs.append(Bar())
            elif it.kind == "virt":
                evs.append(VirtualPass(it.node + 1))
            elif it.kind == "sing":
                evs.append(SingPass(it.node + 1))
            else:
                sign = signs[it.node]
                evs.append(Over(it.node + 1, sign) if it.over else Under(it.node + 1, sign))
        comps.append(tuple(evs))
    return ClosureCode(tuple(comps))


def code_invariants(code: ClosureCode) -> ClosureInvariants:
    bars = []
    sing = []
    tau = set()
    for comp in code.components:
        bars.append(sum(isinstance(ev, Bar) for ev in comp) & 1)
        sing.append(sum(isinstance(ev, SingPass) for ev in comp))
        tau.update(ev.crossing for ev in comp if isinstance(ev, SingPass))
    return ClosureInvariants(len(code.components), tuple(sorted(bars)), len(tau), tuple(sorted(sing)))


def morse_invariants(d: MorseWord) -> ClosureInvariants:
    return code_invariants(morse_code(d))


def morse_crossing_totals(d: MorseWord) -> CrossingTotals:
    traced = _trace(d)
    signs = _signs(traced, d)
    pos = sum(1 for sg in signs.values() if sg > 0)
    neg = len(signs) - pos
    sing = sum(1 for e in d.events if e.kind == "sing")
    virt = sum(1 for e in d.events if e.kind == "virt")
    return CrossingTotals(pos, neg, sing, virt)


# -- braiding ---------------------------------------------------------------------

def braid_morse(d: MorseWord) -> BraidWord:
    """A braid whose closure has the diagram's signed Gauss code and bars.

    Every classical or singular crossing k (numbered in order of first
    encounter) becomes one letter on strands 2k-1, 2k.  Below this layer a bar
    is placed on each arc that carries an odd number of bars, and a word in
    virtual letters sends each crossing output to the input of the next
    crossing along its component.  Components without crossings become extra
    trivial strands on the right.
    """
    traced = _trace(d)
    signs = _signs(traced, d)
    if not traced.components:
        raise InvalidMorse("diagram has no components")

    order: dict[int, int] = {}  # event index -> crossing number (0-based)
    cyc_passes = []  # per component: list of (node, pass_index_in_crossing, bars_after)
    free_bars = []
    for ci, items in enumerate(traced.components):
        passes = []
        pending = 0
        lead = 0  # bars before the first pass belong to the last arc
        for it in items:
            if it == "bar":
                pending += 1
                continue
            if it.kind == "virt":
                continue
            if it.node not in order:
                order[it.node] = len(order)
            if passes:
                passes[-1][2] += pending
            else:
                lead = pending
            passes.append([it, None, 0])
            pending = 0
        if passes:
            passes[-1][2] += pending + lead
            cyc_passes.append(passes)
        else:
            free_bars.append(pending & 1)

    m = len(order)
    # decide which pass enters on the left of each crossing
    left_of: dict[int, tuple] = {}
    for passes in cyc_passes:
        for rec in passes:
            p = rec[0]
            kind = p.kind
            if kind == "sing":
                left_of.setdefault(p.node, (id(rec),))
            elif signs[p.node] > 0:
                if p.over:
                    left_of[p.node] = (id(rec),)
            elif not p.over:
                left_of[p.node] = (id(rec),)

    letters: list[Generator] = []
    sorted_nodes = sorted(order, key=order.get)
    for node in sorted_nodes:
        k = order[node]
        kind = d.events[node].kind
        pos = 2 * k + 1
        if kind == "sing":
            letters.append(t(pos))
        elif signs[node] > 0:
            letters.append(s(pos))
        else:
            letters.append(S(pos))

    # input / output slot of every pass
    in_slot: dict[int, int] = {}
    out_slot: dict[int, int] = {}
    for passes in cyc_passes:
        for rec in passes:
            k = order[rec[0].node]
            left = left_of[rec[0].node] == (id(rec),)
            in_slot[id(rec)] = 2 * k + 1 if left else 2 * k + 2
            out_slot[id(rec)] = 2 * k + 2 if left else 2 * k + 1

    target = list(range(1, 2 * m + 1))
    for passes in cyc_passes:
        for idx, rec in enumerate(passes):
            nxt = passes[(idx + 1) % len(passes)]
            o = out_slot[id(rec)]
            if rec[2] & 1:
                letters.append(g(o))
            target[o - 1] = in_slot[id(nxt)]

    letters.extend(_virtual_sort(target))
    degree = 2 * m + len(free_bars)
    for k, parity in enumerate(free_bars):
        if parity:
            letters.append(g(2 * m + k + 1))
    return BraidWord(degree, tuple(letters))


def _virtual_sort(target: list[int]) -> list[Generator]:
    """Virtual letters moving the strand at top position p to bottom position target[p-1]."""
    cur = list(target)
    out = []
    changed = True
    while changed:
        changed = False
        for j in range(len(cur) - 1):
            if cur[j] > cur[j + 1]:
                cur[j], cur[j + 1] = cur[j + 1], cur[j]
                out.append(v(j + 1))
                changed = True
    return out


_MORSE_OF = {Kind.SIGMA_POS: "pos", Kind.SIGMA_NEG: "neg", Kind.V: "virt", Kind.TAU: "sing", Kind.GAMMA: "bar"}


def morse_encode(w: BraidWord) -> MorseWord:
    """Morse word of the closure of ``w``: nested cups, the letters, nested caps."""
    n = w.degree
    events = [MorseEvent("cup", k) for k in range(1, n + 1)]
    events.extend(MorseEvent(_MORSE_OF[kind], i) for kind, i in w.letters)
    events.extend(MorseEvent("cap", k) for k in range(n, 0, -1))
    return MorseWord(tuple(events))
