"""Relations as two-way rewrite rules, bounded equivalence search, derivations.

A :class:`RewriteStep` replaces one occurrence of a relation side by the other
side.  Empty sides (``v_i v_i = e`` and friends) match at every position,
including the end of the word, so they act as insertion rules.

Search works on integer letter codes.  For each (ruleset, degree) a
:class:`RuleIndex` groups every rule instance by the first letter of its
source side; insertion rules are tried at every position.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import DegreeMismatch, MalformedDerivation, NoMatchAtPosition, StvbError
from .homs import InvariantRecord, invariants, invariants_of_codes
from .relations import RelationId, _sides, instances, instantiate, label_order, ruleset_labels
from .search import SoundnessError, bidirectional_search, reverse_path
from .word import BraidWord, format_word, parse

__all__ = [
    "LR",
    "RL",
    "RewriteStep",
    "apply",
    "neighbors",
    "EquivalenceVerdict",
    "equivalent",
    "DerivationResult",
    "check_derivation",
    "PresentationReport",
    "verify_presentation",
    "parse_derivation",
    "format_derivation",
    "load_derivation",
    "RuleIndex",
    "rule_index",
]

LR = "LR"
RL = "RL"
_DIRECTIONS = (LR, RL)


@dataclass(frozen=True)
class RewriteStep:
    relation: RelationId
    position: int
    direction: str = LR

    def __post_init__(self):
        if self.direction not in _DIRECTIONS:
            raise ValueError(f"direction must be LR or RL, got {self.direction!r}")
        if self.position < 0:
            raise ValueError("position must be non-negative")

    def reversed(self) -> "RewriteStep":
        return RewriteStep(self.relation, self.position, RL if self.direction == LR else LR)

    def __str__(self) -> str:
        params = "".join(f" {p}" for p in self.relation.params)
        return f"{self.relation.label} {self.position} {self.direction}{params}"


def _oriented(step: RewriteStep, degree: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    lhs, rhs = instantiate(step.relation, degree)
    if step.direction == LR:
        return lhs.codes, rhs.codes
    return rhs.codes, lhs.codes


def apply(w: BraidWord, step: RewriteStep) -> BraidWord:
    src, dst = _oriented(step, w.degree)
    codes = w.codes
    p = step.position
    if p > len(codes) or codes[p : p + len(src)] != src:
        raise NoMatchAtPosition(f"{step.relation} ({step.direction}) does not match at {p} in {format_word(w)!r}")
    return BraidWord.from_codes(w.degree, codes[:p] + dst + codes[p + len(src) :])


# -- rule index ---------------------------------------------------------------

class _Rule(NamedTuple):
    rel: RelationId
    direction: str
    src: tuple[int, ...]
    dst: tuple[int, ...]


class RuleIndex:
    """Every oriented rule instance of a ruleset at one degree, bucketed for matching."""

    def __init__(self, labels: Sequence[str], degree: int):
        self.degree = degree
        seen: set[tuple] = set()
        ordered: list[_Rule] = []
        for rel in instances(labels, degree):
            lhs, rhs = _sides(rel.label, rel.params)
            lc = tuple(8 * x.index + int(x.kind) for x in lhs)
            rc = tuple(8 * x.index + int(x.kind) for x in rhs)
            for direction, src, dst in ((LR, lc, rc), (RL, rc, lc)):
                if src == dst or (src, dst) in seen:
                    continue
                seen.add((src, dst))
                ordered.append(_Rule(rel, direction, src, dst))
        self.rules = tuple(ordered)
        self.insertions = tuple(r for r in ordered if not r.src)
        buckets: dict[int, list[_Rule]] = {}
        for r in ordered:
            if r.src:
                buckets.setdefault(r.src[0], []).append(r)
        rank = {id(r): k for k, r in enumerate(ordered)}
        # each bucket merges the first-letter matches with the insertion rules,
        # keeping table order
        self.by_first = {
            c: tuple(sorted(lst + list(self.insertions), key=lambda r: rank[id(r)])) for c, lst in buckets.items()
        }

    def candidates(self, code: int) -> tuple[_Rule, ...]:
        return self.by_first.get(code, self.insertions)

    def expand(self, codes: tuple[int, ...], max_len: int) -> Iterator[tuple[tuple, tuple[int, ...]]]:
        """Yield ``((rule, position), result)`` in enumeration order."""
        n = len(codes)
        for p in range(n + 1):
            cands = self.candidates(codes[p]) if p < n else self.insertions
            for rule in cands:
                ls = len(rule.src)
                if ls and codes[p : p + ls] != rule.src:
                    continue
                if n - ls + len(rule.dst) > max_len:
                    continue
                yield (rule, p), codes[:p] + rule.dst + codes[p + ls :]


@lru_cache(maxsize=64)
def rule_index(rules: str | tuple[str, ...], degree: int) -> RuleIndex:
    labels = ruleset_labels(rules) if isinstance(rules, str) else tuple(rules)
    return RuleIndex(labels, degree)


def _edge_step(edge) -> RewriteStep:
    rule, p = edge
    return RewriteStep(rule.rel, p, rule.direction)


def neighbors(w: BraidWord, rules: str = "standard", max_len: int | None = None) -> tuple[BraidWord, ...]:
    """Distinct words one rewrite step away, no longer than ``max_len``."""
    if max_len is None:
        max_len = len(w) + 2
    index = rule_index(rules, w.degree)
    seen: dict[tuple[int, ...], None] = {}
    codes = w.codes
    for _, nxt in index.expand(codes, max_len):
        if nxt != codes:
            seen.setdefault(nxt, None)
    return tuple(BraidWord.from_codes(w.degree, c) for c in seen)


# -- equivalence --------------------------------------------------------------

EQUIVALENT = "Equivalent"
DISTINCT = "DistinctByInvariant"
NOT_PROVED = "NotProvedWithinBounds"


@dataclass(frozen=True)
class EquivalenceVerdict:
    outcome: str
    trace: tuple = ()
    field: str | None = None
    states: int = 0
    max_len_reached: int = 0

    @property
    def is_equivalent(self) -> bool:
        return self.outcome == EQUIVALENT

    def __bool__(self) -> bool:
        return self.is_equivalent

    def describe(self) -> str:
        if self.outcome == EQUIVALENT:
            return f"Equivalent ({len(self.trace)} steps)"
        if self.outcome == DISTINCT:
            return f"DistinctByInvariant({self.field})"
        return f"NotProvedWithinBounds(states={self.states}, max_len={self.max_len_reached})"

    def to_json(self) -> dict:
        out: dict = {"outcome": self.outcome}
        if self.outcome == EQUIVALENT:
            out["trace"] = [_step_json(s) for s in self.trace]
        elif self.outcome == DISTINCT:
            out["field"] = self.field
        else:
            out["states"] = self.states
            out["maxLenReached"] = self.max_len_reached
        return out


def _step_json(step) -> dict | str:
    if isinstance(step, RewriteStep):
        return {
            "relation": step.relation.label,
            "params": list(step.relation.params),
            "position": step.position,
            "direction": step.direction,
        }
    return str(step)


def _shortlex(codes: tuple[int, ...]):
    return (len(codes), codes)


def _rewrite_reverse(src, edge, dst):
    rule, p = edge
    return (_Rule(rule.rel, RL if rule.direction == LR else LR, rule.dst, rule.src), p)


def equivalent(
    a: BraidWord,
    b: BraidWord,
    rules: str = "standard",
    max_len: int | None = None,
    max_states: int = 100_000,
    *,
    check_soundness: bool = True,
) -> EquivalenceVerdict:
    """Bounded search for a rewrite path from ``a`` to ``b``.

    Returns ``DistinctByInvariant`` when the invariant records differ, a
    replayable trace when a path is found, and ``NotProvedWithinBounds``
    otherwise.  The latter never means the words are inequivalent.
    """
    if a.degree != b.degree:
        raise DegreeMismatch(f"degrees differ: {a.degree} vs {b.degree}")
    if max_states < 1:
        raise ValueError("max_states must be positive")
    ra, rb = invariants(a), invariants(b)
    diff = ra.first_difference(rb)
    if diff is not None:
        return EquivalenceVerdict(DISTINCT, field=diff)
    if max_len is None:
        max_len = max(len(a), len(b)) + 4
    if max_len < max(len(a), len(b)):
        raise ValueError("max_len is shorter than one of the words")

    degree = a.degree
    index = rule_index(rules, degree)
    # search from the shortlex-smaller word so the verdict is symmetric
    start, goal = a.codes, b.codes
    swapped = _shortlex(goal) < _shortlex(start)
    if swapped:
        start, goal = goal, start

    def check(codes):
        if invariants_of_codes(degree, codes) != ra:
            raise SoundnessError(f"search reached {codes} with a different invariant record")

    result = bidirectional_search(
        start,
        goal,
        lambda c: index.expand(c, max_len),
        reverse_edge=_rewrite_reverse,
        max_states=max_states,
        check=check if check_soundness else None,
    )
    if not result.found:
        return EquivalenceVerdict(NOT_PROVED, states=result.states, max_len_reached=result.max_size)
    path = result.path
    if swapped:
        path = reverse_path(path, _rewrite_reverse)
    trace = tuple(_edge_step(edge) for _, edge, _ in path)
    return EquivalenceVerdict(EQUIVALENT, trace=trace, states=result.states, max_len_reached=result.max_size)


# -- derivations --------------------------------------------------------------

class DerivationResult(NamedTuple):
    valid: bool
    final: BraidWord
    failing_step: int | None


def check_derivation(start: BraidWord, steps: Iterable[RewriteStep]) -> DerivationResult:
    w = start
    for k, step in enumerate(steps):
        try:
            w = apply(w, step)
        except StvbError:
            return DerivationResult(False, w, k)
    return DerivationResult(True, w, None)


_STEP = re.compile(r"^(\S+)\s+(\d+)\s+(LR|RL)((?:\s+\d+)*)\s*$")


def parse_derivation(text: str) -> tuple[BraidWord, list[RewriteStep]]:
    """Read a derivation: the start word, then one ``<label> <pos> <LR|RL> [i [j]]`` per line.

    Blank lines and lines starting with ``#`` are ignored.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise MalformedDerivation("derivation has no start word")
    start = parse(lines[0])
    steps = []
    for ln in lines[1:]:
        m = _STEP.match(ln)
        if m is None:
            raise MalformedDerivation(f"cannot read step {ln!r}")
        params = tuple(int(x) for x in m.group(4).split())
        steps.append(RewriteStep(RelationId(m.group(1), params), int(m.group(2)), m.group(3)))
    return start, steps


def format_derivation(start: BraidWord, steps: Iterable[RewriteStep]) -> str:
    return "\n".join([format_word(start)] + [str(s) for s in steps]) + "\n"


def load_derivation(path) -> tuple[BraidWord, list[RewriteStep]]:
    with open(path, encoding="utf-8") as fh:
        return parse_derivation(fh.read())


# -- presentation sweep -------------------------------------------------------

_SWEEP_LABELS = {
    "standard": lambda: ruleset_labels("standard"),
    "reduced": lambda: ruleset_labels("reduced") + ("Def24", "Def24-", "Def25", "Def26"),
    "standard+aux": lambda: ruleset_labels("standard+aux"),
}


@dataclass(frozen=True)
class PresentationReport:
    which: str
    degree: int
    checked: int
    skipped: tuple[str, ...]
    failures: tuple[tuple[RelationId, str], ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        if self.ok:
            return f"all {self.checked} instances pass"
        bad = ", ".join(f"{rel} [{field}]" for rel, field in self.failures)
        return f"{len(self.failures)} of {self.checked} instances fail: {bad}"


def verify_presentation(which: str, n: int) -> PresentationReport:
    """Check that both sides of every legal relation instance share an invariant record."""
    if which not in _SWEEP_LABELS:
        raise ValueError(f"unknown presentation {which!r}")
    if n < 2:
        raise ValueError("degree must be at least 2")
    labels = _SWEEP_LABELS[which]()
    checked = 0
    failures = []
    used = set()
    for rel in instances(labels, n):
        used.add(rel.label)
        lhs, rhs = instantiate(rel, n)
        diff = invariants(lhs).first_difference(invariants(rhs))
        checked += 1
        if diff is not None:
            failures.append((rel, diff))
    skipped = tuple(lab for lab in sorted(labels, key=label_order) if lab not in used)
    return PresentationReport(which, n, checked, skipped, tuple(failures))


def replay_record(start: BraidWord, steps: Iterable[RewriteStep]) -> list[InvariantRecord]:
    """Invariant records along a derivation (useful when debugging fixtures)."""
    out = [invariants(start)]
    w = start
    for step in steps:
        w = apply(w, step)
        out.append(invariants(w))
    return out
