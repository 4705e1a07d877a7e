"""Bidirectional best-first search over an undirected move graph.

Both frontiers are priority queues keyed by ``(priority(state), depth,
insertion counter)``, so shorter words are expanded first and ties fall back to
breadth-first order and then to enumeration order.  The two sides expand one
state each in turn; the search stops as soon as a generated state is already
known to the other side.  Everything is deterministic for fixed inputs.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Callable, Generic, Hashable, Iterable, TypeVar

State = TypeVar("State", bound=Hashable)
Edge = TypeVar("Edge")

__all__ = ["SearchResult", "bidirectional_search", "SoundnessError"]


class SoundnessError(AssertionError):
    """A state reached by the search disagrees with the start on an invariant."""


@dataclass
class SearchResult(Generic[State, Edge]):
    found: bool
    # (source, edge, target) triples leading from start to goal
    path: list[tuple[State, Edge, State]] = field(default_factory=list)
    states: int = 0
    max_size: int = 0


def _walk(tree, node):
    chain = []
    while tree[node] is not None:
        parent, edge = tree[node]
        chain.append((parent, edge, node))
        node = parent
    return chain


def bidirectional_search(
    start: State,
    goal: State,
    expand: Callable[[State], Iterable[tuple[Edge, State]]],
    *,
    reverse_edge: Callable[[State, Edge, State], Edge],
    max_states: int,
    priority: Callable[[State], object] = len,
    size: Callable[[State], int] = len,
    check: Callable[[State], None] | None = None,
) -> SearchResult:
    if check is not None:
        check(start)
        check(goal)
    if start == goal:
        return SearchResult(True, [], 1, size(start))

    trees: list[dict] = [{start: None}, {goal: None}]
    heaps: list[list] = [[(priority(start), 0, 0, start)], [(priority(goal), 0, 1, goal)]]
    counter = 2
    states = 2
    max_size = max(size(start), size(goal))
    side = 0

    def finish(meet):
        forward = _walk(trees[0], meet)[::-1]
        backward = [(dst, reverse_edge(src, edge, dst), src) for src, edge, dst in _walk(trees[1], meet)]
        return SearchResult(True, forward + backward, states, max_size)

    while heaps[0] or heaps[1]:
        if not heaps[side]:
            side ^= 1
            continue
        _, depth, _, cur = heapq.heappop(heaps[side])
        if check is not None:
            check(cur)
        own, other = trees[side], trees[1 - side]
        for edge, nxt in expand(cur):
            if nxt in own:
                continue
            own[nxt] = (cur, edge)
            states += 1
            sz = size(nxt)
            if sz > max_size:
                max_size = sz
            if nxt in other:
                return finish(nxt)
            if states >= max_states:
                return SearchResult(False, [], states, max_size)
            heapq.heappush(heaps[side], (priority(nxt), depth + 1, counter, nxt))
            counter += 1
        side ^= 1
    return SearchResult(False, [], states, max_size)


def reverse_path(path, reverse_edge):
    """The same path walked from its end back to its start."""
    return [(dst, reverse_edge(src, edge, dst), src) for src, edge, dst in reversed(path)]
