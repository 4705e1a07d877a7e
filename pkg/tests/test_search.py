import pytest

from stvb.search import SoundnessError, bidirectional_search, reverse_path


def line_graph(lo, hi):
    def expand(x):
        for d in (1, -1):
            if lo <= x + d <= hi:
                yield ("+" if d > 0 else "-"), x + d
    return expand


def rev(src, edge, dst):
    return "-" if edge == "+" else "+"


def run(start, goal, **kw):
    kw.setdefault("max_states", 1000)
    return bidirectional_search(start, goal, line_graph(0, 20), reverse_edge=rev, priority=lambda s: 0, size=abs, **kw)


def _replay(start, path):
    x = start
    for src, edge, dst in path:
        assert src == x
        x = x + 1 if edge == "+" else x - 1
        assert x == dst
    return x


def test_finds_shortest_path_on_line():
    res = run(3, 9)
    assert res.found
    assert _replay(3, res.path) == 9
    assert len(res.path) == 6


def test_trivial_and_unreachable():
    assert run(4, 4).path == []
    res = bidirectional_search(0, 5, line_graph(0, 2), reverse_edge=rev, max_states=100, priority=lambda s: 0, size=abs)
    assert not res.found and res.states <= 100


def test_state_budget():
    res = run(0, 20, max_states=5)
    assert not res.found and res.states == 5


def test_reverse_path():
    res = run(2, 7)
    back = reverse_path(res.path, rev)
    assert _replay(7, back) == 2


def test_check_hook():
    def check(x):
        if x == 4:
            raise SoundnessError("four")
    with pytest.raises(SoundnessError):
        run(2, 9, check=check)


def test_deterministic():
    assert run(1, 17).path == run(1, 17).path
