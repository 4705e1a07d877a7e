import random

import pytest
from hypothesis import given, settings, strategies as st

from stvb.errors import DegreeMismatch, NoMatchAtPosition
from stvb.relations import RULESETS, RelationId, instances, instantiate
from stvb.rewrite import (
    DISTINCT,
    EQUIVALENT,
    LR,
    NOT_PROVED,
    RL,
    RewriteStep,
    apply,
    check_derivation,
    equivalent,
    format_derivation,
    neighbors,
    parse_derivation,
    verify_presentation,
)
from stvb.search import SoundnessError
from stvb.word import BraidWord, parse

from conftest import words


def brute_neighbors(w, labels, max_len):
    """Slow oracle: try every instance, direction and position."""
    out = set()
    for rel in instances(labels, w.degree):
        lhs, rhs = instantiate(rel, w.degree)
        for src, dst in ((lhs, rhs), (rhs, lhs)):
            k = len(src)
            for p in range(len(w) + 1):
                if w.letters[p:p + k] == src.letters and p + k <= len(w):
                    letters = w.letters[:p] + dst.letters + w.letters[p + k:]
                    if len(letters) <= max_len and letters != w.letters:
                        out.add(BraidWord(w.degree, letters))
    return out


def std3(i=1):
    return RelationId("Std3", (i,))


def test_apply_cancels():
    assert apply(parse("2; v1 v1 s1"), RewriteStep(std3(), 0, LR)) == parse("2; s1")


def test_apply_inserts():
    assert apply(parse("2; s1"), RewriteStep(std3(), 0, RL)) == parse("2; v1 v1 s1")
    assert apply(parse("2; s1"), RewriteStep(std3(), 1, RL)) == parse("2; s1 v1 v1")


def test_apply_no_match():
    with pytest.raises(NoMatchAtPosition):
        apply(parse("2; s1"), RewriteStep(RelationId("Std13", (1,)), 0, LR))
    with pytest.raises(NoMatchAtPosition):
        apply(parse("2; s1"), RewriteStep(std3(), 2, RL))


def test_step_validation_and_text():
    with pytest.raises(ValueError):
        RewriteStep(std3(), 0, "XX")
    with pytest.raises(ValueError):
        RewriteStep(std3(), -1, LR)
    step = RewriteStep(RelationId("Std1", (1, 3)), 2, RL)
    assert str(step) == "Std1 2 RL 1 3"
    assert step.reversed() == RewriteStep(RelationId("Std1", (1, 3)), 2, LR)


def test_neighbors_contains_cancellation():
    assert parse("2;") in neighbors(parse("2; v1 v1"), "standard", 4)


def test_neighbors_of_identity_degree_two():
    got = set(neighbors(parse("2;"), "standard", 2))
    expected = {parse(t) for t in ("2; v1 v1", "2; g1 g1", "2; g2 g2", "2; s1 S1", "2; S1 s1")}
    assert brute_neighbors(parse("2;"), RULESETS["standard"], 2) == expected
    assert got == expected


@pytest.mark.parametrize("rules", sorted(RULESETS))
@pytest.mark.parametrize("seed", range(6))
def test_neighbors_match_brute_force(rules, seed):
    from stvb.corpus import random_word

    rng = random.Random(seed)
    for _ in range(8):
        w = random_word(rng, rng.randint(1, 4), rng.randint(0, 6))
        max_len = len(w) + rng.randint(0, 3)
        got = neighbors(w, rules, max_len)
        assert len(set(got)) == len(got)
        assert set(got) == brute_neighbors(w, RULESETS[rules], max_len)


@given(words(max_length=8))
def test_neighbors_respect_length_bound(w):
    assert all(len(u) <= len(w) for u in neighbors(w, "standard", len(w)))


def test_neighbors_deterministic():
    w = parse("3; s1 v2 g1 t1")
    assert neighbors(w, "standard", 7) == neighbors(w, "standard", 7)


def test_equivalent_one_step():
    v = equivalent(parse("2; v1 v1"), parse("2;"))
    assert v.outcome == EQUIVALENT
    assert len(v.trace) == 1
    assert check_derivation(parse("2; v1 v1"), v.trace).final == parse("2;")


def test_equivalent_detects_bars():
    v = equivalent(parse("2; g1"), parse("2; g2"))
    assert v.outcome == DISTINCT and v.field == "bars"
    assert not v


def test_equivalent_virtual_mixed():
    a, b = parse("3; v1 s2 v1"), parse("3; v2 s1 v2")
    v = equivalent(a, b)
    assert v.is_equivalent
    assert check_derivation(a, v.trace) == (True, b, None)


def test_equivalent_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        equivalent(parse("2; s1"), parse("3; s1"))


def test_equivalent_bad_bounds():
    with pytest.raises(ValueError):
        equivalent(parse("2; s1 s1"), parse("2; s1 s1"), max_len=1)


def test_not_proved_is_reported_honestly():
    a = parse("3; s1 s2 s1 s2 s1 s2")
    b = parse("3; s2 s1 s2 s1 s2 s1")
    v = equivalent(a, b, max_len=6, max_states=5)
    assert v.outcome == NOT_PROVED
    assert v.states <= 5
    assert "NotProvedWithinBounds" in v.describe()


def test_identical_words():
    w = parse("3; t1 g2")
    v = equivalent(w, w)
    assert v.is_equivalent and v.trace == ()


def test_json_shapes():
    assert equivalent(parse("2; g1"), parse("2; g2")).to_json() == {"outcome": DISTINCT, "field": "bars"}
    out = equivalent(parse("2; v1 v1"), parse("2;")).to_json()
    assert out == {"outcome": EQUIVALENT, "trace": [{"relation": "Std3", "params": [1], "position": 0, "direction": "LR"}]}


def _relation_pairs():
    rng = random.Random(7)
    pairs = []
    for n in (2, 3):
        rels = list(instances(RULESETS["standard"], n))
        for rel in rng.sample(rels, 6):
            lhs, rhs = instantiate(rel, n)
            pairs.append((lhs, rhs))
    return pairs


@pytest.mark.parametrize("a, b", _relation_pairs(), ids=str)
def test_symmetric_and_replayable(a, b):
    ab, ba = equivalent(a, b), equivalent(b, a)
    assert ab.outcome == ba.outcome == EQUIVALENT
    assert check_derivation(a, ab.trace) == (True, b, None)
    assert check_derivation(b, ba.trace) == (True, a, None)


@settings(max_examples=40)
@given(st.integers(2, 3).flatmap(lambda n: st.tuples(words(degree=n, max_length=4), words(degree=n, max_length=4))))
def test_symmetry_property(ab):
    a, b = ab
    x = equivalent(a, b, max_states=2000)
    y = equivalent(b, a, max_states=2000)
    assert x.outcome == y.outcome
    if x.is_equivalent:
        assert check_derivation(a, x.trace).final == b
        assert check_derivation(b, y.trace).final == a


def test_search_is_deterministic():
    a, b = parse("3; s1 s2 s1 v1"), parse("3; s2 s1 s2 v1")
    assert equivalent(a, b) == equivalent(a, b)


def test_soundness_check_catches_bad_rules(monkeypatch):
    import stvb.rewrite as rw

    real = rw.invariants_of_codes
    calls = {"n": 0}

    def lying(degree, codes):
        calls["n"] += 1
        rec = real(degree, codes)
        if calls["n"] > 3:
            return real(degree, codes + (codes[0],) if codes else (4,))
        return rec

    monkeypatch.setattr(rw, "invariants_of_codes", lying)
    with pytest.raises(SoundnessError):
        equivalent(parse("3; s1 s2 s1"), parse("3; s2 s1 s2 v1 v1"), max_states=50)


def test_check_derivation_examples():
    w = parse("2; s1")
    assert check_derivation(w, []) == (True, w, None)
    res = check_derivation(w, [RewriteStep(RelationId("Std13", (1,)), 0, LR)])
    assert not res.valid and res.failing_step == 0 and res.final == w
    steps = [RewriteStep(std3(), 0, RL), RewriteStep(std3(), 0, LR), RewriteStep(std3(), 5, LR)]
    assert check_derivation(w, steps) == (False, w, 2)


def test_derivation_text_round_trip():
    start = parse("3; s1 v2")
    steps = [RewriteStep(std3(2), 2, RL), RewriteStep(RelationId("Std10", (1, 3)), 1, RL)]
    text = format_derivation(start, steps)
    assert parse_derivation(text) == (start, steps)


def test_derivation_comments_and_errors():
    text = "# header\n3; s1\n\n# step\nStd3 1 RL 2\n"
    start, steps = parse_derivation(text)
    assert start == parse("3; s1") and steps == [RewriteStep(std3(2), 1, RL)]
    with pytest.raises(ValueError):
        parse_derivation("3; s1\nStd3 one LR 1\n")
    with pytest.raises(ValueError):
        parse_derivation("")


def test_verify_standard_five():
    r = verify_presentation("standard", 5)
    assert r.ok and r.checked == 198
    assert r.summary() == "all 198 instances pass"


def test_verify_reduced_four():
    r = verify_presentation("reduced", 4)
    assert r.ok and r.skipped == ()


def test_verify_small_degree_skips():
    r = verify_presentation("standard", 2)
    assert r.ok and r.checked == 15
    assert "Std1" in r.skipped and "Std2" in r.skipped
    with pytest.raises(ValueError):
        verify_presentation("standard", 1)
    with pytest.raises(ValueError):
        verify_presentation("other", 3)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.parametrize("which", ["standard", "reduced", "standard+aux"])
def test_sweep_against_oracle(which, n):
    from conftest import strand_oracle

    assert verify_presentation(which, n).ok
    for rel in instances(RULESETS[which], n):
        lhs, rhs = instantiate(rel, n)
        assert strand_oracle(lhs) == strand_oracle(rhs), rel
