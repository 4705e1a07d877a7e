import pytest
from hypothesis import given, strategies as st

from stvb.errors import DegreeMismatch, IndexOutOfRange, MalformedHeader, NotInvertible, UnknownToken
from stvb.word import (
    BraidWord,
    Generator,
    Kind,
    S,
    compose,
    decode,
    encode,
    format_word,
    g,
    identity,
    invert,
    iota,
    parse,
    s,
    t,
    v,
)

from conftest import TAU_FREE, words


def test_parse_inverse_letter():
    w = parse("2; s1 S1")
    assert w.degree == 2
    assert w.letters == (s(1), S(1))


def test_parse_mixed_letters():
    w = parse("3; v1 s2 g3")
    assert w == BraidWord(3, (v(1), s(2), g(3)))


def test_parse_rejects_tau_out_of_range():
    with pytest.raises(IndexOutOfRange):
        parse("2; t2")


@pytest.mark.parametrize("text", ["2 s1", "; s1", "x; s1", "0; ", ""])
def test_parse_bad_header(text):
    with pytest.raises(MalformedHeader):
        parse(text)


@pytest.mark.parametrize("text", ["2; x1", "2; s", "2; s1,", "2; s-1", "2; ss1"])
def test_parse_bad_token(text):
    with pytest.raises(UnknownToken):
        parse(text)


def test_gamma_reaches_last_strand_but_crossings_do_not():
    assert parse("3; g3").letters == (g(3),)
    with pytest.raises(IndexOutOfRange):
        parse("3; v3")
    with pytest.raises(IndexOutOfRange):
        parse("3; g4")
    with pytest.raises(IndexOutOfRange):
        parse("3; s0")


def test_whitespace_is_flexible():
    assert parse("  3 ;v1\t  s2\n g3 ") == parse("3; v1 s2 g3")


def test_format_identity_and_word():
    assert format_word(identity(3)) == "3;"
    assert format_word(BraidWord(3, (g(1), v(2)))) == "3; g1 v2"
    assert str(parse("2;   s1  S1")) == "2; s1 S1"


def test_compose():
    assert compose(parse("2; s1"), parse("2;")) == parse("2; s1")
    assert compose(parse("2; v1"), parse("2; v1")) == parse("2; v1 v1")
    with pytest.raises(DegreeMismatch):
        compose(parse("2; s1"), parse("3; s2"))


def test_invert_examples():
    assert invert(parse("2; s1 v1")) == parse("2; v1 S1")
    assert invert(parse("3; g1 g2")) == parse("3; g2 g1")
    with pytest.raises(NotInvertible):
        invert(parse("2; t1"))


def test_iota_examples():
    assert iota(parse("2; s1"), 0, 1) == parse("3; s1")
    assert compose(iota(parse("2; s1"), 0, 1), parse("3; s2")) == parse("3; s1 s2")
    assert iota(parse("2; s1"), 1, 0) == parse("3; s2")
    assert iota(identity(1), 2, 3) == identity(6)


def test_word_is_immutable_and_hashable():
    w = parse("2; s1")
    with pytest.raises(AttributeError):
        w.degree = 3
    assert len({w, parse("2; s1"), parse("2; S1")}) == 2


def test_generator_codes_round_trip():
    for kind in Kind:
        for i in range(1, 9):
            x = Generator(kind, i)
            assert Generator.from_code(x.code) == x
    assert decode(encode((s(1), t(2), g(3)))) == (s(1), t(2), g(3))


def test_tau_has_no_inverse():
    with pytest.raises(NotInvertible):
        t(1).inverse()


@given(words())
def test_parse_format_round_trip(w):
    assert parse(format_word(w)) == w


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(words(degree=n), words(degree=n), words(degree=n))))
def test_compose_associative_with_unit(abc):
    a, b, c = abc
    assert compose(compose(a, b), c) == compose(a, compose(b, c))
    e = identity(a.degree)
    assert compose(e, a) == a == compose(a, e)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(words(degree=n, kinds=TAU_FREE), words(degree=n, kinds=TAU_FREE))))
def test_invert_involution_and_antihomomorphism(ab):
    a, b = ab
    assert invert(invert(a)) == a
    assert invert(compose(a, b)) == compose(invert(b), invert(a))


@given(words(), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_iota_composes_additively(w, a, b, c, d):
    assert iota(iota(w, a, b), c, d) == iota(w, a + c, b + d)
