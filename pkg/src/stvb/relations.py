"""Relation schemas of the standard and reduced presentations.

Each schema is an equation between two words, parameterised by strand
indices ``i`` (and ``j``).  Labels:

* ``Std1`` .. ``Std23``: standard presentation.  The source lists 22
  relations; the numbering here keeps the twisted singular relation at 23 and
  leaves 22 unassigned.
* ``Def24`` .. ``Def26``: the substitutions expressing s_i, t_i, g_i through
  s_1, t_1, g_1 and virtual letters.
* ``Red27`` .. ``Red45``: reduced presentation.
* ``Aux46``: the virtual identity (v_1..v_{i-1}) v_i (v_{i-1}..v_1) =
  (v_i..v_2) v_1 (v_2..v_i).

Labels with a ``-`` suffix are the inverse-letter counterparts of relations
mentioning s_i (``Std1+-`` mixes signs).  They follow from the listed
relations once S_i is a two-sided inverse of s_i, and make the inverse
letters usable in bounded search without detours through longer words.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator

from .errors import IllegalParams
from .word import BraidWord, Generator, S, g, s, t, v

__all__ = [
    "RelationId",
    "Schema",
    "SCHEMAS",
    "RULESETS",
    "instantiate",
    "instances",
    "schema",
    "ruleset_labels",
]

Letters = tuple[Generator, ...]


@dataclass(frozen=True, order=True)
class RelationId:
    label: str
    params: tuple[int, ...] = ()

    def __str__(self) -> str:
        if not self.params:
            return self.label
        names = ("i", "j")
        inner = ", ".join(f"{names[k]}={p}" for k, p in enumerate(self.params))
        return f"{self.label}({inner})"


@dataclass(frozen=True)
class Schema:
    label: str
    arity: int
    # yields every parameter tuple legal at degree n, in a fixed order
    ranges: Callable[[int], Iterator[tuple[int, ...]]]
    sides: Callable[..., tuple[Letters, Letters]]
    condition: str = ""
    doc: str = field(default="", compare=False)

    def legal(self, n: int, params: tuple[int, ...]) -> bool:
        return tuple(params) in _legal_params(self.label, n)


def _r(lo: int, hi: int) -> range:
    return range(lo, hi + 1)


def _one(lo_fn, hi_fn):
    def ranges(n):
        for i in _r(lo_fn(n), hi_fn(n)):
            yield (i,)
    return ranges


def _pairs(i_hi, j_hi, cond):
    def ranges(n):
        for i in _r(1, i_hi(n)):
            for j in _r(1, j_hi(n)):
                if cond(i, j):
                    yield (i, j)
    return ranges


def _fixed(min_degree):
    def ranges(n):
        if n >= min_degree:
            yield ()
    return ranges


def _far(i, j):
    return abs(i - j) > 1


def _off(i, j):
    # j is the bar index, i the crossing index
    return j not in (i, i + 1)


def _desc(hi: int, lo: int) -> Letters:
    """v_hi v_{hi-1} ... v_lo (empty when hi < lo)."""
    return tuple(v(k) for k in range(hi, lo - 1, -1))


def _asc(lo: int, hi: int) -> Letters:
    return tuple(v(k) for k in range(lo, hi + 1))


def _reduction(i: int, core: Generator) -> Letters:
    return _desc(i - 1, 1) + _desc(i, 2) + (core,) + _asc(2, i) + _asc(1, i - 1)


def _flip_sign(letters: Letters) -> Letters:
    return tuple(S(x.index) if x.kind == 0 else s(x.index) if x.kind == 1 else x for x in letters)


def _rev_inv(letters: Letters) -> Letters:
    return _flip_sign(tuple(reversed(letters)))


NM1 = lambda n: n - 1  # noqa: E731
NM2 = lambda n: n - 2  # noqa: E731
N = lambda n: n  # noqa: E731
ONE = lambda n: 1  # noqa: E731


_TABLE: list[Schema] = []


def _add(label, arity, ranges, sides, condition=""):
    _TABLE.append(Schema(label, arity, ranges, sides, condition))


# --- standard presentation -------------------------------------------------

_add("Std1", 2, _pairs(NM1, NM1, _far), lambda i, j: ((s(i), s(j)), (s(j), s(i))), "|i-j|>1")
_add("Std2", 1, _one(ONE, NM2), lambda i: ((s(i), s(i + 1), s(i)), (s(i + 1), s(i), s(i + 1))))
_add("Std3", 1, _one(ONE, NM1), lambda i: ((v(i), v(i)), ()))
_add("Std4", 2, _pairs(NM1, NM1, _far), lambda i, j: ((v(i), v(j)), (v(j), v(i))), "|i-j|>1")
_add("Std5", 1, _one(ONE, NM2), lambda i: ((v(i), v(i + 1), v(i)), (v(i + 1), v(i), v(i + 1))))
_add("Std6", 2, _pairs(NM1, NM1, _far), lambda i, j: ((s(i), v(j)), (v(j), s(i))), "|i-j|>1")
_add("Std7", 1, _one(ONE, NM2), lambda i: ((v(i), s(i + 1), v(i)), (v(i + 1), s(i), v(i + 1))))
_add("Std8", 1, _one(ONE, N), lambda i: ((g(i), g(i)), ()))
_add("Std9", 2, _pairs(N, N, lambda i, j: True), lambda i, j: ((g(i), g(j)), (g(j), g(i))))
_add("Std10", 2, _pairs(NM1, N, _off), lambda i, j: ((g(j), v(i)), (v(i), g(j))), "j!=i,i+1")
_add("Std11", 2, _pairs(NM1, N, _off), lambda i, j: ((s(i), g(j)), (g(j), s(i))), "j!=i,i+1")
_add("Std12", 1, _one(ONE, NM1), lambda i: ((g(i + 1), v(i)), (v(i), g(i))))
_add(
    "Std13", 1, _one(ONE, NM1),
    lambda i: ((v(i), s(i), v(i)), (g(i + 1), g(i), s(i), g(i), g(i + 1))),
)
_add("Std14", 1, _one(ONE, NM1), lambda i: ((s(i), S(i)), ()))
_add("Std15", 2, _pairs(NM1, NM1, _far), lambda i, j: ((t(i), t(j)), (t(j), t(i))), "|i-j|>1")
_add("Std16", 2, _pairs(NM1, NM1, _far), lambda i, j: ((s(i), t(j)), (t(j), s(i))), "|i-j|>1")
_add("Std17", 1, _one(ONE, NM1), lambda i: ((s(i), t(i)), (t(i), s(i))))
_add("Std18", 1, _one(ONE, NM2), lambda i: ((s(i), s(i + 1), t(i)), (t(i + 1), s(i), s(i + 1))))
_add("Std19", 2, _pairs(NM1, NM1, _far), lambda i, j: ((t(i), v(j)), (v(j), t(i))), "|i-j|>1")
_add("Std20", 1, _one(ONE, NM2), lambda i: ((v(i), t(i + 1), v(i)), (v(i + 1), t(i), v(i + 1))))
_add("Std21", 2, _pairs(NM1, N, _off), lambda i, j: ((t(i), g(j)), (g(j), t(i))), "j!=i,i+1")
_add(
    "Std23", 1, _one(ONE, NM1),
    lambda i: ((v(i), t(i), v(i)), (g(i + 1), g(i), t(i), g(i), g(i + 1))),
)


def _variant(base: str, label: str, transform):
    src = next(sc for sc in _TABLE if sc.label == base)

    def sides(*params, _src=src):
        lhs, rhs = _src.sides(*params)
        return transform(lhs, rhs)

    _add(label, src.arity, src.ranges, sides, src.condition)


def _signs(lhs, rhs):
    return _flip_sign(lhs), _flip_sign(rhs)


def _revinv(lhs, rhs):
    return _rev_inv(lhs), _rev_inv(rhs)


for _base in ("Std1", "Std2", "Std6", "Std7", "Std11", "Std13", "Std14", "Std16", "Std17"):
    _variant(_base, _base + "-", _signs)
_variant("Std18", "Std18-", _revinv)
_add("Std1+-", 2, _pairs(NM1, NM1, _far), lambda i, j: ((s(i), S(j)), (S(j), s(i))), "|i-j|>1")


# --- substitutions ---------------------------------------------------------

_add("Def24", 1, _one(lambda n: 2, NM1), lambda i: ((s(i),), _reduction(i, s(1))))
_add("Def24-", 1, _one(lambda n: 2, NM1), lambda i: ((S(i),), _reduction(i, S(1))))
_add("Def25", 1, _one(lambda n: 2, NM1), lambda i: ((t(i),), _reduction(i, t(1))))
_add(
    "Def26", 1, _one(lambda n: 2, N),
    lambda i: ((g(i),), _desc(i - 1, 1) + (g(1),) + _asc(1, i - 1)),
)


# --- reduced presentation --------------------------------------------------

_W30 = (v(2), v(3), v(1), v(2), s(1), v(2), v(1), v(3), v(2))
_W42T = (v(2), v(3), v(1), v(2), t(1), v(2), v(1), v(3), v(2))
_S2 = (v(1), v(2), s(1), v(2), v(1))
_T2 = (v(1), v(2), t(1), v(2), v(1))

_add("Red27", 1, _one(ONE, NM1), lambda i: ((v(i), v(i)), ()))
_add("Red28", 2, _pairs(NM1, NM1, _far), lambda i, j: ((v(i), v(j)), (v(j), v(i))), "|i-j|>1")
_add("Red29", 1, _one(ONE, NM2), lambda i: ((v(i), v(i + 1), v(i)), (v(i + 1), v(i), v(i + 1))))
_add("Red30", 0, _fixed(4), lambda: ((s(1),) + _W30, _W30 + (s(1),)))
_add(
    "Red31", 0, _fixed(3),
    lambda: (
        (v(1), s(1), v(1), v(2), s(1), v(2), v(1), s(1), v(1)),
        (v(2), s(1), v(2), v(1), s(1), v(1), v(2), s(1), v(2)),
    ),
)
_add("Red32", 1, _one(lambda n: 3, NM1), lambda j: ((s(1), v(j)), (v(j), s(1))))
_add("Red33", 0, _fixed(1), lambda: ((g(1), g(1)), ()))
_add("Red34", 1, _one(lambda n: 2, NM1), lambda j: ((g(1), v(j)), (v(j), g(1))))
_add("Red35", 0, _fixed(2), lambda: ((g(1), v(1), g(1), v(1)), (v(1), g(1), v(1), g(1))))
_add("Red36", 0, _fixed(3), lambda: ((g(1),) + _S2, _S2 + (g(1),)))
_add("Red37", 0, _fixed(2), lambda: ((g(1), v(1), g(1), s(1), g(1), v(1), g(1)), (s(1),)))
_add("Red38", 0, _fixed(2), lambda: ((s(1), S(1)), ()))
_add("Red39", 0, _fixed(2), lambda: ((s(1), t(1)), (t(1), s(1))))
_add("Red40", 1, _one(lambda n: 3, NM1), lambda i: ((t(1), v(i)), (v(i), t(1))))
_add("Red41", 0, _fixed(3), lambda: ((t(1),) + _S2 + (s(1),), _S2 + (s(1),) + _T2))
_add("Red42", 0, _fixed(4), lambda: ((t(1),) + _W30, _W30 + (t(1),)))
_add("Red43", 0, _fixed(4), lambda: ((t(1),) + _W42T, _W42T + (t(1),)))
_add("Red44", 0, _fixed(3), lambda: ((g(1),) + _T2, _T2 + (g(1),)))
_add("Red45", 0, _fixed(2), lambda: ((g(1), v(1), g(1), t(1), g(1), v(1), g(1)), (t(1),)))
_add("Red38-", 0, _fixed(2), lambda: ((S(1), s(1)), ()))

# --- auxiliary identity ----------------------------------------------------

_add("Aux46", 1, _one(ONE, NM1), lambda i: (_asc(1, i - 1) + (v(i),) + _desc(i - 1, 1), _desc(i, 2) + (v(1),) + _asc(2, i)))


SCHEMAS: dict[str, Schema] = {sc.label: sc for sc in _TABLE}
_ORDER = {sc.label: k for k, sc in enumerate(_TABLE)}

_STANDARD = tuple(sc.label for sc in _TABLE if sc.label.startswith("Std"))
_REDUCED = tuple(sc.label for sc in _TABLE if sc.label.startswith("Red"))

RULESETS: dict[str, tuple[str, ...]] = {
    "standard": _STANDARD,
    "reduced": _REDUCED,
    "standard+aux": _STANDARD + ("Aux46",),
}


def ruleset_labels(name: str) -> tuple[str, ...]:
    try:
        return RULESETS[name]
    except KeyError:
        raise ValueError(f"unknown ruleset {name!r}; choose from {sorted(RULESETS)}") from None


def schema(label: str) -> Schema:
    try:
        return SCHEMAS[label]
    except KeyError:
        raise IllegalParams(f"unknown relation label {label!r}") from None


def label_order(label: str) -> int:
    return _ORDER[label]


@lru_cache(maxsize=None)
def _legal_params(label: str, n: int) -> frozenset:
    return frozenset(SCHEMAS[label].ranges(n))


@lru_cache(maxsize=None)
def _sides(label: str, params: tuple[int, ...]) -> tuple[Letters, Letters]:
    return SCHEMAS[label].sides(*params)


def instantiate(rel: RelationId, n: int) -> tuple[BraidWord, BraidWord]:
    """Both sides of ``rel`` as words of degree ``n``."""
    sc = schema(rel.label)
    params = tuple(rel.params)
    if len(params) != sc.arity:
        raise IllegalParams(f"{rel.label} takes {sc.arity} parameter(s), got {len(params)}")
    if not sc.legal(n, params):
        cond = f" ({sc.condition})" if sc.condition else ""
        raise IllegalParams(f"{rel} is not legal at degree {n}{cond}")
    lhs, rhs = _sides(rel.label, params)
    return BraidWord(n, lhs), BraidWord(n, rhs)


def instances(labels, n: int) -> Iterator[RelationId]:
    """Every legal instance of the given labels at degree ``n``, in table order."""
    for label in sorted(labels, key=label_order):
        for params in SCHEMAS[label].ranges(n):
            yield RelationId(label, params)


def all_labels() -> tuple[str, ...]:
    return tuple(sc.label for sc in _TABLE)
