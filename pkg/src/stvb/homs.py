"""Homomorphic images of words that are constant on equivalence classes.

The signed permutation records where each strand ends up and how many bars
(mod 2) it picked up on the way; it lives in the wreath product
``Z_2^n x| S_n``.  Crossings of every kind swap two positions, a bar ``g_i``
flips the parity of whichever strand currently occupies position ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .word import BraidWord, Kind

__all__ = [
    "SignedPermutation",
    "InvariantRecord",
    "underlying_permutation",
    "signed_permutation",
    "invariants",
    "invariants_of_codes",
    "INVARIANT_FIELDS",
]


@dataclass(frozen=True)
class SignedPermutation:
    """``perm[k-1]`` is the bottom position of the strand entering at top ``k``;
    ``bars[p-1]`` is the bar parity of the strand leaving at bottom ``p``."""

    perm: tuple[int, ...]
    bars: tuple[int, ...]

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(1, n + 1)):
            raise ValueError(f"{self.perm} is not a permutation of 1..{n}")
        if len(self.bars) != n or any(b not in (0, 1) for b in self.bars):
            raise ValueError("bars must be n bits")

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(1, n + 1)), (0,) * n)

    @property
    def degree(self) -> int:
        return len(self.perm)

    def then(self, other: "SignedPermutation") -> "SignedPermutation":
        """Trace through ``self`` and continue through ``other`` (stacked below)."""
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        perm = tuple(other.perm[p - 1] for p in self.perm)
        bars = [0] * self.degree
        for p in range(1, self.degree + 1):
            q = other.perm[p - 1]
            bars[q - 1] = self.bars[p - 1] ^ other.bars[q - 1]
        return SignedPermutation(perm, tuple(bars))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            cyc = []
            k = start
            while k not in seen:
                seen.add(k)
                cyc.append(k)
                k = self.perm[k - 1]
            out.append(tuple(cyc))
        return out


INVARIANT_FIELDS = ("perm", "bars", "sigma_exponent", "tau_count", "v_parity", "gamma_parity")


@dataclass(frozen=True)
class InvariantRecord:
    signed: SignedPermutation
    sigma_exponent: int
    tau_count: int
    v_parity: int
    gamma_parity: int

    def field(self, name: str):
        if name == "perm":
            return self.signed.perm
        if name == "bars":
            return self.signed.bars
        return getattr(self, name)

    def first_difference(self, other: "InvariantRecord") -> str | None:
        for name in INVARIANT_FIELDS:
            if self.field(name) != other.field(name):
                return name
        return None

    def to_json(self) -> dict:
        return {
            "perm": list(self.signed.perm),
            "bars": list(self.signed.bars),
            "sigmaExp": self.sigma_exponent,
            "tauCount": self.tau_count,
            "vParity": self.v_parity,
            "gammaParity": self.gamma_parity,
        }


def invariants_of_codes(degree: int, codes) -> InvariantRecord:
    perm, bars, sig, tau, vpar, gpar = _kernels.trace_signed(np.asarray(codes, np.int64), degree)
    signed = SignedPermutation(tuple(int(p) + 1 for p in perm), tuple(int(b) for b in bars))
    return InvariantRecord(signed, int(sig), int(tau), int(vpar), int(gpar))


def underlying_permutation(w: BraidWord) -> tuple[int, ...]:
    """Images of 1..n under the strand permutation (1-based)."""
    pos = list(range(w.degree))
    at = list(range(w.degree))
    for kind, idx in w.letters:
        if kind == Kind.GAMMA:
            continue
        at[idx - 1], at[idx] = at[idx], at[idx - 1]
    for p, strand in enumerate(at):
        pos[strand] = p + 1
    return tuple(pos)


def signed_permutation(w: BraidWord) -> SignedPermutation:
    return invariants_of_codes(w.degree, w.codes).signed


def invariants(w: BraidWord) -> InvariantRecord:
    return invariants_of_codes(w.degree, w.codes)
