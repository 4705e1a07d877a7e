"""Strand-tracing kernels.

Every invariant in the package reduces to walking strands through a word
letter by letter.  The single-word kernels below are compiled with numba when
it is available; set ``STVB_NUMBA=0`` to run them as plain Python instead.
The batch kernels additionally have a vectorised numpy implementation that is
used whenever numba is disabled.

Letter codes follow :mod:`stvb.word`: ``code = 8 * index + kind`` with kinds
0 = s, 1 = S, 2 = v, 3 = t, 4 = g.
"""

from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised implicitly
    import numba
except ImportError:  # pragma: no cover
    numba = None


def _flag_enabled() -> bool:
    value = os.environ.get("STVB_NUMBA", "1").strip().lower()
    return value not in {"0", "false", "no", "off"}


USE_NUMBA = numba is not None and _flag_enabled()


def _maybe_jit(func):
    if USE_NUMBA:
        return numba.njit(cache=True)(func)
    return func


def _jit(func):
    """Always-compiled variant, used by the benchmark to compare both paths."""
    if numba is None:  # pragma: no cover
        return func
    return numba.njit(cache=True)(func)


# -- single word -------------------------------------------------------------

def _trace_signed(codes, n):
    # at[p] = strand (by top position) currently at position p
    at = np.arange(n)
    bar = np.zeros(n, np.int64)
    sig = 0
    tau = 0
    vcount = 0
    gcount = 0
    for c in codes:
        kind = c & 7
        i = (c >> 3) - 1
        if kind == 4:
            bar[at[i]] ^= 1
            gcount += 1
            continue
        if kind == 0:
            sig += 1
        elif kind == 1:
            sig -= 1
        elif kind == 2:
            vcount += 1
        else:
            tau += 1
        tmp = at[i]
        at[i] = at[i + 1]
        at[i + 1] = tmp
    perm = np.empty(n, np.int64)
    bars = np.empty(n, np.int64)
    for p in range(n):
        perm[at[p]] = p
        bars[p] = bar[at[p]]
    return perm, bars, sig, tau, vcount & 1, gcount & 1


def _closure_stats(codes, n):
    at = np.arange(n)
    bar = np.zeros(n, np.int64)
    sing = np.zeros(n, np.int64)
    tau = 0
    for c in codes:
        kind = c & 7
        i = (c >> 3) - 1
        if kind == 4:
            bar[at[i]] ^= 1
            continue
        if kind == 3:
            sing[at[i]] += 1
            sing[at[i + 1]] += 1
            tau += 1
        tmp = at[i]
        at[i] = at[i + 1]
        at[i + 1] = tmp
    # strand k leaves at bottom position end[k] and re-enters as strand end[k]
    end = np.empty(n, np.int64)
    for p in range(n):
        end[at[p]] = p
    comp = np.full(n, -1, np.int64)
    ncomp = 0
    for k in range(n):
        if comp[k] >= 0:
            continue
        j = k
        while comp[j] < 0:
            comp[j] = ncomp
            j = end[j]
        ncomp += 1
    comp_bar = np.zeros(ncomp, np.int64)
    comp_sing = np.zeros(ncomp, np.int64)
    for k in range(n):
        comp_bar[comp[k]] ^= bar[k]
        comp_sing[comp[k]] += sing[k]
    return comp, comp_bar, comp_sing, tau


trace_signed = _maybe_jit(_trace_signed)
closure_stats = _maybe_jit(_closure_stats)


# -- batches -----------------------------------------------------------------

def _batch_closure_loop(codes, lengths, degrees):
    m = codes.shape[0]
    ncomp = np.zeros(m, np.int64)
    nodd = np.zeros(m, np.int64)
    ntau = np.zeros(m, np.int64)
    for r in range(m):
        comp, comp_bar, comp_sing, tau = _closure_stats_inner(codes[r, : lengths[r]], degrees[r])
        ncomp[r] = comp_bar.shape[0]
        nodd[r] = comp_bar.sum()
        ntau[r] = tau
    return ncomp, nodd, ntau


def batch_closure_numpy(codes, lengths, degrees):
    """Vectorised over words: component count, odd-bar components, tau count.

    ``codes`` is a zero-padded ``(m, L)`` int array, ``lengths`` and
    ``degrees`` have shape ``(m,)``.
    """
    codes = np.asarray(codes, np.int64)
    lengths = np.asarray(lengths, np.int64)
    degrees = np.asarray(degrees, np.int64)
    m, width = codes.shape
    nmax = int(degrees.max()) if m else 1
    rows = np.arange(m)
    at = np.tile(np.arange(nmax), (m, 1))
    bar = np.zeros((m, nmax), np.int64)
    ntau = np.zeros(m, np.int64)
    for col in range(width):
        c = codes[:, col]
        live = col < lengths
        kind = c & 7
        i = (c >> 3) - 1
        gam = live & (kind == 4)
        if gam.any():
            r = rows[gam]
            bar[r, at[r, i[gam]]] ^= 1
        cross = live & (kind != 4)
        if cross.any():
            r = rows[cross]
            ii = i[cross]
            left = at[r, ii].copy()
            at[r, ii] = at[r, ii + 1]
            at[r, ii + 1] = left
        ntau += live & (kind == 3)
    end = np.empty_like(at)
    end[rows[:, None], at] = np.arange(nmax)[None, :]
    # label every strand by the smallest strand on its cycle (pointer jumping)
    label = np.tile(np.arange(nmax), (m, 1))
    hop = end.copy()
    for _ in range(int(np.ceil(np.log2(max(nmax, 2)))) + 1):
        label = np.minimum(label, np.take_along_axis(label, hop, axis=1))
        hop = np.take_along_axis(hop, hop, axis=1)
    valid = np.arange(nmax)[None, :] < degrees[:, None]
    is_root = valid & (label == np.arange(nmax)[None, :])
    ncomp = is_root.sum(axis=1)
    parity = np.zeros((m, nmax), np.int64)
    np.add.at(parity, (np.repeat(rows, nmax), label.ravel()), np.where(valid, bar, 0).ravel())
    nodd = ((parity & 1) * is_root).sum(axis=1)
    return ncomp, nodd, ntau


_closure_stats_inner = _jit(_closure_stats)
batch_closure_numba = _jit(_batch_closure_loop)


def batch_closure(codes, lengths, degrees):
    if USE_NUMBA:
        return batch_closure_numba(
            np.asarray(codes, np.int64), np.asarray(lengths, np.int64), np.asarray(degrees, np.int64)
        )
    return batch_closure_numpy(codes, lengths, degrees)


def pack(words):
    """Pack ``(degree, codes)`` pairs into the padded arrays the batch kernels take."""
    m = len(words)
    width = max((len(c) for _, c in words), default=0)
    arr = np.zeros((m, max(width, 1)), np.int64)
    lengths = np.zeros(m, np.int64)
    degrees = np.zeros(m, np.int64)
    for r, (deg, codes) in enumerate(words):
        arr[r, : len(codes)] = codes
        lengths[r] = len(codes)
        degrees[r] = deg
    return arr, lengths, degrees
