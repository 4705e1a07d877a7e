"""Compare the numba and numpy paths of the strand-tracing kernels.

    python3 benchmarks/bench_kernels.py [--words 20000] [--seed 0]

Both paths are run on the same seeded corpus; their outputs are checked for
equality before timings are reported.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from stvb import _kernels
from stvb.corpus import random_words


def _best(fn, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--words", type=int, default=20_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    words = [(w.degree, w.codes) for w in random_words(args.seed, args.words, max_degree=8, max_length=40)]
    codes, lengths, degrees = _kernels.pack(words)

    _kernels.batch_closure_numba(codes[:2], lengths[:2], degrees[:2])  # compile outside the timing
    t_numba, r_numba = _best(lambda: _kernels.batch_closure_numba(codes, lengths, degrees))
    t_numpy, r_numpy = _best(lambda: _kernels.batch_closure_numpy(codes, lengths, degrees))
    for a, b in zip(r_numba, r_numpy):
        assert np.array_equal(a, b), "numba and numpy batch kernels disagree"

    jit_trace = _kernels._jit(_kernels._trace_signed)
    arrays = [(np.asarray(c, np.int64), n) for n, c in words[:2000]]
    jit_trace(*arrays[0])
    t_jit, _ = _best(lambda: [jit_trace(c, n) for c, n in arrays])
    t_py, _ = _best(lambda: [_kernels._trace_signed(c, n) for c, n in arrays], repeat=2)

    print(f"batch closure, {len(words)} words: numba {t_numba * 1e3:8.2f} ms   numpy {t_numpy * 1e3:8.2f} ms")
    print(f"signed trace, {len(arrays)} words:   numba {t_jit * 1e3:8.2f} ms   python {t_py * 1e3:8.2f} ms")
    print(f"active path for library calls: {'numba' if _kernels.USE_NUMBA else 'numpy/python'}")


if __name__ == "__main__":
    main()
