"""Time each kernel with numba and with the plain fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]

Both paths run in this process; the fallback is selected by setting
RANKMOD_DISABLE_JIT for the duration of its measurement.  Outputs are
compared, so a mismatch aborts the run.
"""

from __future__ import annotations

import argparse
import os
import time

import numpy as np

from rankmod import kernels
from rankmod.lmrm import CodeParams, construct
from rankmod.search import push_graph

FLAG = "RANKMOD_DISABLE_JIT"


def _timed(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def _both(fn, repeat):
    os.environ.pop(FLAG, None)
    fast, a = _timed(fn, repeat)
    os.environ[FLAG] = "1"
    try:
        slow, b = _timed(fn, repeat)
    finally:
        os.environ.pop(FLAG, None)
    return fast, slow, a, b


def _same(a, b):
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def cases(quick: bool):
    code = construct(CodeParams(9, 3) if quick else CodeParams(11, 3))
    ipos, jpos = code.transition_arrays()
    start = np.array(code.sigma0)
    rows = construct(CodeParams(8, 3) if quick else CodeParams(9, 3)).materialize()
    big = code.materialize()
    g = push_graph(5, (3, 5))
    s0 = g.node((1, 2, 3, 4, 5))
    blocked = np.zeros(len(g.nodes), dtype=np.bool_)
    budget = 20_000 if quick else 200_000
    return [
        (f"materialize  M={code.size}", lambda: kernels.materialize(start, ipos, jpos)),
        (f"min_linf     M={len(rows)}", lambda: kernels.min_pairwise_linf(rows)[0]),
        (f"lex_ranks    M={len(big)}", lambda: kernels.lex_ranks(big)),
        (
            f"cycle_search budget={budget}",
            lambda: kernels.cycle_search(g.succ, g.pred_ptr, g.pred_idx, s0, 58, 1, -1, blocked, budget)[::2],
        ),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller inputs")
    a = ap.parse_args(argv)
    kernels.warmup()
    print(f"{'kernel':<30} {'numba (s)':>10} {'fallback (s)':>13} {'speedup':>8}")
    for name, fn in cases(a.quick):
        fast, slow, x, y = _both(fn, a.repeat)
        if not _same(x, y):
            raise SystemExit(f"{name}: paths disagree")
        print(f"{name:<30} {fast:>10.4f} {slow:>13.4f} {slow / max(fast, 1e-9):>7.1f}x")


if __name__ == "__main__":
    main()
