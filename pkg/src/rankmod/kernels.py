"""Array kernels with a numba path and a plain numpy/Python path.

Each public function dispatches at call time: the compiled variant is used
unless numba is missing or ``RANKMOD_DISABLE_JIT`` is set.  Kernels take and
return numpy arrays only; values are 1-based permutation entries.
"""

from __future__ import annotations

import numpy as np

from ._jit import jit_enabled, njit

# ---------------------------------------------------------------- materialize


def _materialize_py(start, ipos, jpos):
    n = start.shape[0]
    m = jpos.shape[0]
    out = np.empty((m, n), dtype=np.int16)
    cur = start.astype(np.int16).copy()
    for r in range(m):
        out[r, :] = cur
        i = ipos[r] - 1
        j = jpos[r] - 1
        v = cur[j]
        for q in range(j, i, -1):
            cur[q] = cur[q - 1]
        cur[i] = v
    return out, cur


_materialize_nb = njit(_materialize_py)


def materialize(start, ipos, jpos):
    """Walk the transitions ``t_{ipos[r] ^ jpos[r]}`` from ``start``.

    Returns ``(rows, final)`` where ``rows[r]`` is the codeword before step r
    and ``final`` is the permutation after the last step.
    """
    start = np.ascontiguousarray(start, dtype=np.int16)
    ipos = np.ascontiguousarray(ipos, dtype=np.int64)
    jpos = np.ascontiguousarray(jpos, dtype=np.int64)
    if jit_enabled():
        return _materialize_nb(start, ipos, jpos)
    return _materialize_py(start, ipos, jpos)


# ------------------------------------------------------------ pairwise d_inf


@njit
def _min_linf_nb(rows, stop_below):
    m, n = rows.shape
    best = 1 << 30
    ba = -1
    bb = -1
    for a in range(m):
        for b in range(a + 1, m):
            d = 0
            for q in range(n):
                x = rows[a, q] - rows[b, q]
                if x < 0:
                    x = -x
                if x > d:
                    d = x
                    if d >= best:
                        break
            if d < best:
                best = d
                ba = a
                bb = b
                if best < stop_below:
                    return best, ba, bb
    return best, ba, bb


def _min_linf_np(rows, stop_below):
    m = rows.shape[0]
    best, ba, bb = 1 << 30, -1, -1
    r = rows.astype(np.int32)
    for a in range(m - 1):
        d = np.abs(r[a + 1 :] - r[a]).max(axis=1)
        k = int(d.argmin())
        if d[k] < best:
            best, ba, bb = int(d[k]), a, a + 1 + k
            if best < stop_below:
                break
    return best, ba, bb


def min_pairwise_linf(rows, stop_below: int = 0):
    """Smallest d_inf over distinct row pairs and one pair attaining it.

    The scan stops early once a pair closer than ``stop_below`` is seen.
    Returns ``(dist, a, b)``; with fewer than two rows ``dist`` is a large
    sentinel and the indices are -1.
    """
    rows = np.ascontiguousarray(rows, dtype=np.int16)
    if jit_enabled():
        best, a, b = _min_linf_nb(rows, stop_below)
    else:
        best, a, b = _min_linf_np(rows, stop_below)
    return int(best), int(a), int(b)


# ------------------------------------------------------------ lehmer ranks


@njit
def _lex_rank_nb(rows):
    m, n = rows.shape
    out = np.empty(m, dtype=np.int64)
    for r in range(m):
        acc = 0
        for i in range(n):
            c = 0
            for j in range(i + 1, n):
                if rows[r, j] < rows[r, i]:
                    c += 1
            acc = acc * (n - i) + c
        out[r] = acc
    return out


def _lex_rank_np(rows):
    m, n = rows.shape
    acc = np.zeros(m, dtype=np.int64)
    for i in range(n):
        c = (rows[:, i + 1 :] < rows[:, i : i + 1]).sum(axis=1)
        acc = acc * (n - i) + c
    return acc


def lex_ranks(rows):
    """Lexicographic (Lehmer) rank of each row; exact for n <= 20."""
    rows = np.ascontiguousarray(rows, dtype=np.int16)
    if rows.shape[1] > 20:
        raise ValueError("lexicographic ranks overflow int64 beyond n = 20")
    if jit_enabled():
        return _lex_rank_nb(rows)
    return _lex_rank_np(rows)


# ------------------------------------------------------------ cycle search


def _cycle_search_py(succ, pred_ptr, pred_idx, start, length, first_gen, must_gen, blocked, budget):
    n_nodes, n_gen = succ.shape
    path_gen = np.full(length, -1, dtype=np.int64)
    visited = np.zeros(n_nodes, dtype=np.bool_)
    excl = blocked.copy()
    inav = np.zeros(n_nodes, dtype=np.int64)
    outav = np.zeros(n_nodes, dtype=np.int64)
    nfree = 0
    for v in range(n_nodes):
        if blocked[v]:
            continue
        nfree += 1
        for g in range(n_gen):
            w = succ[v, g]
            if not blocked[w]:
                outav[v] += 1
                inav[w] += 1
    slack = nfree - length
    if slack < 0 or length < 2 or blocked[start]:
        return 0, path_gen, 0
    path = np.zeros(length, dtype=np.int64)
    next_g = np.zeros(length, dtype=np.int64)
    log = np.zeros(n_nodes, dtype=np.int64)
    log_mark = np.zeros(length, dtype=np.int64)
    uses = np.zeros(n_gen, dtype=np.int64)
    log_top = 0
    nex = 0
    expanded = 0
    path[0] = start
    visited[start] = True
    depth = 0
    while depth >= 0:
        u = path[depth]
        if depth == length - 1:
            for g in range(n_gen):
                if succ[u, g] == start and (must_gen < 0 or g == must_gen or uses[must_gen] > 0):
                    path_gen[depth] = g
                    return 1, path_gen, expanded
            depth -= 1
            descend = False
        else:
            descend = False
            g = next_g[depth]
            while g < n_gen:
                cand = g
                g += 1
                if depth == 0 and first_gen >= 0 and cand != first_gen:
                    continue
                w = succ[u, cand]
                if visited[w] or excl[w]:
                    continue
                expanded += 1
                if budget > 0 and expanded > budget:
                    return -1, path_gen, expanded
                next_g[depth] = g
                path_gen[depth] = cand
                uses[cand] += 1
                log_mark[depth] = log_top
                for h in range(n_gen):
                    x = succ[u, h]
                    if h != cand and x != w:
                        inav[x] -= 1
                        if not visited[x] and not excl[x] and inav[x] == 0:
                            excl[x] = True
                            nex += 1
                            log[log_top] = x
                            log_top += 1
                visited[w] = True
                for e in range(pred_ptr[w], pred_ptr[w + 1]):
                    p = pred_idx[e]
                    outav[p] -= 1
                    if not visited[p] and not excl[p] and outav[p] == 0:
                        excl[p] = True
                        nex += 1
                        log[log_top] = p
                        log_top += 1
                if nex <= slack and inav[start] > 0:
                    descend = True
                    depth += 1
                    path[depth] = w
                    next_g[depth] = 0
                    break
                # pruned: undo this move and try the next generator
                for e in range(pred_ptr[w], pred_ptr[w + 1]):
                    outav[pred_idx[e]] += 1
                visited[w] = False
                for h in range(n_gen):
                    x = succ[u, h]
                    if h != cand and x != w:
                        inav[x] += 1
                uses[cand] -= 1
                while log_top > log_mark[depth]:
                    log_top -= 1
                    excl[log[log_top]] = False
                    nex -= 1
            if not descend:
                depth -= 1
        if descend:
            continue
        if depth < 0:
            break
        # undo the move taken at the new tip
        u = path[depth]
        cand = path_gen[depth]
        w = succ[u, cand]
        for e in range(pred_ptr[w], pred_ptr[w + 1]):
            outav[pred_idx[e]] += 1
        visited[w] = False
        for h in range(n_gen):
            x = succ[u, h]
            if h != cand and x != w:
                inav[x] += 1
        uses[cand] -= 1
        while log_top > log_mark[depth]:
            log_top -= 1
            excl[log[log_top]] = False
            nex -= 1
    return 0, path_gen, expanded


_cycle_search_nb = njit(_cycle_search_py)


def cycle_search(succ, pred_ptr, pred_idx, start, length, first_gen=-1, must_gen=-1, blocked=None, budget=0):
    """Depth-first search for a directed cycle through ``start`` of ``length`` nodes.

    ``succ[v, g]`` is the node reached from v by generator g.  Generators are
    tried in index order, so the first cycle found is the lexicographically
    smallest generator word.  Returns ``(status, gens, expanded)`` with status
    1 (found), 0 (none exists) or -1 (node budget exhausted).
    """
    succ = np.ascontiguousarray(succ, dtype=np.int64)
    n = succ.shape[0]
    if blocked is None:
        blocked = np.zeros(n, dtype=np.bool_)
    args = (
        succ,
        np.ascontiguousarray(pred_ptr, dtype=np.int64),
        np.ascontiguousarray(pred_idx, dtype=np.int64),
        int(start),
        int(length),
        int(first_gen),
        int(must_gen),
        np.ascontiguousarray(blocked, dtype=np.bool_),
        int(budget),
    )
    fn = _cycle_search_nb if jit_enabled() else _cycle_search_py
    status, gens, expanded = fn(*args)
    return int(status), gens, int(expanded)


def warmup() -> None:
    """Compile (or load from the on-disk cache) every kernel on a tiny input."""
    if not jit_enabled():
        return
    start = np.array([1, 2, 3], dtype=np.int16)
    rows, _ = materialize(start, np.array([1, 1, 1]), np.array([3, 3, 3]))
    min_pairwise_linf(rows)
    lex_ranks(rows)
    succ = np.array([[1], [2], [0]])
    cycle_search(succ, np.array([0, 1, 2, 3]), np.array([2, 0, 1]), 0, 3, budget=10)
