"""Deterministic searches for push-to-the-top cycles inside the alternating group."""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

import numpy as np

from . import kernels
from .perm import is_even, push

BUDGET_ENV = "RANKMOD_SEARCH_BUDGET"
DEFAULT_BUDGET = 200_000_000


class SearchFailure(RuntimeError):
    """No cycle satisfies the request (``exhausted=True``) or the budget ran out."""

    def __init__(self, message: str, exhausted: bool, expanded: int = 0):
        super().__init__(message)
        self.exhausted = exhausted
        self.expanded = expanded


def search_budget() -> int:
    raw = os.environ.get(BUDGET_ENV, "").strip()
    if not raw:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from exc
    if value < 0:
        raise ValueError(f"{BUDGET_ENV} must be non-negative")
    return value


@dataclass(frozen=True)
class PushGraph:
    """Cayley-style digraph on the even permutations of order k."""

    k: int
    gens: tuple[int, ...]
    nodes: tuple[tuple[int, ...], ...]
    index: dict
    succ: np.ndarray
    pred_ptr: np.ndarray
    pred_idx: np.ndarray

    def node(self, perm) -> int:
        return self.index[tuple(perm)]


@lru_cache(maxsize=None)
def push_graph(k: int, gens: tuple[int, ...]) -> PushGraph:
    if any(j % 2 == 0 or j < 3 or j > k for j in gens):
        raise ValueError(f"generators must be odd indices in 3..{k}: {gens}")
    nodes = tuple(p for p in permutations(range(1, k + 1)) if is_even(p))
    index = {p: i for i, p in enumerate(nodes)}
    succ = np.array([[index[tuple(push(p, j))] for j in gens] for p in nodes], dtype=np.int64)
    order = np.argsort(succ.ravel(), kind="stable")
    pred_idx = (order // len(gens)).astype(np.int64)
    counts = np.bincount(succ.ravel(), minlength=len(nodes))
    pred_ptr = np.concatenate(([0], np.cumsum(counts))).astype(np.int64)
    return PushGraph(k, gens, nodes, index, succ, pred_ptr, pred_idx)


def search_cycle(
    k: int,
    length: int,
    gens: tuple[int, ...] | None = None,
    first: int | None = None,
    must_use: int | None = None,
    blocked=(),
    budget: int | None = None,
) -> tuple[int, ...]:
    """Lexicographically first cycle of ``length`` codewords through the identity.

    Transitions are ``t_{^j}`` for j in ``gens`` (default: every odd j <= k),
    the first one is ``first`` (default k), and ``blocked`` permutations are
    never visited.  Raises :class:`SearchFailure` otherwise.
    """
    gens = tuple(sorted(gens)) if gens else tuple(range(3, k + 1, 2))
    first = k if first is None else first
    g = push_graph(k, gens)
    mask = np.zeros(len(g.nodes), dtype=np.bool_)
    for p in blocked:
        mask[g.node(p)] = True
    start = g.node(range(1, k + 1))
    budget = search_budget() if budget is None else budget
    status, path, expanded = kernels.cycle_search(
        g.succ,
        g.pred_ptr,
        g.pred_idx,
        start,
        length,
        gens.index(first),
        -1 if must_use is None else gens.index(must_use),
        mask,
        budget,
    )
    if status == 1:
        return tuple(gens[x] for x in path)
    if status == 0:
        raise SearchFailure(f"no cycle of length {length} in A_{k} under the constraints", True, expanded)
    raise SearchFailure(f"search budget of {budget} expansions exhausted", False, expanded)


def merge_hamiltonian(k: int, gens: tuple[int, ...] | None = None, max_switch: int = 8) -> tuple[int, ...]:
    """Hamiltonian cycle on A_k by merging a cycle cover.

    Start from the cover where every node uses the largest generator, then
    repeatedly reroute an alternating cycle of nodes (each node swaps its
    outgoing generator so the set of targets is preserved).  Switches that
    join distinct cover cycles are taken greedily; when those run out, longer
    even-length switches are tried until a single cycle remains.  Fully
    deterministic.  Returns the generator word starting at the identity.
    """
    gens = tuple(sorted(gens)) if gens else tuple(range(3, k + 1, 2))
    g = push_graph(k, gens)
    succ = g.succ.tolist()
    n = len(succ)
    ng = len(gens)
    choice = [ng - 1] * n

    def cover():
        cid = [-1] * n
        c = 0
        for s in range(n):
            if cid[s] < 0:
                u = s
                while cid[u] < 0:
                    cid[u] = c
                    u = succ[u][choice[u]]
                c += 1
        return cid, c

    def owners():
        own = [0] * n
        for u in range(n):
            own[succ[u][choice[u]]] = u
        return own

    def merge_switch(cid, own, depth):
        def rec(path, used, newg):
            u = path[-1]
            for h in range(ng):
                if h == choice[u]:
                    continue
                tgt = succ[u][h]
                if tgt == succ[path[0]][choice[path[0]]]:
                    if len(path) >= 2:
                        return path, newg + [h]
                    continue
                v = own[tgt]
                if cid[v] in used or len(path) >= depth:
                    continue
                r = rec(path + [v], used | {cid[v]}, newg + [h])
                if r:
                    return r
            return None

        for u in range(n):
            r = rec([u], {cid[u]}, [])
            if r:
                return r
        return None

    def apply(sw):
        for u, h in zip(*sw):
            choice[u] = h

    def count_after(sw):
        old = [choice[u] for u in sw[0]]
        apply(sw)
        c = cover()[1]
        for u, h in zip(sw[0], old):
            choice[u] = h
        return c

    def joining_switch(own, depth):
        def rec(path, newg):
            u = path[-1]
            for h in range(ng):
                if h == choice[u]:
                    continue
                tgt = succ[u][h]
                if tgt == succ[path[0]][choice[path[0]]]:
                    if len(path) % 2 == 0 and count_after((path, newg + [h])) == 1:
                        return path, newg + [h]
                    continue
                v = own[tgt]
                if v in path or len(path) >= depth:
                    continue
                r = rec(path + [v], newg + [h])
                if r:
                    return r
            return None

        for u in range(n):
            r = rec([u], [])
            if r:
                return r
        return None

    while True:
        cid, c = cover()
        if c == 1:
            break
        sw = merge_switch(cid, owners(), 4)
        if sw is None:
            if c != 2:
                raise SearchFailure(f"cycle-cover merge stalled at {c} cycles", False)
            sw = None
            for depth in range(2, max_switch + 1, 2):
                sw = joining_switch(owners(), depth)
                if sw:
                    break
            if sw is None:
                raise SearchFailure("cycle-cover merge stalled at 2 cycles", False)
        apply(sw)
    start = g.node(range(1, k + 1))
    word = []
    u = start
    for _ in range(n):
        word.append(gens[choice[u]])
        u = succ[u][choice[u]]
    assert u == start
    return tuple(word)
