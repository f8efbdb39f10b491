"""Single-error-detecting Gray codes for the Kendall tau metric in S_{2m+2}.

2m parity-preserving blocks, one per coset of the order-(2m+1) alternating
group picked out by the frame permutations, are joined by odd bridges.  No two
codewords differ by one adjacent transposition.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from math import factorial
from typing import Sequence

from .aux import Unsupported, build_phi_frame, pull, rotate_word
from .perm import Permutation, compose, inverse, push, run
from .search import BUDGET_ENV, SearchFailure, push_graph, search_cycle


@dataclass(frozen=True)
class HSnakeBlock:
    m: int
    word: tuple[int, ...]  # generating word in S_{2m+1}, from the identity
    excluded: Permutation  # representative of the skipped t_^(2m-1) orbit

    @property
    def size(self) -> int:
        return len(self.word)


def _orbit(p: Sequence[int], j: int) -> list[tuple[int, ...]]:
    out = [tuple(p)]
    while True:
        nxt = tuple(push(out[-1], j))
        if nxt == out[0]:
            return out
        out.append(nxt)


def search_hsnake_block(m: int, budget: int | None = None) -> HSnakeBlock:
    """Cycle through all of A_{2m+1} except one ``t_^(2m-1)`` orbit.

    Orbits are tried in lexicographic order of their smallest element; the
    identity's own orbit is skipped since the cycle starts there.
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    if m >= 3 and budget is None and not os.environ.get(BUDGET_ENV):
        raise Unsupported(f"searching A_{2 * m + 1} is off by default; pass a budget or set {BUDGET_ENV}")
    k = 2 * m + 1
    a = 2 * m - 1
    g = push_graph(k, (a, k))
    target = factorial(k) // 2 - a
    ident = tuple(range(1, k + 1))
    seen = set(_orbit(ident, a))
    reps = []
    for node in g.nodes:  # already in lexicographic order
        if node in seen:
            continue
        orb = _orbit(node, a)
        seen.update(orb)
        reps.append((min(orb), orb))
    last = None
    for rep, orb in sorted(reps):
        try:
            word = search_cycle(k, target, gens=(a, k), first=k, must_use=a, blocked=orb, budget=budget)
        except SearchFailure as exc:
            last = exc
            continue
        return HSnakeBlock(m, word, Permutation(rep))
    raise SearchFailure(f"no admissible block in A_{k}", True) from last


def _embed(p: Sequence[int], n: int) -> Permutation:
    return Permutation.trusted(tuple(p) + tuple(range(len(p) + 1, n + 1)))


@dataclass(frozen=True)
class PHat:
    r: int
    word: tuple[int, ...]
    codewords: tuple[Permutation, ...]
    sigma_tilde: Permutation


def build_phat(m: int, r: int, block: HSnakeBlock) -> PHat:
    """The r-th translated block: starts at pi_hat_r and avoids sigma_tilde_r."""
    k = 2 * m + 2
    a = 2 * m - 1
    frame = build_phi_frame(m)
    ph = frame.pi_hat[r]
    words = run(ph, block.word)
    sig_hat = compose(ph, _embed(block.excluded, k))
    sig_tilde = pull(ph, 2 * m + 1)
    g = compose(sig_tilde, inverse(sig_hat))
    words = [compose(g, w) for w in words]
    try:
        idx = words.index(ph)
    except ValueError:
        raise AssertionError(f"block {r} misses its frame permutation") from None
    words = words[idx:] + words[:idx]
    word = rotate_word(block.word, idx)
    if word[-1] != a or words[-1] != pull(ph, a):
        raise AssertionError(f"block {r} does not close with t_^{a}")
    want = k if r == 0 else 2 * m + 1 - r
    if any(w[-1] != want for w in words):
        raise AssertionError(f"block {r} has a non-constant last element")
    if sig_tilde in set(words):
        raise AssertionError(f"block {r} contains sigma_tilde")
    return PHat(r, word, tuple(words), sig_tilde)


@dataclass(frozen=True, eq=False)
class SnakeCode:
    order: int
    word: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.word)

    @cached_property
    def codewords(self) -> tuple[Permutation, ...]:
        return tuple(run(Permutation.identity(self.order), self.word))


def snake_size(m: int) -> int:
    return (2 * m) * factorial(2 * m + 2) // ((2 * m + 2) * 2) - (2 * m - 2) * 2 * m


def build_snake(m: int = 2, block: HSnakeBlock | None = None) -> SnakeCode:
    k = 2 * m + 2
    if block is None:
        block = search_hsnake_block(m)
    word: list[int] = []
    for r in range(2 * m):
        p = build_phat(m, r, block)
        word.extend(p.word[:-1])
        word.extend((k, k))
    return SnakeCode(k, tuple(word))


@dataclass
class SnakeReport:
    ok: bool
    size: int
    checks: dict
    witness: object = None

    def __bool__(self):
        return self.ok


def verify_snake(codewords: Sequence[Sequence[int]], method: str = "hash") -> SnakeReport:
    """Distinct, cyclic push-to-the-top, and no two codewords that differ
    by swapping two neighbouring entries (``sigma = tau o (i, i+1)``).
    ``method="naive"`` compares all pairs."""
    words = [tuple(w) for w in codewords]
    n = len(words[0])
    checks = {"distinct": len(set(words)) == len(words)}
    gray = True
    for a, b in zip(words, words[1:] + words[:1]):
        if not any(tuple(push(a, j)) == b for j in range(2, n + 1)):
            gray = False
            break
    checks["cyclic_gray"] = gray
    witness = None
    if method == "hash":
        # report the same pair as the naive scan: smallest x, then smallest y > x
        where = {w: i for i, w in enumerate(words)}
        for x, w in enumerate(words):
            hits = []
            for i in range(1, n):
                v = list(w)
                v[i - 1], v[i] = v[i], v[i - 1]
                y = where.get(tuple(v))
                if y is not None and y > x:
                    hits.append((y, i))
            if hits:
                y, i = min(hits)
                witness = (x, y, i)
                break
    elif method == "naive":
        for x in range(len(words)):
            for y in range(x + 1, len(words)):
                a, b = words[x], words[y]
                diff = [q for q in range(n) if a[q] != b[q]]
                if len(diff) == 2 and diff[1] == diff[0] + 1:
                    witness = (x, y, diff[0] + 1)
                    break
            if witness:
                break
    else:
        raise ValueError(f"unknown method {method!r}")
    checks["spread"] = witness is None
    return SnakeReport(all(checks.values()), len(words), checks, witness)
