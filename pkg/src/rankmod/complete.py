"""Complete cyclic push-to-the-top Gray codes over S_n.

The code of order n is built from the one of order n-1: every transition
``t_{^i}`` of the smaller code becomes ``t_{^(n+1-i)}`` followed by n-1 copies
of ``t_{^n}``.  Each block of n codewords is one rotation class, which makes
both ranking and unranking a short recursion on n.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterator, Sequence

from .perm import Permutation, push

MAX_MATERIALIZE_ORDER = 10


@lru_cache(maxsize=None)
def complete_sequence(n: int) -> tuple[int, ...]:
    """Generating word (the j of each ``t_{^j}``) of the order-n code."""
    if n < 1:
        raise ValueError(f"invalid order {n}")
    if n == 1:
        return ()
    if n == 2:
        return (2, 2)
    out = []
    tail = [n] * (n - 1)
    for i in complete_sequence(n - 1):
        out.append(n + 1 - i)
        out.extend(tail)
    return tuple(out)


def rank_complete_perm(sigma: Sequence[int]) -> int:
    """0-based position of sigma in the order-n complete code."""
    len(sigma)
    rank = 0
    mult = 1
    # iterative form of: rank_n = (n * rank_{n-1}(child) - shift) mod n!
    stack = []
    cur = list(sigma)
    while len(cur) > 1:
        m = len(cur)
        p = cur.index(1)
        shift = (m - p) % m
        rho = cur[p:] + cur[:p]
        child = [m + 1 - rho[m - i] for i in range(1, m)]
        stack.append((m, shift))
        cur = child
    for m, shift in reversed(stack):
        rank = (rank * m - shift) % (mult * m)
        mult *= m
    return rank


def unrank_complete_perm(n: int, m: int) -> Permutation:
    if not 0 <= m < factorial(n):
        raise ValueError(f"rank {m} outside 0..{factorial(n) - 1}")
    shifts = []
    size = n
    while size > 1:
        if m % size == 0:
            m, s = m // size, 0
        else:
            m, s = m // size + 1, size - m % size
        m %= factorial(size - 1)
        shifts.append(s)
        size -= 1
    cur = [1]
    for size, s in zip(range(2, n + 1), reversed(shifts)):
        rho = [1] + [0] * (size - 1)
        for i in range(1, size):
            rho[size - i] = size + 1 - cur[i - 1]
        cur = rho[s:] + rho[:s]
    return Permutation.trusted(cur)


@dataclass(frozen=True)
class CompleteCode:
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"invalid order {self.order}")

    @property
    def size(self) -> int:
        return factorial(self.order)

    @property
    def sequence(self) -> tuple[int, ...]:
        return complete_sequence(self.order)

    @property
    def start(self) -> Permutation:
        return Permutation.identity(self.order)

    def __iter__(self) -> Iterator[Permutation]:
        cur = self.start
        yield cur
        seq = self.sequence
        for j in seq[:-1]:
            cur = push(cur, j)
            yield cur

    def __len__(self) -> int:
        return self.size

    def materialize(self) -> list[Permutation]:
        if self.order > MAX_MATERIALIZE_ORDER:
            raise ValueError(f"order {self.order} is beyond the materialization limit")
        return list(self)

    def rank(self, sigma: Sequence[int]) -> int:
        if len(sigma) != self.order:
            raise ValueError("order mismatch")
        return rank_complete_perm(sigma)

    def unrank(self, m: int) -> Permutation:
        return unrank_complete_perm(self.order, m)


def complete_code(n: int) -> CompleteCode:
    return CompleteCode(n)


def rank_complete(code: CompleteCode, sigma: Sequence[int]) -> int:
    return code.rank(sigma)


def unrank_complete(code: CompleteCode, m: int) -> Permutation:
    return code.unrank(m)
