"""Ranking (codeword -> index) and unranking (index -> codeword).

A codeword is ``parent o shift_j(c)`` at each level j, where ``c`` is a
codeword of the level's auxiliary code acting on the indices of block j plus
one.  So ranks are mixed-radix numbers whose digits are the auxiliary ranks;
the digit for level 1 is the least significant.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Sequence

from .aux import AuxCode, NotInCode
from .lmrm import LmrmCode, rankable_factor_closed_form
from .perm import Permutation

__all__ = [
    "NotInCode",
    "RankableCode",
    "rank",
    "rank_aux",
    "rankable_size",
    "unrank",
]


def rank_aux(aux: AuxCode, pi: Sequence[int]) -> int:
    return aux.rank(pi)


def _local(lv, sigma) -> list[int]:
    k = lv.width
    s = lv.start
    c = [0] * (k + 1)
    seen = [False] * (k + 2)
    for q in range(2, k + 2):
        x = lv.alpha.get(sigma[s + q - 1], k + 1)
        if seen[x]:
            raise NotInCode(tuple(sigma))
        seen[x] = True
        c[q - 1] = x
    c[0] = next(x for x in range(1, k + 2) if not seen[x])
    return c


def rank(code: LmrmCode, sigma: Sequence[int]) -> int:
    """0-based index of sigma in enumeration order; raises NotInCode."""
    if len(sigma) != code.n:
        raise ValueError("order mismatch")
    digits = [lv.aux.rank(_local(lv, sigma)) for lv in code.levels]
    if code.base is not None:
        s = code.base_start
        block = code.params.blocks[-1]
        alpha = {v: q for q, v in enumerate(block, 1)}
        kb = len(block)
        cw = [0] * kb
        seen = [False] * (kb + 1)
        for q in range(2, kb + 1):
            x = alpha.get(sigma[s + q - 1])
            if x is None or seen[x]:
                raise NotInCode(tuple(sigma))
            seen[x] = True
            cw[q - 1] = x
        cw[0] = next(x for x in range(1, kb + 1) if not seen[x])
        p = code.base.rank(cw)
    else:
        p = 0
    for lv, ell in zip(reversed(code.levels), reversed(digits)):
        m = lv.aux.size
        p = (m * p + ell - (m if ell else 0)) % code.tier_sizes[lv.index - 1]
    if _unrank(code, p) != tuple(sigma):
        raise NotInCode(tuple(sigma))
    return p


def _unrank(code: LmrmCode, m: int) -> Permutation:
    digits = []
    p = m
    for lv in code.levels:
        size = lv.aux.size
        ell = p % size
        p = (p // size + (1 if ell else 0)) % code.tier_sizes[lv.index]
        digits.append(ell)
    s0 = code.sigma0
    out = list(s0)
    if code.base is not None:
        s = code.base_start
        cw = code.base.unrank(p)
        for q, x in enumerate(cw, 1):
            out[s + q - 1] = s0[s + x - 1]
    for lv, ell in zip(reversed(code.levels), reversed(digits)):
        c = lv.aux.unrank(ell)
        s = lv.start
        window = out[s : s + lv.width + 1]
        for q, x in enumerate(c, 1):
            out[s + q - 1] = window[x - 1]
    return Permutation.trusted(out)


def unrank(code: LmrmCode, m: int) -> Permutation:
    if not 0 <= m < code.size:
        raise ValueError(f"rank {m} outside 0..{code.size - 1}")
    return _unrank(code, m)


def rankable_size(k: int) -> int:
    """Size of the rankable auxiliary code for a class of size k (order k+1)."""
    if k < 2:
        raise ValueError("class size must be >= 2")
    from .aux import catalog_size

    return catalog_size(k + 1, rankable=True)


def rankable_size_closed_form(k: int):
    """Closed-form rankable size for order k+1, as used for rate tables."""
    return rankable_factor_closed_form(k + 1)


@dataclass(frozen=True)
class RankableCode:
    """A code built with rankable auxiliary codes, plus its digit bases."""

    code: LmrmCode

    def __post_init__(self):
        if not self.code.params.rankable:
            raise ValueError("build the code with rankable=True")

    @property
    def digit_bases(self) -> tuple[int, ...]:
        base = factorial(self.code.base.order) if self.code.base else 1
        return (base,) + tuple(lv.aux.size for lv in reversed(self.code.levels))

    @property
    def total(self) -> int:
        return self.code.size

    def rank(self, sigma) -> int:
        return rank(self.code, sigma)

    def unrank(self, m: int) -> Permutation:
        return unrank(self.code, m)
