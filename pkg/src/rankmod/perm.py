"""Permutations in one-line (vector) notation, push transitions and metrics.

All public values are 1-based: ``Permutation((4, 1, 5, 2, 6, 3))`` maps
1 -> 4, 2 -> 1 and so on.  Composition is right-to-left, ``(s * t)(k) = s(t(k))``,
so a push transition acts by right multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_STREAM_ORDER = 64


class DimensionError(ValueError):
    """Two operands live in symmetric groups of different order."""


class Permutation(tuple):
    """Immutable permutation of ``1..n`` stored as its vector notation."""

    __slots__ = ()

    def __new__(cls, values: Iterable[int]):
        vals = tuple(int(v) for v in values)
        n = len(vals)
        if n < 1:
            raise ValueError("a permutation needs n >= 1")
        if n > MAX_STREAM_ORDER:
            raise ValueError(f"order {n} exceeds the supported limit {MAX_STREAM_ORDER}")
        if sorted(vals) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {vals}")
        return tuple.__new__(cls, vals)

    @classmethod
    def trusted(cls, values) -> "Permutation":
        # Skips validation; callers guarantee bijectivity.
        return tuple.__new__(cls, values)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        if n < 1:
            raise ValueError("a permutation needs n >= 1")
        return tuple.__new__(cls, range(1, n + 1))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Read the space-separated format, e.g. ``"4 1 5 2 6 3"``."""
        return cls(int(tok) for tok in text.replace(",", " ").split())

    @property
    def n(self) -> int:
        return len(self)

    def __call__(self, k: int) -> int:
        return self[k - 1]

    def __mul__(self, other):
        if isinstance(other, Permutation):
            return compose(self, other)
        return NotImplemented

    def __str__(self) -> str:
        return " ".join(map(str, self))

    def __repr__(self) -> str:
        return f"Permutation([{', '.join(map(str, self))}])"

    def inverse(self) -> "Permutation":
        return inverse(self)

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self, 1))


def _check_same(a: Sequence[int], b: Sequence[int]) -> None:
    if len(a) != len(b):
        raise DimensionError(f"orders differ: {len(a)} vs {len(b)}")


def compose(sigma: Sequence[int], tau: Sequence[int]) -> Permutation:
    _check_same(sigma, tau)
    return Permutation.trusted(sigma[t - 1] for t in tau)


def inverse(sigma: Sequence[int]) -> Permutation:
    out = [0] * len(sigma)
    for i, v in enumerate(sigma, 1):
        out[v - 1] = i
    return Permutation.trusted(out)


def cycles(sigma: Sequence[int]) -> list[tuple[int, ...]]:
    """Disjoint cycle decomposition, fixed points included."""
    seen = [False] * len(sigma)
    out = []
    for s in range(len(sigma)):
        if seen[s]:
            continue
        cyc = []
        j = s
        while not seen[j]:
            seen[j] = True
            cyc.append(j + 1)
            j = sigma[j] - 1
        out.append(tuple(cyc))
    return out


def sign(sigma: Sequence[int]) -> int:
    """+1 for even permutations, -1 for odd ones.  Linear time."""
    seen = bytearray(len(sigma))
    parity = 0
    for s in range(len(sigma)):
        if seen[s]:
            continue
        j = s
        length = 0
        while not seen[j]:
            seen[j] = 1
            j = sigma[j] - 1
            length += 1
        parity ^= (length - 1) & 1
    return -1 if parity else 1


def is_even(sigma: Sequence[int]) -> bool:
    return sign(sigma) == 1


def transposition(a: int, b: int, n: int) -> Permutation:
    """The permutation (a, b) of order n."""
    if not (1 <= a <= n and 1 <= b <= n):
        raise IndexError(f"transposition ({a},{b}) outside 1..{n}")
    vals = list(range(1, n + 1))
    vals[a - 1], vals[b - 1] = b, a
    return Permutation.trusted(vals)


def cycle_perm(points: Sequence[int], n: int) -> Permutation:
    """The cycle ``(p1, p2, ..., pr)`` sending p1 -> p2 -> ... -> pr -> p1."""
    vals = list(range(1, n + 1))
    r = len(points)
    for idx, p in enumerate(points):
        vals[p - 1] = points[(idx + 1) % r]
    return Permutation(vals)


def push(sigma: Sequence[int], j: int, i: int = 1) -> Permutation:
    """Move the element at index j to index i (1 <= i <= j); shift the rest down."""
    if not 1 <= i <= j <= len(sigma):
        raise IndexError(f"push {i}<-{j} outside 1..{len(sigma)}")
    s = tuple(sigma)
    return Permutation.trusted(s[: i - 1] + (s[j - 1],) + s[i - 1 : j - 1] + s[j:])


def push_down(sigma: Sequence[int], j: int) -> Permutation:
    """Move the element at index j to the last index."""
    if not 1 <= j <= len(sigma):
        raise IndexError(f"index {j} outside 1..{len(sigma)}")
    s = tuple(sigma)
    return Permutation.trusted(s[: j - 1] + s[j:] + (s[j - 1],))


@dataclass(frozen=True)
class Transition:
    """A push-to-index move ``t_{i^j}`` (``down=False``) or a push-to-the-bottom move ``t_{vj}``."""

    j: int
    i: int = 1
    down: bool = False

    def __post_init__(self):
        if self.down:
            if self.j < 1:
                raise ValueError("push-to-the-bottom index must be >= 1")
        elif not 1 <= self.i < self.j:
            raise ValueError(f"push-to-index needs 1 <= i < j, got i={self.i}, j={self.j}")

    @classmethod
    def up(cls, j: int, i: int = 1) -> "Transition":
        return cls(j=j, i=i)

    @classmethod
    def bottom(cls, j: int) -> "Transition":
        return cls(j=j, down=True)

    def __call__(self, sigma: Sequence[int]) -> Permutation:
        return apply_transition(self, sigma)

    def __str__(self) -> str:
        if self.down:
            return f"t_v{self.j}"
        return f"t_^{self.j}" if self.i == 1 else f"t_{self.i}^{self.j}"


def apply_transition(t: Transition, sigma: Sequence[int]) -> Permutation:
    if t.j > len(sigma):
        raise IndexError(f"{t} does not act on order {len(sigma)}")
    return push_down(sigma, t.j) if t.down else push(sigma, t.j, t.i)


def run(start: Sequence[int], seq: Iterable[int]) -> list[Permutation]:
    """Codewords visited by the push-to-the-top indices ``seq`` from ``start``.

    The final element (reached after the last transition) is not included, so
    a cyclic code yields exactly its codeword list.
    """
    cur = Permutation(start)
    out = [cur]
    for j in seq:
        cur = push(cur, j)
        out.append(cur)
    out.pop()
    return out


def dist_linf(sigma: Sequence[int], tau: Sequence[int]) -> int:
    _check_same(sigma, tau)
    return max(abs(a - b) for a, b in zip(sigma, tau))


def _kendall_naive(sigma, tau) -> int:
    n = len(sigma)
    return sum(
        1
        for a in range(n)
        for b in range(a + 1, n)
        if (sigma[a] < sigma[b]) != (tau[a] < tau[b])
    )


def _count_inversions(seq: list[int]) -> tuple[list[int], int]:
    """Merge sort returning (sorted copy, inversion count)."""
    if len(seq) < 2:
        return list(seq), 0
    mid = len(seq) // 2
    left, a = _count_inversions(seq[:mid])
    right, b = _count_inversions(seq[mid:])
    merged = []
    inv = a + b
    x = y = 0
    while x < len(left) and y < len(right):
        if left[x] <= right[y]:
            merged.append(left[x])
            x += 1
        else:
            merged.append(right[y])
            inv += len(left) - x
            y += 1
    merged.extend(left[x:])
    merged.extend(right[y:])
    return merged, inv


def dist_kendall(sigma: Sequence[int], tau: Sequence[int], method: str = "fast") -> int:
    """Kendall tau distance: pairs of indices ordered differently by sigma and tau.

    ``method="naive"`` is the quadratic pair count; the default sorts sigma's
    order out and counts inversions of tau along it in O(n log n).
    """
    _check_same(sigma, tau)
    if method == "naive":
        return _kendall_naive(sigma, tau)
    if method != "fast":
        raise ValueError(f"unknown method {method!r}")
    order = sorted(range(len(sigma)), key=lambda i: sigma[i])
    return _count_inversions([tau[i] for i in order])[1]
