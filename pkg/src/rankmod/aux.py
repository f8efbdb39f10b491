"""Auxiliary push-to-the-top codes of order k.

An auxiliary code never contains both sigma and ``(q, k) o sigma`` for
q < k.  Four families are provided:

* ``trivial3`` and ``searched``: parity-preserving codes found by search;
* ``flip``: the even-order expansion of a complete code of order k-2;
* ``stitched``: 2m-1 translated copies of an order-(2m+1) code joined by
  odd bridge permutations, for even k = 2m+2;
* ``certificate``: any word loaded from file and verified.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import factorial
from pathlib import Path
from typing import Mapping, Sequence

from .complete import complete_sequence, rank_complete_perm, unrank_complete_perm
from .perm import Permutation, compose, is_even, push, run, sign, transposition
from .search import SearchFailure, merge_hamiltonian, search_cycle

FAMILIES = ("trivial3", "searched", "flip", "stitched", "certificate")


class Unsupported(RuntimeError):
    """The requested code needs a building block that is not available."""


class NotInCode(KeyError):
    pass


def pull(sigma: Sequence[int], j: int) -> Permutation:
    """Inverse of ``t_{^j}``: move the first element to index j."""
    s = tuple(sigma)
    return Permutation.trusted(s[1:j] + (s[0],) + s[j:])


def rotate_word(word: Sequence[int], shift: int) -> tuple[int, ...]:
    shift %= len(word)
    return tuple(word[shift:]) + tuple(word[:shift])


@dataclass(frozen=True, eq=False)
class AuxCode:
    """Cyclic push-to-the-top code starting at the identity."""

    order: int
    family: str
    word: tuple[int, ...]
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def size(self) -> int:
        return len(self.word)

    def __len__(self) -> int:
        return len(self.word)

    @cached_property
    def codewords(self) -> tuple[Permutation, ...]:
        return tuple(run(Permutation.identity(self.order), self.word))

    @cached_property
    def _index(self) -> dict:
        return {w: i for i, w in enumerate(self.codewords)}

    @property
    def parity_preserving(self) -> bool:
        return self.family in ("trivial3", "searched") or bool(self.meta.get("parity_preserving"))

    def contains(self, pi: Sequence[int]) -> bool:
        """Exact membership (the decoder's validity oracle)."""
        if len(pi) != self.order:
            raise ValueError(f"expected order {self.order}, got {len(pi)}")
        if self.family == "flip":
            return flip_member(pi)
        if self.parity_preserving and not is_even(pi):
            return False
        return tuple(pi) in self._index

    __contains__ = contains

    def rank(self, pi: Sequence[int]) -> int:
        if self.family == "flip":
            if not flip_member(pi):
                raise NotInCode(tuple(pi))
            return flip_rank(pi)
        try:
            return self._index[tuple(pi)]
        except KeyError:
            raise NotInCode(tuple(pi)) from None

    def unrank(self, m: int) -> Permutation:
        if not 0 <= m < self.size:
            raise ValueError(f"rank {m} outside 0..{self.size - 1}")
        if self.family == "flip":
            return flip_unrank(self.order, m)
        return self.codewords[m]


# ----------------------------------------------------------------------- flip


def flip_word(k: int) -> tuple[int, ...]:
    if k < 4 or k % 2:
        raise ValueError(f"flip codes need an even order >= 4, got {k}")
    tail = (k,) * (k - 1)
    out = []
    for i in complete_sequence(k - 2):
        # t_{vj} equals t_{^j} followed by k-1 copies of t_{^k}
        out.append(k + 1 - i)
        out.extend(tail)
    # the walk starts at t_^k(id); rotate back by one so it starts at id
    return rotate_word(out, -1)


def flip_member(pi: Sequence[int]) -> bool:
    """1 cyclically follows k in the vector notation."""
    k = len(pi)
    p = list(pi).index(k)
    return pi[(p + 1) % k] == 1


def flip_rank(pi: Sequence[int]) -> int:
    k = len(pi)
    size = factorial(k) // (k - 1)
    pos_k = list(pi).index(k) + 1
    s = (1 - pos_k) % k
    rho = tuple(pi[k - s :]) + tuple(pi[: k - s]) if s else tuple(pi)
    child = [k - rho[k - i] for i in range(1, k - 1)]
    return (rank_complete_perm(child) * k + 1 - s) % size


def flip_unrank(k: int, m: int) -> Permutation:
    size = factorial(k) // (k - 1)
    q = (m - 1) % size
    if q % k == 0:
        s, r = 0, q // k
    else:
        s = k - q % k
        r = (q + s) // k
    r %= factorial(k - 2)
    child = unrank_complete_perm(k - 2, r) if k > 2 else ()
    rho = [k, 1] + [0] * (k - 2)
    for i in range(1, k - 1):
        rho[k - i] = k - child[i - 1]
    return Permutation.trusted(rho[s:] + rho[:s])


def aux_flip(k: int) -> AuxCode:
    return AuxCode(k, "flip", flip_word(k))


# ------------------------------------------------------------------ searched


@lru_cache(maxsize=None)
def _searched_word(k: int, size: int, must_use: int | None) -> tuple[int, ...]:
    if size == factorial(k) // 2 and k >= 7:
        word = merge_hamiltonian(k)
        # left translation keeps the word, so rotating to a t_^k step re-anchors at id
        word = rotate_word(word, word.index(k))
        if must_use is not None and must_use not in word:
            raise SearchFailure(f"merged cycle avoids t_^{must_use}", False)
        return word
    return search_cycle(k, size, must_use=must_use)


def search_parity_preserving(
    k: int,
    target_size: int,
    must_use: Sequence[int] = (),
    excluded: Sequence[Sequence[int]] = (),
    end_transition: int | None = None,
) -> AuxCode:
    """Parity-preserving cyclic code of order k (odd) and the requested size.

    Starts at the identity with ``t_{^k}``.  ``must_use`` and
    ``end_transition`` demand transitions the cyclic word must contain (a
    cyclic word containing j can always be rotated to end with j).
    ``excluded`` permutations are never visited.
    """
    if k % 2 == 0 or k < 3:
        raise ValueError(f"parity-preserving search needs odd k >= 3, got {k}")
    if target_size > factorial(k) // 2:
        raise SearchFailure(f"{target_size} exceeds |A_{k}|", True)
    required = sorted(set(must_use) | ({end_transition} if end_transition else set()))
    must = required[0] if required else None
    if excluded:
        word = search_cycle(k, target_size, must_use=must, blocked=[tuple(p) for p in excluded])
    else:
        word = _searched_word(k, target_size, must)
    missing = [j for j in required if j not in word]
    if missing:
        raise SearchFailure(f"found cycle does not use t_^{missing}", False)
    family = "trivial3" if k == 3 and target_size == 3 else "searched"
    return AuxCode(k, family, word)


# ----------------------------------------------------------------- phi frame


@dataclass(frozen=True)
class PhiFrame:
    m: int
    pi_hat: tuple[Permutation, ...]
    bridges: tuple[Permutation, ...]

    @property
    def k(self) -> int:
        return 2 * self.m + 2

    def phi(self, pi: Sequence[int]) -> Permutation:
        return phi(pi, self.m)


def phi(pi: Sequence[int], m: int) -> Permutation:
    k = 2 * m + 2
    return push(push(pull(pi, 2 * m - 1), k), k)


def build_phi_frame(m: int) -> PhiFrame:
    if m < 2:
        raise ValueError("the frame needs m >= 2")
    k = 2 * m + 2
    hats = [Permutation.identity(k)]
    for _ in range(2 * m - 1):
        hats.append(phi(hats[-1], m))
    if not phi(hats[-1], m).is_identity():
        raise AssertionError("phi does not have order 2m")
    for r, h in enumerate(hats):
        want = k if r == 0 else 2 * m + 1 - r
        if h[-1] != want:
            raise AssertionError(f"pi_hat_{r} ends with {h[-1]}, expected {want}")
    bridges = tuple(pull(hats[r % (2 * m)], k) for r in range(1, 2 * m + 1))
    for b in bridges:
        if is_even(b) or b[-1] not in (1, 2 * m + 1):
            raise AssertionError(f"bad bridge {b}")
    return PhiFrame(m, tuple(hats), bridges)


# ------------------------------------------------------------------ stitched


def stitched_word(m: int, odd_word: Sequence[int]) -> tuple[int, ...]:
    k = 2 * m + 2
    a = 2 * m - 1
    if a not in odd_word:
        raise Unsupported(f"the order-{k - 1} building block never uses t_^{a}")
    last = max(i for i, j in enumerate(odd_word) if j == a)
    block = rotate_word(odd_word, last + 1)  # ends with t_^a
    word = [a] * (2 * m - 2) + [k, k]
    for _ in range(1, 2 * m):
        word.extend(block[:-1])
        word.extend((k, k))
    return rotate_word(word, 2 * m - 2)


def aux_stitched(k: int, odd: AuxCode | None = None) -> AuxCode:
    """Stitched auxiliary code of even order k = 2m+2 >= 6.

    ``odd`` is a parity-preserving order-(k-1) code; the largest available
    one is looked up when omitted.
    """
    if k < 6 or k % 2:
        raise ValueError(f"stitched codes need an even order >= 6, got {k}")
    m = (k - 2) // 2
    if odd is None:
        odd = odd_full_code(k - 1)
    if odd.order != k - 1 or not odd.parity_preserving:
        raise Unsupported("building block must be a parity-preserving code of order k-1")
    word = stitched_word(m, odd.word)
    frame = build_phi_frame(m)
    code = AuxCode(k, "stitched", word, {"m": m, "block": len(odd), "frame": frame})
    return code


def odd_full_code(k: int, certificates: Mapping[int, AuxCode] | None = None) -> AuxCode:
    """Largest parity-preserving code available at odd order k."""
    if certificates and k in certificates:
        return certificates[k]
    if k == 3:
        return search_parity_preserving(3, 3)
    if k == 5:
        return search_parity_preserving(5, 57, must_use=(3,))
    if k == 7:
        return search_parity_preserving(7, factorial(7) // 2, must_use=(5,))
    raise Unsupported(f"no parity-preserving code of order {k} without a certificate")


# ------------------------------------------------------------------- catalog


def catalog_size(k: int, rankable: bool = False, certificates: Mapping[int, AuxCode] | None = None) -> int:
    """Size of ``aux_catalog(k, rankable)`` without building it."""
    if k < 3:
        raise ValueError(f"auxiliary codes need k >= 3, got {k}")
    if k % 2:
        if certificates and k in certificates:
            return len(certificates[k])
        if k == 3:
            return 3
        if k == 5:
            return 57
        if k == 7:
            return factorial(7) // 2
        raise Unsupported(f"odd order {k} needs a certificate")
    if k == 4 or rankable:
        return factorial(k) // (k - 1)
    m = (k - 2) // 2
    try:
        block = catalog_size(k - 1, False, certificates)
    except Unsupported:
        return factorial(k) // (k - 1)
    return (2 * m - 1) * (block + 1) + 2 * m


def aux_catalog(k: int, rankable: bool = False, certificates: Mapping[int, AuxCode] | None = None) -> AuxCode:
    if k < 3:
        raise ValueError(f"auxiliary codes need k >= 3, got {k}")
    if k % 2:
        return odd_full_code(k, certificates)
    if k == 4 or rankable:
        return aux_flip(k)
    try:
        odd = odd_full_code(k - 1, certificates)
    except Unsupported:
        return aux_flip(k)
    return aux_stitched(k, odd)


# -------------------------------------------------------------- verification


@dataclass
class AuxReport:
    ok: bool
    size: int
    checks: dict
    witness: object = None
    message: str = ""

    def __bool__(self):
        return self.ok


def verify_aux(code: AuxCode | Sequence[Sequence[int]], word: Sequence[int] | None = None) -> AuxReport:
    """Check distinctness, cyclic Gray closure, start/first-move conventions,
    the auxiliary property and the size bound.

    Accepts an :class:`AuxCode` or a plain codeword list (then the Gray and
    convention checks infer transitions between consecutive entries).
    """
    if isinstance(code, AuxCode):
        words = list(code.codewords)
        word = code.word
    else:
        words = [Permutation(w) for w in code]
    k = len(words[0])
    checks = {}
    witness = None
    checks["distinct"] = len(set(words)) == len(words)
    if word is None:
        word = []
        for a, b in zip(words, words[1:] + words[:1]):
            js = [j for j in range(2, k + 1) if push(a, j) == b]
            word.append(js[0] if js else 0)
    gray = all(j >= 2 for j in word) and len(word) == len(words)
    if gray:
        cur = words[0]
        for idx, j in enumerate(word):
            cur = push(cur, j)
            if cur != words[(idx + 1) % len(words)]:
                gray = False
                witness = witness or ("gray", idx)
                break
    checks["cyclic_gray"] = gray
    checks["starts_at_id"] = words[0].is_identity() and (len(word) > 0 and word[0] == k)
    bad = None
    members = set(words)
    for w in words:
        for q in range(1, k):
            if compose(transposition(q, k, k), w) in members:
                bad = (w, q)
                break
        if bad:
            break
    checks["aux_property"] = bad is None
    if bad:
        witness = ("aux", bad[0], bad[1])
    checks["size_bound"] = len(words) <= factorial(k) // 2
    ok = all(checks.values())
    failed = [c for c, v in checks.items() if not v]
    return AuxReport(ok, len(words), checks, witness, "ok" if ok else "failed: " + ", ".join(failed))


# --------------------------------------------------------------- certificates


def write_certificate(code: AuxCode, path) -> None:
    lines = [f"# aux k={code.order} M={code.size} family={code.family}"]
    lines.extend(str(j) for j in code.word)
    Path(path).write_text("\n".join(lines) + "\n")


def load_certificate(path) -> AuxCode:
    """Read a transition-word certificate and verify it as an auxiliary code."""
    text = Path(path).read_text().splitlines()
    if not text or not text[0].startswith("# aux"):
        raise ValueError(f"{path}: missing '# aux' header")
    header = dict(tok.split("=", 1) for tok in text[0][1:].split()[1:])
    k, size = int(header["k"]), int(header["M"])
    word = tuple(int(line) for line in text[1:] if line.strip())
    if len(word) != size:
        raise ValueError(f"{path}: header says M={size} but {len(word)} transitions follow")
    words = run(Permutation.identity(k), word)
    pp = len({sign(w) for w in words}) == 1
    code = AuxCode(k, "certificate", word, {"parity_preserving": pp})
    report = verify_aux(code)
    if not report.ok:
        raise ValueError(f"{path}: certificate rejected ({report.message})")
    return code
