"""Linear-time decoder for bounded-magnitude (l_inf) errors.

Level by level, the received values over a window plus one carried index are
snapped to the level's congruence class.  Exactly one class value then
appears twice; the auxiliary code's membership test tells which of the two
indices really holds a foreign value, and that index is carried on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .aux import AuxCode
from .lmrm import LmrmCode
from .perm import Permutation


class DecodeFailure(ValueError):
    """The received word is not within the decoding radius of any codeword."""


def quantize(a: int, j: int, d: int) -> int:
    """Nearest integer congruent to j mod d; ties go to the smaller one."""
    if d < 2:
        raise ValueError("modulus must be >= 2")
    r = (a - j) % d
    return a - r if 2 * r <= d else a - r + d


def nearest_in_class(a: int, residue: int, d: int, n: int) -> int:
    """Nearest element of {x in 1..n : x = residue mod d}."""
    b = quantize(a, residue, d)
    lo = (residue - 1) % d + 1
    hi = n - (n - lo) % d
    return min(max(b, lo), hi)


def valid_aux(aux: AuxCode, pi: Sequence[int]) -> bool:
    """Membership of ``pi`` in the auxiliary code, in O(k) expected time."""
    return aux.contains(pi)


@dataclass(frozen=True)
class DecodeTrace:
    carries: tuple[int, ...]
    local: tuple[tuple[int, ...], ...]


def decode(code: LmrmCode, tau: Sequence[int], trace: bool = False):
    """Recover the codeword within l_inf distance ``(d-1)//2`` of ``tau``.

    Raises :class:`DecodeFailure` when the window structure breaks, which
    only happens for noise beyond the radius.  With ``trace=True`` returns
    ``(sigma, DecodeTrace)``.
    """
    n, d = code.n, code.d
    if len(tau) != n:
        raise ValueError(f"expected a permutation of order {n}, got length {len(tau)}")
    out = [0] * n
    carry = 1
    carries = [carry]
    locals_ = []
    for lv in code.levels:
        s, k = lv.start, lv.width
        positions = [carry] + list(range(s + 2, s + k + 2))
        vals = [nearest_in_class(tau[p - 1], lv.residue, d, n) for p in positions]
        pi = [lv.alpha[v] for v in vals]
        first_seen = {}
        dup = None
        for q, x in enumerate(pi):
            if x in first_seen:
                if dup is not None:
                    raise DecodeFailure(f"level {lv.index}: more than one repeated value")
                dup = (first_seen[x], q)
            else:
                first_seen[x] = q
        if dup is None:
            raise DecodeFailure(f"level {lv.index}: no repeated value")
        lo, hi = dup
        cand = list(pi)
        cand[hi] = k + 1
        if valid_aux(lv.aux, cand):
            chosen = hi
        else:
            cand = list(pi)
            cand[lo] = k + 1
            if not valid_aux(lv.aux, cand):
                raise DecodeFailure(f"level {lv.index}: neither candidate is in the auxiliary code")
            chosen = lo
        for q, p in enumerate(positions):
            if q != chosen:
                out[p - 1] = vals[q]
        carry = positions[chosen]
        carries.append(carry)
        locals_.append(tuple(cand))
    blocks = code.params.blocks
    top = len(code.levels)
    out[carry - 1] = nearest_in_class(tau[carry - 1], code.params.class_order[top], d, n)
    s0 = code.sigma0
    for p in range(code.params.starts[top] + 2, n + 1) if top < len(blocks) else ():
        residue = (s0[p - 1] - 1) % d + 1
        out[p - 1] = nearest_in_class(tau[p - 1], residue, d, n)
    if sorted(out) != list(range(1, n + 1)):
        raise DecodeFailure(f"decoded word {out} is not a permutation")
    sigma = Permutation.trusted(out)
    if trace:
        return sigma, DecodeTrace(tuple(carries), tuple(locals_))
    return sigma


def decode_verified(code: LmrmCode, tau: Sequence[int]) -> Permutation:
    """Decode, then confirm the result is a codeword by a rank round trip."""
    from .ranking import NotInCode, rank, unrank

    sigma = decode(code, tau)
    try:
        ok = unrank(code, rank(code, sigma)) == sigma
    except NotInCode:
        ok = False
    if not ok:
        raise DecodeFailure(f"decoded word {sigma} is not a codeword")
    return sigma
