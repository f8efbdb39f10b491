"""Asymptotic rate curves R(delta), delta = d/n, with o(1) terms dropped."""

from __future__ import annotations

import csv
import io
import math
from fractions import Fraction

LOG2E = math.log2(math.e)


def _exact(delta) -> Fraction:
    if isinstance(delta, Fraction):
        f = delta
    elif isinstance(delta, float):
        f = Fraction(repr(delta))  # decimal literal, so 1/0.05 floors to 20
    else:
        f = Fraction(delta)
    if not 0 < f <= 1:
        raise ValueError(f"delta must lie in (0, 1], got {delta}")
    return f


def _fc(delta) -> tuple[float, int, int]:
    f = _exact(delta)
    inv = 1 / f
    return float(f), math.floor(inv), math.ceil(inv)


def _lf(k: int) -> float:
    return math.lgamma(k + 1) / math.log(2)


def _xlog2x(x: float) -> float:
    return 0.0 if x == 0 else x * math.log2(x)


def rate_upper(delta) -> float:
    """Upper bound on the rate of any code with normalized distance delta."""
    d, K, _ = _fc(delta)
    a = d * K
    return 2 - 2 * a - (a - d) * math.log2(d) - _xlog2x(1 + d - a)


def rate_tam(delta) -> float:
    """Rate of the earlier non-Gray interleaving construction."""
    d, K, C = _fc(delta)
    return (1 - d * K) * _lf(C) + (d + d * K - 1) * _lf(K)


def f_gv(delta, branch: str | None = None) -> float:
    """Gilbert-Varshamov-like existence bound.  ``branch`` forces "low"
    (delta <= 1/2) or "high" (delta >= 1/2)."""
    d = float(_exact(delta))
    if branch is None:
        branch = "low" if d <= 0.5 else "high"
    if branch == "low":
        return math.log2(1 / d) + 2 * d * (LOG2E - 1) - 1
    if branch == "high":
        return -2 * d * math.log2(1 / d) + 2 * (1 - d) * LOG2E
    raise ValueError(f"unknown branch {branch!r}")


def rate_eq2(delta) -> float:
    """Lower estimate of the rate of the Gray codes built here."""
    d, K, C = _fc(delta)
    a = 1 - d * K
    if K == 1:
        return (1 - d) * math.log2(3)
    if K == 2:
        return (1 - 2 * d) * (3 - math.log2(3)) + d * math.log2(3)
    if K == 3:
        return (1 - 3 * d) * (math.log2(57) - 4) + 1
    if K == 4:
        return (1 - 4 * d) * math.log2(178) + (5 * d - 1) * math.log2(57)
    if K == 5:
        return (1 - 5 * d) * math.log2(315) + (6 * d - 1) * math.log2(89) + 2 - 9 * d
    head = a * math.log2(C + 1) + d * _lf(K + 1) - d
    if K % 2 == 0:
        return head + a * math.log2((C - 2) / (C + 1))
    return head + (d + d * K - 1) * math.log2((K - 2) / (K + 1))


def rate_rankable(delta) -> float:
    """Lower estimate of the rate of the rankable variant."""
    d, K, C = _fc(delta)
    if K == 1:
        return (1 - d) * math.log2(3)
    a = 1 - d * K
    b = d + d * K - 1

    def corr(x):
        return math.log2(x) + LOG2E / (2 * x) + math.log2(math.pi) - 1

    if K % 2 == 0:
        return a * (_lf(C) + math.log2(1 + 1 / C)) + b * _lf(K + 1) - 0.5 * b * corr(K)
    return a * _lf(C + 1) + b * (_lf(K) + math.log2(1 + 1 / K)) - 0.5 * a * corr(C)


COLUMNS = ("delta", "upper", "tam", "gv", "eq2", "rankable")


def rate_curves(delta_grid) -> list[dict]:
    rows = []
    for delta in delta_grid:
        rows.append(
            {
                "delta": float(_exact(delta)),
                "upper": rate_upper(delta),
                "tam": rate_tam(delta),
                "gv": f_gv(delta),
                "eq2": rate_eq2(delta),
                "rankable": rate_rankable(delta),
            }
        )
    return rows


def delta_grid(start, stop, step) -> list[Fraction]:
    """Inclusive grid computed in exact decimal arithmetic."""
    a, b, s = (Fraction(str(x)) for x in (start, stop, step))
    if s <= 0:
        raise ValueError("step must be positive")
    out = []
    x = a
    while x <= b:
        out.append(x)
        x += s
    return out


def rates_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow([f"{r['delta']:.6g}"] + [f"{r[c]:.12f}" for c in COLUMNS[1:]])
    return buf.getvalue()
