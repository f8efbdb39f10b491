"""Bounded-magnitude noise and an end-to-end Monte-Carlo simulator."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .decoder import DecodeFailure, decode
from .lmrm import CodeParams, LmrmCode, construct
from .perm import Permutation
from .ranking import unrank


def sample_bounded_error(sigma: Sequence[int], t_prime: int, rng: np.random.Generator, sweeps: int = 4) -> Permutation:
    """Random tau with ``d_inf(sigma, tau) <= t_prime``.

    Runs ``sweeps * n`` proposals.  Each picks a value v and an offset
    1..t_prime and swaps the positions of v and v+offset when both values stay
    within t_prime of their original values.  The result is not uniform over
    the ball.
    """
    n = len(sigma)
    if not 0 <= t_prime < max(n, 1):
        raise ValueError(f"t_prime must be in 0..{n - 1}")
    tau = list(sigma)
    if t_prime == 0 or n < 2:
        return Permutation.trusted(tau)
    where = [0] * (n + 1)
    for i, v in enumerate(tau):
        where[v] = i
    proposals = sweeps * n
    vs = rng.integers(1, n + 1, size=proposals)
    offs = rng.integers(1, t_prime + 1, size=proposals)
    for v, off in zip(vs.tolist(), offs.tolist()):
        w = v + off
        if w > n:
            continue
        a, b = where[v], where[w]
        if abs(w - sigma[a]) <= t_prime and abs(v - sigma[b]) <= t_prime:
            tau[a], tau[b] = w, v
            where[v], where[w] = b, a
    return Permutation.trusted(tau)


def linf_ball(sigma: Sequence[int], radius: int) -> Iterator[Permutation]:
    """Every permutation within l_inf distance ``radius`` of sigma."""
    n = len(sigma)
    used = [False] * (n + 1)
    cur = [0] * n

    def rec(i):
        if i == n:
            yield Permutation.trusted(cur)
            return
        lo = max(1, sigma[i] - radius)
        hi = min(n, sigma[i] + radius)
        for v in range(lo, hi + 1):
            if not used[v]:
                used[v] = True
                cur[i] = v
                yield from rec(i + 1)
                used[v] = False

    yield from rec(0)


@dataclass(frozen=True)
class SimConfig:
    params: CodeParams
    trials: int
    noise_magnitude: int
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass
class SimReport:
    trials: int
    successes: int
    failures: list = field(default_factory=list)  # (trial, rank, tau) for the first few
    failure_count: int = 0
    wallclock: float = 0.0

    @property
    def success_rate(self) -> float:
        return self.successes / self.trials


MAX_FAILURE_RECORDS = 20


@lru_cache(maxsize=8)
def _code(params: CodeParams) -> LmrmCode:
    return construct(params)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    # counter-based derivation: the stream of trial i never depends on the worker layout
    return np.random.default_rng(np.random.SeedSequence([seed, trial]))


def _run_chunk(args):
    params, t_prime, seed, lo, hi = args
    code = _code(params)
    ok = 0
    fails = []
    for trial in range(lo, hi):
        rng = trial_rng(seed, trial)
        m = int(rng.integers(0, code.size))
        sigma = unrank(code, m)
        tau = sample_bounded_error(sigma, t_prime, rng)
        try:
            good = decode(code, tau) == sigma
        except DecodeFailure:
            good = False
        if good:
            ok += 1
        else:
            fails.append((trial, m, tuple(tau)))
    return ok, fails


def simulate(cfg: SimConfig) -> SimReport:
    """Encode a random index, add bounded noise, decode; repeated ``trials`` times."""
    t0 = time.perf_counter()
    code = _code(cfg.params)
    if code.size >= 2**63:
        raise ValueError("code too large to sample indices from")
    if not 0 <= cfg.noise_magnitude < cfg.params.n:
        raise ValueError("noise magnitude must be in 0..n-1")
    nchunks = max(cfg.workers * 4, 1)
    step = -(-cfg.trials // nchunks)
    jobs = [
        (cfg.params, cfg.noise_magnitude, cfg.seed, lo, min(lo + step, cfg.trials))
        for lo in range(0, cfg.trials, step)
    ]
    if cfg.workers == 1:
        results = [_run_chunk(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_run_chunk, jobs))
    ok = sum(r[0] for r in results)
    fails = sorted(f for r in results for f in r[1])
    return SimReport(
        trials=cfg.trials,
        successes=ok,
        failures=fails[:MAX_FAILURE_RECORDS],
        failure_count=len(fails),
        wallclock=time.perf_counter() - t0,
    )
