"""Acceptance criteria, one test each.

Every test records a ``PASS``/``FAIL`` line with its wall time; the lines
are shown in the pytest terminal summary.  Run the file directly
(``python -m tests.test_acceptance``) to get just the eleven lines.
"""

from __future__ import annotations

import contextlib
import io
import time
from functools import wraps
from math import factorial

import numpy as np
import pytest

from rankmod import aux as aux_mod
from rankmod import kernels
from rankmod import search as search_mod
from rankmod.aux import aux_catalog, build_phi_frame, verify_aux
from rankmod.channel import linf_ball, sample_bounded_error
from rankmod.cli import main as cli_main
from rankmod.complete import complete_code
from rankmod.decoder import decode
from rankmod.lmrm import CodeParams, construct, size_formula
from rankmod.perm import Permutation, is_even, push
from rankmod.ranking import rank, unrank
from rankmod.rates import delta_grid, f_gv, rate_eq2, rate_tam, rate_upper
from rankmod.search import SearchFailure, search_cycle
from rankmod.snake import snake_size, verify_snake

from . import oracles
from .conftest import ACCEPTANCE_LINES
from .golden import GOLDEN_63, GOLDEN_FLIP4

TITLES = {
    1: "golden order-4 auxiliary code",
    2: "golden (6,3) code",
    3: "size formula over the grid",
    4: "stitched order-6 auxiliary code",
    5: "decoder golden cases",
    6: "decoder radius property",
    7: "rank/unrank bijection",
    8: "complete codes",
    9: "Kendall snake m=2",
    10: "rate curves",
    11: "determinism",
}


def criterion(num: int, budget: float):
    """Time the body, fail on overrun, and record the outcome line."""

    def deco(fn):
        @wraps(fn)
        def wrapper(*args, **kwargs):
            t0 = time.perf_counter()
            ok, note = False, ""
            try:
                note = fn(*args, **kwargs) or ""
                ok = True
            except AssertionError as exc:
                note = f"assertion: {str(exc).splitlines()[0] if str(exc) else 'failed'}"
                raise
            finally:
                dt = time.perf_counter() - t0
                if ok and dt > budget:
                    ok = False
                    note = f"over time budget {budget:g}s"
                line = f"AC{num:>2} {'PASS' if ok else 'FAIL'}  {TITLES[num]:<34} {dt:7.2f}s / {budget:g}s  {note}"
                ACCEPTANCE_LINES[num] = line.rstrip()
                print(line)
            assert dt <= budget, f"AC{num} took {dt:.2f}s, budget {budget}s"

        return wrapper

    return deco


@pytest.fixture(scope="module", autouse=True)
def _compiled_kernels():
    # one-time JIT compilation is not part of any criterion's runtime
    kernels.warmup()


def _cli(*argv) -> tuple[int, str]:
    out = io.StringIO()
    err = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli_main([str(a) for a in argv])
    return code, out.getvalue()


def _perms(text: str) -> list[tuple[int, ...]]:
    return [tuple(map(int, line.split())) for line in text.splitlines() if line and not line.startswith("#")]


@criterion(1, 1.0)
def test_ac01_golden_aux():
    code, out = _cli("aux", "--order", 4)
    assert code == 0
    assert _perms(out) == GOLDEN_FLIP4
    assert verify_aux(aux_catalog(4)).ok
    return "8 codewords, bit-exact"


@criterion(2, 1.0)
def test_ac02_golden_main():
    code, out = _cli("construct", "-n", 6, "-d", 3)
    assert code == 0
    words = _perms(out)
    assert words == GOLDEN_63
    assert oracles.min_pairwise_linf(words) == 3
    assert oracles.is_cyclic_push_code(words)
    return "18 codewords, min distance 3"


@criterion(3, 60.0)
def test_ac03_size_grid():
    checked = 0
    for n in range(3, 13):
        for d in range(2, n):
            p = CodeParams(n, d)
            want = size_formula(p)
            if want > 10**6:
                continue
            rows = construct(p).materialize()
            assert len(rows) == want, (n, d)
            assert len(np.unique(rows, axis=0)) == want, (n, d)
            if n // d == 1:
                assert want == 3 ** (n % d), (n, d)
            checked += 1
    assert size_formula(CodeParams(12, 4)) == 3072
    return f"{checked} (n,d) pairs"


@criterion(4, 5.0)
def test_ac04_stitched_aux():
    aux_mod._searched_word.cache_clear()
    search_mod.push_graph.cache_clear()
    try:
        search_cycle(5, 58)
        raise AssertionError("a 58-cycle in A_5 was found")
    except SearchFailure as exc:
        assert exc.exhausted
    code, out = _cli("aux", "--order", 6)
    assert code == 0
    words = _perms(out)
    assert len(words) == 178
    assert verify_aux(words).ok
    assert aux_catalog(5).size == 57
    # undo the start translation, then the odd words must be exactly the frame bridges
    pi_tilde = Permutation.identity(6)
    for _ in range(2):
        pi_tilde = push(pi_tilde, 3)
    odd = {tuple(pi_tilde[x - 1] for x in w) for w in words if not is_even(w)}
    assert odd == set(build_phi_frame(2).bridges)
    return f"178 codewords, {len(odd)} odd words = bridges, no 58-cycle"


@criterion(5, 1.0)
def test_ac05_decoder_examples():
    c63 = construct(CodeParams(6, 3))
    assert decode(c63, [1, 3, 4, 5, 6, 2]) == (1, 2, 4, 6, 5, 3)
    c155 = construct(CodeParams(15, 5))
    sigma = (11, 1, 8, 6, 7, 2, 12, 13, 3, 5, 9, 14, 4, 10, 15)
    tau = [12, 3, 9, 7, 5, 2, 11, 15, 1, 6, 8, 13, 4, 10, 14]
    assert decode(c155, tau) == sigma
    return "both examples bit-exact"


@criterion(6, 60.0)
def test_ac06_decoder_radius():
    code = construct(CodeParams(6, 3))
    pairs = 0
    for sigma in code:
        for tau in linf_ball(sigma, 1):
            assert decode(code, tau) == sigma
            pairs += 1
    for n, d in [(8, 4), (12, 4), (15, 5)]:
        code = construct(CodeParams(n, d))
        t = (d - 1) // 2
        rng = np.random.default_rng(1000 + n)
        for _ in range(10_000):
            sigma = unrank(code, int(rng.integers(code.size)))
            tau = sample_bounded_error(sigma, t, rng)
            assert oracles.linf(sigma, tau) <= t
            assert decode(code, tau) == sigma, (n, d, sigma, tau)
    return f"(6,3) ball: {pairs} pairs; 3 x 10^4 sampled; 100%"


@criterion(7, 10.0)
def test_ac07_rank_bijection():
    for n, d in [(6, 3), (8, 4)]:
        code = construct(CodeParams(n, d, True))
        for m, w in enumerate(code):
            assert unrank(code, m) == w and rank(code, w) == m
    code = construct(CodeParams(12, 4, True))
    rng = np.random.default_rng(12)
    for m in rng.integers(0, code.size, 1000):
        assert rank(code, unrank(code, int(m))) == m
    return "exhaustive (6,3),(8,4); 1000 sampled (12,4)"


@criterion(8, 5.0)
def test_ac08_complete_codes():
    for n in range(1, 7):
        words = list(complete_code(n))
        assert len(words) == len(set(words)) == factorial(n)
        if n >= 2:
            assert oracles.is_cyclic_push_code(words)
    c6 = complete_code(6)
    for m, w in enumerate(c6):
        assert c6.rank(w) == m and c6.unrank(m) == w
    return "n<=6, 720 roundtrips"


@criterion(9, 30.0)
def test_ac09_snake():
    code, out = _cli("snake", "--m", 2)
    assert code == 0
    words = _perms(out)
    assert len(words) == 232 == snake_size(2)
    rep = verify_snake(words)
    assert rep.ok, rep.witness
    # exhaustive neighbour probe: 232 x 5 adjacent swaps, none a codeword
    members = set(words)
    for w in words:
        for i in range(5):
            v = list(w)
            v[i], v[i + 1] = v[i + 1], v[i]
            assert tuple(v) not in members
    assert oracles.is_cyclic_push_code(words)
    return "232 codewords, spread 2"


@criterion(10, 1.0)
def test_ac10_rates():
    assert abs(f_gv(0.5, "low") - f_gv(0.5, "high")) <= 1e-12
    assert rate_upper(1) == 0 and rate_eq2(1) == 0
    worst = min(rate_eq2(x) - rate_tam(x) for x in delta_grid("0.05", "1.00", "0.01"))
    assert worst >= -1e-9
    return f"min(eq2 - tam) = {worst:.3g}"


@criterion(11, 120.0)
def test_ac11_determinism(tmp_path):
    runs = [
        ("aux", "--order", 5),
        ("aux", "--order", 6),
        ("aux", "--order", 7, "--word"),
        ("snake", "--m", 2),
        ("construct", "-n", 11, "-d", 3),
        ("simulate", "-n", 8, "-d", 4, "--noise", 3, "--trials", 3000, "--seed", 11),
        ("simulate", "-n", 6, "-d", 3, "--noise", 3, "--trials", 3000, "--seed", 5),
    ]
    for argv in runs:
        outs = []
        for extra in ((), ("--workers", 4)) if argv[0] == "simulate" else ((), ()):
            aux_mod._searched_word.cache_clear()
            search_mod.push_graph.cache_clear()
            outs.append(_cli(*argv, *extra))
        assert outs[0][0] == 0 and outs[0] == outs[1], argv
    return f"{len(runs)} commands byte-identical (simulate: 1 vs 4 workers)"


if __name__ == "__main__":
    import sys
    import tempfile
    from pathlib import Path

    kernels.warmup()
    failed = 0
    for num, fn in sorted((int(k[7:9]), v) for k, v in dict(globals()).items() if k.startswith("test_ac")):
        try:
            if num == 11:
                with tempfile.TemporaryDirectory() as d:
                    fn(Path(d))
            else:
                fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
