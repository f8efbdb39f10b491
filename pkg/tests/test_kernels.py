"""The compiled and the plain kernels must agree bit for bit."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rankmod import kernels
from rankmod._jit import jit_enabled
from rankmod.lmrm import CodeParams, construct
from rankmod.search import push_graph

from . import oracles


@pytest.fixture(params=["jit", "plain"])
def mode(request, monkeypatch):
    if request.param == "plain":
        monkeypatch.setenv("RANKMOD_DISABLE_JIT", "1")
    else:
        monkeypatch.delenv("RANKMOD_DISABLE_JIT", raising=False)
    return request.param


def test_flag(monkeypatch):
    monkeypatch.setenv("RANKMOD_DISABLE_JIT", "1")
    assert not jit_enabled()
    monkeypatch.setenv("RANKMOD_DISABLE_JIT", "0")
    assert jit_enabled()


def test_materialize(mode):
    code = construct(CodeParams(8, 4))
    ipos, jpos = code.transition_arrays()
    rows, final = kernels.materialize(np.array(code.sigma0), ipos, jpos)
    assert rows.shape == (54, 8)
    assert tuple(final) == tuple(code.sigma0)
    assert [tuple(r) for r in rows.tolist()] == list(code)


@pytest.mark.parametrize("n,d", [(6, 3), (8, 4), (7, 2)])
def test_min_linf(mode, n, d):
    rows = construct(CodeParams(n, d)).materialize()
    words = [tuple(r) for r in rows.tolist()]
    best, a, b = kernels.min_pairwise_linf(rows)
    assert best == oracles.min_pairwise_linf(words) >= d
    assert oracles.linf(words[a], words[b]) == best


def test_min_linf_early_stop(mode):
    rows = np.array([[1, 2, 3], [3, 2, 1], [1, 3, 2]])
    best, a, b = kernels.min_pairwise_linf(rows, stop_below=2)
    assert best == 1 and (a, b) == (0, 2)


@given(st.lists(st.permutations(list(range(1, 8))), min_size=1, max_size=30))
def test_lex_ranks_jit_plain_agree(rows):
    from itertools import permutations

    arr = np.array(rows)
    fast = kernels._lex_rank_nb(arr.astype(np.int16))
    plain = kernels._lex_rank_np(arr.astype(np.int16))
    assert fast.tolist() == plain.tolist()
    lex = {p: i for i, p in enumerate(permutations(range(1, 8)))}
    assert plain.tolist() == [lex[tuple(r)] for r in rows]


@pytest.mark.parametrize("gens,length", [((3, 5), 4), ((3, 5), 7), ((3, 5), 55), ((3, 5), 57), ((3, 5), 60), ((3, 5), 58), ((3, 5), 33)])
def test_cycle_search_paths_agree(gens, length):
    g = push_graph(5, gens)
    start = g.node((1, 2, 3, 4, 5))
    args = (g.succ, g.pred_ptr, g.pred_idx, start, length, len(gens) - 1, -1, np.zeros(60, dtype=np.bool_), 40_000)
    a = kernels._cycle_search_nb(*args)
    b = kernels._cycle_search_py(*args)
    assert a[0] == b[0] and a[2] == b[2]
    assert a[1].tolist() == b[1].tolist()


def test_warmup_is_harmless(mode):
    kernels.warmup()


def test_benchmark_quick(capsys):
    import importlib.util
    from pathlib import Path

    path = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    spec = importlib.util.spec_from_file_location("bench_kernels", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    mod.main(["--quick", "--repeat", "1"])
    out = capsys.readouterr().out.splitlines()
    assert len(out) == 5 and all("x" in line for line in out[1:])
