from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rankmod.aux import aux_catalog, aux_flip
from rankmod.lmrm import CodeParams, construct
from rankmod.perm import push
from rankmod.ranking import (
    NotInCode,
    RankableCode,
    rank,
    rank_aux,
    rankable_size,
    rankable_size_closed_form,
    unrank,
)

from . import oracles
from .conftest import cached_code


def test_rank_aux_flip4():
    aux = aux_flip(4)
    assert rank_aux(aux, [1, 2, 3, 4]) == 0
    assert rank_aux(aux, [2, 4, 1, 3]) == 2
    assert sorted(rank_aux(aux, w) for w in aux.codewords) == list(range(8))
    with pytest.raises(NotInCode):
        rank_aux(aux, [2, 1, 4, 3])


@pytest.mark.parametrize("k", [3, 4, 5, 6, 8])
def test_aux_rank_roundtrip(k):
    aux = aux_catalog(k, rankable=True)
    for m, w in enumerate(aux.codewords):
        assert aux.rank(w) == m and aux.unrank(m) == w


def test_rankable_sizes():
    assert rankable_size(3) == 8
    assert rankable_size(2) == 3
    assert rankable_size(5) == 144
    assert rankable_size_closed_form(4) == 45
    assert rankable_size_closed_form(5) == 144
    with pytest.raises(ValueError):
        rankable_size(1)


@pytest.mark.parametrize("n,d", [(6, 3), (8, 4)])
def test_exhaustive_roundtrip_and_order(n, d):
    code = cached_code(n, d, True)
    words = list(code)
    assert len(set(words)) == code.size
    for m, w in enumerate(words):
        assert unrank(code, m) == w
        assert rank(code, w) == m


def test_enumeration_order_by_transitions(code63):
    steps = list(code63.iter_transitions())
    cur = code63.sigma0
    for m in range(code63.size):
        assert unrank(code63, m) == cur
        i, j = steps[m]
        nxt = push(cur, j, i)
        assert unrank(code63, (m + 1) % code63.size) == nxt
        cur = nxt


def test_small_examples(code63):
    assert rank(code63, [4, 1, 5, 2, 6, 3]) == 0
    assert unrank(code63, 0) == code63.sigma0
    # joint nodes of the level diagram are codewords too, so [2,4,1,3,5,6] lands at rank 4
    assert unrank(code63, 3) == (4, 1, 3, 5, 2, 6)
    assert rank(code63, [2, 4, 1, 3, 5, 6]) == 4
    words = list(code63)
    for r in (1, 5, 17):
        assert rank(code63, words[r]) == r


def test_sampled_roundtrip_12_4():
    code = cached_code(12, 4, True)
    rng = np.random.default_rng(7)
    for m in rng.integers(0, code.size, 1000):
        assert rank(code, unrank(code, int(m))) == m


@pytest.mark.parametrize("n,d", [(7, 3), (11, 4), (13, 3), (15, 5), (10, 4)])
def test_general_layouts(n, d):
    for rankable in (False, True):
        code = construct(CodeParams(n, d, rankable))
        rng = np.random.default_rng(n * d)
        for m in rng.integers(0, code.size, 100):
            assert rank(code, unrank(code, int(m))) == m


def test_not_in_code(code63):
    members = set(code63)
    for p in oracles.all_perms(6):
        if p not in members:
            with pytest.raises(NotInCode):
                rank(code63, p)
    with pytest.raises(ValueError):
        rank(code63, [1, 2, 3])
    with pytest.raises(ValueError):
        unrank(code63, 18)


def test_rankable_wrapper(code84):
    rc = RankableCode(code84)
    assert rc.total == 54
    prod = 1
    for b in rc.digit_bases:
        prod *= b
    assert prod == rc.total
    assert rc.unrank(rc.rank([int(v) for v in code84.sigma0])) == code84.sigma0
    with pytest.raises(ValueError):
        RankableCode(cached_code(6, 3))


@given(st.integers(0, 3071))
def test_hypothesis_roundtrip(m):
    code = cached_code(12, 4, True)
    w = unrank(code, m)
    assert sorted(w) == list(range(1, 13))
    assert rank(code, w) == m


def test_closed_form_fraction_type():
    assert isinstance(rankable_size_closed_form(3), Fraction)
