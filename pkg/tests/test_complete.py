import random
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rankmod.complete import (
    complete_code,
    complete_sequence,
    rank_complete,
    unrank_complete,
)
from rankmod.perm import Permutation, push

from . import oracles


def test_invalid_order():
    with pytest.raises(ValueError):
        complete_code(0)


def test_order_two():
    c = complete_code(2)
    assert list(c) == [(1, 2), (2, 1)]
    assert c.sequence == (2, 2)
    assert unrank_complete(c, 1) == (2, 1)


def test_order_three_is_a_known_complete_code():
    assert complete_sequence(3) == (2, 3, 3, 2, 3, 3)


@pytest.mark.parametrize("n", range(1, 8))
def test_materialization_against_enumeration(n):
    words = list(complete_code(n))
    assert len(words) == factorial(n) == len(set(words))
    assert set(words) == set(oracles.all_perms(n))
    assert words[0] == tuple(range(1, n + 1))
    if n > 1:
        assert oracles.is_cyclic_push_code(words)


def test_cyclic_closure_order_eight_streaming():
    cur = Permutation.identity(8)
    seq = complete_sequence(8)
    assert len(seq) == factorial(8)
    for j in seq:
        cur = push(cur, j)
    assert cur.is_identity()


@pytest.mark.parametrize("n", range(1, 7))
def test_rank_unrank_exhaustive(n):
    c = complete_code(n)
    for i, w in enumerate(c):
        assert rank_complete(c, w) == i
        assert unrank_complete(c, i) == w


def test_rank_of_identity_and_range_errors():
    c = complete_code(5)
    assert rank_complete(c, Permutation.identity(5)) == 0
    assert unrank_complete(c, 0).is_identity()
    with pytest.raises(ValueError):
        unrank_complete(c, 120)
    with pytest.raises(ValueError):
        unrank_complete(c, -1)


def test_order_five_random_round_trips():
    c = complete_code(5)
    rng = random.Random(5)
    for m in rng.sample(range(120), 100):
        assert rank_complete(c, unrank_complete(c, m)) == m


@given(st.integers(2, 9).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, factorial(n) - 1))))
def test_consecutive_ranks_differ_by_one_push(nm):
    n, m = nm
    c = complete_code(n)
    a = unrank_complete(c, m)
    b = unrank_complete(c, (m + 1) % factorial(n))
    assert push(a, c.sequence[m]) == b
