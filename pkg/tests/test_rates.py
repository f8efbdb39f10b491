import csv
import io
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rankmod.rates import (
    COLUMNS,
    delta_grid,
    f_gv,
    rate_curves,
    rate_eq2,
    rate_rankable,
    rate_tam,
    rate_upper,
    rates_csv,
)

GRID = delta_grid(0.05, 1.0, 0.01)


def test_grid_exact():
    assert len(GRID) == 96
    assert GRID[0] == Fraction(1, 20) and GRID[-1] == 1
    with pytest.raises(ValueError):
        delta_grid(0.1, 0.2, 0)


def test_gv_branches_meet():
    lo, hi = f_gv(0.5, "low"), f_gv(0.5, "high")
    assert abs(lo - hi) < 1e-12
    assert abs(lo - (math.log2(math.e) - 1)) < 1e-12
    with pytest.raises(ValueError):
        f_gv(0.5, "middle")


def test_endpoint_values():
    assert rate_upper(1) == 0
    assert rate_eq2(1) == 0
    assert rate_rankable(1) == 0


@pytest.mark.parametrize("bad", [0, -0.1, 1.5])
def test_domain(bad):
    with pytest.raises(ValueError):
        rate_upper(bad)


def test_floor_is_decimal_exact():
    # 1/0.05 is 20 exactly, not 19.999...
    assert rate_eq2(0.05) == rate_eq2(Fraction(1, 20))


def test_ordering_on_grid():
    for row in rate_curves(GRID):
        assert row["eq2"] >= row["tam"] - 1e-9, row
        assert row["upper"] >= row["eq2"] - 1e-9, row
        assert row["eq2"] >= row["rankable"] - 1e-9, row
        assert row["rankable"] >= -1e-12


@given(st.fractions(min_value=Fraction(1, 50), max_value=1))
def test_constructions_under_upper_bound(delta):
    top = rate_upper(delta)
    for f in (rate_tam, rate_eq2, rate_rankable):
        assert -1e-9 <= f(delta) <= top + 1e-9


def test_small_k_cases_match_exact_sizes():
    # at delta = 1/2 the estimate is log2 of (8/3)^0 * 3 * 2 per class pair
    assert abs(rate_eq2(0.5) - 0.5 * math.log2(3)) < 1e-12


def test_csv_roundtrip():
    text = rates_csv(rate_curves(GRID[:5]))
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == COLUMNS
    assert len(rows) == 6
    assert float(rows[1][0]) == 0.05
