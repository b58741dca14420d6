import sys, os
sys.path.append(os.path.join(os.path.dirname(__file__), ".."))

import pytest

from src.errors import PrecisionError
from src.infinite.laurent import LaurentK, embed_K
from src.infinite.tail import LogSide, power_sum_embedded, raised_precision, regrouped_row, tail_check
from src.zeta.power_sums import power_sum_bruteforce

N = 32


def test_embedded_power_sums_match_exact(ctx82):
    for i in range(4):
        exact = embed_K(ctx82, power_sum_bruteforce(ctx82, i, 2), N)
        assert (power_sum_embedded(ctx82, i, 2, N) - exact).is_zero()


def test_bottom_row_of_P0(stacks):
    stack = stacks("ex82", 2)
    row = LogSide(stack.tb, N).row(0)
    assert row[0].is_zero()
    assert (row[1] - embed_K(stack.ctx, stack.ctx.one, N)).is_zero()


def test_short_tail(stacks):
    stack = stacks("ex82", 2)
    report = tail_check(stack.tb, stack.ctx.one, T=0, N=N, step=1)
    assert report["passed"]
    assert set(report["regrouped"]) == {0, 1}
    assert all(row["zero"] and row["certified"] and row["ok"] for row in report["regrouped"].values())
    assert report["precision"] >= report["requested_precision"] == N
    # d sums to zero here, so the naive pairing sees only the zeta side
    assert report["naive"]["converges"] is False


def test_tail_rejects_bad_arguments(stacks):
    stack = stacks("ex82", 2)
    with pytest.raises(ValueError):
        tail_check(stack.tb, stack.ctx.one, T=-1)
    with pytest.raises(ValueError):
        tail_check(stack.tb, stack.ctx.one, step=0)


@pytest.mark.slow
def test_default_tail_q3(stacks):
    stack = stacks("ex82", 2)
    report = tail_check(stack.tb, stack.ctx.one)
    assert report["passed"]
    assert report["naive"]["converges"] is False


def test_zero_difference_needs_certified_precision(ctx82):
    R = ctx82.R
    zeta = LaurentK.make(R, [1, 2], -3, 5)
    # zero, but only known modulo u^-6, below the leading term u^-3
    shallow = LaurentK.make(R, [], -6, -6)
    row = regrouped_row(shallow, zeta)
    assert row["zero"] and not row["certified"] and not row["ok"]
    assert regrouped_row(LaurentK.make(R, [], 2, 2), zeta)["ok"]
    assert not regrouped_row(LaurentK.make(R, [1], 0, 4), zeta)["ok"]


def test_precision_raise_is_bounded(ctx82):
    R = ctx82.R
    zeta = LaurentK.make(R, [1], -3, 5)
    rows = {4: regrouped_row(LaurentK.make(R, [], -6, -6), zeta)}
    assert raised_precision(32, rows, max_precision=512) == 64
    # a deficit larger than N is added in one step
    rows = {4: regrouped_row(LaurentK.make(R, [], -90, -90), zeta)}
    assert raised_precision(32, rows, max_precision=512) == 32 + 88
    with pytest.raises(PrecisionError):
        raised_precision(32, rows, max_precision=100)
