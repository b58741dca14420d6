import sys, os
sys.path.append(os.path.join(os.path.dirname(__file__), ".."))

import random

import pytest

from src.config import DEFAULT_SEED
from src.curve.points import xi
from src.errors import DivisionByZero, PrecisionError
from src.infinite.laurent import (EXACT, LaurentK, embed_K, embed_twisted_eval, infinite_chart, laurent_arith,
                                  laurent_frobenius)

N = 24


def same(a: LaurentK, b: LaurentK) -> bool:
    return (a - b).is_zero()


@pytest.mark.parametrize("name", ["ctx82", "ctx83"])
def test_chart_satisfies_the_curve(name, request):
    ctx = request.getfixturevalue(name)
    chart = infinite_chart(ctx, N)
    assert chart.residual().is_zero()
    assert chart.theta.val == -2
    assert chart.eta.val == -3


@pytest.mark.parametrize("name", ["ctx82", "ctx83"])
def test_valuation_is_minus_degree(name, request):
    ctx = request.getfixturevalue(name)
    rng = random.Random(DEFAULT_SEED)
    for _ in range(10):
        x = ctx.random_elem(rng, max_deg=2, nonzero=True)
        assert embed_K(ctx, x, N).val == -x.deg()


@pytest.mark.parametrize("name", ["ctx82", "ctx83"])
def test_embedding_is_a_ring_map(name, request):
    ctx = request.getfixturevalue(name)
    rng = random.Random(DEFAULT_SEED)
    for _ in range(10):
        x = ctx.random_elem(rng, max_deg=2)
        y = ctx.random_elem(rng, max_deg=2, nonzero=True)
        ex, ey = embed_K(ctx, x, N), embed_K(ctx, y, N)
        assert same(embed_K(ctx, x + y, N), laurent_arith("add", ex, ey))
        assert same(embed_K(ctx, x * y, N), laurent_arith("mul", ex, ey))
        assert same(embed_K(ctx, x / y, N), laurent_arith("div", ex, ey))


def test_embedding_commutes_with_frobenius(ctx82):
    x = (ctx82.eta + ctx82.theta) / (ctx82.theta ** 2 + 1)
    ex = embed_K(ctx82, x, N)
    assert same(embed_K(ctx82, x.twist(1), 3 * N), laurent_frobenius(ex, 1))


def test_inverse(ctx83):
    x = embed_K(ctx83, ctx83.eta + ctx83.theta + 1, N)
    assert same(x * x.inv(), LaurentK.constant(ctx83.R, 1))
    u = LaurentK.make(ctx83.R, [0, 1], 0, EXACT)
    assert (u ** -2).val == -2


def test_zero_and_precision_errors(ctx82):
    zero = embed_K(ctx82, ctx82.zero, N)
    with pytest.raises(DivisionByZero):
        zero.inv()
    x = embed_K(ctx82, ctx82.theta + 1, 4)
    with pytest.raises(PrecisionError):
        x.coefficient(x.prec)
    with pytest.raises(ValueError):
        laurent_arith("pow", x, x)
    with pytest.raises(ValueError):
        embed_K(ctx82, ctx82.one, 0)


def test_twisted_evaluation_matches_exact_value(stacks):
    stack = stacks("ex82", 1)
    ring, ctx = stack.ring, stack.ctx
    F = stack.S.nu
    for j in range(1, 3):
        exact = ring.eval(F.twist(j), xi(ctx))
        assert same(embed_twisted_eval(F, j, N), embed_K(ctx, exact, N))
