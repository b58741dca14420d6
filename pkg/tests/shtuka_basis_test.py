import sys, os
sys.path.append(os.path.join(os.path.dirname(__file__), ".."))

import pytest

from src.shtuka.tensor_basis import (a_by_solve, basis_divisor_orders, check_h_identity, check_product_identities,
                                     check_t_identity, check_y_identity, deltatwist_identity)

CASES = [("ex82", 1), ("ex82", 2), ("ex83", 1), ("ex83", 2),
         pytest.param("ex83", 3, marks=pytest.mark.slow)]


# ---- shtuka function ------------------------------------------------------------------
def test_shtuka_function_q3(stacks):
    stack = stacks("ex82", 1)
    ctx, ring = stack.ctx, stack.ring
    t, y, theta, eta = ring.t, ring.y, ctx.theta, ctx.eta
    assert stack.S.f == (y - eta - eta * (t - theta)) / (t - theta - 1)
    assert stack.S.delta == t - theta - 1
    assert stack.S.nu == y - eta - eta * (t - theta)


def test_shtuka_function_q3_twisted(stacks):
    stack = stacks("ex82", 1)
    ctx, ring = stack.ctx, stack.ring
    t, y = ring.t, ring.y
    eta3, theta3 = ctx.eta ** 3, ctx.theta ** 3
    assert stack.S.f.twist(1) == (y - eta3 - eta3 * (t - theta3)) / (t - theta3 - 1)


def test_shtuka_function_q4(stacks):
    stack = stacks("ex83", 1)
    ctx, ring = stack.ctx, stack.ring
    t, y, theta, eta = ring.t, ring.y, ctx.theta, ctx.eta
    assert stack.S.f == (y + eta + theta ** 4 * (t + theta)) / (t + theta)


@pytest.mark.parametrize("name", ["ex82", "ex83"])
def test_shtuka_function_has_degree_one_and_sign_one(stacks, name):
    stack = stacks(name, 1)
    deg, sgn = stack.ring.deg_sgn(stack.S.f)
    assert deg == 1 and sgn.is_one()


# ---- tensor basis -----------------------------------------------------------------------
@pytest.mark.parametrize("name,n", CASES)
def test_basis_identities(stacks, name, n):
    tb = stacks(name, n).tb
    check_product_identities(tb)
    check_t_identity(tb)
    check_y_identity(tb)
    check_h_identity(tb, J=2)
    assert deltatwist_identity(tb)
    assert a_by_solve(tb) == list(tb.a)


@pytest.mark.parametrize("name,n", CASES)
def test_basis_divisors(stacks, name, n):
    orders = basis_divisor_orders(stacks(name, n).tb)
    assert all(seen == expected for seen, expected in orders.values()), orders


@pytest.mark.parametrize("name,n", [("ex82", 2), ("ex83", 2)])
def test_extended_basis_degrees(stacks, name, n):
    tb = stacks(name, n).tb
    for i in range(1, 3 * n + 1):
        J = (i - 1) // n
        deg, sgn = tb.ring.deg_sgn(tb.h_ext(i, J))
        assert deg == n + i
        assert sgn.is_one()


def test_extended_g_wraps_with_f(stacks):
    tb = stacks("ex82", 2).tb
    n = tb.n
    assert tb.g_ext(n + 1) == tb.S.f ** n * tb.g[0].twist(1)
    assert tb.g_ext(n + 2, 1) == tb.S.f.twist(1) ** n * tb.g[1].twist(2)


def test_h_ext_rejects_negative_twists(stacks):
    tb = stacks("ex82", 2).tb
    with pytest.raises(ValueError):
        tb.h_ext(3, 0)
