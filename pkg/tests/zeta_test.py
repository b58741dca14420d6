import sys, os
sys.path.append(os.path.join(os.path.dirname(__file__), ".."))

import pytest

from src.anderson.coefficients import exp_coeffs, log_coeffs
from src.curve.points import point_frobenius, xi
from src.errors import RangeUnsupported
from src.expr_parser import parse_a_expr
from src.zeta.power_sums import (iter_monic, monomials_below, power_sum, power_sum_bruteforce, power_sum_closed)
from src.zeta.sigma import (check_C, reconstruction_residual, regrouped_term_check, script_G, sigma_expand,
                            zeta_term, zeta_term_check)
from src.zeta.zeta_vector import zeta_vector


# ---- power sums ---------------------------------------------------------------------
def test_monic_counts(ctx82):
    # degrees 0, 2, 3, 4, ... with no element of degree 1
    assert len(list(iter_monic(ctx82, 0))) == 1
    assert list(iter_monic(ctx82, 1)) == []
    assert len(list(iter_monic(ctx82, 4))) == 3 ** len(monomials_below(4))


def test_degree_two_power_sum_q3(ctx82):
    theta = ctx82.theta
    assert power_sum_bruteforce(ctx82, 2, 1) == -(theta ** 3 - theta).inv()
    assert power_sum_bruteforce(ctx82, 0, 1).is_one()
    assert power_sum_bruteforce(ctx82, 1, 1).is_zero()


@pytest.mark.parametrize("name,i", [("ex82", 2), ("ex82", 3), ("ex82", 4), ("ex83", 2), ("ex83", 3),
                                    pytest.param("ex83", 4, marks=pytest.mark.slow)])
def test_closed_power_sums_match_enumeration(stacks, name, i):
    stack = stacks(name, 1)
    for s in range(1, stack.ctx.q):
        assert power_sum_closed(stack.ring, stack.S, i, s) == power_sum_bruteforce(stack.ctx, i, s)


def test_closed_power_sums_outside_range(stacks):
    stack = stacks("ex82", 1)
    with pytest.raises(RangeUnsupported):
        power_sum_closed(stack.ring, stack.S, 2, stack.ctx.q)
    with pytest.raises(RangeUnsupported):
        power_sum_closed(stack.ring, stack.S, 2, 0)
    # small degrees fall back to enumeration
    assert power_sum(stack.ring, stack.S, 1, 1, mode="closed").is_zero()


# ---- G and the sigma expansion ------------------------------------------------------------
def test_script_G_q3(stacks):
    stack = stacks("ex82", 1)
    ring, ctx = stack.ring, stack.ctx
    t, y = ring.t, ring.y
    assert script_G(ring, stack.S) == (ctx.eta + y) / (ctx.theta - t) - y


def test_script_G_q4(stacks):
    stack = stacks("ex83", 1)
    ring, ctx = stack.ring, stack.ctx
    t, y = ring.t, ring.y
    expected = (ctx.eta + y + 1) / (ctx.theta + t) + (y ** 4 + y + 1) / (t ** 4 + t)
    assert script_G(ring, stack.S) == expected


@pytest.mark.parametrize("name", ["ex82", "ex83"])
def test_script_G_interpolates_f_at_frobenius_twists(stacks, name):
    stack = stacks(name, 1)
    ring, ctx = stack.ring, stack.ctx
    G = script_G(ring, stack.S)
    for i in range(1, 4):
        V_i = point_frobenius(ctx, stack.S.V, i)
        assert ring.eval(G.twist(i), xi(ctx)) == ring.eval(stack.S.f, V_i)


def test_zeta_constant_q3(stacks):
    stack = stacks("ex82", 2)
    eta = stack.ctx.eta
    sx = sigma_expand(stack.tb, stack.ctx.one)
    assert sx.C == -eta ** 3 / (eta ** 2 + 1)
    assert check_C(stack.tb)


def test_zeta_constant_q4(stacks):
    stack = stacks("ex83", 2)
    theta = stack.ctx.theta
    sx = sigma_expand(stack.tb, stack.ctx.one)
    assert sx.C == (theta ** 4 + theta).inv()
    assert check_C(stack.tb)


def test_sigma_expansion_q3(stacks):
    stack = stacks("ex82", 2)
    ctx = stack.ctx
    eta, one = ctx.eta, ctx.one
    sx = sigma_expand(stack.tb, one)
    assert (sx.e, sx.b_prime, sx.J) == (0, 0, 3)
    den = eta ** 2 + 1
    assert sx.d_twisted[:3] == ((one, -eta ** 3 / den), (one, eta ** 5 / den), (one, (-eta ** 5 + eta ** 3) / den))
    assert all(x.is_zero() for x in sx.d_twisted[3])
    assert all(x.is_zero() for x in sx.d_total)
    assert reconstruction_residual(stack.tb, sx).is_zero()


def test_sigma_expansion_q4(stacks):
    stack = stacks("ex83", 2)
    u = stack.ctx.theta ** 4 + stack.ctx.theta
    sx = sigma_expand(stack.tb, stack.ctx.one)
    assert sx.d_total == (u ** 2 + u ** 4, u + u ** 3)
    assert reconstruction_residual(stack.tb, sx).is_zero()


@pytest.mark.parametrize("b", ["1", "T", "T + 1", pytest.param("T*Y + 2", marks=pytest.mark.slow)])
def test_sigma_expansion_reconstructs(stacks, b):
    stack = stacks("ex82", 2)
    sx = sigma_expand(stack.tb, parse_a_expr(stack.ctx, b))
    assert reconstruction_residual(stack.tb, sx).is_zero()
    assert len(sx.d_twisted) == sx.J + 1


def test_sigma_expansion_rejects_zero_b(stacks):
    stack = stacks("ex82", 2)
    with pytest.raises(ValueError):
        sigma_expand(stack.tb, stack.ctx.zero)


@pytest.mark.slow
def test_sigma_expansion_rejects_large_n(stacks):
    stack = stacks("ex82", 3)
    with pytest.raises(RangeUnsupported):
        sigma_expand(stack.tb, stack.ctx.one)


# ---- per-term identities ------------------------------------------------------------------
@pytest.mark.parametrize("b", ["1", "T", "T + 1"])
def test_zeta_terms_q3(stacks, b):
    stack = stacks("ex82", 2)
    a = parse_a_expr(stack.ctx, b)
    assert zeta_term(stack.tb, a, 0) == a
    assert zeta_term(stack.tb, a, 1).is_zero()
    for i in range(5):
        assert zeta_term_check(stack.tb, a, i), i


@pytest.mark.parametrize("b", ["1", "T", "T + 1"])
def test_zeta_terms_q4(stacks, b):
    stack = stacks("ex83", 2)
    a = parse_a_expr(stack.ctx, b)
    assert zeta_term(stack.tb, a, 0) == a
    for i in range(3):
        assert zeta_term_check(stack.tb, a, i), i


@pytest.mark.slow
@pytest.mark.parametrize("b", ["1", "T", "T + 1"])
def test_zeta_terms_q4_deep(stacks, b):
    stack = stacks("ex83", 2)
    a = parse_a_expr(stack.ctx, b)
    for i in range(3, 5):
        assert zeta_term_check(stack.tb, a, i), i


@pytest.mark.parametrize("b", ["1", "T + 1"])
def test_regrouped_terms(stacks, b):
    stack = stacks("ex82", 2)
    a = parse_a_expr(stack.ctx, b)
    sx = sigma_expand(stack.tb, a)
    log = log_coeffs(exp_coeffs(stack.mod, stack.tb, 4))
    for i in range(5):
        assert regrouped_term_check(stack.tb, sx, log, i), i


def test_zeta_vector_report(stacks):
    stack = stacks("ex82", 2)
    log = log_coeffs(exp_coeffs(stack.mod, stack.tb, 3))
    zv = zeta_vector(stack.tb, stack.ctx.one, terms=3, log=log)
    assert zv.C == zv.expansion.C
    assert all(x.is_zero() for x in zv.d)
    report = zv.report
    assert report["C_matches"] and report["reconstruction_zero"]
    assert all(report["zeta_terms"].values())
    assert all(report["regrouped_terms"].values())
    assert "tail" not in report
