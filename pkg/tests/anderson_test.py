import sys, os
sys.path.append(os.path.join(os.path.dirname(__file__), ".."))

import pytest

from src.anderson.anderson_module import commutator, d_of, rho, weierstrass_residual
from src.anderson.coefficients import (exp_closed_form_n1, exp_coeffs, exp_coeffs_by_sylvester, exp_first_column,
                                       functional_equation_check, inversion_residual, log_bottom_row,
                                       log_closed_form_n1, log_coeffs, log_residue_matrix, recurrence_residual,
                                       recursion_data)
from src.anderson.tau_poly import TauPoly
from src.fields import matrix

CASES = [("ex82", 1), ("ex82", 2), ("ex83", 1), ("ex83", 2),
         pytest.param("ex83", 3, marks=pytest.mark.slow)]
DEPTH = 5
ORACLE = 3


# ---- the module -----------------------------------------------------------------------
@pytest.mark.parametrize("name,n", CASES)
def test_weierstrass_and_commutativity(stacks, name, n):
    mod = stacks(name, n).mod
    assert weierstrass_residual(mod).is_zero()
    assert commutator(mod).is_zero()


def test_rank_one_module_shape(stacks):
    stack = stacks("ex82", 1)
    mod, tb, ctx = stack.mod, stack.tb, stack.ctx
    assert mod.rho_t.degree() == 2
    assert mod.rho_t.coefficient(0) == ((ctx.theta,),)
    assert mod.rho_t.coefficient(1) == ((tb.a[0],),)
    assert mod.rho_t.coefficient(2) == ((ctx.one,),)


@pytest.mark.parametrize("name", ["ex82", "ex83"])
def test_rho_is_a_ring_map(stacks, name):
    stack = stacks(name, 2)
    mod, ctx = stack.mod, stack.ctx
    assert rho(mod, ctx.theta) == mod.rho_t
    assert rho(mod, ctx.eta) == mod.rho_y
    assert rho(mod, ctx.theta * ctx.eta + 1) == mod.rho_t * mod.rho_y + TauPoly.constant(ctx, matrix.identity(ctx, 2))
    with pytest.raises(ValueError):
        rho(mod, ctx.one / ctx.theta)


@pytest.mark.parametrize("name", ["ex82", "ex83"])
def test_d_is_a_ring_map(stacks, name):
    stack = stacks(name, 2)
    mod, ctx = stack.mod, stack.ctx
    assert d_of(mod, ctx.theta) == mod.d_theta
    assert d_of(mod, ctx.theta ** 3) == matrix.mat_pow(ctx, mod.d_theta, 3)
    assert d_of(mod, ctx.theta * ctx.eta) == matrix.mat_mul(mod.d_theta, mod.d_eta)
    assert all(mod.d_theta[i][i] == ctx.theta for i in range(2))
    assert all(mod.d_eta[i][i] == ctx.eta for i in range(2))


# ---- exponential and logarithm --------------------------------------------------------------
@pytest.mark.parametrize("name,n", [("ex82", 2), pytest.param("ex83", 2, marks=pytest.mark.slow)])
def test_exp_recursion(stacks, name, n):
    stack = stacks(name, n)
    exp = exp_coeffs(stack.mod, stack.tb, DEPTH)
    ctx = stack.ctx
    assert exp[0] == matrix.identity(ctx, n)
    data = recursion_data(stack.mod, stack.tb)
    for i in range(1, DEPTH + 1):
        assert matrix.mat_is_zero(recurrence_residual(stack.mod, data, exp[i - 1], exp[i], i))
    assert exp_coeffs_by_sylvester(stack.mod, DEPTH).mats == exp.mats


@pytest.mark.parametrize("name,n", [("ex82", 1), ("ex82", 2), ("ex83", 1),
                                    pytest.param("ex83", 2, marks=pytest.mark.slow)])
def test_log_inverts_exp(stacks, name, n):
    stack = stacks(name, n)
    exp = exp_coeffs(stack.mod, stack.tb, DEPTH)
    log = log_coeffs(exp)
    assert log[0] == matrix.identity(stack.ctx, n)
    for m in range(DEPTH + 1):
        assert matrix.mat_is_zero(inversion_residual(exp, log, m))


@pytest.mark.parametrize("name", ["ex82", "ex83"])
def test_rank_one_closed_forms(stacks, name):
    stack = stacks(name, 1)
    sylv = exp_coeffs_by_sylvester(stack.mod, DEPTH)
    assert [Q[0][0] for Q in sylv.mats] == exp_closed_form_n1(stack.tb, DEPTH)
    log = log_coeffs(exp_coeffs(stack.mod, stack.tb, DEPTH))
    assert [P[0][0] for P in log.mats] == log_closed_form_n1(stack.tb, DEPTH)


@pytest.mark.parametrize("name,n", [("ex82", 2), pytest.param("ex83", 2, marks=pytest.mark.slow)])
def test_exp_first_column_by_evaluation(stacks, name, n):
    stack = stacks(name, n)
    exp = exp_coeffs(stack.mod, stack.tb, ORACLE)
    for i in range(ORACLE + 1):
        assert exp_first_column(stack.tb, i) == list(matrix.column(exp[i], 0))


@pytest.mark.parametrize("name,n", [("ex82", 2), pytest.param("ex83", 2, marks=pytest.mark.slow)])
def test_log_by_residues(stacks, name, n):
    stack = stacks(name, n)
    log = log_coeffs(exp_coeffs(stack.mod, stack.tb, ORACLE))
    for i in range(ORACLE + 1):
        assert log_residue_matrix(stack.tb, i) == log[i]
        assert log_bottom_row(stack.tb, i) == list(log[i][-1])


@pytest.mark.parametrize("name", ["ex82", pytest.param("ex83", marks=pytest.mark.slow)])
def test_functional_equation(stacks, name):
    stack = stacks(name, 2)
    exp = exp_coeffs(stack.mod, stack.tb, 3)
    report = functional_equation_check(stack.mod, exp, 3)
    assert set(report) == {"t", "y"}
    for per_k in report.values():
        assert all(per_k.values()), per_k


def test_functional_equation_needs_enough_terms(stacks):
    stack = stacks("ex82", 2)
    exp = exp_coeffs(stack.mod, stack.tb, 1)
    with pytest.raises(ValueError):
        functional_equation_check(stack.mod, exp, 3)
