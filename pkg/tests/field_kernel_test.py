import sys, os
sys.path.append(os.path.join(os.path.dirname(__file__), ".."))

import random

import pytest

from src.config import DEFAULT_SEED, PROPERTY_CASES
from src.errors import DegreeOfZero, DivisionByZero, FieldError, NotAPower, SingularCurve
from src.fields.finite_field import FiniteField, default_modulus, is_irreducible_fp
from src.fields.function_field import KContext, k_arith, k_deg_sgn, k_frobenius, k_qth_root
from src.fields.poly_ring import PolyRing


# ---- F_q ----------------------------------------------------------------------------
@pytest.mark.parametrize("p,r", [(2, 1), (3, 1), (2, 2), (3, 2), (2, 3), (5, 2)])
def test_finite_field_axioms(p, r):
    F = FiniteField(p, r)
    for a in F.elements():
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
            assert F.pow(a, F.q - 1) == 1
        assert F.pow(a, F.q) == a


def test_finite_field_rejects_bad_input():
    with pytest.raises(FieldError):
        FiniteField(4)
    with pytest.raises(FieldError):
        FiniteField(2, 2, modulus=[1, 0, 1])
    with pytest.raises(DivisionByZero):
        FiniteField(3).inv(0)


def test_default_moduli_are_irreducible():
    for p, r in [(2, 2), (2, 3), (2, 4), (3, 2), (5, 2), (7, 2)]:
        assert is_irreducible_fp(default_modulus(p, r), p)


def test_digit_codes():
    F = FiniteField(2, 2)
    assert F.from_digits([0, 1]) == 2
    assert F.to_digits(3) == [1, 1]
    # x^2 = x + 1
    x = F.from_digits([0, 1])
    assert F.mul(x, x) == F.from_digits([1, 1])


def test_poly_ring_divmod_and_gcd():
    R = PolyRing(FiniteField(3))
    a = R.mul((1, 1), (2, 0, 1))
    q, r = R.divmod(a, (1, 1))
    assert q == (2, 0, 1) and r == ()
    assert R.gcd(a, R.mul((1, 1), (0, 1))) == (1, 1)


def test_poly_ring_large_products_match_schoolbook():
    R = PolyRing(FiniteField(2, 2))
    rng = random.Random(DEFAULT_SEED)
    a = tuple(rng.randrange(4) for _ in range(80)) + (1,)
    b = tuple(rng.randrange(4) for _ in range(70)) + (3,)
    expected = [0] * (len(a) + len(b) - 1)
    F = R.F
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            expected[i + j] = F.add(expected[i + j], F.mul(x, y))
    assert R.mul(a, b) == tuple(expected)
    q, r = R.divmod(R.mul(a, b), b)
    assert q == a and r == ()


# ---- K ------------------------------------------------------------------------------
def test_eta_squared_on_q3_curve(ctx82):
    eta, theta = ctx82.eta, ctx82.theta
    assert eta * eta == theta ** 3 + 2 * theta + 2


def test_eta_cubed_on_q3_curve(ctx82):
    eta, theta = ctx82.eta, ctx82.theta
    assert k_arith(ctx82, "mul", eta, eta * eta) == eta * (theta ** 3 + 2 * theta + 2)


def test_division_by_zero(ctx82):
    with pytest.raises(DivisionByZero):
        k_arith(ctx82, "div", ctx82.one, ctx82.zero)
    with pytest.raises(ValueError):
        k_arith(ctx82, "pow", ctx82.one, ctx82.one)


def test_singular_curve_rejected():
    with pytest.raises(SingularCurve):
        KContext(FiniteField(3), [0, 0, 0, 0, 0])


def test_deg_sgn(ctx82, ctx83):
    for ctx in (ctx82, ctx83):
        assert k_deg_sgn(ctx.theta) == (2, 1)
        assert k_deg_sgn(ctx.eta) == (3, 1)
        assert k_deg_sgn(ctx.theta * ctx.eta + 1) == (5, 1)
        assert k_deg_sgn(ctx.one / ctx.theta) == (-2, 1)
    assert k_deg_sgn(2 * ctx82.theta) == (2, 2)
    with pytest.raises(DegreeOfZero):
        k_deg_sgn(ctx82.zero)


def test_frobenius_is_qth_power(ctx82, ctx83):
    for ctx in (ctx82, ctx83):
        x = (ctx.eta + ctx.theta) / (ctx.theta + 1)
        assert k_frobenius(ctx, x, 1) == x ** ctx.q
        assert k_frobenius(ctx, x, 2) == x ** (ctx.q ** 2)


def test_qth_root(ctx82, ctx83):
    for ctx in (ctx82, ctx83):
        x = ctx.eta * ctx.theta + 1
        assert k_qth_root(ctx, x ** ctx.q) == x
        with pytest.raises(NotAPower):
            k_qth_root(ctx, ctx.theta)


def test_theta_part_view(ctx82):
    x = (ctx82.theta + 1) / (ctx82.theta ** 2)
    view = x.theta_part()
    assert view.num == (1, 1) and view.den == (0, 0, 1)
    with pytest.raises(ValueError):
        ctx82.eta.theta_part()


@pytest.mark.parametrize("name", ["ctx82", "ctx83"])
def test_field_properties_random(name, request):
    ctx = request.getfixturevalue(name)
    rng = random.Random(DEFAULT_SEED)
    for _ in range(PROPERTY_CASES):
        x, y, z = (ctx.random_elem(rng, max_deg=2) for _ in range(3))
        assert (x + y) * z == x * z + y * z
        assert (x * y) * z == x * (y * z)
        assert (x + y).twist(1) == x.twist(1) + y.twist(1)
        assert (x * y).twist(1) == x.twist(1) * y.twist(1)
        assert ctx.qth_root(x.twist(1)) == x
        if not x.is_zero():
            assert (x * x.inv()).is_one()
        if not x.is_zero() and not y.is_zero():
            (dx, sx), (dy, sy) = ctx.deg_sgn(x), ctx.deg_sgn(y)
            assert ctx.deg_sgn(x * y) == (dx + dy, ctx.F.mul(sx, sy))


def test_json_round_trip(ctx83):
    rng = random.Random(DEFAULT_SEED)
    for _ in range(10):
        x = ctx83.random_elem(rng)
        assert ctx83.from_json(x.to_json()) == x
