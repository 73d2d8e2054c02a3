"""Exponential/logarithm coefficients and their certified size bounds."""

import random
from fractions import Fraction

import pytest

from drinlog import (APoly, DrinfeldModule, LaurentSeries, RatFunc, XPoly,
                     build_field, carlitz_act, embed_ratfunc, parse_poly, star)
from tests.conftest import random_module


# -- oracle: the functional equations define alpha and beta uniquely -----------

def check_exp_functional_equation(module, alphas):
    """alpha_i (theta^(q^i) - theta) = sum_t kappa_t alpha_{i-t}^(q^t)."""
    ctx = module.ctx
    th = RatFunc(APoly.theta(ctx))
    for i in range(1, len(alphas)):
        lhs = alphas[i] * (th.frob(i) - th)
        rhs = RatFunc.zero(ctx)
        for t in range(1, min(i, module.r) + 1):
            rhs = rhs + RatFunc(module.kappa[t - 1]) * alphas[i - t].frob(t)
        assert (lhs - rhs).is_zero(), i


def check_log_functional_equation(module, betas):
    """beta_i (theta - theta^(q^i)) = sum_t beta_{i-t} kappa_t^(q^{i-t})."""
    ctx = module.ctx
    th = RatFunc(APoly.theta(ctx))
    for i in range(1, len(betas)):
        lhs = betas[i] * (th - th.frob(i))
        rhs = RatFunc.zero(ctx)
        for t in range(1, min(i, module.r) + 1):
            rhs = rhs + betas[i - t] * RatFunc(module.kappa[t - 1]).frob(i - t)
        assert (lhs - rhs).is_zero(), i


@pytest.mark.parametrize("q", [2, 3, 5])
def test_exp_log_satisfy_defining_recursions(q):
    ctx = build_field(q)
    rng = random.Random(q * 13)
    for _ in range(6):
        module = random_module(ctx, rng, rmax=3, dmax=q)
        check_exp_functional_equation(module, module.exp_coeffs(4))
        check_log_functional_equation(module, module.log_coeffs(4))


@pytest.mark.parametrize("q", [2, 3, 5])
def test_exp_log_formal_inverse(q):
    # sum_{j+k=i} alpha_j beta_k^(q^j) = [i == 0], through i = 4
    ctx = build_field(q)
    rng = random.Random(q * 19)
    for _ in range(5):
        module = random_module(ctx, rng, rmax=3, dmax=q)
        alphas = module.exp_coeffs(4)
        betas = module.log_coeffs(4)
        for i in range(5):
            acc = RatFunc.zero(ctx)
            for j in range(i + 1):
                acc = acc + alphas[j] * betas[i - j].frob(j)
            if i == 0:
                assert acc.num.is_one() and acc.den.is_one()
            else:
                assert acc.is_zero(), i


def test_carlitz_exp_coefficients():
    # alpha_i = 1 / D_i with D_i = (theta^(q^i)-theta) D_{i-1}^q
    ctx = build_field(3)
    C = DrinfeldModule.carlitz(ctx)
    alphas = C.exp_coeffs(3)
    D = APoly.one(ctx)
    for i in range(1, 4):
        D = (APoly.theta(ctx, ctx.q ** i) - APoly.theta(ctx)) * D.pow(ctx.q)
        prod = alphas[i] * RatFunc(D)
        assert prod.num.is_one() and prod.den.is_one(), i


@pytest.mark.parametrize("q", [2, 3, 5])
def test_alpha_beta_size_bounds_certified(q):
    ctx = build_field(q)
    rng = random.Random(q * 23)
    for _ in range(5):
        module = random_module(ctx, rng, rmax=3, dmax=q)
        alphas = module.exp_coeffs(4)
        betas = module.log_coeffs(4)
        for i in range(5):
            if not alphas[i].is_zero():
                da = alphas[i].num.deg() - alphas[i].den.deg()
                assert da <= module.alpha_size_bound(i), i
            if not betas[i].is_zero():
                db = betas[i].num.deg() - betas[i].den.deg()
                assert db <= module.beta_size_bound(i), i


def test_exp_eval_matches_direct_sum(flagship):
    ctx = flagship.ctx
    u = embed_ratfunc(RatFunc(APoly.one(ctx), APoly.theta(ctx)), 45, ctx)
    got = flagship.exp_eval(u, 35)
    # direct: sum alpha_i u^(q^i), truncated where terms drop below the floor
    direct = LaurentSeries(ctx, 1, 1, {}, -36)
    for i, a in enumerate(flagship.exp_coeffs(3)):
        ai = embed_ratfunc(a, 80, ctx)
        direct = direct + (ai * u.frob(i)).truncate(-36)
    d = got.dist_bound(direct)
    assert d is None or d <= -34


def test_exp_eval_zero_and_linearity(flagship):
    ctx = flagship.ctx
    z = LaurentSeries.zero(ctx)
    assert flagship.exp_eval(z, 30).abs_bound() is None
    u = embed_ratfunc(RatFunc(APoly.one(ctx), APoly.theta(ctx).pow(2)), 40, ctx)
    v = embed_ratfunc(RatFunc(APoly.one(ctx), APoly.theta(ctx).pow(3)), 40, ctx)
    lhs = flagship.exp_eval(u + v, 30)
    rhs = flagship.exp_eval(u, 32) + flagship.exp_eval(v, 32)
    d = lhs.dist_bound(rhs)
    assert d is None or d <= -29


def test_log_coeffs_laurent_multi_agrees(flagship):
    ctx = flagship.ctx
    single = flagship.log_coeffs_laurent(6, ctx, 1, 1, -30)
    multi = flagship.log_coeffs_laurent_multi([-30] * 7, ctx, 1, 1)
    for a, b in zip(single, multi):
        d = a.dist_bound(b)
        assert d is None or d <= -29


def test_carlitz_action_and_star():
    ctx = build_field(3)
    th = APoly.theta(ctx)
    C = carlitz_act(ctx, th)
    assert (C.coeff(1).num - th).is_zero() and C.coeff(3).num.is_one()
    # star is monoidal: (ab) * beta = a * (b * beta)
    a = parse_poly("T+1", ctx)
    b = parse_poly("T^2+2", ctx)
    beta = XPoly(ctx, {2: RatFunc.one(ctx), 0: RatFunc(th)})
    lhs = star(a * b, beta)
    rhs = star(a, star(b, beta))
    assert (lhs - rhs).is_zero()


def test_kappa_r_must_be_nonzero():
    ctx = build_field(3)
    with pytest.raises(ValueError):
        DrinfeldModule(ctx, [APoly.theta(ctx), APoly.zero(ctx)])
    with pytest.raises(ValueError):
        DrinfeldModule(ctx, [])
