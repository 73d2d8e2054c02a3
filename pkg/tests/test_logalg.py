"""Deformed Moebius sieve and log-algebraic polynomials.

Oracles: direct enumeration of Dirichlet blocks (block_sum_direct) and the
exponential-side identity (e_block), both independent of the kernelized
sieve + blockwise log-inversion paths under test.
"""

import random

import pytest

from drinlog import (APoly, DrinfeldModule, RatFunc, XPoly, build_field,
                     block_sum, block_sum_coprime, block_sum_direct, e_block,
                     log_algebraic_poly, monic_of_degree, mu_sieve,
                     parse_poly, vanishing_index)
from drinlog.logalg import MuTable, common_denominator
from drinlog.frobenius import hasse_mu_prime
from tests.conftest import random_module


# -- oracle: mu by multiplicativity from prime data ----------------------------

def oracle_mu(module, a):
    """mu(a) from scratch: factor a, walk each prime-power chain through
    the Frobenius recursion."""
    from drinlog.poly import factor_monic
    from drinlog.frobenius import frobenius_data
    ctx = module.ctx
    acc = APoly.one(ctx)
    for f, m in factor_monic(a):
        fd = frobenius_data(module, f, check=False)
        chain = [APoly.one(ctx)]
        for k in range(1, m + 1):
            if fd.r0 == 0:
                chain.append(APoly.zero(ctx))
                continue
            s = APoly.zero(ctx)
            fp = APoly.one(ctx)
            for l in range(1, min(k, fd.r0) + 1):
                s = s + fd.b[l - 1] * fp * chain[k - l]
                fp = fp * f
            chain.append(s)
        acc = acc * chain[m]
    return acc


@pytest.mark.parametrize("q", [2, 3, 5])
def test_mu_sieve_matches_multiplicative_oracle(q):
    ctx = build_field(q)
    rng = random.Random(q * 3)
    for _ in range(3):
        module = random_module(ctx, rng, rmax=3, dmax=2)
        mt = mu_sieve(module, 4)
        for d in range(5):
            for a in monic_of_degree(ctx, d):
                assert (mt.mu_of(a) - oracle_mu(module, a)).is_zero(), \
                    (q, d, [int(v) for v in a.c])


@pytest.mark.parametrize("q", [2, 3, 5])
def test_mu_degree_bound(q):
    ctx = build_field(q)
    rng = random.Random(q * 5)
    for _ in range(3):
        module = random_module(ctx, rng, rmax=3, dmax=q)
        r = module.r
        mt = mu_sieve(module, 5)
        for d in range(6):
            for a in monic_of_degree(ctx, d):
                m = mt.mu_of(a)
                if not m.is_zero():
                    assert m.deg() * r <= (r - 1) * d


def test_carlitz_mu_is_one():
    for q in (2, 3):
        ctx = build_field(q)
        C = DrinfeldModule.carlitz(ctx)
        mt = mu_sieve(C, 6)
        for d in range(7):
            for a in monic_of_degree(ctx, d):
                assert mt.mu_of(a).is_one()


def test_flagship_mu_closed_forms(flagship):
    # degree 1: mu(theta+c) = g(-c); degree 2 display against hasse values
    ctx = flagship.ctx
    g = flagship.kappa[0]
    mt = mu_sieve(flagship, 2)
    for c in range(5):
        f = APoly(ctx, [c, 1])
        m = mt.mu_of(f)
        gc = int(g.eval_scalar(int(ctx.neg(c))))
        assert (m - APoly.const(ctx, gc)).is_zero()
    from drinlog import irreducibles_of_degree, canonical_rep
    for f in irreducibles_of_degree(ctx, 2):
        expect = canonical_rep(
            (APoly.theta(ctx, 25) + APoly.theta(ctx)
             + APoly.const(ctx, int(f.c[1]))) * flagship.kappa[1]
            + g.pow(6), f)
        assert (mt.mu_of(f) - expect).is_zero()


@pytest.mark.parametrize("q", [2, 3, 5])
def test_block_sum_matches_enumeration(q):
    ctx = build_field(q)
    rng = random.Random(q * 7)
    x = XPoly.x(ctx)
    th = XPoly(ctx, {0: RatFunc(APoly.theta(ctx))})
    for _ in range(3):
        module = random_module(ctx, rng, rmax=2, dmax=2)
        mt = mu_sieve(module, 3)
        for beta in (XPoly(ctx, {0: RatFunc.one(ctx)}), x, x + th):
            for i in range(4):
                a = block_sum(module, beta, i, mt)
                b = block_sum_direct(module, beta, i, mt)
                assert (a - b).is_zero(), (q, i)


def test_block_sum_coprime(flagship):
    ctx = flagship.ctx
    f = parse_poly("T+1", ctx)
    beta = XPoly.x(ctx)
    mt = mu_sieve(flagship, 2)
    for i in range(3):
        full = block_sum(flagship, beta, i, mt)
        cop = block_sum_coprime(flagship, beta, i, f, mt)
        # difference must be the terms with f | a
        rest = XPoly.zero(ctx)
        for a in monic_of_degree(ctx, i):
            if (a % f).is_zero():
                from drinlog import star
                rest = rest + star(a, beta) * RatFunc(mt.mu_of(a), a)
        assert (full - cop - rest).is_zero()


def test_common_denominator_divisibility():
    ctx = build_field(3)
    for i in range(4):
        M = common_denominator(ctx, i)
        for a in monic_of_degree(ctx, i):
            assert (M % a).is_zero()


@pytest.mark.parametrize("q", [2, 3, 5])
def test_log_algebraic_poly_against_exp_identity(q):
    ctx = build_field(q)
    rng = random.Random(q * 11)
    x = XPoly.x(ctx)
    for _ in range(3):
        module = random_module(ctx, rng, rmax=2, dmax=min(2, q))
        for beta in (XPoly(ctx, {0: RatFunc.one(ctx)}), x):
            E = log_algebraic_poly(module, beta)
            imax = vanishing_index(module, beta)
            assert len(E) <= imax + 1
            for i in range(imax + 2):
                expect = E[i] if i < len(E) else XPoly.zero(ctx)
                got = e_block(module, beta, i)
                assert (got - expect).is_zero(), (q, i)
            for Ei in E:
                assert Ei.is_integral()


def test_flagship_golden_values(flagship):
    ctx = flagship.ctx
    one = XPoly(ctx, {0: RatFunc.one(ctx)})
    E = log_algebraic_poly(flagship, one)
    # z + b_5 z^5 with b_5 = 1
    assert len(E) == 2 and E[0].coeff(0).num.is_one()
    assert E[1].coeff(0).num.is_one()
    Ex = log_algebraic_poly(flagship, XPoly.x(ctx))
    # x z + (b_5 x^5 - b_4 x) z^5 = x z + (x^5 + 3x) z^5
    assert Ex[0] == XPoly.x(ctx)
    assert (Ex[1].coeff(5).num).is_one()
    assert (Ex[1].coeff(1).num - APoly.const(ctx, 3)).is_zero()
