"""Frobenius characteristic polynomials against the matrix oracle.

The oracle — the characteristic polynomial of the theta-action matrix on
A/(f) — is linear algebra over F_q, fully independent of the bracket
congruence route under test.
"""

import random

import pytest

from drinlog import (APoly, DrinfeldModule, build_field, canonical_rep,
                     frobenius_data, hasse_mu_batch, hasse_mu_prime,
                     irreducibles_of_degree, parse_poly, unit_count,
                     unit_count_linear_algebra)
from drinlog.frobenius import reduction_rank, theta_action_matrix, \
    charpoly_berkowitz
from tests.conftest import random_module


def test_berkowitz_small_matrices():
    # frozen from hand computation: det(theta*I - M)
    ctx = build_field(5)
    assert (charpoly_berkowitz([[2]], ctx) - parse_poly("T-2", ctx)).is_zero()
    m = [[1, 2], [3, 4]]
    # det(tI - m) = t^2 - 5t + (4 - 6) = T^2 + 3 over F_5
    assert (charpoly_berkowitz(m, ctx) - parse_poly("T^2+3", ctx)).is_zero()
    # companion matrix of T^3 + 2T + 1
    comp = [[0, 0, 4], [1, 0, 3], [0, 1, 0]]
    assert (charpoly_berkowitz(comp, ctx) - parse_poly("T^3+2*T+1", ctx)).is_zero()


def test_carlitz_frobenius_frozen():
    # Carlitz: b_1 = 1, c_f = -1, P_f = x - f, count = f - 1
    ctx = build_field(2)
    C = DrinfeldModule.carlitz(ctx)
    f = parse_poly("T^2+T+1", ctx)
    fd = frobenius_data(C, f)
    assert fd.r0 == 1 and fd.b[0].is_one()
    assert fd.c_f == 1  # -1 = 1 over F_2
    assert (fd.charpoly[0] - f).is_zero() and fd.charpoly[1].is_one()
    assert (fd.unit_count() - parse_poly("T^2+T", ctx)).is_zero()
    assert (unit_count_linear_algebra(C, f) - parse_poly("T^2+T", ctx)).is_zero()


def test_flagship_degree_one_brackets(flagship):
    # rank 2, f = theta + c: b_1 = g(-c)
    ctx = flagship.ctx
    g = flagship.kappa[0]
    for c in range(5):
        f = APoly(ctx, [c, 1])
        h = hasse_mu_prime(flagship, f)
        gc = int(g.eval_scalar(int(ctx.neg(c))))
        if gc == 0:
            assert h.is_zero()
        else:
            assert h.is_const() and int(h.lead()) == gc
            fd = frobenius_data(flagship, f)
            assert (fd.b[0] - h).is_zero()


def test_flagship_degree_two_brackets(flagship):
    # rank 2, f = theta^2+c1 theta+c0: b_1 = ((theta^(q^2)+theta+c1) Delta + g^(q+1)) mod f
    ctx = flagship.ctx
    g, Delta = flagship.kappa
    q = ctx.q
    rng = random.Random(3)
    count = 0
    for f in irreducibles_of_degree(ctx, 2):
        c1 = APoly.const(ctx, int(f.c[1]))
        expect = canonical_rep(
            (APoly.theta(ctx, q * q) + APoly.theta(ctx) + c1) * Delta
            + g.pow(q + 1), f)
        fd = frobenius_data(flagship, f)
        assert (fd.b[0] - expect).is_zero()
        count += 1
    assert count == 10


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_matrix_oracle_cross_validation(q):
    ctx = build_field(q)
    rng = random.Random(q * 41)
    for _ in range(6):
        module = random_module(ctx, rng, rmax=3, dmax=q)
        for d in (1, 2):
            for f in irreducibles_of_degree(ctx, d):
                fd = frobenius_data(module, f, check=True)
                oracle = unit_count_linear_algebra(module, f)
                if fd.r0 == 0:
                    assert (oracle - f).is_zero()
                    assert fd.charpoly == [f]
                else:
                    viaP = fd.charpoly_at_one().scale(fd.c_f)
                    assert (oracle - viaP).is_zero()
                    assert (oracle - fd.unit_count()).is_zero()
                    assert (unit_count(module, f) - oracle).is_zero()


def test_reduction_rank_conventions():
    ctx = build_field(3)
    f = parse_poly("T+1", ctx)
    bad = DrinfeldModule(ctx, [APoly.theta(ctx), f])  # f | kappa_2
    assert reduction_rank(bad, f) == 1
    worse = DrinfeldModule(ctx, [f, f * f])
    assert reduction_rank(worse, f) == 0
    fd = frobenius_data(worse, f)
    assert fd.r0 == 0 and fd.b == [] and (fd.unit_count() - f).is_zero()


@pytest.mark.parametrize("q", [2, 3, 5])
def test_degree_bounds_on_b(q):
    ctx = build_field(q)
    rng = random.Random(q * 43)
    for _ in range(5):
        module = random_module(ctx, rng, rmax=3, dmax=q)
        for d in (1, 2, 3):
            for f in irreducibles_of_degree(ctx, d):
                fd = frobenius_data(module, f, check=False)
                for l, bl in enumerate(fd.b, start=1):
                    if not bl.is_zero():
                        assert bl.deg() * fd.r0 <= (fd.r0 - l) * d


def test_hasse_prime_equals_b1(flagship):
    ctx = flagship.ctx
    for d in (1, 2, 3):
        for f in irreducibles_of_degree(ctx, d):
            h = hasse_mu_prime(flagship, f)
            fd = frobenius_data(flagship, f)
            if fd.r0 == 0:
                assert h.is_zero()
            else:
                assert (h - fd.b[0]).is_zero()


def test_hasse_batch_matches_loop(flagship):
    import numpy as np
    ctx = flagship.ctx
    d = 2
    fs = irreducibles_of_degree(ctx, d)
    F = np.array([[int(f.c[j]) for j in range(d + 1)] for f in fs],
                 dtype=np.int64)
    batch = hasse_mu_batch(flagship, ctx, F)
    for row, f in zip(batch, fs):
        got = APoly(ctx, [int(v) for v in row])
        assert (got - hasse_mu_prime(flagship, f)).is_zero()
