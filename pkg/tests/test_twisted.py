"""Twisted polynomials and the module homomorphism phi."""

import random

import pytest

from drinlog import APoly, DrinfeldModule, TwistedPoly, brac, build_field, \
    phi_of, reduce_mod
from tests.conftest import random_module


# -- oracle: evaluate a twisted polynomial as an additive map ------------------

def twisted_apply(tp, value, f):
    """Apply sum c_k tau^k to a residue value mod f, with tau = q-power."""
    ctx = f.ctx
    acc = APoly.zero(ctx)
    cur = value % f
    for k, c in enumerate(tp.coeffs):
        acc = (acc + c * cur) % f
        cur = cur.pow(ctx.q) % f
    return acc % f


@pytest.mark.parametrize("q", [2, 3, 5])
def test_phi_is_a_ring_homomorphism(q):
    ctx = build_field(q)
    rng = random.Random(q * 31)
    for _ in range(8):
        module = random_module(ctx, rng, rmax=3, dmax=2)
        a = APoly(ctx, [rng.randrange(q) for _ in range(3)])
        b = APoly(ctx, [rng.randrange(q) for _ in range(3)])
        pa, pb = phi_of(module, a), phi_of(module, b)
        assert phi_of(module, a + b) == pa + pb
        assert phi_of(module, a * b) == pa * pb


@pytest.mark.parametrize("q", [2, 3, 5])
def test_phi_commutes_with_evaluation(q):
    # phi_a composed with phi_b evaluated on points equals phi_{ab}
    ctx = build_field(q)
    rng = random.Random(q * 7)
    module = random_module(ctx, rng, rmax=2, dmax=1)
    f = APoly(ctx, [1, 1, 1]).monic()
    for _ in range(10):
        a = APoly(ctx, [rng.randrange(q) for _ in range(2)])
        v = APoly(ctx, [rng.randrange(q) for _ in range(2)])
        via_tp = twisted_apply(phi_of(module, a, f), v, f)
        via_exact = twisted_apply(phi_of(module, a), v, f)
        assert (via_tp - via_exact).is_zero()


def test_carlitz_brackets():
    # C_theta = theta + tau; C_{theta^2} = theta^2 + (theta^q + theta) tau + tau^2
    ctx = build_field(5)
    C = DrinfeldModule.carlitz(ctx)
    t2 = APoly.theta(ctx).pow(2)
    assert (brac(C, t2, 0) - t2).is_zero()
    assert (brac(C, t2, 1) - (APoly.theta(ctx).pow(5) + APoly.theta(ctx))).is_zero()
    assert brac(C, t2, 2).is_one()
    assert brac(C, t2, 3).is_zero()


def test_twisted_mul_noncommutative():
    ctx = build_field(3)
    th = APoly.theta(ctx)
    tau = TwistedPoly(ctx, [APoly.zero(ctx), APoly.one(ctx)])
    c = TwistedPoly(ctx, [th])
    left = tau * c
    right = c * tau
    assert (left.coeffs[1] - th.pow(3)).is_zero()
    assert (right.coeffs[1] - th).is_zero()
    assert left != right


def test_reduce_mod_consistency():
    ctx = build_field(3)
    module = DrinfeldModule.carlitz(ctx)
    f = APoly(ctx, [1, 0, 1])  # T^2 + 1
    a = APoly.theta(ctx).pow(4) + APoly.one(ctx)
    assert reduce_mod(phi_of(module, a), f) == phi_of(module, a, f)
