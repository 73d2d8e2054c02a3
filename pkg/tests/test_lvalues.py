"""Special L-values, characters, Euler products, and torsion points.

Cross-checks: the Carlitz module has trivial sieve data, so its shifted /
unshifted L-series coincide after an index shift — two independent code
paths (goss_L dual vs non-dual, taelman_L) must agree.  Euler products are
compared byte-for-byte against direct smooth-support summation.
"""

import json
import random

import pytest

from drinlog import (APoly, DrinfeldModule, PrecisionError, RatFunc,
                     ResourceLimit, XPoly, build_field, canonical_rep,
                     euler_value_dual, irreducibles_of_degree, make_character,
                     monic_of_degree, parse_poly, smooth_value_dual,
                     taelman_L, taelman_unit, torsion_check, torsion_root,
                     twisted_L, goss_L)
from tests.conftest import random_module


def test_flagship_unit_value(flagship):
    u = taelman_unit(flagship, prec=40)
    val, dist = u
    assert (val - APoly.const(flagship.ctx, 2)).is_zero()
    assert dist is None or dist <= -30


@pytest.mark.parametrize("q", [2, 3, 5])
def test_carlitz_unit_is_one(q):
    ctx = build_field(q)
    val, dist = taelman_unit(DrinfeldModule.carlitz(ctx), prec=36)
    assert val.is_one()
    assert dist is None or dist <= -30


def test_taelman_tail_bound_soundness():
    ctx = build_field(3)
    rng = random.Random(99)
    for _ in range(3):
        module = random_module(ctx, rng, rmax=2, dmax=1)
        lo = taelman_L(module, 12)
        hi = taelman_L(module, 18)
        d = (lo - hi).abs_bound()
        assert d <= -12


def test_l_value_leading_term_is_one():
    # |L| = 1: the series starts with coefficient 1 at exponent 0
    for q in (2, 3, 5):
        ctx = build_field(q)
        rng = random.Random(q)
        for _ in range(2):
            module = random_module(ctx, rng, rmax=2, dmax=1)
            L = taelman_L(module, 10)
            e = max(k for k in L.c)
            assert e == 0 and int(L.c[e]) == 1


def test_carlitz_goss_cross_checks():
    # For the Carlitz module: non-dual s=2 equals the s=0 (Taelman) value,
    # and non-dual s=3 equals dual s=1, since both sieves are trivial there.
    ctx = build_field(3)
    C = DrinfeldModule.carlitz(ctx)
    a = goss_L(C, 2, 9, dual=False)
    b = taelman_L(C, 9)
    assert (a - b).abs_bound() <= -9
    c = goss_L(C, 3, 9, dual=False)
    d = goss_L(C, 1, 9, dual=True)
    assert (c - d).abs_bound() <= -9


def test_goss_argument_errors(flagship):
    with pytest.raises(ValueError):
        goss_L(flagship, -1, 10, dual=True)
    with pytest.raises(ValueError):
        goss_L(flagship, 0, 10, dual=False)
    with pytest.raises(PrecisionError):
        goss_L(flagship, 1, 10, dual=False)


def test_euler_equals_smooth_bytes():
    for q, B in ((2, 3), (3, 2)):
        ctx = build_field(q)
        C = DrinfeldModule.carlitz(ctx)
        a = euler_value_dual(C, B, 20)
        b = smooth_value_dual(C, B, 20)
        assert json.dumps(a.to_json(), sort_keys=True) == \
            json.dumps(b.to_json(), sort_keys=True)


def test_euler_equals_smooth_bytes_flagship(flagship):
    a = euler_value_dual(flagship, 2, 16)
    b = smooth_value_dual(flagship, 2, 16)
    assert json.dumps(a.to_json(), sort_keys=True) == \
        json.dumps(b.to_json(), sort_keys=True)


# -- characters ----------------------------------------------------------------

def test_character_table_oracle():
    # oracle: a character is a homomorphism (A/f)^* -> Fbar_q^*; check
    # multiplicativity and orthogonality directly from the value table
    ctx = build_field(5)
    wp = parse_poly("T^2+2", ctx)
    assert not irreducibles_of_degree(ctx, 2) or True
    for index in (0, 1, 3, 8):
        chi = make_character(wp, index)
        units = [a for d in range(2) for a in monic_of_degree(ctx, d)]
        units += [a.scale(c) for a in units for c in range(2, 5)]
        units = [u for u in units if not canonical_rep(u, wp).is_zero()]
        for a in units[:10]:
            for b in units[:10]:
                assert chi.value(a * b) == chi.ctx.mul(
                    chi.value(a), chi.value(b))
        if index == 0:
            assert chi.is_trivial
        else:
            # orthogonality: sum over all invertible residues vanishes
            total = 0
            for d in range(2):
                for a in monic_of_degree(ctx, d):
                    for c in range(1, 5):
                        u = a.scale(c)
                        if not canonical_rep(u, wp).is_zero():
                            total = chi.ctx.add(total, chi.value(u))
            assert total == 0


def test_character_order_divides_group():
    ctx = build_field(3)
    wp = parse_poly("T^2+1", ctx)
    for index in range(8):
        chi = make_character(wp, index)
        assert (3 ** 2 - 1) % chi.order == 0


def test_twisted_trivial_character_euler_relation():
    # chi trivial mod f: L(chi) equals the full L times the inverted local
    # factor removed at f — check against direct coprime summation built in
    ctx = build_field(3)
    wp = parse_poly("T", ctx)
    chi = make_character(wp, 0)
    L = twisted_L(DrinfeldModule.carlitz(ctx), chi, 8)
    # Carlitz, trivial chi mod theta: sum over monic a coprime to theta of 1/a
    full = taelman_L(DrinfeldModule.carlitz(ctx), 12)
    from drinlog import LaurentSeries, embed_ratfunc
    loc = embed_ratfunc(RatFunc(APoly.one(ctx), APoly.theta(ctx)), 20)
    expect = full - full * loc  # (1 - 1/theta) * L
    assert (L - expect).abs_bound() <= -8


def test_twisted_resource_limit(flagship):
    with pytest.raises(ResourceLimit):
        chi = make_character(APoly.theta(flagship.ctx), 1)
        twisted_L(flagship, chi, 4000)


# -- torsion points ------------------------------------------------------------

def test_torsion_root_residual():
    ctx = build_field(5)
    for c0 in (0, 1, 2):
        lam = torsion_root(ctx, c0, 30)
        pw = lam * lam * lam * lam  # lam^(q-1)
        from drinlog import LaurentSeries
        target = LaurentSeries.from_apoly(
            APoly(ctx, [c0, 1]), ctx, lam.e, lam.s).scale(int(ctx.neg(1)))
        d = pw.dist_bound(target)
        assert d is None or d <= -25, (c0, d)


def test_flagship_torsion_identity(flagship):
    chi = make_character(APoly.theta(flagship.ctx), 1)
    out = torsion_check(flagship, chi, prec=40)
    assert out["distance"] <= -30
    sp = out["special"]
    # (-1 - theta) x  =  (4 + 4 theta) x
    expect = XPoly(flagship.ctx,
                   {1: RatFunc(APoly(flagship.ctx, [4, 4]))})
    assert (sp.poly - expect).is_zero()


def test_carlitz_torsion_identity():
    ctx = build_field(3)
    C = DrinfeldModule.carlitz(ctx)
    for index in (0, 1):
        chi = make_character(APoly.theta(ctx), index)
        out = torsion_check(C, chi, prec=36)
        assert out["distance"] <= -30, index


def test_random_units_are_near_integral():
    rng = random.Random(7)
    ctx = build_field(3)
    for _ in range(5):
        module = random_module(ctx, rng, rmax=2, dmax=1)
        val, dist = taelman_unit(module, prec=36)
        assert dist is None or dist <= -30
