"""Polynomial ring over F_q[T]: division, gcd, irreducibility, parsing."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from drinlog import (APoly, RatFunc, XPoly, build_field, canonical_rep,
                     factor_monic, format_poly, irreducibles_of_degree,
                     is_irreducible, monic_of_degree, parse_poly)


# -- oracle: irreducibility by exhaustive trial division -----------------------

def oracle_irreducible(f):
    ctx = f.ctx
    if f.deg() < 1:
        return False
    for d in range(1, f.deg() // 2 + 1):
        for g in monic_of_degree(ctx, d):
            if (f % g).is_zero():
                return False
    return True


def _random_poly(ctx, rng, dmax):
    d = rng.randint(0, dmax)
    return APoly(ctx, [rng.randrange(ctx.Q) for _ in range(d + 1)])


@pytest.mark.parametrize("q", [2, 3, 5])
def test_divmod_and_gcd(q):
    ctx = build_field(q)
    rng = random.Random(q)
    for _ in range(80):
        a = _random_poly(ctx, rng, 8)
        b = _random_poly(ctx, rng, 5)
        if b.is_zero():
            continue
        quo, rem = divmod(a, b)
        assert (quo * b + rem - a).is_zero()
        assert rem.is_zero() or rem.deg() < b.deg()
        from drinlog.poly import poly_gcd
        g = poly_gcd(a, b)
        if not g.is_zero():
            assert (a % g).is_zero() and (b % g).is_zero()
            assert g.is_monic()


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_irreducibility_matches_oracle(q):
    ctx = build_field(q)
    for d in range(1, 4):
        for f in monic_of_degree(ctx, d):
            assert is_irreducible(f) == oracle_irreducible(f), format_poly(f)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_irreducible_counts(q):
    # Gauss: number of monic irreducibles of degree d is (1/d) sum mu(d/e) q^e
    ctx = build_field(q)
    from math import prod
    counts = {1: q, 2: (q * q - q) // 2, 3: (q ** 3 - q) // 3}
    for d, expected in counts.items():
        assert len(irreducibles_of_degree(ctx, d)) == expected


@pytest.mark.parametrize("q", [2, 3, 5])
def test_factor_monic_reconstructs(q):
    ctx = build_field(q)
    rng = random.Random(17 * q)
    for _ in range(30):
        f = _random_poly(ctx, rng, 6).monic() if not _random_poly(
            ctx, rng, 6).is_zero() else APoly.one(ctx)
        if f.is_zero() or f.deg() < 1:
            continue
        f = f.monic()
        facs = factor_monic(f)
        acc = APoly.one(ctx)
        for g, m in facs:
            assert is_irreducible(g) and g.is_monic()
            acc = acc * g.pow(m)
        assert (acc - f).is_zero()


def test_canonical_rep_properties():
    ctx = build_field(3)
    f = parse_poly("T^2+1", ctx)
    rng = random.Random(5)
    for _ in range(40):
        a = _random_poly(ctx, rng, 6)
        r = canonical_rep(a, f)
        assert r.is_zero() or r.deg() < f.deg()
        assert ((a - r) % f).is_zero()
    # rational inputs: den must be invertible mod f
    r = canonical_rep(RatFunc(APoly.one(ctx), parse_poly("T", ctx)), f)
    assert ((r * parse_poly("T", ctx) - APoly.one(ctx)) % f).is_zero()


@pytest.mark.parametrize("q,k", [(2, 1), (3, 1), (5, 1), (4, 1), (9, 1)])
def test_format_parse_round_trip(q, k):
    ctx = build_field(q, k)
    rng = random.Random(100 + q)
    for _ in range(50):
        a = _random_poly(ctx, rng, 6)
        assert (parse_poly(format_poly(a), ctx) - a).is_zero()


def test_parse_errors():
    ctx = build_field(5)
    with pytest.raises(ValueError):
        parse_poly("T + %", ctx)
    with pytest.raises(ValueError):
        parse_poly("y + 1", ctx)
    with pytest.raises(ValueError):
        parse_poly("u + 1", ctx)  # u only exists over non-prime fields
    with pytest.raises(ValueError):
        parse_poly("T^x", ctx)


def test_parse_grammar():
    ctx = build_field(5)
    a = parse_poly("T^5+2*T^4", ctx)
    assert a.deg() == 5 and int(a.c[4]) == 2 and int(a.c[5]) == 1
    assert (parse_poly("(T+1)*(T-1)", ctx) - parse_poly("T^2-1", ctx)).is_zero()
    assert (parse_poly("-T", ctx) + parse_poly("T", ctx)).is_zero()
    ctx9 = build_field(9)
    b = parse_poly("u*T + u^2", ctx9)
    assert b.deg() == 1 and int(b.c[1]) == 3  # u is the index-3 generator


@given(st.integers(0, 3 ** 6 - 1), st.integers(0, 3 ** 6 - 1),
       st.integers(0, 3 ** 6 - 1))
@settings(max_examples=60, deadline=None)
def test_ring_axioms_q3(ia, ib, ic):
    ctx = build_field(3)

    def mk(n):
        digits = []
        while n:
            digits.append(n % 3)
            n //= 3
        return APoly(ctx, digits or [0])

    a, b, c = mk(ia), mk(ib), mk(ic)
    assert ((a + b) * c - (a * c + b * c)).is_zero()
    assert ((a * b) * c - a * (b * c)).is_zero()
    assert ((a * b) - (b * a)).is_zero()
    assert (a.frob(1) - a.pow(3)).is_zero()


def test_xpoly_basics():
    ctx = build_field(3)
    x = XPoly.x(ctx)
    th = XPoly(ctx, {0: RatFunc(APoly.theta(ctx))})
    p = (x + th).pow(2)
    assert p.coeff(2).num.is_one()
    assert (p.coeff(1).num - APoly.theta(ctx).scale(2)).is_zero()
    # frob is the true q-th power, exponents and coefficients alike
    pf = (x * th).frob(1)
    assert pf.coeff(3).num == APoly.theta(ctx).pow(3)
    assert p.subst(XPoly.x(ctx, 2)).coeff(4).num.is_one()
