"""Field contexts against a naive modular-polynomial oracle.

The oracle implements F_{p^m} = F_p[y]/(modulus) directly on digit tuples,
independent of the table-based index arithmetic under test.
"""

import random

import numpy as np
import pytest

from drinlog import build_field
from drinlog.fields import factor_prime_power


# -- oracle (written first, no dependence on FieldCtx internals) ---------------

def oracle_digits(idx, p, m):
    out = []
    for _ in range(m):
        out.append(idx % p)
        idx //= p
    return tuple(out)


def oracle_index(digits, p):
    idx = 0
    for d in reversed(digits):
        idx = idx * p + d
    return idx


def oracle_mul(a, b, mod_low, p):
    m = len(mod_low)
    res = [0] * (2 * m)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            res[i + j] = (res[i + j] + ai * bj) % p
    for d in range(2 * m - 1, m - 1, -1):
        c = res[d]
        if c:
            res[d] = 0
            for j in range(m):
                res[d - m + j] = (res[d - m + j] - c * mod_low[j]) % p
    return tuple(res[:m])


def oracle_pow(a, e, mod_low, p):
    m = len(mod_low)
    out = (1,) + (0,) * (m - 1)
    base = a
    while e:
        if e & 1:
            out = oracle_mul(out, base, mod_low, p)
        base = oracle_mul(base, base, mod_low, p)
        e >>= 1
    return out


CASES = [(2, 1), (3, 1), (4, 1), (5, 1), (8, 1), (9, 1), (3, 2), (5, 2)]


@pytest.mark.parametrize("q,k", CASES)
def test_arithmetic_matches_oracle(q, k):
    ctx = build_field(q, k)
    p = ctx.p
    m = ctx.m
    mod_low = tuple(ctx.modulus_low)
    rng = random.Random(1000 * q + k)
    for _ in range(60):
        ia = rng.randrange(ctx.Q)
        ib = rng.randrange(ctx.Q)
        da, db = oracle_digits(ia, p, m), oracle_digits(ib, p, m)
        add = oracle_index(tuple((x + y) % p for x, y in zip(da, db)), p)
        assert int(ctx.add(ia, ib)) == add
        assert int(ctx.mul(ia, ib)) == oracle_index(oracle_mul(da, db, mod_low, p), p)
        if ia:
            inv = int(ctx.inv(ia))
            assert int(ctx.mul(ia, inv)) == 1
        e = rng.randrange(0, 2 * ctx.Q)
        if ia or e:
            assert int(ctx.pow_int(ia, e)) == oracle_index(
                oracle_pow(da, e, mod_low, p), p)


@pytest.mark.parametrize("q,k", CASES)
def test_frobenius_is_qth_power(q, k):
    ctx = build_field(q, k)
    idx = np.arange(ctx.Q, dtype=np.int64)
    fr = ctx.frob(idx)
    for i in range(ctx.Q):
        assert int(fr[i]) == int(ctx.pow_int(int(i), q))


@pytest.mark.parametrize("q,k", [(3, 2), (5, 2), (2, 2)])
def test_base_elems_are_frobenius_fixed(q, k):
    ctx = build_field(q, k)
    be = ctx.base_elems()
    assert len(be) == q
    for v in be:
        assert int(ctx.pow_int(int(v), q)) == int(v)
    # embedding is a field homomorphism of the base field
    base = ctx.base_ctx()
    for a in range(base.Q):
        for b in range(base.Q):
            assert int(ctx.embed_base(int(base.mul(a, b)))) == \
                int(ctx.mul(int(ctx.embed_base(a)), int(ctx.embed_base(b))))
            assert int(ctx.embed_base(int(base.add(a, b)))) == \
                int(ctx.add(int(ctx.embed_base(a)), int(ctx.embed_base(b))))


def test_prime_power_factoring():
    assert factor_prime_power(8) == (2, 3)
    assert factor_prime_power(9) == (3, 2)
    assert factor_prime_power(5) == (5, 1)
    with pytest.raises(ValueError):
        factor_prime_power(6)
    with pytest.raises(ValueError):
        factor_prime_power(1)


def test_contexts_are_cached():
    assert build_field(5) is build_field(5)
    assert build_field(5, 2) is not build_field(5)
