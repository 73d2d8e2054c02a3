import random

import pytest

from drinlog import APoly, DrinfeldModule, build_field


def random_module(ctx, rng, rmax=3, dmax=None):
    """Random module with kappa degrees <= dmax (default q) and kappa_r != 0."""
    q = ctx.q
    dmax = q if dmax is None else dmax
    r = rng.randint(1, rmax)
    kappa = []
    for _ in range(r):
        d = rng.randint(0, dmax)
        kappa.append(APoly(ctx, [rng.randrange(q) for _ in range(d + 1)]))
    if kappa[-1].is_zero():
        kappa[-1] = APoly.one(ctx)
    return DrinfeldModule(ctx, kappa)


@pytest.fixture
def rng():
    return random.Random(20260826)


@pytest.fixture
def flagship():
    """The rank-2 module over F_5 with kappa_1 = T^5 + 2T^4, kappa_2 = T."""
    ctx = build_field(5)
    g = APoly(ctx, [0, 0, 0, 0, 2, 1])
    return DrinfeldModule(ctx, [g, APoly.theta(ctx)])
