"""Seeded random instances for the verification suites.

Every generator takes a ``random.Random`` so that a run is reproduced exactly
by its seed.  Values are small rationals with denominators from a fixed menu,
which keeps the exact arithmetic cheap while still producing irregular
crossings.
"""
from __future__ import annotations

import random
from math import ceil, floor
from typing import List, Optional, Tuple

from .monoid import IdealCtx, alg_leq, in_M, ideal_ctx
from .pwl import F0, ONE, ZERO, PwlFn, Rat, RSet, meet, rat

DENOMINATORS = (1, 2, 3, 4, 5, 6, 8, 16)


def random_rat(rng: random.Random, lo, hi, dens=DENOMINATORS) -> Rat:
    lo, hi = rat(lo), rat(hi)
    if lo > hi:
        raise ValueError("empty range")
    while True:
        d = rng.choice(dens)
        a, b = ceil(lo * d), floor(hi * d)
        if a <= b:
            return rat(rng.randint(a, b), d)
        dens = tuple(x for x in dens if x > d) or (d * 2,)


def random_xs(rng: random.Random, max_inner: int = 4) -> List[Rat]:
    inner = set()
    for _ in range(rng.randint(0, max_inner)):
        inner.add(rat(rng.randint(1, 31), 32))
    return [ZERO] + sorted(inner) + [ONE]


def random_pwl(rng: random.Random, lo=-2, hi=2, max_inner: int = 4) -> PwlFn:
    xs = random_xs(rng, max_inner)
    return PwlFn([(x, random_rat(rng, lo, hi)) for x in xs])


def random_m(rng: random.Random, zero_at_0: bool = True, allow_zero: bool = False,
             max_inner: int = 4) -> PwlFn:
    """A random element of M: nonnegative, positive right after 0.

    With ``zero_at_0`` the value at 0 is 0, so the element lies in N_f0.
    Some draws vanish on stretches away from 0.
    """
    if allow_zero and rng.random() < 0.05:
        return PwlFn.const(0)
    xs = random_xs(rng, max_inner)
    ys = [random_rat(rng, 0, 2) for _ in xs]
    if rng.random() < 0.5:
        ys = [y if rng.random() < 0.6 else ZERO for y in ys]
    if zero_at_0:
        ys[0] = ZERO
        if ys[1] == 0:
            ys[1] = random_rat(rng, rat(1, 16), 2) or rat(1, 4)
    elif ys[0] == 0 and ys[1] == 0:
        ys[1] = rat(1, 2)
    f = PwlFn(list(zip(xs, ys)))
    assert in_M(f), f
    return f


def random_base(rng: random.Random) -> PwlFn:
    """A nonzero f with f <=_M f0 (so f(0) = 0), sometimes with a short co-zero set."""
    r = random_m(rng)
    f = meet(F0, r) / rng.choice((1, 2, 3))
    if rng.random() < 0.3:
        cut = rat(rng.randint(1, 7), 8)
        f = meet(f, PwlFn([(0, 0), (cut / 2, cut / 2), (cut, 0), (1, 0)]))
    if not alg_leq(f, F0):
        f = f / 2
    return f


def random_in_ideal(rng: random.Random, ctx: IdealCtx, allow_zero: bool = True) -> PwlFn:
    """g in N_f: the meet of a random M element with k f."""
    if allow_zero and rng.random() < 0.05:
        return PwlFn.const(0)
    k = rng.randint(1, 3)
    return meet(random_m(rng), ctx.fn * k)


def random_riesz_instance(rng: random.Random) -> Tuple[PwlFn, PwlFn, PwlFn]:
    """(x, y1, y2) with x <=_M y1 + y2."""
    y1 = random_m(rng, zero_at_0=rng.random() < 0.7, allow_zero=True)
    y2 = random_m(rng, zero_at_0=rng.random() < 0.7, allow_zero=True)
    total = y1 + y2
    roll = rng.random()
    if roll < 0.1:
        return total, y1, y2
    r = random_m(rng, zero_at_0=False)
    x = meet(total, r) * rng.choice((rat(1, 2), rat(3, 4), rat(7, 8)))
    if roll < 0.2:
        x = PwlFn.const(0)
    if not alg_leq(x, total):
        x = total / 2
    return x, y1, y2


def random_sup(rng: random.Random, ctx: IdealCtx) -> PwlFn:
    """A sup function in L_f: a constant, a multiple of f0, or a random M element."""
    roll = rng.random()
    if roll < 0.2:
        return PwlFn.const(random_rat(rng, rat(1, 4), 2))
    if roll < 0.35:
        return F0 * random_rat(rng, rat(1, 4), 2)
    return random_m(rng, zero_at_0=rng.random() < 0.6)


def random_compact(rng: random.Random, u: RSet) -> RSet:
    """A compact subset of U_f: one or two closed intervals or a point."""
    out = RSet()
    for _ in range(rng.randint(1, 2)):
        iv = rng.choice(u.intervals)
        lo, hi = iv.lo, iv.hi
        span = hi - lo
        a = lo + span * rat(rng.randint(1, 15), 16)
        if rng.random() < 0.2:
            out = out | RSet.point(a)
            continue
        b = a + (hi - a) * rat(rng.randint(0, 15), 16)
        if b == hi and not iv.hi_closed:
            b = (a + hi) / 2
        out = out | RSet.closed(a, b)
    return out


def random_point(rng: random.Random, u: RSet) -> Rat:
    iv = rng.choice(u.intervals)
    k = rng.randint(1, 63)
    t = iv.lo + (iv.hi - iv.lo) * rat(k, 64)
    return t


def make_rng(seed: Optional[int], salt: str = "") -> random.Random:
    """Independent deterministic streams per suite."""
    return random.Random(f"{seed}:{salt}")


def random_split_instance(rng: random.Random):
    """(ctx, h, n, g) with g in n D_f and n - h uniformly positive on U_f."""
    ctx = ideal_ctx(random_base(rng))
    n = rng.randint(1, 3)
    h = random_sup(rng, ctx)
    top = h.max()
    if top > 0:
        h = h * (n * random_rat(rng, rat(1, 8), rat(7, 8)) / top)
    g = meet(random_in_ideal(rng, ctx), PwlFn.const(n))
    return ctx, h, n, g
