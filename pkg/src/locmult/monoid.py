"""The positive monoid M of functions that are >= 0 and positive just right of 0.

An element of M is either the zero function or a nonnegative function that
is strictly positive on some interval (0, eps].  ``g <=_M f`` means that
``f - g`` lies in M.  Order-ideals N_f, the interval D_f and a constructive
Riesz decomposition live here as well.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import ceil
from typing import Optional, Tuple, Union

from .pwl import (
    CONST_ONE,
    CONST_ZERO,
    F0,
    ONE,
    ZERO,
    PwlFn,
    Rat,
    RSet,
    cozero,
    fmt,
    from_text,
    join,
    meet,
    positive_set,
)
from .urysohn import urysohn


@dataclass(frozen=True)
class Rejection:
    """A negative answer carrying the reason and, when there is one, a point."""

    reason: str
    point: Optional[Rat] = None

    def __bool__(self):
        return False

    def __str__(self):
        return self.reason if self.point is None else f"{self.reason} (t = {fmt(self.point)})"


@dataclass(frozen=True)
class MElem:
    """A function certified to lie in M.

    ``eps`` is None exactly for the zero function; otherwise fn > 0 on (0, eps].
    Instances are always truthy, including the zero element.
    """

    fn: PwlFn
    eps: Optional[Rat]

    @property
    def is_zero(self) -> bool:
        return self.eps is None

    def to_json(self) -> str:
        return json.dumps({"kind": "MElem", "fn": str(self.fn),
                           "eps": None if self.eps is None else fmt(self.eps)})

    @staticmethod
    def from_json(text: str) -> "MElem":
        data = json.loads(text)
        return melem(from_text(data["fn"]))


Fn = Union[PwlFn, MElem]


def _fn(x) -> PwlFn:
    if isinstance(x, MElem):
        return x.fn
    if isinstance(x, PwlFn):
        return x
    return PwlFn.const(x)


def in_M(f) -> Union[MElem, Rejection]:
    """Certify ``f`` in M, or reject it with a violating point."""
    f = _fn(f)
    for x, y in zip(f.xs, f.ys):
        if y < 0:
            return Rejection("negative value", x)
    if f.is_zero:
        return MElem(f, None)
    pos = positive_set(f)
    first = pos.intervals[0] if pos else None
    if first is None or first.lo > 0:
        end = first.lo if first is not None else ONE
        return Rejection("vanishes on a neighbourhood of 0", end / 2)
    if first.hi == 1 and first.hi_closed:
        return MElem(f, ONE)
    return MElem(f, first.hi / 2)


def melem(f) -> MElem:
    """Like :func:`in_M` but raises ValueError on rejection."""
    if isinstance(f, MElem):
        return f
    out = in_M(f)
    if not out:
        raise ValueError(f"not in M: {out}")
    return out


def alg_leq(g, f) -> Union[MElem, Rejection]:
    """``g <=_M f``; a truthy result is the certificate f - g in M."""
    return in_M(_fn(f) - _fn(g))


def alg_lt(g, f) -> bool:
    """``g <_M f``: f - g is a nonzero element of M."""
    d = alg_leq(g, f)
    return bool(d) and not d.is_zero


# ---------------------------------------------------------------------------
# Order-ideals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdealCtx:
    """Context for the order-ideal generated by a nonzero f in M."""

    f: MElem
    cozero: RSet
    below_f0: bool

    @property
    def fn(self) -> PwlFn:
        return self.f.fn


def ideal_ctx(f, require_below_f0: bool = False) -> IdealCtx:
    m = melem(f)
    if m.is_zero:
        raise ValueError("the base element of an order-ideal must be nonzero")
    below = bool(alg_leq(m, F0))
    if require_below_f0 and not below:
        raise ValueError("base element is not below f0 in the algebraic order")
    return IdealCtx(m, cozero(m.fn), below)


def germ_slope(f: PwlFn) -> Rat:
    return (f.ys[1] - f.ys[0]) / f.xs[1]


def in_Nf(g, ctx: IdealCtx) -> Union[int, Rejection]:
    """Least n >= 1 with g <=_M n f, or a rejection."""
    m = in_M(g)
    if not m:
        return Rejection(f"g is not in M: {m.reason}", m.point)
    g = m.fn
    if g.is_zero:
        return 1
    f = ctx.fn
    xs = sorted(set(f.xs) | set(g.xs))
    bound = ZERO
    for p, q in zip(xs, xs[1:]):
        fp, fq, gp, gq = f._at(p), f._at(q), g._at(p), g._at(q)
        if fp == 0 and gp > 0:
            return Rejection("g > 0 where f = 0", p)
        if fq == 0 and gq > 0:
            return Rejection("g > 0 where f = 0", q)
        if fp == 0 and fq == 0:
            continue
        if fp == 0:
            ratio = gq / fq
        elif fq == 0:
            ratio = gp / fp
        else:
            ratio = max(gp / fp, gq / fq)
        bound = max(bound, ratio)
    n = max(1, int(ceil(bound)))
    while not in_M(n * f - g):
        n += 1
    return n


def in_Df(g, ctx: IdealCtx) -> bool:
    return bool(in_Nf(g, ctx)) and bool(alg_leq(g, CONST_ONE))


# ---------------------------------------------------------------------------
# Riesz decomposition
# ---------------------------------------------------------------------------

class PreconditionError(ValueError):
    def __init__(self, message: str, rejection: Optional[Rejection] = None):
        super().__init__(message if rejection is None else f"{message}: {rejection}")
        self.rejection = rejection


def _all_in_M(*fns) -> bool:
    return all(in_M(f) for f in fns)


def _first_break(*fns) -> Rat:
    return min(f.xs[1] for f in fns)


def riesz_decompose(x, y1, y2) -> Tuple[MElem, MElem]:
    """Split x = x1 + x2 with x1 <=_M y1 and x2 <=_M y2, given x <=_M y1 + y2.

    The pointwise split x1 = x ^ y1 is tried first.  When a piece fails only
    because it vanishes next to 0, x1 is moved to the midpoint of the feasible
    band [max(0, x - y2), min(x, y1)] on a small neighbourhood of 0; there
    every piece is at least half the smallest of x, y1, y2, y1 + y2 - x, hence
    positive.
    """
    x, y1, y2 = _fn(x), _fn(y1), _fn(y2)
    for name, v in (("x", x), ("y1", y1), ("y2", y2)):
        m = in_M(v)
        if not m:
            raise PreconditionError(f"{name} is not in M", m)
    cert = alg_leq(x, y1 + y2)
    if not cert:
        raise PreconditionError("x is not below y1 + y2", cert)
    if x.is_zero:
        return melem(CONST_ZERO), melem(CONST_ZERO)
    if y1.is_zero:
        return melem(CONST_ZERO), melem(x)
    if y2.is_zero:
        return melem(x), melem(CONST_ZERO)
    x1 = meet(x, y1)
    x2 = x - x1
    if _all_in_M(x1, x2, y1 - x1, y2 - x2):
        return melem(x1), melem(x2)
    if cert.is_zero:
        return melem(y1), melem(y2)
    mid = (join(CONST_ZERO, x - y2) + meet(x, y1)) / 2
    delta = mid - x1
    rho = max(max(delta.ys), -min(delta.ys))
    a = _first_break(x, y1, y2, x1, mid)
    r = urysohn(RSet.closed(0, a / 2), RSet.half_open(0, a, left_closed=True), rho)
    x1 = x1 + join(meet(delta, r), -r)
    x2 = x - x1
    if not _all_in_M(x1, x2, y1 - x1, y2 - x2):
        raise RuntimeError("Riesz repair failed; this indicates a bug")
    return melem(x1), melem(x2)


def prime_witness(f, g) -> MElem:
    """A nonzero element common to the order-ideals of two nonzero elements."""
    f, g = melem(f), melem(g)
    if f.is_zero or g.is_zero:
        raise ValueError("prime_witness needs nonzero arguments")
    h = melem(meet(f.fn, g.fn))
    if h.is_zero or not in_Nf(h, ideal_ctx(f)) or not in_Nf(h, ideal_ctx(g)):
        raise RuntimeError("meet left an order-ideal; this indicates a bug")
    return h
