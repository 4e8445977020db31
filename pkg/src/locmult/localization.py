"""Localization classes: intervals over shrinking order-ideals, up to restriction.

A class is carried by a base element f (with f <=_M f0) and the sup function
h of the interval, read on U_f.  Two classes are equal when their sup
functions agree on the co-zero set of some common smaller base, which for
sup functions with a linear germ at 0 means equality on a short interval
(0, delta).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import ceil, floor
from typing import List, Optional

from .intervals import (
    BumpWitness,
    PropCWitness,
    SumWitness,
    SupFn,
    _sup,
    has_property_C,
    in_Ifh,
    in_Lf,
    is_zero_sup,
    local_view,
    lower_bound,
    punctured,
    sup_germ,
)
from .monoid import (
    IdealCtx,
    MElem,
    PreconditionError,
    alg_lt,
    germ_slope,
    ideal_ctx,
    in_M,
    in_Nf,
    melem,
    riesz_decompose,
)
from .pwl import (
    CONST_ZERO,
    F0,
    ONE,
    PwlFn,
    Rat,
    RSet,
    compare,
    cozero,
    join,
    meet,
    rat,
    to_text,
)
from .tailfn import TailFn


def hat(delta) -> PwlFn:
    """max(0, min(t, delta - t)): slope 1 at 0, co-zero set (0, delta)."""
    delta = rat(delta)
    if not 0 < delta <= 1:
        raise ValueError("hat needs 0 < delta <= 1")
    if delta == 1:
        return PwlFn([(0, 0), (ONE / 2, ONE / 2), (1, 0)])
    return PwlFn([(0, 0), (delta / 2, delta / 2), (delta, 0), (1, 0)])


def _sup_text(h: SupFn) -> str:
    if isinstance(h, TailFn):
        return json.dumps(h.to_json(), sort_keys=True)
    return to_text(h)


@dataclass
class LocalClass:
    """An interval over the base ``ctx`` given by its sup function ``h``.

    ``lf`` is the element of N_f* under h (None for the zero class) and
    ``witness`` replays property (C).
    """

    ctx: IdealCtx
    h: SupFn
    lf: Optional[MElem]
    witness: Optional[PropCWitness]

    @property
    def is_zero(self) -> bool:
        return self.lf is None

    @property
    def base(self) -> PwlFn:
        return self.ctx.fn

    def to_json(self) -> dict:
        return {"base": to_text(self.base), "sup": _sup_text(self.h)}

    def __repr__(self):
        return f"LocalClass(base={to_text(self.base)}, sup={self.h!r})"


_F0_CTX = ideal_ctx(F0)


def class_ctx(base) -> IdealCtx:
    """Context for a class base, which must be a nonzero element of N_f0."""
    ctx = base if isinstance(base, IdealCtx) else ideal_ctx(base)
    inside = in_Nf(ctx.f, _F0_CTX)
    if not inside:
        raise PreconditionError("class base must lie in the order-ideal of f0", inside)
    return ctx


def make_class(base, h, witness: PropCWitness = None) -> LocalClass:
    """Build a class, certifying h in L_f and property (C) for it."""
    ctx = class_ctx(base)
    h = _sup(h)
    if is_zero_sup(h, ctx):
        return LocalClass(ctx, h, None, None)
    lf = in_Lf(h, ctx)
    if not lf:
        raise PreconditionError("h is not in L_f", lf)
    if witness is None:
        witness = has_property_C(ctx, h)
        if not witness:
            raise PreconditionError("h lacks property (C)", witness)
    return LocalClass(ctx, h, lf, witness)


def zero_class(base=F0) -> LocalClass:
    return make_class(base, CONST_ZERO)


def unit_class(base=F0) -> LocalClass:
    """The order-unit: the class of D_f, whose sup is 1 on U_f."""
    return make_class(base, PwlFn.const(1))


# ---------------------------------------------------------------------------
# refinement and equivalence
# ---------------------------------------------------------------------------

def _linear_zone(x) -> Rat:
    """A delta such that x is affine on [0, delta]."""
    if isinstance(x, (PwlFn, TailFn)):
        return sup_germ(x)[2]
    return x.xs[1]


def common_base(*classes: LocalClass) -> PwlFn:
    """(1/2)(f1 ^ ... ^ hat(delta)) with delta inside every linear germ zone.

    The result is <=_M each base and <=_M f0; on its co-zero set (0, delta)
    every base and every sup function is affine.
    """
    zones = [_linear_zone(c.base) for c in classes]
    zones += [_linear_zone(c.h) for c in classes if not c.is_zero]
    delta = min(zones)
    out = hat(delta)
    for c in classes:
        out = meet(out, c.base)
    return out / 2


def restrict(c: LocalClass, base) -> LocalClass:
    """The same sup function read over a smaller base f' in N_f."""
    small = class_ctx(base)
    inside = in_Nf(small.f, c.ctx)
    if not inside:
        raise PreconditionError("new base is not in the order-ideal of the old one", inside)
    if c.is_zero:
        return LocalClass(small, c.h, None, None)
    lf = melem(meet(c.lf.fn, small.fn))
    if lf.is_zero or not in_Nf(lf, small):
        raise RuntimeError("restricted L_f witness vanished; this indicates a bug")
    return LocalClass(small, c.h, lf, BumpWitness(small, c.h, lf))


def equivalent(c1: LocalClass, c2: LocalClass) -> bool:
    """True iff the sup functions agree on U_f''' for a common refinement f'''."""
    if c1.is_zero and c2.is_zero:
        return True
    ref = common_base(c1, c2)
    u = cozero(ref)
    return compare(c1.h, c2.h, u).leq and compare(c2.h, c1.h, u).leq


def add_classes(c1: LocalClass, c2: LocalClass) -> LocalClass:
    """Sum of classes: refine to a common base and add the sup functions."""
    if c2.is_zero:
        return c1
    if c1.is_zero:
        return c2
    ctx = ideal_ctx(common_base(c1, c2))
    r1, r2 = restrict(c1, ctx), restrict(c2, ctx)
    h1, h2 = c1.h, c2.h
    if isinstance(h1, TailFn) and isinstance(h2, TailFn) and h1.osc != h2.osc:
        # tails accumulating at different points: both are affine on the
        # refined co-zero set, so add plain functions equal to them there
        d = cozero(ctx.fn).sup
        h1, h2 = local_view(h1, 0, d), local_view(h2, 0, d)
        r1 = LocalClass(ctx, h1, r1.lf, BumpWitness(ctx, h1, r1.lf))
        r2 = LocalClass(ctx, h2, r2.lf, BumpWitness(ctx, h2, r2.lf))
    h = h1 + h2
    lf = melem(r1.lf.fn + r2.lf.fn)
    if not in_Nf(lf, ctx) or not compare(lf.fn, h, ctx.cozero).leq:
        raise RuntimeError("sum of L_f witnesses failed; this indicates a bug")
    return LocalClass(ctx, h, lf, SumWitness(ctx, r1.witness, r2.witness))


# ---------------------------------------------------------------------------
# the minimal order-ideal
# ---------------------------------------------------------------------------

@dataclass
class MinIdealReport:
    """Data showing that [0, f0] <= n c after restricting to the base f'."""

    n: int
    slope: Rat
    g: PwlFn
    f_prime: MElem
    delta: Rat
    checks: dict = field(default_factory=dict)
    brute_force_n: Optional[int] = None

    @property
    def ok(self) -> bool:
        return all(self.checks.values()) and self.brute_force_n == self.n

    def to_json(self, c: LocalClass) -> dict:
        return {"class": c.to_json(), "min_ideal_n": self.n}


def _below_sup(h: SupFn) -> PwlFn:
    """A PwlFn below h, equal to h next to 0, clipped at 0."""
    return join(lower_bound(h), CONST_ZERO)


def least_integer_above(q) -> int:
    """The least integer strictly greater than q."""
    return int(floor(q)) + 1


def brute_force_n(g: PwlFn, delta, limit: int) -> Optional[int]:
    """Least n in 1..limit with f0 < n g pointwise on (0, delta].

    Checked directly against the functions, independently of any slope.
    """
    zone = punctured(delta)
    for n in range(1, limit + 1):
        if compare(F0, g * n, zone).strict:
            return n
    return None


def germ_slope_of_class(c: LocalClass) -> Rat:
    """The slope mu of the class at 0.

    When h(0) = 0 this is the first-order slope of h.  When h(0) > 0 every
    slope fits under h near 0 and the slope of f0 itself is used.
    """
    lam, mu, _ = sup_germ(c.h)
    return mu if lam == 0 else ONE


def minimal_ideal_dominates(c: LocalClass) -> MinIdealReport:
    """Certificate that the class of [0, f0] lies below n c for an integer n.

    n is the least integer above 1/mu for the class's germ slope mu.  The
    element g in I_f(h) is linear near 0 with slope strictly between 1/n and
    mu, and f' = (1/2)(f ^ hat(delta)) lives where g is linear.
    """
    if c.is_zero:
        raise ValueError("the zero class dominates nothing")
    mu = germ_slope_of_class(c)
    n = least_integer_above(1 / mu)
    slope = (mu + ONE / n) / 2  # strictly between 1/n and mu
    # below h: a fraction of h when h(0) = 0, half of h otherwise
    shrink = slope / mu if sup_germ(c.h)[0] == 0 else ONE / 2
    k = int(ceil(slope / germ_slope(c.base))) + 1
    g = meet(c.base * k, F0 * slope, _below_sup(c.h) * shrink)
    delta = min(_linear_zone(g), _linear_zone(c.base))
    f_prime = melem(meet(c.base, hat(delta)) / 2)
    u = cozero(f_prime.fn)
    n_mu = slope * n
    excess = F0 * (n_mu - 1)
    sample = meet(g * n, f_prime.fn * n) / 2
    checks = {
        "g_in_I": bool(in_Ifh(g, c.ctx, c.h)),
        "g_linear": compare(g, F0 * slope, RSet.closed(0, delta)).leq
        and compare(F0 * slope, g, RSet.closed(0, delta)).leq,
        "n_least_above_inverse_slope": n == least_integer_above(1 / slope),
        "f0_below_ng_strict": compare(F0, g * n, punctured(delta)).strict,
        "excess_in_M": n_mu - 1 > 0 and bool(in_M(excess)),
        "f_prime_below_f": alg_lt(f_prime, c.base),
        "f_prime_zone": u <= RSet.open(0, delta),
        "ng_is_linear_on_U": compare(g * n, F0 * n_mu, u).leq and compare(F0 * n_mu, g * n, u).leq,
    }
    # split an element of [0, n mu f0] ^ N_f' into [0, f0] + [0, (n mu - 1) f0]
    x1, x2 = riesz_decompose(sample, F0, excess)
    checks["split_recombines"] = x1.fn + x2.fn == sample
    checks["split_in_ideal"] = bool(in_Nf(x1, ideal_ctx(f_prime))) and bool(in_Nf(x2, ideal_ctx(f_prime)))
    bf = brute_force_n(g, delta, int(ceil(1 / slope)) + 2)
    return MinIdealReport(n, slope, g, f_prime, delta, checks, bf)


# ---------------------------------------------------------------------------
# fundamental sequences
# ---------------------------------------------------------------------------

@dataclass
class FundamentalSeq:
    elems: List[MElem]

    def __len__(self):
        return len(self.elems)

    def __getitem__(self, n):
        return self.elems[n]

    def verify(self) -> bool:
        for n in range(1, len(self.elems)):
            if not alg_lt(self.elems[n], self.elems[n - 1]):
                return False
            if cozero(self.elems[n].fn) != RSet.open(0, ONE / (n + 1)):
                return False
        return True


def fundamental_sequence(k: int) -> FundamentalSeq:
    """f_0 = f0 and f_n = 2^-n hat(1/(n+1)), so U_{f_n} = (0, 1/(n+1))."""
    if k < 1:
        raise ValueError("k must be at least 1")
    elems = [melem(F0)]
    for n in range(1, k + 1):
        elems.append(melem(hat(ONE / (n + 1)) / 2 ** n))
    seq = FundamentalSeq(elems)
    if not seq.verify():
        raise RuntimeError("fundamental sequence failed verification; this indicates a bug")
    return seq
