"""Intervals I_f(h) in an order-ideal N_f, described by their sup functions.

A sup function ``h`` is a :class:`PwlFn` or a :class:`TailFn`, read on the
co-zero set U_f of the base element f.  Every construction here returns
concrete functions together with the exact checks that certify them.

Strictness near 0 ("z << h on a punctured neighbourhood of 0") is always
checked pointwise on an explicit interval (0, delta].
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from .monoid import (
    IdealCtx,
    MElem,
    PreconditionError,
    Rejection,
    _fn,
    alg_leq,
    alg_lt,
    germ_slope,
    in_M,
    in_Nf,
    melem,
    riesz_decompose,
)
from .pwl import (
    CONST_ZERO,
    ONE,
    ZERO,
    Interval,
    PwlFn,
    Rat,
    RSet,
    compare,
    fmt,
    join,
    level_set,
    meet,
    rat,
)
from .tailfn import GeometricGerm, TailFn
from .urysohn import local_form_at_zero, urysohn

SupFn = Union[PwlFn, TailFn]


class CharacterizationMismatch(RuntimeError):
    """The three descriptions of I_f(h) disagreed; this indicates a bug."""


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _sup(h) -> SupFn:
    if isinstance(h, MElem):
        return h.fn
    if isinstance(h, (PwlFn, TailFn)):
        return h
    return PwlFn.const(h)


def sup_germ(h: SupFn) -> Tuple[Rat, Rat, Rat]:
    """(lam, mu, eps) with h = lam + mu*t on [0, eps]."""
    if isinstance(h, TailFn):
        return h.germ()
    return local_form_at_zero(h)


def lower_bound(h: SupFn) -> PwlFn:
    """A PwlFn below h everywhere and equal to it next to 0."""
    return h.lower_envelope() if isinstance(h, TailFn) else h


def upper_bound(h: SupFn) -> Rat:
    return (h.upper_envelope() if isinstance(h, TailFn) else h).max()


def local_view(h: SupFn, a, b) -> PwlFn:
    """A PwlFn equal to h on [a, b]."""
    return h.local_pwl(a, b) if isinstance(h, TailFn) else h


def punctured(delta) -> RSet:
    """The interval (0, delta]."""
    return RSet([Interval(ZERO, rat(delta), False, True)])


def cut_near_zero(delta, height) -> PwlFn:
    """Urysohn function equal to ``height`` on [0, delta/2] and zero from delta on."""
    delta = rat(delta)
    return urysohn(RSet.closed(0, delta / 2), RSet([Interval(ZERO, delta, True, False)]), height)


def _equal_on(a, b, s: RSet) -> bool:
    return compare(a, b, s).leq and compare(b, a, s).leq


def _component(u: RSet, t: Rat) -> Interval:
    for iv in u.intervals:
        if iv.contains(t):
            return iv
    raise ValueError(f"t = {fmt(t)} is not in U_f = {u}")


def _room(u: RSet, t: Rat) -> Rat:
    """Half the distance from t to the boundary of U_f (t in U_f, t != 0)."""
    iv = _component(u, t)
    dists = [t - iv.lo]
    if not (iv.hi == 1 and iv.hi_closed):
        dists.append(iv.hi - t)
    return min(d for d in dists if d > 0) / 2


def _window(t: Rat, rad: Rat) -> Tuple[RSet, RSet]:
    """(closed [t - rad/2, t + rad/2], open (t - rad, t + rad)) clipped to [0, 1]."""
    lo, hi = t - rad / 2, t + rad / 2
    closed = RSet.closed(max(lo, ZERO), min(hi, ONE))
    olo, ohi = t - rad, t + rad
    opened = RSet([Interval(max(olo, ZERO), min(ohi, ONE), olo < 0, ohi > 1)])
    return closed, opened


def _first_break(*fns: PwlFn) -> Rat:
    return min(f.xs[1] for f in fns)


# ---------------------------------------------------------------------------
# L_f
# ---------------------------------------------------------------------------

def is_zero_sup(h: SupFn, ctx: IdealCtx) -> bool:
    return _equal_on(_sup(h), CONST_ZERO, ctx.cozero)


def in_Lf(h, ctx: IdealCtx) -> Union[MElem, Rejection]:
    """A witness z in N_f* with z <= h on U_f, the zero element for h = 0, or a rejection."""
    if isinstance(h, GeometricGerm):
        if h.q >= rat(1, 2):
            raise NotImplementedError("only sublinear geometric germs are decided")
        n = 1
        while h.slope_bound(n) * 1024 > 1:
            n += 1
        return Rejection("h(t)/t tends to 0 at 0, so no element of N_f* fits below h",
                         rat(1) / 2 ** n)
    h = _sup(h)
    u = ctx.cozero
    c = compare(CONST_ZERO, h, u)
    if not c.leq:
        return Rejection("h is negative on U_f", c.witness)
    if isinstance(h, TailFn) and h.rho in u:
        lo, hi = h.oscillation()
        if lo != hi:
            return Rejection("h has no limit at its accumulation point inside U_f", h.rho)
    lam, mu, eps = sup_germ(h)
    if lam == 0 and mu <= 0:
        if is_zero_sup(h, ctx):
            return melem(CONST_ZERO)
        return Rejection("h vanishes to first order at 0", eps / 2)
    z = meet(ctx.fn, join(lower_bound(h), CONST_ZERO))
    m = in_M(z)
    if not m or m.is_zero or not in_Nf(z, ctx) or not compare(z, h, u).leq:
        raise RuntimeError("L_f witness failed verification; this indicates a bug")
    return m


def _require_lf(h, ctx) -> MElem:
    lf = in_Lf(h, ctx)
    if not lf:
        raise PreconditionError("h is not in L_f", lf)
    return lf


# ---------------------------------------------------------------------------
# membership in I_f(h)
# ---------------------------------------------------------------------------

@dataclass
class IfhResult:
    """Verdict of :func:`in_Ifh` with the witnesses of each description.

    ``original``: z with g <_M z, z << h near 0 and z <= h on U_f.
    ``tilde``: g' with g << g' << h on (0, delta].
    ``prime``: z with g <_M z <= h.
    """

    holds: bool
    original: Optional[PwlFn] = None
    tilde: Optional[PwlFn] = None
    prime: Optional[PwlFn] = None
    delta: Optional[Rat] = None
    obstruction: Optional[Rejection] = None
    verdicts: Dict[str, bool] = field(default_factory=dict)

    def __bool__(self):
        return self.holds


def in_Ifh(g, ctx: IdealCtx, h) -> IfhResult:
    """Decide g in I_f(h) by three independent descriptions, which must agree."""
    n = in_Nf(g, ctx)
    if not n:
        raise PreconditionError("g is not in N_f", n)
    g, h = _fn(g), _sup(h)
    u = ctx.cozero
    f = ctx.fn
    if is_zero_sup(h, ctx):
        if g.is_zero:
            return IfhResult(True, verdicts=dict.fromkeys(("original", "tilde", "prime"), True))
        t = (in_M(g).eps or ONE) / 2
        return _refuted(Rejection("h vanishes on U_f while g does not", t))
    c = compare(g, h, u)
    if not c.leq:
        return _refuted(Rejection("g exceeds h", c.witness), g, h, u)
    lam_h, mu_h, eps_h = sup_germ(h)
    mu_g = germ_slope(g)
    if lam_h == 0 and mu_h <= mu_g:
        e = min(eps_h, g.xs[1])
        return _refuted(Rejection("g agrees with h to first order at 0", e / 2), g, h, u, e)

    # tilde description
    b = mu_g + 1 if lam_h > 0 else (mu_g + mu_h) / 2
    gp = (b / germ_slope(f)) * f
    delta = min(eps_h, g.xs[1], f.xs[1])
    while not compare(gp, h, punctured(delta)).strict:
        delta /= 2
    near = punctured(delta)
    ok_tilde = bool(in_Nf(gp, ctx)) and compare(g, gp, near).strict and compare(gp, h, near).strict

    # original description
    r = cut_near_zero(delta, max(gp.max(), ONE))
    z = join(meet(gp, r), g)
    ok_orig = (bool(in_Nf(z, ctx)) and alg_lt(g, z)
               and compare(z, h, punctured(delta / 2)).strict and compare(z, h, u).leq)

    # prime description
    zp = g + (z - g) / 2
    ok_prime = bool(in_Nf(zp, ctx)) and alg_lt(g, zp) and compare(zp, h, u).leq

    verdicts = {"original": ok_orig, "tilde": ok_tilde, "prime": ok_prime}
    if not all(verdicts.values()):
        raise CharacterizationMismatch(f"descriptions of I_f(h) disagree: {verdicts}")
    return IfhResult(True, z, gp, zp, delta, None, verdicts)


def _refuted(why: Rejection, g=None, h=None, u=None, e=None) -> IfhResult:
    """Negative verdict; the obstruction is rechecked in the terms of each description.

    A point with g > h refutes all three, since each of them needs some
    z >= g with z <= h there (or g <= h directly).  Agreement of g and h on
    (0, e] refutes all three, since each needs something strictly between g
    and h, or strictly above g and below h, next to 0.
    """
    if g is not None:
        if e is None:
            t = why.point
            ok = t in u and g(t) > h(t)
        else:
            ok = _equal_on(g, h, punctured(e))
        if not ok:
            raise CharacterizationMismatch(f"obstruction failed to verify: {why}")
    return IfhResult(False, obstruction=why,
                     verdicts=dict.fromkeys(("original", "tilde", "prime"), False))


def upward_direct(g1, g2, ctx: IdealCtx, h) -> MElem:
    """An element of I_f(h) above both g1 and g2 in the algebraic order."""
    h = _sup(h)
    res = {}
    for name, g in (("g1", g1), ("g2", g2)):
        r = in_Ifh(g, ctx, h)
        if not r:
            raise PreconditionError(f"{name} is not in I_f(h)", r.obstruction)
        res[name] = r
    g1, g2 = _fn(g1), _fn(g2)
    r1 = res["g1"]
    if germ_slope(g1) < germ_slope(g2):
        g1, g2, r1 = g2, g1, res["g2"]
    if r1.original is None:  # h = 0 forces g1 = g2 = 0
        return melem(CONST_ZERO)
    d = r1.original - g1
    delta = min(r1.delta / 2, _first_break(g1, g2, d))
    r = cut_near_zero(delta, d.max())
    out = meet(d, r) / 2 + join(g1, g2)
    if not (alg_leq(g1, out) and alg_leq(g2, out) and in_Ifh(out, ctx, h)):
        raise RuntimeError("upward_direct output failed verification; this indicates a bug")
    return melem(out)


# ---------------------------------------------------------------------------
# property (C)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LocalWitness:
    """z in N_f with z <= h on U_f, z = h on ``window`` and z < h on ``strict_zone``."""

    t: Rat
    z: PwlFn
    window: RSet
    strict_zone: RSet


@dataclass
class WitnessCheck:
    t: Rat
    in_ideal: bool
    below: bool
    equal: bool
    strict: bool

    @property
    def ok(self) -> bool:
        return self.in_ideal and self.below and self.equal and self.strict

    def __bool__(self):
        return self.ok


class PropCWitness:
    """Base class: produces and checks local witnesses for a sup function."""

    def __init__(self, ctx: IdealCtx, h: SupFn):
        self.ctx, self.h = ctx, h

    def at(self, t) -> LocalWitness:
        raise NotImplementedError

    def verify(self, t) -> WitnessCheck:
        t = rat(t)
        lw = self.at(t)
        u = self.ctx.cozero
        return WitnessCheck(
            t=t,
            in_ideal=bool(in_Nf(lw.z, self.ctx)),
            below=compare(lw.z, self.h, u).leq,
            equal=t in lw.window.interior() and _equal_on(lw.z, self.h, lw.window),
            strict=compare(lw.z, self.h, lw.strict_zone).strict,
        )

    def _check_point(self, t) -> Rat:
        t = rat(t)
        if t == 0 or t not in self.ctx.cozero:
            raise ValueError(f"t = {fmt(t)} is not in U_f minus {{0}}")
        return t


class BumpWitness(PropCWitness):
    """z_t = (1/2)(z ^ r') + (w+ ^ r).

    z is the L_f witness, r' a Urysohn cut next to 0, w a piecewise-linear
    function equal to h around t, and r a Urysohn plateau around t.  The two
    pieces have disjoint supports.
    """

    def __init__(self, ctx: IdealCtx, h: SupFn, lf: MElem):
        super().__init__(ctx, h)
        self.lf = lf

    def at(self, t) -> LocalWitness:
        t = self._check_point(t)
        rad = _room(self.ctx.cozero, t)
        window, opened = _window(t, rad)
        w = local_view(self.h, max(t - rad, ZERO), min(t + rad, ONE))
        wp = join(w, CONST_ZERO)
        bump = meet(wp, urysohn(window, opened, max(wp.max(), ONE)))
        zl = self.lf.fn
        near = min(t - rad, self.lf.eps)
        base = meet(zl, cut_near_zero(near, max(zl.max(), ONE))) / 2
        return LocalWitness(t, base + bump, window, punctured(near / 2))


class SumWitness(PropCWitness):
    """Witness for h1 + h2 from witnesses for h1 and h2 on the same base."""

    def __init__(self, ctx: IdealCtx, w1: PropCWitness, w2: PropCWitness):
        super().__init__(ctx, w1.h + w2.h)
        self.w1, self.w2 = w1, w2

    def at(self, t) -> LocalWitness:
        t = self._check_point(t)
        a, b = self.w1.at(t), self.w2.at(t)
        win = a.window & b.window
        zone = a.strict_zone & b.strict_zone
        return LocalWitness(t, a.z + b.z, win, zone)


class DifferenceWitness(PropCWitness):
    """Witness for h - g built as e = d v v with d = 0 v ((w - z) ^ r)."""

    def __init__(self, ctx: IdealCtx, wg: PropCWitness, wh: PropCWitness, v: MElem):
        super().__init__(ctx, wh.h - wg.h)
        self.wg, self.wh, self.v = wg, wh, v

    def at(self, t) -> LocalWitness:
        t = self._check_point(t)
        zw, ww = self.wg.at(t), self.wh.at(t)
        common = zw.window & ww.window
        iv = next(i for i in common.intervals if i.contains(t))
        # a window ending at 1 is clipped by [0, 1], not by U_f
        rad = t - iv.lo if iv.hi in (t, ONE) else min(t - iv.lo, iv.hi - t)
        inner, opened = _window(t, rad)
        diff = ww.z - zw.z
        r = urysohn(inner, opened, max(diff.max(), ONE))
        d = join(CONST_ZERO, meet(diff, r))
        e = join(d, self.v.fn)
        return LocalWitness(t, e, inner, punctured(min(self.v.eps, t - rad) / 2))


def has_property_C(ctx: IdealCtx, h, samples=None) -> Union[PropCWitness, Rejection]:
    """A property-(C) witness for h, replayed at ``samples`` (default: a few points)."""
    h = _sup(h)
    lf = in_Lf(h, ctx)
    if not lf:
        return lf
    if lf.is_zero:
        return Rejection("h vanishes on U_f; the zero class is handled separately")
    wit = BumpWitness(ctx, h, lf)
    pts = samples if samples is not None else default_points(ctx.cozero)
    for t in pts:
        chk = wit.verify(t)
        if not chk:
            return Rejection(f"witness failed at t: {chk}", chk.t)
    return wit


def default_points(u: RSet, per_component: int = 3) -> List[Rat]:
    pts = []
    for iv in u.intervals:
        for k in range(1, per_component + 1):
            pts.append(iv.lo + (iv.hi - iv.lo) * k / (per_component + 1))
    return pts


def _require_C(ctx, h, witness) -> PropCWitness:
    if witness is not None:
        return witness
    w = has_property_C(ctx, h)
    if not w:
        raise PreconditionError("h lacks property (C)", w)
    return w


# ---------------------------------------------------------------------------
# approximation on compacts and sup realization
# ---------------------------------------------------------------------------

def approx_on_compact(ctx: IdealCtx, h, k: RSet, v=None, witness: PropCWitness = None) -> MElem:
    """z in I_f(h) with z = h on the compact K (K inside U_f), and v <=_M z if v is given."""
    h = _sup(h)
    u = ctx.cozero
    if not k.is_closed() or not k <= u:
        raise ValueError(f"K = {k} is not a compact subset of U_f = {u}")
    wit = _require_C(ctx, h, witness)
    if k.is_empty:
        z = wit.lf.fn / 2 if isinstance(wit, BumpWitness) else _require_lf(h, ctx).fn / 2
    else:
        locals_ = []
        for iv in k.intervals:
            t = iv.lo
            while True:
                lw = wit.at(t)
                locals_.append(lw)
                win = next(i for i in lw.window.intervals if i.contains(t))
                # the cover uses open interiors, so step past iv.hi unless clipped at 1
                if win.hi > iv.hi or win.hi == ONE:
                    break
                t = t + (win.hi - t) / 2
        zp = locals_[0].z
        for lw in locals_[1:]:
            zp = join(zp, lw.z)
        cover = RSet()
        for lw in locals_:
            cover = cover | lw.window.interior()
        near = min(min(lw.strict_zone.sup for lw in locals_), cover.inf)
        top = max(upper_bound(h), ONE)
        r = cut_near_zero(near, top)
        r2 = urysohn(k, cover, top)
        z = meet(zp, r) / 2 + meet(zp, r2)
    if not _equal_on(z, h, k):
        raise RuntimeError("approximation differs from h on K; this indicates a bug")
    if not in_Ifh(z, ctx, h):
        raise RuntimeError("approximation left I_f(h); this indicates a bug")
    if v is not None:
        z = upward_direct(z, v, ctx, h).fn
        if not _equal_on(z, h, k) or not alg_leq(v, z):
            raise RuntimeError("augmented approximation failed; this indicates a bug")
    return melem(z)


def realize_sup(ctx: IdealCtx, h, t, eps, lf: MElem = None) -> MElem:
    """g in I_f(h) with g(t) > h(t) - eps."""
    h = _sup(h)
    t, eps = rat(t), rat(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    u = ctx.cozero
    if t not in u:
        raise ValueError(f"t = {fmt(t)} is not in U_f")
    ht = h(t)
    if ht - eps < 0:
        return melem(CONST_ZERO)
    if ht <= 0:
        raise ValueError("h(t) must be positive")
    lf = lf or _require_lf(h, ctx)
    level = max(ht - eps / 2, ht / 2)
    rad = _room(u, t)
    while True:
        _, opened = _window(t, rad)
        if compare(level, h, opened).strict and compare(h, level + eps, opened).strict:
            break
        rad /= 2
    window, opened = _window(t, rad)
    r = urysohn(window, opened, level)
    near = min(t - rad, lf.eps)
    r0 = cut_near_zero(near, 1)
    g = join(meet(lf.fn, r0) / 4, r)
    if not g(t) > ht - eps or not in_Ifh(g, ctx, h):
        raise RuntimeError("sup realization failed verification; this indicates a bug")
    return melem(g)


# ---------------------------------------------------------------------------
# differences, complements, restriction
# ---------------------------------------------------------------------------

def sub_has_C(ctx: IdealCtx, g, h, wit_g: PropCWitness = None, wit_h: PropCWitness = None) -> PropCWitness:
    """A property-(C) witness for h - g, given witnesses for g and h (g <= h on U_f)."""
    g, h = _sup(g), _sup(h)
    if is_zero_sup(g, ctx):
        return _require_C(ctx, h, wit_h)
    if not compare(g, h, ctx.cozero).leq:
        raise PreconditionError("g is not below h on U_f")
    lf = in_Lf(h - g, ctx)
    if not lf or lf.is_zero:
        raise PreconditionError("h - g is not a nonzero element of L_f", lf if not lf else None)
    wg = _require_C(ctx, g, wit_g)
    wh = _require_C(ctx, h, wit_h)
    return DifferenceWitness(ctx, wg, wh, melem(lf.fn / 2))


@dataclass
class SplitReport:
    recombines: bool
    g1_in_I: bool
    g2_in_I: bool

    def to_json(self) -> dict:
        return {"op": "complement_split", "recombines": self.recombines,
                "g1_in_I": self.g1_in_I, "g2_in_I": self.g2_in_I}

    @property
    def ok(self) -> bool:
        return self.recombines and self.g1_in_I and self.g2_in_I


def complement_split(ctx: IdealCtx, h, n: int, g, eps=None, wit_h=None, wit_c=None):
    """Split g in n*D_f as g1 + g2 with g1 in I_f(h) and g2 in I_f(n - h).

    Returns (g1, g2, SplitReport).  ``eps`` is a rational with n - h > eps
    uniformly on U_f; when omitted, half the infimum of n - h is used.
    """
    h = _sup(h)
    u = ctx.cozero
    comp = n - h
    gap = compare(CONST_ZERO, comp, u).inf_gap
    if eps is None:
        if gap is None or gap <= 0:
            raise PreconditionError("n - h is not bounded away from 0 on U_f")
        eps = gap / 2
    eps = rat(eps)
    if not (eps > 0 and compare(PwlFn.const(eps), comp, u).uniform):
        raise PreconditionError(f"n - h is not uniformly above eps = {fmt(eps)} on U_f")
    if not in_Nf(g, ctx) or not alg_leq(g, PwlFn.const(n)):
        raise PreconditionError("g is not in n D_f")
    g = _fn(g)
    if g.is_zero:
        zero = melem(CONST_ZERO)
        return zero, zero, SplitReport(True, True, True)
    wit_h = _require_C(ctx, h, wit_h)
    wit_c = _require_C(ctx, comp, wit_c)

    d = eps / 3
    k1 = level_set(g, "<=", d / 3)
    k2 = level_set(g, ">=", d / 2)
    k3 = level_set(g, ">=", d / 3)
    a = urysohn(k2, k1.complement(), n - d / 2)
    g1p = meet(g, n - a)  # g' in the construction: g' = g on K1, g' < delta
    mg = in_M(g)
    k4 = min(mg.eps, k3.inf if k3 else ONE, g.xs[1]) / 2
    v = melem(meet(g1p, cut_near_zero(k4, max(g1p.max(), ONE))) / 2)
    gpp = g - g1p + v.fn
    hp = comp - g1p
    wit_gp = has_property_C(ctx, g1p)
    if not wit_gp:
        raise RuntimeError(f"g' lacks property (C): {wit_gp}")
    wit_hp = sub_has_C(ctx, g1p, comp, wit_gp, wit_c)
    if not in_Ifh(v, ctx, hp):
        raise RuntimeError("v is not in I_f(h'); this indicates a bug")
    z1 = approx_on_compact(ctx, h, k3, witness=wit_h)
    z2 = approx_on_compact(ctx, hp, k3, v=v, witness=wit_hp)
    x1, x3 = riesz_decompose(gpp, z1, z2)
    g1 = x1.fn
    g2 = x3.fn + g1p - v.fn
    report = SplitReport(
        recombines=(g1 + g2 == g),
        g1_in_I=bool(in_Ifh(g1, ctx, h)),
        g2_in_I=bool(in_M(g2)) and bool(in_Ifh(g2, ctx, comp)),
    )
    return melem(g1), melem(g2) if in_M(g2) else g2, report


@dataclass
class RestrictionReport:
    points: int
    attained: bool
    lf_restricts: bool
    failures: List[Rat] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"op": "restrict_interval", "points": self.points,
                "attained": self.attained, "lf_restricts": self.lf_restricts,
                "failures": [fmt(t) for t in self.failures]}

    @property
    def ok(self) -> bool:
        return self.attained and self.lf_restricts


def restrict_interval(ctx_small: IdealCtx, ctx: IdealCtx, h, eps=rat(1, 64), per_component: int = 4):
    """Restrict h from U_f to U_f' and check sup realization commutes with it.

    Returns (h, RestrictionReport).  At each grid point t of U_f' the element
    produced by :func:`realize_sup` over the smaller base must exceed
    h(t) - eps and lie in both I_f'(h) and I_f(h).
    """
    h = _sup(h)
    if ctx_small.f.is_zero:
        raise ValueError("the smaller base element must be nonzero")
    inside = in_Nf(ctx_small.f, ctx)
    if not inside:
        raise PreconditionError("f' is not in the order-ideal of f", inside)
    lf = _require_lf(h, ctx)
    restricted = meet(lf.fn, ctx_small.fn)
    m = in_M(restricted)
    lf_ok = bool(m) and not m.is_zero and bool(in_Nf(restricted, ctx_small)) \
        and compare(restricted, h, ctx_small.cozero).leq
    lf_small = _require_lf(h, ctx_small)
    failures = []
    pts = default_points(ctx_small.cozero, per_component)
    for t in pts:
        if h(t) <= 0:
            continue
        g = realize_sup(ctx_small, h, t, eps, lf_small)
        if not (g.fn(t) > h(t) - eps and in_Ifh(g, ctx, h)):
            failures.append(t)
    return h, RestrictionReport(len(pts), not failures, lf_ok, failures)
