"""The oscillating function g that is locally in M but has no limit at rho.

g = mu*t on (0, m_1]; on each window [m_n, m_{n+1}] of a dyadic sequence
m_n -> rho it alternates between the plateau mu*m_1 and 0; g = 0 from rho on.
Every finite truncation is an honest PwlFn, and each is a lattice word in
mu*f0 and Urysohn functions r_1, r_2, ...  The interval I(g) it defines over
the base f' cannot come from a continuous function on a larger co-zero set.

This module also holds the decomposition g = g1 + g2 used to move an element
into a smaller order-ideal, and a tower of monsters driven by a fundamental
sequence.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .intervals import has_property_C, in_Ifh
from .localization import FundamentalSeq, fundamental_sequence, hat
from .monoid import (
    MElem,
    PreconditionError,
    _fn,
    alg_leq,
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
    HALF,
    ONE,
    Interval,
    PUNCTURED,
    PwlFn,
    Rat,
    RSet,
    compare,
    cozero,
    fmt,
    join,
    level_set,
    meet,
    rat,
    support,
    to_text,
)
from .tailfn import TailFn
from .urysohn import local_form_at_zero, urysohn, urysohn_plateau

DEFAULT_RHO = HALF
DEFAULT_MU = rat(1, 4)
WINDOW_CHECKS = 8


def _affine_slope_on(f: PwlFn, b) -> Optional[Rat]:
    """The slope lam if f = lam*t on [0, b], else None."""
    lam = f.slope_after(0)
    if f(0) != 0:
        return None
    line = F0 * lam
    s = RSet.closed(0, b)
    if compare(f, line, s).leq and compare(line, f, s).leq:
        return lam
    return None


def _equal_on(a, b, s: RSet) -> bool:
    return compare(a, b, s).leq and compare(b, a, s).leq


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def window_urysohn(g: TailFn, n: int) -> PwlFn:
    """r_n: the plateau before window n and 0 after it (n odd), or the reverse."""
    _, p, q, _ = g.osc.window(n)
    top = g.osc.plateau
    if n % 2:
        return PwlFn([(0, top), (p, top), (q, 0), (1, 0)])
    return PwlFn([(0, 0), (p, 0), (q, top), (1, top)])


def lattice_words(g: TailFn, count: int = WINDOW_CHECKS) -> List[PwlFn]:
    """((mu f0) ^ r_1) v r_2 ^ r_3 ...: word n agrees with g on [0, m_{n+1}]."""
    words = []
    word = F0 * g.osc.mu
    for n in range(1, count + 1):
        r = window_urysohn(g, n)
        word = meet(word, r) if n % 2 else join(word, r)
        words.append(word)
    return words


@dataclass
class MonsterBuild:
    f: MElem
    h: PwlFn
    f_prime: MElem
    g: TailFn
    lam: Rat
    lam_prime: Rat
    certificates: Dict[str, bool] = field(default_factory=dict)

    @property
    def rho(self) -> Rat:
        return self.g.rho

    @property
    def mu(self) -> Rat:
        return self.g.osc.mu

    @property
    def h1(self) -> PwlFn:
        return self.h / 2

    @property
    def ok(self) -> bool:
        return all(self.certificates.values())

    def to_json(self) -> dict:
        lo, hi = oscillation(self.g)
        return {
            "f": to_text(self.f.fn),
            "h": to_text(self.h),
            "f_prime": to_text(self.f_prime.fn),
            "g": self.g.to_json(),
            "oscillation": [fmt(lo), fmt(hi)],
            "certificates": dict(sorted(self.certificates.items())),
        }


def build_monster(f=F0, h=F0, rho=DEFAULT_RHO, mu=DEFAULT_MU) -> MonsterBuild:
    """f' <=_M f with leftmost zero rho, and the oscillating g over U_f'.

    f must equal lam*t on [0, rho] and h must be 2*lam'*t; 0 < mu < lam'.
    """
    f, h, rho, mu = melem(f), _fn(h), rat(rho), rat(mu)
    if not 0 < rho < 1:
        raise ValueError("rho must lie in (0, 1)")
    lam = _affine_slope_on(f.fn, rho)
    if lam is None or lam <= 0:
        raise PreconditionError(f"f is not of the form lam*t on [0, {fmt(rho)}]")
    two_lam_prime = _affine_slope_on(h, 1)
    if two_lam_prime is None or two_lam_prime <= 0:
        raise PreconditionError("h is not of the form 2*lam'*t")
    lam_prime = two_lam_prime / 2
    if not 0 < mu < lam_prime:
        raise PreconditionError(f"need 0 < mu < lam' = {fmt(lam_prime)}")
    f_prime = melem(hat(rho) * (lam / 2))
    g = TailFn.monster(rho, mu)
    build = MonsterBuild(f, h, f_prime, g, lam, lam_prime)
    build.certificates = monster_certificates(build)
    return build


def monster_certificates(b: MonsterBuild) -> Dict[str, bool]:
    g, rho = b.g, b.rho
    lo, hi = oscillation(g)
    words = lattice_words(g)
    word_ok = all(
        _equal_on(w, g.upto(n + 1), RSet.closed(0, g.osc.term(n + 1))) and bool(in_M(w))
        for n, w in enumerate(words, start=1)
    )
    truncations_ok = all(
        all(g.upto(m)(x) == g(x) for x in g.osc.breakpoints(m)) for m in range(1, WINDOW_CHECKS + 1)
    )
    return {
        "f_prime_below_f": alg_lt(b.f_prime, b.f),
        "leftmost_zero_is_rho": cozero(b.f_prime.fn) == RSet.open(0, rho),
        "g_at_m1": g(g.osc.term(1)) == b.mu * g.osc.term(1),
        "g_zero_from_rho": _equal_on(g, CONST_ZERO, RSet.closed(rho, 1)),
        "window_words": word_ok,
        "truncations_continuous": truncations_ok,
        "non_extendable": hi - lo > 0,
        "dominated": dominated(g, b.h1),
    }


def oscillation(g, rho=None):
    """(liminf, limsup) of g at rho from the left, read off the tail rule."""
    if isinstance(g, PwlFn):
        if rho is None:
            raise ValueError("a plain function needs an explicit point")
        v = g(rho)
        return v, v
    if rho is not None and rat(rho) != g.rho:
        raise ValueError(f"the tail accumulates at {fmt(g.rho)}, not at {fmt(rho)}")
    return g.oscillation()


def dominated(g, h1, domain: RSet = PUNCTURED) -> bool:
    """g < h1 pointwise on the domain (default (0, 1])."""
    return compare(g, h1, domain).strict


# ---------------------------------------------------------------------------
# local witnesses
# ---------------------------------------------------------------------------

@dataclass
class LocalMWitness:
    t: Rat
    z: MElem
    window: RSet
    index: int

    def verify(self, g: TailFn) -> bool:
        closed = self.window.closure()
        lo, hi = closed.inf, closed.sup
        local = g.local_pwl(lo, hi)
        return self.t in self.window and _equal_on(local, self.z.fn, closed)


def _nearest_gap(t: Rat, xs: Sequence[Rat]) -> Rat:
    return min(abs(x - t) for x in xs if x != t)


def locally_in_M_witness(g: TailFn, t, domain: RSet = None) -> LocalMWitness:
    """z_t in M equal to g on an open window around t.

    The window has radius half the distance to the nearest breakpoint of g.
    """
    t = rat(t)
    domain = domain if domain is not None else RSet.open(0, g.rho)
    if t <= 0 or t not in domain:
        raise ValueError(f"t = {fmt(t)} is not in the domain {domain} minus 0")
    if t < g.rho:
        m = g.cover_index(t)
        z = g.upto(m)
        xs = g.osc.breakpoints(m + 2)
        rad = min(_nearest_gap(t, xs), g.osc.term(m) - t) / 2
    else:
        # past rho only the offset survives; keep the germ with a cut before m_2
        osc = g.osc
        r = urysohn(RSet.closed(0, osc.term(1)), RSet.half_open(0, osc.term(2), left_closed=True), osc.plateau)
        z = g.offset + g.coeff * meet(osc.upto(2), r)
        m = 0
        rad = (t - g.rho) / 2
    lo, hi = t - rad, t + rad
    window = RSet([Interval(lo, min(hi, ONE), False, hi < 1)])
    cert = in_M(z)
    if not cert:
        raise RuntimeError(f"local witness left M: {cert}")
    return LocalMWitness(t, cert, window, m)


# ---------------------------------------------------------------------------
# E + ([0, h1] ^ N_f') = [0, h] ^ N_f'
# ---------------------------------------------------------------------------

@dataclass
class SumRow:
    z: PwlFn
    parts: Dict[str, PwlFn]
    checks: Dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _big(*fns) -> Rat:
    return max(max(f.max() for f in fns), ONE) + 1


def split_through_E(b: MonsterBuild, z) -> SumRow:
    """z = a + b_ + rest with a in I(g), b_ in I(h1 - g), rest <_M h1."""
    z = _fn(z)
    ctx = ideal_ctx(b.f_prime)
    if not in_Nf(z, ctx) or not alg_leq(z, b.h):
        raise PreconditionError("z is not in [0, h] ^ N_f'")
    g, h1, rho, mu = b.g, b.h1, b.rho, b.mu
    x1, x2 = riesz_decompose(z, h1, h1)
    z1, z2 = x1.fn, x2.fn
    over = level_set(z - h1, ">=", 0) & PUNCTURED
    if over and over.sup >= rho:
        raise RuntimeError("z reaches h1 at rho; this indicates a bug")
    beta_in = (over.sup + rho) / 2 if over else rho / 2
    beta = (beta_in + rho) / 2
    checks: Dict[str, bool] = {}
    if z1.is_zero:
        z1p = a = b_ = CONST_ZERO
        checks["z1p_below_z1"] = True
        checks["remainder_fits"] = True
    else:
        top = _big(z1, h1)
        c = urysohn(RSet.closed(0, beta_in), RSet.half_open(0, beta, left_closed=True), top)
        theta = meet(z1, h1 - z2, c) / 2
        z1p = meet(z1, c) - theta
        checks["z1p_below_z1"] = alg_lt(z1p, z1)
        checks["remainder_fits"] = alg_lt(z1 - z1p, h1 - z2)
        # two elements of I(g) and I(h1 - g) that together dominate z1'
        sigma = germ_slope(z1p)
        shrink = (sigma / b.lam_prime + 1) / 2
        s1, s2 = shrink * mu, shrink * (b.lam_prime - mu)
        beta2 = (beta + rho) / 2
        gamma = g.upto(g.cover_index(beta2))
        near = min(g.osc.term(1), z1p.xs[1], beta)
        far = urysohn(RSet.closed(near, 1), RSet([Interval(near / 2, ONE, False, True)]), top)
        c2 = urysohn(RSet.closed(0, beta), RSet.half_open(0, beta2, left_closed=True), top)
        y1 = meet(gamma, join(F0 * s1, far))
        y2 = meet(h1 - gamma, c2, join(F0 * s2, far))
        xa, xb = riesz_decompose(z1p, y1, y2)
        a, b_ = xa.fn, xb.fn
    rest = z2 + z1 - z1p
    checks.update({
        "z1p_support": support(z1p) <= RSet.closed(0, beta) and beta < rho,
        "a_in_I_g": bool(in_Ifh(a, ctx, g)),
        "b_in_I_h1_minus_g": bool(in_Ifh(b_, ctx, h1 - g)),
        "rest_below_h1": alg_lt(rest, h1),
        "rest_in_ideal": bool(in_Nf(rest, ctx)),
        "recombines": a + b_ + rest == z,
    })
    parts = {"z1": z1, "z2": z2, "z1p": z1p, "a": a, "b": b_, "rest": rest}
    return SumRow(z, parts, checks)


def interval_sum_check(b: MonsterBuild, samples: Sequence) -> List[SumRow]:
    return [split_through_E(b, z) for z in samples]


# ---------------------------------------------------------------------------
# splitting an element across a compact set
# ---------------------------------------------------------------------------

@dataclass
class IdealSplit:
    g1: MElem
    g2: MElem
    g2_inner: MElem
    remainder: PwlFn
    k_prime: RSet
    checks: Dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _interior_has_zero(k: RSet) -> Optional[Rat]:
    """w > 0 with [0, w] inside k, or None."""
    for iv in k.intervals:
        if iv.lo == 0 and iv.lo_closed and iv.hi > 0:
            return iv.hi
    return None


def ideal_split(g, f, f_prime, k1: RSet, k: RSet, k2: RSet) -> IdealSplit:
    """g = g1 + g2 with g1 in N_f and g2 supported in K1 u K', K' disjoint from K.

    Needs 0 in the interior of K1, K1 inside U_f' u {0} inside K,
    K inside the interior of K2, and K2 inside U_f u {0}.
    """
    g, f, f_prime = melem(g), melem(f), melem(f_prime)
    if g.is_zero or f.is_zero or f_prime.is_zero:
        raise ValueError("g, f and f' must be nonzero")
    zero = RSet.point(0)
    u_f, u_fp = cozero(f.fn) | zero, cozero(f_prime.fn) | zero
    for s, name in ((k1, "K1"), (k, "K"), (k2, "K2")):
        if not s.is_closed():
            raise PreconditionError(f"{name} is not compact")
    w_max = _interior_has_zero(k1)
    if w_max is None:
        raise PreconditionError("K1 is not a neighbourhood of 0")
    if not (k1 <= u_fp and u_fp <= k and k2 <= u_f):
        raise PreconditionError("sets are not nested as K1 <= U_f' u {0} <= K <= K2 <= U_f u {0}")
    u = k2.interior()
    if not k <= u:
        raise PreconditionError("K is not inside the interior of K2")
    fn = g.fn
    _, beta, lin = local_form_at_zero(fn)
    if fn(0) != 0 or beta <= 0:
        raise PreconditionError("g must vanish at 0 with a positive slope")
    w = min(lin, w_max)
    v = urysohn_plateau(k, u)
    r1 = urysohn(k, u, fn.max() + 1)
    g1p = meet(fn, r1)
    alpha = beta / 2
    r2 = urysohn(RSet.closed(0, w / 2), RSet.half_open(0, w, left_closed=True), alpha * w + 1)
    g2p = meet(F0 * alpha, r2)
    remainder = fn - g1p
    g2 = g2p + remainder
    g1 = g1p - g2p
    k_prime = v.complement()
    m1, m2 = in_M(g1), in_M(g2)
    checks = {
        "recombines": g1 + g2 == fn,
        "g1_in_M": bool(m1),
        "g2_in_M": bool(m2),
        "g1_in_Nf": bool(m1) and bool(in_Nf(g1, ideal_ctx(f))),
        "g2_inner_in_Nf_prime": bool(in_Nf(g2p, ideal_ctx(f_prime))),
        "g2_inner_below_g1_prime": bool(alg_leq(g2p, g1p)),
        "g2_support": support(g2) <= (k1 | k_prime),
        "k_prime_disjoint": (k & k_prime).is_empty,
        "remainder_vanishes_on_K": _equal_on(remainder, CONST_ZERO, k),
    }
    return IdealSplit(m1 if m1 else melem(CONST_ZERO), m2 if m2 else melem(CONST_ZERO),
                      melem(g2p), remainder, k_prime, checks)


# ---------------------------------------------------------------------------
# tower
# ---------------------------------------------------------------------------

@dataclass
class TowerStage:
    n: int
    f_prime: MElem
    g: TailFn
    rho: Rat
    build: MonsterBuild
    certificates: Dict[str, bool]

    @property
    def gap(self) -> Rat:
        lo, hi = oscillation(self.g)
        return hi - lo

    @property
    def ok(self) -> bool:
        return all(self.certificates.values()) and self.build.ok

    def to_json(self) -> dict:
        data = self.build.to_json()
        data.update({"stage": self.n, "rho": fmt(self.rho), "gap": fmt(self.gap),
                     "tower_certificates": dict(sorted(self.certificates.items()))})
        return data


def monster_tower(depth: int, seq: FundamentalSeq = None, mu=DEFAULT_MU, first_rho=rat(1, 4),
                  h=F0) -> List[TowerStage]:
    """Monsters over f'_1 >= f'_2 >= ..., each f'_n also below f_n.

    Stage n builds on (1/2)(f'_{n-1} ^ f_n) with rho_n = first_rho / 2^(n-1).
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    seq = seq if seq is not None else fundamental_sequence(depth)
    if depth > len(seq) - 1:
        raise ValueError("the fundamental sequence is shorter than the tower")
    prev = melem(F0)
    stages = []
    for n in range(1, depth + 1):
        rho = rat(first_rho) / 2 ** (n - 1)
        base = melem(meet(prev.fn, seq[n].fn) / 2)
        build = build_monster(base, h, rho, mu)
        fp = build.f_prime
        certs = {
            "below_previous": alg_lt(fp, prev),
            "below_sequence": alg_lt(fp, seq[n]),
            "rho_in_previous_cozero": rho in cozero(prev.fn),
            "gap_positive": oscillation(build.g)[1] - oscillation(build.g)[0] > 0,
        }
        stages.append(TowerStage(n, fp, build.g, rho, build, certs))
        prev = fp
    return stages


def check_property_C(b: MonsterBuild, points: Sequence) -> List:
    """Replay the property-(C) witness for g over f' at the given points."""
    ctx = ideal_ctx(b.f_prime)
    wit = has_property_C(ctx, b.g, samples=[])
    if not wit:
        raise RuntimeError(f"g lacks property (C): {wit}")
    return [wit.verify(t) for t in points]
