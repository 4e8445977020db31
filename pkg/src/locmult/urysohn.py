"""Urysohn functions and the countable group of piecewise-linear functions.

The ambient group is every rational-breakpoint :class:`PwlFn`.  The generator
below mirrors the inductive construction (span, then lattice words, then span
again ...) and tags each function with a replayable derivation term.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple

from .pwl import (
    CONST_ZERO,
    F0,
    ONE,
    ZERO,
    Interval,
    PwlFn,
    Rat,
    RSet,
    compare,
    cozero,
    fmt,
    join,
    meet,
    rat,
    rset_from_text,
    rset_to_text,
)


# ---------------------------------------------------------------------------
# Urysohn functions
# ---------------------------------------------------------------------------

def _host(iv: Interval, v: RSet) -> Interval:
    for c in v.intervals:
        if c.contains(iv.lo) and c.contains(iv.hi):
            return c
    raise ValueError(f"K component {iv} is not contained in V = {v}")


def _pieces(k: RSet, v: RSet):
    """Yield (host, plateau_lo, plateau_hi) for each component of K."""
    for iv in k.intervals:
        host = _host(iv, v)
        lo = iv.lo if iv.lo == host.lo else iv.lo - (iv.lo - host.lo) / 2
        hi = iv.hi if iv.hi == host.hi else iv.hi + (host.hi - iv.hi) / 2
        yield host, lo, hi


def urysohn_plateau(k: RSet, v: RSet) -> RSet:
    """The open set U (K inside U inside V) on which :func:`urysohn` is constant."""
    if not k <= v:
        raise ValueError(f"K = {k} is not contained in V = {v}")
    ivs = []
    for host, lo, hi in _pieces(k, v):
        ivs.append(Interval(lo, hi, lo == host.lo, hi == host.hi))
    return RSet(ivs).interior()


def urysohn(k: RSet, v: RSet, rho) -> PwlFn:
    """Function equal to ``rho`` near K, zero off V, with values in [0, rho].

    Each component of K is fattened on each side by half of its gap to the
    boundary of the enclosing component of V; the ramps are linear.
    """
    rho = rat(rho)
    if rho < 0:
        raise ValueError("rho must be nonnegative")
    if not k.is_closed():
        raise ValueError(f"K = {k} is not closed")
    if not v.is_open():
        raise ValueError(f"V = {v} is not open in [0, 1]")
    if not k <= v:
        raise ValueError(f"K = {k} is not contained in V = {v}")
    if k.is_empty or rho == 0:
        return CONST_ZERO
    out = None
    for host, lo, hi in _pieces(k, v):
        pts = []
        if lo == host.lo:
            pts.append((lo, rho))
            if lo > 0:
                pts.insert(0, (ZERO, rho))
        else:
            if host.lo > 0:
                pts.append((ZERO, ZERO))
            pts.append((host.lo, ZERO))
            pts.append((lo, rho))
        if hi > pts[-1][0]:
            pts.append((hi, rho))
        if hi != host.hi:
            pts.append((host.hi, ZERO))
            if host.hi < 1:
                pts.append((ONE, ZERO))
        elif hi < 1:
            pts.append((ONE, rho))
        bump = PwlFn(pts)
        out = bump if out is None else join(out, bump)
    return out


def local_form_at_zero(f: PwlFn) -> Tuple[Rat, Rat, Rat]:
    """(lam, mu, eps) with f(t) = lam + mu*t on [0, eps]; eps is the first breakpoint."""
    return f.ys[0], (f.ys[1] - f.ys[0]) / f.xs[1], f.xs[1]


# ---------------------------------------------------------------------------
# Derivation terms
# ---------------------------------------------------------------------------

_LEAVES = ("f0", "const", "ury")
_NODES = ("add", "sub", "scale", "meet", "join")


@dataclass(frozen=True)
class Derivation:
    """A term over the generators f0, const(q), ury(K;V;rho).

    ``value`` is computed once on construction; :meth:`replay` recomputes it
    from scratch.
    """

    op: str
    args: tuple
    value: PwlFn = field(compare=False, repr=False, default=None)

    def __post_init__(self):
        if self.value is None:
            object.__setattr__(self, "value", self._evaluate(lambda d: d.value))

    def _evaluate(self, sub) -> PwlFn:
        op, a = self.op, self.args
        if op == "f0":
            return F0
        if op == "const":
            return PwlFn.const(a[0])
        if op == "ury":
            return urysohn(a[0], a[1], a[2])
        if op == "add":
            return sub(a[0]) + sub(a[1])
        if op == "sub":
            return sub(a[0]) - sub(a[1])
        if op == "scale":
            return a[0] * sub(a[1])
        if op == "meet":
            return meet(sub(a[0]), sub(a[1]))
        if op == "join":
            return join(sub(a[0]), sub(a[1]))
        raise ValueError(f"unknown derivation op {op!r}")

    def replay(self) -> PwlFn:
        return self._evaluate(lambda d: d.replay())

    def __str__(self):
        op, a = self.op, self.args
        if op == "f0":
            return "f0"
        if op == "const":
            return f"const({fmt(a[0])})"
        if op == "ury":
            return f"ury({rset_to_text(a[0])};{rset_to_text(a[1])};{fmt(a[2])})"
        if op == "scale":
            return f"scale({fmt(a[0])}, {a[1]})"
        return f"{op}({a[0]}, {a[1]})"


def d_f0() -> Derivation:
    return Derivation("f0", ())


def d_const(q) -> Derivation:
    return Derivation("const", (rat(q),))


def d_ury(k: RSet, v: RSet, rho) -> Derivation:
    return Derivation("ury", (k, v, rat(rho)))


def d_add(a, b):
    return Derivation("add", (a, b))


def d_sub(a, b):
    return Derivation("sub", (a, b))


def d_scale(q, a):
    return Derivation("scale", (rat(q), a))


def d_meet(a, b):
    return Derivation("meet", (a, b))


def d_join(a, b):
    return Derivation("join", (a, b))


def _split_top(text: str, sep: str) -> List[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def parse_derivation(text: str) -> Derivation:
    """Inverse of ``str(Derivation)``."""
    text = text.strip()
    if text == "f0":
        return d_f0()
    name, paren, rest = text.partition("(")
    name = name.strip()
    if not paren or not rest.endswith(")"):
        raise ValueError(f"malformed derivation {text!r}")
    body = rest[:-1]
    if name == "const":
        return d_const(rat(body))
    if name == "ury":
        parts = _split_top(body, ";")
        if len(parts) != 3:
            raise ValueError(f"ury needs K;V;rho, got {body!r}")
        return d_ury(rset_from_text(parts[0]), rset_from_text(parts[1]), rat(parts[2]))
    parts = _split_top(body, ",")
    if len(parts) != 2:
        raise ValueError(f"{name} takes two arguments, got {body!r}")
    if name == "scale":
        return d_scale(rat(parts[0]), parse_derivation(parts[1]))
    if name in ("add", "sub", "meet", "join"):
        return Derivation(name, (parse_derivation(parts[0]), parse_derivation(parts[1])))
    raise ValueError(f"unknown derivation op {name!r}")


# ---------------------------------------------------------------------------
# Enumerating the group
# ---------------------------------------------------------------------------

_COEFFS = [rat(c) for c in ("-2", "-1", "-1/2", "1/3", "1/2", "1", "3/2", "2")]


def dyadic_ball_pairs() -> Iterator[Tuple[RSet, RSet]]:
    """Pairs (closure of the small ball, large ball) over dyadic centres.

    A pair with centre c and radius w uses V = B(c, w) and U = B(c, 2w); it is
    kept when 0 lies in V or 0 lies outside the closure of U, so every
    generator has a linear germ at 0 of the required kind.
    """
    m = 1
    while True:
        w = rat(1) / 2 ** m
        for i in range(2 ** m + 1):
            c = i * w
            if not (c - w < 0 or c - 2 * w > 0):
                continue
            small = RSet.closed(c - w, c + w)
            big = RSet([Interval(c - 2 * w, c + 2 * w, False, False)])
            if c - 2 * w < 0:
                big = RSet([Interval(ZERO, c + 2 * w, True, c + 2 * w >= 1)])
            elif c + 2 * w >= 1:
                big = RSet([Interval(c - 2 * w, ONE, False, True)])
            yield small, big
        m += 1


def _combo(rng: random.Random, pool: Sequence[Derivation]) -> Derivation:
    k = rng.choice((2, 3))
    terms = [d_scale(rng.choice(_COEFFS), rng.choice(pool)) for _ in range(k)]
    out = terms[0]
    for t in terms[1:]:
        out = d_add(out, t)
    return out


def generate_G(depth: int, ball_budget: int, seed=0) -> Iterator[Tuple[PwlFn, Derivation]]:
    """Stream distinct elements of G_1, G_2, ..., G_depth with derivations.

    Level 1 is the rational span of f0, 1 and ``ball_budget`` dyadic Urysohn
    generators.  Each later level adds lattice words in the previous level and
    rational combinations of those words.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    rng = random.Random(seed)
    seen = set()
    pool: List[Derivation] = []

    def emit(d: Derivation):
        if d.value in seen:
            return None
        seen.add(d.value)
        pool.append(d)
        return d.value, d

    one = d_const(1)
    base = [d_f0(), one, d_sub(one, d_f0())]
    balls = dyadic_ball_pairs()
    for _ in range(ball_budget):
        k, v = next(balls)
        base.append(d_ury(k, v, 1))
    for d in base:
        out = emit(d)
        if out:
            yield out
    for _ in range(ball_budget):
        out = emit(_combo(rng, list(pool)))
        if out:
            yield out

    for _level in range(2, depth + 1):
        prev = list(pool)
        words = []
        head = prev[:4]
        for i, a in enumerate(head):
            for b in head[i + 1:]:
                words.append(d_meet(a, b))
                words.append(d_join(a, b))
        for _ in range(ball_budget):
            a, b = rng.choice(prev), rng.choice(prev)
            words.append(d_meet(a, b) if rng.random() < 0.5 else d_join(a, b))
        fresh = []
        for d in words:
            out = emit(d)
            if out:
                fresh.append(d)
                yield out
        for _ in range(ball_budget):
            out = emit(_combo(rng, fresh or prev))
            if out:
                yield out


# ---------------------------------------------------------------------------
# Checking properties (i)-(iv)
# ---------------------------------------------------------------------------

@dataclass
class PropertyRow:
    prop: str
    instance: str
    status: str  # "pass", "fail" or "precondition"
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status != "fail"


@dataclass
class GroupReport:
    rows: List[PropertyRow]

    @property
    def failures(self) -> List[PropertyRow]:
        return [r for r in self.rows if r.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failures

    def count(self, prop: str, status: str = "pass") -> int:
        return sum(1 for r in self.rows if r.prop == prop and r.status == status)


def _pointwise_ok(res: PwlFn, xs, expect) -> bool:
    return all(res(x) == expect(x) for x in xs)


def _check_closure(f: PwlFn, g: PwlFn, q) -> Optional[str]:
    xs = sorted(set(f.xs) | set(g.xs))
    checks = {
        "add": (f + g, lambda t: f(t) + g(t)),
        "sub": (f - g, lambda t: f(t) - g(t)),
        "scale": (q * f, lambda t: q * f(t)),
        "meet": (meet(f, g), lambda t: min(f(t), g(t))),
        "join": (join(f, g), lambda t: max(f(t), g(t))),
    }
    for name, (res, expect) in checks.items():
        if PwlFn(res.points) != res:
            return f"{name} result not canonical"
        pts = sorted(set(xs) | set(res.xs))
        mids = [(a + b) / 2 for a, b in zip(pts, pts[1:])]
        if not _pointwise_ok(res, pts + mids, expect):
            return f"{name} disagrees with pointwise value"
    return None


def _open_around(lo: Rat, hi: Rat) -> RSet:
    # relatively open interval (lo, hi) clipped to [0, 1]
    return RSet([Interval(max(lo, ZERO), min(hi, ONE), lo < 0, hi > 1)])


def urysohn_grid(n: int = 50) -> List[Tuple[RSet, RSet, Rat]]:
    """Deterministic (K, V, rho) triples on a 1/16 grid, K always inside V."""
    d = 16
    rhos = [rat(1), rat(1, 2), rat(3), rat(1, 8)]
    out = [(RSet.whole(), RSet.whole(), rat(1)),
           (RSet.empty(), RSet.open(rat(1, 4), rat(1, 2)), rat(1))]
    i = 0
    for a in range(0, d + 1):
        for b in range(a, d + 1, 3):
            lo, hi = rat(a, d), rat(b, d)
            k = RSet.closed(lo, hi)
            v = _open_around(lo - rat(1, d), hi + rat(1, 2 * d))
            if i % 3 == 0 and b + 4 <= d:
                p = rat(b + 3, d)
                k = k | RSet.point(p)
                v = v | _open_around(p - rat(1, 2 * d), p + rat(1, d))
            out.append((k, v, rhos[i % len(rhos)]))
            i += 1
    return out[:n]


def check_urysohn(k: RSet, v: RSet, rho) -> PropertyRow:
    name = f"K={k} V={v} rho={fmt(rho)}"
    if not k <= v:
        return PropertyRow("iv", name, "precondition", "K is not contained in V")
    r = urysohn(k, v, rho)
    if r.min() < 0 or r.max() > rho:
        return PropertyRow("iv", name, "fail", "values leave [0, rho]")
    if k.is_empty:
        ok = r.is_zero
        return PropertyRow("iv", name, "pass" if ok else "fail", "" if ok else "nonzero for empty K")
    u = urysohn_plateau(k, v)
    if not (k <= u and u <= v and u.is_open()):
        return PropertyRow("iv", name, "fail", f"plateau {u} not between K and V")
    rc = PwlFn.const(rho)
    if not (compare(r, rc, u).leq and compare(rc, r, u).leq):
        return PropertyRow("iv", name, "fail", "r differs from rho on U")
    outside = v.complement()
    if not (compare(r, CONST_ZERO, outside).leq and cozero(r) <= v):
        return PropertyRow("iv", name, "fail", "r nonzero outside V")
    return PropertyRow("iv", name, "pass")


def verify_group_properties(sample: Sequence, grid=None, q=rat(1, 3)) -> GroupReport:
    """Check properties (i)-(iv) on a finite sample of (PwlFn, Derivation) or PwlFn."""
    fns = [s[0] if isinstance(s, tuple) else s for s in sample]
    rows: List[PropertyRow] = []
    for i, f in enumerate(fns):
        g = fns[(i + 1) % len(fns)]
        err = _check_closure(f, g, q)
        rows.append(PropertyRow("i", f"#{i}", "fail" if err else "pass", err or ""))
    # (ii)
    if F0 in fns:
        ok = F0(0) == 0 and cozero(F0) == RSet.half_open(0, 1, left_closed=False)
        rows.append(PropertyRow("ii", "f0", "pass" if ok else "fail"))
    else:
        rows.append(PropertyRow("ii", "f0", "fail", "f0 missing from sample"))
    # (iii)
    for i, f in enumerate(fns):
        lam, mu, eps = local_form_at_zero(f)
        lin = lam + mu * F0
        ok = eps > 0 and compare(f, lin, RSet.closed(0, eps)).leq and compare(lin, f, RSet.closed(0, eps)).leq
        rows.append(PropertyRow("iii", f"#{i}", "pass" if ok else "fail",
                                f"lam={fmt(lam)} mu={fmt(mu)} eps={fmt(eps)}"))
    # (iv)
    for k, v, rho in grid if grid is not None else urysohn_grid():
        rows.append(check_urysohn(k, v, rho))
    return GroupReport(rows)
