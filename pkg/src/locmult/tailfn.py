"""Functions with an infinite oscillating tail accumulating at a point rho.

The basic shape is the oscillator ``G``:

* ``G(t) = mu*t`` on [0, m_1], so ``G(m_1) = P = mu*m_1`` (the plateau value);
* on each window [m_n, m_{n+1}] the first third holds the previous plateau
  value, the middle third ramps linearly, the last third holds the next one;
  odd windows fall from P to 0, even windows rise from 0 to P;
* ``G = 0`` on [rho, 1].

Here m_n = rho*(1 - 2**-n).  A :class:`TailFn` is ``offset + coeff*G`` with a
plain :class:`PwlFn` offset, which is closed under the operations the monster
construction needs.  Comparisons against piecewise-linear functions are exact:
finitely many windows are checked segment by segment and the rest of the tail
is bounded by one linear inequality.
"""
from __future__ import annotations

import json
from typing import List, Optional, Tuple

from .pwl import (
    CONST_ZERO,
    F0,
    ONE,
    ZERO,
    Comparison,
    Interval,
    PwlFn,
    Rat,
    RSet,
    UNIT,
    _SCALARS,
    _sign_report,
    fmt,
    from_text,
    meet,
    rat,
)


class DyadicRule:
    """m_n = rho * (1 - 2**-n), n >= 0."""

    name = "dyadic"

    def __init__(self, rho):
        self.rho = rat(rho)

    def term(self, n: int) -> Rat:
        return self.rho * (1 - rat(1) / (2 ** n))

    def index(self, t) -> int:
        """The n with m_n <= t < m_{n+1}, for 0 <= t < rho."""
        s = 1 - rat(t) / self.rho
        if not 0 < s <= 1:
            raise ValueError(f"t = {t} is not in [0, rho)")
        return int(s.denominator // s.numerator).bit_length() - 1

    def __eq__(self, other):
        return isinstance(other, DyadicRule) and other.rho == self.rho

    def __hash__(self):
        return hash(("dyadic", self.rho))


class Oscillator:
    """The oscillating shape G for parameters (rho, mu)."""

    def __init__(self, rho, mu, rule: Optional[DyadicRule] = None):
        self.rho, self.mu = rat(rho), rat(mu)
        if not 0 < self.rho < 1:
            raise ValueError("rho must lie in (0, 1)")
        if self.mu <= 0:
            raise ValueError("mu must be positive")
        self.rule = rule or DyadicRule(self.rho)
        if self.rule.rho != self.rho:
            raise ValueError("sequence rule does not converge to rho")
        self.plateau = self.mu * self.term(1)

    def term(self, n: int) -> Rat:
        return self.rule.term(n)

    def window(self, n: int) -> Tuple[Rat, Rat, Rat, Rat]:
        """Breakpoints (m_n, m_n + w/3, m_n + 2w/3, m_{n+1}) of window n >= 1."""
        a, b = self.term(n), self.term(n + 1)
        w = b - a
        return a, a + w / 3, a + 2 * w / 3, b

    def window_values(self, n: int) -> Tuple[Rat, Rat]:
        return (self.plateau, ZERO) if n % 2 else (ZERO, self.plateau)

    def __call__(self, t) -> Rat:
        t = rat(t)
        if t >= self.rho:
            return ZERO
        m1 = self.term(1)
        if t <= m1:
            return self.mu * t
        n = self.rule.index(t)
        _, p, q, _ = self.window(n)
        start, end = self.window_values(n)
        if t <= p:
            return start
        if t >= q:
            return end
        return start + (end - start) * (t - p) / (q - p)

    def breakpoints(self, m: int) -> List[Rat]:
        """Breakpoints of G on [0, m_m]."""
        xs = [ZERO, self.term(1)]
        for n in range(1, m):
            xs.extend(self.window(n)[1:])
        return xs

    def upto(self, m: int) -> PwlFn:
        """Equal to G on [0, m_m] and constant afterwards (m >= 1)."""
        xs = self.breakpoints(m)
        pts = [(x, self(x)) for x in xs]
        if xs[-1] < 1:
            pts.append((ONE, pts[-1][1]))
        return PwlFn(pts)

    def cap(self) -> PwlFn:
        """min(mu*t, P): an upper bound for G, equal to it on [0, m_1]."""
        return meet(self.mu * F0, self.plateau)

    def key(self):
        return (self.rho, self.mu, self.rule)

    def __eq__(self, other):
        return isinstance(other, Oscillator) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def _even_at_least(m: int) -> int:
    return m if m % 2 == 0 else m + 1


class TailFn:
    """``offset + coeff * G`` for an oscillator G accumulating at rho."""

    __slots__ = ("offset", "coeff", "osc")

    def __init__(self, offset: PwlFn, coeff, osc: Oscillator):
        self.offset = offset if isinstance(offset, PwlFn) else PwlFn.const(offset)
        self.coeff = rat(coeff)
        self.osc = osc

    @classmethod
    def monster(cls, rho, mu) -> "TailFn":
        return cls(CONST_ZERO, 1, Oscillator(rho, mu))

    @property
    def rho(self) -> Rat:
        return self.osc.rho

    @property
    def plateau(self) -> Rat:
        return self.coeff * self.osc.plateau

    def reduce(self):
        """A plain PwlFn when the tail has vanished, else self."""
        return self.offset if self.coeff == 0 else self

    def __call__(self, t) -> Rat:
        t = rat(t)
        if t < 0 or t > 1:
            raise ValueError(f"t={t} lies outside [0, 1]")
        return self.offset._at(t) + self.coeff * self.osc(t)

    # algebra
    def _same(self, other: "TailFn"):
        if self.osc != other.osc:
            raise ValueError("tail functions with different oscillators cannot be combined")

    def __add__(self, other):
        if isinstance(other, TailFn):
            self._same(other)
            return TailFn(self.offset + other.offset, self.coeff + other.coeff, self.osc).reduce()
        if isinstance(other, _SCALARS + (PwlFn,)):
            return TailFn(self.offset + other, self.coeff, self.osc)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return TailFn(-self.offset, -self.coeff, self.osc)

    def __sub__(self, other):
        if isinstance(other, (TailFn, PwlFn) + _SCALARS):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, _SCALARS + (PwlFn,)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, q):
        if not isinstance(q, _SCALARS):
            return NotImplemented
        q = rat(q)
        return TailFn(q * self.offset, q * self.coeff, self.osc).reduce()

    __rmul__ = __mul__

    def __truediv__(self, q):
        return self * (1 / rat(q))

    def __eq__(self, other):
        if not isinstance(other, TailFn):
            return NotImplemented
        return (self.offset, self.coeff, self.osc) == (other.offset, other.coeff, other.osc)

    def __hash__(self):
        return hash((self.offset, self.coeff, self.osc))

    # finite views
    def index(self, t) -> int:
        return self.osc.rule.index(t)

    def cover_index(self, t) -> int:
        """Least even m >= 2 with t < m_m (t < rho)."""
        t = rat(t)
        if t < self.osc.term(1):
            return 2
        return _even_at_least(self.index(t) + 1)

    def upto(self, m: int) -> PwlFn:
        """Equal to self on [0, m_m] and on [rho, 1] when m is even."""
        return self.offset + self.coeff * self.osc.upto(m)

    def lower_envelope(self) -> PwlFn:
        """A PwlFn below self everywhere, equal to it on [0, m_1]."""
        g_low = self.osc.upto(2) if self.coeff >= 0 else self.osc.cap()
        return self.offset + self.coeff * g_low

    def upper_envelope(self) -> PwlFn:
        g_high = self.osc.cap() if self.coeff >= 0 else self.osc.upto(2)
        return self.offset + self.coeff * g_high

    def local_pwl(self, a, b) -> PwlFn:
        """A PwlFn equal to self on [a, b]; [a, b] must avoid rho."""
        a, b = rat(a), rat(b)
        if a > b:
            raise ValueError("empty range")
        if b < self.rho:
            return self.upto(self.cover_index(b))
        if a > self.rho:
            return self.offset
        raise ValueError(f"[{a}, {b}] meets the accumulation point {self.rho}")

    def tail_breaks_near(self, t) -> List[Rat]:
        """Breakpoints of G adjacent to t (t < rho)."""
        m = self.cover_index(t)
        return self.osc.breakpoints(m + 2)

    def germ(self) -> Tuple[Rat, Rat, Rat]:
        """(lam, mu, eps) with self = lam + mu*t on [0, eps]."""
        local = self.upto(2)
        eps = min(local.xs[1], self.osc.term(1))
        return local.ys[0], (local._at(eps) - local.ys[0]) / eps, eps

    def oscillation(self) -> Tuple[Rat, Rat]:
        """(liminf, limsup) at rho from the left."""
        base = self.offset._at(self.rho)
        c = self.plateau
        return base + min(ZERO, c), base + max(ZERO, c)

    # serialization
    def to_json(self) -> dict:
        return {
            "prefix": str(self.upto(2)),
            "tail": {"rho": fmt(self.rho), "mu": fmt(self.osc.mu),
                     "plateau": fmt(self.osc.plateau), "rule": self.osc.rule.name},
            "offset": str(self.offset),
            "coeff": fmt(self.coeff),
        }

    @classmethod
    def from_json(cls, data) -> "TailFn":
        if isinstance(data, str):
            data = json.loads(data)
        tail = data["tail"]
        if tail.get("rule", "dyadic") != "dyadic":
            raise ValueError(f"unknown tail rule {tail['rule']!r}")
        osc = Oscillator(rat(tail["rho"]), rat(tail["mu"]))
        return cls(from_text(data["offset"]), rat(data["coeff"]), osc)

    def __repr__(self):
        return f"TailFn(offset={self.offset}, coeff={fmt(self.coeff)}, rho={fmt(self.rho)}, mu={fmt(self.osc.mu)})"


class GeometricGerm:
    """h(2**-n) = q**n, linear in between, h(0) = 0: a germ below every line when q < 1/2.

    Only the features needed to exhibit a failing linear-germ test are
    provided.
    """

    def __init__(self, q):
        self.q = rat(q)
        if not 0 < self.q < 1:
            raise ValueError("q must lie in (0, 1)")

    def __call__(self, t) -> Rat:
        t = rat(t)
        if t <= 0:
            return ZERO
        n = 0
        while rat(1) / 2 ** (n + 1) >= t:
            n += 1
        hi, lo = rat(1) / 2 ** n, rat(1) / 2 ** (n + 1)
        vh, vl = self.q ** n, self.q ** (n + 1)
        return vl + (vh - vl) * (t - lo) / (hi - lo)

    def slope_bound(self, n: int) -> Rat:
        """h(t)/t at t = 2**-n; tends to 0 when q < 1/2."""
        return self.q ** n * 2 ** n


def _as_tail(x):
    if isinstance(x, (TailFn, PwlFn)):
        return x
    if isinstance(x, _SCALARS):
        return PwlFn.const(x)
    raise TypeError(f"cannot compare objects of type {type(x).__name__}")


def compare_general(f, g, s: RSet = UNIT) -> Comparison:
    """:func:`locmult.pwl.compare` extended to tail functions."""
    d = _as_tail(g) - _as_tail(f)
    if isinstance(d, PwlFn):
        return _sign_report(d, s)
    return _tail_sign_report(d, s)


def _tail_sign_report(d: TailFn, s: RSet) -> Comparison:
    o, c, osc = d.offset, d.coeff, d.osc
    rho = osc.rho
    crit = [x for x in list(o.xs) + s.endpoints() if x < rho]
    n = 1
    top = max(crit, default=ZERO)
    while osc.term(n) <= top:
        n += 1
    m = _even_at_least(n + 2)
    mm = osc.term(m)
    head = RSet([Interval(ZERO, mm, True, True), Interval(rho, ONE, True, True)])
    rep = _sign_report(d.upto(m), s & head)
    tail = RSet.open(mm, rho)
    if (s & tail).is_empty:
        return rep
    shift = min(ZERO, c * osc.plateau)
    low = o + shift  # d >= low on the tail, with equality on every min plateau
    at_rho = low._at(rho)
    # left end of the first minimal plateau inside the tail window m (m even: rising)
    q = mm if c > 0 else osc.window(m)[2]
    gaps = [at_rho, low._at(q)] + ([] if rep.inf_gap is None else [rep.inf_gap])
    inf_gap = min(gaps)
    ok = at_rho >= 0
    witness = rep.witness
    strict_witness = rep.strict_witness
    if not ok:
        bad = _tail_witness(d, m)
        witness = witness if witness is not None else bad
        strict_witness = strict_witness if strict_witness is not None else bad
    return Comparison(
        leq=rep.leq and ok,
        strict=rep.strict and ok,
        inf_gap=inf_gap,
        witness=witness,
        strict_witness=strict_witness,
    )


def _tail_witness(d: TailFn, m: int, limit: int = 4096) -> Rat:
    osc = d.osc
    low_first = d.coeff > 0
    n = m
    while n < m + limit:
        a, p, q, b = osc.window(n)
        start, end = osc.window_values(n)
        # pick the plateau carrying the smaller value of coeff * G
        use_start = (start == 0) == low_first
        t = (a + p) / 2 if use_start else (q + b) / 2
        if d(t) < 0:
            return t
        n += 1
    raise RuntimeError("no tail witness found within the search limit")
