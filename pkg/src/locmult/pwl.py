"""Exact continuous piecewise-linear functions on X = [0, 1].

Everything here is computed with arbitrary-precision rationals (``gmpy2.mpq``);
there is no floating-point mode.  A :class:`PwlFn` is stored in canonical form
(no three collinear consecutive points), so two functions are equal exactly
when their point lists are equal.
"""
from __future__ import annotations

import re
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Tuple

from gmpy2 import mpq, mpz

Rat = type(mpq())

_RAT_RE = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")


def rat(value, den=None) -> Rat:
    """Coerce ``value`` (or ``value/den``) to an exact rational.  Floats are refused."""
    if den is not None:
        return rat(value) / rat(den)
    if isinstance(value, Rat):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        if not _RAT_RE.match(value):
            raise ValueError(f"malformed rational {value!r}")
        num, _, den = value.replace(" ", "").partition("/")
        if den and int(den) == 0:
            raise ValueError(f"zero denominator in {value!r}")
        return mpq(int(num), int(den) if den else 1)
    if type(value).__name__ == "mpz":
        return mpq(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def fmt(q) -> str:
    """Lowest-terms text for a rational, e.g. ``1/4``, ``-3``."""
    return str(rat(q))


_SCALARS = (int, Rat, Fraction, type(mpz(0)))

ZERO = mpq(0)
ONE = mpq(1)
HALF = mpq(1, 2)


class PwlFn:
    """Continuous piecewise-linear function on [0, 1] with rational data."""

    __slots__ = ("xs", "ys", "_hash")

    def __init__(self, points: Iterable[Tuple[object, object]]):
        pts = [(rat(x), rat(y)) for x, y in points]
        if len(pts) < 2:
            raise ValueError("a PwlFn needs at least the endpoints 0 and 1")
        if pts[0][0] != 0 or pts[-1][0] != 1:
            raise ValueError("abscissae must start at 0 and end at 1")
        for (a, _), (b, _) in zip(pts, pts[1:]):
            if not a < b:
                raise ValueError(f"abscissae must be strictly increasing (got {a} then {b})")
        xs, ys = _canonical([p[0] for p in pts], [p[1] for p in pts])
        self.xs, self.ys, self._hash = xs, ys, None

    @classmethod
    def _make(cls, xs: Sequence[Rat], ys: Sequence[Rat]) -> "PwlFn":
        # trusted: xs strictly increasing from 0 to 1
        self = object.__new__(cls)
        self.xs, self.ys = _canonical(xs, ys)
        self._hash = None
        return self

    @classmethod
    def const(cls, c) -> "PwlFn":
        c = rat(c)
        return cls._make((ZERO, ONE), (c, c))

    @classmethod
    def identity(cls) -> "PwlFn":
        return cls._make((ZERO, ONE), (ZERO, ONE))

    # -- evaluation -------------------------------------------------------
    def _at(self, t: Rat) -> Rat:
        xs = self.xs
        i = bisect_right(xs, t) - 1
        if i >= len(xs) - 1:
            return self.ys[-1]
        x0 = xs[i]
        if t == x0:
            return self.ys[i]
        y0 = self.ys[i]
        return y0 + (self.ys[i + 1] - y0) * (t - x0) / (xs[i + 1] - x0)

    def __call__(self, t) -> Rat:
        t = rat(t)
        if t < 0 or t > 1:
            raise ValueError(f"t={t} lies outside [0, 1]")
        return self._at(t)

    def slope_after(self, t) -> Rat:
        """Slope of the segment starting at (or containing) ``t`` (t < 1)."""
        t = rat(t)
        i = min(bisect_right(self.xs, t) - 1, len(self.xs) - 2)
        return (self.ys[i + 1] - self.ys[i]) / (self.xs[i + 1] - self.xs[i])

    @property
    def points(self):
        return list(zip(self.xs, self.ys))

    @property
    def is_zero(self) -> bool:
        return len(self.xs) == 2 and self.ys[0] == 0 and self.ys[1] == 0

    def max(self) -> Rat:
        return max(self.ys)

    def min(self) -> Rat:
        return min(self.ys)

    # -- algebra ----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, _SCALARS + (PwlFn,)):
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, _SCALARS + (PwlFn,)):
            return NotImplemented
        return sub(self, other)

    def __rsub__(self, other):
        if not isinstance(other, _SCALARS):
            return NotImplemented
        return sub(_as_fn(other), self)

    def __neg__(self):
        return PwlFn._make(self.xs, [-y for y in self.ys])

    def __mul__(self, q):
        if not isinstance(q, _SCALARS):
            return NotImplemented
        return scale(q, self)

    __rmul__ = __mul__

    def __truediv__(self, q):
        return scale(1 / rat(q), self)

    def __eq__(self, other):
        if not isinstance(other, PwlFn):
            return NotImplemented
        return self.xs == other.xs and self.ys == other.ys

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.xs, self.ys))
        return self._hash

    def __repr__(self):
        return to_text(self)

    __str__ = __repr__


def _canonical(xs, ys):
    cx, cy = [xs[0]], [ys[0]]
    for x, y in zip(xs[1:], ys[1:]):
        while len(cx) >= 2 and (cy[-1] - cy[-2]) * (x - cx[-1]) == (y - cy[-1]) * (cx[-1] - cx[-2]):
            cx.pop()
            cy.pop()
        cx.append(x)
        cy.append(y)
    return tuple(cx), tuple(cy)


def _as_fn(f) -> PwlFn:
    return f if isinstance(f, PwlFn) else PwlFn.const(f)


F0 = PwlFn.identity()
CONST_ONE = PwlFn.const(1)
CONST_ZERO = PwlFn.const(0)


def eval_at(f: PwlFn, t) -> Rat:
    return f(t)


def _merged_xs(f: PwlFn, g: PwlFn):
    if f.xs == g.xs:
        return f.xs
    return sorted(set(f.xs).union(g.xs))


def _pointwise(f, g, op: Callable[[Rat, Rat], Rat]) -> PwlFn:
    f, g = _as_fn(f), _as_fn(g)
    xs = _merged_xs(f, g)
    return PwlFn._make(xs, [op(f._at(x), g._at(x)) for x in xs])


def add(f, g) -> PwlFn:
    return _pointwise(f, g, lambda a, b: a + b)


def sub(f, g) -> PwlFn:
    return _pointwise(f, g, lambda a, b: a - b)


def scale(q, f: PwlFn) -> PwlFn:
    q = rat(q)
    return PwlFn._make(f.xs, [q * y for y in f.ys])


def _lattice(f, g, pick) -> PwlFn:
    f, g = _as_fn(f), _as_fn(g)
    xs = _merged_xs(f, g)
    fy = [f._at(x) for x in xs]
    gy = [g._at(x) for x in xs]
    ox, oy = [xs[0]], [pick(fy[0], gy[0])]
    for i in range(1, len(xs)):
        d0, d1 = fy[i - 1] - gy[i - 1], fy[i] - gy[i]
        if (d0 > 0 > d1) or (d0 < 0 < d1):
            x0, x1 = xs[i - 1], xs[i]
            x = x0 + (x1 - x0) * d0 / (d0 - d1)
            ox.append(x)
            oy.append(fy[i - 1] + (fy[i] - fy[i - 1]) * (x - x0) / (x1 - x0))
        ox.append(xs[i])
        oy.append(pick(fy[i], gy[i]))
    return PwlFn._make(ox, oy)


def meet(f, g, *more) -> PwlFn:
    out = _lattice(f, g, min)
    for h in more:
        out = _lattice(out, h, min)
    return out


def join(f, g, *more) -> PwlFn:
    out = _lattice(f, g, max)
    for h in more:
        out = _lattice(out, h, max)
    return out


def positive_part(f: PwlFn) -> PwlFn:
    return join(f, CONST_ZERO)


# ---------------------------------------------------------------------------
# Rational sets: finite unions of intervals inside [0, 1]
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Interval:
    lo: Rat
    hi: Rat
    lo_closed: bool
    hi_closed: bool

    def nonempty(self) -> bool:
        return self.lo < self.hi or (self.lo == self.hi and self.lo_closed and self.hi_closed)

    def contains(self, t) -> bool:
        if t < self.lo or t > self.hi:
            return False
        if t == self.lo and not self.lo_closed:
            return False
        if t == self.hi and not self.hi_closed:
            return False
        return True

    @property
    def degenerate(self) -> bool:
        return self.lo == self.hi

    def __str__(self):
        return "%s%s,%s%s" % ("[" if self.lo_closed else "(", fmt(self.lo), fmt(self.hi),
                              "]" if self.hi_closed else ")")


def _clip(iv: Interval) -> Interval:
    lo, hi, lc, hc = iv.lo, iv.hi, iv.lo_closed, iv.hi_closed
    if lo < 0:
        lo, lc = ZERO, True
    if hi > 1:
        hi, hc = ONE, True
    return Interval(lo, hi, lc, hc)


def _normalize(ivs: Iterable[Interval]) -> Tuple[Interval, ...]:
    items = [iv for iv in (_clip(i) for i in ivs) if iv.nonempty()]
    items.sort(key=lambda iv: (iv.lo, not iv.lo_closed))
    out = []
    for iv in items:
        if out:
            last = out[-1]
            if iv.lo < last.hi or (iv.lo == last.hi and (last.hi_closed or iv.lo_closed)):
                if iv.hi > last.hi:
                    hi, hc = iv.hi, iv.hi_closed
                elif iv.hi == last.hi:
                    hi, hc = iv.hi, iv.hi_closed or last.hi_closed
                else:
                    hi, hc = last.hi, last.hi_closed
                out[-1] = Interval(last.lo, hi, last.lo_closed, hc)
                continue
        out.append(iv)
    return tuple(out)


def _meet_iv(a: Interval, b: Interval) -> Interval:
    if a.lo > b.lo:
        lo, lc = a.lo, a.lo_closed
    elif b.lo > a.lo:
        lo, lc = b.lo, b.lo_closed
    else:
        lo, lc = a.lo, a.lo_closed and b.lo_closed
    if a.hi < b.hi:
        hi, hc = a.hi, a.hi_closed
    elif b.hi < a.hi:
        hi, hc = b.hi, b.hi_closed
    else:
        hi, hc = a.hi, a.hi_closed and b.hi_closed
    return Interval(lo, hi, lc, hc)


class RSet:
    """A finite union of rational intervals in [0, 1], kept normalized."""

    __slots__ = ("intervals",)

    def __init__(self, intervals: Iterable[Interval] = ()):
        self.intervals = _normalize(intervals)

    # constructors
    @classmethod
    def closed(cls, a, b) -> "RSet":
        return cls([Interval(rat(a), rat(b), True, True)])

    @classmethod
    def open(cls, a, b) -> "RSet":
        return cls([Interval(rat(a), rat(b), False, False)])

    @classmethod
    def half_open(cls, a, b, *, left_closed: bool) -> "RSet":
        return cls([Interval(rat(a), rat(b), left_closed, not left_closed)])

    @classmethod
    def point(cls, a) -> "RSet":
        return cls.closed(a, a)

    @classmethod
    def whole(cls) -> "RSet":
        return cls.closed(0, 1)

    @classmethod
    def empty(cls) -> "RSet":
        return cls()

    # queries
    @property
    def is_empty(self) -> bool:
        return not self.intervals

    def __bool__(self):
        return bool(self.intervals)

    def __contains__(self, t) -> bool:
        t = rat(t)
        return any(iv.contains(t) for iv in self.intervals)

    def components(self):
        return [RSet([iv]) for iv in self.intervals]

    @property
    def inf(self) -> Rat:
        return self.intervals[0].lo

    @property
    def sup(self) -> Rat:
        return self.intervals[-1].hi

    def endpoints(self):
        out = []
        for iv in self.intervals:
            out.extend((iv.lo, iv.hi))
        return out

    # set algebra
    def union(self, other: "RSet") -> "RSet":
        return RSet(self.intervals + other.intervals)

    __or__ = union

    def intersection(self, other: "RSet") -> "RSet":
        return RSet(_meet_iv(a, b) for a in self.intervals for b in other.intervals)

    __and__ = intersection

    def complement(self) -> "RSet":
        out = []
        cur, cur_closed = ZERO, True
        for iv in self.intervals:
            out.append(Interval(cur, iv.lo, cur_closed, not iv.lo_closed))
            cur, cur_closed = iv.hi, not iv.hi_closed
        out.append(Interval(cur, ONE, cur_closed, True))
        return RSet(out)

    def difference(self, other: "RSet") -> "RSet":
        return self & other.complement()

    __sub__ = difference

    def issubset(self, other: "RSet") -> bool:
        return (self - other).is_empty

    __le__ = issubset

    def closure(self) -> "RSet":
        return RSet(Interval(iv.lo, iv.hi, True, True) for iv in self.intervals)

    def interior(self) -> "RSet":
        """Interior relative to X = [0, 1]."""
        return RSet(Interval(iv.lo, iv.hi, iv.lo == 0 and iv.lo_closed, iv.hi == 1 and iv.hi_closed)
                    for iv in self.intervals if not iv.degenerate)

    def is_open(self) -> bool:
        return self == self.interior()

    def is_closed(self) -> bool:
        return self == self.closure()

    def sample_point(self) -> Optional[Rat]:
        if not self.intervals:
            return None
        iv = self.intervals[0]
        return iv.lo if iv.degenerate else (iv.lo + iv.hi) / 2

    def __eq__(self, other):
        return isinstance(other, RSet) and self.intervals == other.intervals

    def __hash__(self):
        return hash(self.intervals)

    def __repr__(self):
        return rset_to_text(self)


def rset_to_text(s: RSet) -> str:
    if s.is_empty:
        return "{}"
    return "u".join(str(iv) for iv in s.intervals)


_IV_RE = re.compile(r"([\[(])\s*([^,\])]+?)\s*,\s*([^,\])]+?)\s*([\])])")


def rset_from_text(text: str) -> RSet:
    text = text.strip()
    if text == "{}":
        return RSet()
    ivs = []
    for part in text.split("u"):
        m = _IV_RE.fullmatch(part.strip())
        if not m:
            raise ValueError(f"malformed interval {part!r}")
        ivs.append(Interval(rat(m.group(2)), rat(m.group(3)), m.group(1) == "[", m.group(4) == "]"))
    return RSet(ivs)


UNIT = RSet.whole()
PUNCTURED = RSet.half_open(0, 1, left_closed=False)  # (0, 1]


def positive_set(f: PwlFn) -> RSet:
    """The set {t : f(t) > 0}, with crossing points computed exactly."""
    xs, ys = f.xs, f.ys
    ivs = []
    for i in range(len(xs) - 1):
        x0, x1, y0, y1 = xs[i], xs[i + 1], ys[i], ys[i + 1]
        if y0 > 0 and y1 > 0:
            ivs.append(Interval(x0, x1, True, True))
        elif y0 > 0:
            root = x0 + (x1 - x0) * y0 / (y0 - y1)
            ivs.append(Interval(x0, root, True, False))
        elif y1 > 0:
            root = x0 + (x1 - x0) * y0 / (y0 - y1)
            ivs.append(Interval(root, x1, False, True))
    return RSet(ivs)


def level_set(f: PwlFn, rel: str, c) -> RSet:
    """{t : f(t) rel c} for rel in '<', '<=', '>', '>='."""
    c = rat(c)
    if rel == ">":
        return positive_set(f - c)
    if rel == "<":
        return positive_set(c - f)
    if rel == ">=":
        return positive_set(c - f).complement()
    if rel == "<=":
        return positive_set(f - c).complement()
    raise ValueError(f"unknown relation {rel!r}")


def cozero(f: PwlFn) -> RSet:
    """Co-zero set {t : f(t) > 0} of a nonnegative function."""
    if f.min() < 0:
        bad = next(x for x, y in zip(f.xs, f.ys) if y < 0)
        raise ValueError(f"cozero needs f >= 0, but f({bad}) = {f(bad)}")
    return positive_set(f)


def support(f: PwlFn) -> RSet:
    """Closure of {t : f(t) != 0}."""
    return (positive_set(f) | positive_set(-f)).closure()


def min_on(f: PwlFn, s: RSet) -> Optional[Rat]:
    """Minimum of f over the closure of s (None for the empty set)."""
    best = None
    for iv in s.intervals:
        cands = [f._at(iv.lo), f._at(iv.hi)]
        lo = bisect_right(f.xs, iv.lo)
        for x in f.xs[lo:]:
            if x >= iv.hi:
                break
            cands.append(f._at(x))
        m = min(cands)
        best = m if best is None else min(best, m)
    return best


def max_on(f: PwlFn, s: RSet) -> Optional[Rat]:
    m = min_on(-f, s)
    return None if m is None else -m


@dataclass(frozen=True)
class Comparison:
    """Outcome of comparing f and g on a set S.

    ``leq``: f <= g on S.  ``strict``: f(t) < g(t) for every t in S.
    ``inf_gap``: infimum of g - f over the closure of S.
    ``witness``/``strict_witness``: points of S refuting ``leq``/``strict``.
    """

    leq: bool
    strict: bool
    inf_gap: Optional[Rat]
    witness: Optional[Rat] = None
    strict_witness: Optional[Rat] = None

    @property
    def uniform(self) -> bool:
        """Uniform-gap reading of ``f << g``: inf over the closure is > 0."""
        return self.inf_gap is not None and self.inf_gap > 0


def compare(f, g, s: RSet = UNIT) -> Comparison:
    """Exact order relation between f and g on ``s``.

    Either argument may be a rational constant; oscillating tail functions are
    handled by :mod:`locmult.tailfn`.
    """
    if not isinstance(f, _SCALARS + (PwlFn,)) or not isinstance(g, _SCALARS + (PwlFn,)):
        from .tailfn import compare_general
        return compare_general(f, g, s)
    d = sub(_as_fn(g), _as_fn(f))
    return _sign_report(d, s)


def _sign_report(d: PwlFn, s: RSet) -> Comparison:
    neg = positive_set(-d) & s
    nonpos = positive_set(d).complement() & s
    return Comparison(
        leq=neg.is_empty,
        strict=nonpos.is_empty,
        inf_gap=min_on(d, s),
        witness=neg.sample_point(),
        strict_witness=nonpos.sample_point(),
    )


def equal_on(f, g, s: RSet) -> bool:
    return compare(f, g, s).leq and compare(g, f, s).leq


# ---------------------------------------------------------------------------
# Text literal format:  pwl[(0,0);(1/4,1/16);(1,1/16)]
# ---------------------------------------------------------------------------

_PWL_RE = re.compile(r"^\s*pwl\[(.*)\]\s*$", re.S)
_PT_RE = re.compile(r"^\s*\(\s*([^,()]+?)\s*,\s*([^,()]+?)\s*\)\s*$")


def to_text(f: PwlFn) -> str:
    return "pwl[" + ";".join(f"({fmt(x)},{fmt(y)})" for x, y in zip(f.xs, f.ys)) + "]"


def from_text(text: str) -> PwlFn:
    m = _PWL_RE.match(text)
    if not m:
        raise ValueError(f"not a pwl literal: {text!r}")
    pts = []
    for part in m.group(1).split(";"):
        pm = _PT_RE.match(part)
        if not pm:
            raise ValueError(f"malformed point {part!r}")
        pts.append((rat(pm.group(1)), rat(pm.group(2))))
    return PwlFn(pts)
