"""Verification suites: randomized and fixed checks of every module.

Each suite yields flat rows ``{suite, check, instance_id, passed, witness}``;
``witness`` is None for passing rows and a short description otherwise.
Rows are produced sequentially from per-suite seeded streams, so a report is
a pure function of the configuration.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Callable, Dict, List, Optional

from .intervals import (
    CharacterizationMismatch,
    approx_on_compact,
    complement_split,
    has_property_C,
    in_Ifh,
    realize_sup,
    restrict_interval,
    sub_has_C,
    sup_germ,
    upward_direct,
)
from .localization import (
    add_classes,
    equivalent,
    fundamental_sequence,
    hat,
    least_integer_above,
    make_class,
    minimal_ideal_dominates,
    restrict,
)
from .monoid import (
    alg_leq,
    ideal_ctx,
    in_M,
    in_Nf,
    prime_witness,
    riesz_decompose,
)
from .monster import (
    build_monster,
    check_property_C,
    ideal_split,
    locally_in_M_witness,
    monster_tower,
    oscillation,
    split_through_E,
)
from .pwl import (
    CONST_ZERO,
    F0,
    ZERO,
    PwlFn,
    RSet,
    cozero,
    fmt,
    from_text,
    join,
    meet,
    positive_part,
    rat,
    to_text,
)
from .sampling import (
    make_rng,
    random_base,
    random_compact,
    random_in_ideal,
    random_m,
    random_point,
    random_pwl,
    random_rat,
    random_riesz_instance,
    random_split_instance,
    random_sup,
)
from .tailfn import TailFn
from .urysohn import (
    generate_G,
    local_form_at_zero,
    urysohn_grid,
    verify_group_properties,
)

SUITES = ("lattice", "group", "monoid", "riesz", "intervals", "localization", "monster")

# instance counts used when no --count is given
DEFAULT_COUNTS = {
    "lattice": 10_000,
    "group": 1,
    "monoid": 10_000,
    "riesz": 10_000,
    "intervals": 1_000,
    "localization": 200,
    "monster": 200,
}


@dataclass
class SuiteConfig:
    seed: int = 0
    count: Optional[int] = None
    depth: int = 3

    def __post_init__(self):
        if self.count is not None and self.count < 1:
            raise ValueError("count must be at least 1")
        if self.depth < 1:
            raise ValueError("depth must be at least 1")

    def n(self, suite: str) -> int:
        return self.count if self.count is not None else DEFAULT_COUNTS[suite]


@dataclass
class Row:
    suite: str
    check: str
    instance_id: str
    passed: bool
    witness: Optional[str] = None

    def to_json(self) -> dict:
        return asdict(self)


class _Rows:
    """Collects rows for one suite; exceptions become failing rows."""

    def __init__(self, suite: str):
        self.suite = suite
        self.rows: List[Row] = []

    def add(self, check: str, iid, passed: bool, witness: Optional[str] = None, note: str = None):
        if not passed:
            note = witness or "check failed"
        self.rows.append(Row(self.suite, check, str(iid), bool(passed), note))

    def run(self, check: str, iid, fn: Callable[[], object], witness: Callable[[], str] = None):
        try:
            ok = bool(fn())
        except Exception as exc:  # a crash is a failed check, reported with its message
            self.add(check, iid, False, f"{type(exc).__name__}: {exc}")
            return
        self.add(check, iid, ok, witness() if (witness and not ok) else None)


# ---------------------------------------------------------------------------
# lattice
# ---------------------------------------------------------------------------

def suite_lattice(cfg: SuiteConfig) -> List[Row]:
    out = _Rows("lattice")
    rng = make_rng(cfg.seed, "lattice")
    zero = CONST_ZERO
    for i in range(cfg.n("lattice")):
        f, g, h = random_pwl(rng), random_pwl(rng), random_pwl(rng)
        p, q = random_rat(rng, -3, 3), random_rat(rng, -3, 3)
        desc = lambda: f"f={f} g={g} h={h} p={fmt(p)} q={fmt(q)}"
        out.run("group", i, lambda: (
            f + g == g + f and (f + g) + h == f + (g + h) and f + zero == f
            and f - f == zero and (2 * f) - f == f and -(-f) == f), desc)
        out.run("module", i, lambda: (
            p * (f + g) == p * f + p * g and (p + q) * f == p * f + q * f
            and (p * q) * f == p * (q * f) and 1 * f == f and 0 * f == zero), desc)
        mfg, jfg = meet(f, g), join(f, g)
        out.run("lattice", i, lambda: (
            mfg == meet(g, f) and jfg == join(g, f)
            and meet(meet(f, g), h) == meet(f, meet(g, h))
            and join(join(f, g), h) == join(f, join(g, h))
            and meet(f, join(f, g)) == f and join(f, meet(f, g)) == f
            and meet(f, f) == f and join(f, f) == f
            and mfg + jfg == f + g), desc)
        xs = sorted(set(f.xs) | set(g.xs) | set(mfg.xs))
        ts = xs + [(a + b) / 2 for a, b in zip(xs, xs[1:])]
        if i % 100 == 0:
            ts = ts + [rat(rng.randint(0, 997), 997) for _ in range(1000)]
        out.run("pointwise", i, lambda: all(
            mfg(t) == min(f(t), g(t)) and jfg(t) == max(f(t), g(t)) for t in ts), desc)
        out.run("canonical", i, lambda: PwlFn(f.points) == f and from_text(to_text(f)) == f, desc)
        pf = positive_part(f)
        u = cozero(pf)
        out.run("cozero", i, lambda: all((pf(t) > 0) == (t in u) for t in ts), desc)
    return out.rows


# ---------------------------------------------------------------------------
# group properties (i)-(iv)
# ---------------------------------------------------------------------------

def suite_group(cfg: SuiteConfig) -> List[Row]:
    out = _Rows("group")
    sample = list(generate_G(cfg.depth, ball_budget=40, seed=cfg.seed))
    out.add("sample_size", f"depth={cfg.depth}", len(sample) >= 200 or cfg.depth < 3,
            f"only {len(sample)} functions")
    report = verify_group_properties(sample, urysohn_grid(50))
    for row in report.rows:
        out.add(f"property_{row.prop}", row.instance, row.passed, row.detail)
    out.add("urysohn_grid", "50", report.count("iv") + report.count("iv", "precondition") == 50,
            "grid does not have 50 verified triples")
    for i, (f, d) in enumerate(sample):
        out.run("replay", i, lambda: d.replay() == f and d.value == f, lambda: str(d))
        g = sample[(i + 7) % len(sample)][0]
        la, ma, _ = local_form_at_zero(f)
        lb, mb, _ = local_form_at_zero(g)
        out.run("local_form_additive", i,
                lambda: local_form_at_zero(f + g)[:2] == (la + lb, ma + mb), lambda: f"{f} + {g}")
    return out.rows


# ---------------------------------------------------------------------------
# monoid
# ---------------------------------------------------------------------------

def suite_monoid(cfg: SuiteConfig) -> List[Row]:
    out = _Rows("monoid")
    rng = make_rng(cfg.seed, "monoid")
    count = cfg.n("monoid")
    for i in range(count):
        x = random_m(rng, zero_at_0=rng.random() < 0.5, allow_zero=True)
        z = random_m(rng, zero_at_0=rng.random() < 0.5, allow_zero=True)
        y = x if rng.random() < 0.3 else random_m(rng, zero_at_0=rng.random() < 0.5, allow_zero=True)
        if rng.random() < 0.2:
            y = x + z  # a comparable pair
        desc = lambda: f"x={x} y={y} z={z}"
        out.run("cancellation", i, lambda: (x + z != y + z) or x == y, desc)
        out.run("order_cancellation", i, lambda: bool(alg_leq(x + z, y + z)) == bool(alg_leq(x, y)), desc)
        out.run("antisymmetry", i, lambda: not (alg_leq(x, y) and alg_leq(y, x)) or x == y, desc)
        out.run("transitivity", i, lambda: not (alg_leq(x, y) and alg_leq(y, y + z)) or bool(alg_leq(x, y + z)), desc)
        q = random_rat(rng, rat(1, 8), 4)
        out.run("closure", i, lambda: bool(in_M(x + z)) and bool(in_M(q * x)), desc)
        ctx = ideal_ctx(random_base(rng))
        g = random_in_ideal(rng, ctx)
        def minimal():
            n = in_Nf(g, ctx)
            return bool(n) and bool(alg_leq(g, n * ctx.fn)) and (n == 1 or not alg_leq(g, (n - 1) * ctx.fn))
        out.run("nf_minimal", i, minimal, lambda: f"f={ctx.fn} g={g}")
        if i < max(1, count // 10):
            a, b = random_m(rng), random_m(rng, zero_at_0=False)
            def prime():
                w = prime_witness(a, b)
                return not w.is_zero and in_Nf(w, ideal_ctx(a)) and in_Nf(w, ideal_ctx(b))
            out.run("prime_witness", i, prime, lambda: f"a={a} b={b}")
    return out.rows


# ---------------------------------------------------------------------------
# Riesz
# ---------------------------------------------------------------------------

def suite_riesz(cfg: SuiteConfig) -> List[Row]:
    out = _Rows("riesz")
    rng = make_rng(cfg.seed, "riesz")
    for i in range(cfg.n("riesz")):
        x, y1, y2 = random_riesz_instance(rng)
        def post():
            x1, x2 = riesz_decompose(x, y1, y2)
            return (x1.fn + x2.fn == x and bool(alg_leq(x1, y1)) and bool(alg_leq(x2, y2)))
        out.run("decompose", i, post, lambda: f"x={x} y1={y1} y2={y2}")
    return out.rows


# ---------------------------------------------------------------------------
# intervals
# ---------------------------------------------------------------------------

def _ifh_pair(rng):
    ctx = ideal_ctx(random_base(rng))
    h = random_sup(rng, ctx)
    roll = rng.random()
    if roll < 0.3:
        g = meet(random_in_ideal(rng, ctx, allow_zero=False), h)
    elif roll < 0.4:
        g = meet(h, ctx.fn * rng.randint(1, 4))
    else:
        g = random_in_ideal(rng, ctx)
    if not in_M(g):
        g = CONST_ZERO
    return ctx, h, g


def _member_of(rng, ctx, h):
    """A random element of I_f(h), falling back to 0."""
    g = random_in_ideal(rng, ctx)
    for cand in (g, meet(g, h) / 2):
        if in_M(cand) and in_Ifh(cand, ctx, h):
            return cand
    return CONST_ZERO


def suite_intervals(cfg: SuiteConfig) -> List[Row]:
    out = _Rows("intervals")
    rng = make_rng(cfg.seed, "intervals")
    count = cfg.n("intervals")
    agree = {"yes": 0, "no": 0}
    for i in range(count):
        ctx, h, g = _ifh_pair(rng)
        def three_way():
            try:
                r = in_Ifh(g, ctx, h)
            except CharacterizationMismatch:
                return False
            agree["yes" if r.holds else "no"] += 1
            if r.holds and r.original is not None:
                # hereditary: something below g stays inside
                return bool(in_Ifh(g / 2, ctx, h))
            return True
        out.run("ifh_agreement", i, three_way, lambda: f"f={ctx.fn} h={h} g={g}")
    out.add("ifh_both_verdicts", "all", agree["yes"] > 0 and agree["no"] > 0,
            f"verdict counts {agree}")
    for i in range(max(1, count // 2)):
        ctx = ideal_ctx(random_base(rng))
        h = random_sup(rng, ctx)
        g1, g2 = _member_of(rng, ctx, h), _member_of(rng, ctx, h)
        def upward():
            gg = upward_direct(g1, g2, ctx, h)
            return bool(in_Ifh(gg, ctx, h)) and bool(alg_leq(g1, gg)) and bool(alg_leq(g2, gg))
        out.run("upward_direct", i, upward, lambda: f"f={ctx.fn} h={h} g1={g1} g2={g2}")
    for i in range(max(1, count // 5)):
        ctx = ideal_ctx(random_base(rng))
        h = random_sup(rng, ctx)
        k = random_compact(rng, ctx.cozero)
        def approx():
            z = approx_on_compact(ctx, h, k)
            pts = [t for t in set(z.fn.xs) | set(h.xs) | set(k.endpoints()) if t in k]
            return all(z.fn(t) == h(t) for t in pts) and bool(in_Ifh(z, ctx, h))
        out.run("approx_on_compact", i, approx, lambda: f"f={ctx.fn} h={h} K={k}")
    for i in range(max(1, count // 2)):
        ctx = ideal_ctx(random_base(rng))
        h = random_sup(rng, ctx)
        t = random_point(rng, ctx.cozero)
        eps = random_rat(rng, rat(1, 64), 1)
        def sup():
            g = realize_sup(ctx, h, t, eps)
            return g.fn(t) > h(t) - eps and bool(in_Ifh(g, ctx, h))
        out.run("realize_sup", i, sup, lambda: f"f={ctx.fn} h={h} t={fmt(t)} eps={fmt(eps)}")
        h2 = random_sup(rng, ctx)
        def additive():
            g1, g2 = realize_sup(ctx, h, t, eps / 2), realize_sup(ctx, h2, t, eps / 2)
            return (g1.fn + g2.fn)(t) > h(t) + h2(t) - eps
        out.run("sup_additive", i, additive, lambda: f"h1={h} h2={h2} t={fmt(t)}")
    for i in range(max(1, count // 10)):
        ctx = ideal_ctx(random_base(rng))
        h = random_sup(rng, ctx)
        def prop_c():
            w = has_property_C(ctx, h, samples=[])
            return w and all(w.verify(random_point(rng, ctx.cozero)) for _ in range(10))
        out.run("property_C", i, prop_c, lambda: f"f={ctx.fn} h={h}")
        def difference():
            g = meet(h, ctx.fn) / 2
            w = sub_has_C(ctx, g, h)
            return all(w.verify(random_point(rng, ctx.cozero)) for _ in range(5))
        out.run("sub_has_C", i, difference, lambda: f"f={ctx.fn} h={h}")
    for i in range(max(1, count // 2)):
        ctx, h, n, g = random_split_instance(rng)
        def split():
            g1, g2, rep = complement_split(ctx, h, n, g)
            return rep.ok and g1.fn + g2.fn == g
        out.run("complement_split", i, split, lambda: f"f={ctx.fn} h={h} n={n} g={g}")
    for i in range(max(1, count // 100)):
        ctx = ideal_ctx(random_base(rng))
        small = ideal_ctx(meet(ctx.fn, hat(rat(rng.randint(1, 8), 8))) / 2)
        h = random_sup(rng, ctx)
        out.run("restriction", i, lambda: restrict_interval(small, ctx, h)[1].ok,
                lambda: f"f={ctx.fn} f'={small.fn} h={h}")
    return out.rows


# ---------------------------------------------------------------------------
# localization
# ---------------------------------------------------------------------------

def random_class(rng):
    base = random_base(rng)
    ctx = ideal_ctx(base)
    if rng.random() < 0.1:
        rho = rat(rng.randint(1, 3), 4)
        mu = random_rat(rng, rat(1, 16), rat(1, 2))
        return make_class(meet(base, hat(rho)), TailFn.monster(rho, mu))
    return make_class(ctx, random_sup(rng, ctx))


def suite_localization(cfg: SuiteConfig) -> List[Row]:
    out = _Rows("localization")
    rng = make_rng(cfg.seed, "localization")
    count = cfg.n("localization")
    for i in range(count):
        c = random_class(rng)
        def dominates():
            r = minimal_ideal_dominates(c)
            lam, mu, _ = sup_germ(c.h)
            expected = least_integer_above(1 / mu) if lam == 0 else 2
            return r.ok and r.n == expected and r.brute_force_n == r.n
        out.run("min_ideal", i, dominates, lambda: repr(c))
    cancels = trials = 0
    errors: List[str] = []
    for i in range(max(1, count // 4)):
        a, b, c = random_class(rng), random_class(rng), random_class(rng)
        out.run("reflexive", i, lambda: equivalent(a, a), lambda: repr(a))
        out.run("symmetric", i, lambda: equivalent(a, b) == equivalent(b, a), lambda: f"{a} {b}")
        out.run("commutative", i, lambda: equivalent(add_classes(a, b), add_classes(b, a)),
                lambda: f"{a} {b}")
        out.run("associative", i, lambda: equivalent(add_classes(add_classes(a, b), c),
                                                      add_classes(a, add_classes(b, c))),
                lambda: f"{a} {b} {c}")
        k = rng.randint(1, 4)
        seq = fundamental_sequence(k)
        def restricted():
            small = meet(a.base, seq[k].fn) / 2
            return equivalent(a, restrict(a, small))
        out.run("restriction_compatible", i, restricted, lambda: repr(a))
        def sum_witness():
            s = add_classes(a, b)
            if s.is_zero:
                return True
            return all(s.witness.verify(random_point(rng, s.ctx.cozero)) for _ in range(3))
        out.run("sum_property_C", i, sum_witness, lambda: f"{a} {b}")
        try:
            if equivalent(add_classes(a, c), add_classes(b, c)):
                trials += 1
                cancels += int(equivalent(a, b))
        except Exception as exc:
            errors.append(f"#{i} {type(exc).__name__}: {exc}")
    # recorded, not asserted: cancellation is not claimed for classes
    out.add("cancellation_recorded", "all", not errors, "; ".join(errors),
            note=f"{cancels} of {trials} equal sums cancelled")
    for k in range(1, cfg.depth + 2):
        out.run("fundamental_sequence", k, lambda: fundamental_sequence(k).verify())
    return out.rows


# ---------------------------------------------------------------------------
# monster
# ---------------------------------------------------------------------------

def _monster_sample(rng, b):
    fp = b.f_prime.fn
    roll = rng.random()
    if roll < 0.05:
        return CONST_ZERO
    if roll < 0.15:
        return meet(b.h1, fp)
    k = rng.randint(1, 6)
    s = rng.choice((rat(1, 2), rat(3, 4), rat(7, 8)))
    return meet(random_m(rng), fp * k, b.h * s)


def suite_monster(cfg: SuiteConfig) -> List[Row]:
    out = _Rows("monster")
    rng = make_rng(cfg.seed, "monster")
    count = cfg.n("monster")
    b = build_monster()
    for name, ok in sorted(b.certificates.items()):
        out.add(f"build_{name}", "default", ok)
    out.add("oscillation", "default", oscillation(b.g) == (ZERO, rat(1, 16)),
            f"got {oscillation(b.g)}")
    out.add("oscillation_scaled", "default", oscillation(2 * b.g) == (ZERO, rat(1, 8)))
    pts = [random_point(rng, cozero(b.f_prime.fn)) for _ in range(max(100, count // 2))]
    for i, chk in enumerate(check_property_C(b, pts)):
        out.add("property_C", i, chk.ok, str(chk))
    for i in range(max(100, count // 2)):
        t = random_point(rng, cozero(b.f_prime.fn))
        out.run("locally_in_M", i, lambda: locally_in_M_witness(b.g, t).verify(b.g), lambda: fmt(t))
    for i in range(count):
        z = _monster_sample(rng, b)
        def sum_split():
            row = split_through_E(b, z)
            return row.ok
        out.run("interval_sum", i, sum_split, lambda: f"z={z}")
    stages = monster_tower(cfg.depth)
    out.add("tower_depth", cfg.depth, len(stages) == cfg.depth)
    for s in stages:
        out.add("tower_stage", s.n, s.ok, str(s.certificates))
    for i in range(max(1, count // 20)):
        a = rat(rng.randint(1, 6), 16)
        bb = a + rat(rng.randint(1, 4), 16)
        b2 = bb + rat(rng.randint(1, 4), 16)
        g = random_m(rng)
        out.run("ideal_split", i, lambda: ideal_split(
            g, F0, hat(a) / 2, RSet.closed(0, a / 2), RSet.closed(0, bb), RSet.closed(0, b2)).ok,
            lambda: f"g={g} a={fmt(a)} K=[0,{fmt(bb)}] K2=[0,{fmt(b2)}]")
    return out.rows


RUNNERS: Dict[str, Callable[[SuiteConfig], List[Row]]] = {
    "lattice": suite_lattice,
    "group": suite_group,
    "monoid": suite_monoid,
    "riesz": suite_riesz,
    "intervals": suite_intervals,
    "localization": suite_localization,
    "monster": suite_monster,
}


def run_suite(name: str, cfg: SuiteConfig) -> List[Row]:
    if name == "all":
        rows: List[Row] = []
        for s in SUITES:
            rows.extend(RUNNERS[s](cfg))
        return rows
    if name not in RUNNERS:
        raise KeyError(f"unknown suite {name!r}")
    return RUNNERS[name](cfg)
