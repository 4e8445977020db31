import pytest
from hypothesis import given, strategies as st

from conftest import pwl_fns, rationals
from locmult.pwl import (
    CONST_ONE, CONST_ZERO, F0, HALF, PUNCTURED, UNIT, PwlFn, RSet, add,
    compare, cozero, from_text, join, level_set, meet, positive_part, rat, rset_from_text,
    rset_to_text, scale, sub, support, to_text,
)


# --- evaluation -----------------------------------------------------------

def test_eval_examples():
    assert F0(HALF) == HALF
    assert CONST_ONE(rat(3, 7)) == 1
    f = from_text("pwl[(0,0);(1/4,1/16);(1,1/16)]")
    assert f(rat(1, 8)) == rat(1, 32)


def test_eval_outside_unit_interval_raises():
    with pytest.raises(ValueError):
        F0(rat(3, 2))
    with pytest.raises(ValueError):
        F0(-1)


# --- arithmetic -----------------------------------------------------------

def test_arithmetic_examples():
    assert add(F0, sub(CONST_ONE, F0)) == CONST_ONE
    f = from_text("pwl[(0,1);(1/3,-2);(1,5)]")
    assert scale(0, f) == CONST_ZERO
    assert sub(scale(2, F0), F0) == F0


def test_canonical_form_merges_collinear_points():
    f = PwlFn([(0, 0), (rat(1, 4), rat(1, 4)), (rat(1, 2), rat(1, 2)), (1, 1)])
    assert f == F0
    assert f.xs == (0, 1)


def test_lattice_examples():
    assert meet(F0, sub(CONST_ONE, F0)) == from_text("pwl[(0,0);(1/2,1/2);(1,0)]")
    f = from_text("pwl[(0,1/3);(1/5,2);(1,-1)]")
    assert join(f, f) == f
    assert meet(F0, PwlFn.const(rat(1, 4))) == from_text("pwl[(0,0);(1/4,1/4);(1,1/4)]")


def test_crossing_is_exact():
    f = from_text("pwl[(0,0);(1,1)]")
    g = from_text("pwl[(0,1/3);(1,1/5)]")
    m = meet(f, g)
    # t = 1/3 - 2t/15  ->  t = 5/17
    assert rat(5, 17) in m.xs
    assert m(rat(5, 17)) == rat(5, 17)


@given(pwl_fns(), pwl_fns(), pwl_fns())
def test_group_laws(f, g, h):
    assert f + g == g + f
    assert (f + g) + h == f + (g + h)
    assert f - f == CONST_ZERO
    assert f + CONST_ZERO == f


@given(pwl_fns(), pwl_fns(), rationals(), rationals())
def test_module_laws(f, g, p, q):
    assert p * (f + g) == p * f + p * g
    assert (p + q) * f == p * f + q * f
    assert (p * q) * f == p * (q * f)


@given(pwl_fns(), pwl_fns(), pwl_fns())
def test_lattice_laws(f, g, h):
    assert meet(f, g) == meet(g, f)
    assert join(f, g) == join(g, f)
    assert meet(meet(f, g), h) == meet(f, meet(g, h))
    assert join(join(f, g), h) == join(f, join(g, h))
    assert meet(f, join(f, g)) == f
    assert join(f, meet(f, g)) == f
    assert meet(f, f) == f


@given(pwl_fns(), pwl_fns(), st.lists(st.integers(0, 1000), min_size=1, max_size=30))
def test_meet_is_pointwise_min(f, g, ks):
    m, j = meet(f, g), join(f, g)
    for x in set(f.xs) | set(g.xs) | set(m.xs):
        assert m(x) <= f(x) and m(x) <= g(x)
    for k in ks:
        t = rat(k, 1000)
        assert m(t) == min(f(t), g(t))
        assert j(t) == max(f(t), g(t))


@given(pwl_fns())
def test_canonicalization_idempotent_and_text_round_trip(f):
    assert PwlFn(f.points) == f
    assert from_text(to_text(f)) == f
    assert to_text(from_text(to_text(f))) == to_text(f)


# --- sets -----------------------------------------------------------------

def test_cozero_examples():
    assert cozero(F0) == PUNCTURED
    assert cozero(CONST_ZERO).is_empty
    hat = meet(F0, join(CONST_ZERO, sub(PwlFn.const(HALF), F0)))
    assert cozero(hat) == RSet.open(0, HALF)


def test_cozero_rejects_negative():
    with pytest.raises(ValueError):
        cozero(F0 - HALF)


@given(pwl_fns())
def test_cozero_matches_sampling(f):
    p = positive_part(f)
    u = cozero(p)
    xs = list(p.xs)
    for t in xs + [(a + b) / 2 for a, b in zip(xs, xs[1:])]:
        assert (p(t) > 0) == (t in u)


def test_rset_operations():
    a = RSet.closed(rat(1, 4), rat(1, 2))
    b = RSet.open(rat(3, 8), rat(3, 4))
    assert rset_to_text(a | b) == "[1/4,3/4)"
    assert rset_to_text(a & b) == "(3/8,1/2]"
    assert rset_to_text(a - b) == "[1/4,3/8]"
    assert (a | b).closure() == RSet.closed(rat(1, 4), rat(3, 4))
    assert a.interior() == RSet.open(rat(1, 4), rat(1, 2))
    assert rset_from_text(rset_to_text(a | RSet.point(1))) == a | RSet.point(1)
    assert RSet.whole().complement().is_empty
    assert rset_from_text("{}").is_empty


def test_level_sets_and_support():
    f = meet(F0, 1 - F0)
    assert level_set(f, ">=", rat(1, 4)) == RSet.closed(rat(1, 4), rat(3, 4))
    assert level_set(f, "<=", 0) == RSet.point(0) | RSet.point(1)
    assert support(meet(F0, join(CONST_ZERO, HALF - F0))) == RSet.closed(0, HALF)


# --- comparison -----------------------------------------------------------

def test_compare_examples():
    c = compare(F0, 2 * F0, PUNCTURED)
    assert c.leq and c.strict and c.inf_gap == 0 and not c.uniform
    c = compare(F0, F0, PUNCTURED)
    assert c.leq and not c.strict
    c = compare(CONST_ONE, F0, PUNCTURED)
    assert not c.leq
    assert c.witness is not None and CONST_ONE(c.witness) > F0(c.witness)


def test_compare_uniform_gap():
    c = compare(F0, F0 + rat(1, 8), UNIT)
    assert c.uniform and c.inf_gap == rat(1, 8)


@given(pwl_fns(), pwl_fns())
def test_compare_witness_is_genuine(f, g):
    c = compare(f, g, UNIT)
    if not c.leq:
        assert f(c.witness) > g(c.witness)
    else:
        for x in set(f.xs) | set(g.xs):
            assert f(x) <= g(x)


# --- text format ----------------------------------------------------------

@pytest.mark.parametrize("text", [
    "pwl[(0,0);(0,1)]",          # duplicate abscissa
    "pwl[(0,0);(1/2,1)]",        # missing endpoint 1
    "pwl[(1/4,0);(1,1)]",        # missing endpoint 0
    "pwl[(0,0);(1/0,1)]",        # zero denominator
    "pwl[(0,0);(1/2,x);(1,1)]",  # not a number
    "pwl[(0,0);(3/4,1);(1/2,1);(1,0)]",
    "f0",
])
def test_parse_errors(text):
    with pytest.raises(ValueError):
        from_text(text)


def test_text_examples():
    assert from_text("pwl[(0,0);(1,1)]") == F0
    assert to_text(F0) == "pwl[(0,0);(1,1)]"
    hat = from_text("pwl[(0,0);(1/2,1/2);(1,0)]")
    assert hat(HALF) == HALF
