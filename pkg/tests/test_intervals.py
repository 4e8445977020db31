import pytest

from locmult.intervals import (
    approx_on_compact, complement_split, default_points, has_property_C, in_Ifh, in_Lf,
    realize_sup, restrict_interval, sub_has_C, upward_direct,
)
from locmult.monoid import PreconditionError, alg_leq, ideal_ctx
from locmult.pwl import CONST_ONE, CONST_ZERO, F0, PwlFn, RSet, compare, join, meet, rat
from locmult.tailfn import GeometricGerm, TailFn
from locmult.localization import hat

CTX = ideal_ctx(F0)
HALF = rat(1, 2)


def const(q):
    return PwlFn.const(q)


def test_in_Lf_examples():
    z = in_Lf(CONST_ONE, CTX)
    assert z and not z.is_zero and compare(z.fn, CONST_ONE, CTX.cozero).leq
    z = in_Lf(F0, CTX)
    assert z and compare(z.fn, F0, CTX.cozero).leq


def test_in_Lf_rejects_sublinear_germ():
    r = in_Lf(GeometricGerm(rat(1, 4)), CTX)
    assert not r


def test_in_Ifh_examples():
    assert in_Ifh(CONST_ZERO, CTX, CONST_ONE)
    lf = in_Lf(CONST_ONE, CTX)
    res = in_Ifh(lf.fn / 2, CTX, CONST_ONE)
    assert res and all(res.verdicts.values())
    res = in_Ifh(F0, CTX, F0)
    assert not res and not any(res.verdicts.values())


def test_in_Ifh_g_above_h():
    res = in_Ifh(meet(F0, const(HALF)), CTX, meet(F0, const(rat(1, 4))))
    assert not res and res.obstruction.point is not None


def test_in_Ifh_requires_ideal_membership():
    with pytest.raises(PreconditionError):
        in_Ifh(CONST_ONE, ideal_ctx(hat(HALF)), CONST_ONE)


def test_upward_direct_examples():
    h = CONST_ONE
    g = meet(F0, const(rat(1, 4)))
    out = upward_direct(g, g, CTX, h)
    assert alg_leq(g, out) and in_Ifh(out, CTX, h)
    out = upward_direct(CONST_ZERO, g, CTX, h)
    assert alg_leq(g, out)
    a = meet(F0 / 2, urysohn_bump(rat(1, 8), rat(3, 8)))
    b = meet(F0 / 3, urysohn_bump(rat(1, 2), rat(7, 8))) + meet(F0 / 4, hat(rat(1, 16)))
    out = upward_direct(a, b, CTX, h)
    assert alg_leq(a, out) and alg_leq(b, out) and in_Ifh(out, CTX, h)


def urysohn_bump(lo, hi):
    mid = (lo + hi) / 2
    return join(meet(F0, hat(rat(1, 32))), PwlFn([(0, 0), (lo, 0), (mid, 1), (hi, 0), (1, 0)]))


def test_property_C_constant_one():
    w = has_property_C(CTX, CONST_ONE)
    chk = w.verify(rat(1, 3))
    assert chk.ok
    assert chk.in_ideal and chk.below and chk.equal and chk.strict


def test_property_C_monster():
    ctx = ideal_ctx(hat(HALF) / 2)
    g = TailFn.monster(HALF, rat(1, 4))
    w = has_property_C(ctx, g, samples=[rat(1, 3), rat(1, 5), rat(7, 16)])
    assert w
    assert all(w.verify(t) for t in (rat(1, 9), rat(15, 32), rat(31, 64)))


def test_approx_on_compact_examples():
    k = RSet.closed(rat(1, 4), HALF)
    z = approx_on_compact(CTX, CONST_ONE, k)
    assert compare(z.fn, CONST_ONE, k).leq and compare(CONST_ONE, z.fn, k).leq
    z = approx_on_compact(CTX, F0, RSet.point(rat(1, 3)))
    assert z.fn(rat(1, 3)) == rat(1, 3)
    z0 = approx_on_compact(CTX, CONST_ONE, k, v=CONST_ZERO)
    assert z0.fn(rat(1, 3)) == 1


def test_approx_on_compact_dominates_v():
    v = meet(F0, const(rat(1, 8)))
    z = approx_on_compact(CTX, CONST_ONE, RSet.closed(HALF, 1), v=v)
    assert alg_leq(v, z) and z.fn(1) == 1


def test_approx_rejects_noncompact():
    with pytest.raises(ValueError):
        approx_on_compact(CTX, CONST_ONE, RSet.open(rat(1, 4), HALF))


def test_realize_sup_examples():
    g = realize_sup(CTX, CONST_ONE, HALF, rat(1, 8))
    assert g.fn(HALF) >= rat(7, 8)
    assert realize_sup(CTX, const(rat(1, 16)), HALF, rat(1, 8)).is_zero
    g = realize_sup(CTX, F0, rat(1, 64), rat(1, 128))
    assert g.fn(rat(1, 64)) > rat(1, 64) - rat(1, 128)


def test_sub_has_C_examples():
    wit_h = has_property_C(CTX, CONST_ONE)
    assert sub_has_C(CTX, CONST_ZERO, CONST_ONE, wit_h=wit_h) is wit_h
    w = sub_has_C(CTX, const(HALF), CONST_ONE)
    for t in (rat(1, 3), rat(1, 100), rat(1)):
        assert w.verify(t)
    direct = has_property_C(CTX, const(HALF))
    assert direct.verify(rat(1, 3)) and w.verify(rat(1, 3))


def test_complement_split_examples():
    g1, g2, rep = complement_split(CTX, const(HALF), 1, F0)
    assert rep.ok and g1.fn + g2.fn == F0
    g1, g2, rep = complement_split(CTX, const(1), 2, 2 * meet(F0, const(rat(1, 4))))
    assert rep.ok
    g1, g2, rep = complement_split(CTX, const(1), 2, CONST_ZERO)
    assert g1.is_zero and g2.is_zero


def test_complement_split_needs_room():
    with pytest.raises(PreconditionError):
        complement_split(CTX, const(1), 1, F0)


def test_restrict_interval_examples():
    _, rep = restrict_interval(CTX, CTX, CONST_ONE)
    assert rep.ok
    small = ideal_ctx(meet(F0, join(CONST_ZERO, HALF - F0)))
    h, rep = restrict_interval(small, CTX, CONST_ONE)
    assert rep.ok and rep.points > 0


def test_default_points_lie_inside():
    u = RSet.open(0, rat(1, 4)) | RSet.closed(HALF, 1)
    assert all(t in u for t in default_points(u))
