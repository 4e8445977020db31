import pytest
from hypothesis import given, strategies as st

from conftest import pwl_fns
from locmult.pwl import CONST_ONE, CONST_ZERO, F0, PwlFn, RSet, compare, cozero, from_text, meet, rat
from locmult.urysohn import (
    check_urysohn, generate_G, local_form_at_zero, parse_derivation, urysohn,
    urysohn_grid, urysohn_plateau, verify_group_properties,
)


def test_urysohn_example():
    r = urysohn(RSet.closed(rat(1, 4), rat(1, 2)), RSet.open(rat(1, 8), rat(3, 4)), 1)
    assert r == from_text("pwl[(0,0);(1/8,0);(3/16,1);(5/8,1);(3/4,0);(1,0)]")


def test_urysohn_whole_and_empty():
    assert urysohn(RSet.whole(), RSet.whole(), 1) == CONST_ONE
    assert urysohn(RSet.empty(), RSet.open(rat(1, 4), rat(1, 2)), 1) == CONST_ZERO


def test_urysohn_plateau_sits_between():
    k = RSet.closed(rat(1, 4), rat(1, 2)) | RSet.point(rat(7, 8))
    v = RSet.open(rat(1, 8), rat(5, 8)) | RSet.open(rat(13, 16), ONE_OPEN_HI)
    u = urysohn_plateau(k, v)
    assert k <= u <= v and u.is_open()


ONE_OPEN_HI = rat(15, 16)


def test_local_form_examples():
    assert local_form_at_zero(F0) == (0, 1, 1)
    assert local_form_at_zero(CONST_ONE) == (1, 0, 1)
    assert local_form_at_zero(from_text("pwl[(0,1/2);(1/4,1/2);(1,0)]")) == (rat(1, 2), 0, rat(1, 4))


@given(pwl_fns(), pwl_fns())
def test_local_form_is_additive(f, g):
    lf, lg, ls = local_form_at_zero(f), local_form_at_zero(g), local_form_at_zero(f + g)
    assert ls[0] == lf[0] + lg[0]
    assert ls[1] == lf[1] + lg[1]


def test_generate_G_depth_one_has_generators():
    sample = list(generate_G(1, 6, seed=0))
    fns = [f for f, _ in sample]
    assert F0 in fns and CONST_ONE in fns
    assert any(d.op == "ury" for _, d in sample)


def test_generate_G_depth_two_has_hat():
    fns = {f for f, _ in generate_G(2, 6, seed=0)}
    assert meet(F0, 1 - F0) in fns


def test_generate_G_rejects_depth_zero():
    with pytest.raises(ValueError):
        next(generate_G(0, 4))


def test_derivations_replay_and_round_trip():
    for f, d in list(generate_G(3, 6, seed=2))[:150]:
        assert d.replay() == f
        assert parse_derivation(str(d)).replay() == f


def test_group_properties_on_depth_three_sample():
    sample = list(generate_G(3, 40, seed=0))
    assert len(sample) >= 200
    report = verify_group_properties(sample)
    assert report.ok, report.failures[:3]
    assert report.count("iv") == 50


def test_negative_function_passes_group_checks():
    report = verify_group_properties([F0, F0 - 1, CONST_ONE], grid=[])
    assert report.ok


def test_grid_rows_and_precondition_row():
    assert len(urysohn_grid(50)) == 50
    row = check_urysohn(RSet.closed(0, rat(1, 2)), RSet.open(rat(1, 4), rat(3, 4)), 1)
    assert row.status == "precondition" and row.passed


@given(st.integers(0, 14), st.integers(1, 6), st.sampled_from([rat(1), rat(1, 3), rat(5, 2)]))
def test_urysohn_invariants(a, w, rho):
    lo, hi = rat(a, 16), min(rat(a + w, 16), rat(1))
    k = RSet.closed(lo, hi)
    v = RSet.open(lo - rat(1, 32), hi + rat(1, 32)) & RSet.whole()
    if lo == 0:
        v = v | RSet.point(0)
    if hi == 1:
        v = v | RSet.point(1)
    r = urysohn(k, v, rho)
    assert r.min() >= 0 and r.max() <= rho
    c = PwlFn.const(rho)
    assert compare(c, r, k).leq
    assert cozero(r) <= v
