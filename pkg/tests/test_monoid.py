import pytest
from hypothesis import given

from conftest import m_elements
from locmult.monoid import (
    PreconditionError, Rejection, alg_leq, alg_lt, ideal_ctx, in_Df, in_M, in_Nf,
    melem, prime_witness, riesz_decompose,
)
from locmult.pwl import CONST_ONE, CONST_ZERO, F0, PwlFn, join, meet, rat

HALF = rat(1, 2)
QUARTER_CAP = meet(F0, PwlFn.const(rat(1, 4)))


def test_in_M_examples():
    m = in_M(join(CONST_ZERO, HALF - F0))
    assert m and 0 < m.eps < HALF
    r = in_M(join(CONST_ZERO, F0 - HALF))
    assert isinstance(r, Rejection) and not r
    assert 0 < r.point < HALF
    z = in_M(CONST_ZERO)
    assert z and z.is_zero


def test_in_M_rejects_negative():
    assert not in_M(F0 - HALF)


def test_alg_leq_examples():
    cert = alg_leq(F0, 2 * F0)
    assert cert and cert.fn == F0
    assert alg_leq(F0, CONST_ONE)
    assert not alg_leq(CONST_ONE, F0)
    assert alg_lt(F0, 2 * F0) and not alg_lt(F0, F0)


def test_in_Nf_examples():
    ctx = ideal_ctx(F0)
    assert in_Nf(QUARTER_CAP, ctx) == 2
    assert in_Nf(F0, ctx) == 1
    hat = meet(F0, join(CONST_ZERO, HALF - F0))
    r = in_Nf(CONST_ONE, ideal_ctx(hat))
    assert not r and r.point is not None and hat(r.point) == 0


def test_in_Nf_is_least():
    ctx = ideal_ctx(F0 / 3)
    assert in_Nf(F0, ctx) == 3  # 3 * (t/3) - t = 0 lies in M
    assert in_Nf(F0 + F0 / 100, ctx) == 4


def test_in_Df_examples():
    ctx = ideal_ctx(F0)
    assert in_Df(QUARTER_CAP, ctx)
    assert not in_Df(CONST_ONE, ctx)
    assert in_Df(CONST_ZERO, ctx)


def test_riesz_examples():
    x1, x2 = riesz_decompose(F0, F0, F0)
    assert x1.fn == F0 and x2.is_zero
    x1, x2 = riesz_decompose(CONST_ONE, CONST_ONE, CONST_ONE)
    assert x1.fn == CONST_ONE and x2.is_zero
    x = F0 + QUARTER_CAP
    x1, x2 = riesz_decompose(x, 2 * F0, 2 * F0)
    assert x1.fn + x2.fn == x
    assert alg_leq(x1, 2 * F0) and alg_leq(x2, 2 * F0)


def test_riesz_needs_repair():
    # x ^ y1 leaves x - x1 vanishing next to 0, so the midpoint repair runs
    y1 = F0
    y2 = meet(F0, PwlFn([(0, 0), (rat(1, 4), rat(1, 4)), (rat(1, 2), 0), (1, 0)])) + rat(0)
    x = F0
    x1, x2 = riesz_decompose(x, y1, y2)
    assert x1.fn + x2.fn == x
    assert alg_leq(x1, y1) and alg_leq(x2, y2)


def test_riesz_precondition():
    with pytest.raises(PreconditionError):
        riesz_decompose(2 * F0, F0 / 2, F0 / 2 + 0)
    with pytest.raises(PreconditionError):
        riesz_decompose(F0, F0 - HALF, F0)


def test_prime_witness_examples():
    assert prime_witness(F0, CONST_ONE).fn == F0
    assert prime_witness(F0, F0).fn == F0
    g = join(CONST_ZERO, HALF - F0)
    w = prime_witness(F0, g)
    assert not w.is_zero
    assert in_Nf(w, ideal_ctx(F0)) and in_Nf(w, ideal_ctx(g))
    with pytest.raises(ValueError):
        prime_witness(F0, CONST_ZERO)


def test_melem_json_round_trip():
    m = melem(QUARTER_CAP)
    assert type(m).from_json(m.to_json()) == m


@given(m_elements(), m_elements(), m_elements())
def test_cancellation(a, b, c):
    assert (a + c == b + c) == (a == b)
    assert bool(alg_leq(a + c, b + c)) == bool(alg_leq(a, b))


@given(m_elements(), m_elements())
def test_antisymmetry(a, b):
    if alg_leq(a, b) and alg_leq(b, a):
        assert a == b


@given(m_elements(), m_elements(), m_elements())
def test_transitivity(a, b, c):
    lo, mid, hi = a, a + b, a + b + c
    assert alg_leq(lo, mid) and alg_leq(mid, hi) and alg_leq(lo, hi)


@given(m_elements(), m_elements(), m_elements())
def test_riesz_postconditions(a, b, c):
    y1, y2 = a, b
    x = meet(y1 + y2, c) / 2  # keeps y1 + y2 - x positive next to 0
    x1, x2 = riesz_decompose(x, y1, y2)
    assert x1.fn + x2.fn == x
    assert alg_leq(x1, y1) and alg_leq(x2, y2)


@given(m_elements(), m_elements())
def test_prime_witness_nonzero(a, b):
    w = prime_witness(a, b)
    assert not w.is_zero
    assert in_Nf(w, ideal_ctx(a)) and in_Nf(w, ideal_ctx(b))
