import random

import pytest

from locmult.localization import (
    add_classes, brute_force_n, common_base, equivalent, fundamental_sequence, hat,
    least_integer_above, make_class, minimal_ideal_dominates, restrict, unit_class, zero_class,
)
from locmult.monoid import alg_leq, alg_lt, ideal_ctx, in_Nf
from locmult.pwl import CONST_ONE, F0, PwlFn, RSet, cozero, from_text, meet, rat
from locmult.tailfn import TailFn

HALF = rat(1, 2)


def test_hat_shape():
    h = hat(HALF)
    assert h == from_text("pwl[(0,0);(1/4,1/4);(1/2,0);(1,0)]")
    assert cozero(h) == RSet.open(0, HALF)
    assert hat(1) == meet(F0, 1 - F0)


def test_least_integer_above():
    assert least_integer_above(1) == 2
    assert least_integer_above(4) == 5
    assert least_integer_above(rat(7, 2)) == 4


def test_equivalence_examples():
    c = make_class(F0, CONST_ONE)
    assert equivalent(c, c)
    assert equivalent(make_class(F0, CONST_ONE), make_class(meet(F0, hat(HALF)), CONST_ONE))
    assert not equivalent(make_class(F0, CONST_ONE), make_class(F0, F0))


def test_equivalence_sees_only_the_germ_region():
    # sups that differ only away from 0 become equal after restriction
    h1 = CONST_ONE
    h2 = PwlFn([(0, 1), (HALF, 1), (1, 3)])
    assert equivalent(make_class(F0, h1), make_class(F0, h2))


def test_sum_examples():
    c = make_class(F0, F0)
    assert equivalent(add_classes(c, zero_class()), c)
    u = unit_class()
    assert equivalent(add_classes(u, u), make_class(F0, PwlFn.const(2)))
    d = make_class(hat(HALF), meet(F0, PwlFn.const(rat(1, 8))))
    assert equivalent(add_classes(c, d), add_classes(d, c))


def test_sum_is_associative():
    a = make_class(F0, F0)
    b = unit_class()
    c = make_class(hat(rat(3, 4)), F0 / 3)
    left = add_classes(add_classes(a, b), c)
    right = add_classes(a, add_classes(b, c))
    assert equivalent(left, right)


def test_restriction_is_compatible():
    c = make_class(F0, CONST_ONE)
    small = meet(F0, hat(rat(1, 4)))
    r = restrict(c, small)
    assert equivalent(r, c)
    assert in_Nf(r.base, ideal_ctx(c.base))


def test_common_base_is_below_every_base():
    a, b = make_class(F0, F0), make_class(hat(HALF), CONST_ONE)
    base = common_base(a, b)
    assert alg_lt(base, a.base) and alg_lt(base, b.base)


@pytest.mark.parametrize("h, n", [
    (F0, 2),
    (CONST_ONE, 2),
    (meet(F0 / 4, PwlFn.const(rat(1, 16))), 5),
])
def test_minimal_ideal_examples(h, n):
    rep = minimal_ideal_dominates(make_class(F0, h))
    assert rep.n == n
    assert rep.ok, rep.checks
    assert rep.brute_force_n == n


def test_minimal_ideal_monster_class():
    g = TailFn.monster(HALF, rat(1, 4))
    rep = minimal_ideal_dominates(make_class(hat(HALF) / 2, g))
    assert rep.ok and rep.n == 5


def test_minimal_ideal_zero_class_raises():
    with pytest.raises(ValueError):
        minimal_ideal_dominates(zero_class())


def test_minimal_ideal_random_slopes():
    rng = random.Random(7)
    for _ in range(20):
        q = rat(rng.randint(1, 40), rng.randint(1, 12))
        h = meet(F0 * q, PwlFn.const(rat(1, 4)))
        rep = minimal_ideal_dominates(make_class(F0, h))
        assert rep.ok
        assert rep.n == least_integer_above(1 / q)


def test_brute_force_is_independent_of_slope():
    g = meet(F0 / 3, PwlFn.const(rat(1, 8)))
    assert brute_force_n(g, rat(1, 4), 10) == 4
    assert brute_force_n(g, rat(1, 4), 3) is None


def test_fundamental_sequence():
    seq = fundamental_sequence(1)
    assert cozero(seq[1].fn) == RSet.open(0, HALF)
    assert alg_leq(seq[1], seq[0])
    seq = fundamental_sequence(5)
    assert seq.verify()
    zones = [cozero(e.fn) for e in seq.elems]
    assert all(b <= a and b != a for a, b in zip(zones, zones[1:]))
    with pytest.raises(ValueError):
        fundamental_sequence(0)


def test_class_json():
    data = make_class(F0, CONST_ONE).to_json()
    assert data == {"base": "pwl[(0,0);(1,1)]", "sup": "pwl[(0,1);(1,1)]"}
