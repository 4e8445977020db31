import random

import pytest

from locmult.localization import fundamental_sequence, hat
from locmult.monoid import PreconditionError, alg_lt, in_M
from locmult.monster import (
    build_monster, check_property_C, dominated, ideal_split, interval_sum_check,
    lattice_words, locally_in_M_witness, monster_tower, oscillation, split_through_E,
)
from locmult.pwl import CONST_ZERO, F0, PwlFn, RSet, compare, cozero, meet, rat
from locmult.tailfn import TailFn

HALF = rat(1, 2)
B = build_monster()


def test_default_build_certificates():
    assert B.ok, B.certificates
    assert B.rho == HALF and B.mu == rat(1, 4)
    assert B.g(rat(1, 4)) == rat(1, 16)
    assert cozero(B.f_prime.fn) == RSet.open(0, HALF)


def test_oscillation_examples():
    assert oscillation(B.g) == (0, rat(1, 16))
    assert oscillation(2 * B.g) == (0, rat(1, 8))
    assert oscillation(F0, HALF) == (HALF, HALF)
    with pytest.raises(ValueError):
        oscillation(B.g, rat(1, 3))


def test_truncations_are_continuous_and_in_M():
    for m in range(1, 6):
        assert in_M(B.g.upto(m))
    for n, w in enumerate(lattice_words(B.g, 4), start=1):
        assert in_M(w)


def test_dominated_examples():
    assert dominated(B.g, B.h1)
    assert not dominated(B.g, B.g)
    assert dominated(B.g, B.h1, RSet.open(0, rat(1, 4)))


def test_build_rejects_bad_parameters():
    with pytest.raises(PreconditionError):
        build_monster(mu=HALF)  # mu must stay below lam' = 1/2
    with pytest.raises(ValueError):
        build_monster(rho=1)
    with pytest.raises(PreconditionError):
        build_monster(f=meet(F0, PwlFn.const(rat(1, 4))))


def test_local_witnesses():
    rng = random.Random(3)
    for _ in range(100):
        t = rat(rng.randint(1, 511), 1024)
        w = locally_in_M_witness(B.g, t)
        assert w.verify(B.g)
    w = locally_in_M_witness(B.g, rat(1, 8))
    assert w.z.fn(rat(1, 8)) == rat(1, 32)
    w = locally_in_M_witness(B.g, rat(3, 8))  # on a zero plateau
    assert w.z.fn(rat(3, 8)) == 0 and not w.z.is_zero
    with pytest.raises(ValueError):
        locally_in_M_witness(B.g, HALF)


def test_property_C_of_g():
    pts = [rat(k, 97) for k in range(1, 48)]
    checks = check_property_C(B, pts)
    assert len(checks) == len(pts) and all(checks)


def test_interval_sum_examples():
    rows = interval_sum_check(B, [CONST_ZERO, meet(B.h1, B.f_prime.fn * 3), B.f_prime.fn / 2])
    assert all(r.ok for r in rows), [r.checks for r in rows]
    assert all(sum(r.parts[k] for k in ("a", "b", "rest")) == r.z for r in rows)


def test_interval_sum_rejects_outside():
    with pytest.raises(PreconditionError):
        split_through_E(B, F0)


def test_ideal_split_example():
    bump = PwlFn([(0, 0), (rat(5, 16), 0), (rat(3, 8), 1), (rat(7, 16), 0), (1, 0)])
    g = meet(F0 / 4, hat(rat(1, 4))) + bump
    s = ideal_split(g, F0, hat(rat(1, 4)) / 2, RSet.closed(0, rat(1, 16)),
                    RSet.closed(0, rat(5, 16)), RSet.closed(0, rat(1, 2)))
    assert s.ok, s.checks
    assert s.g1.fn + s.g2.fn == g
    assert compare(s.remainder, CONST_ZERO, RSet.closed(0, rat(5, 16))).leq


def test_ideal_split_rejects_collapse():
    k = RSet.closed(0, rat(1, 4))
    with pytest.raises(PreconditionError):
        ideal_split(F0, F0, hat(rat(1, 4)), k, k, k)


def test_tower_depth_one_matches_build():
    stage = monster_tower(1)[0]
    seq = fundamental_sequence(1)
    direct = build_monster(meet(F0, seq[1].fn) / 2, F0, rat(1, 4))
    assert stage.f_prime == direct.f_prime
    assert stage.g.to_json() == direct.g.to_json()


def test_tower_depth_three():
    stages = monster_tower(3)
    assert [s.rho for s in stages] == [rat(1, 4), rat(1, 8), rat(1, 16)]
    assert all(s.ok for s in stages)
    assert all(s.gap > 0 for s in stages)
    for a, b in zip(stages, stages[1:]):
        assert alg_lt(b.f_prime, a.f_prime)


def test_tower_needs_long_sequence():
    with pytest.raises(ValueError):
        monster_tower(3, seq=fundamental_sequence(2))


def test_json_shape():
    data = B.to_json()
    assert data["oscillation"] == ["0", "1/16"]
    assert TailFn.from_json(data["g"]).oscillation() == (0, rat(1, 16))
