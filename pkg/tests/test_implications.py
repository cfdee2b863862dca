import pytest
from hypothesis import given, strategies as st

from mvcodes.errors import DescentDegenerate, NotDivisible, PreconditionCollisionInvalid
from mvcodes.goodness import (CANONICAL, Collision, InducedFrom, canonical_root, check_collision,
                              collision_classes, collision_search, is_good, verify_collision)
from mvcodes.implications import (RootRelation, canonicalize_collision, descend_collision,
                                  lift_collision, scaling_for_pair, transport_collision)
from mvcodes.modulus import Modulus

LIFTS = [(511, 3577), (1057, 7399), (511, 511), (1057, 1057)]


def mod(m):
    return Modulus.of(m)


def test_example_descent():
    d = descend_collision(mod(7399), Collision(238, 455))
    assert d.m1.m == 1057 and d.omega == (1, 0)
    assert d.c1.root_convention == InducedFrom(7399, 7)
    assert check_collision(d.m1, d.c1)
    assert collision_search(mod(1057)) is not None


def test_descent_then_lift_round_trip():
    M2 = mod(7399)
    d = descend_collision(M2, Collision(238, 455))
    c2 = lift_collision(d.m1, M2, d.c1)
    assert check_collision(M2, c2)
    assert (c2.u, c2.v) == (238, 455)


@pytest.mark.parametrize("m1, m2", LIFTS)
def test_lift_search_result(m1, m2):
    c1 = collision_search(mod(m1))
    c2 = lift_collision(mod(m1), mod(m2), c1)
    assert check_collision(mod(m2), c2)
    assert is_good(mod(m2))


def test_lift_identity():
    c = collision_search(mod(511))
    assert lift_collision(mod(511), mod(511), c) == c


def test_lift_many_collisions_of_511():
    M1, M2 = mod(511), mod(3577)
    for cls in collision_classes(M1)[:15]:
        c2 = lift_collision(M1, M2, Collision(cls[0], cls[1]))
        assert check_collision(M2, c2)


def test_lift_errors():
    c = collision_search(mod(511))
    with pytest.raises(NotDivisible):
        lift_collision(mod(511), mod(7399), c)
    with pytest.raises(PreconditionCollisionInvalid):
        lift_collision(mod(511), mod(3577), Collision(1, 2))


def test_divisor_in_m2_shares_primes():
    # m1 | m2 with both in M_2 forces equal prime sets, so the mismatch check is defensive
    for m2 in (3577, 7399, 2025, 1125):
        M2 = mod(m2)
        for m1 in range(15, m2 + 1, 2):
            if m2 % m1 == 0 and len({p for p in M2.primes if m1 % p == 0}) == 2:
                assert RootRelation(mod(m1), M2).cofactor == m2 // m1


def test_descent_degenerate():
    M = mod(2047)  # 23 * 89: every collision is between units or degenerate
    c = collision_search(M)
    with pytest.raises(DescentDegenerate):
        descend_collision(M, c)


def test_descent_rejects_non_collision():
    with pytest.raises(PreconditionCollisionInvalid):
        descend_collision(mod(7399), Collision(1, 2))


def test_descent_of_every_descendable_7399_collision():
    M2 = mod(7399)
    for cls in collision_classes(M2):
        for u, v in zip(cls, cls[1:]):
            try:
                d = descend_collision(M2, Collision(u, v))
            except DescentDegenerate:
                continue
            assert d.m1.m * M2.p1 ** d.omega[0] * M2.p2 ** d.omega[1] == M2.m
            assert check_collision(d.m1, d.c1)


@given(st.sampled_from([s for s in range(1, 511) if s % 7 and s % 73]))
def test_canonicalize(sigma):
    M = mod(511)
    g = canonical_root(M)
    c = collision_search(M)
    out = canonicalize_collision(M, c, g, g ** sigma)
    assert verify_collision(M, out.u, out.v, g ** sigma)
    inv = pow(sigma, -1, 511)
    assert (out.u, out.v) == (c.u * inv % 511, c.v * inv % 511)


def test_canonicalize_identity_and_square():
    M = mod(7399)
    g = canonical_root(M)
    c = Collision(238, 455)
    assert canonicalize_collision(M, c, g, g) == c
    half = pow(2, -1, 7399)
    assert canonicalize_collision(M, c, g, g ** 2) == Collision(238 * half % 7399, 455 * half % 7399)


def test_transport_between_fields():
    d = descend_collision(mod(7399), Collision(238, 455))
    own = transport_collision(d.m1, d.c1, CANONICAL)
    assert own.root_convention == CANONICAL
    assert check_collision(d.m1, own)


def test_example_pair_needs_no_scaling():
    M = mod(7399)
    assert scaling_for_pair(M, 238, 455, canonical_root(M)) == 1


def test_root_relation():
    rel = RootRelation(mod(1057), mod(7399))
    g2 = canonical_root(mod(7399))
    assert rel.cofactor == 7
    assert rel.holds(g2 ** 7, g2)
    assert rel.induced_root(g2) ** 1057 == 1
