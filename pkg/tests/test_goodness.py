import math

import pytest
from hypothesis import given, strategies as st

from mvcodes.errors import DomainViolation, GuardExceeded, PreconditionCollisionInvalid
from mvcodes.goodness import (Collision, InducedFrom, Reason, build_matrix_A, canonical_root,
                              check_collision, collision_classes, collision_search,
                              collision_search_bruteforce, decoding_poly_from_collision, det3,
                              exceptional_residues, is_good, no_small_decoding_poly,
                              product_decoding_poly, resolve_root, rho, rho_at, search_report,
                              verify_collision, verify_decoding_poly)
from mvcodes.modulus import Modulus, canonical_set, in_m2

GOOD = [511, 1057, 2047, 3577, 7399]
NOT_GOOD = [15, 21, 33, 35, 45, 63, 75, 99, 175]

# smallest colliding pair under the canonical root, pinned from the first run
PINNED = {511: (5, 276), 1057: (3, 250), 2047: (1, 118), 3577: (21, 826), 7399: (105, 2982)}


def mod(m):
    return Modulus.of(m)


def test_rho_trivial_values():
    g = canonical_root(mod(15))
    for e in (1, 2, 7):
        z = g ** e
        assert rho(z, z) == 1
        assert rho(z, z) + 1 == 0  # tau(z, z)


def test_rho_domain():
    g = canonical_root(mod(15))
    with pytest.raises(DomainViolation):
        rho(g.ctx.one, g)
    with pytest.raises(DomainViolation):
        rho(g, g.ctx.zero)


def test_example_collision():
    M = mod(7399)
    g = canonical_root(M)
    assert rho_at(M, 238, g) == rho_at(M, 455, g)
    assert verify_collision(M, 238, 455, g)
    assert any({238, 455} <= set(c) for c in collision_classes(M))


@pytest.mark.parametrize("u, v, reason", [(238, 238, Reason.CONGRUENT), (238, 238 + 7399, Reason.CONGRUENT),
                                          (49, 455, Reason.NOT_IN_E), (1, 2, Reason.RHO_DIFFERS)])
def test_verify_reason_codes(u, v, reason):
    M = mod(7399)
    check = verify_collision(M, u, v, canonical_root(M))
    assert not check and check.reason is reason


def test_verify_rejects_wrong_order_root():
    M = mod(7399)
    check = verify_collision(M, 238, 455, canonical_root(M) ** 7)
    assert check.reason is Reason.BAD_ROOT


@pytest.mark.parametrize("m", GOOD)
def test_good_numbers(m):
    c = collision_search(mod(m))
    assert c is not None and (c.u, c.v) == PINNED[m]
    assert is_good(mod(m))
    assert check_collision(mod(m), c)


@pytest.mark.parametrize("m", NOT_GOOD)
def test_not_good(m):
    assert collision_search(mod(m)) is None
    assert collision_search_bruteforce(mod(m)) is None


@pytest.mark.parametrize("m", [21, 45, 511, 1057, 2047, 3577])
def test_bruteforce_agrees(m):
    assert collision_search(mod(m)) == collision_search_bruteforce(mod(m))


def test_bruteforce_guard():
    with pytest.raises(GuardExceeded):
        collision_search_bruteforce(mod(7399))


@pytest.mark.parametrize("workers", [1, 2, 3])
def test_worker_count_does_not_matter(workers):
    assert collision_classes(mod(2047), workers=workers) == collision_classes(mod(2047))
    assert collision_search(mod(7399), workers=workers) == Collision(*PINNED[7399])


def test_classes_are_rho_fibres():
    M = mod(2047)
    g = canonical_root(M)
    for cls in collision_classes(M)[:20]:
        vals = {rho_at(M, u, g) for u in cls}
        assert len(vals) == 1


def test_map_is_injective():
    # u -> (g^(s10 u), g^(s01 u)) is injective iff u -> (s10 u, s01 u) mod m is
    for m in range(3, 2001, 2):
        if in_m2(m):
            M = mod(m)
            assert len({(M.s10 * u % m, M.s01 * u % m) for u in range(m)}) == m


@pytest.mark.parametrize("m", [511, 2047])
@given(data=st.data())
def test_root_invariance(m, data):
    M = mod(m)
    g = canonical_root(M)
    units = [s for s in range(1, m) if math.gcd(s, m) == 1]
    sigma = data.draw(st.sampled_from(units))
    inv = pow(sigma, -1, m)
    scaled = sorted(sorted(u * inv % m for u in c) for c in collision_classes(M, g))
    assert collision_classes(M, g ** sigma) == scaled


def test_frobenius_root_gives_same_collisions():
    M = mod(2047)
    g = canonical_root(M)
    assert collision_classes(M, g ** 2) == collision_classes(M, g)


def test_exceptional_residues():
    M = mod(45)
    assert exceptional_residues(M).tolist() == [u for u in range(1, 45) if u % 9 and u % 5]


# -- decoding polynomials ----------------------------------------------------------------

@pytest.mark.parametrize("m", GOOD)
def test_decoding_poly_from_search(m):
    M = mod(m)
    c = collision_search(M)
    A = build_matrix_A(M, c.u, c.v, canonical_root(M))
    assert not det3(A)
    P = decoding_poly_from_collision(M, c)
    assert P.k == 3
    assert sorted(e for e, _ in P.monomials) == sorted([0, c.u, c.v])
    assert verify_decoding_poly(P)
    g = canonical_root(M)
    assert P(g.ctx.one) == 1
    assert all(not P(g ** s) for s in canonical_set(M))


def test_example_decoding_poly():
    M = mod(7399)
    P = decoding_poly_from_collision(M, Collision(238, 455))
    g = P.root
    assert P.k == 3 and P(g.ctx.one) == 1
    assert not P(g ** 1813) and not P(g ** 5587) and not P(g)


def test_matrix_with_equal_columns_is_singular():
    M = mod(7399)
    assert not det3(build_matrix_A(M, 10, 10, canonical_root(M)))


def test_decoding_poly_needs_collision():
    with pytest.raises(PreconditionCollisionInvalid):
        decoding_poly_from_collision(mod(7399), Collision(1, 2))


@pytest.mark.parametrize("m", NOT_GOOD + GOOD)
def test_product_poly(m):
    M = mod(m)
    P = product_decoding_poly(M)
    assert verify_decoding_poly(P)
    assert P.k <= 4
    if m in NOT_GOOD:
        assert P.k == 4


def test_product_poly_15():
    M = mod(15)
    P = product_decoding_poly(M)
    g = P.root
    assert P.k == 4 and P(g.ctx.one) == 1 and not P(g ** 6)


@pytest.mark.parametrize("m", [15, 21, 45])
def test_no_small_poly(m):
    assert no_small_decoding_poly(mod(m))


def test_no_small_poly_guard():
    with pytest.raises(GuardExceeded):
        no_small_decoding_poly(mod(511))


def test_induced_root_resolution():
    parent = mod(7399)
    g = resolve_root(mod(1057), InducedFrom(7399, 7))
    assert g == canonical_root(parent) ** 7
    assert g.ctx.t == 105


def test_search_report_shape():
    r = search_report(mod(511))
    assert list(r) == ["m", "good", "collision", "poly", "t", "s01", "s10"]
    assert r["collision"] == {"u": 5, "v": 276}
    assert [mono["exp"] for mono in r["poly"]["monomials"]] == [0, 5, 276]
    assert search_report(mod(15))["collision"] is None
