import math

import pytest
from hypothesis import assume, given, strategies as st
from sympy import factorint
from sympy.ntheory import n_order

from mvcodes.errors import ModuliNotCoprime, NotInM2, ZeroResidue
from mvcodes.modulus import (Modulus, canonical_set, crt, factor_two_prime_powers, in_E, in_m2,
                             ord2, unit_part)

M2_SAMPLE = [15, 21, 33, 35, 45, 63, 511, 1057, 2047, 3577, 7399]


def m2_members(limit):
    return [m for m in range(3, limit + 1, 2) if len(factorint(m)) == 2]


def test_examples():
    assert factor_two_prime_powers(7399) == (7, 2, 151, 1)
    assert factor_two_prime_powers(511) == (7, 1, 73, 1)
    assert ord2(7399) == 105
    assert ord2(1057) == 15
    assert ord2(3577) == 63
    assert set(canonical_set(Modulus.of(15))) == {1, 6, 10}
    assert canonical_set(Modulus.of(7399)) == (1813, 5587, 1)


@pytest.mark.parametrize("m, reason", [(12, "even modulus"), (2, "at least 3"), (7, "prime"),
                                       (49, "prime power"), (105, "3 distinct")])
def test_not_in_m2(m, reason):
    with pytest.raises(NotInM2, match=reason):
        Modulus.of(m)


def test_membership_matches_factorint():
    assert [m for m in range(1, 400) if in_m2(m)] == m2_members(399)


@given(st.integers(3, 10 ** 6).map(lambda x: x | 1))
def test_ord2_matches_sympy(m):
    assert ord2(m) == n_order(2, m)


@given(st.integers(1, 10 ** 4), st.integers(1, 10 ** 4), st.integers(), st.integers())
def test_crt(n1, n2, a1, a2):
    if math.gcd(n1, n2) != 1:
        with pytest.raises(ModuliNotCoprime):
            crt(a1, n1, a2, n2)
        return
    x = crt(a1, n1, a2, n2)
    assert 0 <= x < n1 * n2
    assert x % n1 == a1 % n1 and x % n2 == a2 % n2


def test_canonical_set_bit_patterns():
    for m in m2_members(3000):
        mod = Modulus.of(m)
        assert mod.s01 % mod.q1 == 0 and mod.s01 % mod.q2 == 1, m
        assert mod.s10 % mod.q1 == 1 and mod.s10 % mod.q2 == 0, m
        assert (mod.s01 + mod.s10) % m == 1
        assert mod.q1 * mod.q2 == m and mod.p1 < mod.p2


def test_exceptional_set():
    mod = Modulus.of(7399)
    assert in_E(238, mod) and in_E(455, mod)
    assert not in_E(49, mod) and not in_E(151, mod) and not in_E(0, mod)


@given(st.sampled_from(M2_SAMPLE), st.integers())
def test_unit_part_reconstructs(m, x):
    mod = Modulus.of(m)
    assume(x % m)
    i1, i2, sigma = unit_part(x, mod)
    assert math.gcd(sigma, m) == 1
    assert 0 <= i1 <= mod.alpha1 and 0 <= i2 <= mod.alpha2
    assert mod.p1 ** i1 * mod.p2 ** i2 * sigma % m == x % m


def test_unit_part_examples():
    mod = Modulus.of(7399)
    assert unit_part(238, mod) == (1, 0, 34)
    assert unit_part(455, mod) == (1, 0, 65)
    with pytest.raises(ZeroResidue):
        unit_part(7399, mod)


def test_json_key_order():
    assert list(Modulus.of(15).to_json()) == ["m", "p1", "alpha1", "p2", "alpha2", "t", "s01", "s10"]
