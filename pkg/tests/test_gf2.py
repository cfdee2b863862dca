import numpy as np
import pytest
from hypothesis import given, strategies as st
from sympy import GF, Poly, symbols

from mvcodes.errors import CtxMismatch, DivisionByZero, GuardExceeded
from mvcodes.gf2 import (FieldCtx, FieldElement, clmul, find_irreducible, find_root_of_unity,
                         has_order_exactly, is_irreducible, poly_divmod, square)

X = symbols("X")


def sympy_irreducible(f: int) -> bool:
    coeffs = [int(b) for b in bin(f)[2:]]
    return Poly(coeffs, X, domain=GF(2)).is_irreducible


def naive_mul(a, b):
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


# -- polynomials -------------------------------------------------------------------

@given(st.integers(0, 2 ** 300), st.integers(0, 2 ** 300))
def test_clmul_matches_shift_and_add(a, b):
    assert clmul(a, b) == naive_mul(a, b)


@given(st.integers(0, 2 ** 400))
def test_square_is_self_product(a):
    assert square(a) == clmul(a, a)


@given(st.integers(0, 2 ** 200), st.integers(1, 2 ** 80))
def test_divmod_reconstructs(a, b):
    q, r = poly_divmod(a, b)
    assert clmul(q, b) ^ r == a
    assert r.bit_length() < b.bit_length()


@given(st.integers(2, 2 ** 13))
def test_rabin_agrees_with_sympy(f):
    assert is_irreducible(f) == sympy_irreducible(f)


@pytest.mark.parametrize("t, expected", [
    (1, 0b10), (2, 0b111), (3, 0b1011), (4, 0b10011), (8, 0x11B), (9, 0x203),
    (16, 0x1002B), (32, 0x10000008D), (64, (1 << 64) | 0x1B), (105, (1 << 105) | 0x11),
    (128, (1 << 128) | 0x87),
])
def test_smallest_irreducible_regression(t, expected):
    assert find_irreducible(t, max_t=128) == expected


@pytest.mark.parametrize("t", [2, 3, 5, 7, 10, 11, 12])
def test_smallest_irreducible_is_smallest(t):
    f = find_irreducible(t)
    assert sympy_irreducible(f)
    assert not any(sympy_irreducible(g) for g in range(1 << t, f))


def test_degree_guard():
    with pytest.raises(GuardExceeded):
        find_irreducible(129)


@pytest.mark.parametrize("t", [160, 211, 300])
def test_large_degree_modulus_is_irreducible(t):
    f = find_irreducible(t, max_t=512)
    assert f.bit_length() == t + 1
    assert is_irreducible(f)


# -- field arithmetic ---------------------------------------------------------------

field_degrees = st.sampled_from([1, 2, 4, 9, 15, 33, 64, 105, 160, 231])


@st.composite
def elements(draw, ctx=None, count=3, nonzero=False):
    if ctx is None:
        ctx = FieldCtx.of_degree(draw(field_degrees), max_t=512)
    lo = 1 if nonzero else 0
    return ctx, [ctx.element(draw(st.integers(lo, ctx.order - 1))) for _ in range(count)]


@given(elements())
def test_field_axioms(data):
    ctx, (a, b, c) = data
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a + a == ctx.zero
    assert -a == a
    assert a * 1 == a


@given(elements(count=1, nonzero=True))
def test_inverse(data):
    ctx, (a,) = data
    assert a * a.inv() == 1
    assert a / a == ctx.one
    assert a ** -1 == a.inv()


@given(elements(count=1), st.integers(-50, 50), st.integers(-50, 50))
def test_pow_laws(data, e1, e2):
    ctx, (a,) = data
    if not a and (e1 < 0 or e2 < 0):
        return
    assert a ** e1 * a ** e2 == a ** (e1 + e2)


@given(elements(count=1))
def test_frobenius_and_order(data):
    ctx, (a,) = data
    assert a ** 2 == a * a
    assert a ** ctx.order == a


def test_inverse_of_zero():
    ctx = FieldCtx.of_degree(5)
    with pytest.raises(DivisionByZero):
        ctx.zero.inv()


def test_mixed_contexts_rejected():
    a = FieldCtx.of_degree(4).one
    b = FieldCtx.of_degree(5).one
    with pytest.raises(CtxMismatch):
        a + b


@given(elements(count=1))
def test_hex_roundtrip(data):
    ctx, (a,) = data
    text = a.hex()
    assert len(text) == 2 * ((ctx.t + 7) // 8)
    assert ctx.from_hex(text) == a.value


def test_modulus_bytes_little_endian():
    ctx = FieldCtx.of_degree(9)
    assert ctx.modulus_bytes() == bytes([0x03, 0x02])


def test_rejects_reducible_modulus():
    with pytest.raises(ValueError):
        FieldCtx(4, 0b10101)


# -- kernels versus plain Python ------------------------------------------------------

@pytest.mark.parametrize("t", [9, 64, 105, 160, 300, 924])
def test_batch_kernels_match_scalar(t):
    ctx = FieldCtx.of_degree(t, max_t=1024)
    rng = np.random.default_rng(t)
    a = [int.from_bytes(rng.bytes(ctx.limbs * 8), "little") % ctx.order for _ in range(40)]
    b = [int.from_bytes(rng.bytes(ctx.limbs * 8), "little") % ctx.order or 1 for _ in range(40)]
    A, B = ctx.to_rows(a), ctx.to_rows(b)
    prods = ctx.from_rows(ctx.mul_rows(A, B))
    assert prods == [ctx.reduce(clmul(x, y)) for x, y in zip(a, b)]
    assert ctx.from_rows(ctx.inverse_rows(B)) == [ctx.inv(y) for y in b]
    g = a[0]
    assert ctx.from_rows(ctx.power_rows(g, 25)) == [ctx._pow_nonneg(g, e) for e in range(25)]
    assert ctx.frobenius_chain(g, 5) == [ctx.pow(g, 2 ** k) for k in range(1, 6)]


@given(st.lists(st.integers(0, 2 ** 15 - 1), min_size=1, max_size=30), st.integers(0, 2 ** 15 - 1))
def test_mul_array_matches_scalar(values, scalar):
    ctx = FieldCtx.of_degree(15)
    out = ctx.mul_array(np.array(values, dtype=np.uint64), scalar)
    assert out.tolist() == [ctx.mul(v, scalar) for v in values]


# -- roots of unity ---------------------------------------------------------------------

@pytest.mark.parametrize("m, t, primes", [(15, 4, (3, 5)), (511, 9, (7, 73)), (2047, 11, (23, 89)),
                                          (7399, 105, (7, 151))])
def test_root_of_unity_has_exact_order(m, t, primes):
    ctx = FieldCtx.of_degree(t)
    g = find_root_of_unity(ctx, m, primes)
    assert g ** m == 1
    assert all(g ** (m // p) != 1 for p in primes)
    assert has_order_exactly(g, m, primes)


def test_root_of_unity_regression():
    assert find_root_of_unity(FieldCtx.of_degree(4), 15).value == 0b10


def test_field_element_equality_with_ints():
    ctx = FieldCtx.of_degree(3)
    assert ctx.element(5) == 5
    assert hash(ctx.element(5)) == hash(FieldElement(ctx, 5))
    assert not ctx.zero
