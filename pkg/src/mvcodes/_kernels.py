"""Numba kernels for GF(2)[X] arithmetic on little-endian uint64 limb arrays.

A polynomial of degree < 64*L is stored as ``L`` uint64 limbs, limb 0 holding
the coefficients of X^0..X^63.  Reduction is modulo ``X^t + g(X)`` where the
set bits of ``g`` are passed as an int64 array ``gbits``; the fold loop is
cheapest when ``g`` is sparse and of low degree, which is always the case for
the smallest irreducibles picked by :func:`mvcodes.gf2.find_irreducible`.

These are the bulk paths.  The pure-Python arithmetic in :mod:`mvcodes.gf2`
is the reference they are tested against.
"""

import numpy as np
from numba import njit

_SPREAD = np.zeros(256, dtype=np.uint64)
for _b in range(256):
    _v = 0
    for _k in range(8):
        if _b >> _k & 1:
            _v |= 1 << (2 * _k)
    _SPREAD[_b] = _v


@njit(cache=True, nogil=True)
def _clmul_into(a, b, L, tab, prod):
    # prod: 2L+1 limbs, tab: (16, L+1) scratch
    for i in range(2 * L + 1):
        prod[i] = 0
    for i in range(L + 1):
        tab[0, i] = 0
        tab[1, i] = a[i] if i < L else np.uint64(0)
    for k in range(2, 16):
        if k & 1:
            for i in range(L + 1):
                tab[k, i] = tab[k - 1, i] ^ tab[1, i]
        else:
            h = k >> 1
            carry = np.uint64(0)
            for i in range(L + 1):
                v = tab[h, i]
                tab[k, i] = (v << np.uint64(1)) | carry
                carry = v >> np.uint64(63)
    for li in range(L):
        w = b[li]
        if w == 0:
            continue
        for q in range(16):
            nib = (w >> np.uint64(4 * q)) & np.uint64(15)
            if nib == 0:
                continue
            if q == 0:
                for i in range(L + 1):
                    prod[li + i] ^= tab[nib, i]
            else:
                s1 = np.uint64(4 * q)
                s2 = np.uint64(64 - 4 * q)
                for i in range(L + 1):
                    v = tab[nib, i]
                    prod[li + i] ^= v << s1
                    prod[li + i + 1] ^= v >> s2


@njit(cache=True, nogil=True)
def _square_into(a, L, spread, prod):
    for i in range(2 * L + 1):
        prod[i] = 0
    for li in range(L):
        w = a[li]
        lo = np.uint64(0)
        hi = np.uint64(0)
        for k in range(4):
            lo |= spread[(w >> np.uint64(8 * k)) & np.uint64(255)] << np.uint64(16 * k)
            hi |= spread[(w >> np.uint64(8 * k + 32)) & np.uint64(255)] << np.uint64(16 * k)
        prod[2 * li] = lo
        prod[2 * li + 1] = hi


@njit(cache=True, nogil=True)
def _reduce_into(prod, n, t, gbits, H, out, L):
    tl = t >> 6
    tb = t & 63
    m = n - tl
    while True:
        nz = False
        for i in range(m):
            if tb:
                v = prod[i + tl] >> np.uint64(tb)
                if i + tl + 1 < n:
                    v |= prod[i + tl + 1] << np.uint64(64 - tb)
            else:
                v = prod[i + tl]
            H[i] = v
            if v != 0:
                nz = True
        if not nz:
            break
        if tb:
            prod[tl] &= (np.uint64(1) << np.uint64(tb)) - np.uint64(1)
            for i in range(tl + 1, n):
                prod[i] = 0
        else:
            for i in range(tl, n):
                prod[i] = 0
        for j in range(gbits.shape[0]):
            k = gbits[j]
            kl = k >> 6
            ks = k & 63
            for i in range(m):
                v = H[i]
                if v == 0:
                    continue
                if i + kl < n:
                    prod[i + kl] ^= v << np.uint64(ks)
                if ks and i + kl + 1 < n:
                    prod[i + kl + 1] ^= v >> np.uint64(64 - ks)
    for i in range(L):
        out[i] = prod[i]


@njit(cache=True, nogil=True)
def _scratch(L):
    return (np.zeros((16, L + 1), dtype=np.uint64),
            np.zeros(2 * L + 1, dtype=np.uint64),
            np.zeros(2 * L + 1, dtype=np.uint64))


@njit(cache=True, nogil=True)
def mulmod(a, b, gbits, t):
    L = a.shape[0]
    tab, prod, H = _scratch(L)
    out = np.zeros(L, dtype=np.uint64)
    _clmul_into(a, b, L, tab, prod)
    _reduce_into(prod, 2 * L + 1, t, gbits, H, out, L)
    return out


@njit(cache=True, nogil=True)
def mul_rows(A, B, gbits, t):
    n, L = A.shape
    tab, prod, H = _scratch(L)
    out = np.zeros((n, L), dtype=np.uint64)
    for r in range(n):
        _clmul_into(A[r], B[r], L, tab, prod)
        _reduce_into(prod, 2 * L + 1, t, gbits, H, out[r], L)
    return out


@njit(cache=True, nogil=True)
def power_rows(base, count, gbits, t):
    """Rows base^0, base^1, ..., base^(count-1)."""
    L = base.shape[0]
    tab, prod, H = _scratch(L)
    out = np.zeros((count, L), dtype=np.uint64)
    if count == 0:
        return out
    out[0, 0] = 1
    for r in range(1, count):
        _clmul_into(out[r - 1], base, L, tab, prod)
        _reduce_into(prod, 2 * L + 1, t, gbits, H, out[r], L)
    return out


@njit(cache=True, nogil=True)
def prefix_products(A, gbits, t):
    n, L = A.shape
    tab, prod, H = _scratch(L)
    out = np.zeros((n, L), dtype=np.uint64)
    if n == 0:
        return out
    out[0] = A[0]
    for r in range(1, n):
        _clmul_into(out[r - 1], A[r], L, tab, prod)
        _reduce_into(prod, 2 * L + 1, t, gbits, H, out[r], L)
    return out


@njit(cache=True, nogil=True)
def unwind_inverses(A, prefix, inv_total, gbits, t):
    """Montgomery back-substitution: given the inverse of prod(A), invert every row."""
    n, L = A.shape
    tab, prod, H = _scratch(L)
    out = np.zeros((n, L), dtype=np.uint64)
    acc = inv_total.copy()
    tmp = np.zeros(L, dtype=np.uint64)
    for r in range(n - 1, 0, -1):
        _clmul_into(acc, prefix[r - 1], L, tab, prod)
        _reduce_into(prod, 2 * L + 1, t, gbits, H, out[r], L)
        _clmul_into(acc, A[r], L, tab, prod)
        _reduce_into(prod, 2 * L + 1, t, gbits, H, tmp, L)
        acc[:] = tmp
    if n:
        out[0] = acc
    return out


@njit(cache=True, nogil=True)
def pow_limbs(a, ebits, gbits, t):
    """a^e with the exponent given most-significant bit first."""
    L = a.shape[0]
    tab, prod, H = _scratch(L)
    acc = np.zeros(L, dtype=np.uint64)
    acc[0] = 1
    tmp = np.zeros(L, dtype=np.uint64)
    for j in range(ebits.shape[0]):
        _square_into(acc, L, _SPREAD, prod)
        _reduce_into(prod, 2 * L + 1, t, gbits, H, tmp, L)
        acc[:] = tmp
        if ebits[j]:
            _clmul_into(acc, a, L, tab, prod)
            _reduce_into(prod, 2 * L + 1, t, gbits, H, tmp, L)
            acc[:] = tmp
    return acc


@njit(cache=True, nogil=True)
def square_chain(x, count, gbits, t):
    """Rows x^(2^1), x^(2^2), ..., x^(2^count)."""
    L = x.shape[0]
    prod = np.zeros(2 * L + 1, dtype=np.uint64)
    H = np.zeros(2 * L + 1, dtype=np.uint64)
    out = np.zeros((count, L), dtype=np.uint64)
    cur = x.copy()
    for r in range(count):
        _square_into(cur, L, _SPREAD, prod)
        _reduce_into(prod, 2 * L + 1, t, gbits, H, out[r], L)
        cur[:] = out[r]
    return out


@njit(cache=True, nogil=True)
def _small_mod(a, q, dq):
    # a, q < 2^63; dq = deg q
    while True:
        if a == 0:
            return a
        da = 63
        while (a >> np.uint64(da)) == 0:
            da -= 1
        if da < dq:
            return a
        a ^= q << np.uint64(da - dq)


@njit(cache=True, nogil=True)
def sieve_window(lo, hi, qs, qdeg, residues):
    """alive[i] is False when some small q divides X^t + (lo + i).

    ``residues[j]`` must hold X^t mod qs[j].
    """
    n = hi - lo
    alive = np.ones(n, dtype=np.bool_)
    for i in range(n):
        g = np.uint64(lo + i)
        for j in range(qs.shape[0]):
            if _small_mod(g, qs[j], qdeg[j]) == residues[j]:
                alive[i] = False
                break
    return alive


def int_to_limbs(x, L):
    return np.frombuffer(x.to_bytes(8 * L, "little"), dtype=np.uint64).copy()


def limbs_to_int(row):
    return int.from_bytes(row.tobytes(), "little")


def ints_to_rows(values, L):
    buf = b"".join(v.to_bytes(8 * L, "little") for v in values)
    return np.frombuffer(buf, dtype=np.uint64).reshape(len(values), L).copy()


def rows_to_ints(rows):
    L = rows.shape[1]
    buf = np.ascontiguousarray(rows).tobytes()
    step = 8 * L
    return [int.from_bytes(buf[i:i + step], "little") for i in range(0, len(buf), step)]
