"""Arithmetic in GF(2)[X] and GF(2^t).

Polynomials over GF(2) are plain Python ints: bit i holds the coefficient of
X^i and the zero polynomial is 0 (degree -1).  Field elements of GF(2^t) are
residues of degree < t modulo a fixed irreducible of degree t.

Single operations run in pure Python; degrees above ``KERNEL_MIN_T`` hand
multiplication and exponentiation to the numba kernels, and the ``*_rows``
methods expose the batched kernels to the search code.
"""

from functools import lru_cache

import numpy as np

from . import _kernels as K
from .errors import CtxMismatch, DivisionByZero, GuardExceeded, NotFound

DEFAULT_MAX_T = 128
KERNEL_MIN_T = 160
SIEVE_DEGREE = 10

BitPoly = int

_SQ_TABLE = str.maketrans(
    {f"{d:x}": f"{sum(((d >> k) & 1) << (2 * k) for k in range(4)):02x}" for d in range(16)}
)


def degree(a: BitPoly) -> int:
    return a.bit_length() - 1


def clmul(a: BitPoly, b: BitPoly) -> BitPoly:
    """Carry-less product of two GF(2)[X] polynomials."""
    if a.bit_count() < b.bit_count():
        a, b = b, a
    if b.bit_count() <= 16:
        r = 0
        while b:
            low = b & -b
            r ^= a << (low.bit_length() - 1)
            b ^= low
        return r
    tab = [0] * 16
    tab[1] = a
    for k in range(2, 16):
        tab[k] = tab[k >> 1] << 1 if k % 2 == 0 else tab[k - 1] ^ a
    r = 0
    shift = 0
    while b:
        nib = b & 15
        if nib:
            r ^= tab[nib] << shift
        b >>= 4
        shift += 4
    return r


def square(a: BitPoly) -> BitPoly:
    if a == 0:
        return 0
    return int(format(a, "x").translate(_SQ_TABLE), 16)


def poly_divmod(a: BitPoly, b: BitPoly) -> tuple[BitPoly, BitPoly]:
    if b == 0:
        raise DivisionByZero("division by the zero polynomial")
    db = b.bit_length()
    q = 0
    while a.bit_length() >= db:
        s = a.bit_length() - db
        q |= 1 << s
        a ^= b << s
    return q, a


def poly_mod(a: BitPoly, b: BitPoly) -> BitPoly:
    return poly_divmod(a, b)[1]


def poly_gcd(a: BitPoly, b: BitPoly) -> BitPoly:
    while b:
        db = b.bit_length()
        while a.bit_length() >= db:
            a ^= b << (a.bit_length() - db)
        a, b = b, a
    return a


def poly_powmod(a: BitPoly, e: int, f: BitPoly) -> BitPoly:
    r = 1
    a = poly_mod(a, f)
    while e:
        if e & 1:
            r = poly_mod(clmul(r, a), f)
        a = poly_mod(square(a), f)
        e >>= 1
    return poly_mod(r, f)


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


class QuotientRing:
    """GF(2)[X] modulo a monic polynomial f of degree t >= 1.

    No irreducibility is assumed; :class:`FieldCtx` adds that.
    """

    def __init__(self, modulus_poly: BitPoly):
        t = degree(modulus_poly)
        if t < 1:
            raise ValueError("modulus polynomial must have degree >= 1")
        self.t = t
        self.modulus_poly = modulus_poly
        self._mask = (1 << t) - 1
        self._low = tuple(k for k in range(t) if modulus_poly >> k & 1)
        self.limbs = (t + 63) // 64
        self.gbits = np.array(self._low, dtype=np.int64)

    def reduce(self, a: BitPoly) -> BitPoly:
        t, mask, low = self.t, self._mask, self._low
        while a >> t:
            h = a >> t
            a &= mask
            for k in low:
                a ^= h << k
        return a

    def mul(self, a: int, b: int) -> int:
        if self.t >= KERNEL_MIN_T:
            L = self.limbs
            out = K.mulmod(K.int_to_limbs(a, L), K.int_to_limbs(b, L), self.gbits, self.t)
            return K.limbs_to_int(out)
        return self.reduce(clmul(a, b))

    def sqr(self, a: int) -> int:
        return self.reduce(square(a))

    def _pow_nonneg(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if self.t >= KERNEL_MIN_T:
            bits = np.frombuffer(format(e, "b").encode(), dtype=np.uint8) - 48
            out = K.pow_limbs(K.int_to_limbs(a, self.limbs), bits, self.gbits, self.t)
            return K.limbs_to_int(out)
        r = 1
        for bit in format(e, "b"):
            r = self.sqr(r)
            if bit == "1":
                r = self.mul(r, a)
        return r

    def frobenius_chain(self, x: int, count: int) -> list[int]:
        """[x^(2^1), ..., x^(2^count)] reduced modulo f."""
        if self.t >= 64:
            rows = K.square_chain(K.int_to_limbs(x, self.limbs), count, self.gbits, self.t)
            return K.rows_to_ints(rows)
        out = []
        for _ in range(count):
            x = self.sqr(x)
            out.append(x)
        return out


def is_irreducible(f: BitPoly) -> bool:
    """Rabin's test: f | X^(2^t) - X and gcd(f, X^(2^(t/r)) - X) = 1 for primes r | t."""
    t = degree(f)
    if t < 1:
        return False
    ring = QuotientRing(f)
    x = ring.reduce(2)
    chain = ring.frobenius_chain(x, t)
    if chain[-1] != x:
        return False
    for r in _prime_factors(t):
        if poly_gcd(f, chain[t // r - 1] ^ x) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def small_irreducibles(max_degree: int = SIEVE_DEGREE) -> tuple[int, ...]:
    found = []
    for d in range(1, max_degree + 1):
        for g in range(1 << d):
            f = (1 << d) | g
            if all(poly_mod(f, q) for q in found if 2 * degree(q) <= d):
                found.append(f)
    return tuple(found)


@lru_cache(maxsize=None)
def _smallest_irreducible(t: int) -> BitPoly:
    if t <= SIEVE_DEGREE + 1:
        for g in range(1 << t):
            f = (1 << t) | g
            if is_irreducible(f):
                return f
        raise NotFound(f"no irreducible of degree {t}")  # pragma: no cover
    smalls = small_irreducibles()
    qs = np.array(smalls, dtype=np.uint64)
    qdeg = np.array([degree(q) for q in smalls], dtype=np.int64)
    residues = np.array([poly_powmod(2, t, q) for q in smalls], dtype=np.uint64)
    lo, hi = 0, 1 << 12
    while lo < (1 << t):
        hi = min(hi, 1 << t, 1 << 62)
        alive = K.sieve_window(lo, hi, qs, qdeg, residues)
        for i in np.flatnonzero(alive):
            f = (1 << t) | (lo + int(i))
            if is_irreducible(f):
                return f
        lo, hi = hi, 2 * hi
    raise NotFound(f"no irreducible of degree {t}")  # pragma: no cover


def find_irreducible(t: int, max_t: int = DEFAULT_MAX_T) -> BitPoly:
    """Smallest monic irreducible of degree t, ordering polynomials as integers."""
    if t < 1:
        raise ValueError("degree must be positive")
    if t > max_t:
        raise GuardExceeded(f"extension degree {t} exceeds max_t={max_t}")
    return _smallest_irreducible(t)


class FieldCtx(QuotientRing):
    """The field GF(2^t) = GF(2)[X]/(modulus_poly).

    Raw arithmetic works on ints (``ctx.mul(a, b)``); :meth:`element` wraps a
    value as a :class:`FieldElement` with operator support.
    """

    def __init__(self, t: int, modulus_poly: BitPoly, check: bool = True):
        if degree(modulus_poly) != t:
            raise ValueError(f"modulus polynomial has degree {degree(modulus_poly)}, expected {t}")
        if check and not is_irreducible(modulus_poly):
            raise ValueError("modulus polynomial is reducible")
        super().__init__(modulus_poly)

    @classmethod
    def of_degree(cls, t: int, max_t: int = DEFAULT_MAX_T) -> "FieldCtx":
        return _ctx_cache(t, find_irreducible(t, max_t))

    @property
    def order(self) -> int:
        return 1 << self.t

    def __repr__(self):
        return f"FieldCtx(t={self.t}, modulus_poly={self.modulus_poly:#x})"

    def __eq__(self, other):
        return (isinstance(other, FieldCtx) and self.t == other.t
                and self.modulus_poly == other.modulus_poly)

    def __hash__(self):
        return hash((self.t, self.modulus_poly))

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def x(self) -> "FieldElement":
        return FieldElement(self, self.reduce(2))

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        # binary extended Euclid; invariants u = g1*a, v = g2*a (mod f)
        u, v = a, self.modulus_poly
        g1, g2 = 1, 0
        while u != 1:
            j = u.bit_length() - v.bit_length()
            if j < 0:
                u, v, g1, g2 = v, u, g2, g1
                j = -j
            u ^= v << j
            g1 ^= g2 << j
            if u == 0:  # pragma: no cover - impossible for irreducible moduli
                raise DivisionByZero("element is not invertible")
        return self.reduce(g1)

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivisionByZero("zero to a negative power")
            return 1 if e == 0 else 0
        if e < 0:
            a, e = self.inv(a), -e
        return self._pow_nonneg(a, e % ((1 << self.t) - 1))

    def to_hex(self, a: int) -> str:
        return a.to_bytes((self.t + 7) // 8, "little").hex()

    def from_hex(self, text: str) -> int:
        value = int.from_bytes(bytes.fromhex(text), "little")
        if value >> self.t:
            raise ValueError(f"{text!r} is not an element of GF(2^{self.t})")
        return value

    def modulus_bytes(self) -> bytes:
        return self.modulus_poly.to_bytes((self.t + 8) // 8, "little")

    # -- batched kernels ---------------------------------------------------

    def to_rows(self, values) -> np.ndarray:
        return K.ints_to_rows(list(values), self.limbs)

    def from_rows(self, rows: np.ndarray) -> list[int]:
        return K.rows_to_ints(rows)

    def mul_rows(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        return K.mul_rows(A, B, self.gbits, self.t)

    def power_rows(self, base: int, count: int) -> np.ndarray:
        return K.power_rows(K.int_to_limbs(base, self.limbs), count, self.gbits, self.t)

    def inverse_rows(self, A: np.ndarray) -> np.ndarray:
        """Invert every (nonzero) row with one field inversion."""
        if len(A) == 0:
            return A.copy()
        prefix = K.prefix_products(A, self.gbits, self.t)
        total = K.limbs_to_int(prefix[-1])
        inv_total = K.int_to_limbs(self.inv(total), self.limbs)
        return K.unwind_inverses(A, prefix, inv_total, self.gbits, self.t)

    # -- numpy arrays of small-field elements (t <= 32) ----------------------

    def mul_array(self, a: np.ndarray, b) -> np.ndarray:
        """Elementwise product of uint64 arrays; requires t <= 32."""
        if self.t > 32:
            raise ValueError("vectorised multiplication needs t <= 32")
        a = np.asarray(a, dtype=np.uint64)
        b = np.broadcast_to(np.asarray(b, dtype=np.uint64), a.shape)
        r = np.zeros(a.shape, dtype=np.uint64)
        for k in range(self.t):
            bit = (b >> np.uint64(k)) & np.uint64(1)
            r ^= (a << np.uint64(k)) * bit
        t = np.uint64(self.t)
        mask = np.uint64(self._mask)
        while True:
            h = r >> t
            if not h.any():
                return r
            r &= mask
            for k in self._low:
                r ^= h << np.uint64(k)


@lru_cache(maxsize=None)
def _ctx_cache(t: int, poly: int) -> FieldCtx:
    return FieldCtx(t, poly, check=False)


class FieldElement:
    """An element of GF(2^t) tied to its :class:`FieldCtx`."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx: FieldCtx, value: int):
        if value < 0 or value >> ctx.t:
            raise ValueError(f"{value:#x} has a bit at or above t={ctx.t}")
        self.ctx = ctx
        self.value = value

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise CtxMismatch("operands live in different fields")
            return other.value
        if isinstance(other, int):
            return FieldElement(self.ctx, other).value
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, self.value ^ b)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, self.ctx.mul(self.value, b))

    __rmul__ = __mul__

    def inv(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inv(self.value))

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, self.ctx.mul(self.value, self.ctx.inv(b)))

    def __rtruediv__(self, other):
        a = self._coerce(other)
        if a is NotImplemented:
            return a
        return FieldElement(self.ctx, self.ctx.mul(a, self.ctx.inv(self.value)))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow(self.value, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.t, self.ctx.modulus_poly, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FieldElement({self.hex()}, t={self.ctx.t})"

    def hex(self) -> str:
        return self.ctx.to_hex(self.value)


def has_order_exactly(z: FieldElement, m: int, prime_divisors) -> bool:
    """True iff z^m = 1 and z^(m/p) != 1 for every listed prime p | m."""
    if not z:
        raise DivisionByZero("zero has no multiplicative order")
    if z ** m != 1:
        return False
    return all(z ** (m // p) != 1 for p in prime_divisors)


def find_root_of_unity(ctx: FieldCtx, m: int, prime_divisors=None) -> FieldElement:
    """First z^((2^t-1)/m) of order exactly m, scanning z = X, X+1, X^2, ... by integer value."""
    if m == 1:
        return ctx.one
    group = (1 << ctx.t) - 1
    if group % m:
        raise ValueError(f"{m} does not divide 2^{ctx.t} - 1")
    primes = _prime_factors(m) if prime_divisors is None else list(prime_divisors)
    cofactor = group // m
    for z in range(2, 1 << ctx.t):
        g = ctx.element(z) ** cofactor
        if has_order_exactly(g, m, primes):
            return g
    raise NotFound(f"no element of order {m} in GF(2^{ctx.t})")  # pragma: no cover
