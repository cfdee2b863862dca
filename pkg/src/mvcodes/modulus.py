"""Number theory for moduli m = p1^a1 * p2^a2.

Covers factorisation into two odd prime powers, ord_m(2), the canonical set
{s01, s10, 1}, CRT, membership in the exceptional set E and unit-part
decompositions.  Residues are always normalised to [0, m).
"""

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import InternalContradiction, ModuliNotCoprime, NotInM2, ZeroResidue


def _factor(n: int) -> dict[int, int]:
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def factor_two_prime_powers(m: int) -> tuple[int, int, int, int]:
    """Return (p1, alpha1, p2, alpha2) with p1 < p2, or raise NotInM2."""
    if m < 3:
        raise NotInM2(m, "modulus must be at least 3")
    if m % 2 == 0:
        raise NotInM2(m, "even modulus")
    f = _factor(m)
    if len(f) == 1:
        (p, a), = f.items()
        what = "prime" if a == 1 else f"prime power {p}^{a}"
        raise NotInM2(m, f"{what}: only one prime divisor")
    if len(f) > 2:
        raise NotInM2(m, f"{len(f)} distinct prime divisors {sorted(f)}")
    (p1, a1), (p2, a2) = sorted(f.items())
    return p1, a1, p2, a2


def in_m2(m: int) -> bool:
    try:
        factor_two_prime_powers(m)
    except NotInM2:
        return False
    return True


def _order_of_two_direct(m: int) -> int:
    x, t = 2 % m, 1
    while x != 1:
        x = 2 * x % m
        t += 1
        if t > m:
            raise ValueError(f"2 is not a unit modulo {m}")
    return t


def ord2(m: int) -> int:
    """Multiplicative order of 2 modulo odd m >= 3.

    Computed twice: by direct doubling and as the lcm of the orders modulo
    each prime-power factor.  A disagreement is a bug.
    """
    if m < 3 or m % 2 == 0:
        raise ValueError("ord2 needs an odd modulus >= 3")
    direct = _order_of_two_direct(m)
    via_lcm = 1
    for p, a in _factor(m).items():
        via_lcm = math.lcm(via_lcm, _order_of_two_direct(p ** a))
    if direct != via_lcm:  # pragma: no cover
        raise InternalContradiction(f"ord_{m}(2): doubling gave {direct}, lcm gave {via_lcm}")
    return direct


def crt(a1: int, n1: int, a2: int, n2: int) -> int:
    """The unique x in [0, n1*n2) with x = a1 (mod n1) and x = a2 (mod n2)."""
    if math.gcd(n1, n2) != 1:
        raise ModuliNotCoprime(f"gcd({n1}, {n2}) = {math.gcd(n1, n2)}")
    n = n1 * n2
    if n1 == 1:
        return a2 % n
    return (a1 + n1 * ((a2 - a1) * pow(n1, -1, n2) % n2)) % n


def valuation(x: int, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@dataclass(frozen=True)
class Modulus:
    m: int
    p1: int
    alpha1: int
    p2: int
    alpha2: int
    t: int
    s01: int
    s10: int

    @classmethod
    def of(cls, m: int) -> "Modulus":
        return _modulus(m)

    @property
    def q1(self) -> int:
        return self.p1 ** self.alpha1

    @property
    def q2(self) -> int:
        return self.p2 ** self.alpha2

    @property
    def primes(self) -> tuple[int, int]:
        return (self.p1, self.p2)

    def to_json(self) -> dict:
        return {"m": self.m, "p1": self.p1, "alpha1": self.alpha1, "p2": self.p2,
                "alpha2": self.alpha2, "t": self.t, "s01": self.s01, "s10": self.s10}


@lru_cache(maxsize=4096)
def _modulus(m: int) -> Modulus:
    p1, a1, p2, a2 = factor_two_prime_powers(m)
    q1, q2 = p1 ** a1, p2 ** a2
    return Modulus(m=m, p1=p1, alpha1=a1, p2=p2, alpha2=a2, t=ord2(m),
                   s01=crt(0, q1, 1, q2), s10=crt(1, q1, 0, q2))


def canonical_set(mod: Modulus) -> tuple[int, int, int]:
    """(s01, s10, 1): s01 = 0 mod p1^a1, 1 mod p2^a2 and s10 the other way round."""
    return (mod.s01, mod.s10, 1)


def in_E(e: int, mod: Modulus) -> bool:
    """True iff neither p1^alpha1 nor p2^alpha2 divides e."""
    return e % mod.q1 != 0 and e % mod.q2 != 0


def unit_part(x: int, mod: Modulus) -> tuple[int, int, int]:
    """Write x = p1^i1 * p2^i2 * sigma (mod m) with sigma a unit.

    i1 is the p1-adic valuation of the representative in [1, m), capped at
    alpha1 (likewise i2).
    """
    r = x % mod.m
    if r == 0:
        raise ZeroResidue(f"{x} = 0 mod {mod.m}")
    i1 = min(valuation(r, mod.p1), mod.alpha1)
    i2 = min(valuation(r, mod.p2), mod.alpha2)
    sig1 = _unit_component(r, mod.p1, i1, mod.alpha1, mod.p2 ** i2)
    sig2 = _unit_component(r, mod.p2, i2, mod.alpha2, mod.p1 ** i1)
    return i1, i2, crt(sig1, mod.q1, sig2, mod.q2)


def _unit_component(r, p, i, alpha, other):
    q = p ** alpha
    if i == alpha:
        return 1
    # p^i * other * sigma = r (mod q) with r = p^i * r', p not dividing r'
    return (r // p ** i) * pow(other, -1, q) % q
