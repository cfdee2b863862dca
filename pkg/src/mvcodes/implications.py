"""Moving collisions between m1 and a multiple m2 with the same two primes.

All arithmetic happens inside the field of the larger modulus.  The root used
for m1 is gamma2^(sigma * m2/m1) with sigma = 1 unless stated otherwise; any
other root of order m1 differs from it by a unit exponent, which
`transport_collision` and `canonicalize_collision` recover by scanning.
"""

import math
from dataclasses import dataclass

from .errors import (DescentDegenerate, GuardExceeded, InternalContradiction, NotDivisible,
                     PreconditionCollisionInvalid, PrimeSetMismatch, RelationNotFound)
from .gf2 import DEFAULT_MAX_T, FieldElement, has_order_exactly
from .goodness import (CANONICAL, Canonical, Collision, InducedFrom, RootConvention,
                       resolve_root, verify_collision)
from .modulus import Modulus, crt, unit_part

SIGMA_SCAN_MAX_M = 10 ** 6


@dataclass(frozen=True)
class RootRelation:
    """gamma1 = gamma2^(sigma * m2/m1) for roots of order m1 and m2."""

    m1: Modulus
    m2: Modulus
    sigma: int = 1

    def __post_init__(self):
        _check_pair(self.m1, self.m2)
        if math.gcd(self.sigma, self.m1.m) != 1:
            raise ValueError(f"sigma={self.sigma} is not a unit modulo {self.m1.m}")

    @property
    def cofactor(self) -> int:
        return self.m2.m // self.m1.m

    def induced_root(self, gamma2: FieldElement) -> FieldElement:
        return gamma2 ** (self.sigma * self.cofactor)

    def holds(self, gamma1: FieldElement, gamma2: FieldElement) -> bool:
        return gamma1 == self.induced_root(gamma2)


def _check_pair(m1: Modulus, m2: Modulus):
    if m2.m % m1.m:
        raise NotDivisible(f"{m1.m} does not divide {m2.m}")
    if m1.primes != m2.primes:
        raise PrimeSetMismatch(f"primes {m1.primes} vs {m2.primes}")


def _units(m):
    return (s for s in range(1, m) if math.gcd(s, m) == 1)


def _scaled(c: Collision, scale: int, m: int, convention: RootConvention) -> Collision:
    return Collision(c.u * scale % m, c.v * scale % m, convention)


def canonicalize_collision(mod: Modulus, c: Collision, from_root: FieldElement,
                           to_root: FieldElement, max_m: int = SIGMA_SCAN_MAX_M) -> Collision:
    """Re-express a collision under from_root as one under to_root = from_root^sigma.

    The returned pair is (u/sigma, v/sigma) mod m.  The convention tag is carried
    over from `c`; callers that know the new root's provenance should retag it.
    """
    if mod.m > max_m:
        raise GuardExceeded(f"sigma scan limited to m <= {max_m}")
    for r in (from_root, to_root):
        if not has_order_exactly(r, mod.m, mod.primes):
            raise RelationNotFound(f"root does not have order {mod.m}")
    if from_root.ctx != to_root.ctx:
        raise RelationNotFound("roots live in different fields")
    x = from_root
    for sigma in range(1, mod.m):
        if x == to_root:
            if math.gcd(sigma, mod.m) != 1:  # pragma: no cover
                raise InternalContradiction("root of order m reached by a non-unit power")
            return _scaled(c, pow(sigma, -1, mod.m), mod.m, c.root_convention)
        x = x * from_root
    raise RelationNotFound("to_root is not a power of from_root")  # pragma: no cover


def transport_collision(mod: Modulus, c: Collision, target: RootConvention,
                        max_t: int = DEFAULT_MAX_T, max_m: int = SIGMA_SCAN_MAX_M) -> Collision:
    """Find the unit rescaling of `c` that is a collision under the `target` root.

    Works across fields: the two roots have conjugate minimal polynomials up to
    a unit power, so the smallest unit s with (s*u, s*v) valid under the target
    is returned.
    """
    if mod.m > max_m:
        raise GuardExceeded(f"sigma scan limited to m <= {max_m}")
    src = resolve_root(mod, c.root_convention, max_t)
    if not verify_collision(mod, c.u, c.v, src):
        raise PreconditionCollisionInvalid(f"({c.u}, {c.v}) is not a collision for {mod.m}")
    dst = resolve_root(mod, target, max_t)
    for s in _units(mod.m):
        cand = _scaled(c, s, mod.m, target)
        if verify_collision(mod, cand.u, cand.v, dst):
            return cand
    raise RelationNotFound(f"no unit rescaling of ({c.u}, {c.v}) works under the target root")


def scaling_for_pair(mod: Modulus, u: int, v: int, root: FieldElement,
                     max_m: int = SIGMA_SCAN_MAX_M) -> int:
    """Smallest unit sigma such that (u, v) is a collision under root^sigma."""
    if mod.m > max_m:
        raise GuardExceeded(f"sigma scan limited to m <= {max_m}")
    for sigma in _units(mod.m):
        if verify_collision(mod, u, v, root ** sigma):
            return sigma
    raise RelationNotFound(f"({u}, {v}) is not a collision under any root of order {mod.m}")


def _induced(parent: RootConvention, m2: Modulus, cofactor: int) -> InducedFrom:
    if isinstance(parent, Canonical):
        return InducedFrom(m2.m, cofactor)
    return InducedFrom(parent.m_parent, parent.scale * cofactor)


def lift_collision(m1: Modulus, m2: Modulus, c1: Collision,
                   max_t: int = DEFAULT_MAX_T) -> Collision:
    """A collision for m2 (canonical root) built from one for m1 with m1 | m2.

    c1 must be valid under gamma2^(m2/m1), gamma2 the canonical root of m2.  A
    c1 found under some other root of order m1 (for instance the canonical
    root of m1's own field) is first rescaled onto that root.
    """
    _check_pair(m1, m2)
    k = m2.m // m1.m
    gamma2 = resolve_root(m2, CANONICAL, max_t)
    gamma1 = gamma2 ** k
    induced = InducedFrom(m2.m, k)
    if not verify_collision(m1, c1.u, c1.v, gamma1):
        try:
            c1 = transport_collision(m1, c1, induced, max_t)
        except RelationNotFound as exc:
            raise PreconditionCollisionInvalid(str(exc)) from exc
    # s01^1 and s10^1 carry the sigma = 1 lift onto the two prime-power components
    b1, b2 = m2.q1, m2.q2

    def lift(x):
        return crt(m1.s10 * x * k % b1, b1, m1.s01 * x * k % b2, b2)

    c2 = Collision(lift(c1.u), lift(c1.v), CANONICAL)
    check = verify_collision(m2, c2.u, c2.v, gamma2)
    if not check:
        raise InternalContradiction(f"lifted pair ({c2.u}, {c2.v}) fails: {check.reason.value}")
    return c2


@dataclass(frozen=True)
class Descent:
    m1: Modulus
    c1: Collision
    omega: tuple[int, int]

    def to_json(self, m2: Modulus, c2: Collision) -> dict:
        return {"m2": m2.m, "collision2": c2.to_json(), "omega": list(self.omega),
                "m1": self.m1.m, "collision1": self.c1.to_json(), "verified": True}


def descend_collision(m2: Modulus, c2: Collision, max_t: int = DEFAULT_MAX_T) -> Descent:
    """Collision for m1 = m2 / (p1^w1 p2^w2), w_i the smaller valuation of u and v at p_i."""
    gamma2 = resolve_root(m2, c2.root_convention, max_t)
    check = verify_collision(m2, c2.u, c2.v, gamma2)
    if not check:
        raise PreconditionCollisionInvalid(f"({c2.u}, {c2.v}) fails for {m2.m}: {check.reason.value}")
    i1, i2, sig_u = unit_part(c2.u, m2)
    j1, j2, sig_v = unit_part(c2.v, m2)
    w1, w2 = min(i1, j1), min(i2, j2)
    if w1 == 0 and w2 == 0:
        raise DescentDegenerate(f"({c2.u}, {c2.v}) share no prime power; nothing to descend")
    a1, a2 = m2.alpha1 - w1, m2.alpha2 - w2
    if a1 == 0 or a2 == 0:
        raise DescentDegenerate("quotient would have a single prime divisor")
    cofactor = m2.p1 ** w1 * m2.p2 ** w2
    m1 = Modulus.of(m2.m // cofactor)
    n1, n2 = m1.q1, m1.q2
    # inverses of s01^1 and s10^1 (sigma = 1) modulo the reduced prime powers
    t01 = pow(m1.s01, -1, n2)
    t10 = pow(m1.s10, -1, n1)

    def descend(i, j, sig):
        core = m2.p1 ** (i - w1) * m2.p2 ** (j - w2) * sig
        return crt(m2.s10 * t10 * core % n1, n1, m2.s01 * t01 * core % n2, n2)

    c1 = Collision(descend(i1, i2, sig_u), descend(j1, j2, sig_v),
                   _induced(c2.root_convention, m2, cofactor))
    gamma1 = gamma2 ** cofactor
    check = verify_collision(m1, c1.u, c1.v, gamma1)
    if not check:
        raise InternalContradiction(f"descended pair ({c1.u}, {c1.v}) fails: {check.reason.value}")
    return Descent(m1, c1, (w1, w2))
