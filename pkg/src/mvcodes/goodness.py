"""Deciding goodness of m = p1^a1 * p2^a2 and building decoding polynomials.

m is good iff the map

    u  ->  rho(g^(s10*u), g^(s01*u)),   rho(z1, z2) = (1 + 1/z2) / (1 + 1/z1),

is not injective on the exceptional set E.  A colliding pair (u, v) is the
certificate; the null vector of the 3x3 matrix built from it gives the
3-monomial decoding polynomial.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Optional, Union

import numpy as np

from .errors import (DomainViolation, GuardExceeded, InternalContradiction,
                     PreconditionCollisionInvalid)
from .gf2 import DEFAULT_MAX_T, FieldCtx, FieldElement, find_root_of_unity, has_order_exactly
from .linalg import nullspace, solve
from .modulus import Modulus, canonical_set, in_E

BRUTEFORCE_MAX_M = 5000
SMALL_POLY_MAX_M = 100


@dataclass(frozen=True)
class Canonical:
    """The root returned by find_root_of_unity in GF(2^ord_m(2))."""


@dataclass(frozen=True)
class InducedFrom:
    """The root g^scale, g being the canonical root of m_parent (in its field)."""

    m_parent: int
    scale: int


RootConvention = Union[Canonical, InducedFrom]
CANONICAL = Canonical()


@dataclass(frozen=True)
class Collision:
    u: int
    v: int
    root_convention: RootConvention = CANONICAL

    def to_json(self) -> dict:
        out = {"u": self.u, "v": self.v}
        if isinstance(self.root_convention, InducedFrom):
            out["root"] = {"m_parent": self.root_convention.m_parent,
                           "scale": self.root_convention.scale}
        return out


# -- roots ---------------------------------------------------------------------

def field_for(mod: Modulus, max_t: int = DEFAULT_MAX_T) -> FieldCtx:
    return FieldCtx.of_degree(mod.t, max_t)


@lru_cache(maxsize=None)
def _canonical_root(m: int) -> FieldElement:
    mod = Modulus.of(m)
    ctx = FieldCtx.of_degree(mod.t, max_t=mod.t)
    return find_root_of_unity(ctx, m, mod.primes)


def canonical_root(mod: Modulus, max_t: int = DEFAULT_MAX_T) -> FieldElement:
    if mod.t > max_t:
        raise GuardExceeded(f"ord_{mod.m}(2) = {mod.t} exceeds max_t={max_t}")
    return _canonical_root(mod.m)


def resolve_root(mod: Modulus, convention: RootConvention,
                 max_t: int = DEFAULT_MAX_T) -> FieldElement:
    if isinstance(convention, Canonical):
        return canonical_root(mod, max_t)
    parent = Modulus.of(convention.m_parent)
    return canonical_root(parent, max_t) ** convention.scale


# -- rho and collisions ----------------------------------------------------------

def rho(z1: FieldElement, z2: FieldElement) -> FieldElement:
    """(1 + 1/z2) / (1 + 1/z1), defined for z1 not in {0, 1} and z2 != 0."""
    if not z1 or z1 == 1:
        raise DomainViolation("rho needs z1 outside {0, 1}")
    if not z2:
        raise DomainViolation("rho needs z2 != 0")
    return (1 + z2.inv()) / (1 + z1.inv())


def rho_at(mod: Modulus, u: int, root: FieldElement) -> FieldElement:
    return rho(root ** (mod.s10 * u % mod.m), root ** (mod.s01 * u % mod.m))


class Reason(Enum):
    OK = "ok"
    BAD_ROOT = "root does not have order m"
    NOT_IN_E = "not in E"
    CONGRUENT = "u = v (mod m)"
    RHO_DIFFERS = "rho values differ"


@dataclass(frozen=True)
class CollisionCheck:
    reason: Reason

    def __bool__(self):
        return self.reason is Reason.OK


def verify_collision(mod: Modulus, u: int, v: int, root: FieldElement) -> CollisionCheck:
    if not has_order_exactly(root, mod.m, mod.primes):
        return CollisionCheck(Reason.BAD_ROOT)
    if not (in_E(u, mod) and in_E(v, mod)):
        return CollisionCheck(Reason.NOT_IN_E)
    if (u - v) % mod.m == 0:
        return CollisionCheck(Reason.CONGRUENT)
    if rho_at(mod, u, root) != rho_at(mod, v, root):
        return CollisionCheck(Reason.RHO_DIFFERS)
    return CollisionCheck(Reason.OK)


def check_collision(mod: Modulus, c: Collision, max_t: int = DEFAULT_MAX_T) -> CollisionCheck:
    return verify_collision(mod, c.u, c.v, resolve_root(mod, c.root_convention, max_t))


def exceptional_residues(mod: Modulus) -> np.ndarray:
    u = np.arange(1, mod.m, dtype=np.int64)
    return u[(u % mod.q1 != 0) & (u % mod.q2 != 0)]


def _root_or_canonical(mod, root, max_t):
    return canonical_root(mod, max_t) if root is None else root


def _factored_tables(mod: Modulus, root: FieldElement):
    # rho depends on u only through (u mod q2, u mod q1):
    # numerator 1 + z2^(-a) with z2 = g^s01 of order q2, denominator 1 + z1^(-b).
    ctx = root.ctx
    q1, q2 = mod.q1, mod.q2
    z1 = (root ** mod.s10).value
    z2 = (root ** mod.s01).value
    P1 = ctx.power_rows(z1, q1)
    P2 = ctx.power_rows(z2, q2)
    numer = P2[(-np.arange(q2)) % q2]
    numer[:, 0] ^= np.uint64(1)
    denom = P1[(-np.arange(q1)) % q1]
    denom[:, 0] ^= np.uint64(1)
    denom_inv = np.zeros_like(denom)
    denom_inv[1:] = ctx.inverse_rows(denom[1:])
    return numer, denom_inv


def rho_keys(mod: Modulus, root: FieldElement, us: np.ndarray, workers: int = 1) -> list[int]:
    """Canonical bit-vectors of rho at each u (all u must lie in E)."""
    ctx = root.ctx
    numer, denom_inv = _factored_tables(mod, root)

    def chunk_keys(chunk):
        rows = ctx.mul_rows(numer[chunk % mod.q2], denom_inv[chunk % mod.q1])
        return ctx.from_rows(rows)

    if workers <= 1 or len(us) < 2 * workers:
        return chunk_keys(us)
    parts = np.array_split(us, workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(chunk_keys, parts))
    return [k for part in results for k in part]


def collision_classes(mod: Modulus, root: Optional[FieldElement] = None, workers: int = 1,
                      max_t: int = DEFAULT_MAX_T) -> list[list[int]]:
    """Every rho-fibre of size >= 2, as sorted lists, ordered by smallest member."""
    root = _root_or_canonical(mod, root, max_t)
    us = exceptional_residues(mod)
    groups: dict[int, list[int]] = {}
    for u, key in zip(us.tolist(), rho_keys(mod, root, us, workers)):
        groups.setdefault(key, []).append(u)
    classes = [sorted(g) for g in groups.values() if len(g) > 1]
    return sorted(classes)


def collision_search(mod: Modulus, root: Optional[FieldElement] = None, workers: int = 1,
                     max_t: int = DEFAULT_MAX_T) -> Optional[Collision]:
    """Lexicographically smallest colliding pair (u < v), or None if rho is injective on E."""
    classes = collision_classes(mod, root, workers, max_t)
    if not classes:
        return None
    u, v = classes[0][:2]
    return Collision(u, v)


def collision_search_bruteforce(mod: Modulus, root: Optional[FieldElement] = None,
                                max_t: int = DEFAULT_MAX_T,
                                max_m: int = BRUTEFORCE_MAX_M) -> Optional[Collision]:
    """Quadratic pairwise scan over E straight from the definition of rho."""
    if mod.m > max_m:
        raise GuardExceeded(f"brute-force search limited to m <= {max_m}")
    root = _root_or_canonical(mod, root, max_t)
    ctx = root.ctx
    m = mod.m
    us = exceptional_residues(mod)
    powers = ctx.power_rows(root.value, m)
    # 1/z2 = g^(-s01 u), 1/z1 = g^(-s10 u)
    num = powers[(-mod.s01 * us) % m]
    num[:, 0] ^= np.uint64(1)
    den = powers[(-mod.s10 * us) % m]
    den[:, 0] ^= np.uint64(1)
    values = ctx.from_rows(ctx.mul_rows(num, ctx.inverse_rows(den)))
    ulist = us.tolist()
    for i, x in enumerate(values):
        try:
            j = values.index(x, i + 1)
        except ValueError:
            continue
        return Collision(ulist[i], ulist[j])
    return None


def is_good(mod: Modulus, workers: int = 1, max_t: int = DEFAULT_MAX_T) -> bool:
    return collision_search(mod, workers=workers, max_t=max_t) is not None


# -- decoding polynomials ----------------------------------------------------------

@dataclass(frozen=True)
class DecodingPoly:
    """Sparse polynomial sum(coef * X^exp) with exponents in [0, m), sorted ascending."""

    mod: Modulus
    root: FieldElement = field(repr=False)
    monomials: tuple[tuple[int, FieldElement], ...]

    @property
    def k(self) -> int:
        return len(self.monomials)

    def __call__(self, x: FieldElement) -> FieldElement:
        total = x.ctx.zero
        for e, c in self.monomials:
            total = total + c * x ** e
        return total

    def to_json(self) -> dict:
        return {"monomials": [{"exp": e, "coef": c.hex()} for e, c in self.monomials]}


def _make_poly(mod, root, terms) -> DecodingPoly:
    merged: dict[int, FieldElement] = {}
    for e, c in terms:
        e %= mod.m
        merged[e] = merged.get(e, root.ctx.zero) + c
    monos = tuple(sorted((e, c) for e, c in merged.items() if c))
    return DecodingPoly(mod, root, monos)


def verify_decoding_poly(poly: DecodingPoly) -> bool:
    """Distinct nonzero monomials, P(1) = 1 and P(g^s) = 0 on the canonical set."""
    mod, root = poly.mod, poly.root
    exps = [e % mod.m for e, _ in poly.monomials]
    if len(set(exps)) != len(exps) or any(not c for _, c in poly.monomials):
        return False
    if poly(root.ctx.one) != 1:
        return False
    return all(not poly(root ** s) for s in canonical_set(mod))


def build_matrix_A(mod: Modulus, u: int, v: int, root: FieldElement) -> list[list[FieldElement]]:
    """Rows (g^(s u), g^(s v), 1) for s = s01, s10, 1."""
    one = root.ctx.one
    return [[root ** (s * u % mod.m), root ** (s * v % mod.m), one] for s in canonical_set(mod)]


def det3(A) -> FieldElement:
    (a, b, c), (d, e, f), (g, h, i) = A
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def decoding_poly_from_collision(mod: Modulus, c: Collision,
                                 max_t: int = DEFAULT_MAX_T) -> DecodingPoly:
    """P(X) = R(X)/R(1) with R = c1 X^u + c2 X^v + c3 spanning the null space of A."""
    root = resolve_root(mod, c.root_convention, max_t)
    check = verify_collision(mod, c.u, c.v, root)
    if not check:
        raise PreconditionCollisionInvalid(f"({c.u}, {c.v}) is not a collision: {check.reason.value}")
    basis = nullspace(build_matrix_A(mod, c.u, c.v, root))
    if len(basis) != 1:
        raise InternalContradiction(f"null space of A has dimension {len(basis)}, expected 1")
    c1, c2, c3 = basis[0]
    if not (c1 and c2 and c3):
        raise InternalContradiction("null vector of A has a zero entry")
    r1 = c1 + c2 + c3
    if not r1:
        raise InternalContradiction("R(1) = 0")
    poly = _make_poly(mod, root, [(c.u, c1 / r1), (c.v, c2 / r1), (0, c3 / r1)])
    if poly.k != 3:
        raise InternalContradiction(f"expected 3 monomials, got {poly.k}")
    return poly


def product_decoding_poly(mod: Modulus, root: Optional[FieldElement] = None,
                          max_t: int = DEFAULT_MAX_T) -> DecodingPoly:
    """Expand prod over s in S_m of (X - g^s)/(1 - g^s); at most 4 monomials."""
    root = _root_or_canonical(mod, root, max_t)
    ctx = root.ctx
    coeffs = [ctx.one]
    for s in canonical_set(mod):
        r = root ** s
        scale = (1 + r).inv()
        shifted = [ctx.zero] + coeffs
        coeffs = [(a + r * b) * scale for a, b in zip(shifted, coeffs + [ctx.zero])]
    return _make_poly(mod, root, list(enumerate(coeffs)))


def best_decoding_poly(mod: Modulus, max_t: int = DEFAULT_MAX_T) -> DecodingPoly:
    """The 3-monomial polynomial when m is good, the product form otherwise."""
    c = collision_search(mod, max_t=max_t)
    if c is None:
        return product_decoding_poly(mod, max_t=max_t)
    return decoding_poly_from_collision(mod, c, max_t)


def no_small_decoding_poly(mod: Modulus, root: Optional[FieldElement] = None,
                           max_t: int = DEFAULT_MAX_T, max_m: int = SMALL_POLY_MAX_M) -> bool:
    """Exhaustively confirm there is no decoding polynomial with 1 or 2 monomials."""
    if mod.m > max_m:
        raise GuardExceeded(f"exhaustive check limited to m <= {max_m}")
    root = _root_or_canonical(mod, root, max_t)
    ctx = root.ctx
    m = mod.m
    S = canonical_set(mod)
    powers = [root ** j for j in range(m)]
    rhs = [ctx.zero] * len(S) + [ctx.one]

    def rows_for(exps):
        return [[powers[s * e % m] for e in exps] for s in S] + [[ctx.one] * len(exps)]

    for u in range(m):
        if solve(rows_for([u]), rhs) is not None:
            return False
    for u in range(m):
        for v in range(u + 1, m):
            if solve(rows_for([u, v]), rhs) is not None:
                return False
    return True


def search_report(mod: Modulus, workers: int = 1, max_t: int = DEFAULT_MAX_T) -> dict:
    c = collision_search(mod, workers=workers, max_t=max_t)
    if c is None:
        poly = product_decoding_poly(mod, max_t=max_t)
    else:
        poly = decoding_poly_from_collision(mod, c, max_t)
    return {"m": mod.m, "good": c is not None,
            "collision": None if c is None else c.to_json(),
            "poly": poly.to_json(), "t": mod.t, "s01": mod.s01, "s10": mod.s10}
