"""Matching vector codes: encoding, local decoding, corruption and measurement.

Positions of a codeword are the vectors v of Z_m^h, flattened lexicographically
with the last coordinate fastest.  Symbols are stored as a numpy array, uint64
when t <= 32 and Python ints (object dtype) otherwise.

    C(x)[v]  = sum_j x_j * g^<u_j, v>
    D_i(y)   = g^-<u_i, v> * sum_l a_l * y[v + b_l u_i]      (v uniform)
"""

import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Union

import numpy as np

from .errors import (BudgetExceeded, CodewordFormatError, CtxMismatch, GuardExceeded,
                     IndexOutOfRange, LengthMismatch, NotInM2)
from .family import MatchingFamily, verify_family
from .gf2 import FieldCtx, FieldElement, is_irreducible
from .goodness import DecodingPoly, verify_decoding_poly
from .modulus import Modulus

EXHAUSTIVE_MAX_N = 10 ** 5
MAGIC = b"MVC1"


@dataclass(frozen=True)
class CodeParams:
    family: MatchingFamily
    poly: DecodingPoly

    def __post_init__(self):
        if self.family.mod != self.poly.mod:
            raise ValueError(f"family is over Z_{self.family.mod.m}, polynomial over Z_{self.poly.mod.m}")
        if not verify_family(self.family):
            raise ValueError("not a matching family")
        if not verify_decoding_poly(self.poly):
            raise ValueError("not a decoding polynomial")

    @property
    def mod(self) -> Modulus:
        return self.family.mod

    @property
    def ctx(self) -> FieldCtx:
        return self.poly.root.ctx

    @property
    def root(self) -> FieldElement:
        return self.poly.root

    @property
    def n(self) -> int:
        return self.family.n

    @property
    def h(self) -> int:
        return self.family.h

    @property
    def k(self) -> int:
        return self.poly.k

    @property
    def N(self) -> int:
        return self.mod.m ** self.h


@dataclass
class Codeword:
    ctx: FieldCtx
    m: int
    h: int
    symbols: np.ndarray

    def __post_init__(self):
        if len(self.symbols) != self.m ** self.h:
            raise LengthMismatch(f"expected {self.m ** self.h} symbols, got {len(self.symbols)}")

    @property
    def N(self) -> int:
        return len(self.symbols)

    def __getitem__(self, index) -> FieldElement:
        return self.ctx.element(int(self.symbols[index]))

    def __eq__(self, other):
        return (isinstance(other, Codeword) and self.ctx == other.ctx and self.m == other.m
                and self.h == other.h and bool(np.all(self.symbols == other.symbols)))

    def distance(self, other: "Codeword") -> int:
        return int(np.count_nonzero(self.symbols != other.symbols))

    def copy(self) -> "Codeword":
        return Codeword(self.ctx, self.m, self.h, self.symbols.copy())

    def __add__(self, other: "Codeword") -> "Codeword":
        return Codeword(self.ctx, self.m, self.h, self.symbols ^ other.symbols)


# -- vectorised field arithmetic on symbol arrays ---------------------------------

def _dtype(ctx: FieldCtx):
    return np.uint64 if ctx.t <= 32 else object


def _array(ctx: FieldCtx, values) -> np.ndarray:
    if _dtype(ctx) is object:
        out = np.empty(len(values), dtype=object)
        out[:] = [int(v) for v in values]
        return out
    return np.asarray([int(v) for v in values], dtype=np.uint64)


def _mul(ctx: FieldCtx, a: np.ndarray, b) -> np.ndarray:
    """Elementwise product; b may be an array of the same length or a scalar."""
    if _dtype(ctx) is not object:
        return ctx.mul_array(a, b)
    A = ctx.to_rows(a.tolist())
    if isinstance(b, np.ndarray):
        B = ctx.to_rows(b.tolist())
    else:
        B = np.repeat(ctx.to_rows([int(b)]), len(a), axis=0)
    return _array(ctx, ctx.from_rows(ctx.mul_rows(A, B)))


def _powers(ctx: FieldCtx, root: FieldElement, m: int) -> np.ndarray:
    return _array(ctx, ctx.from_rows(ctx.power_rows(root.value, m)))


def _coords(index: np.ndarray, m: int, h: int) -> np.ndarray:
    return np.stack(np.unravel_index(index, (m,) * h), axis=1).astype(np.int64)


def _flat(coords: np.ndarray, m: int, h: int) -> np.ndarray:
    return np.ravel_multi_index(tuple((coords % m).T), (m,) * h)


def _random_elements(rng: np.random.Generator, t: int, count: int, nonzero: bool) -> list[int]:
    nbytes = (t + 7) // 8
    mask = (1 << t) - 1
    out = []
    while len(out) < count:
        x = int.from_bytes(rng.bytes(nbytes), "little") & mask
        if x or not nonzero:
            out.append(x)
    return out


# -- encoding and decoding ----------------------------------------------------------

def _check_message(p: CodeParams, x) -> list[int]:
    if len(x) != p.n:
        raise LengthMismatch(f"message has {len(x)} symbols, family has {p.n} vectors")
    vals = []
    for s in x:
        if isinstance(s, FieldElement):
            if s.ctx != p.ctx:
                raise CtxMismatch("message symbol from a different field")
            s = s.value
        if not 0 <= int(s) < p.ctx.order:
            raise ValueError(f"{s} is not an element of GF(2^{p.ctx.t})")
        vals.append(int(s))
    return vals


def encode(p: CodeParams, x, workers: int = 1) -> Codeword:
    m, h, ctx = p.mod.m, p.h, p.ctx
    msg = _check_message(p, x)
    powers = _powers(ctx, p.root, m)
    U = p.family.array()
    tables = [_mul(ctx, powers, xj) for xj in msg]  # T_j[e] = x_j g^e

    def block(index):
        ip = (_coords(index, m, h) @ U.T) % m
        out = np.zeros(len(index), dtype=_dtype(ctx))
        if out.dtype == object:
            out[:] = 0
        for j, T in enumerate(tables):
            out ^= T[ip[:, j]]
        return out

    index = np.arange(m ** h)
    if workers <= 1:
        symbols = block(index)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            symbols = np.concatenate(list(pool.map(block, np.array_split(index, workers))))
    return Codeword(ctx, m, h, symbols)


def _check_codeword(p: CodeParams, y: Codeword):
    if y.ctx != p.ctx or y.m != p.mod.m or y.h != p.h:
        raise CtxMismatch("codeword does not match the code parameters")


def _check_index(p: CodeParams, i: int):
    if not 0 <= i < p.n:
        raise IndexOutOfRange(f"message index {i} outside [0, {p.n})")


def query_positions(p: CodeParams, i: int, v) -> list[int]:
    """The k flat positions read when decoding x_i from the point v."""
    ui = np.array(p.family.vectors[i], dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    return [int(_flat((v + e * ui)[None, :], p.mod.m, p.h)[0]) for e, _ in p.poly.monomials]


def decode_many(p: CodeParams, y: Codeword, i: int, index: np.ndarray) -> np.ndarray:
    """Decoder output for x_i at every starting point in `index` (flat positions)."""
    _check_codeword(p, y)
    _check_index(p, i)
    m, h, ctx = p.mod.m, p.h, p.ctx
    V = _coords(np.asarray(index), m, h)
    ui = np.array(p.family.vectors[i], dtype=np.int64)
    acc = np.zeros(len(V), dtype=_dtype(ctx))
    if acc.dtype == object:
        acc[:] = 0
    for e, c in p.poly.monomials:
        acc ^= _mul(ctx, y.symbols[_flat(V + e * ui, m, h)], c.value)
    # g^-e realised as g^((m - e) mod m)
    powers = _powers(ctx, p.root, m)
    shift = powers[(-(V @ ui)) % m]
    return _mul(ctx, acc, shift)


def decode_at(p: CodeParams, y: Codeword, i: int, rng_seed: int) -> FieldElement:
    rng = np.random.default_rng(rng_seed)
    v = rng.integers(0, p.mod.m, size=p.h)
    out = decode_many(p, y, i, _flat(v[None, :], p.mod.m, p.h))
    return p.ctx.element(int(out[0]))


def exhaustive_success_prob(p: CodeParams, x, y: Codeword, i: int,
                            max_n: int = EXHAUSTIVE_MAX_N) -> Fraction:
    """Exact fraction of the N starting points from which x_i is recovered."""
    if p.N > max_n:
        raise GuardExceeded(f"N = {p.N} exceeds {max_n}")
    target = _check_message(p, x)[i]
    out = decode_many(p, y, i, np.arange(p.N))
    return Fraction(int(np.count_nonzero(out == target)), p.N)


def sampled_success_rate(p: CodeParams, x, y: Codeword, i: int, samples: int,
                         rng_seed: int) -> Fraction:
    """Fraction of `samples` uniformly drawn starting points that recover x_i."""
    target = _check_message(p, x)[i]
    rng = np.random.default_rng(rng_seed)
    out = decode_many(p, y, i, rng.integers(0, p.N, size=samples))
    return Fraction(int(np.count_nonzero(out == target)), samples)


# -- corruption ------------------------------------------------------------------------

@dataclass(frozen=True)
class Random:
    """Corrupted positions drawn uniformly without replacement."""


@dataclass(frozen=True)
class TargetedAt:
    """Corrupt whole query sets {v + b u_i} of randomly drawn v, nonconstant terms first."""

    i: int
    params: CodeParams


CorruptionMode = Union[Random, TargetedAt]


def _targeted_positions(mode: TargetedAt, budget: int, rng) -> list[int]:
    p = mode.params
    _check_index(p, mode.i)
    chosen: dict[int, None] = {}
    order = sorted(range(p.k), key=lambda l: p.poly.monomials[l][0] == 0)
    while len(chosen) < budget:
        v = rng.integers(0, p.mod.m, size=p.h)
        q = query_positions(p, mode.i, v)
        for l in order:
            if len(chosen) == budget:
                break
            chosen.setdefault(q[l])
    return list(chosen)


def corrupt(y: Codeword, budget: int, mode: CorruptionMode = Random(),
            rng_seed: int = 0) -> Codeword:
    """Change exactly `budget` symbols, each to a different field element."""
    if not 0 <= budget <= y.N:
        raise BudgetExceeded(f"budget {budget} outside [0, {y.N}]")
    rng = np.random.default_rng(rng_seed)
    if isinstance(mode, TargetedAt):
        positions = np.array(_targeted_positions(mode, budget, rng), dtype=np.int64)
    else:
        positions = rng.choice(y.N, size=budget, replace=False)
    noise = _array(y.ctx, _random_elements(rng, y.ctx.t, budget, nonzero=True))
    out = y.copy()
    if budget:
        out.symbols[positions] ^= noise
    return out


def budget_for(delta, N: int) -> int:
    """floor(delta * N), exact for decimal strings and Fractions."""
    frac = Fraction(str(delta)) if isinstance(delta, float) else Fraction(delta)
    return math.floor(frac * N)


@dataclass(frozen=True)
class SimulationStats:
    trials: int
    successes: int
    k: int
    N: int
    n: int
    budget: int

    @property
    def success_rate(self) -> float:
        return self.successes / self.trials if self.trials else 1.0

    def to_json(self) -> dict:
        return {"success_rate": self.success_rate, "successes": self.successes,
                "trials": self.trials, "k": self.k, "N": self.N, "n": self.n,
                "budget": self.budget}


def random_message(p: CodeParams, rng) -> list[int]:
    return _random_elements(rng, p.ctx.t, p.n, nonzero=False)


def _trial(p: CodeParams, budget: int, seed: int) -> bool:
    rng = np.random.default_rng(seed)
    x = random_message(p, rng)
    y = corrupt(encode(p, x), budget, Random(), int(rng.integers(2 ** 63)))
    i = int(rng.integers(p.n))
    return decode_at(p, y, i, int(rng.integers(2 ** 63))).value == x[i]


def simulate(p: CodeParams, trials: int, delta, rng_seed: int = 0,
             workers: int = 1) -> SimulationStats:
    """Trial j uses seed rng_seed + j, so the result does not depend on `workers`."""
    budget = budget_for(delta, p.N)
    seeds = [rng_seed + j for j in range(trials)]
    if workers <= 1:
        results = [_trial(p, budget, s) for s in seeds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda s: _trial(p, budget, s), seeds))
    return SimulationStats(trials, sum(results), p.k, p.N, p.n, budget)


# -- binary codeword files -------------------------------------------------------------

def write_codeword(y: Codeword, path) -> None:
    width = (y.ctx.t + 7) // 8
    buf = io.BytesIO()
    buf.write(MAGIC)
    buf.write(y.m.to_bytes(8, "little"))
    buf.write(y.h.to_bytes(4, "little"))
    buf.write(y.ctx.t.to_bytes(4, "little"))
    buf.write(y.ctx.modulus_bytes())
    for s in y.symbols.tolist():
        buf.write(int(s).to_bytes(width, "little"))
    Path(path).write_bytes(buf.getvalue())


def read_codeword(path) -> Codeword:
    data = Path(path).read_bytes()
    pos = 0

    def take(count, what):
        nonlocal pos
        if pos + count > len(data):
            raise CodewordFormatError(f"truncated {what}: need {count} bytes, have {len(data) - pos}", pos)
        chunk = data[pos:pos + count]
        pos += count
        return chunk

    if take(4, "magic") != MAGIC:
        raise CodewordFormatError("bad magic, expected b'MVC1'", 0)
    m = int.from_bytes(take(8, "m"), "little")
    h = int.from_bytes(take(4, "h"), "little")
    t = int.from_bytes(take(4, "t"), "little")
    try:
        mod = Modulus.of(m)
    except NotInM2 as exc:
        raise CodewordFormatError(str(exc), 4) from exc
    if h < 1:
        raise CodewordFormatError("h must be positive", 12)
    if t != mod.t:
        raise CodewordFormatError(f"t = {t} but ord_{m}(2) = {mod.t}", 16)
    poly_at = pos
    f = int.from_bytes(take((t + 8) // 8, "modulus polynomial"), "little")
    if f.bit_length() - 1 != t or not is_irreducible(f):
        raise CodewordFormatError(f"modulus is not an irreducible polynomial of degree {t}", poly_at)
    ctx = FieldCtx(t, f, check=False)
    width = (t + 7) // 8
    N = m ** h
    body_at = pos
    if len(data) - body_at != N * width:
        raise CodewordFormatError(f"expected {N * width} bytes of symbols, found {len(data) - body_at}",
                                  body_at)
    values = []
    for j in range(N):
        x = int.from_bytes(data[body_at + j * width:body_at + (j + 1) * width], "little")
        if x >> t:
            raise CodewordFormatError(f"symbol {j} has bits above degree {t - 1}", body_at + j * width)
        values.append(x)
    return Codeword(ctx, m, h, _array(ctx, values))
