"""Measured decoding failure against the k*delta union bound.

For each corruption fraction the script corrupts a fresh codeword (random and
targeted placement) and counts failing starting points exhaustively.

    python scripts/failure_vs_delta.py --m 15 --h 2 --patterns 20
"""

import argparse
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from mvcodes.codec import (CodeParams, Random, TargetedAt, budget_for, corrupt, encode,
                           exhaustive_success_prob, random_message)
from mvcodes.family import greedy_family
from mvcodes.goodness import best_decoding_poly, product_decoding_poly
from mvcodes.modulus import Modulus


@dataclass
class CurveConfig:
    m: int = 15
    h: int = 2
    product: bool = True
    patterns: int = 20
    seed: int = 0
    deltas: list = field(default_factory=lambda: ["0.01", "0.02", "0.05", "0.1", "0.2"])


def curve(cfg: CurveConfig):
    mod = Modulus.of(cfg.m)
    poly = product_decoding_poly(mod) if cfg.product else best_decoding_poly(mod)
    p = CodeParams(greedy_family(mod, cfg.h), poly)
    for delta in cfg.deltas:
        d = budget_for(delta, p.N)
        worst = {"random": Fraction(0), "targeted": Fraction(0)}
        mean = {"random": Fraction(0), "targeted": Fraction(0)}
        for j in range(cfg.patterns):
            rng = np.random.default_rng(cfg.seed + j)
            x = random_message(p, rng)
            y = encode(p, x)
            i = j % p.n
            for name, mode in (("random", Random()), ("targeted", TargetedAt(i, p))):
                fail = 1 - exhaustive_success_prob(p, x, corrupt(y, d, mode, cfg.seed + j), i)
                worst[name] = max(worst[name], fail)
                mean[name] += fail / cfg.patterns
        yield delta, d, Fraction(p.k * d, p.N), worst, mean, p


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=15)
    ap.add_argument("--h", type=int, default=2)
    ap.add_argument("--patterns", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--collision-poly", action="store_true")
    a = ap.parse_args()
    cfg = CurveConfig(m=a.m, h=a.h, product=not a.collision_poly, patterns=a.patterns, seed=a.seed)
    print(f"{'delta':>6} {'d':>5} {'k*d/N':>8} {'worst rnd':>10} {'worst tgt':>10} {'mean rnd':>9}")
    for delta, d, bound, worst, mean, p in curve(cfg):
        print(f"{delta:>6} {d:>5} {float(bound):8.4f} {float(worst['random']):10.4f} "
              f"{float(worst['targeted']):10.4f} {float(mean['random']):9.4f}")
    print(f"m={p.mod.m} h={p.h} n={p.n} k={p.k} N={p.N}")


if __name__ == "__main__":
    main()
