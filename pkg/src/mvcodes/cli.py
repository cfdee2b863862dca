"""Command-line front end.  Every command builds a JSON-able dict; --json prints
it verbatim, otherwise it is rendered as `key: value` lines.

Exit codes: 0 affirmative, 1 negative verdict, 2 bad input, 3 internal error.
"""

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import __version__
from .codec import (CodeParams, budget_for, decode_at, encode, read_codeword, simulate,
                    write_codeword)
from .errors import InternalContradiction, MVCError, NotGood
from .family import MatchingFamily, clique_family, greedy_family, verify_family
from .gf2 import DEFAULT_MAX_T
from .goodness import (Collision, best_decoding_poly, check_collision, collision_classes,
                       collision_search, product_decoding_poly, search_report,
                       verify_decoding_poly)
from .implications import descend_collision, lift_collision
from .modulus import Modulus, in_m2

DEFAULT_SEED = 20240229

OK, NEGATIVE, INPUT_ERROR, INTERNAL_ERROR = 0, 1, 2, 3


@dataclass(frozen=True)
class CliConfig:
    seed: int = DEFAULT_SEED
    max_t: int = DEFAULT_MAX_T
    json: bool = False
    threads: int = 1

    @classmethod
    def from_args(cls, args) -> "CliConfig":
        seed = DEFAULT_SEED if args.seed is None else args.seed
        return cls(seed=seed, max_t=args.max_t, json=args.json, threads=args.threads)


def _emit(report: dict, cfg: CliConfig, out) -> None:
    if cfg.json:
        out.write(json.dumps(report) + "\n")
        return
    for key, value in report.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
        out.write(f"{key}: {value}\n")


def _pair(args) -> Optional[Collision]:
    if args.u is None and args.v is None:
        return None
    if args.u is None or args.v is None:
        raise ValueError("--u and --v must be given together")
    return Collision(args.u, args.v)


def _poly_for(mod: Modulus, product: bool, max_t: int):
    return product_decoding_poly(mod, max_t=max_t) if product else best_decoding_poly(mod, max_t)


def _params(mod: Modulus, family: MatchingFamily, product: bool, max_t: int) -> CodeParams:
    return CodeParams(family, _poly_for(mod, product, max_t))


def _family_from(args, mod: Optional[Modulus] = None) -> MatchingFamily:
    if args.family:
        return MatchingFamily.load(args.family)
    if mod is None:
        mod = Modulus.of(args.m)
    return greedy_family(mod, args.h, args.cap)


# -- commands ----------------------------------------------------------------------

def cmd_good(args, cfg):
    mod = Modulus.of(args.m)
    report = search_report(mod, workers=cfg.threads, max_t=cfg.max_t)
    report["k"] = len(report["poly"]["monomials"])
    if args.all_classes:
        report["classes"] = collision_classes(mod, workers=cfg.threads, max_t=cfg.max_t)
    return report, OK if report["good"] else NEGATIVE


def cmd_search_range(args, cfg):
    results, skipped = [], []
    for m in range(args.lo, args.hi + 1):
        if not in_m2(m):
            continue
        mod = Modulus.of(m)
        if mod.t > cfg.max_t:
            skipped.append(m)
            continue
        c = collision_search(mod, workers=cfg.threads, max_t=cfg.max_t)
        results.append({"m": m, "good": c is not None,
                        "collision": None if c is None else c.to_json(), "t": mod.t})
    good = [r["m"] for r in results if r["good"]]
    report = {"lo": args.lo, "hi": args.hi, "scanned": len(results), "good": good,
              "skipped_max_t": skipped, "results": results}
    return report, OK if good else NEGATIVE


def cmd_poly(args, cfg):
    mod = Modulus.of(args.m)
    poly = _poly_for(mod, args.product, cfg.max_t)
    report = {"m": mod.m, "k": poly.k, "poly": poly.to_json(), "t": mod.t,
              "s01": mod.s01, "s10": mod.s10, "verified": verify_decoding_poly(poly)}
    return report, OK if report["verified"] else INTERNAL_ERROR


def _search_or_given(mod: Modulus, given: Optional[Collision], cfg) -> Collision:
    if given is not None:
        return given
    c = collision_search(mod, workers=cfg.threads, max_t=cfg.max_t)
    if c is None:
        raise NotGood(f"{mod.m} is not good: no collision exists")
    return c


def cmd_lift(args, cfg):
    m1, m2 = Modulus.of(args.m1), Modulus.of(args.m2)
    c1 = _search_or_given(m1, _pair(args), cfg)
    c2 = lift_collision(m1, m2, c1, cfg.max_t)
    report = {"m1": m1.m, "collision1": c1.to_json(), "m2": m2.m, "collision2": c2.to_json(),
              "verified": bool(check_collision(m2, c2, cfg.max_t))}
    return report, OK


def cmd_descend(args, cfg):
    m2 = Modulus.of(args.m2)
    c2 = _search_or_given(m2, _pair(args), cfg)
    d = descend_collision(m2, c2, cfg.max_t)
    report = d.to_json(m2, c2)
    report["verified"] = bool(check_collision(d.m1, d.c1, cfg.max_t))
    return report, OK


def cmd_family(args, cfg):
    mod = Modulus.of(args.m)
    f = clique_family(mod, args.h) if args.clique else greedy_family(mod, args.h, args.cap)
    if args.output:
        f.save(args.output)
    report = dict(f.to_json(), n=f.n, valid=verify_family(f))
    return report, OK


def _parse_message(text: str, params: CodeParams) -> list[int]:
    parts = text.replace(",", " ").split()
    return [int(s, 16) for s in parts]


def cmd_encode(args, cfg):
    family = _family_from(args)
    params = _params(family.mod, family, args.product, cfg.max_t)
    x = _parse_message(args.message, params)
    y = encode(params, x, workers=cfg.threads)
    write_codeword(y, args.output)
    report = {"m": params.mod.m, "h": params.h, "n": params.n, "k": params.k, "N": params.N,
              "t": params.ctx.t, "output": str(args.output)}
    return report, OK


def cmd_decode(args, cfg):
    y = read_codeword(args.codeword)
    mod = Modulus.of(y.m)
    if args.family:
        family = MatchingFamily.load(args.family)
    else:
        family = greedy_family(mod, y.h, args.cap)
    params = _params(mod, family, args.product, cfg.max_t)
    value = decode_at(params, y, args.index, cfg.seed)
    report = {"m": mod.m, "h": y.h, "index": args.index, "seed": cfg.seed,
              "symbol": value.hex()}
    return report, OK


def cmd_simulate(args, cfg):
    family = _family_from(args)
    params = _params(family.mod, family, args.product, cfg.max_t)
    stats = simulate(params, args.trials, args.delta, cfg.seed, workers=cfg.threads)
    report = dict(stats.to_json(), delta=args.delta, seed=cfg.seed,
                  bound=max(0.0, 1 - params.k * budget_for(args.delta, params.N) / params.N))
    return report, OK


# -- parser ------------------------------------------------------------------------

def _common(p):
    p.add_argument("--seed", type=int, default=None, help=f"RNG seed (default {DEFAULT_SEED})")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--max-t", type=int, default=DEFAULT_MAX_T, dest="max_t",
                   help="largest field degree t allowed")
    p.add_argument("--json", action="store_true", help="print one JSON object")


def _code_source(p, need_family=True):
    p.add_argument("--family", type=Path, help="family JSON file")
    if need_family:
        p.add_argument("--m", type=int)
        p.add_argument("--h", type=int, default=2)
    p.add_argument("--cap", type=int, default=None, help="greedy family size cap")
    p.add_argument("--product", action="store_true",
                   help="use the product-form polynomial even when m is good")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mvcodes", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("good", help="decide whether m is good")
    p.add_argument("m", type=int)
    p.add_argument("--all-classes", action="store_true",
                   help="also list every class of colliding residues")
    p.set_defaults(func=cmd_good)

    p = sub.add_parser("search-range", help="decide goodness for every m in [lo, hi]")
    p.add_argument("lo", type=int)
    p.add_argument("hi", type=int)
    p.set_defaults(func=cmd_search_range)

    p = sub.add_parser("poly", help="print a decoding polynomial for m")
    p.add_argument("m", type=int)
    p.add_argument("--product", action="store_true")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("lift", help="lift a collision from m1 to a multiple m2")
    p.add_argument("m1", type=int)
    p.add_argument("m2", type=int)
    p.add_argument("--u", type=int)
    p.add_argument("--v", type=int)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("descend", help="descend a collision of m2 to a divisor")
    p.add_argument("m2", type=int)
    p.add_argument("--u", type=int)
    p.add_argument("--v", type=int)
    p.set_defaults(func=cmd_descend)

    p = sub.add_parser("family", help="search a matching family in Z_m^h")
    p.add_argument("m", type=int)
    p.add_argument("h", type=int)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--clique", action="store_true", help="exact maximum family (small m^h)")
    p.add_argument("-o", "--output", type=Path)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("encode", help="encode hex symbols into a codeword file")
    _code_source(p)
    p.add_argument("--message", required=True, help="comma-separated hex field elements")
    p.add_argument("-o", "--output", type=Path, required=True)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="locally decode one symbol of a codeword file")
    p.add_argument("codeword", type=Path)
    p.add_argument("--index", type=int, required=True)
    _code_source(p, need_family=False)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", help="encode, corrupt and decode random messages")
    _code_source(p)
    p.add_argument("--delta", type=str, default="0", help="corrupted fraction, e.g. 0.05")
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=cmd_simulate)

    for p in sub.choices.values():
        _common(p)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    if getattr(args, "family", None) is None and getattr(args, "m", 0) is None:
        err.write("error: give --family FILE or --m M\n")
        return INPUT_ERROR
    cfg = CliConfig.from_args(args)
    try:
        report, code = args.func(args, cfg)
    except InternalContradiction as exc:
        err.write(f"internal error: {exc}\n")
        return INTERNAL_ERROR
    except NotGood as exc:
        err.write(f"error: {exc}\n")
        return NEGATIVE
    except (MVCError, ValueError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return INPUT_ERROR
    _emit(report, cfg, out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
