"""Scan M_2 members in a range, report which are good and how long each search took.

    python scripts/scan_good_numbers.py --lo 3 --hi 2000 --max-t 1024 --out good.json
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass
from typing import Optional

from mvcodes.goodness import collision_classes
from mvcodes.modulus import Modulus, in_m2


@dataclass
class ScanConfig:
    lo: int = 3
    hi: int = 2000
    max_t: int = 1024
    workers: int = 1
    out: Optional[str] = None


def scan(cfg: ScanConfig) -> dict:
    rows = []
    for m in range(cfg.lo, cfg.hi + 1):
        if not in_m2(m):
            continue
        mod = Modulus.of(m)
        if mod.t > cfg.max_t:
            rows.append({"m": m, "t": mod.t, "skipped": True})
            continue
        start = time.perf_counter()
        classes = collision_classes(mod, workers=cfg.workers, max_t=cfg.max_t)
        rows.append({"m": m, "t": mod.t, "good": bool(classes),
                     "classes": len(classes), "largest_class": max(map(len, classes), default=0),
                     "first": classes[0][:2] if classes else None,
                     "seconds": round(time.perf_counter() - start, 4)})
    good = [r["m"] for r in rows if r.get("good")]
    return {"config": asdict(cfg), "scanned": len(rows), "good": good, "rows": rows}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in ScanConfig.__dataclass_fields__.values():
        ap.add_argument("--" + f.name.replace("_", "-"), type=int if f.type is int else str,
                        default=f.default)
    cfg = ScanConfig(**vars(ap.parse_args()))
    result = scan(cfg)
    print(f"{result['scanned']} moduli in [{cfg.lo}, {cfg.hi}], good: {result['good']}")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump(result, fh, indent=1)


if __name__ == "__main__":
    main()
