"""Descend every descendable collision of m2 and lift the result back up.

Shows that descent lands on a good divisor and that the lift of the descended
pair is again a collision for m2 (not necessarily the pair we started from).

    python scripts/descend_and_lift.py --m2 7399
"""

import argparse
from collections import Counter
from dataclasses import dataclass

from mvcodes.errors import DescentDegenerate
from mvcodes.goodness import Collision, check_collision, collision_classes
from mvcodes.implications import descend_collision, lift_collision
from mvcodes.modulus import Modulus


@dataclass
class RoundTripConfig:
    m2: int = 7399
    max_t: int = 1024


def run(cfg: RoundTripConfig):
    M2 = Modulus.of(cfg.m2)
    outcomes = Counter()
    same = 0
    for cls in collision_classes(M2, max_t=cfg.max_t):
        for u, v in zip(cls, cls[1:]):
            try:
                d = descend_collision(M2, Collision(u, v), cfg.max_t)
            except DescentDegenerate:
                outcomes["degenerate"] += 1
                continue
            back = lift_collision(d.m1, M2, d.c1, cfg.max_t)
            assert check_collision(M2, back, cfg.max_t)
            outcomes[f"m1={d.m1.m} omega={d.omega}"] += 1
            same += {back.u, back.v} == {u, v}
    return outcomes, same


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m2", type=int, default=7399)
    ap.add_argument("--max-t", type=int, default=1024)
    a = ap.parse_args()
    outcomes, same = run(RoundTripConfig(a.m2, a.max_t))
    for key, count in sorted(outcomes.items()):
        print(f"{key:>28}: {count}")
    print(f"round trips returning the original pair: {same}")


if __name__ == "__main__":
    main()
