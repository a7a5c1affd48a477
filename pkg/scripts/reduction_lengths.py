"""Word lengths of the constructive reduction on random points of Q'_2n.

For each n and field, sample points, reduce them to u_0, check the certificate
independently and tabulate the word lengths against the bound 2n + 2.

    python3 scripts/reduction_lengths.py --samples 200 --n 2 3 4
"""

import argparse
import random
from collections import Counter
from dataclasses import dataclass, field

from obstruct.arith import LocalCtx, RingCtx
from obstruct.certs import check, reduction_to_cert
from obstruct.quadric import random_qprime_point
from obstruct.reduction import reduce_to_base


@dataclass
class Config:
    samples: int = 100
    ns: list = field(default_factory=lambda: [2, 3])
    seed: int = 0
    local: bool = False


def rings(local):
    if local:
        return [("Q[a,b] at (0,0)", RingCtx(("a", "b")), (0, 0)),
                ("F_10007[a] at 1", RingCtx(("a",), 10007), (1,))]
    return [("Q", RingCtx(()), ()), ("F_10007", RingCtx((), 10007), ())]


def main(cfg: Config):
    rng = random.Random(cfg.seed)
    for label, ctx, pt in rings(cfg.local):
        for n in cfg.ns:
            lengths, steps, bad = Counter(), Counter(), 0
            for _ in range(cfg.samples):
                u = random_qprime_point(ctx, n, rng)
                rc = reduce_to_base(u, LocalCtx(ctx, pt))
                ok, _ = check(reduction_to_cert(rc))
                bad += not ok or len(rc.word) > 2 * n + 2
                lengths[len(rc.word)] += 1
                steps.update(s.split(":")[0] for s in rc.steps)
            hist = " ".join(f"{k}:{v}" for k, v in sorted(lengths.items()))
            print(f"{label:18s} n={n} bound={2 * n + 2:2d} lengths[{hist}] "
                  f"steps{dict(sorted(steps.items()))} failures={bad}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--n", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--local", action="store_true", help="sample polynomial points and localize")
    a = ap.parse_args()
    main(Config(a.samples, a.n, a.seed, a.local))
