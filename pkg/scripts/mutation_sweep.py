"""Exhaustive single-field mutation of the certificate pool.

Every polynomial field of every pooled certificate is shifted by each delta
and re-checked; prints the detection rate per certificate kind.

    python3 scripts/mutation_sweep.py --deltas 1 -1 7 --skip-combine
"""

import argparse
from collections import defaultdict

from obstruct.certs import check, mutable_paths, mutate
from obstruct.suites import mutation_pool


def main(seed, deltas, skip_combine):
    stats = defaultdict(lambda: [0, 0])
    missed = []
    for cert in mutation_pool(seed):
        if skip_combine and cert["kind"] == "combine":
            continue
        for path in mutable_paths(cert):
            for d in deltas:
                ok, _ = check(mutate(cert, path, d))
                stats[cert["kind"]][0] += 1
                stats[cert["kind"]][1] += not ok
                if ok:
                    missed.append((cert["kind"], path, d))
    for kind, (total, caught) in sorted(stats.items()):
        print(f"{kind:12s} {caught}/{total} mutations detected")
    for m in missed[:20]:
        print("missed:", m)
    return 1 if missed else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--deltas", type=int, nargs="+", default=[1])
    ap.add_argument("--skip-combine", action="store_true", help="the combine certificate is slow to sweep")
    a = ap.parse_args()
    raise SystemExit(main(a.seed, a.deltas, a.skip_combine))
