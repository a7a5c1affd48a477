"""Run every acceptance suite and write a JSON summary.

    python3 scripts/run_acceptance.py --seeds 0 1 2 --out results/acceptance.json
"""

import argparse
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from obstruct.suites import SUITES, run_suite


@dataclass
class Config:
    seeds: list = field(default_factory=lambda: [0])
    suites: list = field(default_factory=lambda: list(SUITES))
    out: str | None = None


def main(cfg: Config):
    rows = []
    for seed in cfg.seeds:
        for name in cfg.suites:
            res = run_suite(name, seed)
            print(f"seed {seed:3d} {res.line()} ({res.seconds:.2f}s)", flush=True)
            rows.append(dict(res.to_json(), seed=seed))
    failed = [r for r in rows if not r["passed"]]
    print(f"{len(rows) - len(failed)}/{len(rows)} suite runs passed, "
          f"{sum(r['seconds'] for r in rows):.1f}s total")
    if cfg.out:
        Path(cfg.out).parent.mkdir(parents=True, exist_ok=True)
        Path(cfg.out).write_text(json.dumps({"config": asdict(cfg), "runs": rows}, indent=2, sort_keys=True))
    return 1 if failed else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, nargs="+", default=[0])
    ap.add_argument("--suites", nargs="+", default=list(SUITES), choices=list(SUITES))
    ap.add_argument("--out")
    a = ap.parse_args()
    raise SystemExit(main(Config(a.seeds, a.suites, a.out)))
