"""Detect D_n periods and valuation slopes over seeded random matrices.

    python scripts/survey_random.py --count 30 --size 3 --bound 9 --horizon 200
"""

import argparse
import collections
import time
from dataclasses import dataclass

from snfpowers.gen import random_instance
from snfpowers.powertrace import analyze, is_nilpotent


@dataclass
class SurveyConfig:
    count: int = 30
    size: int = 3
    bound: int = 9
    horizon: int = 200
    first_seed: int = 0
    confirm: int = 3


def survey(cfg: SurveyConfig) -> None:
    periods = collections.Counter()
    unbounded = []
    seed, done = cfg.first_seed, 0
    while done < cfg.count:
        a = random_instance(cfg.size, cfg.bound, seed)
        seed += 1
        if is_nilpotent(a):
            continue
        done += 1
        t0 = time.perf_counter()
        _, rep, decomps = analyze(a, cfg.horizon, confirm_factor=cfg.confirm)
        periods[rep.T if rep.found else None] += 1
        slopes = " ".join(f"p={d.p}:a={d.a},hT={d.h_report.T}" for d in decomps)
        print(f"seed={seed - 1:5d} n0={rep.n0} T={rep.T} {slopes} ({time.perf_counter() - t0:.2f}s)")
        unbounded += [(seed - 1, d.p) for d in decomps if not d.is_bounded()]
    print("period histogram:", dict(sorted(periods.items(), key=lambda kv: (kv[0] is None, kv[0] or 0))))
    print("unbounded h(n):", unbounded or "none")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(SurveyConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    survey(SurveyConfig(**vars(ap.parse_args())))


if __name__ == "__main__":
    main()
