"""Ratio of exact counts to the first-order estimate C * rho^-n * n^(-3/2).

    python scripts/asymptotic_ratios.py --sizes 10 100 500 2000
"""

import argparse
import time
from dataclasses import dataclass, field
from typing import List

import mpmath

from lambda_closures import counting, gfun


@dataclass
class Config:
    sizes: List[int] = field(default_factory=lambda: [10, 50, 100, 200, 500, 1000, 2000])
    digits: int = 30


def main(cfg: Config) -> None:
    n_max = max(cfg.sizes)
    t0 = time.perf_counter()
    envs, clos = counting.plain_tables(n_max)
    terms = counting.plain_terms_table(n_max)
    print(f"# tables to n={n_max} in {time.perf_counter() - t0:.1f}s")
    print(f"{'n':>6} {'environments':>14} {'closures':>14} {'terms':>14}")
    for n in cfg.sizes:
        row = []
        for kind, seq in (("plain-environments", envs), ("plain-closures", clos), ("plain-terms", terms)):
            est = gfun.asymptotic_estimate(kind, n, cfg.digits)
            row.append(mpmath.nstr(mpmath.mpf(seq[n]) / est, 8))
        print(f"{n:>6} " + " ".join(f"{r:>14}" for r in row))


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=Config().sizes)
    p.add_argument("--digits", type=int, default=Config.digits)
    a = p.parse_args()
    main(Config(a.sizes, a.digits))
