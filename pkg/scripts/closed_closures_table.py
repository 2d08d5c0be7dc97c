"""Print c_{m,n} for closed (or m-open) closures with growth-rate diagnostics.

    python scripts/closed_closures_table.py --upto 49
"""

import argparse
import time
from dataclasses import dataclass

import mpmath

from lambda_closures import counting, gfun


@dataclass
class Config:
    upto: int = 49
    m: int = 0


def main(cfg: Config) -> None:
    t0 = time.perf_counter()
    table = counting.closed_closures_table(cfg.upto, cfg.m)
    dt = time.perf_counter() - t0
    lo, hi = 1 / gfun.rho_terms(), 1 / gfun.rho_plain()
    print(f"# m={cfg.m}, built in {dt:.3f}s, minimal size {table.min_size}")
    print(f"# growth must settle between {mpmath.nstr(lo, 6)} and {mpmath.nstr(hi, 6)}")
    print(f"{'n':>4} {'count':>30} {'ratio':>10} {'n-th root':>10}")
    for n, c in enumerate(table.counts):
        prev = table.counts[n - 1] if n else 0
        ratio = mpmath.nstr(mpmath.mpf(c) / prev, 6) if prev else "-"
        root = mpmath.nstr(mpmath.root(c, n), 6) if c and n else "-"
        print(f"{n:>4} {c:>30} {ratio:>10} {root:>10}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--upto", type=int, default=Config.upto)
    p.add_argument("--m", type=int, default=Config.m)
    a = p.parse_args()
    main(Config(a.upto, a.m))
