"""Scan L0^(h)(rho_terms) over h and report where it first exceeds 1/4.

    python scripts/shallow_threshold.py --hmax 160 --digits 50
"""

import argparse
from dataclasses import dataclass

import mpmath

from lambda_closures import gfun


@dataclass
class Config:
    hmax: int = 160
    digits: int = 50
    every: int = 1


def main(cfg: Config) -> None:
    quarter = mpmath.mpf(1) / 4
    with mpmath.workdps(cfg.digits + gfun.GUARD_DIGITS):
        z = gfun.rho_terms(cfg.digits)
        first = None
        for h in range(1, cfg.hmax + 1):
            v = gfun.eval_shallow_L0(h, z, cfg.digits)
            if first is None and v > quarter:
                first = h
            if h % cfg.every == 0 or h == first:
                print(f"h={h:>4}  L0^(h)(rho_terms) = {mpmath.nstr(v, 25)}  {'> 1/4' if v > quarter else '<= 1/4'}")
    print(f"# smallest h with L0^(h)(rho_terms) > 1/4: {first}")
    if first is not None:
        gb = gfun.growth_bounds_closed(first, cfg.digits)
        print(f"# growth rate of closed closures in [{mpmath.nstr(1 / gb.rho_lower, 10)}, "
              f"{mpmath.nstr(1 / gb.rho_upper, 10)}]")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--hmax", type=int, default=Config.hmax)
    p.add_argument("--digits", type=int, default=Config.digits)
    p.add_argument("--every", type=int, default=Config.every, help="print every k-th h")
    a = p.parse_args()
    main(Config(a.hmax, a.digits, a.every))
