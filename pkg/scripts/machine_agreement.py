"""Run every evaluator on all closed terms up to a size and tabulate agreement.

    python scripts/machine_agreement.py --upto 9 --fuel 100000
"""

import argparse
import time
from collections import Counter
from dataclasses import dataclass

from lambda_closures import terms
from lambda_closures.machines import FuelExhausted, beta_normalize, u_nf, upsilon_normalize
from lambda_closures.syntax import render_term


@dataclass
class Config:
    upto: int = 9
    fuel: int = 100_000


def main(cfg: Config) -> None:
    evaluators = {
        "subst": lambda t: beta_normalize(t, cfg.fuel),
        "upsilon": lambda t: upsilon_normalize(t, cfg.fuel),
        "u": lambda t: u_nf(terms.Closure(t), cfg.fuel),
    }
    tally = Counter()
    t0 = time.perf_counter()
    for n in range(1, cfg.upto + 1):
        for t in terms.enumerate_terms(n, 0):
            out = {}
            for name, run in evaluators.items():
                try:
                    out[name] = run(t)
                except FuelExhausted:
                    out[name] = None
            if len(set(out.values())) > 1:
                tally["disagree"] += 1
                print("disagreement:", render_term(t), out)
            elif out["subst"] is None:
                tally["fuel"] += 1
                print("all exhaust fuel:", render_term(t))
            else:
                tally["agree"] += 1
    print(f"# {sum(tally.values())} closed terms of size <= {cfg.upto} in "
          f"{time.perf_counter() - t0:.1f}s: {dict(tally)}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--upto", type=int, default=Config.upto)
    p.add_argument("--fuel", type=int, default=Config.fuel)
    a = p.parse_args()
    main(Config(a.upto, a.fuel))
