"""Degree table for the counterexample family f = u^3 + r, g = u^2 + s.

    python scripts/repro_theorem8.py --k-max 8 --field fp:2
"""

import argparse
from dataclasses import dataclass
from fractions import Fraction

from freealg.estimate import build_counterexample, check_conjecture_inequality
from freealg.fields import field_from_selector


@dataclass
class Config:
    k_min: int = 2
    k_max: int = 6
    fields: tuple = ("fp:2", "q")


def run(cfg: Config) -> bool:
    ok = True
    for sel in cfg.fields:
        F = field_from_selector(sel)
        print(f"field {F.selector}")
        print(f"{'k':>3} {'deg f':>6} {'deg g':>6} {'deg[f,g]':>9} {'ratio':>7}  conjecture")
        prev = None
        for k in range(cfg.k_min, cfg.k_max + 1):
            fam = build_counterexample(k, F)
            res = check_conjecture_inequality(fam.f, fam.g)
            exact = (fam.f.degree, fam.g.degree, fam.comm_degree) == (6 * k + 3, 4 * k + 2, 2 * k + 5)
            decreasing = prev is None or fam.ratio < prev
            ok &= exact and decreasing and fam.ratio > Fraction(1, 2) and res.violated
            prev = fam.ratio
            print(
                f"{k:>3} {fam.f.degree:>6} {fam.g.degree:>6} {fam.comm_degree:>9} {str(fam.ratio):>7}"
                f"  {'fails' if res.violated else 'holds'}"
            )
    print("all rows match (2k+5)/(4k+2):", ok)
    return ok


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k-min", type=int, default=2)
    ap.add_argument("--k-max", type=int, default=6)
    ap.add_argument("--field", action="append", help="repeatable; default fp:2 and q")
    a = ap.parse_args()
    raise SystemExit(0 if run(Config(a.k_min, a.k_max, tuple(a.field or Config.fields))) else 1)
