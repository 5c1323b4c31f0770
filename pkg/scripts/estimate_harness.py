"""Random instances of the degree estimate deg P(f,g) >= D * w(P).

Reports how tight the bound is (lhs - bound) across seeded cases, per field.

    python scripts/estimate_harness.py --cases 500 --seed 1
"""

import argparse
from collections import Counter
from dataclasses import dataclass

from freealg.estimate import estimate_harness
from freealg.fields import field_from_selector


@dataclass
class Config:
    cases: int = 200
    seed: int = 0
    fields: tuple = ("q", "fp:2", "fp:3")


def run(cfg: Config) -> int:
    violations = 0
    for sel in cfg.fields:
        reports = estimate_harness(cfg.cases, cfg.seed, field_from_selector(sel))
        slack = Counter(r.lhs - r.bound for *_, r in reports)
        bad = [r for *_, r in reports if not r.inequality_holds]
        violations += len(bad)
        tight = sum(v for s, v in slack.items() if s == 0)
        print(f"{sel:>5}: {len(reports)} cases, {len(bad)} violations, {tight} tight, min slack {min(slack)}")
    return violations


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cases", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    raise SystemExit(1 if run(Config(a.cases, a.seed)) else 0)
