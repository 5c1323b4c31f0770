"""Square roots of g = u^2 + s over F_2 and the positive part of g^(3/2).

For each k the script reports how deep a finite truncated root reaches before
the slice equation becomes unsolvable, with the orbit obstruction that proves
no finite correction exists, then scans g^(3/2) for a positive-degree word
containing an inverse letter.

    python scripts/repro_theorem9.py --k 2 3 4 --window 10
"""

import argparse
from dataclasses import dataclass, field

from freealg.errors import BasisExhausted
from freealg.fields import GF
from freealg.malcev import (
    build_theorem9_input,
    format_group_word,
    gw_degree,
    mn_fractional_power,
    mn_sqrt_char2,
    negative_power_witness,
)


@dataclass
class Config:
    ks: list = field(default_factory=lambda: [2, 3, 4])
    window: int = 10
    basis_rounds: int = 3
    variants: tuple = ("lemma10", "theorem9")


def run(cfg: Config):
    F = GF(2)
    for variant in cfg.variants:
        for k in cfg.ks:
            g = build_theorem9_input(k, variant, F)
            print(f"[{variant}] k={k}  g = {g}")
            try:
                res = mn_sqrt_char2(g, cfg.window, cfg.basis_rounds)
                print(f"  sqrt reaches window {cfg.window}: h = {res.root}")
            except BasisExhausted as exc:
                ctx = exc.context
                print(
                    f"  sqrt stops at degree {ctx['degree']} (window reached: {ctx['window_reached']}),"
                    f" finite solution impossible: {ctx.get('no_finite_solution')}"
                )
                print(f"  unsolvable slice: {ctx['slice']}")
            try:
                fp = mn_fractional_power(g, 3, 2, 0, cfg.basis_rounds)
            except BasisExhausted as exc:
                print(f"  g^(3/2): root unavailable ({exc.context['degree']})")
                continue
            pos = [format_group_word(w) for w, _ in fp.value.sorted_terms() if gw_degree(w) > 0]
            w = negative_power_witness(fp.value)
            print(f"  g^(3/2) positive part: {' + '.join(pos)}")
            print(f"  witness: {format_group_word(w) if w else 'none'}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--window", type=int, default=10)
    ap.add_argument("--basis-rounds", type=int, default=3)
    a = ap.parse_args()
    run(Config(a.k, a.window, a.basis_rounds))
