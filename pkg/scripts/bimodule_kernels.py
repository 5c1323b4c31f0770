"""Kernel of (s, r) -> [u^m, s] + [u^n, r] against the two obvious families.

The commuting pairs in K[u] and the Jacobi pairs ([u^n, w], -[u^m, w]) always
solve the equation, and so do the telescoping pairs (T_{n/d}(w), -T_{m/d}(w))
with a = u^d, d = gcd(m, n) and T_k(w) = sum_i a^i w a^(k-1-i).  This measures how much of the kernel each family spans.

    python scripts/bimodule_kernels.py --bound-max 5
"""

import argparse
from dataclasses import dataclass

from freealg.bimodule import solve_commutator_equation, telescoping_solutions, trivial_solutions
from freealg.fields import field_from_selector
from freealg.linalg import rank


@dataclass
class Config:
    u: tuple = (0, 1)
    m: int = 1
    n: int = 2
    bound_max: int = 5
    fields: tuple = ("fp:2", "fp:3", "q")


def run(cfg: Config):
    print(f"u={cfg.u} m={cfg.m} n={cfg.n}")
    print(f"{'field':>5} {'bound':>5} {'kernel':>6} {'trivial':>7} {'+telescoping':>12}  unexplained")
    for sel in cfg.fields:
        F = field_from_selector(sel)
        for b in range(cfg.bound_max + 1):
            sol = solve_commutator_equation(cfg.u, cfg.m, cfg.n, b, F)
            triv = trivial_solutions(cfg.u, cfg.m, cfg.n, b, F)
            both = triv + telescoping_solutions(cfg.u, cfg.m, cfg.n, b, F)
            span = _span(sol, triv, F)
            span2 = _span(sol, both, F)
            extra = [f"({s}, {r})" for s, r in sol.basis if not _in(both, s, r, sol, F)][:2]
            print(f"{sel:>5} {b:>5} {sol.dimension:>6} {span:>7} {span2:>12}  {'; '.join(extra)}")


def _span(sol, pairs, F):
    vecs = [sol.vector(s, r) for s, r in pairs]
    return rank(vecs, len(vecs[0]), F) if vecs else 0


def _in(triv, s, r, sol, F):
    vecs = [sol.vector(a, c) for a, c in triv]
    if not vecs:
        return False
    target = sol.vector(s, r)
    return rank(vecs + [target], len(target), F) == rank(vecs, len(target), F)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bound-max", type=int, default=5)
    ap.add_argument("--m", type=int, default=1)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--field", action="append", help="repeatable; default fp:2, fp:3 and q")
    a = ap.parse_args()
    run(Config(m=a.m, n=a.n, bound_max=a.bound_max, fields=tuple(a.field or Config.fields)))
