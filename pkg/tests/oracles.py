"""Independent reference implementations used to cross-check the library.

Nothing here imports freealg arithmetic: polynomials over F_2 are frozensets
of words (tuples of 0/1), multiplied by symmetric-difference accumulation,
and ranks are computed with integer bitmasks.
"""

from itertools import combinations, product


def words_upto(d):
    out = []
    for n in range(d + 1):
        out.extend(product((0, 1), repeat=n))
    return out


def gf2_mul(a, b):
    out = set()
    for u in a:
        for v in b:
            out ^= {u + v}
    return frozenset(out)


def gf2_add(a, b):
    return frozenset(set(a) ^ set(b))


ONE = frozenset({()})


def small_polys(max_deg=3, max_terms=2):
    """All F_2 polynomials with 1..max_terms words of length <= max_deg."""
    ws = words_upto(max_deg)
    out = []
    for t in range(1, max_terms + 1):
        out.extend(frozenset(c) for c in combinations(ws, t))
    return out


def _rank(vectors):
    basis = {}  # leading bit -> vector
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def relation_exists(f, g, max_len=4):
    """Is there a nonzero P in F_2<X, Y> with all monomials of length
    <= max_len and P(f, g) = 0?  Decided by rank over the distinct products."""
    prods = [ONE]
    layer = [ONE]
    for _ in range(max_len):
        layer = [gf2_mul(p, q) for p in layer for q in (f, g)]
        prods.extend(layer)
    index = {}
    vecs = []
    for p in prods:
        v = 0
        for w in p:
            v |= 1 << index.setdefault(w, len(index))
        vecs.append(v)
    return _rank(vecs) < len(prods)


# bimodule


def _comm(a, s):
    return gf2_add(gf2_mul(a, s), gf2_mul(s, a))


def brute_force_kernel_dim(u, m, n, bound):
    """Dimension over F_2 of {(s, r) : [u^m, s] + [u^n, r] = 0, deg <= bound},
    by exhaustive enumeration.

    The map is graded: ``s`` of length ``d`` lands in degree ``d + m|u|`` and
    ``r`` of length ``e`` in ``e + n|u|``, so each output degree is an
    independent finite problem.  Every coefficient vector of each component is
    tried; the solution count of a component is ``2^dim``.
    """
    um = frozenset({tuple(u) * m})
    un = frozenset({tuple(u) * n})
    total = 0
    degrees = {d + m * len(u) for d in range(bound + 1)} | {e + n * len(u) for e in range(bound + 1)}
    for D in sorted(degrees):
        ds, dr = D - m * len(u), D - n * len(u)
        sw = list(product((0, 1), repeat=ds)) if 0 <= ds <= bound else []
        rw = list(product((0, 1), repeat=dr)) if 0 <= dr <= bound else []
        unknowns = [("s", w) for w in sw] + [("r", w) for w in rw]
        count = 0
        for bits in product((0, 1), repeat=len(unknowns)):
            s = frozenset(w for b, (k, w) in zip(bits, unknowns) if b and k == "s")
            r = frozenset(w for b, (k, w) in zip(bits, unknowns) if b and k == "r")
            if not gf2_add(_comm(um, s), _comm(un, r)):
                count += 1
        total += count.bit_length() - 1
    return total


def satisfies_equation(u, m, n, s, r):
    um = frozenset({tuple(u) * m})
    un = frozenset({tuple(u) * n})
    return not gf2_add(_comm(um, s), _comm(un, r))
