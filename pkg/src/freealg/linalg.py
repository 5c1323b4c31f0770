"""Exact Gaussian elimination over a :class:`~freealg.fields.Field`.

Matrices are lists of rows of raw field scalars.  Only what the solvers need:
reduced row echelon form, a kernel basis, and a particular solution.
"""

from __future__ import annotations

from .fields import Field


def rref(rows, ncols: int, field: Field):
    """Return ``(R, pivots)`` with ``R`` in reduced row echelon form."""
    norm = field.normalize
    m = [[norm(v) for v in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [norm(v * inv) for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [norm(a - f * b) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def kernel(rows, ncols: int, field: Field):
    """Basis of ``{v : A v = 0}``, one vector per free column."""
    R, pivots = rref(rows, ncols, field)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [field.zero] * ncols
        v[free] = field.one
        for row, pc in zip(R, pivots):
            v[pc] = field.normalize(-row[free])
        basis.append([field.normalize(a) for a in v])
    return basis


def solve(rows, rhs, ncols: int, field: Field):
    """A particular solution of ``A v = rhs`` (free variables zero) or ``None``."""
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    R, pivots = rref(aug, ncols + 1, field)
    if pivots and pivots[-1] == ncols:
        return None
    v = [field.zero] * ncols
    for row, pc in zip(R, pivots):
        v[pc] = field.normalize(row[ncols])
    return v


def rank(rows, ncols: int, field: Field) -> int:
    return len(rref(rows, ncols, field)[1])
