"""Sparse exact linear algebra over the rationals.

Vectors are dicts {column index: nonzero Q}; matrices are lists of such
rows.  Everything is deterministic: pivots are chosen as the smallest
column index available, rows are processed in the order given.
"""

from __future__ import annotations

from .rationals import Q


def vec_add(u: dict, v: dict, cv=1) -> dict:
    """u + cv*v with zero entries dropped."""
    out = dict(u)
    for j, x in v.items():
        y = out.get(j, 0) + cv * x
        if y:
            out[j] = y
        else:
            out.pop(j, None)
    return out


def vec_scale(u: dict, c) -> dict:
    if not c:
        return {}
    return {j: c * x for j, x in u.items()}


def mat_vec(rows: list, v: dict) -> list:
    return [sum((c * v.get(j, 0) for j, c in row.items()), Q(0)) for row in rows]


class Echelon:
    """Incremental row-echelon basis of a subspace.

    Rows are stored normalized with leading (smallest-index) coefficient 1.
    `add` returns the pivot column if the vector enlarged the span, else None.
    """

    def __init__(self):
        self.rows = {}  # pivot column -> normalized row dict

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        """Full residual of v modulo the span.  Rows never contain other
        pivots, so eliminating each pivot component once suffices."""
        v = dict(v)
        for p in sorted(set(v) & set(self.rows)):
            c = v.get(p)
            if not c:
                continue
            for j, x in self.rows[p].items():
                y = v.get(j, 0) - c * x
                if y:
                    v[j] = y
                else:
                    v.pop(j, None)
        return v

    def add(self, v: dict):
        r = self.reduce(v)
        if not r:
            return None
        p = min(r)
        inv = Q(1) / r[p]
        r = {j: inv * x for j, x in r.items()}
        # back-substitute into existing rows so the basis stays reduced
        for q, row in self.rows.items():
            if p in row:
                c = row[p]
                for j, x in r.items():
                    y = row.get(j, 0) - c * x
                    if y:
                        row[j] = y
                    else:
                        row.pop(j, None)
        self.rows[p] = r
        return p

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def basis(self) -> list:
        return [dict(self.rows[p]) for p in sorted(self.rows)]


def rank(rows: list) -> int:
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech.dim


def rref(rows: list):
    """Reduced row echelon form: returns (pivot->row dict, pivot set)."""
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech.rows, set(ech.rows)


def nullspace(rows: list, ncols: int) -> list:
    """Basis of {x : A x = 0}, one vector per free column, ordered by column."""
    reduced, pivots = rref(rows)
    basis = []
    for j in range(ncols):
        if j in pivots:
            continue
        v = {j: Q(1)}
        for p, row in reduced.items():
            c = row.get(j)
            if c:
                v[p] = -c
        basis.append(v)
    return basis


def solve(rows: list, rhs: list):
    """One solution x of A x = b, or None.  rhs is a dense list over rows."""
    ncols = 0
    for r in rows:
        if r:
            ncols = max(ncols, max(r) + 1)
    aug = []
    for r, b in zip(rows, rhs):
        row = dict(r)
        if b:
            row[ncols] = Q(b)
        aug.append(row)
    reduced, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = {}
    for p, row in reduced.items():
        c = row.get(ncols)
        if c:
            x[p] = c
    return x
