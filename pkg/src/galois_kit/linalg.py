"""Exact Gaussian elimination over any field domain.

Matrices are plain lists of rows; rows are lists of scalars from one field
object.  No pivoting heuristics are needed: arithmetic is exact, so any
nonzero pivot works.
"""

from __future__ import annotations


def rref(rows, domain):
    """Reduced row echelon form.  Returns (new_rows, pivot_columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = domain.one / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows, domain) -> int:
    return len(rref(rows, domain)[1])


def nullspace(rows, domain):
    """Basis of the right kernel {v : A v = 0}, one list per basis vector."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows, domain)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [domain.zero] * ncols
        v[fc] = domain.one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(a_columns, b, domain):
    """Solve A x = b where A is given by columns; None if inconsistent."""
    if not a_columns:
        return [] if not any(b) else None
    nrows = len(a_columns[0])
    aug = [[col[i] for col in a_columns] + [b[i]] for i in range(nrows)]
    red, pivots = rref(aug, domain)
    ncols = len(a_columns)
    if ncols in pivots:
        return None
    x = [domain.zero] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return x


class RowSpace:
    """Incrementally maintained row space with exact membership tests."""

    def __init__(self, domain, ncols: int):
        self.domain = domain
        self.ncols = ncols
        self.rows = []      # rref rows
        self.pivots = []

    def reduce(self, vec):
        """Reduce vec against the current basis; residue is zero iff member."""
        v = list(vec)
        for row, pc in zip(self.rows, self.pivots):
            if v[pc]:
                f = v[pc]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))

    def add(self, vec) -> bool:
        """Insert vec; returns True if it enlarged the space."""
        v = self.reduce(vec)
        pc = next((c for c in range(self.ncols) if v[c]), None)
        if pc is None:
            return False
        inv = self.domain.one / v[pc]
        v = [a * inv for a in v]
        for i, row in enumerate(self.rows):
            if row[pc]:
                f = row[pc]
                self.rows[i] = [a - f * b for a, b in zip(row, v)]
        idx = next((i for i, q in enumerate(self.pivots) if q > pc), len(self.pivots))
        self.rows.insert(idx, v)
        self.pivots.insert(idx, pc)
        return True

    @property
    def dimension(self) -> int:
        return len(self.rows)
