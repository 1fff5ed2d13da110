"""Exact sparse linear algebra over Q.

Matrices are lists of sparse rows (dict column -> rational).  Ranks go
through python-flint when the dense footprint is small enough and through a
pure sparse elimination otherwise; both are exact.
"""

from __future__ import annotations

from gmpy2 import mpq

try:
    import flint
except ImportError:  # pragma: no cover - optional accelerator
    flint = None

ZERO = mpq(0)

DENSE_LIMIT = 4_000_000
BACKEND = "flint" if flint is not None else "python"


class RowReducer:
    """Incremental row echelon form with leading entry at the smallest column."""

    def __init__(self):
        self.pivots = {}

    def reduce(self, row):
        row = {k: mpq(v) for k, v in row.items() if v}
        out = {}
        while row:
            c = min(row)
            v = row.pop(c)
            p = self.pivots.get(c)
            if p is None:
                out[c] = v
                continue
            for k, w in p.items():
                if k == c:
                    continue
                x = row.get(k, ZERO) - v * w
                if x:
                    row[k] = x
                else:
                    row.pop(k, None)
        return out

    def add(self, row):
        """Insert a row; True if it was independent of the previous ones."""
        row = {k: mpq(v) for k, v in row.items() if v}
        while row:
            c = min(row)
            p = self.pivots.get(c)
            if p is None:
                inv = 1 / row[c]
                self.pivots[c] = {k: v * inv for k, v in row.items()}
                return True
            v = row[c]
            for k, w in p.items():
                x = row.get(k, ZERO) - v * w
                if x:
                    row[k] = x
                else:
                    row.pop(k, None)
        return False

    @property
    def rank(self):
        return len(self.pivots)


def _sparse_rank(rows):
    red = RowReducer()
    for r in sorted(rows, key=len):
        red.add(r)
    return red.rank


def rank(rows, ncols=None):
    """Exact rank of a sparse matrix given as a list of dict rows."""
    rows = [r for r in rows if r]
    if not rows:
        return 0
    if ncols is None:
        ncols = 1 + max(max(r) for r in rows)
    if flint is not None and len(rows) * ncols <= DENSE_LIMIT and len(rows) > 8:
        return _flint_rank(rows, ncols)
    return _sparse_rank(rows)


def _flint_rank(rows, ncols):
    # clear denominators row by row; rank is unchanged
    m = flint.fmpz_mat(len(rows), ncols)
    for i, r in enumerate(rows):
        den = 1
        for v in r.values():
            d = mpq(v).denominator
            if d != 1:
                den = den * d // _gcd(den, d)
        for j, v in r.items():
            m[i, j] = int(mpq(v) * den)
    return m.rank()


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def solve_exact(rows, rhs):
    """One solution x of rows * x = rhs (free variables set to 0), or None."""
    aug = []
    for r, b in zip(rows, rhs):
        row = {("x", k): mpq(v) for k, v in r.items() if v}
        if b:
            row[("b",)] = mpq(b)
        aug.append(row)
    # order: unknown columns first, the right-hand side last
    keys = sorted({k for r in aug for k in r if k[0] == "x"})
    index = {k: i for i, k in enumerate(keys)}
    last = len(keys)
    red = RowReducer()
    for r in aug:
        red.add({(index[k] if k[0] == "x" else last): v for k, v in r.items()})
    if last in red.pivots:
        return None
    sol = {}
    for c in sorted(red.pivots, reverse=True):
        p = red.pivots[c]
        v = p.get(last, ZERO)
        for k, w in p.items():
            if k != c and k != last:
                v -= w * sol.get(k, ZERO)
        sol[c] = v
    return {keys[c][1]: v for c, v in sol.items() if v}

