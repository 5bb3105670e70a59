"""Pure-Python kernels for exact rational linear algebra.

These two functions are the hot inner loops of the whole engine: every
weight block computation (kernels, ranks, Jordan chains, Casimir
identities) reduces to row reduction and matrix products over Fraction
entries.  `odirac.exactla._speedups` carries a Cython translation with
identical semantics; this module is the fallback and the reference.
"""

from fractions import Fraction

_ONE = Fraction(1)


def rref_core(rows, ncols):
    """Row-reduce `rows` in place; return the list of pivot columns.

    Deterministic: for each column the first row (lowest index) with a
    nonzero entry is taken as pivot.  Entries must support exact field
    arithmetic (Fraction).
    """
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        pr = -1
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            rows[pr], rows[r] = rows[r], rows[pr]
        row = rows[r]
        piv = row[c]
        if piv != 1:
            inv = _ONE / piv
            for j in range(c, ncols):
                if row[j]:
                    row[j] = row[j] * inv
        for i in range(nrows):
            if i == r:
                continue
            other = rows[i]
            f = other[c]
            if f:
                for j in range(c, ncols):
                    if row[j]:
                        other[j] = other[j] - f * row[j]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def matmul_core(a, b, bcols):
    """Return the product of row-major matrices `a` (n x k) and `b` (k x m)."""
    out = []
    for arow in a:
        orow = [0] * bcols
        for k, aval in enumerate(arow):
            if aval:
                brow = b[k]
                for j in range(bcols):
                    bval = brow[j]
                    if bval:
                        orow[j] = orow[j] + aval * bval
        out.append(orow)
    return out
