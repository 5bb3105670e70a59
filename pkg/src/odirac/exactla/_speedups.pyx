# cython: language_level=3
"""Compiled row-reduction and matrix-product kernels.

Same input/output contract as `odirac.exactla.pure`, but internally the
rows are cleared to integers (row scaling does not change the reduced
echelon form or the exact product), eliminated fraction-free with gcd
normalization, and converted back to Fraction at the end.  Python ints
carry the arithmetic, which avoids one Fraction normalization per
elementary operation.
"""

from fractions import Fraction
from math import gcd

_ZERO = Fraction(0)


cdef list _clear_row(list row, Py_ssize_t n):
    cdef Py_ssize_t j
    cdef object l = 1, d, x
    for j in range(n):
        d = row[j].denominator
        if d != 1:
            l = l * d // gcd(l, d)
    cdef list out = []
    for j in range(n):
        x = row[j]
        out.append(x.numerator * (l // x.denominator))
    return out


def rref_core(list rows, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t r = 0, c, i, j, pr, rank
    cdef list pivots = []
    cdef list work = []
    cdef list row, other, out
    cdef object piv, f, g, v
    for i in range(nrows):
        work.append(_clear_row(<list>rows[i], ncols))
    for c in range(ncols):
        pr = -1
        for i in range(r, nrows):
            if (<list>work[i])[c]:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            work[pr], work[r] = work[r], work[pr]
        row = <list>work[r]
        piv = row[c]
        for i in range(nrows):
            if i == r:
                continue
            other = <list>work[i]
            f = other[c]
            if f:
                g = 0
                for j in range(ncols):
                    v = other[j] * piv - f * row[j]
                    other[j] = v
                    if v:
                        g = gcd(g, v)
                if g > 1:
                    for j in range(ncols):
                        if other[j]:
                            other[j] = other[j] // g
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    rank = len(pivots)
    for i in range(nrows):
        row = <list>work[i]
        out = <list>rows[i]
        if i < rank:
            piv = row[pivots[i]]
            for j in range(ncols):
                v = row[j]
                out[j] = Fraction(v, piv) if v else _ZERO
        else:
            for j in range(ncols):
                out[j] = _ZERO
    return pivots


def matmul_core(list a, list b, Py_ssize_t bcols):
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t kdim = len(b)
    cdef Py_ssize_t i, j, t
    cdef list a_int = [], brow
    cdef list a_den = []
    cdef object l, d, x, acc
    for i in range(n):
        brow = <list>a[i]
        a_int.append(_clear_row(brow, kdim))
        l = 1
        for t in range(kdim):
            d = brow[t].denominator
            if d != 1:
                l = l * d // gcd(l, d)
        a_den.append(l)
    # column-major cleared copy of b
    cdef list b_cols = [], b_den = []
    for j in range(bcols):
        l = 1
        for t in range(kdim):
            d = (<list>b[t])[j].denominator
            if d != 1:
                l = l * d // gcd(l, d)
        col = []
        for t in range(kdim):
            x = (<list>b[t])[j]
            col.append(x.numerator * (l // x.denominator))
        b_cols.append(col)
        b_den.append(l)
    cdef list out = [], arow, orow, bcol
    for i in range(n):
        arow = <list>a_int[i]
        orow = []
        for j in range(bcols):
            bcol = <list>b_cols[j]
            acc = 0
            for t in range(kdim):
                x = arow[t]
                if x:
                    v = bcol[t]
                    if v:
                        acc = acc + x * v
            if acc:
                orow.append(Fraction(acc, a_den[i] * b_den[j]))
            else:
                orow.append(_ZERO)
        out.append(orow)
    return out
