# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; mirror of ``_pykernels.py``.

Coefficients are arbitrary-precision Python ints, so the arithmetic itself
stays in CPython's bignum code; the win here is stripping interpreter
overhead from the O(n^2) index loops.
"""


def poly_mul(list a, list b, mod=0, trunc=0):
    """Convolve integer coefficient lists; see the pure-Python twin."""
    cdef Py_ssize_t na = len(a)
    cdef Py_ssize_t nb = len(b)
    if na == 0 or nb == 0:
        return []
    cdef Py_ssize_t n = na + nb - 1
    cdef Py_ssize_t tr = trunc
    if 0 < tr < n:
        n = tr
    cdef list out = [0] * n
    cdef Py_ssize_t i, j, jmax
    cdef object ai, m = mod
    for i in range(min(na, n)):
        ai = a[i]
        if ai == 0:
            continue
        jmax = nb
        if n - i < jmax:
            jmax = n - i
        for j in range(jmax):
            out[i + j] = out[i + j] + ai * b[j]
    if m:
        for i in range(n):
            out[i] = out[i] % m
    return out


def row_echelon(rows):
    """Fraction-free (Bareiss) echelon form; see the pure-Python twin."""
    cdef Py_ssize_t m = len(rows)
    if m == 0:
        return [], []
    cdef list work = [list(row) for row in rows]
    cdef Py_ssize_t n = len(<list>work[0])
    cdef list pivots = []
    cdef object prev = 1
    cdef object piv, ric
    cdef list rowi, rowr
    cdef Py_ssize_t r = 0, c, i, j, pr
    for c in range(n):
        if r == m:
            break
        pr = -1
        for i in range(r, m):
            if (<list>work[i])[c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            work[r], work[pr] = work[pr], work[r]
        rowr = <list>work[r]
        piv = rowr[c]
        for i in range(r + 1, m):
            rowi = <list>work[i]
            ric = rowi[c]
            for j in range(c + 1, n):
                rowi[j] = (piv * rowi[j] - ric * rowr[j]) // prev
            rowi[c] = 0
        pivots.append(c)
        prev = piv
        r += 1
    return work, pivots
