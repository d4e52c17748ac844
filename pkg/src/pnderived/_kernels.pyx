# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled elimination kernels.

Same functions and semantics as :mod:`pnderived._kernels_py`.  Matrices
are copied into a contiguous int64 buffer.  Modular elimination needs
p < 2**31 so that products fit.  Integer elimination checks every
multiply and subtract for overflow and hands the matrix to the
pure-Python kernel (arbitrary precision) when int64 is not enough.
"""

from fractions import Fraction
from math import gcd as _pygcd

from libc.stdlib cimport free, malloc

from . import _kernels_py

BACKEND = "cython"

cdef extern from *:
    """
    static inline int pnd_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int pnd_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int pnd_mul_ovf(long long a, long long b, long long *r) nogil
    int pnd_sub_ovf(long long a, long long b, long long *r) nogil


cdef inline long long _gcd(long long a, long long b) nogil:
    cdef long long t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef inline long long _inv_mod(long long a, long long p) nogil:
    # extended Euclid; a is nonzero mod p and p is prime
    cdef long long t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef long long* _load_mod(rows, Py_ssize_t nrows, Py_ssize_t ncols, long long p) except NULL:
    cdef long long* m = <long long*> malloc(max(nrows * ncols, 1) * sizeof(long long))
    if m == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j
    cdef list r
    for i in range(nrows):
        r = list(rows[i])
        for j in range(ncols):
            m[i * ncols + j] = <long long> (r[j] % p)
    return m


cdef Py_ssize_t _eliminate_mod(long long* m, Py_ssize_t nrows, Py_ssize_t ncols, long long p,
                               bint full, Py_ssize_t* pivots) nogil:
    cdef Py_ssize_t rank = 0, c, i, j, piv
    cdef long long inv, a
    cdef long long* prow
    cdef long long* row
    for c in range(ncols):
        piv = -1
        for i in range(rank, nrows):
            if m[i * ncols + c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(ncols):
                a = m[piv * ncols + j]
                m[piv * ncols + j] = m[rank * ncols + j]
                m[rank * ncols + j] = a
        prow = m + rank * ncols
        inv = _inv_mod(prow[c], p)
        for j in range(c, ncols):
            prow[j] = prow[j] * inv % p
        for i in range(0 if full else rank + 1, nrows):
            if i == rank:
                continue
            row = m + i * ncols
            a = row[c]
            if not a:
                continue
            for j in range(c, ncols):
                if prow[j]:
                    row[j] = (row[j] - a * prow[j]) % p
                    if row[j] < 0:
                        row[j] += p
        pivots[rank] = c
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_mod_p(rows, p):
    """Rank over F_p for a prime p < 2**31."""
    rows = list(rows)
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0:
        return 0
    cdef Py_ssize_t ncols = len(rows[0])
    if ncols == 0:
        return 0
    if p >= 2**31:
        return _kernels_py.rank_mod_p(rows, p)
    cdef long long pp = p
    cdef long long* m = _load_mod(rows, nrows, ncols, pp)
    cdef Py_ssize_t* piv = <Py_ssize_t*> malloc(nrows * sizeof(Py_ssize_t))
    cdef Py_ssize_t r
    try:
        with nogil:
            r = _eliminate_mod(m, nrows, ncols, pp, False, piv)
    finally:
        free(m)
        free(piv)
    return r


def rref_mod_p(rows, p):
    """Reduced row echelon form over F_p: ``(pivot_columns, reduced_rows)``."""
    rows = list(rows)
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t ncols = len(rows[0]) if nrows else 0
    if nrows == 0 or ncols == 0 or p >= 2**31:
        return _kernels_py.rref_mod_p(rows, p)
    cdef long long pp = p
    cdef long long* m = _load_mod(rows, nrows, ncols, pp)
    cdef Py_ssize_t* piv = <Py_ssize_t*> malloc(nrows * sizeof(Py_ssize_t))
    cdef Py_ssize_t r, i, j
    try:
        with nogil:
            r = _eliminate_mod(m, nrows, ncols, pp, True, piv)
        pivots = [piv[i] for i in range(r)]
        out = [[m[i * ncols + j] for j in range(ncols)] for i in range(r)]
    finally:
        free(m)
        free(piv)
    return pivots, out


cdef long long* _load_int(rows, Py_ssize_t nrows, Py_ssize_t ncols) except? NULL:
    # returns NULL (without an exception) when an entry does not fit in int64
    cdef long long* m = <long long*> malloc(max(nrows * ncols, 1) * sizeof(long long))
    if m == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j
    cdef list r
    cdef object x
    try:
        for i in range(nrows):
            r = rows[i] if type(rows[i]) is list else list(rows[i])
            for j in range(ncols):
                x = r[j]
                m[i * ncols + j] = x if x else 0
    except OverflowError:
        free(m)
        return NULL
    return m


cdef int _ff_eliminate(long long* m, Py_ssize_t nrows, Py_ssize_t ncols, bint full,
                       Py_ssize_t* pivots, Py_ssize_t* rank_out) nogil:
    """Fraction-free elimination with content division; returns 1 on overflow."""
    cdef Py_ssize_t rank = 0, c, i, j, piv
    cdef long long p, a, g, pp, aa, x, y, best
    cdef long long* prow
    cdef long long* row
    for c in range(ncols):
        # smallest nonzero pivot keeps entry growth down
        piv = -1
        best = 0
        for i in range(rank, nrows):
            a = m[i * ncols + c]
            if a < 0:
                a = -a
            if a and (piv < 0 or a < best):
                piv = i
                best = a
                if a == 1:
                    break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(ncols):
                a = m[piv * ncols + j]
                m[piv * ncols + j] = m[rank * ncols + j]
                m[rank * ncols + j] = a
        prow = m + rank * ncols
        p = prow[c]
        for i in range(0 if full else rank + 1, nrows):
            if i == rank:
                continue
            row = m + i * ncols
            a = row[c]
            if not a:
                continue
            g = _gcd(p, a)
            pp = p // g
            aa = a // g
            g = 0
            for j in range(0 if full else c, ncols):
                if pnd_mul_ovf(pp, row[j], &x):
                    return 1
                if pnd_mul_ovf(aa, prow[j], &y):
                    return 1
                if pnd_sub_ovf(x, y, &row[j]):
                    return 1
                if row[j] and g != 1:
                    g = _gcd(g, row[j])
            if g > 1:
                for j in range(0 if full else c, ncols):
                    row[j] = row[j] // g
        pivots[rank] = c
        rank += 1
        if rank == nrows:
            break
    rank_out[0] = rank
    return 0


def _nonzero_rows(rows):
    return [r for r in rows if any(r)]


def rank_int(rows):
    """Exact rank of an integer matrix; int64 fast path with overflow fallback."""
    m_rows = _nonzero_rows(rows)
    cdef Py_ssize_t nrows = len(m_rows)
    if nrows == 0:
        return 0
    cdef Py_ssize_t ncols = len(m_rows[0])
    cdef long long* m = _load_int(m_rows, nrows, ncols)
    if m == NULL:
        return _kernels_py.rank_int(m_rows)
    cdef Py_ssize_t* piv = <Py_ssize_t*> malloc(nrows * sizeof(Py_ssize_t))
    cdef Py_ssize_t r = 0
    cdef int ovf
    try:
        with nogil:
            ovf = _ff_eliminate(m, nrows, ncols, False, piv, &r)
    finally:
        free(m)
        free(piv)
    if ovf:
        # rank mod p never exceeds the rank over Q, so a full modular rank is exact
        full = min(nrows, ncols)
        if rank_mod_p(m_rows, 2147483647) == full:
            return full
        return _kernels_py.rank_int(m_rows)
    return r


def _lcm(a, b):
    return a // _pygcd(a, b) * b


def rref_frac(rows):
    """Reduced row echelon form over Q: ``(pivot_columns, Fraction rows)``.

    Each row is scaled to integers (this does not change the row space),
    reduced fraction-free in int64, then normalised by its pivot.
    """
    rows = list(rows)
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t ncols = len(rows[0]) if nrows else 0
    if nrows == 0 or ncols == 0:
        return _kernels_py.rref_frac(rows)
    int_rows = []
    for src in rows:
        den = 1
        for x in src:
            if type(x) is not int:
                den = _lcm(den, Fraction(x).denominator)
        if den == 1:
            int_rows.append([int(x) for x in src])
        else:
            int_rows.append([int(Fraction(x) * den) for x in src])
    cdef long long* m = _load_int(int_rows, nrows, ncols)
    if m == NULL:
        return _kernels_py.rref_frac(rows)
    cdef Py_ssize_t* piv = <Py_ssize_t*> malloc(nrows * sizeof(Py_ssize_t))
    cdef Py_ssize_t r = 0, i, j
    cdef int ovf
    try:
        with nogil:
            ovf = _ff_eliminate(m, nrows, ncols, True, piv, &r)
        if not ovf:
            pivots = [piv[i] for i in range(r)]
            out = []
            for i in range(r):
                lead = m[i * ncols + piv[i]]
                out.append([Fraction(m[i * ncols + j], lead) if m[i * ncols + j] else Fraction(0) for j in range(ncols)])
    finally:
        free(m)
        free(piv)
    if ovf:
        return _kernels_py.rref_frac(rows)
    return pivots, out
