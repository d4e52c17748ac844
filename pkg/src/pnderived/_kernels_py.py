"""Pure-Python elimination kernels.

Reference implementation of the hot loops.  The compiled module
``pnderived._kernels`` exposes the same four functions with the same
semantics; :mod:`pnderived.kernels` picks one at import time.

All functions take a dense matrix as a list of rows and never mutate it.
"""

from math import gcd

BACKEND = "python"


def _content(row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return 1
    return g


def rank_int(rows):
    """Exact rank of an integer matrix by fraction-free elimination.

    Rows are combined as ``p*row - a*pivot_row`` and divided by their
    content, which keeps entries small without any rational arithmetic.
    """
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    nrows = len(m)
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        piv = -1
        for i in range(rank, nrows):
            if m[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        p = prow[c]
        for i in range(rank + 1, nrows):
            row = m[i]
            a = row[c]
            if not a:
                continue
            g = gcd(p, a)
            pp, aa = p // g, a // g
            for j in range(c, ncols):
                row[j] = pp * row[j] - aa * prow[j]
            g = _content(row)
            if g > 1:
                for j in range(c, ncols):
                    row[j] //= g
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_mod_p(rows, p):
    """Rank over F_p; entries are arbitrary Python ints."""
    m = [[x % p for x in r] for r in rows]
    m = [r for r in m if any(r)]
    if not m:
        return 0
    nrows = len(m)
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        piv = -1
        for i in range(rank, nrows):
            if m[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        inv = pow(prow[c], p - 2, p)
        for j in range(c, ncols):
            prow[j] = prow[j] * inv % p
        for i in range(rank + 1, nrows):
            row = m[i]
            a = row[c]
            if not a:
                continue
            for j in range(c, ncols):
                row[j] = (row[j] - a * prow[j]) % p
        rank += 1
        if rank == nrows:
            break
    return rank


def rref_mod_p(rows, p):
    """Reduced row echelon form over F_p.

    Returns ``(pivot_columns, reduced_rows)`` where ``reduced_rows`` holds
    exactly the nonzero rows, each with a 1 in its pivot column.
    """
    m = [[x % p for x in r] for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    rank = 0
    for c in range(ncols):
        piv = -1
        for i in range(rank, nrows):
            if m[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        inv = pow(prow[c], p - 2, p)
        for j in range(c, ncols):
            prow[j] = prow[j] * inv % p
        for i in range(nrows):
            if i == rank:
                continue
            row = m[i]
            a = row[c]
            if not a:
                continue
            for j in range(c, ncols):
                row[j] = (row[j] - a * prow[j]) % p
        pivots.append(c)
        rank += 1
        if rank == nrows:
            break
    return pivots, m[:rank]


def rref_frac(rows):
    """Reduced row echelon form over Q; entries may be int or Fraction.

    Returns ``(pivot_columns, reduced_rows)`` with Fraction entries.
    """
    from fractions import Fraction

    m = [[Fraction(x) for x in r] for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    rank = 0
    for c in range(ncols):
        piv = -1
        for i in range(rank, nrows):
            if m[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        inv = 1 / prow[c]
        for j in range(c, ncols):
            prow[j] *= inv
        for i in range(nrows):
            if i == rank:
                continue
            row = m[i]
            a = row[c]
            if not a:
                continue
            for j in range(c, ncols):
                if prow[j]:
                    row[j] -= a * prow[j]
        pivots.append(c)
        rank += 1
        if rank == nrows:
            break
    return pivots, m[:rank]
