"""The Koszul complex on x0..xn and its contracting homotopy.

Basis elements of the exterior power of V = span(e_0..e_n) are sorted
index tuples.  The differential contracts with x = sum x_t e_t^*::

    d(e_J) = sum_k (-1)^k x_{J[k]} e_{J - J[k]}

and ``h(f e_J) = sum_t df/dx_t  e_t ^ e_J`` satisfies
``d h + h d = (deg f + |J|) id``, which gives exact preimages without
solving any linear system.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .poly import HomogPoly


@lru_cache(maxsize=None)
def wedge_basis(nvars: int, j: int) -> tuple:
    return tuple(combinations(range(nvars), j))


@lru_cache(maxsize=None)
def wedge_index(nvars: int, j: int) -> dict:
    return {s: k for k, s in enumerate(wedge_basis(nvars, j))}


def koszul_entries(nvars: int, j: int) -> list:
    """Nonzero entries of ``d: L^j -> L^{j-1}`` as ``(row, col, sign, var)``."""
    tgt = wedge_index(nvars, j - 1)
    out = []
    for col, s in enumerate(wedge_basis(nvars, j)):
        for k, t in enumerate(s):
            out.append((tgt[s[:k] + s[k + 1:]], col, -1 if k % 2 else 1, t))
    return out


def koszul_matrix(nvars: int, j: int, forms=None) -> tuple:
    """Polynomial matrix of ``d: L^j -> L^{j-1}``; ``forms`` defaults to the variables."""
    if forms is None:
        forms = [HomogPoly.var(nvars, t) for t in range(nvars)]
    nrows = len(wedge_basis(len(forms), j - 1))
    ncols = len(wedge_basis(len(forms), j))
    fv = forms[0].nvars
    rows = [[HomogPoly.zero(fv, 1) for _ in range(ncols)] for _ in range(nrows)]
    for r, c, sgn, t in koszul_entries(len(forms), j):
        rows[r][c] = forms[t] if sgn > 0 else -forms[t]
    return tuple(tuple(r) for r in rows)


def homotopy(nvars: int, vec: dict, j: int) -> dict:
    """Apply h to ``sum_J vec[J] e_J`` (all J of size j).

    ``vec`` maps basis tuples to polynomials; the result is keyed by
    tuples of size j+1.
    """
    out: dict = {}
    for s, f in vec.items():
        if not f.coeffs:
            continue
        for t in range(nvars):
            if t in s:
                continue
            df = f.derivative(t)
            if not df.coeffs:
                continue
            below = sum(1 for u in s if u < t)
            key = tuple(sorted(s + (t,)))
            term = -df if below % 2 else df
            prev = out.get(key)
            out[key] = term if prev is None else prev + term
    return out
