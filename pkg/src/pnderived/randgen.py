"""Seeded random complexes and chain maps for property checks.

Differentials are sampled degree by degree: ``d^lo`` is random, and each
later ``d^{i+1}`` is a random element of the solution space of
``d^{i+1} d^i = 0``, computed exactly with :func:`rank_kernel`.  Chain
maps are random degree-0 cocycles of the Hom complex.
"""

from __future__ import annotations

import random

from .complex import ChainMap, LineBundleComplex
from .hom import chain_map_from_vector, hom_differential, hom_layout
from .linalg import QQ, ExactMatrix, rank_kernel
from .poly import HomogPoly, basis_size, monomial_basis, multiplication_matrix


def random_poly(rng: random.Random, nvars: int, degree: int, coeff: int = 3, density: float = 0.7) -> HomogPoly:
    if degree < 0:
        return HomogPoly.zero(nvars, degree)
    coeffs = {}
    for e in monomial_basis(nvars - 1, degree):
        if rng.random() < density:
            c = rng.randint(-coeff, coeff)
            if c:
                coeffs[e] = c
    return HomogPoly(nvars, degree, coeffs, check=False)


def _random_combination(rng, basis, coeff=3):
    if not basis:
        return None
    v = [0] * len(basis[0])
    for b in basis:
        c = rng.randint(-coeff, coeff)
        if c:
            v = [x + c * y for x, y in zip(v, b)]
    return v


def _solve_next_row(rng, nv, d_prev, mid, src, t):
    """Random row ``X`` (mid -> O(t)) with ``X @ d_prev = 0``."""
    n = nv - 1
    col_sizes = [basis_size(n, t - s) for s in mid]
    row_sizes = [basis_size(n, t - u) for u in src]
    ncols = sum(col_sizes)
    if ncols == 0:
        return [HomogPoly.zero(nv, t - s) for s in mid]
    rows = [[0] * ncols for _ in range(sum(row_sizes))]
    coff = 0
    for c, s in enumerate(mid):
        roff = 0
        for c0, u in enumerate(src):
            g = d_prev[c][c0]
            if g.coeffs and col_sizes[c] and row_sizes[c0]:
                m = multiplication_matrix(g, t - s)
                for i, r in enumerate(m.rows):
                    rows[roff + i][coff: coff + col_sizes[c]] = r
            roff += row_sizes[c0]
        coff += col_sizes[c]
    if rows:
        _, ker = rank_kernel(ExactMatrix.from_rows(rows, ncols), QQ)
    else:
        _, ker = rank_kernel(ExactMatrix(0, ncols, ()), QQ)
    v = _random_combination(rng, ker)
    out = []
    coff = 0
    for c, s in enumerate(mid):
        block = v[coff: coff + col_sizes[c]] if v else []
        out.append(HomogPoly.from_vector(nv, t - s, block) if any(block) else HomogPoly.zero(nv, t - s))
        coff += col_sizes[c]
    return out


def random_complex(
    n: int,
    rng: random.Random,
    twist_range: tuple | None = None,
    max_length: int = 3,
    max_rank: int = 3,
    start: int | None = None,
) -> LineBundleComplex:
    """A random valid complex; twists default to the window [-n, 0]."""
    lo_t, hi_t = twist_range if twist_range is not None else (-n, 0)
    nv = n + 1
    length = rng.randint(1, max_length)
    if start is None:
        start = rng.randint(-1, 1)
    terms = {}
    for i in range(start, start + length):
        terms[i] = tuple(rng.randint(lo_t, hi_t) for _ in range(rng.randint(1, max_rank)))
    diffs = {}
    for i in range(start, start + length - 1):
        src, tgt = terms[i], terms[i + 1]
        if i == start:
            diffs[i] = tuple(tuple(random_poly(rng, nv, t - s) for s in src) for t in tgt)
        else:
            d_prev = diffs[i - 1]
            mid = src
            diffs[i] = tuple(tuple(_solve_next_row(rng, nv, d_prev, mid, terms[i - 1], t)) for t in tgt)
    return LineBundleComplex(n, terms, diffs)


def random_window_complex(n: int, rng: random.Random, **kw) -> LineBundleComplex:
    return random_complex(n, rng, (-n, 0), **kw)


def random_chain_map(a: LineBundleComplex, b: LineBundleComplex, rng: random.Random) -> ChainMap:
    """A random chain map a -> b (possibly zero when none exist)."""
    layout0 = hom_layout(a, b, 0)
    if layout0[2] == 0:
        return ChainMap.zero(a, b)
    d0 = hom_differential(a, b, 0, {0: layout0, 1: hom_layout(a, b, 1)})
    _, ker = rank_kernel(d0 if d0.nrows else ExactMatrix(0, layout0[2], ()), QQ)
    v = _random_combination(rng, ker)
    if v is None:
        return ChainMap.zero(a, b)
    return chain_map_from_vector(a, b, v, layout0)
