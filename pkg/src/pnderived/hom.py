"""The total Hom complex between two complexes of line-bundle sums.

Degree k of the Hom complex is ``sum_j Hom(A^j, B^{j+k})`` with each
``Hom(O(a), O(b))`` realised as the degree b-a monomials.  The
differential is ``phi -> d_B phi - (-1)^k phi d_A``, so degree-0 cocycles
are exactly the chain maps and degree-0 coboundaries the null-homotopic
ones.  When both arguments are window complexes its cohomology is Ext.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complex import ChainMap, LineBundleComplex
from .errors import ResourceLimitError
from .linalg import QQ, ExactMatrix, Field
from .poly import HomogPoly, basis_size, monomial_basis, monomial_index


# Largest dense differential (rows * columns) built before giving up.
DEFAULT_MAX_ENTRIES = 25_000_000


@dataclass(frozen=True)
class _Block:
    j: int  # source degree in A
    s: int  # summand index in A^j
    t: int  # summand index in B^{j+k}
    deg: int  # polynomial degree
    offset: int
    size: int


def hom_layout(a: LineBundleComplex, b: LineBundleComplex, k: int) -> tuple[list, dict, int]:
    """Blocks of Hom^k, their lookup table and the total dimension."""
    n = a.n
    blocks = []
    index = {}
    off = 0
    for j in a.degrees():
        tb = b.term(j + k)
        if not tb:
            continue
        for s, ta in enumerate(a.terms[j]):
            for t, tt in enumerate(tb):
                deg = tt - ta
                size = basis_size(n, deg)
                if size == 0:
                    continue
                blk = _Block(j, s, t, deg, off, size)
                blocks.append(blk)
                index[(j, s, t)] = blk
                off += size
    return blocks, index, off


def hom_degree_range(a: LineBundleComplex, b: LineBundleComplex) -> range:
    if a.is_empty() or b.is_empty():
        return range(0)
    da, db = a.degrees(), b.degrees()
    return range(db[0] - da[-1], db[-1] - da[0] + 1)


def _scatter(rows, f: HomogPoly, src_deg: int, row_off: int, col_off: int, sign: int, n: int):
    src = monomial_basis(n, src_deg)
    tgt = monomial_index(n, src_deg + f.degree)
    items = list(f.coeffs.items())
    for cj, m in enumerate(src):
        col = col_off + cj
        for e, c in items:
            row = rows[row_off + tgt[tuple(x + y for x, y in zip(m, e))]]
            row[col] += c if sign > 0 else -c


def hom_differential(a: LineBundleComplex, b: LineBundleComplex, k: int, layouts=None) -> ExactMatrix:
    """Matrix of ``D: Hom^k -> Hom^{k+1}`` in the monomial block bases."""
    n = a.n
    if layouts is None:
        layouts = {}
    src_blocks, _, ncols = layouts.get(k) or hom_layout(a, b, k)
    _, tgt_index, nrows = layouts.get(k + 1) or hom_layout(a, b, k + 1)
    rows = [[0] * ncols for _ in range(nrows)]
    # phi -> d_B phi
    for blk in src_blocks:
        jb = blk.j + k
        if jb + 1 in b.terms:
            db = b.diffs[jb]
            for t2 in range(len(b.terms[jb + 1])):
                g = db[t2][blk.t]
                if g.coeffs:
                    tgt = tgt_index[(blk.j, blk.s, t2)]
                    _scatter(rows, g, blk.deg, tgt.offset, blk.offset, 1, n)
    # phi -> -(-1)^k phi d_A
    sign = -1 if k % 2 == 0 else 1
    for blk in src_blocks:
        ja = blk.j - 1
        if ja in a.terms:
            da = a.diffs[ja]
            row = da[blk.s]
            for s2, g in enumerate(row):
                if g.coeffs:
                    tgt = tgt_index[(ja, s2, blk.t)]
                    _scatter(rows, g, blk.deg, tgt.offset, blk.offset, sign, n)
    return ExactMatrix(nrows, ncols, tuple(tuple(r) for r in rows))


def hom_cohomology_dims(
    a: LineBundleComplex, b: LineBundleComplex, field: Field = QQ, max_entries: int = DEFAULT_MAX_ENTRIES
) -> dict:
    """``k -> dim H^k(Hom(a, b))`` for all k with a nonzero value.

    Raises ResourceLimitError when a differential would have more than
    ``max_entries`` dense entries.
    """
    if a.n != b.n:
        raise ValueError(f"ambient dimensions differ: P^{a.n} vs P^{b.n}")
    degs = hom_degree_range(a, b)
    if not degs:
        return {}
    layouts = {k: hom_layout(a, b, k) for k in range(degs.start - 1, degs.stop + 1)}
    ranks = {}
    for k in range(degs.start - 1, degs.stop):
        if layouts[k][2] == 0 or layouts[k + 1][2] == 0:
            ranks[k] = 0
        elif layouts[k][2] * layouts[k + 1][2] > max_entries:
            raise ResourceLimitError(
                f"Hom differential in degree {k} would be {layouts[k + 1][2]} x {layouts[k][2]}, cap is {max_entries} entries"
            )
        else:
            ranks[k] = field.rank(hom_differential(a, b, k, layouts))
    out = {}
    for k in degs:
        dim = layouts[k][2] - ranks.get(k, 0) - ranks.get(k - 1, 0)
        if dim < 0:
            raise ArithmeticError("negative cohomology dimension")
        if dim:
            out[k] = dim
    return out


def vector_to_map(a: LineBundleComplex, b: LineBundleComplex, k: int, vec, layout=None) -> dict:
    """Decode a Hom^k coordinate vector into per-degree polynomial matrices."""
    blocks, _, _ = layout or hom_layout(a, b, k)
    nv = a.nvars
    mats = {}
    for j in a.degrees():
        if (j + k) in b.terms:
            mats[j] = [[HomogPoly.zero(nv, tt - ta) for ta in a.terms[j]] for tt in b.terms[j + k]]
    for blk in blocks:
        coeffs = vec[blk.offset: blk.offset + blk.size]
        if any(coeffs):
            mats[blk.j][blk.t][blk.s] = HomogPoly.from_vector(nv, blk.deg, coeffs)
    return {j: tuple(tuple(r) for r in m) for j, m in mats.items()}


def chain_map_from_vector(a: LineBundleComplex, b: LineBundleComplex, vec, layout=None) -> ChainMap:
    return ChainMap(a, b, vector_to_map(a, b, 0, vec, layout))
