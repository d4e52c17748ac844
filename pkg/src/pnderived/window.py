"""Reduction to the window O(-n), ..., O and the predicates built on it.

Any complex of line-bundle sums is rewritten into one whose twists all
lie in [-n, 0].  A summand O(d) with d > 0 is replaced by the resolution

    O(d-n-1) -> ... -> V (x) O(d-1)     (-> O(d))

taken from the Koszul complex, and the maps into O(d) are lifted along it
with the explicit Koszul homotopy.  Summands with d < -n are handled by
duality.  The largest out-of-window twist is always treated first; after
pruning such a summand has no outgoing maps, which is what makes the
substitution a plain cone.
"""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .complex import (
    ChainMap,
    LineBundleComplex,
    cone,
    dual,
    prune,
    tensor,
    validate,
    validate_chain_map,
)
from .errors import InvalidComplexError, ReductionError, ResourceLimitError
from .hom import hom_cohomology_dims
from .koszul import homotopy, koszul_entries, koszul_matrix, wedge_basis
from .linalg import QQ, ExactMatrix, Field
from .poly import HomogPoly, monomial_basis, monomial_index

DEFAULT_MAX_TERMS = 20000


class WindowComplex(LineBundleComplex):
    """A LineBundleComplex whose twists all lie in [-n, 0]."""

    def __post_init__(self):
        super().__post_init__()
        bad = [t for ts in self.terms.values() for t in ts if not -self.n <= t <= 0]
        if bad:
            raise ValueError(f"twists {sorted(set(bad))} lie outside the window [-{self.n}, 0]")

    @classmethod
    def of(cls, c: LineBundleComplex) -> WindowComplex:
        if isinstance(c, WindowComplex):
            return c
        return cls(c.n, c.terms, c.diffs)


def in_window(c: LineBundleComplex) -> bool:
    return all(-c.n <= t <= 0 for ts in c.terms.values() for t in ts)


# Koszul rewrite rules


@dataclass(frozen=True, eq=False)
class KoszulRewriteRule:
    """The exact Koszul complex used to move a twist toward the window.

    ``lower``: ``O(-n-1) -> ... -> O(-1)^{n+1} -> O`` in degrees -n-1..0,
    to be twisted by d.  ``raise``: its dual, ``O -> O(1)^{n+1} -> ...
    -> O(n+1)`` in degrees 0..n+1.
    """

    n: int
    direction: str
    complex: LineBundleComplex

    def graded_ranks(self, m: int) -> dict:
        """Ranks of the differentials on global sections of ``complex(m)``."""
        c = self.complex
        out = {}
        for i in c.degrees():
            if i + 1 in c.terms:
                out[i] = QQ.rank(graded_piece(c.n, c.diffs[i], c.terms[i], c.terms[i + 1], m))
        return out

    def is_exact_in_degree(self, m: int) -> bool:
        c = self.complex
        ranks = self.graded_ranks(m)
        for i in c.degrees():
            dim = sum(comb(c.n + m + t, c.n) if m + t >= 0 else 0 for t in c.terms[i])
            if dim != ranks.get(i, 0) + ranks.get(i - 1, 0):
                return False
        return True


def graded_piece(n: int, m, src: tuple, tgt: tuple, shift: int) -> ExactMatrix:
    """Linear map induced by a polynomial matrix on sections of degree ``shift``."""
    src_sizes = [len(monomial_basis(n, shift + s)) for s in src]
    tgt_sizes = [len(monomial_basis(n, shift + t)) for t in tgt]
    ncols = sum(src_sizes)
    nrows = sum(tgt_sizes)
    rows = [[0] * ncols for _ in range(nrows)]
    col_off = 0
    for c, s in enumerate(src):
        row_off = 0
        basis = monomial_basis(n, shift + s)
        for r, t in enumerate(tgt):
            f = m[r][c]
            if f.coeffs and basis:
                idx = monomial_index(n, shift + t)
                for j, mono in enumerate(basis):
                    for e, v in f.coeffs.items():
                        rows[row_off + idx[tuple(a + b for a, b in zip(mono, e))]][col_off + j] = v
            row_off += tgt_sizes[r]
        col_off += src_sizes[c]
    return ExactMatrix(nrows, ncols, tuple(tuple(r) for r in rows))


def _koszul_complex(n: int) -> LineBundleComplex:
    nv = n + 1
    terms = {-j: (-j,) * comb(nv, j) for j in range(nv + 1)}
    diffs = {-j: koszul_matrix(nv, j) for j in range(1, nv + 1)}
    return LineBundleComplex(n, terms, diffs)


@lru_cache(maxsize=None)
def koszul_rule(n: int, direction: str) -> KoszulRewriteRule:
    """Rewrite rule for P^n, checked exact in internal degrees 1..n+2."""
    k = _koszul_complex(n)
    if direction == "raise":
        k = dual(k)
    elif direction != "lower":
        raise ValueError("direction must be 'lower' or 'raise'")
    rule = KoszulRewriteRule(n, direction, k)
    if not validate(k).ok:
        raise ReductionError("Koszul complex fails d^2 = 0")
    # as S-modules: lowering complex exact in internal degree > 0, raising one away from -n-1
    probe = range(1, n + 3) if direction == "lower" else range(-n, 2)
    for m in probe:
        if not rule.is_exact_in_degree(m):
            raise ReductionError(f"Koszul complex on P^{n} not exact in degree {m}")
    return rule


# reduction


def _zero_cache(nv):
    cache = {}

    def z(deg):
        p = cache.get(deg)
        if p is None:
            p = cache[deg] = HomogPoly.zero(nv, deg)
        return p

    return z


def _lower_top_twist(c: LineBundleComplex, d: int) -> LineBundleComplex:
    """Replace every summand O(d) (d the maximal twist) by its Koszul resolution."""
    n = c.n
    nv = n + 1
    zero = _zero_cache(nv)
    replaced = []  # (degree, index)
    keep = {}
    for i in c.degrees():
        ks = []
        for idx, t in enumerate(c.terms[i]):
            if t == d:
                replaced.append((i, idx))
            else:
                ks.append(idx)
        keep[i] = ks
    for i, idx in replaced:
        if i in c.diffs:
            if any(row[idx].coeffs for row in c.diffs[i]):
                raise ReductionError(f"summand O({d}) in degree {i} has outgoing maps; complex was not pruned")

    # new term layout: kept summands first, then Koszul blocks
    new_terms = {i: [c.terms[i][k] for k in keep[i]] for i in c.degrees()}
    new_pos = {i: {k: p for p, k in enumerate(keep[i])} for i in c.degrees()}
    block_off = {}
    for s, (i, _) in enumerate(replaced):
        for j in range(1, nv + 1):
            deg = i - j + 1
            lst = new_terms.setdefault(deg, [])
            block_off[(s, j)] = len(lst)
            lst.extend([d - j] * comb(nv, j))
    new_terms = {i: ts for i, ts in new_terms.items() if ts}

    rows = {}
    for i in new_terms:
        if i + 1 in new_terms:
            tgt, src = new_terms[i + 1], new_terms[i]
            templates = {t: [zero(t - u) for u in src] for t in set(tgt)}
            rows[i] = [list(templates[t]) for t in tgt]

    # kept part of the old differential
    for i, m in c.diffs.items():
        if i not in rows:
            continue
        out = rows[i]
        ps, pt = new_pos[i], new_pos[i + 1]
        for r in keep[i + 1]:
            orow = m[r]
            nrow = out[pt[r]]
            for k in keep[i]:
                x = orow[k]
                if x.coeffs:
                    nrow[ps[k]] = x

    # Koszul differentials inside each block
    for s, (i, _) in enumerate(replaced):
        for j in range(1, nv):
            # L^{j+1} in degree i-j  ->  L^j in degree i-j+1
            out = rows[i - j]
            roff = block_off[(s, j)]
            coff = block_off[(s, j + 1)]
            for r, col, sgn, t in koszul_entries(nv, j + 1):
                v = HomogPoly.var(nv, t)
                out[roff + r][coff + col] = v if sgn > 0 else -v

    # lift the incoming maps along the resolution
    for s, (i, idx) in enumerate(replaced):
        if i - 1 not in c.diffs:
            continue
        a_row = c.diffs[i - 1][idx]
        prev = {}  # source index in C^{i-j} -> vector in L^j (dict keyed by wedge tuple)
        for k in keep.get(i - 1, ()):
            f = a_row[k]
            if not f.coeffs:
                continue
            scale = Fraction(1, d - c.terms[i - 1][k])
            vec = homotopy(nv, {(): f}, 0)
            prev[k] = {key: p.scale(scale) for key, p in vec.items()}
        j = 1
        while prev:
            _place(rows, i - j, new_pos, block_off[(s, j)], nv, j, prev)
            if j == nv:
                break
            src_deg = i - j - 1
            if src_deg not in c.diffs or not keep.get(src_deg):
                break
            dm = c.diffs[src_deg]
            nxt = {}
            for k in keep[src_deg]:
                psi = {}
                for k2, vec in prev.items():
                    g = dm[k2][k]
                    if not g.coeffs:
                        continue
                    for key, p in vec.items():
                        term = p * g
                        q = psi.get(key)
                        psi[key] = -term if q is None else q - term
                psi = {key: p for key, p in psi.items() if p.coeffs}
                if not psi:
                    continue
                scale = Fraction(1, d - c.terms[src_deg][k])
                vec = homotopy(nv, psi, j)
                vec = {key: p.scale(scale) for key, p in vec.items() if p.coeffs}
                if vec:
                    nxt[k] = vec
            prev = nxt
            j += 1

    diffs = {i: tuple(tuple(r) for r in m) for i, m in rows.items()}
    return LineBundleComplex(n, {i: tuple(ts) for i, ts in new_terms.items()}, diffs)


def _place(rows, src_deg, new_pos, row_off, nv, j, cols):
    out = rows[src_deg]
    index = {key: p for p, key in enumerate(wedge_basis(nv, j))}
    pos = new_pos[src_deg]
    for k, vec in cols.items():
        col = pos[k]
        for key, p in vec.items():
            out[row_off + index[key]][col] = p


def _lower_all(c: LineBundleComplex, hi: int, max_terms: int) -> LineBundleComplex:
    while True:
        c = prune(c)
        if c.size() > max_terms:
            raise ResourceLimitError(f"complex has {c.size()} summands, cap is {max_terms}")
        tw = c.twists()
        if not tw or tw[-1] <= hi:
            return c
        c = _lower_top_twist(c, tw[-1])


class _LRU(OrderedDict):
    def __init__(self, size):
        super().__init__()
        self.size = size

    def get_or(self, key, fn):
        if key in self:
            self.move_to_end(key)
            return self[key]
        val = fn()
        self[key] = val
        if len(self) > self.size:
            self.popitem(last=False)
        return val


_CACHE = _LRU(256)


def complex_key(c: LineBundleComplex) -> tuple:
    diffs = tuple(
        (i, tuple(tuple((x.degree, tuple(sorted(x.coeffs.items()))) for x in row) for row in m))
        for i, m in sorted(c.diffs.items())
    )
    return (c.n, tuple(sorted(c.terms.items())), diffs)


def reduce_to_window(c: LineBundleComplex, max_terms: int = DEFAULT_MAX_TERMS, check: bool = True) -> WindowComplex:
    """A window complex quasi-isomorphic to ``c`` (pruned)."""
    if check:
        rep = validate(c)
        if not rep.ok:
            raise InvalidComplexError(rep.violation.message)
    key = (complex_key(c), max_terms)
    return _CACHE.get_or(key, lambda: _reduce(c, max_terms, check))


def _reduce(c, max_terms, check):
    from .numerics.chern import chern_character

    n = c.n
    out = _lower_all(c, 0, max_terms)
    if out.twists() and out.twists()[0] < -n:
        out = dual(_lower_all(dual(out), n, max_terms))
    if not in_window(out):
        raise ReductionError("reduction left twists outside the window")
    if check:
        rep = validate(out)
        if not rep.ok:
            raise ReductionError(f"reduced complex invalid: {rep.violation.message}")
        if chern_character(out) != chern_character(c):
            raise ReductionError("Chern character changed during reduction")
    return WindowComplex.of(out)


# predicates


def is_zero_object(c: LineBundleComplex, field: Field = QQ) -> bool:
    """True iff Ext^*(O(-i), c) vanishes for i = 0..n."""
    if not in_window(c):
        raise ValueError("is_zero_object expects a window complex; call reduce_to_window first")
    if c.is_empty():
        return True
    for i in range(c.n + 1):
        if hom_cohomology_dims(LineBundleComplex.single(c.n, -i), c, field):
            return False
    return True


def is_quasi_iso(f: ChainMap, field: Field = QQ) -> bool:
    rep = validate_chain_map(f)
    if not rep.ok:
        raise ValueError(f"not a chain map: {rep.violation.message}")
    if not (in_window(f.source) and in_window(f.target)):
        raise ValueError("is_quasi_iso expects a map between window complexes")
    return is_zero_object(cone(f, check=False), field)


# Beilinson data


def omega_resolution(n: int, i: int) -> LineBundleComplex:
    """``Omega^i(i)`` on P^n as the complex ``L^i O -> L^{i-1} O(1) -> ... -> O(i)``.

    Degrees 0..i; it is exact except in degree 0, where the cohomology is
    ``Omega^i(i)``.
    """
    if not 0 <= i <= n:
        raise ValueError(f"need 0 <= i <= {n}")
    nv = n + 1
    terms = {k: (k,) * comb(nv, i - k) for k in range(i + 1)}
    diffs = {k: koszul_matrix(nv, i - k) for k in range(i)}
    return LineBundleComplex(n, terms, diffs)


def beilinson_multiplicities(c: LineBundleComplex, field: Field = QQ, max_terms: int = DEFAULT_MAX_TERMS) -> dict:
    """``m[i][k] = dim H^k(c (x) Omega^i(i))`` for i = 0..n (nonzero k only)."""
    rep = validate(c)
    if not rep.ok:
        raise InvalidComplexError(rep.violation.message)
    out = {}
    o = LineBundleComplex.single(c.n, 0)
    for i in range(c.n + 1):
        w = reduce_to_window(tensor(c, omega_resolution(c.n, i)), max_terms)
        out[i] = hom_cohomology_dims(o, w, field)
    return out
