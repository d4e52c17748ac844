"""Bounded complexes of sums of line bundles on P^n.

A :class:`LineBundleComplex` has, in each cohomological degree i, a term
``O(t_1) + ... + O(t_r)`` recorded as the tuple ``(t_1, ..., t_r)``, and a
differential ``d^i`` from degree i to degree i+1 given as a matrix of
homogeneous polynomials.  Entry ``[r][c]`` of ``d^i`` maps summand c of the
source to summand r of the target and has degree ``target[r] - source[c]``.

Sign conventions (all verified by :func:`validate` in the test suite):

* differentials raise degree; matrices act on column vectors;
* ``shift(C, k)`` has terms ``C^{i+k}`` and differentials ``(-1)^k d^{i+k}``;
* ``cone(f)`` has terms ``A^{i+1} + B^i`` and differential
  ``[[-d_A, 0], [f, d_B]]``;
* ``tensor`` uses ``d(a x b) = da x b + (-1)^i a x db`` for a in degree i;
* ``dual`` puts ``O(-t)`` in degree -i and uses the plain transpose, so it
  is a strict involution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .poly import HomogPoly, _norm

Matrix = tuple  # tuple of rows, each a tuple of HomogPoly


def zero_matrix(nvars: int, tgt: tuple, src: tuple) -> Matrix:
    return tuple(tuple(HomogPoly.zero(nvars, b - a) for a in src) for b in tgt)


def poly_matmul(nvars: int, left: Matrix, right: Matrix, tgt: tuple, mid: tuple, src: tuple) -> Matrix:
    """``left @ right`` where right: src -> mid and left: mid -> tgt."""
    out = []
    ncols = len(src)
    # nonzero entries of each column of ``right``, gathered once
    rcols = [[(k, right[k][c].coeffs) for k in range(len(mid)) if right[k][c].coeffs] for c in range(ncols)]
    for r, b in enumerate(tgt):
        row = []
        lrow = left[r]
        for c, a in enumerate(src):
            acc = {}
            for k, yc in rcols[c]:
                xc = lrow[k].coeffs
                if not xc:
                    continue
                for e1, c1 in xc.items():
                    for e2, c2 in yc.items():
                        e = tuple(u + v for u, v in zip(e1, e2))
                        acc[e] = acc.get(e, 0) + c1 * c2
            row.append(HomogPoly(nvars, b - a, {e: _norm(v) for e, v in acc.items() if v}, check=False))
        out.append(tuple(row))
    return tuple(out)


def _neg(m: Matrix) -> Matrix:
    return tuple(tuple(-x for x in row) for row in m)


@dataclass(frozen=True, eq=False)
class LineBundleComplex:
    """A bounded complex of direct sums of line bundles O(d) on P^n."""

    n: int
    terms: Mapping[int, tuple] = field(default_factory=dict)
    diffs: Mapping[int, Matrix] = field(default_factory=dict)

    def __post_init__(self):
        terms = {int(i): tuple(int(t) for t in ts) for i, ts in self.terms.items() if len(ts)}
        diffs = {}
        nv = self.n + 1
        for i in sorted(terms):
            if i + 1 in terms:
                m = self.diffs.get(i)
                if m is None:
                    m = zero_matrix(nv, terms[i + 1], terms[i])
                else:
                    m = tuple(tuple(row) for row in m)
                diffs[i] = m
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "diffs", diffs)

    @classmethod
    def single(cls, n: int, twists, degree: int = 0) -> LineBundleComplex:
        """The sum of O(t) for t in ``twists`` placed in one degree."""
        if isinstance(twists, int):
            twists = (twists,)
        return cls(n, {degree: tuple(twists)})

    @classmethod
    def zero(cls, n: int) -> LineBundleComplex:
        return cls(n)

    @property
    def nvars(self) -> int:
        return self.n + 1

    def term(self, i: int) -> tuple:
        return self.terms.get(i, ())

    def diff(self, i: int) -> Matrix:
        m = self.diffs.get(i)
        if m is None:
            return zero_matrix(self.nvars, self.term(i + 1), self.term(i))
        return m

    def degrees(self) -> list:
        return sorted(self.terms)

    def is_empty(self) -> bool:
        return not self.terms

    def size(self) -> int:
        return sum(len(t) for t in self.terms.values())

    def twists(self) -> list:
        return sorted({t for ts in self.terms.values() for t in ts})

    def __eq__(self, other):
        if not isinstance(other, LineBundleComplex):
            return NotImplemented
        if self.n != other.n or self.terms != other.terms:
            return False
        return all(
            a == b for i in self.diffs for ra, rb in zip(self.diffs[i], other.diffs[i]) for a, b in zip(ra, rb)
        )

    def __repr__(self):
        parts = [f"{i}: {list(self.terms[i])}" for i in self.degrees()]
        return f"LineBundleComplex(n={self.n}, {{{', '.join(parts)}}})"


@dataclass(frozen=True)
class Violation:
    degree: int
    entry: tuple | None
    message: str


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violation: Violation | None = None

    def __bool__(self):
        return self.ok


def _check_matrix(nvars: int, m: Matrix, tgt: tuple, src: tuple, degree: int, what: str):
    if len(m) != len(tgt) or any(len(row) != len(src) for row in m):
        return Violation(degree, None, f"{what} has shape inconsistent with terms {src} -> {tgt}")
    for r, b in enumerate(tgt):
        for c, a in enumerate(src):
            x = m[r][c]
            if not isinstance(x, HomogPoly) or x.nvars != nvars:
                return Violation(degree, (r, c), f"{what} entry is not a polynomial in {nvars} variables")
            if x.coeffs and x.degree != b - a:
                return Violation(degree, (r, c), f"{what} entry has degree {x.degree}, expected {b - a}")
    return None


def validate(c: LineBundleComplex) -> ValidationReport:
    """Check shapes, homogeneity and ``d^{i+1} d^i = 0``; report the first failure."""
    if c.n < 1:
        return ValidationReport(False, Violation(0, None, "ambient dimension must be at least 1"))
    nv = c.nvars
    for i in c.degrees():
        if i + 1 in c.terms:
            v = _check_matrix(nv, c.diffs[i], c.terms[i + 1], c.terms[i], i, f"d^{i}")
            if v:
                return ValidationReport(False, v)
    for i in c.degrees():
        if i + 1 in c.terms and i + 2 in c.terms:
            sq = poly_matmul(nv, c.diffs[i + 1], c.diffs[i], c.terms[i + 2], c.terms[i + 1], c.terms[i])
            for r, row in enumerate(sq):
                for k, x in enumerate(row):
                    if x.coeffs:
                        return ValidationReport(False, Violation(i, (r, k), f"d^{i + 1} d^{i} is nonzero at ({r}, {k}): {x}"))
    return ValidationReport(True)


# structural operations


def shift(c: LineBundleComplex, k: int) -> LineBundleComplex:
    terms = {i - k: ts for i, ts in c.terms.items()}
    diffs = {i - k: (_neg(m) if k % 2 else m) for i, m in c.diffs.items()}
    return LineBundleComplex(c.n, terms, diffs)


def twist(c: LineBundleComplex, d: int) -> LineBundleComplex:
    terms = {i: tuple(t + d for t in ts) for i, ts in c.terms.items()}
    return LineBundleComplex(c.n, terms, c.diffs)


def dual(c: LineBundleComplex) -> LineBundleComplex:
    terms = {-i: tuple(-t for t in ts) for i, ts in c.terms.items()}
    diffs = {}
    for i, m in c.diffs.items():
        # d^i: C^i -> C^{i+1} dualises to a map from degree -i-1 to -i
        diffs[-i - 1] = tuple(zip(*m)) if m else ()
    return LineBundleComplex(c.n, terms, diffs)


def direct_sum(a: LineBundleComplex, b: LineBundleComplex) -> LineBundleComplex:
    if a.n != b.n:
        raise ValueError(f"ambient dimensions differ: P^{a.n} vs P^{b.n}")
    nv = a.nvars
    degs = sorted(set(a.terms) | set(b.terms))
    terms = {i: a.term(i) + b.term(i) for i in degs}
    diffs = {}
    for i in degs:
        if i + 1 not in terms:
            continue
        da, db = a.diff(i), b.diff(i)
        sa, sb = a.term(i), b.term(i)
        ta, tb = a.term(i + 1), b.term(i + 1)
        rows = []
        for r, t in enumerate(ta):
            rows.append(tuple(da[r]) + tuple(HomogPoly.zero(nv, t - s) for s in sb))
        for r, t in enumerate(tb):
            rows.append(tuple(HomogPoly.zero(nv, t - s) for s in sa) + tuple(db[r]))
        diffs[i] = tuple(rows)
    return LineBundleComplex(a.n, terms, diffs)


def tensor(a: LineBundleComplex, b: LineBundleComplex) -> LineBundleComplex:
    """Total complex of the termwise tensor product."""
    if a.n != b.n:
        raise ValueError(f"ambient dimensions differ: P^{a.n} vs P^{b.n}")
    nv = a.nvars
    # index of each (i, j, ia, ib) inside total degree i + j
    layout: dict[int, list] = {}
    for i in a.degrees():
        for j in b.degrees():
            blk = layout.setdefault(i + j, [])
            for ia, ta in enumerate(a.terms[i]):
                for ib, tb in enumerate(b.terms[j]):
                    blk.append((i, j, ia, ib, ta + tb))
    terms = {k: tuple(e[4] for e in blk) for k, blk in layout.items()}
    pos = {k: {e[:4]: p for p, e in enumerate(blk)} for k, blk in layout.items()}
    diffs = {}
    for k, blk in layout.items():
        if k + 1 not in layout:
            continue
        tgt = terms[k + 1]
        src = terms[k]
        rows = [[HomogPoly.zero(nv, t - s) for s in src] for t in tgt]
        tpos = pos[k + 1]
        for col, (i, j, ia, ib, _) in enumerate(blk):
            if i + 1 in a.terms:
                da = a.diffs[i]
                for ra in range(len(a.terms[i + 1])):
                    x = da[ra][ia]
                    if x.coeffs:
                        rows[tpos[(i + 1, j, ra, ib)]][col] = x
            if j + 1 in b.terms:
                db = b.diffs[j]
                for rb in range(len(b.terms[j + 1])):
                    x = db[rb][ib]
                    if x.coeffs:
                        rows[tpos[(i, j + 1, ia, rb)]][col] = -x if i % 2 else x
        diffs[k] = tuple(tuple(r) for r in rows)
    return LineBundleComplex(a.n, terms, diffs)


# chain maps


@dataclass(frozen=True, eq=False)
class ChainMap:
    """Degreewise polynomial matrices ``f^i: A^i -> B^i``."""

    source: LineBundleComplex
    target: LineBundleComplex
    maps: Mapping[int, Matrix] = field(default_factory=dict)

    def __post_init__(self):
        if self.source.n != self.target.n:
            raise ValueError("chain map between different ambient spaces")
        nv = self.source.nvars
        maps = {}
        for i in self.source.degrees():
            if i in self.target.terms:
                m = self.maps.get(i)
                maps[i] = zero_matrix(nv, self.target.terms[i], self.source.terms[i]) if m is None else tuple(tuple(r) for r in m)
        object.__setattr__(self, "maps", maps)

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.maps == other.maps

    __hash__ = None

    def at(self, i: int) -> Matrix:
        m = self.maps.get(i)
        if m is None:
            return zero_matrix(self.source.nvars, self.target.term(i), self.source.term(i))
        return m

    @classmethod
    def identity(cls, c: LineBundleComplex) -> ChainMap:
        nv = c.nvars
        maps = {
            i: tuple(tuple(HomogPoly.constant(nv, 1) if r == s else HomogPoly.zero(nv, t - u) for s, u in enumerate(ts)) for r, t in enumerate(ts))
            for i, ts in c.terms.items()
        }
        return cls(c, c, maps)

    @classmethod
    def zero(cls, a: LineBundleComplex, b: LineBundleComplex) -> ChainMap:
        return cls(a, b, {})


def validate_chain_map(f: ChainMap) -> ValidationReport:
    a, b = f.source, f.target
    nv = a.nvars
    for i, m in f.maps.items():
        v = _check_matrix(nv, m, b.terms[i], a.terms[i], i, f"f^{i}")
        if v:
            return ValidationReport(False, v)
    for i in sorted(set(a.terms) | set(b.terms)):
        lhs = poly_matmul(nv, f.at(i + 1), a.diff(i), b.term(i + 1), a.term(i + 1), a.term(i))
        rhs = poly_matmul(nv, b.diff(i), f.at(i), b.term(i + 1), b.term(i), a.term(i))
        for r in range(len(lhs)):
            for k in range(len(lhs[r])):
                if (lhs[r][k] - rhs[r][k]).coeffs:
                    return ValidationReport(False, Violation(i, (r, k), f"square at degree {i} does not commute"))
    return ValidationReport(True)


def cone(f: ChainMap, check: bool = True) -> LineBundleComplex:
    """Mapping cone: terms ``A^{i+1} + B^i``, differential ``[[-d_A, 0], [f, d_B]]``."""
    if check:
        rep = validate_chain_map(f)
        if not rep.ok:
            raise ValueError(f"not a chain map: {rep.violation.message}")
    a, b = f.source, f.target
    nv = a.nvars
    degs = sorted({i - 1 for i in a.terms} | set(b.terms))
    terms = {i: a.term(i + 1) + b.term(i) for i in degs}
    diffs = {}
    for i in degs:
        if i + 1 not in terms:
            continue
        a2 = a.term(i + 2)
        b0, b1 = b.term(i), b.term(i + 1)
        da = a.diff(i + 1)
        fa = f.at(i + 1)
        db = b.diff(i)
        rows = []
        for r, t in enumerate(a2):
            rows.append(tuple(-x for x in da[r]) + tuple(HomogPoly.zero(nv, t - s) for s in b0))
        for r, t in enumerate(b1):
            rows.append(tuple(fa[r]) + tuple(db[r]))
        diffs[i] = tuple(rows)
    return LineBundleComplex(a.n, terms, diffs)


# homotopy minimisation


def prune(c: LineBundleComplex) -> LineBundleComplex:
    """Cancel every contractible ``O(t) --u--> O(t)`` piece (u a nonzero constant).

    Uses Gaussian elimination: with ``d^i = [[alpha, beta], [gamma, u]]``
    the pair is removed and ``alpha`` becomes ``alpha - beta u^-1 gamma``.
    The result is homotopy equivalent to the input.
    """
    terms = {i: list(ts) for i, ts in c.terms.items()}
    diffs = {i: [list(row) for row in m] for i, m in c.diffs.items()}
    changed = False
    for i in sorted(terms):
        if i + 1 not in terms:
            continue
        while True:
            src, tgt = terms[i], terms[i + 1]
            d = diffs[i]
            piv = _find_unit(d, src, tgt)
            if piv is None:
                break
            changed = True
            r0, c0 = piv
            u = d[r0][c0].constant_value()
            beta = [(r, d[r][c0]) for r in range(len(tgt)) if r != r0 and d[r][c0].coeffs]
            gamma = [(k, d[r0][k]) for k in range(len(src)) if k != c0 and d[r0][k].coeffs]
            if beta and gamma:
                inv = Fraction(1) / u
                for r, bx in beta:
                    bxs = bx.scale(inv)
                    row = d[r]
                    for k, gx in gamma:
                        row[k] = row[k] - bxs * gx
            del d[r0]
            for row in d:
                del row[c0]
            if i - 1 in diffs:
                del diffs[i - 1][c0]
            if i + 1 in diffs:
                for row in diffs[i + 1]:
                    del row[r0]
            del src[c0]
            del tgt[r0]
    if not changed:
        return c
    return LineBundleComplex(c.n, {i: tuple(ts) for i, ts in terms.items()}, _clean_diffs(terms, diffs))


def _clean_diffs(terms, diffs):
    out = {}
    for i, m in diffs.items():
        if terms.get(i) and terms.get(i + 1):
            out[i] = tuple(tuple(row) for row in m)
    return out


def _find_unit(d, src, tgt):
    cols = {}
    for k, s in enumerate(src):
        cols.setdefault(s, []).append(k)
    for r, t in enumerate(tgt):
        ks = cols.get(t)
        if ks:
            row = d[r]
            for k in ks:
                if row[k].coeffs:
                    return r, k
    return None
