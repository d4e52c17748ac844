"""Ext groups, hypercohomology, Serre duality and object recognition on P^n."""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb

from .complex import LineBundleComplex, shift, twist, validate
from .hom import DEFAULT_MAX_ENTRIES, chain_map_from_vector, hom_cohomology_dims, hom_differential, hom_layout
from .koszul import koszul_matrix
from .linalg import QQ, ExactMatrix, Field, rank_kernel
from .poly import HomogPoly
from .window import DEFAULT_MAX_TERMS, InvalidComplexError, WindowComplex, in_window, is_quasi_iso, reduce_to_window


class ExtTable(dict):
    """``k -> dim Ext^k``; missing degrees read as 0 and zeros are never stored."""

    def __init__(self, data=()):
        super().__init__((int(k), int(v)) for k, v in dict(data).items() if v)

    def __missing__(self, key):
        return 0

    def shifted(self, k: int) -> ExtTable:
        """The table t with ``t[i] = self[i + k]``."""
        return ExtTable({i - k: v for i, v in self.items()})

    def euler(self) -> int:
        return sum(v if k % 2 == 0 else -v for k, v in self.items())

    def is_zero(self) -> bool:
        return not self

    def __add__(self, other):
        keys = set(self) | set(other)
        return ExtTable({k: self[k] + other[k] for k in keys})

    def __repr__(self):
        return f"ExtTable({dict(sorted(self.items()))})"


def _window(c: LineBundleComplex, minimize: bool, max_terms: int) -> LineBundleComplex:
    if not minimize and in_window(c):
        return c
    return reduce_to_window(c, max_terms)


def ext_table(
    a: LineBundleComplex,
    b: LineBundleComplex,
    field: Field = QQ,
    max_terms: int = DEFAULT_MAX_TERMS,
    minimize: bool = True,
    max_entries: int = DEFAULT_MAX_ENTRIES,
) -> ExtTable:
    """Dimensions of ``Ext^k(a, b) = Hom_D(a, b[k])``.

    Both arguments are replaced by window representatives and the answer
    is read off the Hom complex between them.  With ``minimize=False``,
    arguments already in the window are used as given (no pruning).
    ``max_terms`` caps the reduction and ``max_entries`` the dense Hom
    differentials; both raise ResourceLimitError.
    """
    if a.n != b.n:
        raise ValueError(f"ambient dimensions differ: P^{a.n} vs P^{b.n}")
    wa = _window(a, minimize, max_terms)
    wb = _window(b, minimize, max_terms)
    return ExtTable(hom_cohomology_dims(wa, wb, field, max_entries))


def sheaf_cohomology(c: LineBundleComplex, field: Field = QQ, max_terms: int = DEFAULT_MAX_TERMS) -> ExtTable:
    """Hypercohomology ``k -> dim H^k(P^n, c)``."""
    return ext_table(LineBundleComplex.single(c.n, 0), c, field, max_terms)


def serre_functor(c: LineBundleComplex) -> LineBundleComplex:
    """``c (x) omega[n]`` with ``omega = O(-n-1)``."""
    return shift(twist(c, -c.n - 1), c.n)


def serre_duality_check(a: LineBundleComplex, b: LineBundleComplex, field: Field = QQ) -> bool:
    lhs = ext_table(a, b, field)
    rhs = ext_table(b, serre_functor(a), field)
    return all(lhs[k] == rhs[-k] for k in set(lhs) | {-k for k in rhs})


# skyscrapers


def koszul_point(forms, n: int | None = None) -> WindowComplex:
    """Structure sheaf of the point cut out by n independent linear forms.

    ``forms`` are degree-1 HomogPolys or coefficient lists of length n+1.
    The Koszul complex sits in degrees -n..0 with ``O(-j)^{C(n, j)}`` in
    degree -j.
    """
    forms = [f if isinstance(f, HomogPoly) else HomogPoly.linear_form(list(f)) for f in forms]
    if not forms:
        raise ValueError("need at least one linear form")
    nv = forms[0].nvars
    if n is None:
        n = nv - 1
    if len(forms) != n or nv != n + 1 or any(f.degree != 1 or f.nvars != nv for f in forms):
        raise ValueError(f"a point of P^{n} needs {n} linear forms in {n + 1} variables")
    if QQ.rank(ExactMatrix.from_rows([f.coefficient_vector() for f in forms])) != n:
        raise ValueError("linear forms are dependent")
    terms = {-j: (-j,) * comb(n, j) for j in range(n + 1)}
    diffs = {-j: koszul_matrix(nv, j, forms) for j in range(1, n + 1)}
    return WindowComplex(n, terms, diffs)


def point_forms(coords) -> list:
    """n linear forms vanishing exactly at the point ``coords`` of P^n."""
    row = ExactMatrix.from_rows([list(coords)])
    if row.is_zero():
        raise ValueError("the zero vector is not a point")
    _, ker = rank_kernel(row)
    return [HomogPoly.linear_form(v) for v in ker]


def coordinate_point(n: int, i: int) -> WindowComplex:
    coords = [0] * (n + 1)
    coords[i] = 1
    return koszul_point(point_forms(coords), n)


# point objects


INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class PointCandidateReport:
    """Flags for the three point-object conditions.

    ``serre_fixed`` is True, False or ``"indeterminate"``; ``mode`` says
    whether it was settled by an explicit quasi-isomorphism (``exact``) or
    by comparing Ext dimensions (``dimension``).
    """

    serre_fixed: object
    simple: bool
    no_negative_self_ext: bool
    mode: str
    self_ext: ExtTable
    tries: int = 0

    @property
    def is_point(self):
        return self.serre_fixed is True and self.simple and self.no_negative_self_ext


def _chain_maps_degree0(a, b, field):
    layout = hom_layout(a, b, 0)
    if layout[2] == 0:
        return layout, []
    d0 = hom_differential(a, b, 0, {0: layout, 1: hom_layout(a, b, 1)})
    if d0.nrows == 0:
        _, ker = rank_kernel(ExactMatrix(0, layout[2], ()), QQ)
    else:
        _, ker = rank_kernel(d0, QQ)
    return layout, ker


def point_object_check(c: LineBundleComplex, field: Field = QQ, seed: int = 0, draws: int = 64) -> PointCandidateReport:
    rep = validate(c)
    if not rep.ok:
        raise InvalidComplexError(rep.violation.message)
    n = c.n
    self_ext = ext_table(c, c, field)
    simple = self_ext[0] == 1
    no_neg = all(v == 0 for k, v in self_ext.items() if k < 0)
    target = shift(serre_functor(c), -n)
    if ext_table(c, target, field) != self_ext:
        return PointCandidateReport(False, simple, no_neg, "dimension", self_ext)
    wa = reduce_to_window(c)
    wb = reduce_to_window(target)
    layout, ker = _chain_maps_degree0(wa, wb, field)
    tries = 0
    for v in ker:
        tries += 1
        if is_quasi_iso(chain_map_from_vector(wa, wb, v, layout), field):
            return PointCandidateReport(True, simple, no_neg, "exact", self_ext, tries)
    if ker:
        rng = random.Random(seed)
        for _ in range(draws):
            tries += 1
            coeffs = [rng.randint(-5, 5) for _ in ker]
            v = [sum(a * x[i] for a, x in zip(coeffs, ker)) for i in range(len(ker[0]))]
            if is_quasi_iso(chain_map_from_vector(wa, wb, v, layout), field):
                return PointCandidateReport(True, simple, no_neg, "exact", self_ext, tries)
    return PointCandidateReport(INDETERMINATE, simple, no_neg, "exact", self_ext, tries)


# line-bundle objects


@dataclass(frozen=True)
class LineBundleReport:
    points: list  # (label, ExtTable, passes, s)
    common_shift: int | None
    passed: bool


def default_sample(n: int, seed: int = 0, extra: int = 2) -> list:
    """Coordinate points plus ``extra`` seeded random rational points."""
    pts = []
    for i in range(n + 1):
        coords = [0] * (n + 1)
        coords[i] = 1
        pts.append(coords)
    rng = random.Random(seed)
    for _ in range(extra):
        coords = [0] * (n + 1)
        while not any(coords):
            coords = [rng.randint(-3, 3) for _ in range(n + 1)]
        pts.append(coords)
    return pts


def line_bundle_object_check(c: LineBundleComplex, sample=None, field: Field = QQ, seed: int = 0) -> LineBundleReport:
    """Sampled test that ``c`` is a shifted line bundle.

    ``sample`` entries are coordinate vectors of points or lists of n
    linear forms; by default coordinate points plus two random points.
    """
    n = c.n
    if sample is None:
        sample = default_sample(n, seed)
    results = []
    shifts = set()
    for entry in sample:
        entry = list(entry)
        if entry and isinstance(entry[0], HomogPoly):
            pt = koszul_point(entry, n)
            label = "forms(" + ", ".join(str(f) for f in entry) + ")"
        elif entry and isinstance(entry[0], (list, tuple)):
            pt = koszul_point([HomogPoly.linear_form(list(f)) for f in entry], n)
            label = f"forms{entry}"
        else:
            pt = koszul_point(point_forms(entry), n)
            label = "[" + ":".join(str(x) for x in entry) + "]"
        tab = ext_table(c, pt, field)
        ok = len(tab) == 1 and next(iter(tab.values())) == 1
        s = next(iter(tab)) if ok else None
        if ok:
            shifts.add(s)
        results.append((label, tab, ok, s))
    passed = all(r[2] for r in results) and len(shifts) == 1
    return LineBundleReport(results, next(iter(shifts)) if passed else None, passed)
