"""Homogeneous polynomials in x0..xn and monomial bases of graded pieces.

Monomials of a fixed degree are ordered graded-reverse-lexicographically
with x0 > x1 > ... > xn, largest first.  For three variables in degree 2
this is::

    x0^2, x0*x1, x1^2, x0*x2, x1*x2, x2^2

Every matrix produced by this package is written in these bases, so the
order is part of the public contract.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import comb

from .linalg import ExactMatrix


def _norm(x):
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


@lru_cache(maxsize=None)
def _compositions(nvars: int, d: int) -> tuple:
    if nvars == 1:
        return ((d,),)
    out = []
    for first in range(d, -1, -1):
        for rest in _compositions(nvars - 1, d - first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_basis(n: int, d: int) -> tuple:
    """Exponent tuples of length n+1 summing to d, grevlex descending.

    Empty for d < 0.  Has ``comb(n + d, n)`` elements otherwise.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if d < 0:
        return ()
    return tuple(sorted(_compositions(n + 1, d), key=lambda e: e[::-1]))


@lru_cache(maxsize=None)
def monomial_index(n: int, d: int) -> dict:
    return {e: i for i, e in enumerate(monomial_basis(n, d))}


def basis_size(n: int, d: int) -> int:
    return comb(n + d, n) if d >= 0 else 0


class HomogPoly:
    """A homogeneous polynomial with exact rational coefficients.

    Treated as immutable.  ``coeffs`` maps exponent tuples to nonzero
    coefficients; the zero polynomial of any degree has no terms.
    """

    __slots__ = ("nvars", "degree", "coeffs")

    def __init__(self, nvars: int, degree: int, coeffs=None, check: bool = True):
        self.nvars = nvars
        self.degree = degree
        if coeffs is None:
            coeffs = {}
        if check:
            clean = {}
            for e, c in coeffs.items():
                e = tuple(int(k) for k in e)
                if len(e) != nvars or sum(e) != degree or min(e) < 0:
                    raise ValueError(f"exponent {e} does not have {nvars} parts summing to {degree}")
                c = _norm(Fraction(c))
                if c:
                    clean[e] = c
            coeffs = clean
        self.coeffs = coeffs

    # constructors

    @classmethod
    def zero(cls, nvars: int, degree: int) -> HomogPoly:
        return cls(nvars, degree, {}, check=False)

    @classmethod
    def constant(cls, nvars: int, c) -> HomogPoly:
        c = _norm(Fraction(c))
        return cls(nvars, 0, {(0,) * nvars: c} if c else {}, check=False)

    @classmethod
    def var(cls, nvars: int, i: int) -> HomogPoly:
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, 1, {tuple(e): 1}, check=False)

    @classmethod
    def linear_form(cls, coeffs) -> HomogPoly:
        nv = len(coeffs)
        out = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * nv
                e[i] = 1
                out[tuple(e)] = c
        return cls(nv, 1, out)

    # queries

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def constant_value(self):
        """The scalar value of a degree-0 polynomial."""
        if self.degree != 0:
            raise ValueError("not a constant")
        return self.coeffs.get((0,) * self.nvars, 0)

    def coefficient_vector(self) -> list:
        n = self.nvars - 1
        idx = monomial_index(n, self.degree)
        v = [0] * len(idx)
        for e, c in self.coeffs.items():
            v[idx[e]] = c
        return v

    @classmethod
    def from_vector(cls, nvars: int, degree: int, vec) -> HomogPoly:
        basis = monomial_basis(nvars - 1, degree)
        return cls(nvars, degree, {e: _norm(Fraction(c)) for e, c in zip(basis, vec) if c}, check=False)

    # arithmetic

    def _same_space(self, other):
        if self.nvars != other.nvars or self.degree != other.degree:
            raise ValueError("polynomials live in different graded pieces")

    def __add__(self, other: HomogPoly) -> HomogPoly:
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        self._same_space(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _norm(v)
            else:
                out.pop(e, None)
        return HomogPoly(self.nvars, self.degree, out, check=False)

    def __neg__(self) -> HomogPoly:
        return HomogPoly(self.nvars, self.degree, {e: -c for e, c in self.coeffs.items()}, check=False)

    def __sub__(self, other: HomogPoly) -> HomogPoly:
        return self + (-other)

    def scale(self, s) -> HomogPoly:
        if not s:
            return HomogPoly.zero(self.nvars, self.degree)
        if s == 1:
            return self
        return HomogPoly(self.nvars, self.degree, {e: _norm(c * s) for e, c in self.coeffs.items()}, check=False)

    def __mul__(self, other):
        if not isinstance(other, HomogPoly):
            return self.scale(other)
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        deg = self.degree + other.degree
        if not self.coeffs or not other.coeffs:
            return HomogPoly.zero(self.nvars, deg)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        out = {e: _norm(c) for e, c in out.items() if c}
        return HomogPoly(self.nvars, deg, out, check=False)

    __rmul__ = __mul__

    def derivative(self, i: int) -> HomogPoly:
        """Partial derivative with respect to x_i."""
        out = {}
        for e, c in self.coeffs.items():
            k = e[i]
            if k:
                e2 = e[:i] + (k - 1,) + e[i + 1:]
                out[e2] = c * k
        return HomogPoly(self.nvars, self.degree - 1, out, check=False)

    def __eq__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        if not self.coeffs and not other.coeffs:
            return self.nvars == other.nvars
        return self.nvars == other.nvars and self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.nvars, self.degree, frozenset(self.coeffs.items())))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"HomogPoly({format_poly(self)!r}, deg={self.degree})"


def multiplication_matrix(f: HomogPoly, d: int) -> ExactMatrix:
    """Matrix of g -> f*g from degree d to degree d + deg f, monomial bases."""
    n = f.nvars - 1
    src = monomial_basis(n, d)
    tgt_idx = monomial_index(n, d + f.degree) if d + f.degree >= 0 else {}
    rows = [[0] * len(src) for _ in range(len(tgt_idx))]
    for j, m in enumerate(src):
        for e, c in f.coeffs.items():
            rows[tgt_idx[tuple(a + b for a, b in zip(m, e))]][j] = c
    return ExactMatrix.from_rows(rows, len(src))


# text syntax

_TERM_SPLIT = re.compile(r"(?=[+-])")
_FACTOR = re.compile(r"^(?:x(\d+)(?:\^(\d+))?|(\d+)(?:/(\d+))?)$")


def parse_poly(text: str, nvars: int, degree: int | None = None) -> HomogPoly:
    """Parse e.g. ``3/2*x0^2*x1 - x1^3`` into a HomogPoly.

    ``degree`` is required to type the zero polynomial and is checked
    against every term otherwise.
    """
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty polynomial")
    coeffs = {}
    deg_seen = None
    for raw in _TERM_SPLIT.split(s):
        if not raw:
            continue
        sign = 1
        body = raw
        if body[0] in "+-":
            sign = -1 if body[0] == "-" else 1
            body = body[1:]
        if not body:
            raise ValueError(f"dangling sign in {text!r}")
        c = Fraction(sign)
        e = [0] * nvars
        for fac in body.split("*"):
            m = _FACTOR.match(fac)
            if not m:
                raise ValueError(f"cannot parse factor {fac!r} in {text!r}")
            if m.group(1) is not None:
                i = int(m.group(1))
                if i >= nvars:
                    raise ValueError(f"variable x{i} out of range for {nvars} variables")
                e[i] += int(m.group(2) or 1)
            else:
                num = int(m.group(3))
                den = int(m.group(4) or 1)
                if den == 0:
                    raise ValueError(f"zero denominator in {text!r}")
                c *= Fraction(num, den)
        td = sum(e)
        if c:
            if deg_seen is None:
                deg_seen = td
            elif td != deg_seen:
                raise ValueError(f"{text!r} is not homogeneous")
        key = tuple(e)
        coeffs[key] = coeffs.get(key, 0) + c
    coeffs = {k: v for k, v in coeffs.items() if v}
    if degree is None:
        if deg_seen is None:
            raise ValueError(f"degree of zero polynomial {text!r} is ambiguous")
        degree = deg_seen
    if coeffs and deg_seen != degree:
        raise ValueError(f"{text!r} has degree {deg_seen}, expected {degree}")
    return HomogPoly(nvars, degree, coeffs)


def _fmt_coeff(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(f: HomogPoly) -> str:
    if not f.coeffs:
        return "0"
    basis = monomial_basis(f.nvars - 1, f.degree)
    parts = []
    for e in basis:
        c = f.coeffs.get(e)
        if not c:
            continue
        mono = "*".join(f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(e) if k)
        neg = c < 0
        a = -c if neg else c
        if mono and a == 1:
            body = mono
        elif mono:
            body = f"{_fmt_coeff(a)}*{mono}"
        else:
            body = _fmt_coeff(a)
        parts.append(("-" if neg else "+", body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s
