"""Cohomological shadows of integral transforms.

Kernels on P^m x P^n act on Q[h]/(h^{m+1}) by pull back, multiply,
and extract the coefficient of the top class of the source.  On an
elliptic curve the Poincare-bundle transform acts on (rank, degree).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chern import ChernPolynomial


@dataclass(frozen=True)
class LatticeClass:
    """(rank, degree) of an object on an elliptic curve."""

    r: int
    d: int

    def __neg__(self):
        return LatticeClass(-self.r, -self.d)


def fm_elliptic_apply(v: LatticeClass) -> LatticeClass:
    """Poincare-bundle transform on K-classes: skyscraper -> degree 0 line bundle,
    O -> O_{P_0}[-1]."""
    return LatticeClass(v.d, -v.r)


def elliptic_euler_form(v: LatticeClass, w: LatticeClass) -> int:
    """chi(v, w) = r d' - d r' on an elliptic curve."""
    return v.r * w.d - v.d * w.r


@dataclass(frozen=True)
class CorrespondenceClass:
    """``sum a[i][j] h1^i h2^j`` on P^m x P^n."""

    m: int
    n: int
    grid: tuple

    def __post_init__(self):
        g = tuple(tuple(Fraction(x) for x in row) for row in self.grid)
        if len(g) != self.m + 1 or any(len(row) != self.n + 1 for row in g):
            raise ValueError(f"grid must be {self.m + 1} x {self.n + 1}")
        object.__setattr__(self, "grid", g)

    @classmethod
    def zero(cls, m: int, n: int) -> CorrespondenceClass:
        return cls(m, n, tuple((0,) * (n + 1) for _ in range(m + 1)))

    @classmethod
    def one(cls, m: int, n: int) -> CorrespondenceClass:
        return cls(m, n, tuple(tuple(int(i == 0 and j == 0) for j in range(n + 1)) for i in range(m + 1)))

    @classmethod
    def diagonal(cls, n: int) -> CorrespondenceClass:
        return cls(n, n, tuple(tuple(int(i + j == n) for j in range(n + 1)) for i in range(n + 1)))


def corr_apply(k: CorrespondenceClass, a: ChernPolynomial) -> ChernPolynomial:
    if a.n != k.m:
        raise ValueError(f"class lives on P^{a.n}, kernel expects P^{k.m}")
    out = [Fraction(0)] * (k.n + 1)
    for i, ai in enumerate(a.coeffs):
        if ai:
            row = k.grid[k.m - i]
            for j in range(k.n + 1):
                out[j] += ai * row[j]
    return ChernPolynomial(k.n, tuple(out))


def corr_compose(k1: CorrespondenceClass, k2: CorrespondenceClass) -> CorrespondenceClass:
    """Kernel of ``corr_apply(k2, -) o corr_apply(k1, -)``."""
    if k1.n != k2.m:
        raise ValueError(f"middle factors differ: P^{k1.n} vs P^{k2.m}")
    b = k1.n
    grid = []
    for i in range(k1.m + 1):
        row = []
        for l in range(k2.n + 1):
            row.append(sum(k1.grid[i][j] * k2.grid[b - j][l] for j in range(b + 1)))
        grid.append(tuple(row))
    return CorrespondenceClass(k1.m, k2.n, tuple(grid))
