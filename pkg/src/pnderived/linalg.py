"""Exact scalars and dense exact linear algebra.

Two ground fields are supported: the rationals (``QQ``, scalars are
:class:`fractions.Fraction` or ``int``) and prime fields (``PrimeField(p)``,
scalars are ints in ``range(p)``).  All objects in the rest of the package
carry rational coefficients; a prime field only changes how ranks and
kernels are computed, by reducing each entry modulo p first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from . import kernels

# compiled F_p kernel keeps products of two residues inside int64
_SMALL_PRIME = 2**31


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Field:
    name = "field"

    def convert(self, x):
        raise NotImplementedError

    def rank(self, m: "ExactMatrix") -> int:
        raise NotImplementedError

    def rref(self, m: "ExactMatrix"):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class RationalField(Field):
    name = "q"

    def convert(self, x):
        return Fraction(x)

    def rank(self, m):
        if m.nrows == 0 or m.ncols == 0:
            return 0
        return kernels.rank_int(_integer_rows(m.rows))

    def rref(self, m):
        return kernels.rref_frac(m.rows)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("q")


class PrimeField(Field):
    """The prime field F_p.  Raises ValueError unless p is prime."""

    def __init__(self, p: int):
        p = int(p)
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"fp:{p}"

    def convert(self, x):
        x = Fraction(x)
        den = x.denominator % self.p
        if den == 0:
            raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
        return x.numerator * pow(den, self.p - 2, self.p) % self.p

    def _reduce(self, rows):
        return [[self.convert(x) for x in r] for r in rows]

    def rank(self, m):
        if m.nrows == 0 or m.ncols == 0:
            return 0
        rows = self._reduce(m.rows)
        if self.p < _SMALL_PRIME:
            return kernels.rank_mod_p(rows, self.p)
        from . import _kernels_py

        return _kernels_py.rank_mod_p(rows, self.p)

    def rref(self, m):
        rows = self._reduce(m.rows)
        if self.p < _SMALL_PRIME:
            return kernels.rref_mod_p(rows, self.p)
        from . import _kernels_py

        return _kernels_py.rref_mod_p(rows, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))


QQ = RationalField()


def parse_field(text: str) -> Field:
    """Parse ``q`` or ``fp:<prime>``."""
    text = text.strip().lower()
    if text in ("q", "qq"):
        return QQ
    if text.startswith("fp:"):
        return PrimeField(int(text[3:]))
    raise ValueError(f"unknown field {text!r}; expected 'q' or 'fp:<prime>'")


def _integer_rows(rows):
    """Scale each row by the lcm of its denominators."""
    out = []
    for r in rows:
        den = 1
        plain = True
        for x in r:
            if type(x) is not int:
                plain = False
                d = x.denominator
                if d != 1:
                    den = lcm(den, d)
        if plain:
            out.append(list(r))
        elif den == 1:
            out.append([int(x) for x in r])
        else:
            out.append([int(x * den) for x in r])
    return out


@dataclass(frozen=True, eq=False)
class ExactMatrix:
    """Dense matrix with exact rational entries, stored row-major."""

    nrows: int
    ncols: int
    rows: tuple

    def __post_init__(self):
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise ValueError("row data does not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> ExactMatrix:
        rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> ExactMatrix:
        return cls(nrows, ncols, tuple((0,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(self.ncols, self.nrows, tuple(zip(*self.rows)) if self.nrows else tuple(() for _ in range(self.ncols)))

    T = property(transpose)

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.transpose().rows
        out = []
        for r in self.rows:
            out.append(tuple(sum(a * b for a, b in zip(r, c) if a and b) for c in cols))
        return ExactMatrix(self.nrows, other.ncols, tuple(out))

    def apply(self, v: Sequence) -> list:
        return [sum(a * b for a, b in zip(r, v) if a and b) for r in self.rows]

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> ExactMatrix:
        rows = [self.rows[i] for i in row_perm]
        return ExactMatrix.from_rows([[r[j] for j in col_perm] for r in rows], len(col_perm))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s)
        )

    def __repr__(self):
        body = "; ".join(" ".join(_fmt(x) for x in r) for r in self.rows)
        return f"ExactMatrix({self.nrows}x{self.ncols}: [{body}])"


def _fmt(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rank(m: ExactMatrix, field: Field = QQ) -> int:
    return field.rank(m)


def rank_kernel(m: ExactMatrix, field: Field = QQ) -> tuple[int, list[list]]:
    """Exact rank and a basis of the right kernel ``{v : m v = 0}``.

    Kernel vectors are returned as lists of field scalars, one per free
    column, normalised to have a 1 in that column.
    """
    if m.nrows == 0:
        one = field.convert(1)
        zero = field.convert(0)
        return 0, [[one if i == j else zero for i in range(m.ncols)] for j in range(m.ncols)]
    pivots, red = field.rref(m)
    r = len(pivots)
    pivset = set(pivots)
    zero = field.convert(0)
    one = field.convert(1)
    basis = []
    for free in range(m.ncols):
        if free in pivset:
            continue
        v = [zero] * m.ncols
        v[free] = one
        for row, pc in zip(red, pivots):
            a = row[free]
            if a:
                v[pc] = -a if isinstance(field, RationalField) else (-a) % field.p
        basis.append(v)
    return r, basis


def solve(m: ExactMatrix, b: Sequence, field: Field = QQ) -> list | None:
    """A particular solution of ``m x = b`` or ``None`` when inconsistent."""
    aug = ExactMatrix.from_rows([list(r) + [bi] for r, bi in zip(m.rows, b)], m.ncols + 1)
    if m.nrows == 0:
        return [field.convert(0)] * m.ncols
    pivots, red = field.rref(aug)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [field.convert(0)] * m.ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[m.ncols]
    return x
