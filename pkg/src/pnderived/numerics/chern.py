"""Chern characters, the Todd class and Euler pairings on P^n.

Classes live in Q[h]/(h^{n+1}), h the hyperplane class, and integrate
by taking the coefficient of h^n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from ..complex import LineBundleComplex, dual
from ..linalg import QQ, Field


class IntegralityError(ArithmeticError):
    """An Euler pairing came out non-integral (a sign-convention bug)."""


@dataclass(frozen=True)
class ChernPolynomial:
    n: int
    coeffs: tuple

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coeffs)
        if len(cs) > self.n + 1:
            cs = cs[: self.n + 1]
        cs = cs + (Fraction(0),) * (self.n + 1 - len(cs))
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def one(cls, n: int) -> ChernPolynomial:
        return cls(n, (1,))

    @classmethod
    def zero(cls, n: int) -> ChernPolynomial:
        return cls(n, ())

    @classmethod
    def hyperplane_power(cls, n: int, k: int) -> ChernPolynomial:
        return cls(n, (0,) * k + (1,)) if k <= n else cls.zero(n)

    def _check(self, other):
        if not isinstance(other, ChernPolynomial) or other.n != self.n:
            raise ValueError("classes on different projective spaces")

    def __add__(self, other):
        self._check(other)
        return ChernPolynomial(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return ChernPolynomial(self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return ChernPolynomial(self.n, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, ChernPolynomial):
            return ChernPolynomial(self.n, tuple(a * other for a in self.coeffs))
        self._check(other)
        n = self.n
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return ChernPolynomial(n, tuple(out))

    __rmul__ = __mul__

    def dual(self) -> ChernPolynomial:
        """Negate the odd-degree components."""
        return ChernPolynomial(self.n, tuple(-a if k % 2 else a for k, a in enumerate(self.coeffs)))

    def integral(self) -> Fraction:
        return self.coeffs[self.n]

    @property
    def rank(self) -> Fraction:
        return self.coeffs[0]

    def __str__(self):
        parts = []
        for k, a in enumerate(self.coeffs):
            if not a:
                continue
            mono = "" if k == 0 else ("h" if k == 1 else f"h^{k}")
            coef = str(a)
            parts.append(coef if not mono else (mono if a == 1 else f"{coef}*{mono}"))
        return " + ".join(parts) if parts else "0"


def line_bundle_ch(n: int, d: int) -> ChernPolynomial:
    """``ch O(d) = exp(d h)`` truncated at h^n."""
    return ChernPolynomial(n, tuple(Fraction(d**k, factorial(k)) for k in range(n + 1)))


def chern_character(c: LineBundleComplex) -> ChernPolynomial:
    total = [Fraction(0)] * (c.n + 1)
    for i, ts in c.terms.items():
        sign = -1 if i % 2 else 1
        for t in ts:
            for k, a in enumerate(line_bundle_ch(c.n, t).coeffs):
                total[k] += sign * a
    return ChernPolynomial(c.n, tuple(total))


def _series_inverse(a: list, order: int) -> list:
    inv = [Fraction(0)] * (order + 1)
    inv[0] = 1 / Fraction(a[0])
    for k in range(1, order + 1):
        s = sum(a[j] * inv[k - j] for j in range(1, k + 1) if j < len(a))
        inv[k] = -s * inv[0]
    return inv


@lru_cache(maxsize=None)
def todd_class(n: int) -> ChernPolynomial:
    """``(h / (1 - e^{-h}))^{n+1}`` truncated at h^n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    # (1 - e^{-h}) / h = sum_k (-1)^k h^k / (k+1)!
    base = [Fraction((-1) ** k, factorial(k + 1)) for k in range(n + 1)]
    one = ChernPolynomial(n, tuple(_series_inverse(base, n)))
    out = ChernPolynomial.one(n)
    for _ in range(n + 1):
        out = out * one
    return out


def mukai_pairing(v: ChernPolynomial, w: ChernPolynomial) -> Fraction:
    """``integral(v^dual * w * td)``; against Chern characters this is chi."""
    v._check(w)
    return (v.dual() * w * todd_class(v.n)).integral()


def euler_pairing_hrr(a: LineBundleComplex, b: LineBundleComplex) -> int:
    if a.n != b.n:
        raise ValueError(f"ambient dimensions differ: P^{a.n} vs P^{b.n}")
    val = (chern_character(dual(a)) * chern_character(b) * todd_class(a.n)).integral()
    if val.denominator != 1:
        raise IntegralityError(f"Euler pairing {val} is not an integer")
    return int(val)


def euler_pairing_ext(a: LineBundleComplex, b: LineBundleComplex, field: Field = QQ) -> int:
    from ..ext import ext_table

    return ext_table(a, b, field=field).euler()


def monad_chern_character(n: int, mult: dict) -> ChernPolynomial:
    """K-class of the Beilinson monad with multiplicities ``mult[i][k]``.

    The block ``O(-i)^{m[i][k]}`` sits in total degree ``k - i``.
    """
    total = ChernPolynomial.zero(n)
    for i, row in mult.items():
        for k, m in row.items():
            sign = -1 if (k - i) % 2 else 1
            total = total + line_bundle_ch(n, -i) * (sign * m)
    return total
