"""Hochschild (co)homology through the HKR decomposition."""

from __future__ import annotations

from dataclasses import dataclass

from ..complex import twist
from ..linalg import QQ, Field

HOMOLOGY = "homology"
COHOMOLOGY = "cohomology"


@dataclass(frozen=True)
class HodgeTable:
    """Square grid ``h[p][q]``.

    In homology mode ``h[p][q] = dim H^p(X, Omega^q)``; in polyvector
    mode ``h[p][q] = dim H^p(X, wedge^q T)``.
    """

    h: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.h)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("Hodge table must be square")
        if any(x < 0 for r in rows for x in r):
            raise ValueError("Hodge numbers are non-negative")
        object.__setattr__(self, "h", rows)

    @property
    def dim(self) -> int:
        return len(self.h) - 1

    @classmethod
    def projective_space(cls, n: int) -> HodgeTable:
        return cls(tuple(tuple(int(p == q) for q in range(n + 1)) for p in range(n + 1)))

    @classmethod
    def curve(cls, g: int) -> HodgeTable:
        return cls(((1, g), (g, 1)))


@dataclass(frozen=True)
class HochschildTables:
    cohomology: dict  # i -> dim HH^i, i in 0..2 dim
    homology: dict  # i -> dim HH_i, i in -dim..dim


def hkr_aggregate(table: HodgeTable, mode: str = HOMOLOGY) -> dict:
    dim = table.dim
    h = table.h
    if mode == HOMOLOGY:
        out = {i: 0 for i in range(-dim, dim + 1)}
        for p in range(dim + 1):
            for q in range(dim + 1):
                out[q - p] += h[p][q]
        return out
    if mode == COHOMOLOGY:
        out = {i: 0 for i in range(2 * dim + 1)}
        for p in range(dim + 1):
            for q in range(dim + 1):
                out[p + q] += h[p][q]
        return out
    raise ValueError(f"mode must be {HOMOLOGY!r} or {COHOMOLOGY!r}")


def hh_pn(n: int, max_n: int = 3, field: Field = QQ) -> HochschildTables:
    """HH^* and HH_* of P^n from sheaf cohomology of (poly)vector forms.

    Uses ``wedge^q T = Omega^{n-q}(n+1)`` and the Koszul resolutions of
    ``Omega^i(i)``.
    """
    from ..ext import sheaf_cohomology
    from ..errors import ResourceLimitError
    from ..window import omega_resolution

    if n < 1:
        raise ValueError("n must be at least 1")
    if n > max_n:
        raise ResourceLimitError(f"hh_pn is capped at n = {max_n}")
    poly = [[0] * (n + 1) for _ in range(n + 1)]
    forms = [[0] * (n + 1) for _ in range(n + 1)]
    for q in range(n + 1):
        tv = twist(omega_resolution(n, n - q), q + 1)
        for p, v in sheaf_cohomology(tv, field).items():
            poly[p][q] = v
        om = twist(omega_resolution(n, q), -q)
        for p, v in sheaf_cohomology(om, field).items():
            forms[p][q] = v
    return HochschildTables(
        hkr_aggregate(HodgeTable(tuple(map(tuple, poly))), COHOMOLOGY),
        hkr_aggregate(HodgeTable(tuple(map(tuple, forms))), HOMOLOGY),
    )


def hh_curve(g: int) -> HochschildTables:
    if g < 0:
        raise ValueError("genus must be non-negative")
    if g == 0:
        h0t, h1t = 3, 0
    elif g == 1:
        h0t, h1t = 1, 1
    else:
        h0t, h1t = 0, 3 * g - 3
    return HochschildTables({0: 1, 1: g + h0t, 2: h1t}, {-1: g, 0: 2, 1: g})
