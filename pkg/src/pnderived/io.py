"""JSON interchange documents.

A complex is written as::

    {"n": 1,
     "terms": {"-1": [-1], "0": [0, 0]},
     "diffs": {"-1": [["-x1"], ["x0"]]}}

``terms`` maps a degree to its list of twists; ``diffs`` maps a degree i
to the matrix of d^i (one row per summand of degree i+1, one column per
summand of degree i) with entries in the polynomial text syntax.  Absent
differentials are zero.  Chain maps, correspondence kernels, Chern
classes and Hodge tables have small documents of their own (see the
``load_*`` functions).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .complex import ChainMap, LineBundleComplex
from .numerics.chern import ChernPolynomial
from .numerics.correspondence import CorrespondenceClass
from .numerics.hochschild import HodgeTable
from .poly import HomogPoly, format_poly, parse_poly


class ParseError(ValueError):
    def __init__(self, message: str, where: str = "", line: int | None = None):
        self.where = where
        self.line = line
        loc = []
        if line is not None:
            loc.append(f"line {line}")
        if where:
            loc.append(f"field {where}")
        super().__init__(f"{', '.join(loc)}: {message}" if loc else message)


def _loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno) from None


def _int(x, where):
    if isinstance(x, bool) or not isinstance(x, int):
        if isinstance(x, str):
            try:
                return int(x)
            except ValueError:
                pass
        raise ParseError(f"expected an integer, got {x!r}", where)
    return x


def _scalar(x, where):
    try:
        if isinstance(x, bool):
            raise ValueError
        return Fraction(x) if not isinstance(x, float) else _reject_float()
    except (ValueError, ZeroDivisionError, TypeError):
        raise ParseError(f"expected an integer or 'a/b' rational, got {x!r}", where) from None


def _reject_float():
    raise ValueError("floats are not exact")


def complex_from_obj(obj, where: str = "") -> LineBundleComplex:
    if not isinstance(obj, dict):
        raise ParseError("expected an object with fields n, terms, diffs", where or "<root>")
    for key in obj:
        if key not in ("n", "terms", "diffs"):
            raise ParseError(f"unknown field {key!r}", where or "<root>")
    if "n" not in obj:
        raise ParseError("missing field", f"{where}n")
    n = _int(obj["n"], f"{where}n")
    if n < 1:
        raise ParseError("ambient dimension must be at least 1", f"{where}n")
    raw_terms = obj.get("terms", {})
    if not isinstance(raw_terms, dict):
        raise ParseError("expected a map degree -> list of twists", f"{where}terms")
    terms = {}
    for k, v in raw_terms.items():
        deg = _int(k, f"{where}terms")
        if not isinstance(v, list):
            raise ParseError("expected a list of twists", f"{where}terms[{k}]")
        terms[deg] = tuple(_int(t, f"{where}terms[{k}][{j}]") for j, t in enumerate(v))
    raw_diffs = obj.get("diffs", {})
    if not isinstance(raw_diffs, dict):
        raise ParseError("expected a map degree -> matrix", f"{where}diffs")
    nv = n + 1
    diffs = {}
    for k, m in raw_diffs.items():
        deg = _int(k, f"{where}diffs")
        src, tgt = terms.get(deg, ()), terms.get(deg + 1, ())
        path = f"{where}diffs[{k}]"
        if not isinstance(m, list) or len(m) != len(tgt):
            raise ParseError(f"expected {len(tgt)} rows (summands in degree {deg + 1})", path)
        rows = []
        for r, row in enumerate(m):
            if not isinstance(row, list) or len(row) != len(src):
                raise ParseError(f"expected {len(src)} entries (summands in degree {deg})", f"{path}[{r}]")
            out = []
            for c, entry in enumerate(row):
                out.append(_poly(entry, nv, tgt[r] - src[c], f"{path}[{r}][{c}]"))
            rows.append(tuple(out))
        if src and tgt:
            diffs[deg] = tuple(rows)
    return LineBundleComplex(n, terms, diffs)


def _poly(entry, nv, degree, where) -> HomogPoly:
    if isinstance(entry, bool) or not isinstance(entry, (str, int)):
        raise ParseError(f"expected a polynomial string, got {entry!r}", where)
    try:
        return parse_poly(str(entry), nv, degree)
    except ValueError as e:
        raise ParseError(str(e), where) from None


def complex_to_obj(c: LineBundleComplex) -> dict:
    return {
        "n": c.n,
        "terms": {str(i): list(c.terms[i]) for i in c.degrees()},
        "diffs": {str(i): [[format_poly(x) for x in row] for row in c.diffs[i]] for i in sorted(c.diffs)},
    }


def load_complex(text: str) -> LineBundleComplex:
    return complex_from_obj(_loads(text))


def dump_complex(c: LineBundleComplex) -> str:
    return json.dumps(complex_to_obj(c), indent=2)


def read_complex(path: str) -> LineBundleComplex:
    with open(path) as fh:
        return load_complex(fh.read())


def chain_map_from_obj(obj) -> ChainMap:
    if not isinstance(obj, dict) or not {"source", "target"} <= set(obj):
        raise ParseError("expected an object with fields source, target, maps", "<root>")
    a = complex_from_obj(obj["source"], "source.")
    b = complex_from_obj(obj["target"], "target.")
    maps = {}
    for k, m in (obj.get("maps") or {}).items():
        deg = _int(k, "maps")
        src, tgt = a.term(deg), b.term(deg)
        path = f"maps[{k}]"
        if not isinstance(m, list) or len(m) != len(tgt):
            raise ParseError(f"expected {len(tgt)} rows", path)
        rows = []
        for r, row in enumerate(m):
            if not isinstance(row, list) or len(row) != len(src):
                raise ParseError(f"expected {len(src)} entries", f"{path}[{r}]")
            rows.append(tuple(_poly(e, a.nvars, tgt[r] - src[c], f"{path}[{r}][{c}]") for c, e in enumerate(row)))
        if src and tgt:
            maps[deg] = tuple(rows)
    return ChainMap(a, b, maps)


def load_chain_map(text: str) -> ChainMap:
    return chain_map_from_obj(_loads(text))


def chain_map_to_obj(f: ChainMap) -> dict:
    return {
        "source": complex_to_obj(f.source),
        "target": complex_to_obj(f.target),
        "maps": {str(i): [[format_poly(x) for x in row] for row in m] for i, m in sorted(f.maps.items())},
    }


def load_hodge_table(text: str) -> HodgeTable:
    obj = _loads(text)
    if isinstance(obj, dict):
        obj = obj.get("h")
    if not isinstance(obj, list):
        raise ParseError("expected a square list of lists (or an object with field h)", "h")
    try:
        return HodgeTable(tuple(tuple(_int(x, f"h[{p}][{q}]") for q, x in enumerate(row)) for p, row in enumerate(obj)))
    except ValueError as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(str(e), "h") from None


def load_correspondence(text: str) -> CorrespondenceClass:
    obj = _loads(text)
    if not isinstance(obj, dict) or not {"m", "n", "grid"} <= set(obj):
        raise ParseError("expected an object with fields m, n, grid", "<root>")
    m = _int(obj["m"], "m")
    n = _int(obj["n"], "n")
    grid = obj["grid"]
    if not isinstance(grid, list) or any(not isinstance(r, list) for r in grid):
        raise ParseError("expected a list of rows", "grid")
    try:
        return CorrespondenceClass(m, n, tuple(tuple(_scalar(x, f"grid[{i}][{j}]") for j, x in enumerate(r)) for i, r in enumerate(grid)))
    except ParseError:
        raise
    except ValueError as e:
        raise ParseError(str(e), "grid") from None


def load_chern(text: str) -> ChernPolynomial:
    obj = _loads(text)
    if not isinstance(obj, dict) or not {"n", "coeffs"} <= set(obj):
        raise ParseError("expected an object with fields n, coeffs", "<root>")
    n = _int(obj["n"], "n")
    cs = obj["coeffs"]
    if not isinstance(cs, list) or len(cs) > n + 1:
        raise ParseError(f"expected at most {n + 1} coefficients", "coeffs")
    return ChernPolynomial(n, tuple(_scalar(x, f"coeffs[{i}]") for i, x in enumerate(cs)))


def fmt_scalar(x) -> str | int:
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
