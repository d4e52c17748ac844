"""Command line front end: one engine operation per invocation.

Exit codes: 0 success, 2 parse/usage error, 3 validation error,
4 resource cap exceeded, 5 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field

from . import io
from .complex import cone as cone_op
from .complex import validate, validate_chain_map
from .ext import (
    ext_table,
    line_bundle_object_check,
    point_object_check,
    serre_functor,
    sheaf_cohomology,
)
from .hom import DEFAULT_MAX_ENTRIES
from .linalg import parse_field
from .numerics import (
    ChernPolynomial,
    LatticeClass,
    chern_character,
    corr_apply,
    corr_compose,
    euler_pairing_ext,
    euler_pairing_hrr,
    fm_elliptic_apply,
    hh_curve,
    hh_pn,
    hkr_aggregate,
    monad_chern_character,
)
from .numerics.chern import IntegralityError
from .errors import InvalidComplexError, ReductionError, ResourceLimitError
from .window import DEFAULT_MAX_TERMS, beilinson_multiplicities, reduce_to_window

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_RESOURCE = 4
EXIT_INTERNAL = 5


@dataclass
class Job:
    command: str
    inputs: list = field(default_factory=list)
    options: dict = field(default_factory=dict)
    field: str = "q"
    seed: int = 0
    max_terms: int = DEFAULT_MAX_TERMS
    output: str = "text"
    max_entries: int = DEFAULT_MAX_ENTRIES


class _Fail(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise _Fail(EXIT_PARSE, f"{path}: {e.strerror}") from None


def _complex(path):
    try:
        c = io.load_complex(_read(path))
    except io.ParseError as e:
        raise _Fail(EXIT_PARSE, f"{path}: {e}") from None
    rep = validate(c)
    if not rep.ok:
        raise _Fail(EXIT_VALIDATION, f"{path}: degree {rep.violation.degree}: {rep.violation.message}")
    return c


def _table(t):
    return {str(k): v for k, v in sorted(t.items())}


def _table_text(prefix, t):
    if not t:
        return f"{prefix} = 0 in all degrees"
    return "\n".join(f"{prefix}^{k} = {v}" for k, v in sorted(t.items()))


def _graded_line(label, t):
    """``label = v_lo, ..., v_hi`` over the smallest degree range holding every nonzero value."""
    nz = [k for k, v in t.items() if v]
    if not nz:
        return f"{label} = 0"
    lo, hi = min(nz), max(nz)
    vals = ", ".join(str(t.get(k, 0)) for k in range(lo, hi + 1))
    return f"{label} = {vals}" if lo == 0 else f"{label} = {vals}  (from degree {lo})"


def _chern_obj(ch: ChernPolynomial):
    return {"n": ch.n, "coeffs": [io.fmt_scalar(c) for c in ch.coeffs]}


def _dispatch(job: Job):
    """Return (echoed inputs, result object, text lines)."""
    fld = parse_field(job.field)
    cmd = job.command
    opt = job.options
    inp = job.inputs

    if cmd == "validate":
        try:
            c = io.load_complex(_read(inp[0]))
        except io.ParseError as e:
            raise _Fail(EXIT_PARSE, f"{inp[0]}: {e}") from None
        rep = validate(c)
        echo = {"complex": {"path": inp[0], "value": io.complex_to_obj(c)}}
        if not rep.ok:
            v = rep.violation
            raise _Fail(EXIT_VALIDATION, f"{inp[0]}: invalid at degree {v.degree}, entry {v.entry}: {v.message}")
        return echo, {"valid": True}, ["valid"]

    if cmd == "reduce":
        c = _complex(inp[0])
        w = reduce_to_window(c, job.max_terms)
        return {"complex": {"path": inp[0], "value": io.complex_to_obj(c)}}, io.complex_to_obj(w), [io.dump_complex(w)]

    if cmd == "cone":
        try:
            f = io.load_chain_map(_read(inp[0]))
        except io.ParseError as e:
            raise _Fail(EXIT_PARSE, f"{inp[0]}: {e}") from None
        for side, c in (("source", f.source), ("target", f.target)):
            rep = validate(c)
            if not rep.ok:
                raise _Fail(EXIT_VALIDATION, f"{inp[0]}: {side}: {rep.violation.message}")
        rep = validate_chain_map(f)
        if not rep.ok:
            raise _Fail(EXIT_VALIDATION, f"{inp[0]}: {rep.violation.message}")
        c = cone_op(f)
        return {"map": {"path": inp[0], "value": io.chain_map_to_obj(f)}}, io.complex_to_obj(c), [io.dump_complex(c)]

    if cmd in ("ext", "serre-check", "hrr-check"):
        a, b = _complex(inp[0]), _complex(inp[1])
        echo = {"A": {"path": inp[0], "value": io.complex_to_obj(a)}, "B": {"path": inp[1], "value": io.complex_to_obj(b)}}
        if a.n != b.n:
            raise _Fail(EXIT_VALIDATION, f"ambient dimensions differ: P^{a.n} vs P^{b.n}")
        if cmd == "ext":
            t = ext_table(a, b, fld, job.max_terms, max_entries=job.max_entries)
            return echo, {"ext": _table(t)}, [_table_text("Ext", t)]
        if cmd == "serre-check":
            lhs = ext_table(a, b, fld, job.max_terms, max_entries=job.max_entries)
            rhs = ext_table(b, serre_functor(a), fld, job.max_terms, max_entries=job.max_entries)
            ok = all(lhs[k] == rhs[-k] for k in set(lhs) | {-k for k in rhs})
            res = {"holds": ok, "ext_A_B": _table(lhs), "ext_B_SA": _table(rhs)}
            return echo, res, [f"Ext(A,B): {_table(lhs)}", f"Ext(B,S(A)): {_table(rhs)}", f"serre duality: {'holds' if ok else 'FAILS'}"]
        hrr = euler_pairing_hrr(a, b)
        ext = euler_pairing_ext(a, b, fld)
        res = {"chi_hrr": hrr, "chi_ext": ext, "equal": hrr == ext}
        return echo, res, [f"chi via HRR = {hrr}", f"chi via Ext = {ext}", "equal" if hrr == ext else "MISMATCH"]

    if cmd == "cohomology":
        c = _complex(inp[0])
        t = sheaf_cohomology(c, fld, job.max_terms)
        return {"complex": {"path": inp[0], "value": io.complex_to_obj(c)}}, {"cohomology": _table(t)}, [_table_text("H", t)]

    if cmd == "point-check":
        c = _complex(inp[0])
        r = point_object_check(c, fld, seed=job.seed, draws=opt.get("draws", 64))
        res = {
            "serre_fixed": r.serre_fixed,
            "simple": r.simple,
            "no_negative_self_ext": r.no_negative_self_ext,
            "mode": r.mode,
            "self_ext": _table(r.self_ext),
        }
        lines = [f"serre-fixed: {r.serre_fixed} ({r.mode})", f"simple: {r.simple}", f"no negative self-ext: {r.no_negative_self_ext}"]
        return {"complex": {"path": inp[0], "value": io.complex_to_obj(c)}}, res, lines

    if cmd == "line-bundle-check":
        c = _complex(inp[0])
        sample = opt.get("points") or None
        r = line_bundle_object_check(c, sample, fld, seed=job.seed)
        pts = [{"point": lab, "ext": _table(t), "pass": ok, "shift": s} for lab, t, ok, s in r.points]
        res = {"passed": r.passed, "shift": r.common_shift, "points": pts}
        lines = [f"{p['point']}: {p['ext']} {'pass' if p['pass'] else 'fail'}" for p in pts]
        lines.append(f"line bundle shifted by {r.common_shift}" if r.passed else "not a shifted line bundle on this sample")
        return {"complex": {"path": inp[0], "value": io.complex_to_obj(c)}}, res, lines

    if cmd == "beilinson":
        c = _complex(inp[0])
        m = beilinson_multiplicities(c, fld, job.max_terms)
        ok = monad_chern_character(c.n, m) == chern_character(c)
        res = {"multiplicities": {str(i): _table(row) for i, row in m.items()}, "k_class_matches": ok}
        lines = [f"O({-i}): " + (", ".join(f"{v} in position {k}" for k, v in sorted(row.items())) or "none") for i, row in m.items()]
        lines.append(f"K-class reassembly: {'ok' if ok else 'MISMATCH'}")
        return {"complex": {"path": inp[0], "value": io.complex_to_obj(c)}}, res, lines

    if cmd == "hochschild":
        if opt.get("pn") is not None:
            t = hh_pn(opt["pn"], max_n=opt.get("max_n", 3), field=fld)
            echo = {"pn": opt["pn"]}
        elif opt.get("genus") is not None:
            t = hh_curve(opt["genus"])
            echo = {"genus": opt["genus"]}
        else:
            path = opt["hodge"]
            try:
                table = io.load_hodge_table(_read(path))
            except io.ParseError as e:
                raise _Fail(EXIT_PARSE, f"{path}: {e}") from None
            mode = opt.get("mode", "homology")
            agg = hkr_aggregate(table, mode)
            echo = {"hodge": {"path": path, "value": [list(r) for r in table.h]}, "mode": mode}
            label = "HH_" if mode == "homology" else "HH^"
            return echo, {mode: _table(agg)}, [f"{label}{k} = {v}" for k, v in sorted(agg.items())]
        res = {"cohomology": _table(t.cohomology), "homology": _table(t.homology)}
        lines = [_graded_line("HH^•", t.cohomology), _graded_line("HH_•", t.homology)]
        return echo, res, lines

    if cmd == "fm-elliptic":
        v = LatticeClass(opt["rank"], opt["degree"])
        w = fm_elliptic_apply(v)
        return {"class": [v.r, v.d]}, {"image": [w.r, w.d]}, [f"({w.r}, {w.d})"]

    if cmd in ("corr-apply", "corr-compose"):
        try:
            k1 = io.load_correspondence(_read(inp[0]))
            if cmd == "corr-apply":
                x = io.load_chern(_read(inp[1]))
            else:
                k2 = io.load_correspondence(_read(inp[1]))
        except io.ParseError as e:
            raise _Fail(EXIT_PARSE, str(e)) from None
        try:
            if cmd == "corr-apply":
                y = corr_apply(k1, x)
                echo = {"kernel": {"path": inp[0]}, "class": {"path": inp[1], "value": _chern_obj(x)}}
                return echo, _chern_obj(y), [str(y)]
            k = corr_compose(k1, k2)
        except ValueError as e:
            raise _Fail(EXIT_VALIDATION, str(e)) from None
        grid = [[io.fmt_scalar(a) for a in row] for row in k.grid]
        return {"first": {"path": inp[0]}, "second": {"path": inp[1]}}, {"m": k.m, "n": k.n, "grid": grid}, [json.dumps(grid)]

    if cmd == "canonical-ring":
        from .complex import LineBundleComplex

        n = opt["n"]
        lo, hi = opt["range"]
        dims = {}
        for i in range(lo, hi + 1):
            dims[i] = sheaf_cohomology(LineBundleComplex.single(n, -i * (n + 1)), fld, job.max_terms)[0]
        return {"n": n, "range": [lo, hi]}, {str(i): v for i, v in dims.items()}, [f"h^0(omega^{i}) = {v}" for i, v in dims.items()]

    raise _Fail(EXIT_PARSE, f"unknown command {cmd!r}")


def run(job: Job) -> tuple[int, str]:
    """Execute one job; returns (exit status, report text)."""
    random.seed(job.seed)
    try:
        echo, result, lines = _dispatch(job)
        code = EXIT_OK
        error = None
    except _Fail as e:
        code, error = e.code, str(e)
    except (InvalidComplexError,) as e:
        code, error = EXIT_VALIDATION, str(e)
    except ResourceLimitError as e:
        code, error = EXIT_RESOURCE, str(e)
    except (ReductionError, IntegralityError, ArithmeticError, AssertionError) as e:
        code, error = EXIT_INTERNAL, f"internal invariant failure: {e}"
    except ValueError as e:
        code, error = EXIT_PARSE, str(e)
    if job.output == "structured":
        doc = {
            "operation": job.command,
            "field": job.field,
            "seed": job.seed,
            "max_terms": job.max_terms,
            "max_entries": job.max_entries,
        }
        doc["options"] = {k: v for k, v in job.options.items() if v is not None}
        if code == EXIT_OK:
            doc["inputs"] = echo
            doc["result"] = result
            doc["status"] = "ok"
        else:
            doc["inputs"] = {"paths": list(job.inputs)}
            doc["status"] = "error"
            doc["exit_code"] = code
            doc["error"] = error
        return code, json.dumps(doc, indent=2, sort_keys=True)
    if code == EXIT_OK:
        return code, "\n".join(lines)
    return code, f"error: {error}"


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="q", help="q (default) or fp:<prime>")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS, help="cap on summands during reduction")
    common.add_argument("--max-entries", type=int, default=DEFAULT_MAX_ENTRIES, help="cap on dense Hom matrix entries")
    common.add_argument("--output", choices=("text", "structured"), default="text")

    p = argparse.ArgumentParser(prog="pnderived", description="Derived-category calculator on P^n.")
    sub = p.add_subparsers(dest="command", required=True)

    def one(name, help_):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("complex")
        return s

    def two(name, help_):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("first")
        s.add_argument("second")
        return s

    one("validate", "check d^2 = 0 and homogeneity")
    one("reduce", "rewrite into the window O(-n)..O")
    s = sub.add_parser("cone", parents=[common], help="mapping cone of a chain map document")
    s.add_argument("map")
    two("ext", "dimensions of Ext^k(A, B)")
    one("cohomology", "hypercohomology dimensions")
    two("serre-check", "compare Ext(A,B) with Ext(B, S A)")
    s = one("point-check", "point-object conditions")
    s.add_argument("--draws", type=int, default=64)
    s = one("line-bundle-check", "sampled shifted-line-bundle test")
    s.add_argument("--point", action="append", default=[], help="comma separated coordinates, repeatable")
    one("beilinson", "Beilinson monad multiplicities")
    two("hrr-check", "Euler pairing via HRR and via Ext")
    s = sub.add_parser("hochschild", parents=[common], help="Hochschild (co)homology")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--pn", type=int)
    g.add_argument("--genus", type=int)
    g.add_argument("--hodge")
    s.add_argument("--mode", choices=("homology", "cohomology"), default="homology")
    s = sub.add_parser("fm-elliptic", parents=[common], help="Poincare transform on (rank, degree)")
    s.add_argument("rank", type=int)
    s.add_argument("degree", type=int)
    two("corr-apply", "apply a correspondence kernel to a class")
    two("corr-compose", "compose two correspondence kernels")
    s = sub.add_parser("canonical-ring", parents=[common], help="h^0(omega^i) on P^n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--range", type=int, nargs=2, default=(-2, 2), metavar=("LO", "HI"))
    return p


def job_from_args(args) -> Job:
    cmd = args.command
    inputs = []
    options = {}
    if cmd in ("validate", "reduce", "cohomology", "point-check", "line-bundle-check", "beilinson"):
        inputs = [args.complex]
    elif cmd == "cone":
        inputs = [args.map]
    elif cmd in ("ext", "serre-check", "hrr-check", "corr-apply", "corr-compose"):
        inputs = [args.first, args.second]
    if cmd == "point-check":
        options["draws"] = args.draws
    if cmd == "line-bundle-check":
        pts = []
        for s in args.point:
            try:
                pts.append([int(x) for x in s.split(",")])
            except ValueError:
                raise _Fail(EXIT_PARSE, f"bad --point {s!r}") from None
        options["points"] = pts
    if cmd == "hochschild":
        options.update(pn=args.pn, genus=args.genus, hodge=args.hodge, mode=args.mode)
    if cmd == "fm-elliptic":
        options.update(rank=args.rank, degree=args.degree)
    if cmd == "canonical-ring":
        options.update(n=args.n, range=list(args.range))
    return Job(cmd, inputs, options, args.field, args.seed, args.max_terms, args.output, args.max_entries)


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        job = job_from_args(args)
    except _Fail as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    code, report = run(job)
    stream = sys.stdout if code == EXIT_OK or job.output == "structured" else sys.stderr
    print(report, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
