"""``turan`` command line.

Exit status: 0 on success, 2 on usage errors (including bad parameter
values), 1 when a computation fails (size cap, truncated enumeration,
unavailable witness).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import config
from .combinat import EdgeSet, WebSpec, WheelSpec
from .errors import TuranError
from .extremal import ex_complete, ex_exact, ex_oracle, t_table
from .facets import check_lift_general_form, check_lift_rank_form, is_facet
from .inequalities import (
    BlowupSpec,
    LinearInequality,
    blowup_inequality,
    cg_doubling_aggregate,
    cg_subset_chain,
    cg_subset_step,
    cg_web_derivation,
    cg_wheel_derivation,
    check_validity,
    clique_inequality,
    doubling_inequality,
    web_inequality,
    web_witness,
    wheel_inequality,
    wheel_witness,
)
from .lp import build_Q, lp_max

GEN_KINDS = ("clique", "doubling", "blowup", "wheel", "web")


class UsageError(Exception):
    pass


def _q(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _int_list(text: str) -> list:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _mult(text: str) -> dict:
    out = {}
    try:
        for item in text.split(","):
            v, k = item.split(":")
            out[int(v)] = int(k)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected v:m pairs like 1:2,2:2, got {text!r}") from None
    return out


def _add_gen_flags(p: argparse.ArgumentParser):
    p.add_argument("--n", type=int, help="number of vertices (clique, doubling, blowup)")
    p.add_argument("--a", type=int, help="forbidden clique size")
    p.add_argument("--r", type=int, default=2, help="uniformity (default 2)")
    p.add_argument("--v", type=int, help="doubled vertex")
    p.add_argument("--l", type=int, help="wheel/web vertex count")
    p.add_argument("--vertices", type=_int_list, help="clique vertex set, e.g. 1,2,3,4 (default 1..n)")
    p.add_argument("--mult", type=_mult, help="blow-up multiplicities, e.g. 1:2,2:2")


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError(f"missing required option(s): {', '.join(missing)}")


def _build_inequality(kind: str, args) -> LinearInequality:
    if kind == "clique":
        _need(args, "a")
        if args.vertices is None:
            _need(args, "n")
        S = args.vertices or list(range(1, args.n + 1))
        return clique_inequality(S, args.a, args.r, n=args.n)
    if kind == "doubling":
        _need(args, "n", "a", "v")
        return doubling_inequality(args.n, args.a, args.v)
    if kind == "blowup":
        _need(args, "n", "a", "mult")
        if args.r != 2:
            raise UsageError("blow-up inequalities are defined for r = 2 only")
        return blowup_inequality(BlowupSpec(args.n, args.a, args.mult))
    if kind == "wheel":
        _need(args, "l", "a")
        return wheel_inequality(WheelSpec(args.l, args.a, args.r))
    if kind == "web":
        _need(args, "l", "a")
        return web_inequality(WebSpec(args.l, args.a, args.r))
    raise UsageError(f"unknown inequality kind {kind!r}")


def _parse_ambient(text: str | None, ineq: LinearInequality) -> EdgeSet | None:
    if text is None or text == "support":
        return None
    if text.startswith("complete:"):
        try:
            n = int(text.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad ambient {text!r}") from None
        return EdgeSet.complete(n, ineq.r)
    with open(text) as fh:
        return EdgeSet.from_dict(json.load(fh))


def _inequality_from_args(args) -> tuple:
    if (args.ineq is None) == (args.gen is None):
        raise UsageError("give exactly one of --ineq FILE or --gen KIND")
    if args.ineq is not None:
        _need(args, "a")
        with open(args.ineq) as fh:
            return LinearInequality.from_dict(json.load(fh)), args.a
    ineq = _build_inequality(args.gen, args)
    return ineq, args.a


# -- output -----------------------------------------------------------------

def _emit(doc, fmt: str, out, text=None, csv=None):
    if fmt == "json":
        out.write(json.dumps(doc, indent=2) + "\n")
    elif fmt == "text":
        out.write((text if text is not None else json.dumps(doc)) + "\n")
    elif fmt == "csv":
        if csv is None:
            raise UsageError("csv output is only available for 'table'")
        out.write(csv)
    else:
        raise UsageError(f"unknown format {fmt!r}")


def _ineq_text(ineq: LinearInequality) -> str:
    d = ineq.to_dict()
    terms = " + ".join(
        (f"{c['c']}*x{tuple(c['edge'])}" if c["c"] != 1 else f"x{tuple(c['edge'])}") for c in d["coeffs"]
    )
    return f"{ineq.label}: {terms} <= {ineq.rhs}"


# -- verbs ------------------------------------------------------------------

def cmd_ex(args, out):
    _need(args, "n", "a")
    if args.r == 2 and not args.oracle:
        value = ex_exact(args.n, args.a)
    elif args.r == 2:
        value = ex_oracle(EdgeSet.complete(args.n, 2), args.a, find_all=False).value
    else:
        value = ex_complete(args.n, args.a, args.r)
    _emit(value, args.format, out, text=str(value))


def cmd_table(args, out):
    table = t_table(args.a, args.n_max)
    text = "\n".join(f"{i} {t}" for i, t in table.rows)
    _emit(table.to_dict(), args.format, out, text=text, csv=table.to_csv())


def cmd_gen(args, out):
    ineq = _build_inequality(args.kind, args)
    _emit(ineq.to_dict(), args.format, out, text=_ineq_text(ineq))


def cmd_check(args, out):
    ineq, a = _inequality_from_args(args)
    if args.what == "facet":
        verdict = is_facet(ineq, a, _parse_ambient(args.ambient, ineq))
        doc = verdict.to_dict()
        text = f"{ineq.label}: is_facet={verdict.is_facet} rank={verdict.affine_rank}/{verdict.ambient_dim - 1}"
    elif args.what == "valid":
        res = check_validity(ineq, a)
        doc = res.to_dict()
        text = f"{ineq.label}: valid={res.valid} max_lhs={res.max_lhs} rhs={res.rhs}"
    else:
        ambient = _parse_ambient(args.ambient, ineq)
        if ambient is None:
            raise UsageError("lift needs --ambient complete:N or an edge-set file")
        if args.mode == "rank":
            res = check_lift_rank_form(ineq.support(), ambient, a)
        else:
            res = check_lift_general_form(ineq, ambient, a)
        doc = res.to_dict()
        text = f"{ineq.label}: lift ok={res.ok} ({res.checked} edges checked)"
    _emit(doc, args.format, out, text=text)


def cmd_cg(args, out):
    kind = args.kind
    if kind == "subset":
        _need(args, "a")
        if args.chain:
            _need(args, "n")
            steps = cg_subset_chain(args.n, args.a)
            doc = {"steps": [s.to_dict() for s in steps], "final_rhs": steps[-1].target.rhs}
            text = " -> ".join(str(s.target.rhs) for s in steps)
            _emit(doc, args.format, out, text=text)
            return
        if args.vertices is None:
            _need(args, "n")
        S = args.vertices or list(range(1, args.n + 1))
        deriv = cg_subset_step(S, args.a, n=args.n)
    elif kind == "doubling":
        _need(args, "n", "a")
        deriv = cg_doubling_aggregate(args.n, args.a)
    elif kind == "wheel":
        _need(args, "l", "a")
        deriv = cg_wheel_derivation(WheelSpec(args.l, args.a, args.r))
    else:
        _need(args, "l", "a")
        deriv = cg_web_derivation(WebSpec(args.l, args.a, args.r))
    _, rhs = deriv.combined()
    text = f"{deriv.target.label}: weighted rhs {_q(rhs)} -> {deriv.target.rhs} verified={deriv.verify()}"
    _emit(deriv.to_dict(), args.format, out, text=text)


def cmd_lp(args, out):
    system = build_Q(args.n, args.a, args.r, include_full_clique=args.include_full_clique)
    if args.export_lp:
        with open(args.export_lp, "w") as fh:
            fh.write(system.to_lp_format())
    res = lp_max(system)
    ex = ex_exact(args.n, args.a) if args.r == 2 else ex_complete(args.n, args.a, args.r)
    doc = {
        "n": args.n,
        "a": args.a,
        "r": args.r,
        "optimum": _q(res.value),
        "floor": res.floor,
        "ex": ex,
        "pivots": res.pivots,
        "rows": len(system.rows),
        "point": [
            {"edge": list(e), "x": _q(v)}
            for e, v in zip(EdgeSet.complete(args.n, args.r).edges(), res.x)
        ],
    }
    text = f"optimum {_q(res.value)}\nfloor {res.floor}\nex {ex}"
    _emit(doc, args.format, out, text=text)


def cmd_witness(args, out):
    _need(args, "l", "a")
    if args.kind == "wheel":
        x = wheel_witness(WheelSpec(args.l, args.a, args.r), args.type)
    else:
        x = web_witness(WebSpec(args.l, args.a, args.r), args.type)
    text = " ".join("(" + ",".join(map(str, e)) + ")" for e in x.edges())
    _emit(x.to_dict(), args.format, out, text=text)


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--max-edges", type=int, help="cap on C(n, r) (also TURAN_MAX_EDGES)")

    parser = argparse.ArgumentParser(prog="turan", description="Exact computations on the Turán polytope.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("ex", parents=[common], help="Turán number ex(n, a, r)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--oracle", action="store_true", help="use the brute-force oracle")
    p.set_defaults(func=cmd_ex)

    p = sub.add_parser("table", parents=[common], help="t-recurrence table")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("gen", parents=[common], help="generate an inequality")
    p.add_argument("kind", choices=GEN_KINDS)
    _add_gen_flags(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", parents=[common], help="facet, validity or lifting check")
    p.add_argument("what", choices=("facet", "valid", "lift"))
    p.add_argument("--ineq", help="inequality JSON file")
    p.add_argument("--gen", choices=GEN_KINDS, help="build the inequality inline")
    p.add_argument("--ambient", help="support (default), complete:N, or an edge-set JSON file")
    p.add_argument("--mode", choices=("general", "rank"), default="general", help="lifting condition to test")
    _add_gen_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("cg", parents=[common], help="replay a Chvátal-Gomory derivation")
    p.add_argument("kind", choices=("subset", "doubling", "wheel", "web"))
    p.add_argument("--chain", action="store_true", help="subset: chain steps from [a+1] up to [n]")
    _add_gen_flags(p)
    p.set_defaults(func=cmd_cg)

    p = sub.add_parser("lp", parents=[common], help="exact LP over the clique relaxation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--include-full-clique", action="store_true")
    p.add_argument("--export-lp", metavar="FILE", help="write the system in CPLEX LP format")
    p.set_defaults(func=cmd_lp)

    p = sub.add_parser("witness", parents=[common], help="tight clique-free set for a wheel or web")
    p.add_argument("kind", choices=("wheel", "web"))
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--type", choices=("I", "II"), default="I")
    p.set_defaults(func=cmd_witness)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config.set_max_edges(args.max_edges)
        args.func(args, out)
    except (UsageError, ValueError, OSError) as exc:
        err.write(f"turan: usage error: {exc}\n")
        return 2
    except TuranError as exc:
        err.write(f"turan: error: {exc}\n")
        return 1
    finally:
        config.set_max_edges(None)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
