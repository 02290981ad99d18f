"""Command-line front end: ``qtchar compute|kl|classify|probe|star``.

Exit codes: 0 complete, 2 truncated, 3 inconsistent, 64 usage, 65 invalid
input data, 74 I/O.  JSON on stdout is the stable interface; errors go to
stderr as a JSON object with a ``code`` field.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cartan import det_report, validate_cartan
from .charalg import (
    chi_eps_t,
    chi_qt,
    classical_fm,
    format_rep,
    parse_rep,
    rep_key,
    star_product,
    stops_probe,
)
from .errors import Inconsistent, ParseError, QtcharError
from .kl import collapsed_P, kl_decompose, kl_nonfinite
from .laurent import IntLaurent
from .yalgebra import AlgebraContext, format_vector, format_ymono, format_ypoly, parse_vector

EXIT_OK, EXIT_TRUNCATED, EXIT_INCONSISTENT = 0, 2, 3
EXIT_USAGE, EXIT_DATA, EXIT_IO = 64, 65, 74
DEFAULT_MAX_DEGREE = 10


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    p = _Parser(prog="qtchar", description="q,t-characters and KL-type polynomials")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, seed_name="--seed"):
        sp.add_argument("--cartan", required=True, help="JSON file with the matrix")
        sp.add_argument("--symmetrizer", help="override, e.g. 2,2")
        sp.add_argument("--allow-decomposable", action="store_true")
        sp.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
        sp.add_argument("--format", choices=("json", "text"), default="json")
        if seed_name:
            sp.add_argument(seed_name, required=True)

    sp = sub.add_parser("compute", help="q,t- or eps,t-character of a Rep monomial")
    common(sp)
    sp.add_argument("--s", type=int, default=0)
    sp.add_argument("--t1", action="store_true", help="print the t=1 Y-polynomial")
    sp.add_argument("--route", choices=("tau", "axquat"), default="tau")

    sp = sub.add_parser("kl", help="KL-type decomposition of E_t(m)")
    common(sp, "--monomial")
    sp.add_argument("--s", type=int, default=0)
    sp.add_argument("--collapse", help="commutative target monomial, e.g. Y[1,0]*Y[1,2]")

    sp = sub.add_parser("classify", help="symmetrizer, flags and det C(z)")
    common(sp, None)

    sp = sub.add_parser("probe", help="does the algorithm stop from this seed")
    common(sp)
    sp.add_argument("--allow-any-cartan", action="store_true")

    sp = sub.add_parser("star", help="star product of two Rep monomials")
    common(sp, None)
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp.add_argument("--third", help="also report (a*b)*c - a*(b*c)")
    return p


# --------------------------------------------------------------------------
# helpers

def load_cartan(args):
    try:
        with open(args.cartan, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise OSError(f"cannot read {args.cartan}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{args.cartan}: invalid JSON ({exc.msg})") from exc
    if not isinstance(data, dict) or "matrix" not in data:
        raise ParseError(f"{args.cartan}: expected an object with a 'matrix' key")
    r = data.get("symmetrizer")
    if args.symmetrizer:
        try:
            r = [int(x) for x in args.symmetrizer.split(",")]
        except ValueError as exc:
            raise UsageError(f"bad --symmetrizer {args.symmetrizer!r}") from exc
    return validate_cartan(
        data["matrix"], r, allow_decomposable=args.allow_decomposable, name=data.get("name", "")
    )


def _poly_text(p):
    return p.format("t") if isinstance(p, IntLaurent) else str(p)


def _emit(obj, fmt, text_lines):
    if fmt == "json":
        sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _series_lines(series):
    lines = []
    for e, c in series.element.sorted_terms():
        lines.append(f"  {c.format('t'):>16}  b[{format_vector(e)}]")
    return lines


# --------------------------------------------------------------------------
# commands

def cmd_classify(args):
    cd = load_cartan(args)
    rep = det_report(cd)
    out = {
        "command": "classify",
        **cd.to_json(),
        "det_Cz": rep["det"].to_json(),
        "det_shape_ok": rep["shape_ok"],
        "lemma_hypothesis": rep["lemma_hypothesis"],
        "vanishing_orders": rep["vanishing_orders"],
    }
    lines = [
        f"matrix       {out['matrix']}",
        f"symmetrizer  {out['symmetrizer']}",
        f"r_vee        {out['rvee']}",
        f"det C(z)     {rep['det'].format('z')}",
    ] + [f"{k:<22} {v}" for k, v in out["flags"].items()]
    _emit(out, args.format, lines)
    return EXIT_OK


def cmd_compute(args):
    cd = load_cartan(args)
    ctx = AlgebraContext(cd, args.s)
    x = parse_rep(args.seed, cd.n)
    if args.s:
        ch = chi_eps_t(ctx, x, args.max_degree, route=args.route)
    else:
        ch = chi_qt(ctx, x, args.max_degree)
    out = {
        "command": "compute",
        "seed": format_rep(x),
        "s": args.s,
        "max_degree": args.max_degree,
        "status": ch.status,
    }
    lines = [f"seed {out['seed']}  s={args.s}  max_degree={args.max_degree}  {ch.status}"]
    if args.t1:
        poly = ctx.pi_hat(ch.element)
        out["t1"] = [
            {"monomial": format_ymono(k), "coeff": c}
            for k, c in sorted(poly.terms.items())
        ]
        lines.append("  " + format_ypoly(poly))
    else:
        out["route"] = args.route if args.s else None
        out["terms"] = ch.element.to_json()
        lines += _series_lines(ch)
    _emit(out, args.format, lines)
    return EXIT_OK if ch.complete else EXIT_TRUNCATED


def cmd_kl(args):
    cd = load_cartan(args)
    ctx = AlgebraContext(cd, args.s)
    m = parse_vector(args.monomial, cd.n, args.s)
    if args.s and not cd.flags["finite_type"]:
        res = kl_nonfinite(ctx, m, args.max_degree)
    else:
        res = kl_decompose(ctx, m, args.max_degree)
    out = {"command": "kl", "s": args.s, **res.to_json()}
    out["warnings"] = [w.code for w in res.warnings]
    lines = [f"seed {format_vector(m)}  s={args.s}  max_degree={args.max_degree}  {res.status}"]
    for item in out["P"]:
        lines.append(f"  P[{item['from']}] = {_poly_text(IntLaurent.from_json(item['poly']))}")
    if args.collapse:
        target = parse_vector(args.collapse, cd.n, args.s)
        if target.v:
            raise ParseError("--collapse takes a product of Y's")
        key = tuple(sorted(target.y.items()))
        k, p = collapsed_P(res, key)
        out["collapsed"] = {"target": format_ymono(key), "k": k, "poly": p.to_json()}
        lines.append(f"  collapsed P[{format_ymono(key)}] = {p.format('t')} at k={k}")
    _emit(out, args.format, lines)
    return EXIT_OK if res.complete else EXIT_TRUNCATED


def cmd_probe(args):
    cd = load_cartan(args)
    ctx = AlgebraContext(cd, 0)
    seed = parse_vector(args.seed.replace("X[", "Y["), cd.n)
    res = stops_probe(ctx, seed, args.max_degree, allow_any_cartan=args.allow_any_cartan)
    out = {
        "command": "probe",
        "seed": format_vector(seed),
        "max_degree": args.max_degree,
        "outcome": res.label(),
        "antidominant": [format_vector(e) for e in sorted(res.antidominant, key=lambda e: e.order_key())],
        "null_vector": list(res.null_vector) if res.null_vector else None,
        "invariant_values": sorted(res.invariant_values),
        "invariant_ok": res.invariant_ok,
        "terms": len(res.series.element.terms) if res.series else 0,
    }
    if not seed.v:
        cl = classical_fm(ctx, tuple(sorted(seed.y.items())), args.max_degree)
        if cl.inconsistent is not None:
            out["classical"] = f"Inconsistent({format_ymono(cl.inconsistent)})"
        else:
            out["classical"] = "Complete" if cl.complete else "Truncated"
    lines = [
        f"{out['outcome']}  terms={out['terms']}  invariant_ok={res.invariant_ok}"
        f"  classical={out.get('classical')}"
    ]
    _emit(out, args.format, lines)
    if res.outcome == "Inconsistent":
        return EXIT_INCONSISTENT
    return EXIT_OK if res.outcome == "StoppedAt" else EXIT_TRUNCATED


def _rep_elem_json(elem):
    return [
        {"monomial": format_rep(dict(k)), "coeff": c.to_json()}
        for k, c in sorted(elem.items())
    ]


def cmd_star(args):
    cd = load_cartan(args)
    ctx = AlgebraContext(cd, 0)
    one = IntLaurent(1)
    a = {rep_key(parse_rep(args.left, cd.n)): one}
    b = {rep_key(parse_rep(args.right, cd.n)): one}
    ab = star_product(ctx, a, b, args.max_degree)
    out = {"command": "star", "max_degree": args.max_degree, "product": _rep_elem_json(ab)}
    lines = [f"{args.left} * {args.right} = " + _rep_text(ab)]
    if args.third:
        c = {rep_key(parse_rep(args.third, cd.n)): one}
        left = star_product(ctx, ab, c, args.max_degree)
        right = star_product(ctx, a, star_product(ctx, b, c, args.max_degree), args.max_degree)
        defect = dict(left)
        for k, v in right.items():
            defect[k] = defect.get(k, IntLaurent()) - v
        defect = {k: v for k, v in defect.items() if v}
        out["associativity_defect"] = _rep_elem_json(defect)
        lines.append("associativity defect: " + _rep_text(defect))
    _emit(out, args.format, lines)
    return EXIT_OK


def _rep_text(elem):
    if not elem:
        return "0"
    return " + ".join(f"({c.format('t')})*{format_rep(dict(k))}" for k, c in sorted(elem.items()))


COMMANDS = {
    "classify": cmd_classify,
    "compute": cmd_compute,
    "kl": cmd_kl,
    "probe": cmd_probe,
    "star": cmd_star,
}


def _fail(code, message, exit_code):
    sys.stderr.write(json.dumps({"code": code, "message": message}) + "\n")
    return exit_code


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return _fail("Usage", str(exc), EXIT_USAGE)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        return _fail("Usage", str(exc), EXIT_USAGE)
    except ParseError as exc:
        return _fail(exc.code, str(exc), EXIT_USAGE)
    except Inconsistent as exc:
        return _fail(exc.code, str(exc), EXIT_INCONSISTENT)
    except QtcharError as exc:
        return _fail(exc.code, str(exc), EXIT_DATA)
    except OSError as exc:
        return _fail("IOError", str(exc), EXIT_IO)


if __name__ == "__main__":
    sys.exit(main())
