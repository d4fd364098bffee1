"""Command line front end: ``klpoly <command> ...``.

Every command prints one JSON document (or CSV for tables).  Wall time is
kept in a separate ``meta`` block so the data payload is byte-stable; pass
``--no-timing`` to drop it.  The exit code is 0 iff every check passed, 1 on
a failed check and 2 on bad input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

from . import suites
from .exact import Poly, format_rat, parse_rat
from .functionals import (
    PearsonPair,
    generalized_hermite_moments,
    hermite_moments,
    laguerre_moments,
    perturbed_laguerre_moments,
)
from .orthogonality import classify, connection_coeffs, extract_structural
from .sequences import (
    Mps,
    ParameterError,
    RegularityError,
    cdh_monic,
    generalized_hermite,
    hermite,
    hermite_type,
    hypergeom_pair,
    laguerre,
    perturbed_laguerre,
    reversed_appell,
)
from .stirling import build_tables
from .transform import kl_forward, kl_inverse

FAMILIES = ("laguerre", "hermite", "hermite-type", "reversed-appell", "cdh",
            "perturbed-laguerre", "generalized-hermite", "hypergeom")


class InputError(ValueError):
    pass


# -- parameter handling --------------------------------------------------

def parse_params(text: str | None) -> dict:
    """``"a1=1/2,alphas=1;3/2"`` -> ``{"a1": "1/2", "alphas": "1;3/2"}``."""
    out = {}
    if not text:
        return out
    for item in text.split(","):
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise InputError(f"parameter {item!r} is not of the form key=value")
        out[key.strip()] = value.strip()
    return out


def _rat_param(params: dict, key: str, default=None) -> Fraction:
    if key not in params:
        if default is None:
            raise InputError(f"missing parameter {key!r}")
        return Fraction(default)
    try:
        return parse_rat(params[key])
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"parameter {key}: {exc}") from None


def _list_param(params: dict, key: str) -> tuple:
    if key not in params:
        raise InputError(f"missing parameter {key!r}")
    if not params[key]:
        return ()
    try:
        return tuple(parse_rat(v) for v in params[key].split(";"))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"parameter {key}: {exc}") from None


def build_family(family: str, params: dict, n: int) -> Mps:
    """Sequence of ``n + 1`` members of the named family."""
    if family == "laguerre":
        return laguerre(_rat_param(params, "a1"), n)
    if family == "hermite":
        return hermite(n)
    if family == "hermite-type":
        return hermite_type(int(_rat_param(params, "d")), n)
    if family == "reversed-appell":
        alphas = _list_param(params, "alphas")
        return reversed_appell(len(alphas), alphas, n)
    if family == "cdh":
        return cdh_monic(_rat_param(params, "alpha", 0), _rat_param(params, "a1"),
                         _rat_param(params, "a2"), n)
    if family == "perturbed-laguerre":
        return perturbed_laguerre(_rat_param(params, "alpha"), _rat_param(params, "lambda"), n)
    if family == "generalized-hermite":
        return generalized_hermite(_rat_param(params, "mu"), n)
    if family == "hypergeom":
        a, b = _list_param(params, "a"), _list_param(params, "b")
        src, _ = hypergeom_pair(len(a), len(b), a, b, n, _rat_param(params, "alpha", 0))
        return src
    raise InputError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def _three_term(B: Mps):
    """``(beta, gamma)`` callables when ``B`` carries a three-term recurrence."""
    rec = B.meta.get("recurrence")
    if rec is None or rec.d != 1:
        return None
    return rec.beta, (lambda m: rec.lag(m, 1))


def _pair_for(family: str, params: dict):
    x = Poly((0, 1), "x")
    if family == "laguerre":
        a1 = _rat_param(params, "a1")
        return PearsonPair(x, x - (a1 + 1)), laguerre_moments(a1)
    if family == "hermite":
        return PearsonPair(Poly.one("x"), x * 2), hermite_moments()
    if family == "generalized-hermite":
        mu = _rat_param(params, "mu")
        return PearsonPair(x, x * x * 2 - (2 * mu + 1)), generalized_hermite_moments(mu)
    if family == "perturbed-laguerre":
        a, lam = _rat_param(params, "alpha"), _rat_param(params, "lambda")
        return PearsonPair(x * x, x * (x - (2 * a + 3))), perturbed_laguerre_moments(a, lam)
    raise InputError(f"classification needs an orthogonal family with a known Pearson pair, not {family!r}")


# -- output --------------------------------------------------------------

def _emit(doc: dict, args, started: float) -> None:
    if not args.no_timing:
        doc["meta"] = {"wall_time_s": round(time.perf_counter() - started, 6)}
    print(json.dumps(doc, indent=2))


def _emit_csv(header: list, rows: list) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    sys.stdout.write(buf.getvalue())


def _poly_rows(mps: Mps) -> list:
    return [(n, k, format_rat(c)) for n, p in enumerate(mps) for k, c in enumerate(p.coeffs)]


# -- commands ------------------------------------------------------------

def cmd_transform(args) -> int:
    alpha = _rat_param({"alpha": args.alpha}, "alpha")
    var = "z" if args.dir == "inverse" else "x"
    try:
        p = Poly.parse(args.coeffs, var)
    except ValueError as exc:
        raise InputError(f"coefficients: {exc}") from None
    doc = {"command": "transform", "params": {"alpha": format_rat(alpha), "dir": args.dir,
                                              "coeffs": args.coeffs}}
    if args.dir == "inverse":
        out = kl_inverse(p, alpha)
    else:
        out = kl_forward(p, alpha)
    doc["result"] = out.to_json()
    doc["coeffs"] = ",".join(doc["result"]["coeffs"]) or "0"
    status = True
    if args.dir == "both":
        back = kl_inverse(out, alpha)
        status = back == p
        doc["round_trip"] = status
    doc["status"] = "pass" if status else "fail"
    if args.out == "csv":
        _emit_csv(["degree", "coeff"], list(enumerate(doc["result"]["coeffs"])))
    else:
        _emit(doc, args, args._started)
    return 0 if status else 1


def cmd_sequence(args) -> int:
    params = parse_params(args.params)
    mps = build_family(args.family, params, args.n)
    if args.out == "csv":
        _emit_csv(["n", "k", "coeff"], _poly_rows(mps))
        return 0
    doc = {"command": "sequence", "params": {"family": args.family, **params, "n": args.n},
           "sequence": mps.to_json()}
    rec = mps.meta.get("recurrence")
    if rec is not None and args.n >= 1:
        doc["recurrence"] = [{"n": r["n"], "beta": format_rat(r["beta"]),
                              "lags": [format_rat(c) for c in r["lags"]]}
                             for r in rec.table(args.n - 1)]
    doc["status"] = "pass"
    _emit(doc, args, args._started)
    return 0


def _load_file(path: str) -> Mps:
    with open(path) as fh:
        data = json.load(fh)
    var = data.get("var", "x")
    return Mps(tuple(Poly(tuple(parse_rat(c) for c in coeffs), var) for coeffs in data["polys"]))


def cmd_extract(args) -> int:
    params = parse_params(args.params)
    alpha = _rat_param({"alpha": args.alpha}, "alpha")
    if args.file:
        B = _load_file(args.file)
        nmax = len(B) - 1
        family = args.file
    else:
        if args.family is None:
            raise InputError("give a family or --file")
        nmax = args.nmax
        B = build_family(args.family, params, nmax)
        family = args.family
    target = B if args.no_transform or B.var == "z" else B.image(alpha)
    rel = extract_structural(target)
    doc = {"command": "extract",
           "params": {"source": family, **params, "alpha": format_rat(alpha), "nmax": nmax,
                      "transformed": target is not B},
           "structural": rel.to_json()}
    status = rel.reproduces(target)
    checks = {"reproduces_sequence": status}
    tt = _three_term(B) if target is not B else None
    if tt is not None:
        cc = connection_coeffs(*tt, alpha, rel.nmax)
        agree = cc.zeta == rel.zeta and cc.a == rel.a
        checks["connection_coefficients_agree"] = agree
        status = status and agree
    doc["checks"] = checks
    doc["status"] = "pass" if status else "fail"
    if args.out == "csv":
        rows = [(n, "zeta", "", format_rat(z)) for n, z in enumerate(rel.zeta)]
        rows += [(n, "a", nu, format_rat(c)) for n, row in enumerate(rel.a) for nu, c in enumerate(row)]
        _emit_csv(["n", "kind", "nu", "value"], rows)
    else:
        _emit(doc, args, args._started)
    return 0 if status else 1


def cmd_classify(args) -> int:
    params = parse_params(args.params)
    alpha = _rat_param({"alpha": args.alpha}, "alpha")
    pair, u = _pair_for(args.family, params)
    if args.phi is not None or args.psi is not None:
        if args.phi is None or args.psi is None:
            raise InputError("give both --phi and --psi")
        pair = PearsonPair(Poly.parse(args.phi), Poly.parse(args.psi))
    rep = classify(pair, alpha, u)
    doc = {"command": "classify", "params": {"family": args.family, **params, "alpha": format_rat(alpha)},
           "report": rep.to_json()}
    status = rep.flags.get("pearson", False)
    doc["status"] = "pass" if status else "fail"
    _emit(doc, args, args._started)
    return 0 if status else 1


def cmd_verify(args) -> int:
    groups = ("identities", "families", "theorem", "numeric", "all")
    if args.group is None:
        group = args.suite or "all"
        sub = "all"
    else:
        group = args.group
        sub = args.suite or "all"
    if group not in groups:
        raise InputError(f"unknown suite {group!r}; choose from {', '.join(groups)}")
    if group == "numeric" and sub not in ("kernel", "transform", "parseval", "all"):
        raise InputError("numeric suite must be kernel, transform, parseval or all")
    checks = suites.run(group, args.nmax, args.tol, sub)
    status = all(c.passed for c in checks)
    if args.out == "csv":
        _emit_csv(["check", "status"], [(c.name, "pass" if c.passed else "fail") for c in checks])
    else:
        doc = {"command": "verify",
               "params": {"suite": group, "numeric_suite": sub if group in ("numeric", "all") else None,
                          "nmax": args.nmax, "tol": args.tol},
               "checks": [c.to_json() for c in checks],
               "status": "pass" if status else "fail"}
        _emit(doc, args, args._started)
    return 0 if status else 1


def cmd_tables(args) -> int:
    alpha = _rat_param({"alpha": args.alpha}, "alpha")
    tab = build_tables(args.nmax, alpha)
    which = ("t", "T") if args.which == "both" else (args.which,)
    if args.out == "csv":
        rows = []
        for name in which:
            rows += [(name, n, k, v) for n, k, v in getattr(tab, name).to_csv_rows()]
        _emit_csv(["table", "n", "nu", "value"], rows)
        return 0
    doc = {"command": "tables", "params": {"alpha": format_rat(alpha), "nmax": args.nmax}}
    for name in which:
        doc[name] = [[format_rat(v) for v in row] for row in getattr(tab, name).rows]
    doc["status"] = "pass"
    _emit(doc, args, args._started)
    return 0


# -- parser --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", choices=("json", "csv"), default="json")
    common.add_argument("--no-timing", action="store_true", help="omit the wall-time meta block")

    p = argparse.ArgumentParser(prog="klpoly", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("transform", parents=[common], help="apply KL_alpha or its inverse")
    t.add_argument("--alpha", default="0")
    t.add_argument("--coeffs", required=True, help='comma separated "p/q", lowest degree first')
    t.add_argument("--dir", choices=("forward", "inverse", "both"), default="forward")
    t.set_defaults(func=cmd_transform)

    s = sub.add_parser("sequence", parents=[common], help="generate a polynomial family")
    s.add_argument("family", choices=FAMILIES)
    s.add_argument("--params", help='e.g. "a1=1/2" or "alphas=1;3/2"')
    s.add_argument("--n", type=int, default=5)
    s.set_defaults(func=cmd_sequence)

    e = sub.add_parser("extract", parents=[common], help="structural relation of a (transformed) family")
    e.add_argument("family", nargs="?", choices=FAMILIES)
    e.add_argument("--file", help='JSON {"var": ..., "polys": [[coeffs], ...]}')
    e.add_argument("--params")
    e.add_argument("--alpha", default="0")
    e.add_argument("--nmax", type=int, default=14)
    e.add_argument("--no-transform", action="store_true", help="extract from the sequence itself")
    e.set_defaults(func=cmd_extract)

    c = sub.add_parser("classify", parents=[common], help="match a Pearson pair against the theorem cases")
    c.add_argument("family", choices=("laguerre", "hermite", "generalized-hermite", "perturbed-laguerre"))
    c.add_argument("--params")
    c.add_argument("--alpha", default="0")
    c.add_argument("--phi", help="override phi (coefficients)")
    c.add_argument("--psi", help="override psi (coefficients)")
    c.set_defaults(func=cmd_classify)

    v = sub.add_parser("verify", parents=[common], help="run check suites")
    v.add_argument("group", nargs="?", help="identities, families, theorem, numeric or all")
    v.add_argument("--suite", help="suite name, or kernel|transform|parseval after 'numeric'")
    v.add_argument("--nmax", type=int)
    v.add_argument("--tol", type=float, default=1e-6)
    v.set_defaults(func=cmd_verify)

    tb = sub.add_parser("tables", parents=[common], help="central factorial number tables")
    tb.add_argument("--alpha", default="0")
    tb.add_argument("--nmax", type=int, default=6)
    tb.add_argument("--which", choices=("t", "T", "both"), default="both")
    tb.set_defaults(func=cmd_tables)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args._started = time.perf_counter()
    try:
        return args.func(args)
    except (InputError, ParameterError, RegularityError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
