"""
Command line front end.  Every command prints canonical JSON (or CSV for
majorant coefficients); exit status 0 on success, 1 when a check fails and
2 on usage or input errors.
"""
import argparse
import json
import os
import sys
from fractions import Fraction

import sympy

from . import __version__
from . import jsonio
from . import exact_linalg as xl

EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- inputs

def read_json_arg(value):
    """Inline JSON, a path to a JSON file, or a bare catalog name."""
    if os.path.exists(value):
        return jsonio.load(value)
    try:
        return json.loads(value)
    except json.JSONDecodeError:
        return value


def load_lattice(value):
    try:
        return jsonio.lattice_from_json(read_json_arg(value))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError("cannot load lattice %r: %s" % (value, exc))


def parse_symbolic(A, value):
    """A scalar of the algebra from a {monomial: coeff} map or an expression like '2*mu - i*x'."""
    if isinstance(value, dict):
        return A.from_labels({k: jsonio.parse_fraction(v) for k, v in value.items()})
    if isinstance(value, (int, Fraction)):
        return A.const(value)
    syms = {n: sympy.Symbol(n) for n in A.names}
    try:
        expr = sympy.expand(sympy.sympify(str(value), locals=syms, rational=True))
        poly = sympy.Poly(expr, *syms.values()) if syms else None
    except (sympy.SympifyError, sympy.PolynomialError, TypeError) as exc:
        raise UsageError("cannot parse %r over %s: %s" % (value, A.names, exc))
    out = A.const(0)
    for mono, c in poly.terms():
        if not c.is_Rational:
            raise UsageError("coefficient %s of %r is not rational" % (c, value))
        term = A.const(Fraction(int(c.p), int(c.q)))
        for name, e in zip(A.names, mono):
            term = term * A.gen(name) ** e
        out = out + term
    return out


def algebra_named(name):
    from .symbolic import example_algebra, gaussian_algebra
    table = {"example": example_algebra, "gaussian": gaussian_algebra}
    if name not in table:
        raise UsageError("unknown algebra %r (known: %s)" % (name, ", ".join(table)))
    return table[name]()


def params_from_json(data):
    from .period import GluingParams
    A = algebra_named(data.get("algebra", "example"))
    kw = {}
    for key in ("tau", "a_alpha", "a_beta", "gamma9", "x"):
        if key in data:
            kw[key] = parse_symbolic(A, data[key])
    for key in ("c_plus", "c_minus"):
        if key in data:
            kw[key] = [parse_symbolic(A, v) for v in data[key]]
    if "Lambda" in data:
        kw["Lambda"] = jsonio.parse_fraction(data["Lambda"])
    return GluingParams(A, **kw)


def period_from_json(data):
    """A PeriodVector from {"algebra", "coeffs": {label: scalar}} or from gluing params."""
    from .catalog import K3_LABELS
    from .period import PeriodVector, period_from_params
    if "coeffs" not in data:
        return period_from_params(params_from_json(data))
    A = algebra_named(data.get("algebra", "example"))
    coeffs = data["coeffs"]
    unknown = set(coeffs) - set(K3_LABELS)
    if unknown:
        raise UsageError("unknown basis labels %s" % sorted(unknown))
    return PeriodVector(A, tuple(parse_symbolic(A, coeffs.get(l, 0)) for l in K3_LABELS))


def period_json(sigma):
    return {"algebra": list(sigma.algebra.names),
            "coeffs": {k: jsonio.to_jsonable(v) for k, v in sigma.as_dict().items()}}


def complex_values(args):
    if args.x is None:
        return None
    z = complex(args.x.replace("i", "j"))
    return {"x": z, "xbar": z.conjugate()}


# ---------------------------------------------------------------- commands

def cmd_lattice_info(args):
    L = load_lattice(args.name)
    return jsonio.lattice_json(L), EXIT_OK


def cmd_glue(args):
    from .glue import (GlueSpec, glue_index, glue_spec_from_pairs, glue_with_basis,
                       kummer_glue_spec, mcmullen_glue_spec, validate_glue)
    if args.preset:
        spec = {"kummer": kummer_glue_spec, "mcmullen": mcmullen_glue_spec}[args.preset]()
    else:
        if not (args.l1 and args.l2 and args.phi):
            raise UsageError("glue needs --l1, --l2 and --phi (or --preset)")
        L1, L2 = load_lattice(args.l1), load_lattice(args.l2)
        phi = read_json_arg(args.phi)
        if isinstance(phi, dict) and "pairs" in phi:
            pairs = [([jsonio.parse_fraction(c) for c in x], [jsonio.parse_fraction(c) for c in y])
                     for x, y in phi["pairs"]]
            try:
                spec = glue_spec_from_pairs(L1, L2, pairs)
            except ValueError as exc:
                return {"ok": False, "detail": str(exc)}, EXIT_CHECK
        elif isinstance(phi, dict) and "phi" in phi:
            spec = GlueSpec(L1, L2, tuple(tuple(r) for r in phi["phi"]))
        else:
            raise UsageError("phi file needs a 'phi' matrix or a 'pairs' list")
    report = validate_glue(spec)
    out = {"validation": report.as_dict(),
           "groups": {"L1": list(spec.D1.invariant_factors), "L2": list(spec.D2.invariant_factors)},
           "phi": [list(r) for r in spec.phi]}
    if not report.ok:
        return out, EXIT_CHECK
    L, B = glue_with_basis(spec, args.name)
    out["lattice"] = jsonio.lattice_json(L)
    out["basis"] = B
    out["index"] = glue_index(spec)
    return out, EXIT_OK


def cmd_coxeter(args):
    from .isometry import coxeter_element, is_reciprocal, order_of
    L = load_lattice(args.lattice)
    order = [int(k) for k in args.order.split(",")] if args.order else None
    try:
        f = coxeter_element(L, order)
    except ValueError as exc:
        raise UsageError(str(exc))
    cp = f.char_poly()
    return {"lattice": L.name, "matrix": f.M, "char_poly": cp,
            "char_poly_str": xl.poly_to_str(cp), "reciprocal": is_reciprocal(cp),
            "order": order_of(f)}, EXIT_OK


def cmd_roots(args):
    from .roots import dominant_root, enumerate_roots, max_disjoint_roots
    L = load_lattice(args.lattice)
    try:
        roots = enumerate_roots(L)
    except ValueError as exc:
        raise UsageError(str(exc))
    out = {"lattice": L.name, "count": len(roots), "roots": roots}
    if args.dominant:
        try:
            out["dominant"] = dominant_root(L, roots)
        except ValueError as exc:
            out["dominant"] = None
            out["dominant_error"] = str(exc)
    if args.max_disjoint:
        pool = xl.identity(L.rank) if args.generators_only else roots
        size, members = max_disjoint_roots(L.G, pool)
        out["max_disjoint"] = {"pool": "generators" if args.generators_only else "all roots",
                               "size": size, "members": [pool[k] for k in members]}
    return out, EXIT_OK


def cmd_period_from_params(args):
    from .period import period_from_params, period_pairing
    p = params_from_json(read_json_arg(args.params))
    sigma = period_from_params(p)
    out = period_json(sigma)
    out["checks"] = {"sigma.sigma": jsonio.to_jsonable(period_pairing(sigma, sigma)),
                     "sigma.sigmabar": jsonio.to_jsonable(period_pairing(sigma, sigma, True))}
    return out, EXIT_OK


def cmd_period_realizable(args):
    from .period import example_period, im_x_threshold, realizability_check
    sigma = period_from_json(read_json_arg(args.period)) if args.period else example_period()
    A = sigma.algebra
    p, q = parse_symbolic(A, args.p), parse_symbolic(A, args.q)
    Lam = jsonio.parse_fraction(args.Lambda)
    values = complex_values(args)
    out = {"p": jsonio.to_jsonable(p), "q": jsonio.to_jsonable(q), "Lambda": Lam}
    if "x" in A.names:
        try:
            out["im_x_threshold"] = im_x_threshold(sigma, Lam)
        except ValueError as exc:
            out["im_x_threshold"] = None
            out["im_x_note"] = str(exc)
    try:
        v = realizability_check(sigma, p, q, Lam, values)
    except ValueError as exc:
        if values is None and "no numerical value" in str(exc):
            raise UsageError("the period has free symbols; pass --x to evaluate condition (c)")
        raise
    out["verdict"] = v.as_dict()
    return out, EXIT_OK if v.passed else EXIT_CHECK


def cmd_period_picard(args):
    from .period import picard_lattice
    from .roots import enumerate_roots, max_disjoint_roots
    sigma = period_from_json(read_json_arg(args.period)) if args.period else None
    if sigma is None:
        from .period import example_period
        sigma = example_period()
    L, rank, basis = picard_lattice(sigma)
    out = {"rank": rank, "basis": basis}
    if L is not None:
        out["gram"] = L.G
        out["signature"] = list(L.signature)
        out["negative_definite"] = L.inertia == (0, rank, 0)
        if out["negative_definite"] and args.roots:
            roots = enumerate_roots(L)
            out["root_count"] = len(roots)
            out["max_disjoint_roots"] = max_disjoint_roots(L.G, roots)[0]
    return out, EXIT_OK


def cmd_dioph(args):
    from .diophantine import certificate_for, check_pair
    cert = None
    if args.minpoly:
        coeffs = [int(c) for c in args.minpoly.split(",")]
        target = args.q if args.certify == "q" else args.p
        try:
            cert = certificate_for(target, coeffs)
        except ValueError as exc:
            raise UsageError("certificate: %s" % exc)
    try:
        rep = check_pair(args.p, args.q, args.nmax, bits=args.precision_bits,
                         certificate=cert)
    except (ValueError, TypeError, sympy.SympifyError) as exc:
        raise UsageError(str(exc))
    if args.figure:
        from .plotting import plot_dioph
        plot_dioph(rep, args.figure)
    return rep.as_dict(), EXIT_OK if rep.verdict == "pass" else EXIT_CHECK


def cmd_salem(args):
    from .salem import kummer_auto_periods, min_entropy_periods
    tol = args.tol if args.tol is not None else 1e-10
    try:
        if args.which == "min-entropy":
            r = min_entropy_periods(tol)
        else:
            r = kummer_auto_periods(args.a, tol)
    except ValueError as exc:
        return {"error": str(exc)}, EXIT_CHECK
    if args.figure:
        from .plotting import plot_salem
        plot_salem(r, args.figure)
    return r.as_dict(), EXIT_OK


def cmd_majorant(args):
    from .diophantine import bundle_distance_seq
    from .majorant import (majorant_arnold_z, majorant_b_hat, majorant_ueda,
                           radius_estimate)
    K, M = jsonio.parse_fraction(args.K), jsonio.parse_fraction(args.M)
    Q = jsonio.parse_fraction(args.Q) if args.Q is not None else None
    if args.equation in ("arnold-z", "b-hat") and Q is None:
        raise UsageError("--Q is required for the %s equation" % args.equation)
    d = bundle_distance_seq(args.p, args.q, args.terms, bits=args.precision_bits)
    try:
        if args.equation == "ueda":
            ms = majorant_ueda(d, K, M, args.terms, bits=args.precision_bits)
        elif args.equation == "arnold-z":
            ms = majorant_arnold_z(d, K, M, Q, args.terms, bits=args.precision_bits)
        else:
            ms = majorant_b_hat(d, K, M, Q, args.terms, bits=args.precision_bits)
    except ValueError as exc:
        return {"error": str(exc)}, EXIT_CHECK
    est = radius_estimate(ms) if len(ms) >= 16 else None
    if args.figure:
        from .plotting import plot_majorant
        plot_majorant(ms, est, args.figure)
    out = ms.as_dict()
    out["radius"] = est.as_dict() if est else None
    if args.format == "csv":
        lines = ["n,A_n"] + ["%d,%s" % (k + 1, c) for k, c in enumerate(out["coeffs"])]
        if est:
            lines.append("# radius %.6g slope %.6g residual %.3g" % (est.radius, est.slope, est.residual))
        return "\n".join(lines) + "\n", EXIT_OK
    return out, EXIT_OK


def cmd_verify(args):
    from .verify import verify_paper
    only = args.only.split(",") if args.only else None
    report = verify_paper(corrupt_e8=args.corrupt_e8, only=only, seed=args.seed)
    width = max(len(c.name) for c in report.checks) if report.checks else 0
    table = ["%-*s  %s  %6.2fs  %s" % (width, c.name, "PASS" if c.passed else "FAIL",
                                       c.seconds, c.detail) for c in report.checks]
    print("\n".join(table), file=sys.stderr if args.json else sys.stdout)
    if args.json:
        return report.as_dict(), EXIT_OK if report.passed else EXIT_CHECK
    return None, EXIT_OK if report.passed else EXIT_CHECK


# ---------------------------------------------------------------- parser

def build_parser():
    def global_options(suppress):
        # subcommands must not reset values given before the subcommand name
        kw = {"default": argparse.SUPPRESS} if suppress else {"default": None}
        p = argparse.ArgumentParser(add_help=False)
        p.add_argument("--out", help="also write the output to this file", **kw)
        p.add_argument("--precision-bits", type=int,
                       help="working precision (default $K3LAT_PRECISION_BITS or 200)", **kw)
        p.add_argument("--tol", type=float, help="numerical tolerance", **kw)
        p.add_argument("--seed", type=int, help="seed for randomized checks", **kw)
        return p

    common = global_options(True)
    ap = argparse.ArgumentParser(prog="k3lat", parents=[global_options(False)],
                                 description="Lattice and period computations for glued K3 surfaces.")
    ap.add_argument("--version", action="version", version="k3lat " + __version__)
    sub = ap.add_subparsers(dest="command", metavar="command")

    lat = sub.add_parser("lattice", parents=[common], help="catalog lattices and gluing")
    lsub = lat.add_subparsers(dest="lattice_command", metavar="subcommand")
    info = lsub.add_parser("info", parents=[common], help="Gram, signature and discriminant form")
    info.add_argument("name", help="catalog name, JSON file or inline JSON")
    info.set_defaults(func=cmd_lattice_info)

    def glue_args(p):
        p.add_argument("--l1")
        p.add_argument("--l2")
        p.add_argument("--phi", help="JSON with 'phi' (matrix) or 'pairs' of dual vectors")
        p.add_argument("--preset", choices=["kummer", "mcmullen"])
        p.add_argument("--name", default="glued")
        p.set_defaults(func=cmd_glue)

    glue_args(lsub.add_parser("glue", parents=[common], help="glue two lattices"))
    glue_args(sub.add_parser("glue", parents=[common], help="glue two lattices"))

    cox = sub.add_parser("coxeter", parents=[common], help="Coxeter element of a Dynkin lattice")
    cox.add_argument("--lattice", default="e10")
    cox.add_argument("--order", help="comma-separated node order")
    cox.set_defaults(func=cmd_coxeter)

    rt = sub.add_parser("roots", parents=[common], help="(-2)-vectors of a negative-definite lattice")
    rt.add_argument("--lattice", required=True)
    rt.add_argument("--dominant", action="store_true")
    rt.add_argument("--max-disjoint", action="store_true")
    rt.add_argument("--generators-only", action="store_true",
                    help="restrict --max-disjoint to the basis vectors")
    rt.set_defaults(func=cmd_roots)

    per = sub.add_parser("period", parents=[common], help="marked periods")
    psub = per.add_subparsers(dest="period_command", metavar="subcommand")
    fp = psub.add_parser("from-params", parents=[common])
    fp.add_argument("params", help="gluing parameters JSON (file or inline)")
    fp.set_defaults(func=cmd_period_from_params)
    rz = psub.add_parser("realizable", parents=[common])
    rz.add_argument("--p", required=True)
    rz.add_argument("--q", required=True)
    rz.add_argument("--lambda", dest="Lambda", default="0")
    rz.add_argument("--period", help="period or parameter JSON (default: the rank-17 example)")
    rz.add_argument("--x", help="numerical value of the free parameter x, e.g. 0+2i")
    rz.set_defaults(func=cmd_period_realizable)
    pc = psub.add_parser("picard", parents=[common])
    pc.add_argument("period", nargs="?", help="period or parameter JSON (default: the example)")
    pc.add_argument("--roots", action="store_true", help="also count roots")
    pc.set_defaults(func=cmd_period_picard)

    dio = sub.add_parser("dioph", parents=[common], help="Diophantine pairs")
    dsub = dio.add_subparsers(dest="dioph_command", metavar="subcommand")
    chk = dsub.add_parser("check", parents=[common])
    chk.add_argument("--p", required=True)
    chk.add_argument("--q", required=True)
    chk.add_argument("--nmax", type=int, default=10 ** 4)
    chk.add_argument("--minpoly", help="comma-separated integer coefficients, leading first")
    chk.add_argument("--certify", choices=["p", "q"], default="q")
    chk.add_argument("--figure", help="write a PNG/PDF of the record minima")
    chk.set_defaults(func=cmd_dioph)

    sal = sub.add_parser("salem", parents=[common], help="automorphism periods")
    ssub = sal.add_subparsers(dest="which", metavar="example")
    me = ssub.add_parser("min-entropy", parents=[common])
    me.add_argument("--figure")
    me.set_defaults(func=cmd_salem)
    ku = ssub.add_parser("kummer", parents=[common])
    ku.add_argument("--a", type=int, required=True)
    ku.add_argument("--figure")
    ku.set_defaults(func=cmd_salem)

    mj = sub.add_parser("majorant", parents=[common], help="majorant series and radius")
    mj.add_argument("--equation", choices=["ueda", "arnold-z", "b-hat"], required=True)
    mj.add_argument("--p", required=True)
    mj.add_argument("--q", required=True)
    mj.add_argument("--K", required=True)
    mj.add_argument("--M", required=True)
    mj.add_argument("--Q")
    mj.add_argument("--terms", type=int, default=32)
    mj.add_argument("--format", choices=["json", "csv"], default="json")
    mj.add_argument("--figure")
    mj.set_defaults(func=cmd_majorant)

    vp = sub.add_parser("verify-paper", parents=[common], help="run every reproduction check")
    vp.add_argument("--only", help="comma-separated criterion numbers")
    vp.add_argument("--corrupt-e8", action="store_true", help="fault injection for testing")
    vp.add_argument("--json", action="store_true", help="emit the report as JSON")
    vp.set_defaults(func=cmd_verify)
    return ap


def emit(payload, out=None):
    text = payload if isinstance(payload, str) else jsonio.dumps(payload)
    sys.stdout.write(text)
    if out:
        with open(out, "w") as fh:
            fh.write(text)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    ap = build_parser()
    if not argv:
        ap.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if not hasattr(args, "func"):
        ap.print_usage(sys.stderr)
        return EXIT_USAGE
    if args.precision_bits is None:
        args.precision_bits = int(os.environ.get("K3LAT_PRECISION_BITS", 200))
    try:
        payload, code = args.func(args)
    except UsageError as exc:
        print("k3lat: error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    if payload is not None:
        emit(payload, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
