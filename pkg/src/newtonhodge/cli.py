"""Command-line front end.

    newtonhodge analyze      --n 1 --expr "1 - t*x1^3"
    newtonhodge hodge        --n 1 --poly f.txt --lambda 1/3 [--refined]
    newtonhodge jordan       --n 1 --poly f.txt --all
    newtonhodge multiplicity --ambient affine --n 1 --expr "x1^2 - t"
    newtonhodge selfcheck    --seed 3 --random 20

Output is JSON by default (``--output table`` for a plain listing); the
document layout is described in docs/report_schema.md.
"""
import argparse
import json
import random
import sys
from fractions import Fraction

from . import __version__
from .errors import (BadLambdaError, NewtonHodgeError, NotApplicableError)
from .exact import RootOfUnity
from .monodromy import (concentrated_E, jordan_via_E, jordan_via_formula,
                        multiplicity_product, refined_E_affine, refined_E_ci,
                        refined_E_torus)
from .newton import ASSUMPTION_DIM, CayleyData, build_newton_data, predicates
from .oracle import consistency_suite, random_instance, random_system
from .polyinput import CISystem, parse_poly, poly_from_json

SCHEMA_VERSION = "1.0"
SPECTRUM_LIMIT = 10000

BANNER = [
    "schön genericity: every initial form of the family is assumed to cut out a "
    "smooth reduced subvariety of the torus (a non-degenerate complete intersection "
    "for systems); this is not checked",
    ASSUMPTION_DIM,
]

# assumption texts printed with each exit status
CATALOGUE = {
    "E_SYNTAX": "input must follow the documented grammar: sums of c*x1^a1*...*xn^an with "
                "c a rational, t^j or a parenthesized Laurent polynomial in t",
    "E_NEGATIVE_EXPONENT": "in affine space the family must be polynomial in x1..xn",
    "E_BAD_VARIABLE": "variables must be x1..xn for the given n",
    "E_EMPTY": ASSUMPTION_DIM,
    "E_DEGENERATE": ASSUMPTION_DIM,
    "E_BAD_LAMBDA": "concentration and Jordan block results hold only for eigenvalues outside R_f",
    "E_NOT_APPLICABLE": "concentration and Jordan block results hold only for eigenvalues outside R_f",
}
INTERNAL_NOTE = "internal consistency check failed; the input may violate the schön genericity assumption"

EXIT_CODES = {
    "E_SYNTAX": 2, "E_NEGATIVE_EXPONENT": 2, "E_BAD_VARIABLE": 2,
    "E_EMPTY": 3, "E_DEGENERATE": 3,
    "E_BAD_LAMBDA": 4, "E_NOT_APPLICABLE": 4,
}


def frac(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# input
# ---------------------------------------------------------------------------


def _read_text(path):
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise SystemExit(_fail_io(exc))


def _read_one(path, ambient, n):
    text = _read_text(path)
    if path.endswith(".json"):
        return poly_from_json(text, ambient, n)
    if n is None:
        raise SystemExit(_fail_io("--n is required for text input"))
    return parse_poly(text.strip(), ambient, n)


def _fail_io(msg):
    print(f"error: E_SYNTAX: {msg}", file=sys.stderr)
    return 2


def load_input(args):
    """A TPolynomial, or a CISystem when --ci is given."""
    if args.expr is not None:
        if args.n is None:
            raise SystemExit(_fail_io("--n is required with --expr"))
        first = parse_poly(args.expr, args.ambient, args.n)
    elif args.json is not None:
        first = poly_from_json(_read_text(args.json), args.ambient, args.n)
    elif args.poly is not None:
        first = _read_one(args.poly, args.ambient, args.n)
    else:
        raise SystemExit(_fail_io("one of --poly, --json or --expr is required"))
    if not args.ci:
        return first
    rest = [_read_one(path, first.ambient, first.n) for path in args.ci]
    return CISystem((first, *rest))


def build(instance):
    if isinstance(instance, CISystem):
        return CayleyData(instance)
    return build_newton_data(instance)


def _newton(data):
    return data.cayley if isinstance(data, CayleyData) else data


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def newton_section(nd):
    S = nd.subdivision
    pts = S.points
    region_key = "at_infinity" if nd.ambient == "affine" else "on_boundary"
    cells = []
    for F in S.lattice.elements:
        if not F:
            continue
        c = S.cells[F]
        cells.append({
            "vertices": [list(pts[i]) for i in sorted(F)],
            "dim": S.lattice.dim(F),
            "m_F": nd.m[F],
            "nu": {"gradient": [frac(g) for g in c.gradient], "constant": frac(c.constant)},
            "sigma_dim": S.base.lattice.dim(S.sigma(F)),
            region_key: F in nd.region,
        })
    preds = predicates(nd)
    out = {
        "dim_P": S.dim,
        "P_vertices": [list(pts[i]) for i in S.base.vertices],
        "lifted_points": [list(p) + [frac(h)] for p, h in zip(pts, S.heights)],
        "cells": cells,
        "R_f": sorted(nd.R_orders),
        "spectrum_period": nd.period,
        "spectrum": ([str(l) for l in nd.spectrum()] if nd.period <= SPECTRUM_LIMIT else None),
        "supported_spectrum": [str(l) for l in nd.supported_spectrum()],
        "predicates": {
            "is_convenient": preds["is_convenient"],
            "satisfies_condition_S": preds["satisfies_condition_S"],
            "relevant_faces": sorted([list(pts[i]) for i in sorted(q)] for q in preds["relevant_faces"]),
        },
    }
    if nd.ambient == "affine":
        out["P_infinity_facets"] = sorted([list(pts[i]) for i in sorted(vs)] for vs in nd.region_facets)
    return out


def analyze_section(data):
    if isinstance(data, CayleyData):
        return {"k": data.k, "R_f": sorted(data.R_f), "R_tilde": sorted(data.R_tilde),
                "minkowski": newton_section(data.minkowski), "cayley": newton_section(data.cayley)}
    return newton_section(data)


def hodge_json(h):
    return {
        "lambda": str(h.lam),
        "route": h.route,
        "center": h.center,
        "concentrated": h.concentrated,
        "in_R_f": h.bad,
        "E_uvw": h.E_uvw.to_json(),
        "E_uv": h.E_uv.to_json(),
        "E_diag": h.E_diag.to_json(),
        "E_at_1": h.E_uvw.evaluate({"u": 1, "v": 1, "w": 1}),
    }


def jordan_json(lam, via_e, via_f):
    agree = via_e.blocks == via_f.blocks
    out = {
        "lambda": str(lam),
        "route": "both-agree" if agree else "disagree",
        "via_E": {str(m): j for m, j in via_e.blocks.items()},
        "via_formula": {str(m): j for m, j in via_f.blocks.items()},
        "agree": agree,
        "eigenspace_dim": via_f.total_dimension(),
    }
    if via_f.special is not None:
        out["special_J_n"] = via_f.special
    return out


def report_document(command, instance, body):
    if isinstance(instance, CISystem):
        echo = {"system": [p.to_json() for p in instance.polys]}
    else:
        echo = instance.to_json()
    return {"schema_version": SCHEMA_VERSION, "command": command, "input": echo,
            "assumptions": BANNER, **body}


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _lambdas(args, nd, allow_all=True):
    if allow_all and getattr(args, "all", False):
        return nd.supported_spectrum()
    if args.lam is None:
        raise SystemExit(_fail_lambda("--lambda a/b (or --all) is required"))
    return [RootOfUnity.parse(args.lam)]


def _fail_lambda(msg):
    print(f"error: E_BAD_LAMBDA: {msg}", file=sys.stderr)
    return 4


def hodge_for(data, lam, refined):
    nd = _newton(data)
    ci = isinstance(data, CayleyData)
    if not refined:
        return concentrated_E(data, lam)
    if nd.ambient == "torus":
        return refined_E_ci(data, lam) if ci else refined_E_torus(nd, lam)
    if ci:
        raise NotApplicableError("the refined route for affine complete intersections is not available; "
                                 "drop --refined for the concentrated route")
    return refined_E_affine(nd, lam)


def jordan_for(data, lam):
    nd = _newton(data)
    if nd.is_bad(lam):
        raise BadLambdaError(f"lambda = {lam} lies in R_f (orders {sorted(nd.R_orders)})")
    via_f = jordan_via_formula(data, lam)
    via_e = jordan_via_E(concentrated_E(data, lam))
    return via_e, via_f


def cmd_analyze(args, instance, data):
    return {"newton": analyze_section(data)}


def cmd_hodge(args, instance, data):
    nd = _newton(data)
    rows = []
    for lam in _lambdas(args, nd):
        if getattr(args, "all", False) and nd.is_bad(lam) and not args.refined:
            print(f"warning: skipping lambda = {lam} in R_f", file=sys.stderr)
            continue
        rows.append(hodge_json(hodge_for(data, lam, args.refined)))
    return {"hodge": rows}


def cmd_jordan(args, instance, data):
    nd = _newton(data)
    rows = []
    for lam in _lambdas(args, nd):
        if getattr(args, "all", False) and nd.is_bad(lam):
            print(f"warning: skipping lambda = {lam} in R_f", file=sys.stderr)
            continue
        via_e, via_f = jordan_for(data, lam)
        if getattr(args, "all", False) and not via_e.nonzero() and not via_f.nonzero():
            continue
        rows.append(jordan_json(lam, via_e, via_f))
    return {"jordan": rows}


def cmd_multiplicity(args, instance, data):
    mult = multiplicity_product(data)
    nd = _newton(data)
    per = {str(l): mult.multiplicity_of(l) for l in nd.supported_spectrum() if not nd.is_bad(l)}
    return {"multiplicity": {"factors": [[m, e] for m, e in mult.factors], "text": str(mult),
                             "per_lambda": per}}


def cmd_selfcheck(args, instance, data):
    runs = []
    if instance is not None:
        runs.append(("input", instance))
    if args.seed is not None or instance is None:
        rng = random.Random(args.seed if args.seed is not None else 0)
        for i in range(args.random):
            if args.ci_random:
                n = rng.randint(2, 3)
                runs.append((f"random-ci-{i}", random_system(rng, n, 2, rng.choice(["torus", "affine"]))))
            else:
                runs.append((f"random-{i}", random_instance(rng)))
    results = []
    for label, inst in runs:
        reports = consistency_suite(inst)
        entry = {"label": label, "instance": str(inst) if not isinstance(inst, CISystem)
                 else [str(p) for p in inst.polys],
                 "passed": all(r.passed for r in reports),
                 "checks": [r.to_json() for r in reports]}
        if args.inject_fault:
            corrupted = [r for r in consistency_suite(inst, inject_fault=True, kernels=False)
                         if r.name.startswith("multiplicity")]
            # None when there is no eigenvalue outside R_f to test against
            detected = any(not r.passed for r in corrupted) if corrupted else None
            entry["fault_injection"] = {"detected": detected,
                                        "checks": [r.to_json() for r in corrupted]}
            if detected is False:
                entry["passed"] = False
        results.append(entry)
    return {"selfcheck": {"seed": args.seed, "runs": results,
                          "passed": all(r["passed"] for r in results)}}


COMMANDS = {
    "analyze": cmd_analyze,
    "hodge": cmd_hodge,
    "jordan": cmd_jordan,
    "multiplicity": cmd_multiplicity,
    "selfcheck": cmd_selfcheck,
}


# ---------------------------------------------------------------------------
# table output
# ---------------------------------------------------------------------------


def render_table(doc):
    lines = [f"# {doc['command']}  (schema {doc['schema_version']})"]
    for note in doc["assumptions"]:
        lines.append(f"# assumes: {note}")
    if "newton" in doc:
        sec = doc["newton"]
        parts = [("", sec)] if "cells" in sec else [("minkowski ", sec["minkowski"]), ("cayley ", sec["cayley"])]
        for tag, s in parts:
            lines.append(f"{tag}dim P = {s['dim_P']}   vertices: {s['P_vertices']}")
            lines.append(f"{tag}R_f orders: {s['R_f']}   spectrum period: {s['spectrum_period']}")
            lines.append(f"{'cell':<40} {'dim':>3} {'m_F':>4}")
            for c in s["cells"]:
                lines.append(f"{str(c['vertices']):<40} {c['dim']:>3} {c['m_F']:>4}")
    for row in doc.get("hodge", []):
        lines.append(f"lambda {row['lambda']:>7}  [{row['route']}]  E = {row['E_uvw']['text']}")
    for row in doc.get("jordan", []):
        blocks = ", ".join(f"J_{m}={j}" for m, j in row["via_formula"].items() if j) or "none"
        lines.append(f"lambda {row['lambda']:>7}  {blocks}  routes agree: {row['agree']}")
    if "multiplicity" in doc:
        lines.append(f"multiplicity: {doc['multiplicity']['text']}")
        for lam, mult in doc["multiplicity"]["per_lambda"].items():
            lines.append(f"  lambda {lam:>7}: {mult}")
    if "selfcheck" in doc:
        for run in doc["selfcheck"]["runs"]:
            bad = [c["name"] for c in run["checks"] if not c["passed"]]
            status = "PASS" if run["passed"] else "FAIL " + ", ".join(bad)
            if "fault_injection" in run:
                status += f"  (corrupted m_F detected: {run['fault_injection']['detected']})"
            lines.append(f"{run['label']:<14} {len(run['checks']):>4} checks  {status}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def make_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ambient", choices=["torus", "affine"], default="torus")
    common.add_argument("--n", type=int, help="number of variables x1..xn")
    src = common.add_mutually_exclusive_group()
    src.add_argument("--poly", metavar="FILE", help="polynomial in the text grammar ('-' for stdin)")
    src.add_argument("--json", metavar="FILE", help="polynomial in the JSON form")
    src.add_argument("--expr", metavar="TEXT", help="polynomial given inline")
    common.add_argument("--ci", nargs="+", metavar="FILE",
                        help="further equations; the input becomes a complete intersection")
    common.add_argument("--output", choices=["json", "table"], default="json")

    parser = argparse.ArgumentParser(prog="newtonhodge",
                                     description="Limit mixed Hodge data and monodromy of degenerating families, read off Newton polytopes.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="Newton polytope, subdivision, m_F, R_f, spectrum")
    for name, helptext in [("hodge", "equivariant limit mixed Hodge polynomial E_lambda"),
                           ("jordan", "Jordan block counts by both routes")]:
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--lambda", dest="lam", metavar="a/b", help="eigenvalue exp(2 pi i a/b)")
        p.add_argument("--all", action="store_true", help="every eigenvalue in the supported spectrum")
        if name == "hodge":
            p.add_argument("--refined", action="store_true",
                           help="use the three-variable formula valid for every lambda")
    sub.add_parser("multiplicity", parents=[common], help="characteristic polynomial factorization")
    p = sub.add_parser("selfcheck", parents=[common], help="oracle and cross-route checks")
    p.add_argument("--seed", type=int, help="seed for random instances")
    p.add_argument("--random", type=int, default=10, help="number of random instances (with --seed)")
    p.add_argument("--ci-random", action="store_true", help="random instances are k=2 systems")
    p.add_argument("--inject-fault", action="store_true",
                   help="also run the multiplicity checks on corrupted m_F (should fail)")
    return parser


def run(argv=None):
    args = make_parser().parse_args(argv)
    try:
        if args.command == "selfcheck" and args.poly is None and args.json is None and args.expr is None:
            instance = data = None
        else:
            instance = load_input(args)
            data = build(instance)
        body = COMMANDS[args.command](args, instance, data)
    except NewtonHodgeError as exc:
        code = EXIT_CODES.get(exc.code, 5)
        print(f"error: {exc}", file=sys.stderr)
        print(f"assumption: {CATALOGUE.get(exc.code, INTERNAL_NOTE)}", file=sys.stderr)
        return code
    except ValueError as exc:
        print(f"error: E_SYNTAX: {exc}", file=sys.stderr)
        return 2
    doc = report_document(args.command, instance, body) if instance is not None else {
        "schema_version": SCHEMA_VERSION, "command": args.command, "input": None,
        "assumptions": BANNER, **body}
    if args.output == "json":
        print(json.dumps(doc, indent=2, ensure_ascii=False))
    else:
        print(render_table(doc))
    if args.command == "selfcheck" and not body["selfcheck"]["passed"]:
        return 1
    return 0


def main():
    sys.exit(run())
