"""Command-line interface.

Every invocation prints a single JSON document on standard output with the
keys ``command``, ``inputs``, ``outputs`` and ``tolerances``; diagnostics go
to standard error.  Exit status is 0 whenever a verdict was computed (true
or false alike) and nonzero only for usage or precondition errors.

The ``verify`` subcommand re-ingests such a document and reproduces its
outputs, so every result is checkable by a second run.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import fourdim as fd
from . import liealg as la
from . import piaq as pq
from . import quat as qt
from . import spinor as sp
from .errors import AqlabError
from .gxg import MetricFamily, classify_einstein, einstein_sweep

DEFAULT_TOL = 1e-9


def _tolerance(args, default: float = DEFAULT_TOL) -> float:
    env = os.environ.get("AQLAB_TOL")
    if env is not None:
        return float(env)
    return default


def _rationalize(x: float, tol: float = 1e-12):
    """Return [num, den] when x is within tol of a small-denominator rational."""
    frac = Fraction(x).limit_denominator(1000)
    if abs(float(frac) - x) < tol:
        return [frac.numerator, frac.denominator]
    return None


def _with_exact(x: float) -> dict:
    out = {"value": float(x)}
    exact = _rationalize(x)
    if exact is not None:
        out["exact"] = exact
    return out


def _f(x: float) -> float:
    """Normalize away negative zero for stable emission."""
    return float(x) + 0.0


def _scalar_doc(z) -> list:
    return [_f(z.re), _f(z.im)]


def _smat_doc(m) -> list:
    return [[_scalar_doc(m[r, c]) for c in range(2)] for r in range(2)]


def _array_doc(a) -> list:
    return (np.asarray(a, dtype=float) + 0.0).tolist()


def _emit(doc: dict) -> None:
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _parse_floats(text: str, n: int, what: str) -> list[float]:
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != n:
        raise AqlabError(f"{what} needs {n} comma-separated numbers")
    return [float(p) for p in parts]


def _load_algebra(args) -> la.LieAlgebraModel:
    if getattr(args, "catalog", None):
        return la.CATALOG[args.catalog]()
    with open(args.algebra) as fh:
        data = json.load(fh)
    return _algebra_from_dict(data)


def _algebra_from_dict(data: dict) -> la.LieAlgebraModel:
    entries = []
    for rec in data["brackets"]:
        if isinstance(rec, dict):
            entries.append((rec["i"], rec["j"], rec["k"], rec["value"]))
        else:
            entries.append(tuple(rec))
    return la.from_brackets(int(data["dim"]), entries,
                            name=data.get("name", ""))


def _load_piaq_model(args) -> pq.PiAQModel:
    if getattr(args, "doubled", None):
        return la.doubled(la.CATALOG[args.doubled]()).as_piaq()
    with open(args.model) as fh:
        data = json.load(fh)
    base = _algebra_from_dict(data) if "brackets" in data else None
    dim = int(data["dim"])
    c = base.c if base is not None else np.zeros((dim, dim, dim))
    return pq.PiAQModel(dim, c, np.asarray(data["I"], float),
                        np.asarray(data["J"], float), int(data["alpha"]),
                        name=data.get("name", ""))


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_pauli(args) -> dict:
    alpha = args.alpha
    s1, s2, s3 = qt.pauli_matrices(alpha)
    return {
        "command": "pauli",
        "inputs": {"alpha": alpha},
        "outputs": {
            "entry_format": "[re, im] with i^2 = alpha",
            "sigma1": _smat_doc(s1),
            "sigma2": _smat_doc(s2),
            "sigma3": _smat_doc(s3),
        },
        "tolerances": {},
    }


def cmd_spinbasis(args) -> dict:
    alpha = args.alpha
    tol = _tolerance(args)
    triples = [_parse_floats(getattr(args, name), 3, name)
               for name in ("j1", "j2", "j3")]
    js = [qt.from_coeffs([0.0, *t], alpha) for t in triples]
    result = sp.spinbasis(sp.IQBasis(*js), tol=tol)
    return {
        "command": "spinbasis",
        "inputs": {"alpha": alpha, "j1": triples[0], "j2": triples[1],
                   "j3": triples[2]},
        "outputs": {
            "change_matrix": _smat_doc(result.matrix),
            "orientation_sign": result.sign,
        },
        "tolerances": {"isotropy": tol},
    }


def cmd_selfdual(args) -> dict:
    alpha = args.alpha
    comps = _parse_floats(args.omega, 6, "--omega")
    g = fd.Metric4(alpha)
    w = fd.TwoForm4(tuple(comps))
    wp, wm = fd.sd_decompose(g, w)
    J = fd.form_to_endo(g, wp)
    return {
        "command": "selfdual",
        "inputs": {"alpha": alpha, "omega": comps,
                   "component_order": ["12", "13", "14", "23", "24", "34"]},
        "outputs": {
            "omega_plus": list(wp.comp),
            "omega_minus": list(wm.comp),
            "endomorphism": _array_doc(J),
            "lambda_sq": _with_exact(fd.lambda_sq(g, wp)),
        },
        "tolerances": {},
    }


def cmd_einstein(args) -> dict:
    tol = _tolerance(args)
    base = _load_algebra(args)
    model = la.doubled(base)
    inputs = {"algebra": args.catalog or args.algebra, "dim": base.dim}
    if args.classify:
        points = classify_einstein(model, tol=tol)
        rows = [{"lambda": _with_exact(l), "mu": _with_exact(m),
                 "epsilon": _with_exact(e)} for l, m, e in points]
        outputs = {"einstein_points": rows, "count": len(rows)}
    elif args.sweep is not None:
        grid = einstein_sweep(res=args.sweep)
        points = [{"lambda": _with_exact(l), "mu": _with_exact(m),
                   "epsilon": _with_exact(e)}
                  for l, m, e in grid["einstein_points"]]
        if args.csv:
            with open(args.csv, "w") as fh:
                fh.write("lambda,mu,ricci_off_diagonal,ricci_anisotropy\n")
                for l, m, o, a in zip(grid["lam"], grid["mu"],
                                      grid["off"], grid["aniso"]):
                    fh.write(f"{l:.17g},{m:.17g},{o:.17g},{a:.17g}\n")
            print(f"sweep grid written to {args.csv}", file=sys.stderr)
        outputs = {
            "resolution": args.sweep,
            "points_scanned": int(grid["lam"].size),
            "einstein_points": points,
        }
        inputs["sweep"] = args.sweep
        if args.csv:
            inputs["csv"] = args.csv
    else:
        if args.lam is None or args.mu is None:
            raise AqlabError("either --lambda/--mu, --classify or --sweep is required")
        fam = MetricFamily(model, args.lam, args.mu)
        eps = fam.einstein_check(tol=tol)
        A, B, C, D = fam.ricci_coefficients()
        inputs.update({"lambda": args.lam, "mu": args.mu})
        outputs = {
            "einstein": eps is not None,
            "epsilon": None if eps is None else _with_exact(eps),
            "ricci_coefficients": {"A": _f(A), "B": _f(B), "C": _f(C),
                                   "D": _f(D)},
        }
    return {"command": "einstein", "inputs": inputs, "outputs": outputs,
            "tolerances": {"einstein": tol}}


def cmd_piaq(args) -> dict:
    tol = _tolerance(args, default=pq.PRED_TOL)
    model = _load_piaq_model(args)
    report = pq.predicate_report(model, args.predicate, lam=args.eigenvalue,
                                 f_name=args.operator, mu=args.mu, tol=tol)
    inputs = {
        "model": args.model or f"doubled:{args.doubled}",
        "dim": model.dim,
        "alpha": model.alpha,
        "predicate": args.predicate,
    }
    if args.operator:
        inputs["operator"] = args.operator
    if args.eigenvalue is not None:
        inputs["eigenvalue"] = args.eigenvalue
    if args.mu is not None:
        inputs["mu"] = args.mu
    return {"command": "piaq", "inputs": inputs, "outputs": report,
            "tolerances": {"predicate": tol}}


def cmd_verify(args) -> dict:
    source = sys.stdin if args.document == "-" else open(args.document)
    with source if source is not sys.stdin else source as fh:
        doc = json.load(fh)
    rerun = _dispatch_doc(doc)
    match = _compare(doc.get("outputs"), rerun.get("outputs"),
                     tol=_tolerance(args))
    return {
        "command": "verify",
        "inputs": {"document": args.document,
                   "verified_command": doc.get("command")},
        "outputs": {"match": match},
        "tolerances": {"comparison": _tolerance(args)},
    }


def _dispatch_doc(doc: dict) -> dict:
    cmd = doc.get("command")
    ins = doc.get("inputs", {})
    ns = argparse.Namespace()
    if cmd == "pauli":
        ns.alpha = int(ins["alpha"])
        return cmd_pauli(ns)
    if cmd == "spinbasis":
        ns.alpha = int(ins["alpha"])
        for key in ("j1", "j2", "j3"):
            vals = ins[key]
            setattr(ns, key, ",".join(str(v) for v in vals))
        return cmd_spinbasis(ns)
    if cmd == "selfdual":
        ns.alpha = int(ins["alpha"])
        ns.omega = ",".join(str(v) for v in ins["omega"])
        return cmd_selfdual(ns)
    if cmd == "einstein":
        name = ins.get("algebra")
        ns.catalog = name if name in la.CATALOG else None
        ns.algebra = None if ns.catalog else name
        ns.lam = ins.get("lambda")
        ns.mu = ins.get("mu")
        ns.sweep = ins.get("sweep")
        ns.classify = ns.sweep is None and ns.lam is None
        ns.csv = None
        return cmd_einstein(ns)
    if cmd == "piaq":
        name = ins.get("model", "")
        if name.startswith("doubled:"):
            ns.doubled, ns.model = name.split(":", 1)[1], None
        else:
            ns.doubled, ns.model = None, name
        ns.predicate = ins["predicate"]
        ns.operator = ins.get("operator")
        ns.eigenvalue = ins.get("eigenvalue")
        ns.mu = ins.get("mu")
        return cmd_piaq(ns)
    raise AqlabError(f"cannot verify documents of command {cmd!r}")


def _compare(a, b, tol: float) -> bool:
    if isinstance(a, dict) and isinstance(b, dict):
        return a.keys() == b.keys() and all(
            _compare(a[k], b[k], tol) for k in a)
    if isinstance(a, (list, tuple)) and isinstance(b, (list, tuple)):
        return len(a) == len(b) and all(
            _compare(x, y, tol) for x, y in zip(a, b))
    if isinstance(a, (int, float)) and isinstance(b, (int, float)) \
            and not isinstance(a, bool) and not isinstance(b, bool):
        return abs(float(a) - float(b)) <= tol * (1.0 + abs(float(a)))
    return a == b


def cmd_check(args) -> dict:
    """Randomized property verification across the modules."""
    rng = np.random.default_rng(args.seed)
    n = args.samples
    results = {}

    worst = 0.0
    for alpha in (-1, 1):
        for _ in range(n):
            p = qt.from_coeffs(rng.normal(size=4), alpha)
            q = qt.from_coeffs(rng.normal(size=4), alpha)
            d1 = abs(qt.qnormsq(qt.qmul(p, q)) - qt.qnormsq(p) * qt.qnormsq(q))
            prod = qt.spin_matrix(qt.qmul(p, q))
            comp = qt.spin_matrix(p) @ qt.spin_matrix(q)
            d2 = (prod - comp).max_abs()
            worst = max(worst, d1 / (1 + abs(qt.qnormsq(p) * qt.qnormsq(q))), d2)
    results["quaternion_norm_and_spin_homomorphism"] = worst

    worst = 0.0
    base = la.doubled(la.su2())
    for _ in range(n):
        lam, mu = rng.uniform(-0.7, 0.7, size=2)
        fam = MetricFamily(base, lam, mu)
        X, Y, Z = rng.normal(size=(3, 6))
        worst = max(worst,
                    float(np.abs(fam.levi_civita(X, Y)
                                 - fam.levi_civita_koszul(X, Y)).max()),
                    float(np.abs(fam.curvature(X, Y, Z)
                                 - fam.curvature_closed(X, Y, Z)).max()),
                    float(np.abs(fam.ricci_closed(X)
                                 - fam.ricci_contracted(X)).max()))
    results["metric_family_oracle_agreement"] = worst

    tol = _tolerance(args)
    passed = all(v <= max(tol, 1e-8) for v in results.values())
    return {
        "command": "check",
        "inputs": {"seed": args.seed, "samples": n},
        "outputs": {"passed": passed, "worst_residuals": results},
        "tolerances": {"bound": max(tol, 1e-8)},
    }


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aqlab",
        description="Numerics for generalized quaternionic geometry.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_alpha(p):
        p.add_argument("--alpha", type=int, required=True, choices=(-1, 1),
                       help="signature parameter")

    p = sub.add_parser("pauli", help="emit the generalized Pauli triple")
    add_alpha(p)
    p.set_defaults(func=cmd_pauli)

    p = sub.add_parser("spinbasis",
                       help="spin basis of an orthonormal imaginary triple")
    add_alpha(p)
    for name in ("j1", "j2", "j3"):
        p.add_argument(f"--{name}", required=True, metavar="B,C,D",
                       help=f"imaginary coefficients of {name}")
    p.set_defaults(func=cmd_spinbasis)

    p = sub.add_parser("selfdual",
                       help="split a two-form and emit its endomorphism")
    add_alpha(p)
    p.add_argument("--omega", required=True, metavar="W12,W13,W14,W23,W24,W34",
                   help="six independent components")
    p.set_defaults(func=cmd_selfdual)

    p = sub.add_parser("einstein",
                       help="metric family verdicts on a doubled group")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--catalog", choices=sorted(la.CATALOG),
                     help="built-in algebra")
    src.add_argument("--algebra", metavar="FILE",
                     help="structure-constant file (JSON)")
    p.add_argument("--lambda", dest="lam", type=float, help="first parameter")
    p.add_argument("--mu", type=float, help="second parameter")
    p.add_argument("--classify", action="store_true",
                   help="solve for all Einstein points")
    p.add_argument("--sweep", type=float, metavar="RES",
                   help="grid resolution for a disc scan")
    p.add_argument("--csv", metavar="PATH", help="write the sweep grid as CSV")
    p.set_defaults(func=cmd_einstein)

    p = sub.add_parser("piaq", help="integrability predicates of a model")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--model", metavar="FILE", help="model file (JSON)")
    src.add_argument("--doubled", choices=sorted(la.CATALOG),
                     help="doubled catalog algebra")
    p.add_argument("--predicate", required=True,
                   choices=sorted(pq.PREDICATES),
                   help="which property to decide")
    p.add_argument("--operator", choices=("I", "J", "K"),
                   help="structure operator for involutivity tests")
    p.add_argument("--eigenvalue", help="eigenvalue, e.g. 1, -1, i, -i")
    p.add_argument("--mu", type=float, help="constant slope parameter")
    p.set_defaults(func=cmd_piaq)

    p = sub.add_parser("verify", help="re-run a result document and compare")
    p.add_argument("document", help="path to a result JSON, or - for stdin")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check", help="randomized property verification")
    p.add_argument("--seed", type=int, default=0, help="RNG seed")
    p.add_argument("--samples", type=int, default=50,
                   help="samples per property")
    p.set_defaults(func=cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = args.func(args)
    except AqlabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(doc)
    if doc["command"] == "verify" and not doc["outputs"]["match"]:
        return 1
    if doc["command"] == "check" and not doc["outputs"]["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
