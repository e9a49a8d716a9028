"""Command line interface: ``conepoly {signature,gram,sample,transform,verify}``.

Exit codes: 0 success, 1 usage or domain error, 2 verification disagreement.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .areaform import InertiaError, gram, inertia, square_norm
from .curvature import (
    AngleDomainError,
    AngleSyntaxError,
    CurvatureData,
    MixedAngleError,
    closed_form_signature,
    epsilon,
    p_of,
    parse_curvature,
    q_of,
)
from .polyspace import MembershipError, random_element, realize, standard_basis
from .transforms import cut_glue, recursive_signature, reverse

EXIT_OK, EXIT_USAGE, EXIT_DISAGREE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 by default, which is reserved for disagreement
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- formatting ---------------------------------------------------------------

def _num(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"non-finite value {x} in JSON output")
    return format(x, ".17g")


def to_json(obj, indent: int = 0) -> str:
    """JSON with insertion-ordered keys, 17 significant digits, complex as [re, im]."""
    pad, inner = "  " * indent, "  " * (indent + 1)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _num(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return f"[{_num(obj.real)}, {_num(obj.imag)}]"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{to_json(str(k))}: {to_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (list, tuple, dict, np.ndarray)) for v in obj):
            return "[" + ", ".join(to_json(v) for v in obj) + "]"
        items = [inner + to_json(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def fmt_complex(z: complex) -> str:
    re, im = float(z.real) + 0.0, float(z.imag) + 0.0
    if im == 0:
        return f"{re:.12g}"
    if re == 0:
        return f"{im:.12g}i"
    return f"{re:.12g}{im:+.12g}i"


def fmt_vector(z) -> str:
    return "(" + ", ".join(fmt_complex(c) for c in z) + ")"


def parse_complex_list(text: str) -> np.ndarray:
    out = []
    for tok in text.split(","):
        t = tok.strip().replace(" ", "").replace("i", "j")
        try:
            out.append(complex(t))
        except ValueError:
            raise UsageError(f"bad complex number {tok.strip()!r}") from None
    return np.asarray(out, dtype=complex)


# -- shared argument handling -------------------------------------------------

def _kappa(args) -> CurvatureData:
    try:
        return parse_curvature(args.kappa)
    except (AngleSyntaxError, AngleDomainError, MixedAngleError) as exc:
        kind = {AngleSyntaxError: "syntax error", AngleDomainError: "domain error",
                MixedAngleError: "mixed representation"}[type(exc)]
        raise UsageError(f"{kind}: {exc}") from None


def _element(args, kappa: CurvatureData):
    if args.coeffs is not None:
        c = parse_complex_list(args.coeffs)
        if len(c) != kappa.n - 1:
            raise UsageError(f"--coeffs needs {kappa.n - 1} values for n={kappa.n}, got {len(c)}")
        return standard_basis(kappa).combine(c)
    return random_element(kappa, args.seed)


# -- commands -----------------------------------------------------------------

def signature_report(kappa: CurvatureData, method: str = "all", tol: float | None = None,
                     with_gram: bool = False) -> dict:
    report = {
        "kappa_tokens": kappa.tokens,
        "n": kappa.n,
        "dim": kappa.n - 1,
        "epsilon": epsilon(kappa),
        "q": q_of(kappa),
        "p": p_of(kappa),
        "numeric": None,
        "recursive": None,
        "closed": None,
        "agree": None,
    }
    g = None
    if method in ("all", "numeric") or with_gram:
        basis = standard_basis(kappa)
        g = gram(kappa, basis)
    if method in ("all", "numeric"):
        inert = inertia(g, tol)
        report["numeric"] = {"P": inert.positive, "N": inert.negative, "Z": inert.zero,
                             "tolerance": inert.tolerance_used,
                             "basis_condition": basis.condition()}
    if method in ("all", "recursive"):
        P, N = recursive_signature(kappa)
        report["recursive"] = {"P": P, "N": N}
    if method in ("all", "closed"):
        P, N = closed_form_signature(kappa)
        report["closed"] = {"P": P, "N": N}
    if method == "all":
        num, rec, cl = report["numeric"], report["recursive"], report["closed"]
        report["agree"] = ((num["P"], num["N"]) == (cl["P"], cl["N"]) == (rec["P"], rec["N"])
                           and num["Z"] == report["epsilon"])
    if with_gram:
        report["gram"] = [[complex(v) for v in row] for row in g.entries]
    return report


def cmd_signature(args) -> int:
    kappa = _kappa(args)
    report = signature_report(kappa, args.method, args.tol, args.gram)
    if args.json:
        print(to_json(report))
    else:
        print(f"kappa = {kappa}  (n = {kappa.n}, dim = {kappa.n - 1})")
        print(f"epsilon = {report['epsilon']}, q = {report['q']}, p = {report['p']}")
        if report["closed"]:
            print("closed form : (P, N) = ({P}, {N})".format(**report["closed"]))
        if report["numeric"]:
            num = report["numeric"]
            print(f"numeric     : (P, N, Z) = ({num['P']}, {num['N']}, {num['Z']})"
                  f"  tol = {num['tolerance']:.3g}, cond = {num['basis_condition']:.3g}")
        if report["recursive"]:
            print("recursive   : (P, N) = ({P}, {N})".format(**report["recursive"]))
        if report["agree"] is not None:
            print("methods agree" if report["agree"] else "METHODS DISAGREE")
        if args.gram:
            for row in report["gram"]:
                print("  " + "  ".join(fmt_complex(v) for v in row))
    return EXIT_DISAGREE if report["agree"] is False else EXIT_OK


def cmd_gram(args) -> int:
    kappa = _kappa(args)
    basis = standard_basis(kappa)
    g = gram(kappa, basis)
    inert = inertia(g, args.tol)
    if args.json:
        print(to_json({
            "kappa_tokens": kappa.tokens,
            "basis": "standard",
            "basis_condition": basis.condition(),
            "gram": [[complex(v) for v in row] for row in g.entries],
            "inertia": {"P": inert.positive, "N": inert.negative, "Z": inert.zero,
                        "tolerance": inert.tolerance_used},
        }))
    else:
        for row in g.entries:
            print("  ".join(fmt_complex(v) for v in row))
        print(f"inertia (P, N, Z) = ({inert.positive}, {inert.negative}, {inert.zero})")
    return EXIT_OK


def write_svg(path: Path, z) -> None:
    """Closed polyline; even vertices (cone points) filled, odd vertices open."""
    pts = np.column_stack([z.real, -z.imag]) + 0.0  # SVG y axis points down
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    span = np.maximum(hi - lo, 1e-9)
    margin = 0.05 * span
    x0, y0 = lo - margin
    w, h = span + 2 * margin
    r = 0.01 * max(w, h)
    stroke = 0.004 * max(w, h)
    poly = " ".join(f"{x:.9g},{y:.9g}" for x, y in pts)
    marks = []
    for k, (x, y) in enumerate(pts):
        # k is 0-based, so k odd is an even (1-based) vertex z_{k+1}
        fill = "black" if k % 2 else "white"
        marks.append(f'  <circle cx="{x:.9g}" cy="{y:.9g}" r="{r:.6g}" fill="{fill}" '
                     f'stroke="black" stroke-width="{stroke:.6g}"/>')
    svg = "\n".join([
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{x0:.9g} {y0:.9g} {w:.9g} {h:.9g}">',
        f'  <polygon points="{poly}" fill="none" stroke="steelblue" stroke-width="{stroke:.6g}"/>',
        *marks,
        "</svg>",
        "",
    ])
    try:
        path.write_text(svg)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def cmd_sample(args) -> int:
    kappa = _kappa(args)
    z = _element(args, kappa)
    real = realize(z)
    if args.json:
        print(to_json({
            "kappa_tokens": kappa.tokens,
            "coords": list(z.coords),
            "square_norm": square_norm(z),
            "simple": real.simple,
        }))
    else:
        print(f"kappa = {kappa}")
        print(f"z = {fmt_vector(z.coords)}")
        print(f"square-norm = {square_norm(z):.12g}")
        print(f"simple = {str(real.simple).lower()}")
    if args.svg:
        write_svg(Path(args.svg), z.coords)
    return EXIT_OK


def cmd_transform(args) -> int:
    kappa = _kappa(args)
    z = _element(args, kappa)
    try:
        if args.op == "cut-glue":
            if args.index is None:
                raise UsageError("--op cut-glue needs --index")
            out = cut_glue(kappa, args.index, z)
        else:
            out = reverse(kappa, z)
    except IndexError as exc:
        raise UsageError(str(exc)) from None
    except MembershipError as exc:
        raise UsageError(str(exc)) from None
    before, after = square_norm(z), square_norm(out)
    if args.json:
        print(to_json({
            "op": args.op,
            "source_kappa": kappa.tokens,
            "target_kappa": out.kappa.tokens,
            "input": list(z.coords),
            "output": list(out.coords),
            "input_square_norm": before,
            "output_square_norm": after,
        }))
    else:
        print(f"input  = {fmt_vector(z.coords)}  in P{kappa}")
        print(f"output = {fmt_vector(out.coords)}  in P{out.kappa}")
        print(f"target kappa = {','.join(out.kappa.tokens)}")
        print(f"square-norm: input = {before:.12g}, output = {after:.12g}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_suite

    results = run_suite(args.n_max, args.trials, args.seed, fault=args.inject_fault)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name:<{width}}  trials={r.trials}")
        if not r.passed:
            smallest = min(r.failures, key=lambda k: k.n)
            print(f"      {len(r.failures)} failure(s); smallest kappa = {','.join(smallest.tokens)}")
    ok = all(r.passed for r in results)
    print("all checks passed" if ok else "VERIFICATION FAILED")
    return EXIT_OK if ok else EXIT_DISAGREE


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="conepoly", description="Signature of the area form on cone-angle polygon spaces.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def kappa_arg(p):
        p.add_argument("--kappa", required=True,
                       help="comma-separated angles: a/b (times pi), a (times pi) or x r (radians)")

    def element_args(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--coeffs", help="complex coefficients on the standard basis, e.g. 1+0i,-2")
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("signature", help="signature of the area form by three methods")
    kappa_arg(p)
    p.add_argument("--method", choices=["all", "closed", "numeric", "recursive"], default="all")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--json", action="store_true")
    p.add_argument("--gram", action="store_true", help="include the Gram matrix")
    p.set_defaults(func=cmd_signature)

    p = sub.add_parser("gram", help="Gram matrix on the standard basis")
    kappa_arg(p)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("sample", help="an element of P(kappa) and its square-norm")
    kappa_arg(p)
    element_args(p)
    p.add_argument("--svg", help="write the polygon as SVG to this path")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("transform", help="apply cut-glue or reversal")
    kappa_arg(p)
    element_args(p)
    p.add_argument("--op", choices=["cut-glue", "reverse"], required=True)
    p.add_argument("--index", type=int)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("verify", help="randomized self-verification sweep")
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InertiaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
