"""Command-line front end. Reports go to stdout as JSON, diagnostics to stderr.

Exit codes: 0 success, 1 negative answer to a predicate verb (``regular``,
``isometry``) or no rational lift, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import constructions, cyclic, forms, group, lie, structure
from .linalg import Matrix, Poly, format_rational, parse_rational


class InputError(ValueError):
    pass


def _rationals(text: str) -> list:
    try:
        return [parse_rational(t) for t in text.split(",")]
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _read_json(path: str):
    try:
        if path == "-":
            raw = sys.stdin.read()
        else:
            with open(path) as fh:
                raw = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from None


def parse_form(path: str) -> forms.SymmetricForm:
    return forms.form_from_json(_read_json(path))


def parse_matrix(obj) -> Matrix:
    if isinstance(obj, dict):
        obj = obj.get("matrix")
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise InputError("matrix must be a non-empty list of rows")
    try:
        return Matrix([[parse_rational(x) for x in r] for r in obj])
    except ValueError as exc:
        raise InputError(f"bad matrix: {exc}") from None


def _matrix(m: Matrix) -> list:
    return m.to_strings()


def _vector(v) -> list:
    return [format_rational(x) for x in v]


def _cyclic_from_args(args) -> cyclic.CyclicData:
    if args.form:
        f = parse_form(args.form)
        data = cyclic.reichstein(f.dim, f.degree)
        if f != data.form:
            raise InputError("chi is only available for Reichstein forms (use `cyclic` to build one)")
        return data
    if args.n is None or args.d is None:
        raise InputError("give --form or both --n and --d")
    return cyclic.reichstein(args.n, args.d)


def _aut(text: str, n: int | None) -> group.CenterAut:
    vals = _rationals(text)
    if n is not None and len(vals) != n - 1:
        raise InputError(f"expected {n - 1} coordinates, got {len(vals)}")
    try:
        return group.CenterAut(vals)
    except ValueError as exc:
        raise InputError(str(exc)) from None


# ----------------------------------------------------------------- verbs


def cmd_eval(args):
    f = parse_form(args.form)
    vecs = [_rationals(part) for part in args.vectors.split(";")]
    try:
        return {"value": format_rational(forms.evaluate(f, vecs))}, 0
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_polarize(args):
    if args.inverse:
        return forms.poly_to_json(forms.associated_poly(parse_form(args.input))), 0
    p = forms.poly_from_json(_read_json(args.input))
    try:
        return forms.form_to_json(forms.polarize(p)), 0
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_regular(args):
    f = parse_form(args.form)
    rad = structure.radical(f)
    report = {"regular": not rad, "radical": [_vector(v) for v in rad]}
    if args.two_regular:
        w = structure.two_regular_falsifier(f, budget=args.budget)
        report["two_regular_witness"] = None if w is None else _vector(w)
    return report, 0 if not rad else 1


def cmd_center(args):
    f = parse_form(args.form)
    c = structure.center(f)
    found = cyclic.find_cyclic_element(c)
    return {
        "dim_center": c.dim,
        "regular": c.regular,
        "maximal": structure.is_maximal_center(c),
        "basis": [_matrix(m) for m in c],
        "cyclic_element": None
        if found is None
        else {"psi": _matrix(found[0]), "vector": _vector(found[1])},
    }, 0


def cmd_decompose(args):
    f = parse_form(args.form)
    if not structure.is_regular(f):
        raise InputError("decompose requires a regular form")
    dec = structure.decompose(f)
    return {
        "indecomposable_over_Q": dec.indecomposable,
        "components": [
            {"form": forms.form_to_json(c.form), "embedding": _matrix(c.embedding)}
            for c in dec.components
        ],
        "basis": _matrix(dec.basis),
    }, 0


def cmd_lie(args):
    f = parse_form(args.form)
    b = lie.lie_algebra(f)
    series = lie.derived_series(b)
    return {
        "dim_lie": b.dim,
        "basis": [_matrix(m) for m in b],
        "derived_series": series,
        "solvable": series[-1] == 0,
    }, 0


def cmd_cyclic(args):
    try:
        data = cyclic.reichstein(args.n, args.d)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return forms.form_to_json(data.form), 0


def cmd_witt(args):
    try:
        data = cyclic.reichstein(args.n, args.d)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    report = cyclic.witt_check(data)
    report["grading"] = cyclic.verify_grading(data)
    return report, 0


def cmd_group_mul(args):
    a, b = _aut(args.a, args.n), _aut(args.b, args.n)
    if a.n != b.n:
        raise InputError("a and b have different lengths")
    return {"result": group.group_mul(a, b).to_strings()}, 0


def cmd_group_inv(args):
    return {"result": group.group_inv(_aut(args.a, args.n)).to_strings()}, 0


def cmd_chi(args):
    data = _cyclic_from_args(args)
    sigma = parse_matrix(_read_json(args.sigma))
    if sigma.shape != (data.n, data.n):
        raise InputError(f"sigma must be {data.n}x{data.n}")
    try:
        return {"a": group.chi(sigma, data).to_strings()}, 0
    except group.NotIsometry as exc:
        raise InputError(str(exc)) from None


def cmd_lift(args):
    a = _aut(args.a, args.n)
    try:
        sigma = group.lift(a, args.n, args.d)
    except group.NoRationalLift as exc:
        return {"sigma": None, "error": "NoRationalLift", "reason": str(exc)}, 1
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return {"sigma": _matrix(sigma)}, 0


def cmd_isometry(args):
    f = parse_form(args.form)
    sigma = parse_matrix(_read_json(args.sigma))
    ok = forms.is_isometry(f, sigma)
    return {"isometry": ok}, 0 if ok else 1


def cmd_construct(args):
    try:
        if args.family == "trace-matrix":
            f = constructions.trace_form_matrix_algebra(args.m, args.d)
        elif args.family == "trace-field":
            p = Poly(_rationals(args.minpoly))
            if p.lc != 1:
                raise InputError(
                    "minpoly must be monic with coefficients in ascending degree order, "
                    "e.g. --minpoly=-2,0,0,1 for x^3 - 2"
                )
            spec = constructions.NumberFieldSpec(p, tuple(_rationals(args.b)))
            f = constructions.trace_form_number_field(spec, args.d)
        else:
            f = constructions.diagonal_form(_rationals(args.coeffs), args.d)
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return forms.form_to_json(f), 0


# ----------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hdforms", description="Exact analysis of symmetric d-linear forms.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("eval", help="evaluate a form on d vectors")
    s.add_argument("--form", required=True)
    s.add_argument("--vectors", required=True, help='";"-separated vectors, e.g. "1,0;0,1;1,1"')
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("polarize", help="polynomial JSON -> form JSON (or back with --inverse)")
    s.add_argument("input", help="polynomial JSON (form JSON with --inverse); - for stdin")
    s.add_argument("--inverse", action="store_true")
    s.set_defaults(func=cmd_polarize)

    s = sub.add_parser("regular", help="radical and regularity (exit 1 if irregular)")
    s.add_argument("--form", required=True)
    s.add_argument("--two-regular", action="store_true", help="also search for a 2-regularity witness")
    s.add_argument("--budget", type=int, default=2000)
    s.set_defaults(func=cmd_regular)

    for name, func in (("center", cmd_center), ("decompose", cmd_decompose), ("lie", cmd_lie)):
        s = sub.add_parser(name)
        s.add_argument("--form", required=True)
        s.set_defaults(func=func)

    for name, func in (("cyclic", cmd_cyclic), ("witt", cmd_witt)):
        s = sub.add_parser(name)
        s.add_argument("--n", type=int, required=True)
        s.add_argument("--d", type=int, required=True)
        s.set_defaults(func=func)

    def group_args(s, with_b):
        s.add_argument("--n", type=int)
        s.add_argument("--a", required=True)
        if with_b:
            s.add_argument("--b", required=True)

    s = sub.add_parser("group-mul")
    group_args(s, True)
    s.set_defaults(func=cmd_group_mul)
    s = sub.add_parser("group-inv")
    group_args(s, False)
    s.set_defaults(func=cmd_group_inv)
    g = sub.add_parser("group", help="group mul | group inv")
    gsub = g.add_subparsers(dest="op", required=True)
    s = gsub.add_parser("mul")
    group_args(s, True)
    s.set_defaults(func=cmd_group_mul)
    s = gsub.add_parser("inv")
    group_args(s, False)
    s.set_defaults(func=cmd_group_inv)

    s = sub.add_parser("chi")
    s.add_argument("--form")
    s.add_argument("--n", type=int)
    s.add_argument("--d", type=int)
    s.add_argument("--sigma", required=True)
    s.set_defaults(func=cmd_chi)

    s = sub.add_parser("lift")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--a", required=True)
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("isometry", help="exit 0 if sigma preserves the form, else 1")
    s.add_argument("--form", required=True)
    s.add_argument("--sigma", required=True)
    s.set_defaults(func=cmd_isometry)

    c = sub.add_parser("construct")
    csub = c.add_subparsers(dest="family", required=True)
    s = csub.add_parser("trace-matrix")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s = csub.add_parser("trace-field")
    s.add_argument("--minpoly", required=True, help="ascending coefficients, constant term first, monic (use --minpoly=-2,0,0,1)")
    s.add_argument("--b", required=True)
    s.add_argument("--d", type=int, required=True)
    s = csub.add_parser("diagonal")
    s.add_argument("--coeffs", required=True)
    s.add_argument("--d", type=int, required=True)
    c.set_defaults(func=cmd_construct)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, code = args.func(args)
    except (InputError, forms.FormParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(json.dumps(report) + "\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
