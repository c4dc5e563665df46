"""Command line front end.

Exit codes: 0 success, 1 a check or verdict failed, 2 usage, parse or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .algebra import AlgebraError, from_matrix, pauli_spec, to_matrix
from .config import get_tol, rel_diff
from .expr import ExprError, eval_expr, format_value, parse, pretty, evaluate, parse_matrix, parse_vec4
from .groups import DElement, DGroup, StarDElement, StarDGroup, TElement, TGroup, apply_T
from .quasiring import QuasiringError, SpanNotClosedError, reconstruct, star_counterexamples
from .report import dumps, to_jsonable
from .spacetime import lorentz_from_sl2, mat_to_vec, metric_residual, mink_norm, vec_to_mat
from .verify import SUITES, run_suite

DEFAULT_GENERATORS = {"D": 8, "T": 20, "starD": 20}


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    p.add_argument("--trials", type=int, default=1000, help="random trials per check (default 1000)")
    p.add_argument("--tol", type=float, default=None, help="relative tolerance (default 1e-9)")
    p.add_argument("--output", default=None, help="write the result here instead of stdout")
    p.add_argument("--format", choices=("json", "text"), default="json")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="semidirect", description="Semidirect-product groups over associative algebras."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run a randomized verification suite")
    p.add_argument("suite", choices=list(SUITES) + ["all"])

    p = sub.add_parser("lorentz", parents=[common], help="Lorentz matrix of an SL(2,C) matrix")
    p.add_argument("matrix", help="e.g. '[[1,0],[0,1]]'")

    p = sub.add_parser("reconstruct", parents=[common], help="rebuild the algebra from Ad-endomorphisms")
    p.add_argument("group", choices=("D", "T", "starD"))
    src = p.add_mutually_exclusive_group()
    src.add_argument("--generators", metavar="FILE", help="JSON list of elements or expressions")
    src.add_argument("--random", type=int, metavar="K", help="number of random generators")
    p.add_argument("--sl2", action="store_true", help="draw determinant-one generators")

    p = sub.add_parser("eval", parents=[common], help="evaluate a group-element expression")
    p.add_argument("expr")

    p = sub.add_parser("transform", parents=[common], help="act on a four-vector")
    p.add_argument("expr", help="element of D or T~ over the Pauli algebra")
    p.add_argument("vec", help="four-vector literal '(v0, v1, v2, v3)'")
    return parser


# ---------------------------------------------------------------- commands


def cmd_verify(args):
    report = run_suite(args.suite, seed=args.seed, trials=args.trials, tol=args.tol)
    text = report.to_json() if args.format == "json" else report.to_text()
    return text, 0 if report.passed else 1


def cmd_lorentz(args):
    tol = get_tol(args.tol)
    M = parse_matrix(args.matrix)
    L = lorentz_from_sl2(M, tol)
    res = metric_residual(L)
    out = {"input": M, "lorentz": L, "metric_residual": res, "det": float(np.linalg.det(L))}
    if args.format == "json":
        return dumps(to_jsonable(out)), 0
    rows = "\n".join("  ".join(f"{x: .12g}" for x in row) for row in L)
    return f"{rows}\nmetric residual {res:.3e}", 0


def _matrix_json(m) -> np.ndarray:
    def entry(z):
        if isinstance(z, (list, tuple)):
            if len(z) != 2:
                raise UsageError(f"complex entries are [re, im], got {z!r}")
            return complex(z[0], z[1])
        return complex(z)

    try:
        return np.array([[entry(z) for z in row] for row in m], dtype=complex)
    except (TypeError, ValueError) as e:
        raise UsageError(f"bad matrix {m!r}: {e}") from None


def _generator(item, group: str):
    spec = pauli_spec()
    if isinstance(item, str):
        x = eval_expr(item)
    elif isinstance(item, dict) and item.get("type") in ("D", "T", "starD"):
        el = {k: from_matrix(_matrix_json(v), spec) for k, v in item.items() if k in ("B", "L", "R", "H", "G")}
        if item["type"] == "D":
            x = DElement(el["B"], el["L"])
        elif item["type"] == "T":
            x = TElement(el["B"], el["L"], el["R"])
        else:
            x = StarDElement(el["H"], el["G"], bool(item.get("hermitian", True)))
    else:
        raise UsageError(f"cannot read generator {item!r}")
    if group == "D" and isinstance(x, DElement):
        return x
    if group == "T":
        if isinstance(x, DElement):
            return x.to_T()
        if isinstance(x, TElement):
            return x
    if group == "starD":
        if isinstance(x, StarDElement):
            return x
        if isinstance(x, TElement):
            shaped = rel_diff(x.R.coords, x.L.star().inv().coords) <= get_tol()
            H = to_matrix(x.B)
            if shaped and rel_diff(H, H.conj().T) <= get_tol():
                return StarDElement(x.B, x.L)
            raise UsageError("starD generators need the shape T(H, G, G*^-1) with Hermitian H")
    raise UsageError(f"generator of type {type(x).__name__} does not belong to {group}")


def _load_generators(path: str, group: str) -> list:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read generators from {path}: {e}") from None
    if not isinstance(data, list) or not data:
        raise UsageError("generator file must hold a non-empty JSON list")
    return [_generator(item, group) for item in data]


def cmd_reconstruct(args):
    tol = get_tol(args.tol)
    spec = pauli_spec()
    rng = np.random.default_rng(args.seed)
    if args.group == "D":
        grp = DGroup(spec, "SL" if args.sl2 else "GL")
    elif args.group == "T":
        grp = TGroup(spec)
    else:
        grp = StarDGroup(spec)
    if args.generators:
        gens = _load_generators(args.generators, args.group)
    else:
        k = args.random if args.random is not None else DEFAULT_GENERATORS[args.group]
        if k < 1:
            raise UsageError("--random needs at least one generator")
        if args.group == "T" and args.sl2:
            gens = [grp.from_unit((DGroup(spec, "SL").random_unit(rng), DGroup(spec, "SL").random_unit(rng))) for _ in range(k)]
        elif args.group == "T":
            gens = [grp.random(rng) for _ in range(k)]
        elif args.group == "starD" and args.sl2:
            gens = [grp.from_unit(DGroup(spec, "SL").random_unit(rng)) for _ in range(k)]
        else:
            gens = [grp.from_unit(grp.random_unit(rng)) for _ in range(k)]

    out = {"group": grp.name, "generators": len(gens), "tol": tol}
    try:
        try:
            rec = reconstruct(grp, gens, spec if args.group == "D" else None, tol)
        except SpanNotClosedError:
            raise
        except QuasiringError:
            # generators too few to express the Pauli basis: report the span, no match
            rec = reconstruct(grp, gens, None, tol)
        out.update({"closed": True, "span_dimension": rec.dim, "closure_residual": rec.closure_residual})
    except SpanNotClosedError as e:
        rec = None
        out.update({"closed": False, "closure_residual": e.residual})
    if args.group == "starD":
        # the expected outcome here is negative: report the witnesses either way
        witnesses = star_counterexamples(tol)
        out["witnesses"] = [c.to_dict() for c in witnesses.checks]
        ok = witnesses.passed
        out["verdict"] = (
            "l -> [l] is neither additive nor homogeneous; the Pauli algebra is not recovered"
            if ok
            else "expected failure witnesses were not confirmed"
        )
    elif rec is None:
        ok = False
        out["verdict"] = "span is not closed under composition"
    elif args.group == "D":
        out["structure_deviation"] = rec.deviation
        ok = rec.dim == spec.N and rec.matches_target
        out["verdict"] = (
            "span is isomorphic to the Pauli algebra" if ok else "span does not reproduce the Pauli algebra"
        )
    else:
        ok = rec.dim == spec.N**2
        out["verdict"] = f"span dimension {rec.dim}" + (" = 4^2, the algebra of A (x) A" if ok else ", expected 16")
    return _emit(out, args), 0 if ok else 1


def _emit(out: dict, args) -> str:
    if args.format == "json":
        return dumps(to_jsonable(out))
    lines = []
    for k, v in out.items():
        if k == "witnesses":
            for w in v:
                lines.append(f"  {'PASS' if w['passed'] else 'FAIL'}  {w['name']}")
        else:
            lines.append(f"{k}: {v}")
    return "\n".join(lines)


def cmd_eval(args):
    tree = parse(args.expr)
    x = evaluate(tree)
    kind = "D" if isinstance(x, DElement) else "T" if isinstance(x, TElement) else "algebra"
    if args.format == "text":
        return format_value(x), 0
    out = {"expression": pretty(tree), "kind": kind, "value": x, "text": format_value(x)}
    return dumps(to_jsonable(out)), 0


def _is_spinor(x: TElement, tol: float) -> bool:
    H = to_matrix(x.B)
    L = to_matrix(x.L)
    return (
        rel_diff(H, H.conj().T) <= tol
        and rel_diff(x.R.coords, x.L.star().inv().coords) <= tol
        and abs(np.linalg.det(L) - 1) <= tol * max(1.0, float(np.linalg.norm(L)) ** 2)
    )


def format_vec4(v) -> str:
    v = np.asarray(v)
    if np.iscomplexobj(v) and np.any(v.imag):
        from .expr import format_complex

        return "(" + ", ".join(format_complex(z) for z in v) + ")"
    return "(" + ", ".join(repr(float(z) + 0.0) for z in np.real(v)) + ")"


def cmd_transform(args):
    tol = get_tol(args.tol)
    x = eval_expr(args.expr)
    if isinstance(x, DElement):
        x = x.to_T()
    if not isinstance(x, TElement):
        raise UsageError("transform needs a group element, not an algebra element")
    v = parse_vec4(args.vec)
    spec = pauli_spec()
    spinor = _is_spinor(x, tol)
    if spinor and np.iscomplexobj(v):
        raise UsageError("spinor Poincare elements act on real four-vectors only")
    image = apply_T(x, from_matrix(vec_to_mat(v), spec))
    w = mat_to_vec(to_matrix(image))
    h = mat_to_vec(to_matrix(x.B))
    if spinor:
        w, h = w.real, h.real
    # translations preserve intervals between points; compare the image of v relative to the image of 0
    scale = max(1.0, float(np.linalg.norm(v)) ** 2, float(np.linalg.norm(w - h)) ** 2)
    residual = abs(mink_norm(w - h) - mink_norm(v)) / scale
    out = {
        "kind": "spinor" if spinor else "T",
        "input": v,
        "output": w,
        "translation": h,
        "interval_residual": residual,
        "interval_preserved": bool(residual <= tol),
    }
    if args.format == "json":
        return dumps(to_jsonable(out)), 0
    return f"{format_vec4(w)}\ninterval residual {residual:.3e}", 0


COMMANDS = {
    "verify": cmd_verify,
    "lorentz": cmd_lorentz,
    "reconstruct": cmd_reconstruct,
    "eval": cmd_eval,
    "transform": cmd_transform,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.tol is not None and not args.tol > 0:
            raise UsageError("--tol must be positive")
        if args.trials < 1:
            raise UsageError("--trials must be at least 1")
        text, code = COMMANDS[args.command](args)
    except (UsageError, ExprError, AlgebraError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
