"""Command-line front end. Every subcommand prints one JSON document.

Exit codes: 0 success, 2 invalid input, 3 outside the supported scope,
4 internal inconsistency, 64 unknown subcommand.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .errors import FanoError

EXIT_OK, EXIT_INVALID, EXIT_SCOPE, EXIT_INTERNAL, EXIT_USAGE = 0, 2, 3, 4, 64

SCOPE_CODES = {"OUT_OF_SCOPE_BASKET", "UNSUPPORTED_CONE", "UNRECOGNIZED_BLOCK"}
INTERNAL_CODES = {"NON_INTEGRAL", "INCONSISTENT", "NO_POWER"}


def _q(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _load(source: str):
    """Inline JSON, a path, or '-' for stdin."""
    if source == "-":
        text = sys.stdin.read()
    elif source.lstrip().startswith(("{", "[")):
        text = source
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise FanoError("BAD_INPUT", f"cannot read {source}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FanoError("BAD_INPUT", f"invalid JSON: {exc}") from exc


def _polygon(source: str):
    from .polygon import validate

    obj = _load(source)
    verts = obj.get("vertices") if isinstance(obj, dict) else obj
    try:
        pts = [(int(x), int(y)) for x, y in verts]
    except (TypeError, ValueError) as exc:
        raise FanoError("BAD_INPUT", "expected {'vertices': [[x, y], ...]}") from exc
    return validate(pts)


def _sequence(source: str) -> list[Fraction]:
    obj = _load(source)
    seq = obj.get("coefficients", obj.get("coeffs")) if isinstance(obj, dict) else obj
    try:
        return [Fraction(str(x)) for x in seq]
    except (TypeError, ValueError) as exc:
        raise FanoError("BAD_INPUT", "expected {'coefficients': [...]} or a list") from exc


def _point(text: str):
    try:
        x, y = (int(t) for t in text.split(","))
    except ValueError as exc:
        raise FanoError("BAD_INPUT", f"expected 'x,y', got {text!r}") from exc
    return (x, y)


def _values(text: str | None) -> dict:
    out = {}
    for item in filter(None, (text or "").split(";")):
        name, _, val = item.partition("=")
        try:
            out[name.strip()] = Fraction(val.strip())
        except ValueError as exc:
            raise FanoError("BAD_INPUT", f"bad parameter value {item!r}") from exc
    return out


# --- subcommands ---------------------------------------------------------------

def cmd_validate(args):
    P = _polygon(args.polygon)
    return {"valid": True, **P.to_json()}


def cmd_normal_form(args):
    from .polygon import normal_form

    return normal_form(_polygon(args.polygon)).to_json()


def cmd_edges(args):
    from .cones import decompose_edge

    out = []
    for E in _polygon(args.polygon).edges:
        dec = decompose_edge(E)
        out.append({
            "tail": list(E.tail),
            "head": list(E.head),
            "normal": list(E.normal),
            "height": E.height,
            "width": E.width,
            "t_cones": dec.k,
            "r_cone": None if dec.r_cone is None else {"r": dec.r_cone.r, "a": dec.r_cone.a, "width": dec.r_cone.width},
        })
    return {"edges": out}


def cmd_content(args):
    from .cones import singularity_content

    return singularity_content(_polygon(args.polygon)).to_json()


def cmd_degree(args):
    from .cones import singularity_content
    from .hj import degree_via_content
    from .polygon import anticanonical_degree

    P = _polygon(args.polygon)
    by_vertices = anticanonical_degree(P)
    by_content = degree_via_content(singularity_content(P))
    return {"degree": _q(by_vertices), "via_content": _q(by_content), "agree": by_vertices == by_content}


def cmd_mutate(args):
    from .mutation import MutationData, mutate_polygon

    P = _polygon(args.polygon)
    data = MutationData(_point(args.u), _point(args.F))
    res = mutate_polygon(P, data)
    return {"mutation": data.to_json(), "raw": res.raw.to_json(), "normal_form": res.normal.to_json()}


def cmd_orbit(args):
    from .mutation import mutation_graph

    max_nodes = args.max_nodes or int(os.environ.get("FANOLAB_MAX_NODES", 10000))
    return mutation_graph(_polygon(args.polygon), max_nodes=max_nodes, max_depth=args.max_depth).to_json()


def cmd_mmlp(args):
    from .laurent import standard_mmlp

    res = standard_mmlp(_polygon(args.polygon), args.edge_mode, args.closure_depth)
    doc = {
        "polynomial": res.f.to_json(),
        "free_params": [str(p) for p in res.free_params],
        "stabilized": res.stabilized,
        "stable_depth": res.stable_depth,
        "depth_explored": res.depth_explored,
    }
    if args.values:
        doc["evaluated"] = res.f.evaluate(_param_values(res.f, args.values)).to_json()
    return doc


def _param_values(f, text: str) -> dict:
    given = _values(text)
    lookup = {str(p): p for p in f.free_params()}
    unknown = set(given) - set(lookup)
    if unknown:
        raise FanoError("BAD_INPUT", f"unknown parameters {sorted(unknown)}; free: {sorted(lookup)}")
    return {lookup[k]: v for k, v in given.items()}


def cmd_genus(args):
    from .genus import genus_report

    return genus_report(_polygon(args.polygon)).to_json()


def cmd_monodromy(args):
    from .monodromy import assemble_monodromy

    return assemble_monodromy(_polygon(args.polygon)).to_json()


def _matrix(source: str):
    from .monodromy import MonodromyMatrix, assemble_monodromy

    obj = _load(source)
    if isinstance(obj, dict) and "matrix" in obj:
        return MonodromyMatrix.from_json(obj)
    return assemble_monodromy(_polygon(source))


def cmd_recover(args):
    from .monodromy import recover_content

    return recover_content(_matrix(args.matrix)).to_json()


def cmd_eigenvalues(args):
    from .monodromy import eigenvalue_multiset

    return eigenvalue_multiset(_matrix(args.matrix))


def cmd_period(args):
    from .laurent import LaurentPolynomial
    from .periods import period_sequence

    f = LaurentPolynomial.from_json(_load(args.polynomial))
    if f.is_symbolic():
        if not args.values:
            raise FanoError("BAD_INPUT", f"symbolic polynomial needs --values for {[str(p) for p in f.free_params()]}")
        f = f.evaluate(_param_values(f, args.values))
    return {"N": args.N, "coefficients": [_q(c) for c in period_sequence(f, args.N)]}


def cmd_apply_op(args):
    from .periods import DifferentialOperator, apply_operator

    L = DifferentialOperator.from_json(_load(args.operator))
    res = apply_operator(L, _sequence(args.sequence))
    return {"residual": [_q(c) for c in res], "vanishes": not any(res)}


def cmd_guess_op(args):
    from .periods import guess_operator

    L = guess_operator(_sequence(args.sequence), args.max_order, args.max_degree)
    return {"operator": None if L is None else {**L.to_json(), "degree": L.degree}}


def cmd_predict(args):
    from .periods import predict

    return predict(_polygon(args.polygon)).to_json()


COMMANDS = {
    "validate": (cmd_validate, "check a polygon and print its vertices"),
    "edges": (cmd_edges, "edge heights, widths and cone decomposition"),
    "content": (cmd_content, "singularity content (k, basket)"),
    "degree": (cmd_degree, "anticanonical degree, two ways"),
    "mutate": (cmd_mutate, "apply one mutation (u, F)"),
    "orbit": (cmd_orbit, "breadth-first mutation graph"),
    "mmlp": (cmd_mmlp, "standard maximally mutable Laurent polynomial"),
    "genus": (cmd_genus, "sectional and mutable genus, operator order"),
    "monodromy": (cmd_monodromy, "assembled integral monodromy matrix"),
    "recover": (cmd_recover, "singularity content from a monodromy matrix"),
    "eigenvalues": (cmd_eigenvalues, "monodromy eigenvalues as roots of unity"),
    "period": (cmd_period, "period sequence of a Laurent polynomial"),
    "apply-op": (cmd_apply_op, "apply an operator to a sequence"),
    "guess-op": (cmd_guess_op, "find the smallest annihilating operator"),
    "predict": (cmd_predict, "predicted operator degree and ramification"),
    "normal-form": (cmd_normal_form, "canonical representative up to GL2(Z)"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fanolab", description="Exact Fano polygon toolkit.")
    parser.add_argument("--pretty", action="store_true", help="indented human-readable output")
    parser.add_argument("--format", choices=("json", "pretty"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
        p.add_argument("--format", choices=("json", "pretty"), default=argparse.SUPPRESS)
        if name in ("recover", "eigenvalues"):
            p.add_argument("matrix", help="monodromy matrix JSON or polygon JSON (path, inline, or -)")
        elif name == "period":
            p.add_argument("polynomial", help="Laurent polynomial JSON (path, inline, or -)")
            p.add_argument("-N", type=int, default=20)
            p.add_argument("--values", help="parameter values 'a[0,1]=1;a[1,1]=2'")
        elif name == "apply-op":
            p.add_argument("operator")
            p.add_argument("sequence")
        elif name == "guess-op":
            p.add_argument("sequence")
            p.add_argument("--max-order", type=int, default=4)
            p.add_argument("--max-degree", type=int, default=10)
        else:
            p.add_argument("polygon", help="polygon JSON (path, inline, or -)")
        if name == "mutate":
            p.add_argument("--u", required=True, help="grading covector 'x,y'")
            p.add_argument("--F", required=True, help="factor direction 'x,y'")
        if name == "orbit":
            p.add_argument("--max-nodes", type=int, default=None)
            p.add_argument("--max-depth", type=int, default=12)
        if name == "mmlp":
            p.add_argument("--edge-mode", choices=("binomial", "t-binomial"), default="binomial")
            p.add_argument("--closure-depth", type=int, default=3)
            p.add_argument("--values", help="parameter values 'a[0,1]=1;a[1,1]=2'")
    return parser


def _exit_code(err: FanoError) -> int:
    if err.code in SCOPE_CODES:
        return EXIT_SCOPE
    if err.code in INTERNAL_CODES:
        return EXIT_INTERNAL
    return EXIT_INVALID


def _render(doc, pretty: bool) -> str:
    if pretty:
        return json.dumps(doc, indent=2, ensure_ascii=False)
    return json.dumps(doc, ensure_ascii=False, separators=(",", ":"))


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    positional = [a for a in argv if not a.startswith("-")]
    if positional and positional[0] not in COMMANDS and not any(a in ("-h", "--help") for a in argv):
        sys.stderr.write(build_parser().format_usage())
        sys.stderr.write(f"fanolab: unknown subcommand {positional[0]!r}\n")
        return EXIT_USAGE
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    pretty = args.pretty or args.format == "pretty"
    try:
        doc = COMMANDS[args.command][0](args)
    except FanoError as err:
        sys.stdout.write(_render({"error": err.code, "message": err.message, **_jsonable(err.details)}, pretty) + "\n")
        return _exit_code(err)
    sys.stdout.write(_render(doc, pretty) + "\n")
    return EXIT_OK


def _jsonable(details: dict) -> dict:
    return {k: v if isinstance(v, (int, str, bool, list, dict, type(None))) else str(v) for k, v in details.items()}


if __name__ == "__main__":
    sys.exit(main())
