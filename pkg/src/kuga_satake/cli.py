"""Command-line front end.

Exit codes: 0 success, 1 parse error, 2 domain precondition failure,
3 internal assertion (two independent computations disagree).
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, List, Optional, Tuple

from . import clifford, hodgetype, ksclassify, lifting, rootspin
from .errors import DomainError, OracleMismatchError, ParseError
from .formats import (
    center_to_json,
    clifford_to_json,
    hodge_to_json,
    ks_report_text,
    ks_report_to_json,
    lift_to_json,
    parse_clifford_element,
    parse_form_spec,
    parse_rational,
    parse_rational_list,
    preset_to_json,
    rat,
)
from .quadspace import diagonalize, square_class

Output = Tuple[dict, str]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _split_hint(value: Optional[str]) -> Optional[bool]:
    return None if value is None else value == "split"


def _classify_one(spec: str, args) -> Output:
    space = parse_form_spec(spec)
    report, diag = ksclassify.classify_from_gram(
        space, oracle=args.oracle, splitness_hint=_split_hint(args.quaternion)
    )
    return ks_report_to_json(report, diag), ks_report_text(report, diag)


def cmd_classify(args) -> Output | List[Output]:
    if args.batch:
        specs = [s for s in Path(args.batch).read_text().splitlines() if s.strip()]
        with ThreadPoolExecutor() as pool:
            return list(pool.map(lambda s: _classify_one(s, args), specs))
    if args.form:
        return _classify_one(args.form, args)
    if args.n is None or args.delta is None:
        raise ParseError("classify needs --form, --batch, or both --n and --delta")
    report = ksclassify.classify(args.n, square_class(parse_rational(args.delta)), _split_hint(args.quaternion))
    return ks_report_to_json(report), ks_report_text(report)


def cmd_clifford(args) -> Output:
    if args.action == "dims":
        full, even = clifford.dimension_check(args.n)
        return {"n": args.n, "dim_C": full, "dim_Cplus": even}, f"dim C = {full}\ndim C+ = {even}"
    if not args.form:
        raise ParseError(f"clifford {args.action} needs --form")
    d = diagonalize(parse_form_spec(args.form))
    diag_text = "diagonal form: (" + ", ".join(rat(c) for c in d.coeffs) + ")"
    if args.action == "center":
        c = clifford.even_center(d)
        doc = center_to_json(c)
        doc["diagonal"] = [rat(x) for x in d.coeffs]
        lines = [diag_text, f"center dim: {c.dim}"]
        lines += [f"  basis: {z}" for z in c.basis]
        lines.append("split: " + ("n/a (odd n)" if c.split is None else str(c.split)))
        if c.square is not None:
            lines.append(f"nonscalar central element squares to {c.square}")
        return doc, "\n".join(lines)
    if args.a is None or args.b is None:
        raise ParseError("clifford mult needs --a and --b")
    a = parse_clifford_element(args.a, d.n)
    b = parse_clifford_element(args.b, d.n)
    prod = clifford.clifford_product(a, b, d)
    doc = {"diagonal": [rat(x) for x in d.coeffs], "product": clifford_to_json(prod)}
    return doc, f"{diag_text}\n({a}) * ({b}) = {prod}"


def cmd_hodge(args) -> Output:
    types = [hodgetype.parse_hodge_type(t) for t in args.types]
    if args.action == "factor":
        i, consts = hodgetype.weight1_tensor_factor(types)
        doc = {"index": i, "constants": [rat(c) for c in consts]}
        return doc, f"index: {i}\nconstants: [" + ", ".join(rat(c) for c in consts) + "]"
    if args.action == "tensor":
        result = hodgetype.tensor_all(types)
    elif len(types) != 1:
        raise ParseError(f"hodge {args.action} takes exactly one type")
    elif args.action == "dual":
        result = hodgetype.dual(types[0])
    else:
        if args.by is None:
            raise ParseError("hodge twist needs --by")
        result = hodgetype.tate_twist(types[0], parse_rational(args.by))
    doc = hodge_to_json(result)
    w = hodgetype.purity(result)
    doc["weight"] = None if w is None else rat(w)
    doc["k3_type"] = hodgetype.is_k3_type(result)
    doc["abelian_type"] = hodgetype.is_abelian_type(result)
    text = f"{result}\ndim: {result.dim}\nweight: {'impure' if w is None else w}"
    return doc, text


def _spectrum_json(spec):
    return [{"value": rat(v), "mult": m} for v, m in spec.items()]


def cmd_roots(args) -> Output:
    datum = rootspin.RootDatum(args.series, args.rank)
    nu = parse_rational_list(args.nu) if args.nu else rootspin.standard_cocharacter(args.rank)
    pair = rootspin.pairings(datum, nu)
    doc = {
        "series": args.series,
        "rank": args.rank,
        "nu": [rat(v) for v in nu],
        "pairings": [rat(v) for v in pair],
    }
    lines = [f"{args.series}{args.rank}, nu = (" + ", ".join(rat(v) for v in nu) + ")"]
    lines.append("pairings: [" + ", ".join(rat(v) for v in pair) + "]")
    try:
        sv = rootspin.special_vertex(datum, nu)
        doc["special_vertex"] = sv
        doc["special_vertex_error"] = None
        lines.append(f"special vertex: {sv}")
    except DomainError as exc:
        doc["special_vertex"] = None
        doc["special_vertex_error"] = str(exc)
        lines.append(f"special vertex: none ({exc})")
    if args.series == "B":
        halves = [None]
    else:
        halves = [args.half] if args.half else ["even", "odd"]
    doc["spectra"] = []
    for h in halves:
        ws = rootspin.spin_weights(args.series, args.rank, h)
        spec = rootspin.weight_spectrum(ws, nu)
        two = rootspin.has_two_weights(spec)
        doc["spectra"].append(
            {"half": h, "dim": ws.dim, "spectrum": _spectrum_json(spec), "two_weights": two}
        )
        name = "spin" if h is None else f"half-spin ({h})"
        body = ", ".join(f"{rat(v)}:{m}" for v, m in spec.items())
        lines.append(f"{name} dim {ws.dim} spectrum {{{body}}} two-weight={two}")
    return doc, "\n".join(lines)


def cmd_lift(args) -> Output:
    try:
        matrix = json.loads(args.matrix)
    except json.JSONDecodeError as exc:
        raise ParseError(f"--matrix is not JSON: {exc}") from exc
    if not isinstance(matrix, list) or not all(isinstance(r, list) for r in matrix):
        raise ParseError("--matrix must be a JSON list of rows")
    iso = lifting.ToralIsogeny(tuple(tuple(parse_rational(x) for x in row) for row in matrix))
    target = parse_rational_list(args.target)
    if any(t.denominator != 1 for t in target):
        raise DomainError("target cocharacter must be integral")
    lift = lifting.fractional_lift(iso, target)
    bound = lifting.lift_level_bound(iso)
    text = "x = [" + ", ".join(rat(v) for v in lift.x) + f"]\nN = {lift.level}\nlevel bound = {bound}"
    return lift_to_json(lift, bound), text


def cmd_preset(args) -> Output:
    delta = square_class(parse_rational(args.delta)) if args.delta else None
    p = ksclassify.hyperkahler_presets(args.b2, args.polarized, delta)
    lines = [
        f"b2: {p.b2}, polarized: {p.polarized}",
        f"n: {p.n}, signature: ({p.signature[0]}, {p.signature[1]}), sign of delta: {p.delta_sign:+d}",
    ]
    if p.report is not None:
        lines.append(ks_report_text(p.report))
    else:
        lines.append("case: indeterminate from the sign of delta alone")
    lines += [f"note: {s}" for s in p.notes]
    return preset_to_json(p), "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ks", description="Kuga-Satake classification with exact arithmetic.")
    parser.add_argument("--json", action="store_true", help="emit JSON instead of text")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)

    p = sub.add_parser("classify", parents=[common], help="classify the Kuga-Satake structure of a quadratic space")
    p.add_argument("--form", help="named form (U, U^k, diag:a,b, sum:A+B), inline JSON, or JSON file")
    p.add_argument("--batch", help="file with one form spec per line")
    p.add_argument("--n", type=int)
    p.add_argument("--delta", help="discriminant (any nonzero rational)")
    p.add_argument("--oracle", action="store_true", help="cross-check against the C+ center")
    p.add_argument("--quaternion", choices=["split", "nonsplit"], help="select the r=1 or r=2 branch")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("clifford", parents=[common], help="Clifford algebra computations")
    p.add_argument("action", choices=["center", "mult", "dims"])
    p.add_argument("--form")
    p.add_argument("--n", type=int)
    p.add_argument("--a")
    p.add_argument("--b")
    p.set_defaults(func=cmd_clifford)

    p = sub.add_parser("hodge", parents=[common], help="Hodge type calculus")
    p.add_argument("action", choices=["tensor", "dual", "twist", "factor"])
    p.add_argument("types", nargs="+", help='types like "(1,0):2, (0,1):2"')
    p.add_argument("--by", help="twist amount c (adds (-c,-c))")
    p.set_defaults(func=cmd_hodge)

    p = sub.add_parser("roots", parents=[common], help="special vertex and spin weight spectra")
    p.add_argument("--series", choices=["B", "D"], required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--half", choices=["even", "odd"])
    p.add_argument("--nu", help="cocharacter as v1,v2,...; default (1,0,...,0)")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("lift", parents=[common], help="fractional lift through a toral isogeny")
    p.add_argument("--matrix", required=True, help="integer matrix as JSON")
    p.add_argument("--target", required=True, help="cocharacter as v1,v2,...")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("preset", parents=[common], help="named example families")
    p.add_argument("family", choices=["hyperkahler"])
    p.add_argument("--b2", type=int, required=True)
    p.add_argument("--polarized", action="store_true")
    p.add_argument("--delta", help="full discriminant, if known")
    p.set_defaults(func=cmd_preset)
    return parser


def _render(result, as_json: bool) -> str:
    if isinstance(result, list):
        if as_json:
            return json.dumps([doc for doc, _ in result], indent=2, sort_keys=True)
        return "\n\n".join(text for _, text in result)
    doc, text = result
    return json.dumps(doc, indent=2, sort_keys=True) if as_json else text


def run(argv: Optional[List[str]] = None, out: Callable[[str], None] = print,
        err: Callable[[str], None] = lambda s: print(s, file=sys.stderr)) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "clifford" and args.action == "dims" and args.n is None:
            raise ParseError("clifford dims needs --n")
        out(_render(args.func(args), args.json))
        return 0
    except ParseError as exc:
        err(f"parse error: {exc}")
        return 1
    except DomainError as exc:
        err(f"error: {exc}")
        return 2
    except OracleMismatchError as exc:
        err(f"internal error: {exc}")
        return 3
    except OSError as exc:
        err(f"parse error: {exc}")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
