"""Input parsing and JSON/text rendering shared by the CLI.

Rationals are always written as strings (``"3"``, ``"-1/2"``) so that JSON
output stays exact.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List

from .clifford import CenterReport, CliffordElement, indices_to_mask, mask_to_indices
from .errors import DomainError, ParseError
from .hodgetype import HodgeType
from .ksclassify import Diagnostics, HyperkahlerPreset, KSReport
from .lifting import FractionalCocharacter
from .quadspace import QuadraticSpace, diagonal, direct_sum, hyperbolic_sum


def rat(x) -> str:
    return str(Fraction(x))


def parse_rational(text) -> Fraction:
    if isinstance(text, bool):
        raise ParseError(f"not a rational: {text!r}")
    if isinstance(text, float):
        # JSON floats are accepted only when they are exact integers
        if not text.is_integer():
            raise ParseError(f"use 'p/q' strings for non-integers, got {text!r}")
        return Fraction(int(text))
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational: {text!r}") from exc


def parse_rational_list(text: str) -> List[Fraction]:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise ParseError("empty vector")
    return [parse_rational(p) for p in parts]


def space_from_json(doc: Any) -> QuadraticSpace:
    if not isinstance(doc, dict) or "gram" not in doc:
        raise ParseError('Gram document must be an object with a "gram" key')
    gram = doc["gram"]
    if not isinstance(gram, list) or not all(isinstance(r, list) for r in gram):
        raise ParseError('"gram" must be a list of rows')
    rows = [[parse_rational(x) for x in row] for row in gram]
    if "n" in doc and doc["n"] != len(rows):
        raise ParseError(f'"n" is {doc["n"]} but the Gram matrix has {len(rows)} rows')
    return QuadraticSpace(rows)


def space_to_json(space: QuadraticSpace) -> Dict[str, Any]:
    return {"n": space.n, "gram": [[rat(x) for x in row] for row in space.gram]}


_UK = re.compile(r"^U(?:\^(\d+))?$")


def parse_named_form(text: str) -> QuadraticSpace:
    """``U``, ``U^k``, ``diag:a,b,...`` or ``sum:<form>+<form>+...``."""
    text = text.strip()
    if text.startswith("sum:"):
        parts = [p for p in text[4:].split("+") if p.strip()]
        if not parts:
            raise ParseError("sum: needs at least one summand")
        out = parse_named_form(parts[0])
        for p in parts[1:]:
            out = direct_sum(out, parse_named_form(p))
        return out
    if text.startswith("diag:"):
        return diagonal(parse_rational_list(text[5:]))
    m = _UK.match(text)
    if m:
        return hyperbolic_sum(int(m.group(1) or 1))
    raise ParseError(f"unrecognized form {text!r}")


def parse_form_spec(text: str) -> QuadraticSpace:
    """Inline JSON, a path to a JSON file, or a named form."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            return space_from_json(json.loads(stripped))
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
    path = Path(stripped)
    if path.suffix == ".json" or (path.exists() and path.is_file()):
        try:
            return space_from_json(json.loads(path.read_text()))
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in {path}: {exc}") from exc
    return parse_named_form(stripped)


_TERM = re.compile(r"^(?:(?P<coef>[0-9/]+)\s*\*?\s*)?(?:e\{(?P<idx>[0-9,\s]*)\})?$")


def parse_clifford_element(text: str, n: int) -> CliffordElement:
    """Parse e.g. ``"2*e{1,2} - 1/3*e{3} + 5"``; ``e{}`` is the unit."""
    src = text.replace(" ", "")
    if not src:
        raise ParseError("empty Clifford element")
    coords: Dict[int, Fraction] = {}
    for sign, body in re.findall(r"([+-]?)([^+-]+)", src):
        m = _TERM.match(body)
        if not m or (m.group("coef") is None and m.group("idx") is None):
            raise ParseError(f"cannot parse Clifford term {body!r}")
        coef = parse_rational(m.group("coef")) if m.group("coef") else Fraction(1)
        if sign == "-":
            coef = -coef
        idx = m.group("idx")
        indices = [int(i) for i in idx.split(",") if i] if idx else []
        if len(set(indices)) != len(indices) or sorted(indices) != indices:
            raise ParseError(f"indices in {body!r} must be strictly increasing")
        if any(i > n for i in indices):
            raise DomainError(f"generator index exceeds n={n} in {body!r}")
        mask = indices_to_mask(indices)
        coords[mask] = coords.get(mask, Fraction(0)) + coef
    return CliffordElement(n, coords)


def clifford_to_json(z: CliffordElement) -> Dict[str, Any]:
    return {
        "n": z.n,
        "terms": [
            {"indices": mask_to_indices(m), "coef": rat(c)} for m, c in sorted(z.coords.items())
        ],
    }


def ks_report_to_json(report: KSReport, diag: Diagnostics | None = None) -> Dict[str, Any]:
    out: Dict[str, Any] = {
        "n": report.n,
        "delta": None if report.delta is None else report.delta.rep,
        "case": report.case.value,
        "branches": [
            {"r": b.r, "factors": b.distinct_factors, "dim": b.factor_dim, "N": b.multiplicity_N}
            for b in report.branches
        ],
        "torus_bound": report.torus_bound,
        "warnings": list(report.warnings),
    }
    if report.splitness_hint is not None:
        out["selected_r"] = report.selected.r
    if diag is not None:
        out["signature"] = list(diag.signature)
        if diag.oracle_checked:
            out["oracle"] = {"checked": True, "center_split": diag.oracle_split}
    return out


def ks_report_text(report: KSReport, diag: Diagnostics | None = None) -> str:
    delta = "unknown" if report.delta is None else str(report.delta.rep)
    lines = [
        f"n: {report.n}",
        f"delta: {delta}",
        f"case: {report.case.value} ({report.case.roman})",
    ]
    if diag is not None:
        lines.append(f"signature: ({diag.signature[0]}, {diag.signature[1]})")
    for b in report.branches:
        mark = " *" if report.selected is b else ""
        lines.append(
            f"r={b.r}: {b.distinct_factors} simple factor(s) of dim {b.factor_dim}, N={b.multiplicity_N}{mark}"
        )
    lines.append(f"torus_bound: {report.torus_bound}")
    if diag is not None and diag.oracle_checked:
        lines.append(f"oracle: center split = {diag.oracle_split}")
    lines += [f"warning: {w}" for w in report.warnings]
    return "\n".join(lines)


def center_to_json(c: CenterReport) -> Dict[str, Any]:
    return {
        "n": c.n,
        "dim": c.dim,
        "basis": [clifford_to_json(z) for z in c.basis],
        "split": c.split,
        "square": None if c.square is None else rat(c.square),
    }


def hodge_to_json(t: HodgeType) -> Dict[str, Any]:
    return {
        "entries": [{"p": rat(p), "q": rat(q), "mult": m} for (p, q), m in t.entries],
        "dim": t.dim,
    }


def lift_to_json(lift: FractionalCocharacter, bound: int) -> Dict[str, Any]:
    return {"x": [rat(v) for v in lift.x], "N": lift.level, "level_bound": bound}


def preset_to_json(p: HyperkahlerPreset) -> Dict[str, Any]:
    return {
        "b2": p.b2,
        "polarized": p.polarized,
        "n": p.n,
        "signature": list(p.signature),
        "delta_sign": p.delta_sign,
        "sign_indeterminate": p.sign_indeterminate,
        "subcase": p.subcase,
        "printed_case": None if p.printed_case is None else p.printed_case.value,
        "report": None if p.report is None else ks_report_to_json(p.report),
        "notes": list(p.notes),
    }
