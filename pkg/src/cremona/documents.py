"""JSON documents for maps and families, and report serialization.

A map document is ``{"n": 2, "components": ["x1*x2", ...]}`` with optional
``"variables"`` and ``"provenance"``.  A family document adds ``"param"`` and
may list ``"excluded"`` parameter values.  Rationals are always strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from . import upoly as U
from .birmap import RationalMapPn, is_dominant_candidate, new_map, normalize
from .errors import ValidationError
from .family import DegreeProfile, LocusPoint, ParamWriting, ScanReport, new_writing
from .polyring import VariableContext, format_poly, parse_poly


def _require_keys(doc: Any, keys, kind: str):
    if not isinstance(doc, dict):
        raise ValidationError(f"{kind} document must be a JSON object")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise ValidationError(f"{kind} document is missing {', '.join(missing)}")
    if not isinstance(doc["n"], int) or isinstance(doc["n"], bool) or doc["n"] < 1:
        raise ValidationError(f"{kind} document: n must be a positive integer")
    comps = doc["components"]
    if not isinstance(comps, list) or not all(isinstance(c, str) for c in comps):
        raise ValidationError(f"{kind} document: components must be a list of strings")


def map_from_doc(doc: dict) -> RationalMapPn:
    _require_keys(doc, ("n", "components"), "map")
    n = doc["n"]
    ctx = VariableContext(tuple(doc["variables"])) if "variables" in doc else VariableContext.projective(n)
    return new_map(n, [parse_poly(c, ctx) for c in doc["components"]], ctx)


def map_to_doc(f: RationalMapPn, provenance: str | None = None, canonical: bool = True) -> dict:
    """Document for ``f``; the canonical form adds the normalized data."""
    doc: dict[str, Any] = {"n": f.n, "components": [format_poly(c) for c in f.components]}
    if f.ctx != VariableContext.projective(f.n):
        doc["variables"] = list(f.ctx.names)
    if provenance:
        doc["provenance"] = provenance
    if canonical:
        g = normalize(f)
        doc["degree"] = g.degree
        doc["normalized"] = [format_poly(c) for c in g.components]
        doc["jacobian_nonzero"] = is_dominant_candidate(g)
    return doc


def family_from_doc(doc: dict) -> ParamWriting:
    _require_keys(doc, ("n", "param", "components"), "family")
    param = doc["param"]
    if not isinstance(param, str):
        raise ValidationError("family document: param must be a string")
    excluded = [_parse_rational(e) for e in doc.get("excluded", [])]
    return new_writing(doc["n"], doc["components"], param=param, x_names=doc.get("variables"),
                       provenance=doc.get("provenance"), excluded=excluded)


def family_to_doc(w: ParamWriting) -> dict:
    doc: dict[str, Any] = {
        "n": w.n,
        "param": w.param,
        "components": [format_poly(c) for c in w.components],
    }
    if w.x_names != VariableContext.projective(w.n).names:
        doc["variables"] = list(w.x_names)
    if w.provenance:
        doc["provenance"] = w.provenance
    if w.excluded:
        doc["excluded"] = [str(e) for e in w.excluded]
    return doc


def _parse_rational(text) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"not a rational number: {text!r}") from None


def is_family_doc(doc: Any) -> bool:
    return isinstance(doc, dict) and "param" in doc


# ---------------------------------------------------------------- reports


def point_to_dict(p: LocusPoint, param: str) -> dict:
    out: dict[str, Any] = {}
    if p.value is not None:
        out["value"] = str(p.value)
    else:
        out["minpoly"] = U.to_str(list(p.minpoly), param)
    if p.degree is not None:
        out["degree"] = p.degree
    return out


def profile_to_dict(p: DegreeProfile) -> dict:
    param = p.minimal.param
    return {
        "Deg": p.Deg,
        "writing_degree": p.writing_degree,
        "common_factor": format_poly(p.common_factor),
        "minimal_writing": family_to_doc(p.minimal),
        "generic_witness": {"value": str(p.generic_witness[0]), "degree": p.generic_witness[1]},
        "drop_points": [point_to_dict(x, param) for x in p.drop_points],
        "collapse_points": [point_to_dict(x, param) for x in p.collapse_points],
        "raw_collapse_points": [point_to_dict(x, param) for x in p.raw_collapse_points],
        "excluded": [str(e) for e in p.minimal.excluded],
        "seed": p.seed,
        "lines": [{"point": list(a), "direction": list(b)} for a, b in p.lines],
        "warnings": list(p.warnings),
        "note": p.note,
    }


def scan_to_dict(r: ScanReport) -> dict:
    return {
        "Deg": r.Deg,
        "ok": r.ok,
        "samples": [
            {"value": str(e.value), "degree": e.degree, "status": e.status, "raw_collapse": e.raw_collapse}
            for e in r.entries
        ],
        "violations": list(r.violations),
        "profile": profile_to_dict(r.profile),
    }


def dumps(obj: Any) -> str:
    """Deterministic JSON: sorted keys, fixed separators."""
    return json.dumps(obj, sort_keys=True, indent=2, default=_default)


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    raise TypeError(f"not serializable: {type(o).__name__}")
