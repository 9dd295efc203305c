"""Command-line front end: ``cremona map|jonq|family|examples ...``.

Inputs are JSON documents (a path, ``-`` for stdin, or a literal object),
inline tuples such as ``"(x1*x2 : x0*x2 : x0*x1)"``, or built-ins written
``@henon``, ``@standard-quadratic``, ``@nodal-cubic`` and so on.

Exit codes: 0 ok, 1 validation error, 2 domain error, 3 invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from random import Random

from . import __version__, catalog
from .birmap import (
    RationalMapPn,
    compose,
    conjugate,
    cyclic_growth_report,
    invert_linear,
    is_dominant_candidate,
    is_identity,
    jacobian,
    new_map,
    normalize,
    power_degree_sequence,
)
from .documents import (
    dumps,
    family_from_doc,
    family_to_doc,
    is_family_doc,
    map_from_doc,
    map_to_doc,
    profile_to_dict,
    scan_to_dict,
)
from .errors import ComposedToZero, CremonaError, InvariantViolation, SemicontinuityViolation, ValidationError
from .family import (
    ParamWriting,
    common_factor,
    family_compose,
    family_Deg,
    new_writing,
    reparameterize,
    semicontinuity_scan,
    stratify,
    writing_degree,
)
from .jonquieres import in_image_sigma_ell, in_jon, in_star, rho, sigma_ell
from .oracle import OracleConfig, identity_check_modp
from .polyring import VariableContext, format_poly, infer_context, parse_poly


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ValidationError(message)


# ---------------------------------------------------------------- input resolution


def _split_tuple(text: str) -> list[str]:
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ValidationError(f"inline maps are written (f0 : f1 : ...), got {text!r}")
    parts = [p.strip() for p in body[1:-1].split(":")]
    if len(parts) < 2 or not all(parts):
        raise ValidationError(f"inline map needs at least two nonempty components: {text!r}")
    return parts


def _load_raw(source: str, args):
    """Resolve an input to a document dict, a map, or a writing."""
    if source.startswith("@"):
        obj, _ = catalog.builtin(source[1:], args.n)
        return obj
    if source == "-":
        return _json(sys.stdin.read(), "stdin")
    if source.lstrip().startswith("{"):
        return _json(source, "argument")
    if source.lstrip().startswith("("):
        return source
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            return _json(fh.read(), source)
    raise ValidationError(f"cannot read input {source!r}: not a file, document, inline map or @built-in")


def _json(text: str, where: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"invalid JSON in {where}: line {e.lineno}, column {e.colno}: {e.msg}") from None


def load_map(source: str, args) -> RationalMapPn:
    raw = _load_raw(source, args)
    if isinstance(raw, RationalMapPn):
        return raw
    if isinstance(raw, ParamWriting):
        raise ValidationError(f"{source} is a family, a map was expected")
    if isinstance(raw, str):
        parts = _split_tuple(raw)
        n = len(parts) - 1
        ctx = VariableContext.projective(n)
        found = infer_context(parts)
        if not set(found.names) <= set(ctx.names):
            ctx = found if len(found) == n + 1 else None
            if ctx is None:
                raise ValidationError(f"inline map on P^{n} uses variables ({found}); expected x0..x{n}")
        return new_map(n, [parse_poly(p, ctx) for p in parts], ctx)
    if is_family_doc(raw):
        raise ValidationError(f"{source} is a family document, a map was expected")
    return map_from_doc(raw)


def load_family(source: str, args) -> ParamWriting:
    raw = _load_raw(source, args)
    if isinstance(raw, ParamWriting):
        return raw
    if isinstance(raw, RationalMapPn):
        raise ValidationError(f"{source} is a map, a family was expected")
    if isinstance(raw, str):
        parts = _split_tuple(raw)
        n = len(parts) - 1
        return new_writing(n, parts, param=args.param)
    if not is_family_doc(raw):
        raise ValidationError(f"{source} is not a family document (no 'param' field)")
    return family_from_doc(raw)


def _rationals(text: str | None) -> list[Fraction]:
    if not text:
        return []
    out = []
    for piece in text.split(","):
        try:
            out.append(Fraction(piece.strip()))
        except (ValueError, ZeroDivisionError):
            raise ValidationError(f"not a rational number: {piece!r}") from None
    return out


# ---------------------------------------------------------------- commands


def _map_summary(f: RationalMapPn) -> dict:
    return map_to_doc(f)


def cmd_map(args) -> tuple[dict, list[str]]:
    f = load_map(args.input, args)
    action = args.action
    if action == "info":
        g = normalize(f)
        try:
            sq = compose(g, g)
            involution = is_identity(sq)
        except ComposedToZero:
            involution = False
        report = {
            "map": _map_summary(f),
            "raw_degree": f.raw_degree,
            "degree": g.degree,
            "dominant_candidate": is_dominant_candidate(g),
            "identity": is_identity(g),
            "involution": involution,
        }
        lines = [
            f"map       {f}",
            f"normalized {g}",
            f"degree    {g.degree} (raw {f.raw_degree})",
            f"jacobian  {'nonzero (dominant candidate)' if report['dominant_candidate'] else 'identically zero'}",
            f"identity  {report['identity']}",
        ]
        if involution and not report["identity"]:
            lines.append("involution: f o f is the identity")
        return report, lines
    if action == "compose":
        if not args.other:
            raise ValidationError("map compose needs a second map")
        g = load_map(args.other, args)
        h = compose(f, g)
        report = {"result": _map_summary(h), "degree": h.degree, "bound": f.degree * g.degree}
        return report, [f"f o g = {h}", f"degree {h.degree} <= {f.degree} * {g.degree}"]
    if action == "identity":
        exact = is_identity(f)
        cfg = OracleConfig(args.prime_bits, args.trials, args.seed)
        oracle = identity_check_modp(f, cfg)
        if exact and not oracle.verdict:
            raise InvariantViolation(f"oracle refutes an exact identity: witness {oracle.witness}")
        report = {"identity": exact, "oracle": oracle.as_dict()}
        lines = [f"identity {exact}", f"oracle   {oracle.verdict} over primes {oracle.primes}"]
        if oracle.witness:
            lines.append(f"witness  {oracle.witness}")
        return report, lines
    if action == "jacobian":
        j = jacobian(normalize(f))
        report = {"jacobian": format_poly(j), "nonzero": bool(j)}
        return report, [f"J = {format_poly(j)}", f"nonzero {bool(j)}"]
    if action == "powers":
        seq = power_degree_sequence(f, args.max_power)
        growth = cyclic_growth_report(f, args.max_power)
        report = {
            "degrees": seq.degrees,
            "growth": growth.label,
            "classification": growth.classification,
            "order": growth.order,
            "horizon": growth.horizon,
            "evidence": growth.evidence.degrees,
            "note": growth.note,
        }
        lines = [f"deg f^m, m = 1..{args.max_power}: {', '.join(map(str, seq.degrees))}", f"growth {growth.label}"]
        return report, lines
    if action == "conjugate":
        if not args.other:
            raise ValidationError("map conjugate needs the conjugating map")
        L = load_map(args.other, args)
        L_inv = load_map(args.inverse, args) if args.inverse else invert_linear(L)
        h = conjugate(f, L, L_inv)
        report = {"result": _map_summary(h), "degree": h.degree, "original_degree": f.degree}
        return report, [f"L^-1 o f o L = {h}", f"degree {h.degree} (was {f.degree})"]
    raise ValidationError(f"unknown map action {action!r}")


def cmd_jonq(args) -> tuple[dict, list[str]]:
    f = load_map(args.input, args)
    if args.action == "check":
        s = in_star(f)
        images = [in_image_sigma_ell(f, ell) for ell in range(1, f.n + 1)] if s.member else [False] * f.n
        report = {
            "jon": in_jon(f),
            "star": s.member,
            "quotient": map_to_doc(s.quotient, canonical=False) if s.quotient else None,
            "sigma_images": images,
            "failed_pair": list(s.failed_pair) if s.failed_pair else None,
        }
        lines = [f"jon  {report['jon']}", f"star {s.member}"]
        if s.quotient:
            lines.append(f"rho  {s.quotient}")
        lines.append("sigma images " + " ".join(f"l={i + 1}:{v}" for i, v in enumerate(images)))
        return report, lines
    if args.action == "rho":
        q = rho(f)
        return {"quotient": map_to_doc(q, canonical=False)}, [f"rho = {q}"]
    if args.action == "sigma":
        g = sigma_ell(f, args.ell)
        return {"ell": args.ell, "result": _map_summary(g)}, [f"sigma_{args.ell} = {g}"]
    raise ValidationError(f"unknown jonq action {args.action!r}")


def cmd_family(args) -> tuple[dict, list[str]]:
    w = load_family(args.input, args)
    action = args.action
    if action == "deg":
        Deg = family_Deg(w)
        g = common_factor(w)
        report = {"Deg": Deg, "writing_degree": writing_degree(w), "common_factor": format_poly(g)}
        return report, [f"Deg {Deg}", f"writing degree {writing_degree(w)}", f"common factor {format_poly(g)}"]
    if action == "stratify":
        p = stratify(w, seed=args.seed, runs=args.second_line)
        return profile_to_dict(p), _profile_lines(p)
    if action == "scan":
        rng = Random(args.seed)
        pts = set(_rationals(args.at))
        while len(pts) < args.samples + len(set(_rationals(args.at))):
            pts.add(Fraction(rng.randint(-50, 50), rng.randint(1, 9)))
        try:
            r = semicontinuity_scan(w, sorted(pts), seed=args.seed, runs=args.second_line)
        except SemicontinuityViolation as e:
            if e.report is not None:
                _emit(args, scan_to_dict(e.report), [str(e)])
            raise
        lines = [f"Deg {r.Deg}; {len(r.entries)} samples, all consistent"]
        for e in r.entries:
            if e.status != "generic":
                lines.append(f"  {w.param} = {e.value}: {e.status}" + (f", degree {e.degree}" if e.degree is not None else ""))
        return scan_to_dict(r), lines
    if action == "compose":
        if not args.other:
            raise ValidationError("family compose needs a second family")
        w2 = load_family(args.other, args)
        c = family_compose(w, w2)
        return {"result": family_to_doc(c), "Deg": family_Deg(c)}, [f"composite {c}", f"Deg {family_Deg(c)}"]
    if action == "reparam":
        coeffs = _rationals(args.mobius)
        if len(coeffs) != 4:
            raise ValidationError("--mobius takes four rationals a,b,c,d")
        r = reparameterize(w, coeffs)
        report = {"result": family_to_doc(r), "Deg": family_Deg(r), "original_Deg": family_Deg(w)}
        return report, [f"reparameterized {r}", f"Deg {report['Deg']} (was {report['original_Deg']})"]
    raise ValidationError(f"unknown family action {action!r}")


def _profile_lines(p) -> list[str]:
    param = p.minimal.param
    lines = [
        f"Deg {p.Deg} (writing degree {p.writing_degree}, common factor {format_poly(p.common_factor)})",
        f"minimal writing {p.minimal}",
    ]
    if p.drop_points:
        lines += ["drop points:"] + [f"  {x.describe(param)}" for x in p.drop_points]
    else:
        lines.append("drop points: none in the affine chart")
    if p.raw_collapse_points:
        lines.append("raw writing collapses at: " + ", ".join(x.describe(param) for x in p.raw_collapse_points))
    if p.minimal.excluded:
        lines.append("outside the chart: " + ", ".join(f"{param} = {e}" for e in p.minimal.excluded))
    lines += [f"warning: {m}" for m in p.warnings]
    return lines


def cmd_examples(args) -> tuple[dict, list[str]]:
    obj, note = catalog.builtin(args.name, args.n)
    if isinstance(obj, ParamWriting):
        doc = family_to_doc(obj)
    else:
        doc = map_to_doc(obj, provenance=note, canonical=False)
    doc.setdefault("provenance", note)
    text = dumps(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        return {"document": doc, "written_to": args.output}, [f"wrote {args.name} to {args.output}"]
    return {"document": doc, "written_to": args.output}, [text]


# ---------------------------------------------------------------- plumbing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice (default 0)")
    common.add_argument("--prime-bits", type=int, default=31, help="oracle prime size")
    common.add_argument("--trials", type=int, default=5, help="oracle trials per query")
    common.add_argument("--n", type=int, default=None, help="dimension for built-ins that take one")
    common.add_argument("--param", default="t", help="parameter name for inline families")

    top = _Parser(prog="cremona", description="Exact computations with Cremona transformations and their families.")
    top.add_argument("--version", action="version", version=f"cremona {__version__}")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pm = sub.add_parser("map", parents=[common], help="operations on a single map")
    pm.add_argument("action", choices=["info", "compose", "identity", "jacobian", "powers", "conjugate"])
    pm.add_argument("input")
    pm.add_argument("other", nargs="?", help="second map (compose) or conjugating map (conjugate)")
    pm.add_argument("--inverse", help="inverse of the conjugating map (default: invert it as a linear map)")
    pm.add_argument("--max-power", type=int, default=8)

    pj = sub.add_parser("jonq", parents=[common], help="de Jonquieres structure at o = (1:0:...:0)")
    pj.add_argument("action", choices=["check", "rho", "sigma"])
    pj.add_argument("input")
    pj.add_argument("--ell", type=int, default=1)

    pf = sub.add_parser("family", parents=[common], help="one-parameter families")
    pf.add_argument("action", choices=["deg", "stratify", "scan", "compose", "reparam"])
    pf.add_argument("input")
    pf.add_argument("other", nargs="?", help="second family (compose)")
    pf.add_argument("--samples", type=int, default=20, help="number of random scan samples")
    pf.add_argument("--at", help="extra scan samples, comma-separated rationals")
    pf.add_argument("--second-line", type=int, default=2, help="independent random lines for the drop locus")
    pf.add_argument("--mobius", help="a,b,c,d for t -> (a t + b)/(c t + d)")

    pe = sub.add_parser("examples", parents=[common], help="emit a built-in example document")
    pe.add_argument("name", choices=["nodal-cubic", "henon", "degeneration", "standard-quadratic", "diagonal", "identity"])
    pe.add_argument("-o", "--output", help="write the document to this file")
    return top


COMMANDS = {"map": cmd_map, "jonq": cmd_jonq, "family": cmd_family, "examples": cmd_examples}


def _config(args) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k != "json"}
    return {"version": __version__, "command": f"{args.command} {getattr(args, 'action', getattr(args, 'name', ''))}".strip(),
            "config": cfg}


def _emit(args, report, lines, error=None):
    if args.json:
        out = {"header": _config(args), "report": report}
        if error is not None:
            out["error"] = error
        print(dumps(out))
    else:
        for line in lines:
            print(line)


def main(argv=None) -> int:
    args = None
    try:
        args = build_parser().parse_args(argv)
        if args.command == "jonq" and args.ell < 1:
            raise ValidationError("--ell must be at least 1")
        if getattr(args, "max_power", 1) < 1 or getattr(args, "samples", 0) < 0:
            raise ValidationError("--max-power must be positive and --samples nonnegative")
        if getattr(args, "second_line", 1) < 1:
            raise ValidationError("--second-line must be at least 1")
        report, lines = COMMANDS[args.command](args)
        _emit(args, report, lines)
        return 0
    except CremonaError as e:
        kind = type(e).__name__
        print(f"error [{kind}]: {e}", file=sys.stderr)
        if args is not None and getattr(args, "json", False) and not isinstance(e, SemicontinuityViolation):
            _emit(args, None, [], {"type": kind, "message": str(e), "exit_code": e.exit_code})
        return e.exit_code
    except Exception as e:  # a bug, not a user error
        print(f"internal error [{type(e).__name__}]: {e}", file=sys.stderr)
        return InvariantViolation.exit_code


def run():
    sys.exit(main())
