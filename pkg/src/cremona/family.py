"""One-parameter algebraic families of maps of P^n.

A *writing* is a tuple of polynomials in ``x0..xn`` and a parameter ``t``,
homogeneous of one common degree in ``x``; at each value ``t0`` it specializes
to the map ``x -> (f_0(t0, x) : ... : f_n(t0, x))``.  Dividing a writing by the
gcd of its components over QQ[t, x] gives the minimal writing; its x-degree is
the family degree ``Deg``, the largest degree attained by any member.

Degree drops happen where the specialized components acquire a common factor.
They are located by restricting to random lines (resultants in the line
coordinate) and every candidate is verified by exact specialization, over QQ
for rational candidates and over QQ[t]/(m) for the rest.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence

from . import _kernel as K
from . import upoly as U
from .birmap import RationalMapPn, _canonical_scale, new_map, normalize
from .errors import (
    AllZero,
    CollapsePoint,
    ComposedToZero,
    DegenerateMobius,
    DegreeMismatch,
    InvariantViolation,
    NotHomogeneous,
    OutsideDomain,
    SemicontinuityViolation,
    ValidationError,
    ZeroDivisorSplit,
)
from .jonquieres import sigma_components
from .polyring import MultiPoly, VariableContext, gcd_many, parse_poly

LINE_BOUND = 100


@dataclass(frozen=True)
class ParamWriting:
    """Components in the context ``x_names + (param,)``.

    ``excluded`` lists parameter values outside the affine chart of the
    family (poles of a reparameterization); they are never specialized.
    """

    n: int
    param: str
    components: tuple[MultiPoly, ...]
    provenance: str | None = None
    excluded: tuple[Fraction, ...] = ()

    @property
    def ctx(self) -> VariableContext:
        return self.components[0].ctx

    @property
    def x_names(self) -> tuple[str, ...]:
        return tuple(v for v in self.ctx.names if v != self.param)

    @property
    def x_ctx(self) -> VariableContext:
        return VariableContext(self.x_names)

    def __str__(self):
        return "(" + " : ".join(str(c) for c in self.components) + ")"


def new_writing(
    n: int,
    components: Sequence[MultiPoly | str],
    param: str = "t",
    x_names: Sequence[str] | None = None,
    provenance: str | None = None,
    excluded: Iterable[Fraction] = (),
) -> ParamWriting:
    x_names = tuple(x_names) if x_names else VariableContext.projective(n).names
    if len(x_names) != n + 1:
        raise ValidationError(f"a family on P^{n} needs {n + 1} coordinates")
    ctx = VariableContext(x_names + (param,))
    comps = list(components)
    if len(comps) != n + 1:
        raise ValidationError(f"a writing on P^{n} needs {n + 1} components, got {len(comps)}")
    polys = []
    for c in comps:
        polys.append(parse_poly(c, ctx) if isinstance(c, str) else c.to_context(ctx))
    degs = set()
    for i, c in enumerate(polys):
        if not c.is_homogeneous(x_names):
            raise NotHomogeneous(f"component {i} is not homogeneous in {','.join(x_names)}: {c}")
        if c:
            degs.add(c.total_degree(x_names))
    if not degs:
        raise AllZero("all components of the writing are zero")
    if len(degs) > 1:
        raise DegreeMismatch(f"components have different x-degrees {sorted(degs)}")
    return ParamWriting(n, param, tuple(polys), provenance, tuple(sorted({Fraction(e) for e in excluded})))


def writing_degree(w: ParamWriting) -> int:
    return max(c.total_degree(w.x_names) for c in w.components if c)


def common_factor(w: ParamWriting) -> MultiPoly:
    """gcd of the components over QQ[t, x] (pure-t content included)."""
    return gcd_many(w.components)


def minimal_writing(w: ParamWriting) -> ParamWriting:
    g = common_factor(w)
    comps = w.components
    if not g.is_constant():
        comps = tuple(c / g for c in comps)
    return replace(w, components=_canonical_scale(comps))


def family_Deg(w: ParamWriting) -> int:
    return writing_degree(minimal_writing(w))


# ---------------------------------------------------------------- t-structure


def _as_upoly(p: MultiPoly, param: str) -> list:
    """Univariate view of a polynomial that only involves ``param``."""
    i = p.ctx.index(param)
    out = [Fraction(0)] * (max((e[i] for e in p.terms), default=-1) + 1)
    for e, c in p.terms.items():
        out[e[i]] += c
    return U.trim(out)


def _t_coefficients(w: ParamWriting) -> list[dict[tuple[int, ...], list]]:
    """Per component: x-exponent -> coefficient polynomial in t."""
    out = []
    for c in w.components:
        groups = c.coefficients_in(w.x_names)
        out.append({k: _as_upoly(v, w.param) for k, v in groups.items()})
    return out


def _t_degree(w: ParamWriting) -> int:
    return max((c.degree_in(w.param) for c in w.components if c), default=0)


@dataclass(frozen=True)
class LocusPoint:
    """A rational parameter value, or all roots of a square-free polynomial.

    ``minpoly`` is monic, square-free, free of rational roots, coefficients
    lowest degree first.  If the quotient arithmetic never met a zero divisor
    it may still be reducible; every one of its roots then has the same
    behaviour.
    """

    value: Fraction | None = None
    minpoly: tuple[Fraction, ...] | None = None
    degree: int | None = None

    def describe(self, param: str = "t") -> str:
        where = f"{param} = {self.value}" if self.value is not None else f"roots of {U.to_str(list(self.minpoly), param)}"
        return where if self.degree is None else f"{where} -> degree {self.degree}"


def _points_of(poly, param) -> list[LocusPoint]:
    roots, rest = U.split_rational_roots(poly)
    pts = [LocusPoint(value=r) for r in roots]
    if U.deg(rest) >= 1:
        pts.append(LocusPoint(minpoly=tuple(rest)))
    return pts


def collapse_points(w: ParamWriting) -> list[LocusPoint]:
    """Parameter values where every component of ``w`` vanishes."""
    content: list = []
    for comp in _t_coefficients(w):
        for coeff in comp.values():
            content = U.gcd(content, coeff)
            if U.deg(content) == 0:
                return []
    if U.deg(content) <= 0:
        return []
    return [p for p in _points_of(content, w.param) if p.value not in w.excluded]


# ---------------------------------------------------------------- specialization


def specialize(w: ParamWriting, t0) -> tuple[RationalMapPn, int]:
    """Substitute ``param = t0``; return the normalized map and its degree.

    Raises :class:`CollapsePoint` if all components vanish at ``t0``.
    """
    t0 = Fraction(t0)
    if t0 in w.excluded:
        raise OutsideDomain(f"{w.param} = {t0} lies outside the chart of this family")
    xctx = w.x_ctx
    comps = [c.substitute({w.param: t0}, xctx) for c in w.components]
    if not any(comps):
        raise CollapsePoint(t0)
    f = normalize(new_map(w.n, comps, xctx))
    return f, f.raw_degree


def specialize_at_root(w: ParamWriting, modulus) -> list[tuple[tuple[Fraction, ...], int | None]]:
    """Degrees at the roots of a square-free ``modulus``, working in QQ[t]/(m).

    Returns ``(factor, degree)`` pairs covering ``modulus``: the factorization
    is refined only where a zero divisor shows up.  ``degree`` is None when the
    writing vanishes identically at those roots.
    """
    ring = U.QuotientRing(modulus)
    dom = K.FieldDomain(ring.one)
    d = writing_degree(w)
    try:
        raws = []
        for comp in _t_coefficients(w):
            raw = {}
            for e, coeff in comp.items():
                r = ring(coeff)
                if r:
                    raw[e] = r
            if raw:
                raws.append(dom.normal(raw))
        if not raws:
            return [(tuple(ring.modulus), None)]
        g = K.gcd_many(raws, dom)
        e = max(sum(k) for k in g)
        return [(tuple(ring.modulus), d - e)]
    except ZeroDivisorSplit as split:
        return specialize_at_root(w, split.factor) + specialize_at_root(w, split.cofactor)


# ---------------------------------------------------------------- drop locus


def _fresh_name(taken: Sequence[str]) -> str:
    for name in ("u", "v", "w", "lam"):
        if name not in taken:
            return name
    return "u" + "".join(taken)


def _restrict_to_line(w: ParamWriting, point, direction):
    """Components along ``x = point + u*direction``: lists over u of t-polys."""
    u = _fresh_name(w.ctx.names)
    ctx2 = VariableContext((u, w.param))
    uu = MultiPoly.var(ctx2, u)
    binding = {x: MultiPoly.constant(ctx2, p) + uu * q for x, p, q in zip(w.x_names, point, direction)}
    out = []
    for c in w.components:
        r = c.substitute(binding, ctx2)
        by_u = r.coefficients_in([u])
        d = max((k[0] for k in by_u), default=-1)
        coeffs = [[] for _ in range(d + 1)]
        for k, v in by_u.items():
            coeffs[k[0]] = _as_upoly(v, w.param)
        out.append(coeffs)
    return out


def _resultant_in_t(a, b, d):
    """Res_u(a, b) with formal u-degree ``d``, as a polynomial in t."""
    da = max((U.deg(c) for c in a), default=0)
    db = max((U.deg(c) for c in b), default=0)
    bound = d * (max(da, 0) + max(db, 0))
    xs = list(range(bound + 1))
    ys = []
    for x in xs:
        ua = [U.evaluate(c, x) if c else 0 for c in a]
        ub = [U.evaluate(c, x) if c else 0 for c in b]
        ys.append(U.sylvester_resultant(ua, ub, d, d))
    return U.interpolate(xs, ys)


def _combine(rows, weights):
    out = [[] for _ in range(max(len(r) for r in rows))]
    for r, c in zip(rows, weights):
        for k, coeff in enumerate(r):
            out[k] = U.add(out[k], U.scale(coeff, c)) if coeff else out[k]
    return out


def _candidate_poly(w: ParamWriting, rng: random.Random, attempts: int = 5):
    """Square-free polynomial whose roots contain every drop point, plus the line used."""
    d = writing_degree(w)
    m = len(w.x_names)
    for _ in range(attempts):
        point = [rng.randint(-LINE_BOUND, LINE_BOUND) for _ in range(m)]
        direction = [rng.randint(-LINE_BOUND, LINE_BOUND) for _ in range(m)]
        restricted = [r for r in _restrict_to_line(w, point, direction) if any(r)]
        if len(restricted) < 2:
            continue
        # random combinations: pairs of components may share a factor even
        # when the whole tuple is coprime
        combos = [_combine(restricted, [rng.randint(1, LINE_BOUND) for _ in restricted]) for _ in range(3)]
        acc = []
        for a, b in itertools.combinations(combos, 2):
            res = _resultant_in_t(a, b, d)
            if res:
                acc = U.gcd(acc, res)
                if U.deg(acc) == 0:
                    break
        if acc:
            return U.squarefree(acc), (tuple(point), tuple(direction))
    raise InvariantViolation("line restrictions share a factor for every sampled line; is the writing minimal?")


@dataclass
class DropAnalysis:
    points: list[LocusPoint]
    candidates: list
    lines: list
    warnings: list[str] = field(default_factory=list)


def _verify_candidates(w: ParamWriting, cand, Deg: int) -> list[LocusPoint]:
    points = []
    if U.deg(cand) < 1:
        return points
    roots, rest = U.split_rational_roots(cand)
    for r in roots:
        if r in w.excluded:
            continue
        try:
            _, degree = specialize(w, r)
        except CollapsePoint:
            continue
        if degree < Deg:
            points.append(LocusPoint(value=r, degree=degree))
    if U.deg(rest) >= 1:
        for factor, degree in specialize_at_root(w, rest):
            if degree is not None and degree < Deg:
                points.append(LocusPoint(minpoly=factor, degree=degree))
    return points


def _seen_by(poly, point: LocusPoint) -> bool:
    if point.value is not None:
        return U.evaluate(poly, point.value) == 0
    return not U.divmod_(poly, list(point.minpoly))[1]


def _analyze_drops(w: ParamWriting, seed: int = 0, runs: int = 2) -> DropAnalysis:
    """Candidates from independent lines, verified exactly.

    Every true drop point is a root of every line's candidate polynomial (the
    specialized components share a factor, which meets each line), while the
    remaining roots depend on the line.  The union is verified; a verified
    point missed by some line would contradict that, so it triggers an extra
    line and a warning.
    """
    Deg = writing_degree(w)
    if Deg == 0 or sum(1 for c in w.components if c) < 2:
        return DropAnalysis([], [], [])
    rng = random.Random(seed)
    polys, lines = [], []
    for _ in range(max(runs, 1)):
        poly, line = _candidate_poly(w, rng)
        polys.append(poly)
        lines.append(line)
    cand = polys[0]
    for p in polys[1:]:
        cand = U.lcm(cand, p)
    points = _verify_candidates(w, cand, Deg)
    warnings = []
    if any(not _seen_by(p, x) for p in polys for x in points):
        warnings.append("independent lines disagreed on verified drop points; ran an extra line")
        poly, line = _candidate_poly(w, rng)
        polys.append(poly)
        lines.append(line)
        extra = [x for x in _verify_candidates(w, poly, Deg) if x not in points]
        points.extend(extra)
    return DropAnalysis(points, polys, lines, warnings)


def drop_locus(w: ParamWriting, seed: int = 0, runs: int = 2) -> list[LocusPoint]:
    """Verified parameter values where the minimal writing ``w`` drops degree."""
    if not common_factor(w).is_constant():
        raise ValidationError("drop_locus expects a minimal writing; call minimal_writing first")
    return _analyze_drops(w, seed, runs).points


# ---------------------------------------------------------------- stratification


@dataclass
class DegreeProfile:
    Deg: int
    writing_degree: int
    common_factor: MultiPoly
    minimal: ParamWriting
    generic_witness: tuple[Fraction, int]
    drop_points: list[LocusPoint]
    collapse_points: list[LocusPoint]
    raw_collapse_points: list[LocusPoint]
    seed: int
    lines: list
    warnings: list[str] = field(default_factory=list)
    note: str = (
        "Drop points are verified exactly. Completeness of the list rests on the "
        "random line restrictions (Schwartz-Zippel); independent lines agreed unless a warning says otherwise."
    )

    def drop_values(self) -> dict[Fraction, int]:
        return {p.value: p.degree for p in self.drop_points if p.value is not None}


def stratify(w: ParamWriting, seed: int = 0, runs: int = 2) -> DegreeProfile:
    m = minimal_writing(w)
    Deg = writing_degree(m)
    analysis = _analyze_drops(m, seed, runs)
    for p in analysis.points:
        if p.degree >= Deg:
            raise InvariantViolation(f"drop point {p.describe(w.param)} does not drop below {Deg}")
    drops = {p.value for p in analysis.points if p.value is not None}
    rng = random.Random(seed ^ 0x9E3779B9)
    witness = None
    for _ in range(50):
        t0 = Fraction(rng.randint(-LINE_BOUND, LINE_BOUND), rng.randint(1, 7))
        if t0 in drops or t0 in m.excluded:
            continue
        _, degree = specialize(m, t0)
        if degree == Deg:
            witness = (t0, degree)
            break
    if witness is None:
        raise InvariantViolation(f"no sampled parameter value attains Deg = {Deg}")
    return DegreeProfile(
        Deg=Deg,
        writing_degree=writing_degree(w),
        common_factor=common_factor(w),
        minimal=m,
        generic_witness=witness,
        drop_points=analysis.points,
        collapse_points=collapse_points(m),
        raw_collapse_points=collapse_points(w),
        seed=seed,
        lines=analysis.lines,
        warnings=analysis.warnings,
    )


@dataclass(frozen=True)
class ScanEntry:
    value: Fraction
    degree: int | None
    status: str  # "generic", "drop", "excluded"
    raw_collapse: bool = False


@dataclass
class ScanReport:
    Deg: int
    entries: list[ScanEntry]
    violations: list[str]
    profile: DegreeProfile

    @property
    def ok(self) -> bool:
        return not self.violations


def semicontinuity_scan(w: ParamWriting, samples: Iterable, seed: int = 0, runs: int = 2,
                        profile: DegreeProfile | None = None) -> ScanReport:
    """Specialize at every sample and check ``degree <= Deg``, with equality
    off the drop locus.  Any violation raises :class:`SemicontinuityViolation`.
    """
    profile = profile or stratify(w, seed, runs)
    Deg = profile.Deg
    drops = profile.drop_values()
    raw_collapse = {p.value for p in profile.raw_collapse_points if p.value is not None}
    entries, violations = [], []
    for t0 in sorted({Fraction(s) for s in samples}):
        if t0 in profile.minimal.excluded:
            entries.append(ScanEntry(t0, None, "excluded"))
            continue
        _, degree = specialize(profile.minimal, t0)
        status = "drop" if t0 in drops else "generic"
        entries.append(ScanEntry(t0, degree, status, t0 in raw_collapse))
        if degree > Deg:
            violations.append(f"{w.param} = {t0}: degree {degree} exceeds Deg = {Deg}")
        elif status == "generic" and degree != Deg:
            violations.append(f"{w.param} = {t0}: degree {degree} < Deg = {Deg} off the computed drop locus")
        elif status == "drop" and degree != drops[t0]:
            violations.append(f"{w.param} = {t0}: degree {degree} disagrees with the drop locus ({drops[t0]})")
    report = ScanReport(Deg, entries, violations, profile)
    if violations:
        raise SemicontinuityViolation("; ".join(violations), report)
    return report


# ---------------------------------------------------------------- operations on families


def _same_family_space(w1: ParamWriting, w2: ParamWriting):
    if w1.n != w2.n or w1.param != w2.param or w1.ctx != w2.ctx:
        raise ValidationError("families must share dimension, coordinates and parameter")


def family_compose(w1: ParamWriting, w2: ParamWriting) -> ParamWriting:
    """Writing of ``t -> w1_t o w2_t``, made minimal."""
    _same_family_space(w1, w2)
    binding = dict(zip(w1.x_names, w2.components))
    comps = tuple(c.substitute(binding, w1.ctx) for c in w1.components)
    if not any(comps):
        raise ComposedToZero("family composition vanishes identically over QQ(t)")
    prov = f"composite of [{w1.provenance or 'family'}] after [{w2.provenance or 'family'}]"
    excluded = set(w1.excluded) | set(w2.excluded)
    return minimal_writing(ParamWriting(w1.n, w1.param, comps, prov, tuple(sorted(excluded))))


def reparameterize(w: ParamWriting, mobius: Sequence[object]) -> ParamWriting:
    """Substitute ``t = (a s + b) / (c s + d)`` and clear denominators.

    The new parameter keeps the old name.  When ``c != 0`` the pole
    ``s = -d/c`` (the image of ``t = oo``) is recorded as excluded.
    """
    a, b, c, d = (Fraction(x) for x in mobius)
    if a * d - b * c == 0:
        raise DegenerateMobius(f"ad - bc = 0 for ({a}, {b}, {c}, {d})")
    ctx = w.ctx
    t = MultiPoly.var(ctx, w.param)
    num = t * a + b
    den = t * c + d
    top = _t_degree(w)
    num_pows = [MultiPoly.one(ctx)]
    den_pows = [MultiPoly.one(ctx)]
    for _ in range(top):
        num_pows.append(num_pows[-1] * num)
        den_pows.append(den_pows[-1] * den)
    comps = []
    for comp in w.components:
        acc = MultiPoly.zero(ctx)
        for key, part in comp.coefficients_in([w.param]).items():
            k = key[0]
            acc = acc + part * num_pows[k] * den_pows[top - k]
        comps.append(acc)
    excluded = set()
    if c:
        excluded.add(-d / c)
    for e in w.excluded:
        # s with (a s + b)/(c s + d) = e
        denom = a - c * e
        if denom:
            excluded.add((d * e - b) / denom)
    prov = f"{w.provenance or 'family'}, reparameterized by {w.param} -> ({a}*{w.param} + {b})/({c}*{w.param} + {d})"
    return ParamWriting(w.n, w.param, _canonical_scale(comps), prov, tuple(sorted(excluded)))


# ---------------------------------------------------------------- built-in families


def nodal_cubic_family(n: int = 2, param: str = "s") -> ParamWriting:
    """Family over the nodal cubic ``a^3 + b^3 - abc = 0`` in its rational
    parameterization ``(a : b : c) = (s : s^2 : 1 + s^3)``; the node is at s = 0.

    Raw writing ``(x0 f' : x1 g' : x2 f' : ... : xn f')`` of degree 3 with
    ``f' = ab^2 x0^2 + (a^3+b^3) x0 x2 + a^2 b x2^2`` and
    ``g' = ab(a+b) x0^2 + (ab^2+a^3+b^3) x0 x2 + a^2 b x2^2``.
    """
    if n < 2:
        raise ValidationError("the nodal cubic family needs n >= 2")
    ctx = VariableContext.projective(n, (param,))
    s = MultiPoly.var(ctx, param)
    a, b = s, s ** 2
    x = [MultiPoly.var(ctx, f"x{i}") for i in range(n + 1)]
    fp = a * b ** 2 * x[0] ** 2 + (a ** 3 + b ** 3) * x[0] * x[2] + a ** 2 * b * x[2] ** 2
    gp = a * b * (a + b) * x[0] ** 2 + (a * b ** 2 + a ** 3 + b ** 3) * x[0] * x[2] + a ** 2 * b * x[2] ** 2
    comps = [x[0] * fp, x[1] * gp] + [x[i] * fp for i in range(2, n + 1)]
    prov = f"pullback of the nodal-cubic family along {param} -> ({param} : {param}^2 : 1+{param}^3)"
    return new_writing(n, comps, param=param, provenance=prov)


def degeneration_family(param: str = "t") -> ParamWriting:
    """``(x0^2 : x0 x1 : x2 (x0 + t x1))``: quadratic for t != 0, identity at 0."""
    return new_writing(2, ["x0^2", "x0*x1", f"x2*(x0 + {param}*x1)"], param=param,
                       provenance="degree-2 de Jonquieres maps specializing to the identity at 0")


def identity_family(n: int = 2, param: str = "t") -> ParamWriting:
    return new_writing(n, [f"x{i}" for i in range(n + 1)], param=param, provenance="constant identity family")


def constant_family(f: RationalMapPn, param: str = "t") -> ParamWriting:
    return new_writing(f.n, list(f.components), param=param, x_names=f.ctx.names,
                       provenance="constant family")


def linear_pencil(a0: Sequence[Sequence[object]], a1: Sequence[Sequence[object]], param: str = "t") -> ParamWriting:
    """Linear maps with matrix ``a0 + t a1``."""
    n = len(a0) - 1
    ctx = VariableContext.projective(n, (param,))
    t = MultiPoly.var(ctx, param)
    xs = [MultiPoly.var(ctx, f"x{i}") for i in range(n + 1)]
    comps = []
    for r0, r1 in zip(a0, a1):
        acc = MultiPoly.zero(ctx)
        for p, q, x in zip(r0, r1, xs):
            acc = acc + x * (t * Fraction(q) + Fraction(p))
        comps.append(acc)
    return new_writing(n, comps, param=param, provenance="linear pencil a0 + t*a1")


def sigma_ell_family(h: ParamWriting, ell: int) -> ParamWriting:
    """Apply ``sigma_ell`` memberwise to a family ``h`` of maps of P^{n-1}.

    The members of ``h`` are read positionally as maps in ``x1..xn``.
    """
    n = h.n + 1
    ctx = VariableContext.projective(n, (h.param,))
    binding = {old: MultiPoly.var(ctx, f"x{i + 1}") for i, old in enumerate(h.x_names)}
    hs = [c.substitute(binding, ctx) for c in h.components]
    xs = [MultiPoly.var(ctx, f"x{i}") for i in range(1, n + 1)]
    comps = sigma_components(hs, ell, MultiPoly.var(ctx, "x0"), xs)
    prov = f"sigma_{ell} of [{h.provenance or 'family'}]"
    return new_writing(n, comps, param=h.param, provenance=prov, excluded=h.excluded)
