"""Rational self-maps of projective space given by homogeneous tuples.

A map ``f = (f_0 : ... : f_n)`` of P^n is stored as ``n+1`` homogeneous
polynomials of one common degree in its coordinate context (``x0..xn`` by
default).  The *degree* of ``f`` is the common degree after the components have
been divided by their gcd.

Inversion of general Cremona maps is not attempted.  Birationality is always
certified by a supplied inverse (:func:`verify_mutual_inverse`); the closed-form
classes (linear maps, the standard quadratic involution) come with inverses.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import _kernel as K
from .errors import (
    AllZero,
    ComposedToZero,
    ContextMismatch,
    DegreeMismatch,
    NotHomogeneous,
    NotInversePair,
    NotLinear,
    SingularMatrix,
    ValidationError,
)
from .polyring import MultiPoly, VariableContext, gcd_many, parse_poly


class RationalMapPn:
    """Immutable tuple ``(f_0 : ... : f_n)``; build with :func:`new_map`."""

    __slots__ = ("ctx", "components", "normalized", "_degree_raw")

    def __init__(self, ctx: VariableContext, components: tuple[MultiPoly, ...], normalized: bool = False):
        self.ctx = ctx
        self.components = components
        self.normalized = normalized
        self._degree_raw = max(c.total_degree() for c in components)

    @property
    def n(self) -> int:
        return len(self.ctx) - 1

    @property
    def raw_degree(self) -> int:
        """Common degree of the stored components (before gcd removal)."""
        return self._degree_raw

    @property
    def degree(self) -> int:
        return degree(self)

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def __eq__(self, other):
        """Term-wise equality of the stored tuples; see :func:`maps_equal`."""
        if not isinstance(other, RationalMapPn):
            return NotImplemented
        return self.ctx == other.ctx and self.components == other.components

    def __hash__(self):
        return hash((self.ctx, self.components))

    def __str__(self):
        return "(" + " : ".join(str(c) for c in self.components) + ")"

    def __repr__(self):
        return f"RationalMapPn{self}"

    def __matmul__(self, other: "RationalMapPn") -> "RationalMapPn":
        return compose(self, other)


def _context_for(n: int, components) -> VariableContext:
    ctxs = {c.ctx for c in components if isinstance(c, MultiPoly)}
    if len(ctxs) == 1:
        ctx = ctxs.pop()
        if len(ctx) == n + 1:
            return ctx
    return VariableContext.projective(n)


def new_map(n: int, components: Sequence[MultiPoly | str], ctx: VariableContext | None = None) -> RationalMapPn:
    """Validate ``n+1`` components (polynomials or strings) into a map of P^n."""
    comps = list(components)
    if len(comps) != n + 1:
        raise ValidationError(f"a map of P^{n} needs {n + 1} components, got {len(comps)}")
    if ctx is None:
        ctx = _context_for(n, comps)
    if len(ctx) != n + 1:
        raise ContextMismatch(f"coordinate context {ctx} does not have {n + 1} variables")
    polys = []
    for i, c in enumerate(comps):
        if isinstance(c, str):
            c = parse_poly(c, ctx)
        elif c.ctx != ctx:
            c = c.to_context(ctx)
        polys.append(c)
    degs = set()
    for i, c in enumerate(polys):
        if not c.is_homogeneous():
            raise NotHomogeneous(f"component {i} is not homogeneous: {c}")
        if c:
            degs.add(c.total_degree())
    if not degs:
        raise AllZero("all components are zero")
    if len(degs) > 1:
        raise DegreeMismatch(f"components have different degrees {sorted(degs)}")
    return RationalMapPn(ctx, tuple(polys))


def _canonical_scale(polys: Sequence[MultiPoly]) -> tuple[MultiPoly, ...]:
    """Common rational multiple with integer coefficients, joint content 1 and
    positive lex-leading coefficient on the first nonzero component."""
    import math

    den = 1
    for p in polys:
        d = p.integer_parts()[1]
        den = den * d // math.gcd(den, d)
    scaled = [p * den for p in polys]
    g = 0
    for p in scaled:
        g = math.gcd(g, K.ZZ.base_content(p.integer_parts()[0]))
    first = next(p for p in scaled if p)
    if first.leading_term()[1] < 0:
        g = -g
    return tuple(p * Fraction(1, g) for p in scaled)


def normalize(f: RationalMapPn) -> RationalMapPn:
    """Divide out the gcd of the components and fix a canonical scalar."""
    if f.normalized:
        return f
    g = gcd_many(f.components)
    comps = f.components
    if not g.is_constant():
        comps = tuple(c / g for c in comps)
    return RationalMapPn(f.ctx, _canonical_scale(comps), normalized=True)


def degree(f: RationalMapPn) -> int:
    return normalize(f).raw_degree


def identity_map(n: int, ctx: VariableContext | None = None) -> RationalMapPn:
    ctx = ctx or VariableContext.projective(n)
    return RationalMapPn(ctx, tuple(MultiPoly.var(ctx, v) for v in ctx.names), normalized=True)


def _same_space(f: RationalMapPn, g: RationalMapPn):
    if f.ctx != g.ctx:
        raise ContextMismatch(f"maps act on different coordinate systems ({f.ctx}) and ({g.ctx})")


def compose(f: RationalMapPn, g: RationalMapPn) -> RationalMapPn:
    """``f o g``: substitute the components of ``g`` into ``f`` and normalize."""
    _same_space(f, g)
    g = normalize(g)
    binding = dict(zip(f.ctx.names, g.components))
    comps = tuple(c.substitute(binding) for c in normalize(f).components)
    if not any(comps):
        raise ComposedToZero("composition vanishes identically: the image of the inner map lies in the base locus of the outer one")
    return normalize(RationalMapPn(f.ctx, comps))


def _cross_products_vanish(a: Sequence[MultiPoly], b: Sequence[MultiPoly], indices) -> bool:
    for i, j in itertools.combinations(indices, 2):
        if a[i] * b[j] != a[j] * b[i]:
            return False
    return True


def is_identity(f: RationalMapPn) -> bool:
    """``x_j f_i == x_i f_j`` for all pairs of indices."""
    xs = identity_map(f.n, f.ctx).components
    return _cross_products_vanish(f.components, xs, range(f.n + 1))


def maps_equal(f: RationalMapPn, g: RationalMapPn) -> bool:
    """Projective equality of tuples, blind to scalars and common factors."""
    _same_space(f, g)
    return _cross_products_vanish(f.components, g.components, range(f.n + 1))


def jacobian(f: RationalMapPn) -> MultiPoly:
    """Determinant of the matrix of partials ``d f_i / d x_j``."""
    names = f.ctx.names
    mat = [[c.derivative(v) for v in names] for c in f.components]
    return _det(mat, MultiPoly.one(f.ctx))


def _det(mat, one):
    n = len(mat)
    if n == 1:
        return mat[0][0]
    # Laplace along the first row; sizes here are at most a handful.
    total = one * 0
    for j in range(n):
        if not mat[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * _det(minor, one)
        total = total + term if j % 2 == 0 else total - term
    return total


def is_dominant_candidate(f: RationalMapPn) -> bool:
    return not jacobian(f).is_zero()


@dataclass(frozen=True)
class InverseCheck:
    ok: bool
    diagnostic: str | None = None

    def __bool__(self):
        return self.ok


def verify_mutual_inverse(f: RationalMapPn, g: RationalMapPn) -> InverseCheck:
    """Both composites must be the identity; composition failures give False."""
    try:
        if not is_identity(compose(f, g)):
            return InverseCheck(False, "f o g is not the identity")
        if not is_identity(compose(g, f)):
            return InverseCheck(False, "g o f is not the identity")
    except ComposedToZero as exc:
        return InverseCheck(False, str(exc))
    return InverseCheck(True)


# ---------------------------------------------------------------- constructors


def linear_map(matrix: Sequence[Sequence[object]], ctx: VariableContext | None = None) -> RationalMapPn:
    """``f_i = sum_j A[i][j] x_j``."""
    n = len(matrix) - 1
    if any(len(row) != n + 1 for row in matrix):
        raise ValidationError("matrix must be square")
    ctx = ctx or VariableContext.projective(n)
    xs = [MultiPoly.var(ctx, v) for v in ctx.names]
    comps = []
    for row in matrix:
        acc = MultiPoly.zero(ctx)
        for a, x in zip(row, xs):
            a = Fraction(a)
            if a:
                acc = acc + x * a
        comps.append(acc)
    return new_map(n, comps, ctx)


def matrix_of(f: RationalMapPn) -> list[list[Fraction]]:
    """Coefficient matrix of a degree-1 map (after normalization)."""
    f = normalize(f)
    if f.raw_degree != 1:
        raise NotLinear(f"map has degree {f.raw_degree}, not 1")
    m = f.n + 1
    rows = []
    for c in f.components:
        row = []
        for j in range(m):
            e = [0] * m
            e[j] = 1
            row.append(c.coefficient(e))
        rows.append(row)
    return rows


def _fraction_det(m):
    from .upoly import det_bareiss

    return det_bareiss([[Fraction(x) for x in row] for row in m])


def invert_linear(f: RationalMapPn) -> RationalMapPn:
    """Inverse of a linear map via the adjugate matrix."""
    a = matrix_of(f)
    m = len(a)
    if _fraction_det(a) == 0:
        raise SingularMatrix("linear map has zero determinant")
    adj = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(a) if k != i]
            cof = _fraction_det(minor) if minor else Fraction(1)
            adj[j][i] = cof if (i + j) % 2 == 0 else -cof
    return normalize(linear_map(adj, f.ctx))


def standard_quadratic(ctx: VariableContext | None = None) -> RationalMapPn:
    """The involution ``(x1 x2 : x0 x2 : x0 x1)`` of the projective plane."""
    ctx = ctx or VariableContext.projective(2)
    x0, x1, x2 = (MultiPoly.var(ctx, v) for v in ctx.names)
    return new_map(2, [x1 * x2, x0 * x2, x0 * x1], ctx)


def evaluate(f: RationalMapPn, point: Sequence[object]) -> tuple[Fraction, ...]:
    """Image of a point, scaled so the first nonzero coordinate is 1."""
    vals = [c.evaluate(point) for c in normalize(f).components]
    lead = next((v for v in vals if v), None)
    if lead is None:
        raise ComposedToZero(f"point {tuple(point)} lies in the base locus")
    return tuple(v / lead for v in vals)


# ---------------------------------------------------------------- dynamics


@dataclass(frozen=True)
class DegreeSequence:
    base: RationalMapPn
    entries: tuple[tuple[int, int], ...]

    @property
    def degrees(self) -> list[int]:
        return [d for _, d in self.entries]


def _powers(f: RationalMapPn, M: int):
    f = normalize(f)
    g = f
    yield 1, g
    for m in range(2, M + 1):
        try:
            g = compose(f, g)
        except ComposedToZero as exc:
            raise ComposedToZero("power vanishes identically", power=m) from exc
        yield m, g


def power_degree_sequence(f: RationalMapPn, M: int) -> DegreeSequence:
    """Degrees of ``f, f^2, ..., f^M`` by iterated composition."""
    if M < 1:
        raise ValidationError("M must be at least 1")
    return DegreeSequence(f, tuple((m, g.raw_degree) for m, g in _powers(f, M)))


GROWTH_NOTE = (
    "Observation up to horizon M={M}, not a proof. The cyclic subgroup generated by f is "
    "closed exactly when f has finite order or deg(f^m) tends to infinity."
)
GROWTH_NOTE_P2 = (
    " On the projective plane an infinite-order map has either bounded degree sequence "
    "(then it is conjugate to a linear map and the subgroup is not closed) or degrees "
    "growing at least linearly."
)


@dataclass(frozen=True)
class GrowthReport:
    classification: str  # "finite-order", "bounded-observed", "strictly-growing-observed"
    evidence: DegreeSequence
    order: int | None = None
    horizon: int = 0
    note: str = field(default="", compare=False)

    @property
    def label(self) -> str:
        if self.classification == "finite-order":
            return f"finite-order({self.order})"
        return self.classification


def cyclic_growth_report(f: RationalMapPn, M: int) -> GrowthReport:
    """Classify the degree behaviour of the powers of ``f`` up to ``f^M``.

    ``finite-order(k)`` is certified: ``f^k`` passed :func:`is_identity`.  The
    other two labels are observations: growing when the largest degree in the
    second half of the window beats every degree of the first half.
    """
    if M < 2:
        raise ValidationError("M must be at least 2")
    entries = []
    order = None
    for m, g in _powers(f, M):
        entries.append((m, g.raw_degree))
        if is_identity(g):
            order = m
            break
    seq = DegreeSequence(f, tuple(entries))
    note = GROWTH_NOTE.format(M=M) + (GROWTH_NOTE_P2 if f.n == 2 else "")
    if order is not None:
        note = f"f^{order} is the identity (verified exactly)."
        return GrowthReport("finite-order", seq, order=order, horizon=M, note=note)
    degs = seq.degrees
    half = len(degs) // 2
    growing = max(degs[half:]) > max(degs[:half])
    label = "strictly-growing-observed" if growing else "bounded-observed"
    return GrowthReport(label, seq, horizon=M, note=note)


def conjugate(f: RationalMapPn, F: RationalMapPn, F_inv: RationalMapPn) -> RationalMapPn:
    """``F_inv o f o F`` after checking that ``(F, F_inv)`` are inverse."""
    check = verify_mutual_inverse(F, F_inv)
    if not check:
        raise NotInversePair(check.diagnostic or "maps are not mutually inverse")
    return compose(F_inv, compose(f, F))
