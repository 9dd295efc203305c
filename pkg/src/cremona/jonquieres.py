"""Maps preserving the lines through ``o = (1:0:...:0)``.

``pi`` is the projection of center ``o``, ``(x0 : ... : xn) -> (x1 : ... : xn)``.
``Jon`` collects the maps with ``pi f = pi``; ``Star`` those for which
``pi f = tau pi`` for some map ``tau`` of P^{n-1}, and ``rho(f) = tau``.  The
sections ``sigma_ell`` embed maps of P^{n-1} back into ``Star``.

Maps of P^{n-1} use the coordinates ``x1..xn`` so that they read as the
second factor of ``pi``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .birmap import RationalMapPn, maps_equal, new_map, normalize
from .errors import InconsistentStarCertificate, NotInStar, ValidationError
from .polyring import MultiPoly, VariableContext, gcd_many


def base_context(n: int) -> VariableContext:
    """Coordinates ``x1..xn`` of the target of ``pi``."""
    return VariableContext.projective(n - 1, start=1)


@dataclass(frozen=True)
class ProjectionPi:
    n: int

    @property
    def components(self) -> tuple[MultiPoly, ...]:
        ctx = VariableContext.projective(self.n)
        return tuple(MultiPoly.var(ctx, f"x{i}") for i in range(1, self.n + 1))

    def after(self, f: RationalMapPn) -> tuple[MultiPoly, ...]:
        """Components of ``pi o f``."""
        return f.components[1:]


def _require(f: RationalMapPn):
    if f.n < 2:
        raise ValidationError("de Jonquieres structure needs n >= 2")
    if f.ctx != VariableContext.projective(f.n):
        raise ValidationError(f"expected coordinates x0..x{f.n}, got ({f.ctx})")


def in_jon(f: RationalMapPn) -> bool:
    """``pi f = pi``: ``(f_1 : ... : f_n)`` equals ``(x1 : ... : xn)``."""
    _require(f)
    xs = [MultiPoly.var(f.ctx, v) for v in f.ctx.names]
    for i, j in itertools.combinations(range(1, f.n + 1), 2):
        if xs[j] * f[i] != xs[i] * f[j]:
            return False
    return True


@dataclass(frozen=True)
class StarMembership:
    member: bool
    quotient: RationalMapPn | None = None
    certificate: tuple[tuple[int, int], ...] = field(default=())
    failed_pair: tuple[int, int] | None = None

    def __bool__(self):
        return self.member


def _doubled(f: RationalMapPn):
    """Components ``f_1..f_n`` in ``(x0..xn, y0)`` and the same with ``x0 -> y0``."""
    ctx2 = VariableContext(f.ctx.names + ("y0",))
    lifted = [c.to_context(ctx2) for c in f.components[1:]]
    y0 = MultiPoly.var(ctx2, "y0")
    swapped = [c.substitute({"x0": y0}) for c in lifted]
    return lifted, swapped


def in_star(f: RationalMapPn) -> StarMembership:
    """Decide whether ``(f_1 : ... : f_n)`` factors through ``pi``.

    The ratio ``f_i / f_j`` must not depend on ``x0``; with a fresh variable
    ``y0`` that is the identity ``f_i(x0,x') f_j(y0,x') = f_j(x0,x') f_i(y0,x')``.
    """
    _require(f)
    lifted, swapped = _doubled(f)
    checked = []
    for i, j in itertools.combinations(range(f.n), 2):
        if lifted[i] * swapped[j] != lifted[j] * swapped[i]:
            return StarMembership(False, failed_pair=(i + 1, j + 1))
        checked.append((i + 1, j + 1))
    return StarMembership(True, quotient=_quotient(f), certificate=tuple(checked))


def _quotient(f: RationalMapPn) -> RationalMapPn:
    tail = f.components[1:]
    g = gcd_many(tail)
    reduced = [c / g if not g.is_constant() else c for c in tail]
    for c in reduced:
        if c and not c.free_of("x0"):
            raise InconsistentStarCertificate(
                f"x0 survives in the quotient after removing gcd {g}: {c}"
            )
    ctx = base_context(f.n)
    return normalize(new_map(f.n - 1, [c.to_context(ctx) for c in reduced], ctx))


def rho(f: RationalMapPn) -> RationalMapPn:
    """The induced map of P^{n-1}; only defined on ``Star``."""
    if not in_star(f).member:
        raise NotInStar("map does not permute the lines through o; rho is undefined")
    return _quotient(f)


def _coerce_base(h: RationalMapPn) -> RationalMapPn:
    """Rename the coordinates of ``h`` positionally to ``x1..xn``."""
    ctx = base_context(h.n + 1)
    if h.ctx == ctx:
        return h
    binding = {name: MultiPoly.var(ctx, new) for name, new in zip(h.ctx.names, ctx.names)}
    return new_map(h.n, [c.substitute(binding, ctx) for c in h.components], ctx)


def sigma_components(h_components, ell: int, x0, xs):
    """Raw tuple ``(x0 h_ell : x_ell h_1 : ... : x_ell h_n)``.

    Works for any coefficient ring, so families use it too; ``xs`` are the
    coordinates ``x1..xn`` already lifted to the components' context.
    """
    n = len(h_components)
    if not 1 <= ell <= n:
        raise ValidationError(f"ell must lie in 1..{n}")
    x_ell = xs[ell - 1]
    return [x0 * h_components[ell - 1]] + [x_ell * c for c in h_components]


def sigma_ell(h: RationalMapPn, ell: int) -> RationalMapPn:
    """Embed a map of P^{n-1} into ``Star`` of P^n."""
    h = _coerce_base(h)
    n = h.n + 1
    ctx = VariableContext.projective(n)
    hs = [c.to_context(ctx) for c in h.components]
    xs = [MultiPoly.var(ctx, f"x{i}") for i in range(1, n + 1)]
    comps = sigma_components(hs, ell, MultiPoly.var(ctx, "x0"), xs)
    return normalize(new_map(n, comps, ctx))


def in_image_sigma_ell(f: RationalMapPn, ell: int) -> bool:
    """``f`` lies in ``Star`` and equals ``sigma_ell(rho(f))``."""
    s = in_star(f)
    if not s.member:
        return False
    return maps_equal(f, sigma_ell(s.quotient, ell))


def jon_degree_conditions(f: RationalMapPn) -> dict[str, bool]:
    """Shape test for ``Jon`` candidates: ``f_i = x_i q`` for ``i > 0``, with
    ``f_0`` and ``q`` of degree at most one in ``x0`` and ``f_0 q`` involving
    ``x0``.  Diagnostic only; :func:`in_jon` is the membership test.
    """
    _require(f)
    f = normalize(f)
    x1 = MultiPoly.var(f.ctx, "x1")
    try:
        q = f[1] / x1
    except ArithmeticError:
        return {"a": False, "b": False, "c": False}
    a = all(f[i] == MultiPoly.var(f.ctx, f"x{i}") * q for i in range(1, f.n + 1))

    def x0deg(p):
        return p.degree_in("x0") if p else 0

    b = x0deg(f[0]) <= 1 and x0deg(q) <= 1
    prod = f[0] * q
    c = bool(prod) and x0deg(prod) >= 1
    return {"a": a, "b": b, "c": c}


def jonquieres_element(a: MultiPoly, b: MultiPoly, c: MultiPoly) -> RationalMapPn:
    """The ``Jon`` element ``(a x0 + b : c x1 : ... : c xn)``.

    ``a, b, c`` are forms in ``x1..xn`` (given in the context ``x0..xn``) with
    ``deg b = deg a + 1 = deg c + 1``; the map is birational when ``a`` and
    ``c`` are nonzero, acting on each line through ``o`` by a Moebius map of
    the ``x0`` coordinate.
    """
    ctx = a.ctx
    n = len(ctx) - 1
    x0 = MultiPoly.var(ctx, "x0")
    comps = [a * x0 + b] + [c * MultiPoly.var(ctx, f"x{i}") for i in range(1, n + 1)]
    return normalize(new_map(n, comps, ctx))
