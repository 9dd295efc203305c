"""Exact sparse multivariate polynomials over the rationals.

A :class:`MultiPoly` lives in a :class:`VariableContext` (an ordered tuple of
variable names) and maps exponent tuples to rational coefficients.  Zero
coefficients are never stored, so two polynomials are equal exactly when their
term mappings are equal.

Internally a polynomial is an integer term dictionary plus one positive common
denominator in lowest terms; the hot loops therefore only touch Python ints.
``terms`` exposes the rational view.

Text form: terms joined by ``+``/``-``, each an optional rational coefficient
and ``*``-joined powers, e.g. ``3/2*x0^2*x1 - x2``.  Parentheses and integer
powers of parenthesized expressions are accepted on input; output is always
the flat canonical form in graded-lex order.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import _kernel as K
from .errors import ContextMismatch, EmptyList, ParseError, ZeroPolynomial

ExactScalar = Fraction

_NAME_RE = re.compile(r"[a-z][a-z0-9]*\Z")


@dataclass(frozen=True)
class VariableContext:
    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ContextMismatch(f"duplicate variable names in {names}")
        for name in names:
            if not _NAME_RE.match(name):
                raise ContextMismatch(f"invalid variable name {name!r}")

    @classmethod
    def projective(cls, n: int, extra: Sequence[str] = (), start: int = 0) -> "VariableContext":
        """Context ``x{start} .. x{start+n}`` followed by ``extra`` names."""
        return cls(tuple(f"x{i}" for i in range(start, start + n + 1)) + tuple(extra))

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self.names

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ContextMismatch(f"variable {name!r} is not in context {self.names}") from None

    def indices(self, names: Iterable[str] | None) -> tuple[int, ...]:
        if names is None:
            return tuple(range(len(self.names)))
        return tuple(self.index(v) for v in names)

    def __str__(self):
        return ",".join(self.names)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact scalar: {c!r}")


class MultiPoly:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("ctx", "_num", "_den", "_hash")

    def __init__(self, ctx: VariableContext, terms: Mapping[tuple[int, ...], object] | None = None):
        nv = len(ctx)
        fracs = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != nv or any(x < 0 for x in e):
                raise ContextMismatch(f"exponent {e} does not fit context {ctx.names}")
            c = _as_fraction(c)
            if c:
                fracs[e] = fracs.get(e, 0) + c
        den = 1
        for c in fracs.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = {e: int(c * den) for e, c in fracs.items() if c}
        self._set(ctx, num, den)

    def _set(self, ctx, num, den):
        self.ctx = ctx
        self._num = num
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, ctx: VariableContext, num: dict, den: int = 1) -> "MultiPoly":
        if den < 0:
            num = {e: -c for e, c in num.items()}
            den = -den
        if den != 1 and num:
            g = den
            for c in num.values():
                g = math.gcd(g, c)
                if g == 1:
                    break
            if g != 1:
                num = {e: c // g for e, c in num.items()}
                den //= g
        elif not num:
            den = 1
        p = cls.__new__(cls)
        p._set(ctx, num, den)
        return p

    # ------------------------------------------------------------ builders

    @classmethod
    def zero(cls, ctx: VariableContext) -> "MultiPoly":
        return cls._raw(ctx, {})

    @classmethod
    def constant(cls, ctx: VariableContext, c) -> "MultiPoly":
        c = _as_fraction(c)
        if not c:
            return cls.zero(ctx)
        return cls._raw(ctx, {(0,) * len(ctx): c.numerator}, c.denominator)

    @classmethod
    def one(cls, ctx: VariableContext) -> "MultiPoly":
        return cls.constant(ctx, 1)

    @classmethod
    def var(cls, ctx: VariableContext, name: str) -> "MultiPoly":
        e = [0] * len(ctx)
        e[ctx.index(name)] = 1
        return cls._raw(ctx, {tuple(e): 1})

    @classmethod
    def parse(cls, text: str, ctx: VariableContext | None = None) -> "MultiPoly":
        return parse_poly(text, ctx)

    # ------------------------------------------------------------ views

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return {e: Fraction(c, self._den) for e, c in self._num.items()}

    def integer_parts(self) -> tuple[dict[tuple[int, ...], int], int]:
        """(integer numerator term dict, positive common denominator)."""
        return dict(self._num), self._den

    def __len__(self):
        return len(self._num)

    def __bool__(self):
        return bool(self._num)

    def is_zero(self) -> bool:
        return not self._num

    def is_constant(self) -> bool:
        return not self._num or K.is_constant(self._num)

    def constant_value(self) -> Fraction:
        if not self._num:
            return Fraction(0)
        if not K.is_constant(self._num):
            raise ValueError("polynomial is not constant")
        return Fraction(next(iter(self._num.values())), self._den)

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return Fraction(self._num.get(tuple(exponent), 0), self._den)

    def variables(self) -> tuple[str, ...]:
        """Names of the variables that actually occur, in context order."""
        used = K.used_vars(self._num)
        return tuple(n for i, n in enumerate(self.ctx.names) if i in used)

    def free_of(self, name: str) -> bool:
        i = self.ctx.index(name)
        return all(e[i] == 0 for e in self._num)

    def leading_term(self) -> tuple[tuple[int, ...], Fraction]:
        """Lex-leading exponent and coefficient (context order)."""
        if not self._num:
            raise ZeroPolynomial("the zero polynomial has no leading term")
        e = max(self._num)
        return e, Fraction(self._num[e], self._den)

    # ------------------------------------------------------------ arithmetic

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"contexts differ: ({self.ctx}) vs ({other.ctx})")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.ctx, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o._num:
            return self
        if not self._num:
            return o
        d = self._den * o._den // math.gcd(self._den, o._den)
        a = self._num if d == self._den else K.scale(self._num, d // self._den)
        b = o._num if d == o._den else K.scale(o._num, d // o._den)
        return MultiPoly._raw(self.ctx, K.add(a, b), d)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.ctx, {e: -c for e, c in self._num.items()}, self._den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return MultiPoly._raw(self.ctx, K.scale(self._num, c.numerator), self._den * c.denominator)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return MultiPoly._raw(self.ctx, K.mul(self._num, o._num), self._den * o._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return divide_exact(self, other)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        return MultiPoly._raw(self.ctx, K.power(self._num, n, len(self.ctx)), self._den ** n)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(self.ctx, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ctx == other.ctx and self._den == other._den and self._num == other._num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, self._den, frozenset(self._num.items())))
        return self._hash

    # ------------------------------------------------------------ degrees

    def total_degree(self, vars: Iterable[str] | None = None):
        """Maximal summed exponent over ``vars``; ``-inf`` for zero."""
        if not self._num:
            return -math.inf
        idx = self.ctx.indices(vars)
        return max(sum(e[i] for i in idx) for e in self._num)

    def degree_in(self, name: str) -> int:
        if not self._num:
            raise ZeroPolynomial("degree of the zero polynomial")
        return K.deg_in(self._num, self.ctx.index(name))

    def is_homogeneous(self, vars: Iterable[str] | None = None) -> bool:
        idx = self.ctx.indices(vars)
        degs = {sum(e[i] for i in idx) for e in self._num}
        return len(degs) <= 1

    # ------------------------------------------------------------ structure

    def coefficients_in(self, vars: Iterable[str]) -> dict[tuple[int, ...], "MultiPoly"]:
        """Group by the exponents of ``vars``; values keep the full context."""
        idx = self.ctx.indices(vars)
        groups: dict[tuple[int, ...], dict] = {}
        for e, c in self._num.items():
            key = tuple(e[i] for i in idx)
            rest = list(e)
            for i in idx:
                rest[i] = 0
            groups.setdefault(key, {})[tuple(rest)] = c
        return {k: MultiPoly._raw(self.ctx, v, self._den) for k, v in groups.items()}

    def derivative(self, name: str) -> "MultiPoly":
        i = self.ctx.index(name)
        num = {}
        for e, c in self._num.items():
            if e[i]:
                num[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return MultiPoly._raw(self.ctx, num, self._den)

    def to_context(self, ctx: VariableContext) -> "MultiPoly":
        """Re-express in ``ctx``; every occurring variable must exist there."""
        if ctx == self.ctx:
            return self
        used = K.used_vars(self._num)
        pos = {}
        for i in used:
            pos[i] = ctx.index(self.ctx.names[i])
        nv = len(ctx)
        num = {}
        for e, c in self._num.items():
            f = [0] * nv
            for i in used:
                f[pos[i]] = e[i]
            num[tuple(f)] = c
        return MultiPoly._raw(ctx, num, self._den)

    def primitive(self) -> "MultiPoly":
        """Integer-coefficient, content-1 multiple with positive lex-leading coefficient."""
        if not self._num:
            return self
        return MultiPoly._raw(self.ctx, _primitive_raw(self._num))

    def substitute(self, bindings: Mapping[str, object], ctx: VariableContext | None = None) -> "MultiPoly":
        return substitute(self, bindings, ctx)

    def evaluate(self, point: Mapping[str, object] | Sequence[object]) -> Fraction:
        if not isinstance(point, Mapping):
            point = dict(zip(self.ctx.names, point))
        vals = [Fraction(point[n]) if n in point else None for n in self.ctx.names]
        total = Fraction(0)
        for e, c in self._num.items():
            t = Fraction(c)
            for i, x in enumerate(e):
                if x:
                    if vals[i] is None:
                        raise ContextMismatch(f"no value for {self.ctx.names[i]}")
                    t *= vals[i] ** x
            total += t
        return total / self._den

    # ------------------------------------------------------------ printing

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({str(self)!r}, ctx=({self.ctx}))"


def _primitive_raw(num: dict) -> dict:
    g = K.ZZ.base_content(num)
    if num[max(num)] < 0:
        g = -g
    if g != 1:
        num = {e: c // g for e, c in num.items()}
    return num


def _check_ctx(*polys: MultiPoly) -> VariableContext:
    ctx = polys[0].ctx
    for p in polys[1:]:
        if p.ctx != ctx:
            raise ContextMismatch(f"contexts differ: ({ctx}) vs ({p.ctx})")
    return ctx


# ---------------------------------------------------------------- functions


def add(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    _check_ctx(p, q)
    return p + q


def mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    _check_ctx(p, q)
    return p * q


def total_degree(p: MultiPoly, vars: Iterable[str] | None = None):
    return p.total_degree(vars)


def degree_in(p: MultiPoly, v: str) -> int:
    return p.degree_in(v)


def is_homogeneous(p: MultiPoly, vars: Iterable[str] | None = None) -> bool:
    return p.is_homogeneous(vars)


def substitute(p: MultiPoly, bindings: Mapping[str, object], ctx: VariableContext | None = None) -> MultiPoly:
    """Simultaneous substitution ``v -> bindings[v]``.

    Images are MultiPolys sharing one target context, or scalars.  Unbound
    variables keep their name and must exist in the target context (which
    defaults to the images' context, then to ``ctx`` of ``p``).
    """
    images = {}
    targets = {b.ctx for b in bindings.values() if isinstance(b, MultiPoly)}
    if ctx is None:
        if len(targets) > 1:
            raise ContextMismatch("substitution images live in different contexts")
        ctx = targets.pop() if targets else p.ctx
    elif targets and targets != {ctx}:
        raise ContextMismatch("substitution images do not live in the target context")
    for name, img in bindings.items():
        p.ctx.index(name)
        if not isinstance(img, MultiPoly):
            img = MultiPoly.constant(ctx, img)
        images[name] = img
    if not p._num:
        return MultiPoly.zero(ctx)

    used = K.used_vars(p._num)
    nv = len(ctx)
    maps = []  # (source index, raw numerator, denominator)
    for i in sorted(used):
        name = p.ctx.names[i]
        img = images.get(name)
        if img is None:
            e = [0] * nv
            e[ctx.index(name)] = 1
            maps.append((i, {tuple(e): 1}, 1))
        else:
            maps.append((i, img._num, img._den))
    top = {i: max(e[i] for e in p._num) for i in used}
    powers = {i: [{(0,) * nv: 1}] for i, _, _ in maps}
    raw_maps = {i: (num, den) for i, num, den in maps}
    zero = (0,) * nv

    def pw_of(i, k):
        pw = powers[i]
        while len(pw) <= k:
            pw.append(K.mul(pw[-1], raw_maps[i][0]))
        return pw[k]

    out: dict = {}
    get = out.get
    for e, c in p._num.items():
        term = {zero: c}
        denfix = 1
        for i in used:
            k = e[i]
            if k:
                term = K.mul(term, pw_of(i, k))
            den = raw_maps[i][1]
            if den != 1:
                denfix *= den ** (top[i] - k)
        for k, v in term.items():
            out[k] = get(k, 0) + v * denfix
    out = {k: v for k, v in out.items() if v}
    total_den = p._den
    for i in used:
        total_den *= raw_maps[i][1] ** top[i]
    return MultiPoly._raw(ctx, out, total_den)


def divide_exact(p: MultiPoly, d: MultiPoly) -> MultiPoly:
    """Return ``q`` with ``q * d == p``; raise NotDivisible otherwise."""
    _check_ctx(p, d)
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p:
        return p
    prim = _primitive_raw(d._num)
    # d = scale * prim with scale = (d._num / prim) / d._den
    e0 = next(iter(prim))
    scale = Fraction(d._num[e0], prim[e0] * d._den)
    q = K.divexact(p._num, prim)
    Q = MultiPoly._raw(p.ctx, q, p._den)
    return Q * (1 / scale)


def _normalized_raw(num: dict) -> dict:
    return _primitive_raw(num) if num else num


def gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Primitive integer gcd with positive lex-leading coefficient."""
    return gcd_many([p, q])


def gcd_many(polys: Sequence[MultiPoly]) -> MultiPoly:
    """Iterated gcd of a nonempty list; ``gcd_many([0, ..., 0]) == 0``."""
    polys = list(polys)
    if not polys:
        raise EmptyList("gcd of an empty list")
    ctx = _check_ctx(*polys)
    raws = [_normalized_raw(p._num) for p in polys if p._num]
    if not raws:
        return MultiPoly.zero(ctx)
    distinct = []
    for r in raws:
        if r not in distinct:
            distinct.append(r)
    if len(distinct) == 1:
        return MultiPoly._raw(ctx, distinct[0])
    if K.certify_coprime(distinct):
        return MultiPoly.one(ctx)
    return MultiPoly._raw(ctx, K.gcd_many(distinct))


# ---------------------------------------------------------------- text


def _natural_key(name: str):
    m = re.match(r"([a-z]+)(\d*)\Z", name)
    if m:
        return (m.group(1), int(m.group(2)) if m.group(2) else -1, name)
    return (name, -1, name)


def _monomial_str(ctx: VariableContext, e: tuple[int, ...]) -> str:
    parts = []
    for name, x in zip(ctx.names, e):
        if x == 1:
            parts.append(name)
        elif x > 1:
            parts.append(f"{name}^{x}")
    return "*".join(parts)


def format_poly(p: MultiPoly) -> str:
    """Canonical text form, terms in descending graded-lex order."""
    if not p._num:
        return "0"
    out = []
    for e in sorted(p._num, key=lambda e: (sum(e), e), reverse=True):
        c = Fraction(p._num[e], p._den)
        mono = _monomial_str(p.ctx, e)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(out)


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([a-z][a-z0-9]*)|(.))", re.S)


def _tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1):
            toks.append(("num", m.group(1), m.start(1)))
        elif m.group(2):
            toks.append(("name", m.group(2), m.start(2)))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", text, m.start(3))
            toks.append((ch, ch, m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, ctx: VariableContext):
        self.text = text
        self.ctx = ctx
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind}, found {what}", self.text, tok[2])
        self.i += 1
        return tok

    def error(self, msg):
        raise ParseError(msg, self.text, self.peek()[2])

    def expr(self) -> MultiPoly:
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term() * sign
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> MultiPoly:
        acc = self.factor()
        while self.peek()[0] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> MultiPoly:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            n = int(self.take("num")[1])
            base = base ** n
        return base

    def atom(self) -> MultiPoly:
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            c = Fraction(int(val))
            if self.peek()[0] == "/":
                self.take()
                d = int(self.take("num")[1])
                if d == 0:
                    raise ParseError("zero denominator", self.text, pos)
                c = c / d
            return MultiPoly.constant(self.ctx, c)
        if kind == "name":
            self.take()
            if val not in self.ctx:
                raise ParseError(f"unknown variable {val!r} (context: {self.ctx})", self.text, pos)
            return MultiPoly.var(self.ctx, val)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected {val!r}")

    def parse(self) -> MultiPoly:
        if self.peek()[0] == "end":
            self.error("empty polynomial")
        p = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return p


def infer_context(texts: Iterable[str]) -> VariableContext:
    names = set()
    for t in texts:
        names.update(tok[1] for tok in _tokenize(t) if tok[0] == "name")
    return VariableContext(tuple(sorted(names, key=_natural_key)))


def parse_poly(text: str, ctx: VariableContext | None = None) -> MultiPoly:
    """Parse the polynomial text grammar; the context is inferred if omitted."""
    if ctx is None:
        ctx = infer_context([text])
    return _Parser(text, ctx).parse()
