"""Dense univariate polynomials over QQ, and arithmetic in QQ[t]/(m).

Polynomials are plain lists of Fractions (or ints), lowest degree first, with
no trailing zeros; ``[]`` is zero.  This module backs the one-parameter
machinery in :mod:`cremona.family`: resultants of line restrictions, square-free
parts, rational roots, and exact verification at irrational parameter values.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .errors import ZeroDivisorSplit

UPoly = list


def trim(a) -> UPoly:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def deg(a) -> int:
    return len(a) - 1 if a else -1


def add(a, b) -> UPoly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def sub(a, b) -> UPoly:
    return add(a, [-c for c in b])


def mul(a, b) -> UPoly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def scale(a, c) -> UPoly:
    return trim([x * c for x in a])


def evaluate(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def derivative(a) -> UPoly:
    return trim([i * c for i, c in enumerate(a)][1:])


def divmod_(a, b) -> tuple[UPoly, UPoly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = [Fraction(c) for c in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = Fraction(b[-1])
    while len(a) >= len(b) and a:
        f = a[-1] / lb
        off = len(a) - len(b)
        q[off] = f
        for i, c in enumerate(b):
            a[off + i] -= f * c
        a.pop()
        a = trim(a)
    return trim(q), a


def monic(a) -> UPoly:
    if not a:
        return []
    lc = Fraction(a[-1])
    return [Fraction(c) / lc for c in a]


def gcd(a, b) -> UPoly:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def lcm(a, b) -> UPoly:
    if not a or not b:
        return []
    return monic(divmod_(mul(a, b), gcd(a, b))[0])


def squarefree(a) -> UPoly:
    """Monic square-free part (product of distinct irreducible factors)."""
    a = trim(a)
    if deg(a) <= 0:
        return [Fraction(1)] if a else []
    g = gcd(a, derivative(a))
    return monic(divmod_(a, g)[0])


def primitive_int(a) -> list[int]:
    """Integer multiple with content 1 and positive leading coefficient."""
    a = trim(a)
    if not a:
        return []
    den = 1
    for c in a:
        den = den * Fraction(c).denominator // math.gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in a]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


# ---------------------------------------------------------------- roots


def _small_primes():
    p = 3
    while True:
        if all(p % q for q in range(3, int(p ** 0.5) + 1, 2)):
            yield p
        p += 2


def _ratrecon(r, m, bound):
    """Rational a/b == r (mod m) with |a|, b <= bound, or None."""
    r0, r1 = m, r % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1)


def rational_roots(a) -> list[Fraction]:
    """All rational roots of ``a`` (without multiplicity), sorted.

    Works p-adically: a square-free integer polynomial is reduced modulo a
    small prime where it stays square-free, every root mod p is Hensel-lifted
    far enough to recover a bounded rational by reconstruction, and each
    reconstruction is checked exactly.
    """
    f = primitive_int(squarefree(a))
    roots = []
    if deg(f) <= 0:
        return roots
    if f[0] == 0:
        roots.append(Fraction(0))
        f = f[1:]
    if deg(f) == 1:
        roots.append(Fraction(-f[0], f[1]))
        return sorted(roots)
    if deg(f) <= 0:
        return sorted(roots)
    lc, c0 = abs(f[-1]), abs(f[0])
    df = derivative(f)
    for p in _small_primes():
        if lc % p == 0:
            continue
        fp = [c % p for c in f]
        # square-free mod p: gcd(f, f') must be constant
        if _gcd_mod(fp, [c % p for c in df], p) != [1]:
            continue
        break
    bound = max(lc, c0)
    modulus_target = 2 * bound * bound + 1
    for r in range(p):
        if _eval_mod(fp, r, p):
            continue
        mod = p
        x = r
        while mod < modulus_target:
            mod = mod * mod
            fx = evaluate(f, x) % mod
            dfx = evaluate(df, x) % mod
            x = (x - fx * pow(dfx, -1, mod)) % mod
        cand = _ratrecon(x, mod, bound)
        if cand is not None and evaluate(f, cand) == 0:
            roots.append(cand)
    return sorted(set(roots))


def _eval_mod(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def _gcd_mod(a, b, p):
    def tr(v):
        v = [c % p for c in v]
        while v and v[-1] == 0:
            v.pop()
        return v

    a, b = tr(a), tr(b)
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            f = a[-1] * inv % p
            off = len(a) - len(b)
            for i, c in enumerate(b):
                a[off + i] = (a[off + i] - f * c) % p
            a = tr(a)
            if not a:
                break
        a, b = b, a
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def split_rational_roots(a) -> tuple[list[Fraction], UPoly]:
    """(rational roots, monic square-free cofactor without rational roots)."""
    sf = squarefree(a)
    roots = rational_roots(sf)
    rest = sf
    for r in roots:
        rest = divmod_(rest, [-r, 1])[0]
    return roots, monic(rest)


# ---------------------------------------------------------------- interpolation & resultants


def interpolate(xs: Sequence, ys: Sequence) -> UPoly:
    """Newton interpolation through distinct nodes, exact over QQ."""
    n = len(xs)
    c = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - j])
    poly = [c[-1]]
    for i in range(n - 2, -1, -1):
        poly = add(mul(poly, [-xs[i], 1]), [c[i]])
    return trim(poly)


def det_bareiss(matrix) -> object:
    """Fraction-free determinant of an integer (or rational) square matrix."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = v // prev if isinstance(v, int) and isinstance(prev, int) else v / prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def sylvester_resultant(a, b, da: int, db: int):
    """Resultant of ``a``, ``b`` taken with formal degrees ``da``, ``db``.

    Padding with zero leading coefficients makes the result the resultant of
    the associated binary forms, so it specializes correctly even where the
    actual degree drops.
    """
    a = list(a) + [0] * (da + 1 - len(a))
    b = list(b) + [0] * (db + 1 - len(b))
    if da == 0 and db == 0:
        return 1
    n = da + db
    rows = []
    for i in range(db):
        row = [0] * n
        for j, c in enumerate(reversed(a)):
            row[i + j] = c
        rows.append(row)
    for i in range(da):
        row = [0] * n
        for j, c in enumerate(reversed(b)):
            row[i + j] = c
        rows.append(row)
    return det_bareiss(rows)


def to_str(a, name: str = "t") -> str:
    from .polyring import MultiPoly, VariableContext

    ctx = VariableContext((name,))
    return str(MultiPoly(ctx, {(i,): c for i, c in enumerate(a) if c}))


# ---------------------------------------------------------------- QQ[t]/(m)


def _xgcd(a, b):
    """(g, s) with g = s*a (mod b), g monic gcd."""
    r0, r1 = trim(b), trim(a)
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
    lc = Fraction(r0[-1])
    return [c / lc for c in r0], [c / lc for c in s0]


class QuotientRing:
    """``QQ[t]/(modulus)`` for a square-free modulus of degree >= 1.

    Treated as a field; an attempt to invert a nonzero non-unit raises
    :class:`ZeroDivisorSplit` carrying the two coprime factors of the modulus.
    """

    def __init__(self, modulus):
        self.modulus = monic(modulus)
        if deg(self.modulus) < 1:
            raise ValueError("modulus must have positive degree")

    def __call__(self, a) -> "Residue":
        return Residue(self, divmod_(trim(a), self.modulus)[1] if deg(a) >= deg(self.modulus) else [Fraction(c) for c in trim(a)])

    @property
    def one(self) -> "Residue":
        return self([1])

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and self.modulus == other.modulus

    def __hash__(self):
        return hash(tuple(self.modulus))


class Residue:
    __slots__ = ("ring", "c")

    def __init__(self, ring: QuotientRing, coeffs):
        self.ring = ring
        self.c = coeffs

    def _lift(self, other):
        if isinstance(other, Residue):
            return other.c
        return trim([Fraction(other)])

    def __bool__(self):
        return bool(self.c)

    def __add__(self, other):
        return Residue(self.ring, add(self.c, self._lift(other)))

    __radd__ = __add__

    def __neg__(self):
        return Residue(self.ring, [-x for x in self.c])

    def __sub__(self, other):
        return Residue(self.ring, sub(self.c, self._lift(other)))

    def __rsub__(self, other):
        return Residue(self.ring, sub(self._lift(other), self.c))

    def __mul__(self, other):
        prod = mul(self.c, self._lift(other))
        if len(prod) > deg(self.ring.modulus):
            prod = divmod_(prod, self.ring.modulus)[1]
        return Residue(self.ring, prod)

    __rmul__ = __mul__

    def inverse(self) -> "Residue":
        if not self.c:
            raise ZeroDivisionError("inverse of zero in quotient ring")
        g, s = _xgcd(self.c, self.ring.modulus)
        if deg(g) > 0:
            raise ZeroDivisorSplit(g, monic(divmod_(self.ring.modulus, g)[0]))
        return Residue(self.ring, divmod_(s, self.ring.modulus)[1])

    def __truediv__(self, other):
        if not isinstance(other, Residue):
            other = self.ring(self._lift(other))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.ring(self._lift(other)) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.c == other.c
        return self.c == self._lift(other)

    def __hash__(self):
        return hash(tuple(self.c))

    def __repr__(self):
        return f"Residue({to_str(self.c)} mod {to_str(self.ring.modulus)})"
