"""Sparse polynomial algorithms on raw term dictionaries.

A raw polynomial is a ``dict`` mapping exponent tuples (all of one length) to
nonzero coefficients.  Coefficients are usually Python ints; the gcd and
division routines also accept Fractions or quotient-ring elements through a
small *domain* object that knows how to divide and take base gcds.

Nothing here knows about variable names; :mod:`cremona.polyring` wraps these
routines in the public :class:`~cremona.polyring.MultiPoly` type.
"""

from __future__ import annotations

import heapq
import math
import random
from fractions import Fraction

import numpy as np

from .errors import NotDivisible

# 31-bit primes for the coprimality certificate; p < 2**31 keeps every
# product of two residues inside int64.
CERT_PRIMES = (2147483629, 2147483587, 2147483579, 2147483563, 2147483549)

_PACK_THRESHOLD = 64


# ---------------------------------------------------------------- domains


class IntegerDomain:
    """Coefficients in ZZ; gcd results are primitive with positive lead."""

    is_field = False
    one = 1

    def gcd(self, a, b):
        return math.gcd(a, b)

    def divexact(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise NotDivisible(f"{a} is not divisible by {b}")
        return q

    def base_content(self, p):
        g = 0
        for c in p.values():
            g = math.gcd(g, c)
            if g == 1:
                break
        return g

    def normal(self, p):
        if p and p[max(p)] < 0:
            return {k: -c for k, c in p.items()}
        return p


class FieldDomain:
    """Coefficients in a field; ``one`` fixes the element type."""

    is_field = True

    def __init__(self, one=Fraction(1)):
        self.one = one

    def gcd(self, a, b):
        # inverting exposes non-units when the "field" is a product of fields
        for x in (a, b):
            if x:
                self.one / x
        return self.one if (a or b) else a

    def divexact(self, a, b):
        return a / b

    def base_content(self, p):
        return self.one if p else 0

    def normal(self, p):
        if not p:
            return p
        inv = self.one / p[max(p)]
        return {k: c * inv for k, c in p.items()}


ZZ = IntegerDomain()


# ---------------------------------------------------------------- basic ops


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for k, c in b.items():
        v = out.get(k)
        if v is None:
            out[k] = c
        else:
            v = v + c
            if v:
                out[k] = v
            else:
                del out[k]
    return out


def sub(a, b):
    out = dict(a)
    for k, c in b.items():
        v = out.get(k)
        if v is None:
            out[k] = -c
        else:
            v = v - c
            if v:
                out[k] = v
            else:
                del out[k]
    return out


def scale(a, c):
    if not c:
        return {}
    return {k: v * c for k, v in a.items() if v * c}


def _vec_add(x, y):
    return tuple(i + j for i, j in zip(x, y))


def mul(a, b):
    """Product of two raw polynomials.

    Large products pack exponent tuples into integers so the inner loop only
    adds ints; the packing base is chosen per call large enough that no
    exponent overflows into its neighbour.
    """
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    if len(a) * len(b) < _PACK_THRESHOLD:
        out = {}
        get = out.get
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = _vec_add(ka, kb)
                out[k] = get(k, 0) + ca * cb
        return {k: c for k, c in out.items() if c}

    nv = len(next(iter(a)))
    top = [0] * nv
    for poly in (a, b):
        m = [0] * nv
        for e in poly:
            for j in range(nv):
                if e[j] > m[j]:
                    m[j] = e[j]
        for j in range(nv):
            top[j] += m[j]
    base = max(top, default=0) + 1

    def pack(e):
        k = 0
        for x in reversed(e):
            k = k * base + x
        return k

    pa = [(pack(e), c) for e, c in a.items()]
    pb = [(pack(e), c) for e, c in b.items()]
    out = {}
    get = out.get
    for ka, ca in pa:
        for kb, cb in pb:
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    res = {}
    for k, c in out.items():
        if c:
            e = []
            for _ in range(nv):
                k, r = divmod(k, base)
                e.append(r)
            res[tuple(e)] = c
    return res


def power(a, n, nv):
    result = {(0,) * nv: 1}
    base = a
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


def deg_in(p, v):
    return max((e[v] for e in p), default=-1)


def used_vars(p):
    if not p:
        return set()
    nv = len(next(iter(p)))
    return {j for j in range(nv) if any(e[j] for e in p)}


def coeffs_in(p, v):
    """Group ``p`` as a univariate polynomial in variable ``v``."""
    groups = {}
    for e, c in p.items():
        d = e[v]
        key = e[:v] + (0,) + e[v + 1:] if d else e
        groups.setdefault(d, {})[key] = c
    return groups


def _shift(p, v, k):
    if k == 0:
        return p
    return {e[:v] + (e[v] + k,) + e[v + 1:]: c for e, c in p.items()}


def is_constant(p):
    return len(p) == 1 and not any(next(iter(p)))


# ---------------------------------------------------------------- division


def divexact(p, d, dom=ZZ):
    """Exact quotient ``p / d``; raises :class:`NotDivisible` otherwise.

    Terms are consumed in decreasing lex order; every subtraction only creates
    terms below the one being eliminated, so the heap never needs revisiting.
    """
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p:
        return {}
    if is_constant(d):
        c = next(iter(d.values()))
        return {k: dom.divexact(v, c) for k, v in p.items()}
    ld = max(d)
    cl = d[ld]
    rest = [(k, c) for k, c in d.items() if k != ld]
    # degrees add in a domain, so no remainder term may exceed p's degrees
    integral = dom is ZZ or isinstance(dom.one, (int, Fraction))
    caps = tuple(max(col) for col in zip(*p)) if integral else None
    r = dict(p)
    heap = [tuple(-x for x in k) for k in r]
    heapq.heapify(heap)
    q = {}
    while r:
        while True:
            k = tuple(-x for x in heapq.heappop(heap))
            if k in r:
                break
        if any(x < y for x, y in zip(k, ld)):
            raise NotDivisible("polynomial is not divisible")
        m = tuple(x - y for x, y in zip(k, ld))
        c = dom.divexact(r.pop(k), cl)
        q[m] = c
        for kd, cd in rest:
            kk = _vec_add(m, kd)
            v = r.get(kk)
            if v is None:
                if caps and any(x > y for x, y in zip(kk, caps)):
                    raise NotDivisible("polynomial is not divisible")
                r[kk] = -c * cd
                heapq.heappush(heap, tuple(-x for x in kk))
            else:
                v = v - c * cd
                if v:
                    r[kk] = v
                else:
                    del r[kk]
    return q


# ---------------------------------------------------------------- gcd


def _content_in(p, v, dom):
    g = {}
    for part in sorted(coeffs_in(p, v).values(), key=len):
        g = _gcd(g, part, dom) if g else part
        if is_constant(g) and (dom.is_field or abs(next(iter(g.values()))) == 1):
            break
    return dom.normal(g)


def _prem(a, b, v):
    db = deg_in(b, v)
    lcb = coeffs_in(b, v)[db]
    r = a
    while r:
        dr = deg_in(r, v)
        if dr < db:
            break
        lcr = coeffs_in(r, v)[dr]
        r = sub(mul(lcb, r), _shift(mul(lcr, b), v, dr - db))
    return r


def _gcd(p, q, dom):
    if not p:
        return q
    if not q:
        return p
    sp, sq = used_vars(p), used_vars(q)
    zero = next(iter(p))
    zero = (0,) * len(zero)
    if not sp and not sq:
        return {zero: dom.gcd(p[zero], q[zero])}
    if not sp:
        return {zero: dom.gcd(p[zero], dom.base_content(q))}
    if not sq:
        return {zero: dom.gcd(q[zero], dom.base_content(p))}
    only = sp - sq
    if only:
        return _gcd(_content_in(p, min(only), dom), q, dom)
    only = sq - sp
    if only:
        return _gcd(p, _content_in(q, min(only), dom), dom)

    v = min(sp, key=lambda j: (max(deg_in(p, j), deg_in(q, j)), j))
    cp = _content_in(p, v, dom)
    cq = _content_in(q, v, dom)
    c = _gcd(cp, cq, dom)
    pp = divexact(p, cp, dom)
    qq = divexact(q, cq, dom)
    if deg_in(pp, v) < deg_in(qq, v):
        pp, qq = qq, pp
    qq = dom.normal(qq)
    while True:
        r = _prem(pp, qq, v)
        if not r:
            break
        if dom.is_field:
            r = dom.normal(r)
        if deg_in(r, v) == 0:
            return dom.normal(c)
        pp, qq = qq, dom.normal(divexact(r, _content_in(r, v, dom), dom))
    return dom.normal(mul(c, qq))


# ---------------------------------------------------------------- heuristic gcd over ZZ

_HEU_ATTEMPTS = 6


def _max_norm(p):
    return max(abs(c) for c in p.values())


def _eval_var(p, v, x):
    out = {}
    pw = {0: 1}
    for e, c in p.items():
        k = e[v]
        if k not in pw:
            pw[k] = x ** k
        key = e[:v] + (0,) + e[v + 1:] if k else e
        val = out.get(key, 0) + c * pw[k]
        if val:
            out[key] = val
        else:
            out.pop(key, None)
    return out


def _xi_adic(h, x, v):
    """Polynomial in variable ``v`` whose value at ``x`` is ``h`` (symmetric digits)."""
    out = {}
    k = 0
    half = x // 2
    while h:
        digits = {}
        for e, c in h.items():
            r = c % x
            if r > half:
                r -= x
            if r:
                digits[e] = r
        for e, c in digits.items():
            out[e[:v] + (k,) + e[v + 1:]] = c
        nxt = {}
        for e, c in h.items():
            q = (c - digits.get(e, 0)) // x
            if q:
                nxt[e] = q
        h = nxt
        k += 1
    return out


def _primitive_int(p):
    c = ZZ.base_content(p)
    if p[max(p)] < 0:
        c = -c
    return {k: v // c for k, v in p.items()} if c != 1 else p


def _try_div(p, d):
    try:
        return divexact(p, d)
    except NotDivisible:
        return None


def _heu_gcd(f, g):
    """(h, f/h, g/h), or None when the heuristic gives up.

    Evaluate one variable at a large integer, recurse, and rebuild the
    candidate from its balanced expansion in that integer.  A candidate is
    accepted only after exact division, and with the evaluation point above
    twice the coefficient bound an accepted primitive candidate is the gcd.
    """
    nv = len(next(iter(f)))
    used = used_vars(f) | used_vars(g)
    if not used:
        zero = (0,) * nv
        a, b = f[zero], g[zero]
        h = math.gcd(a, b)
        return {zero: h}, {zero: a // h}, {zero: b // h}
    c = math.gcd(ZZ.base_content(f), ZZ.base_content(g))
    if c != 1:
        f = {k: v // c for k, v in f.items()}
        g = {k: v // c for k, v in g.items()}
    v = max(used)
    fn, gn = _max_norm(f), _max_norm(g)
    bound = 2 * min(fn, gn) + 29
    x = max(min(bound, 99 * math.isqrt(bound)),
            2 * min(fn // abs(f[max(f)]), gn // abs(g[max(g)])) + 4)
    for _ in range(_HEU_ATTEMPTS):
        ff, gg = _eval_var(f, v, x), _eval_var(g, v, x)
        if ff and gg:
            sub_result = _heu_gcd(ff, gg)
            if sub_result is None:
                return None
            h, cff, cfg = sub_result
            cand = _primitive_int(_xi_adic(h, x, v))
            qf = _try_div(f, cand)
            if qf is not None:
                qg = _try_div(g, cand)
                if qg is not None:
                    return scale(cand, c), qf, qg
            for co, this, other in ((cff, f, g), (cfg, g, f)):
                co = _xi_adic(co, x, v)
                if not co:
                    continue
                cand = _try_div(this, co)
                if cand is not None:
                    rest = _try_div(other, cand)
                    if rest is not None:
                        if this is f:
                            return scale(cand, c), co, rest
                        return scale(cand, c), rest, co
        x = 73794 * x * math.isqrt(math.isqrt(x)) // 27011
    return None


def _zz_gcd(p, q):
    if not p:
        return q
    if not q:
        return p
    if all(isinstance(c, int) for c in p.values()) and all(isinstance(c, int) for c in q.values()):
        r = _heu_gcd(p, q)
        if r is not None:
            return r[0]
    return _gcd(p, q, ZZ)


def gcd(p, q, dom=ZZ):
    """A gcd of two raw polynomials, normalized by ``dom.normal``.

    Over ZZ the result is primitive with positive lex-leading coefficient.
    """
    if not p and not q:
        return {}
    g = _zz_gcd(p, q) if dom is ZZ else _gcd(p, q, dom)
    if not dom.is_field:
        c = dom.base_content(g)
        if c != 1:
            g = {k: v // c for k, v in g.items()}
    return dom.normal(g)


def gcd_many(polys, dom=ZZ):
    polys = sorted((p for p in polys if p), key=len)
    if not polys:
        return {}
    g = polys[0]
    for p in polys[1:]:
        g = _zz_gcd(g, p) if dom is ZZ else _gcd(g, p, dom)
        if is_constant(g):
            break
    return gcd(g, {}, dom)


# ---------------------------------------------------------------- certificate


def _poly_mod_p_on_line(p, prime, hom_point, hom_dir, degree):
    """Coefficients (low to high, mod prime) of the binary restriction.

    The polynomial is homogenized to ``degree`` with an extra coordinate and
    evaluated along ``hom_point + u * hom_dir``; ``hom_*[0]`` belongs to the
    homogenizing coordinate.
    """
    keys = list(p)
    nv = len(keys[0])
    exps = np.array(keys, dtype=np.int64).reshape(len(keys), nv)
    hexp = degree - exps.sum(axis=1)
    coeffs = np.array([c % prime for c in p.values()], dtype=np.int64)
    npts = degree + 1
    pts = np.arange(npts, dtype=np.int64)
    columns = [hexp] + [exps[:, j] for j in range(nv)]
    tables = []
    for j, col in enumerate(columns):
        line = (hom_point[j] + pts * hom_dir[j]) % prime
        top = int(col.max()) if len(col) else 0
        tab = np.empty((top + 1, npts), dtype=np.int64)
        tab[0] = 1
        for e in range(1, top + 1):
            tab[e] = tab[e - 1] * line % prime
        tables.append(tab)
    y = np.zeros(npts, dtype=np.int64)
    for start in range(0, len(keys), 4096):
        stop = start + 4096
        vals = np.repeat(coeffs[start:stop, None], npts, axis=1)
        for tab, col in zip(tables, columns):
            vals = vals * tab[col[start:stop]] % prime
        y = (y + vals.sum(axis=0) % prime) % prime
    # Newton divided differences on nodes 0..degree
    c = y.copy()
    for j in range(1, npts):
        inv = pow(j, prime - 2, prime)
        c[j:] = (c[j:] - c[j - 1:-1]) % prime * inv % prime
    poly = np.array([c[-1]], dtype=np.int64)
    for i in range(npts - 2, -1, -1):
        shifted = np.zeros(len(poly) + 1, dtype=np.int64)
        shifted[1:] = poly
        shifted[:-1] = (shifted[:-1] - i * poly) % prime
        shifted[0] = (shifted[0] + c[i]) % prime
        poly = shifted
    out = [int(x) for x in poly]
    while out and out[-1] == 0:
        out.pop()
    return out


def _ugcd_mod(a, b, prime):
    while b:
        inv = pow(b[-1], prime - 2, prime)
        a = list(a)
        while len(a) >= len(b):
            f = a[-1] * inv % prime
            if f:
                off = len(a) - len(b)
                for i, x in enumerate(b):
                    a[off + i] = (a[off + i] - f * x) % prime
            a.pop()
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return a


def certify_coprime(polys, attempts=3):
    """Return True only if the integer polynomials provably share no factor.

    Each input is homogenized and restricted to a line in projective space
    over GF(p).  A common factor ``g`` over QQ (taken primitive) restricts to
    a nonzero binary form dividing every restriction, so coprime restrictions
    with no common root at infinity rule ``g`` out.  ``False`` means only that
    no certificate was found.
    """
    polys = [p for p in polys if p]
    if len(polys) < 2:
        return False
    nv = len(next(iter(polys[0])))
    degrees = [max(sum(e) for e in p) for p in polys]
    if 0 in degrees:
        return True
    for attempt in range(attempts):
        prime = CERT_PRIMES[attempt % len(CERT_PRIMES)]
        rng = random.Random(0x5eed + attempt)
        point = [rng.randrange(1, prime) for _ in range(nv + 1)]
        direction = [rng.randrange(1, prime) for _ in range(nv + 1)]
        g = None
        full = False
        for p, d in sorted(zip(polys, degrees), key=lambda pd: len(pd[0])):
            r = _poly_mod_p_on_line(p, prime, point, direction, d)
            if not r:
                continue
            full = full or len(r) - 1 == d
            g = r if g is None else _ugcd_mod(g, r, prime)
            if len(g) == 1 and full:
                return True
    return False
